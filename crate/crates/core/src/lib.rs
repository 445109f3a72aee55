//! One-relator relative presentations over finite groups: rewriting into the
//! canonical form with a shifting automorphism, Howie diagrams over it, and
//! exact curvature and car-motion audits.

pub mod curvature;
pub mod diagram;
pub mod fixtures;
pub mod fuzz;
pub mod io;
pub mod kernel;
pub mod motion;
pub mod random;
pub mod rewrite;
pub mod surface;

pub use curvature::{CurvatureError, CurvatureReport, Weights};
pub use diagram::{CornerType, DiagramError, DiagramReport, FaceKind, HowieDiagram, VertexKind};
pub use kernel::{Elem, FpWord, Group, GroupError, TWord};
pub use motion::{CollisionReport, MultipleMotion, Section8Report};
pub use rewrite::{PhiPresentation, RewriteError, RewriteOutcome};
pub use surface::{MapError, SurfaceMap};
