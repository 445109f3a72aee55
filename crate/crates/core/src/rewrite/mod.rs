//! The canonical φ-presentation, its conditions, Britton reduction and transport.

mod britton;
mod conditions;
mod lemma1;
mod presentation;
mod transport;

pub use britton::{britton_is_trivial, britton_reduce, embed_to_base, embedded_is_trivial, EmbedError, Embedding};
pub use conditions::{
    corollary_bound_check, coset_core, free_factor_counterexample, subgroup_sample, verify_lemma1_conditions,
    verify_lemma1_conditions_with, ConditionReport, CorollaryError, CorollaryResult, FreeFactorBounds, Side, Verdict,
};
pub use lemma1::{lemma1_rewrite, MoveKind, RewriteError, RewriteMove, RewriteOutcome, RewriteTrace};
pub use presentation::{HLetter, HWord, PhiPresentation, PresentationError};
pub use transport::{proposition1_transport, Factor, FactorTag, Prop1Factorization, TransportError, Transported};
