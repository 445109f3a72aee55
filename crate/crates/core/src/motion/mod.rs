//! Multiple motions of cars around the faces of a diagram, the standard motion,
//! exact collision detection and the audits built on it.

mod audit;
mod collide;
mod schedule;

pub use audit::{
    car_crash_audit, combined_audit, lemma5_audit, validate_motion, CarCrashVerdict, CombinedError, Lemma5Finding,
    MotionFinding, Section8Finding, Section8Report,
};
pub use collide::{corner_occupancy, detect_collisions, shifted_events, EdgeEvent, CollisionReport, EdgeCollisions, Interval, VertexCollision};
pub use schedule::{frac, from_legs, q, wrap, CarSchedule, Piece, Segment, Q};

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{FaceKind, HowieDiagram};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultipleMotion {
    #[serde(with = "schedule::qstr")]
    pub period: Q,
    #[serde(with = "schedule::qstr")]
    pub circle: Q,
    /// Cars per face, in face order.
    pub faces: Vec<Vec<CarSchedule>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MotionError {
    #[error("illegal diagram: {0}")]
    IllegalDiagram(String),
}

/// Per-period legs `(duration, distance)` and the start position relative to
/// the first matched dart of the face.
fn plan(kind: &FaceKind, m: i64, perimeter: usize, period: Q) -> (i64, Vec<(Q, Q)>) {
    let p = 2 * m + 3;
    let unit = (q(1), q(1));
    match kind {
        FaceKind::Digon { .. } => (0, vec![unit, unit]),
        FaceKind::LargePos { .. } if m == 0 => (1, vec![unit, (frac(1, 2), q(1)), (frac(1, 2), q(1))]),
        FaceKind::LargePos { .. } => (1, vec![(q(2 * m + 2), q(2 * m + 2)), (q(2 * m - 1), q(0)), unit]),
        FaceKind::LargeNeg { .. } if m == 0 => (p - 1, vec![(frac(1, 2), q(1)), (frac(1, 2), q(1)), unit]),
        FaceKind::LargeNeg { .. } => (p - 1, vec![unit, (q(2 * m - 1), q(0)), (q(2 * m + 2), q(2 * m + 2))]),
        FaceKind::Exterior if perimeter >= 2 => {
            (0, vec![(frac(1, 4), q(perimeter as i64 - 1)), (period - frac(1, 4), q(1))])
        }
        FaceKind::Exterior | FaceKind::Illegal => (0, vec![(period, q(perimeter as i64))]),
    }
}

fn start_of(kind: &FaceKind) -> usize {
    match kind {
        FaceKind::Digon { start, .. } | FaceKind::LargePos { start } | FaceKind::LargeNeg { start } => *start,
        FaceKind::Exterior | FaceKind::Illegal => 0,
    }
}

/// The standard motion: period `4m + 2`, time circle `k(4m + 2)`, `k` cars on
/// each large face and one car elsewhere.
pub fn standard_motion(diag: &HowieDiagram) -> Result<MultipleMotion, MotionError> {
    let kinds = diag.classify_faces();
    if let Some(f) = kinds.iter().position(|k| *k == FaceKind::Illegal) {
        return Err(MotionError::IllegalDiagram(format!("face {f} matches no relator")));
    }
    if diag.exterior_faces.len() > 1 {
        return Err(MotionError::IllegalDiagram("more than one exterior face".into()));
    }
    let m = diag.presentation.m();
    if m < 0 {
        return Err(MotionError::IllegalDiagram("relator has no b_i a_i^t block".into()));
    }
    let k = diag.k() as i64;
    let period = q(4 * m + 2);
    let circle = period * q(k);
    let pp = 2 * m + 3;
    let mut faces = Vec::with_capacity(kinds.len());
    for (f, kind) in kinds.iter().enumerate() {
        let perimeter = diag.map.face(f).len();
        let (offset, legs) = plan(kind, m, perimeter, period);
        let base = q(start_of(kind) as i64 + offset);
        let cars = if kind.is_large() { k } else { 1 };
        let schedules = (0..cars).map(|j| from_legs(base + q(j * pp), &legs, circle)).collect();
        faces.push(schedules);
    }
    Ok(MultipleMotion { period, circle, faces })
}

impl MultipleMotion {
    pub fn car_count(&self, face: usize) -> usize {
        self.faces[face].len()
    }

    /// Shifts every schedule's time origin by `delta` (positions unchanged).
    pub fn shift_time(&self, delta: Q) -> MultipleMotion {
        let faces = self
            .faces
            .iter()
            .map(|cars| {
                cars.iter()
                    .map(|car| {
                        let mut pieces: Vec<Piece> = Vec::new();
                        for p in &car.pieces {
                            let (a, b) = (p.t0 - delta, p.t1 - delta);
                            let lo = wrap(a, self.circle);
                            let shift = lo - a;
                            let hi = b + shift;
                            if hi <= self.circle {
                                pieces.push(Piece { t0: lo, t1: hi, pos0: p.pos0, vel: p.vel });
                            } else {
                                let cut = self.circle;
                                pieces.push(Piece { t0: lo, t1: cut, pos0: p.pos0, vel: p.vel });
                                let pos_cut = p.pos0 + p.vel * (cut - lo);
                                pieces.push(Piece { t0: Q::zero(), t1: hi - cut, pos0: pos_cut, vel: p.vel });
                            }
                        }
                        pieces.retain(|p| p.t0 < p.t1);
                        pieces.sort_by(|a, b| a.t0.cmp(&b.t0));
                        CarSchedule { pieces }
                    })
                    .collect()
            })
            .collect();
        MultipleMotion { period: self.period, circle: self.circle, faces }
    }
}
