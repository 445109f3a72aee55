//! Checks on motions: the defining conditions, the car-crash inequality, the
//! standard-motion claims and the combined curvature inequality.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use super::collide::{corner_occupancy, detect_collisions, CollisionReport, Interval};
use super::schedule::{q, qstr, wrap, Q};
use super::{standard_motion, MotionError, MultipleMotion};
use crate::curvature::{disk_exterior, face_curvature, interior_vertices, section5_weights, vertex_census, CurvatureError};
use crate::diagram::{FaceKind, HowieDiagram, VertexKind};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "finding")]
pub enum MotionFinding {
    FaceCount { faces: usize, expected: usize },
    NoCar { face: usize },
    NotCovering { face: usize, car: usize },
    Decreasing { face: usize, car: usize, piece: usize },
    Discontinuous { face: usize, car: usize, piece: usize },
    StopOffCorner { face: usize, car: usize, piece: usize },
    ShiftMismatch { face: usize, car: usize, #[serde(with = "qstr")] time: Q },
    ArcMismatch { face: usize },
    StopsNotSeparated { vertex: usize, corners: (usize, usize), #[serde(with = "qstr")] time: Q },
}

fn car_shape(face: usize, car: usize, pieces: &[super::Piece], l: Q, n: Q, out: &mut Vec<MotionFinding>) {
    if pieces.is_empty() || pieces[0].t0 != Q::zero() || pieces[pieces.len() - 1].t1 != l {
        out.push(MotionFinding::NotCovering { face, car });
        return;
    }
    for (i, p) in pieces.iter().enumerate() {
        if p.vel.is_negative() {
            out.push(MotionFinding::Decreasing { face, car, piece: i });
        }
        if p.t0 >= p.t1 {
            out.push(MotionFinding::NotCovering { face, car });
        }
        let next = &pieces[(i + 1) % pieces.len()];
        if i + 1 < pieces.len() && next.t0 != p.t1 {
            out.push(MotionFinding::NotCovering { face, car });
        }
        let gap = (next.pos0 - p.end_pos()) / n;
        if !gap.is_integer() {
            out.push(MotionFinding::Discontinuous { face, car, piece: i });
        }
    }
}

/// Displacement of a car over `[0, t]`.
fn travelled(pieces: &[super::Piece], t: Q) -> Q {
    pieces.iter().filter(|p| p.t0 < t).map(|p| p.vel * (p.t1.min(t) - p.t0)).sum()
}

/// Checks the four defining conditions exactly; stop corners are the `(++)`
/// and `(−−)` corners.
pub fn validate_motion(diag: &HowieDiagram, motion: &MultipleMotion) -> Vec<MotionFinding> {
    let mut out = Vec::new();
    let (l, period) = (motion.circle, motion.period);
    if motion.faces.len() != diag.map.face_count() {
        out.push(MotionFinding::FaceCount { faces: motion.faces.len(), expected: diag.map.face_count() });
        return out;
    }
    for (f, cars) in motion.faces.iter().enumerate() {
        let cycle = diag.map.face(f);
        let n = cycle.len();
        let nq = q(n as i64);
        if cars.is_empty() {
            out.push(MotionFinding::NoCar { face: f });
            continue;
        }
        let before = out.len();
        for (j, car) in cars.iter().enumerate() {
            car_shape(f, j, &car.pieces, l, nq, &mut out);
            for (i, p) in car.pieces.iter().enumerate() {
                if p.vel.is_zero() {
                    let x = wrap(p.pos0, nq);
                    if !x.is_integer() || !diag.corner_type(cycle[x.to_integer() as usize]).is_stop() {
                        out.push(MotionFinding::StopOffCorner { face: f, car: j, piece: i });
                    }
                }
            }
        }
        if out.len() > before {
            continue;
        }
        // condition 3 on all breakpoints and the midpoints between them
        let mut marks: BTreeSet<Q> = BTreeSet::new();
        for car in cars {
            for t in car.breakpoints() {
                marks.insert(wrap(t, l));
                marks.insert(wrap(t - period, l));
            }
        }
        marks.insert(l);
        let marks: Vec<Q> = marks.into_iter().collect();
        let mut samples = marks.clone();
        samples.extend(marks.windows(2).map(|w| (w[0] + w[1]) / q(2)));
        let d = cars.len();
        'shift: for j in 0..d {
            for &t in &samples {
                if cars[j].at(t + period, n, l) != cars[(j + 1) % d].at(t, n, l) {
                    out.push(MotionFinding::ShiftMismatch { face: f, car: j, time: t });
                    break 'shift;
                }
            }
        }
        // condition 4: car j sweeps the arc from its start to the next car's start
        let disp: Vec<Q> = cars.iter().map(|c| travelled(&c.pieces, period)).collect();
        let ok = if d == 1 {
            disp[0].is_positive() && (disp[0] / nq).is_integer()
        } else {
            disp.iter().sum::<Q>() == nq
                && (0..d).all(|j| {
                    let here = cars[j].pieces[0].pos0 + disp[j];
                    ((here - cars[(j + 1) % d].pieces[0].pos0) / nq).is_integer()
                })
        };
        if !ok {
            out.push(MotionFinding::ArcMismatch { face: f });
        }
    }
    let broken = |f: &MotionFinding| {
        matches!(f, MotionFinding::NotCovering { .. } | MotionFinding::Decreasing { .. } | MotionFinding::Discontinuous { .. })
    };
    if out.iter().any(broken) {
        return out;
    }
    // condition 2: consecutive stop corners at a vertex are never occupied together
    let occ = corner_occupancy(diag, motion);
    for (v, orbit) in diag.map.vertices().iter().enumerate() {
        let stops: Vec<usize> = orbit.iter().copied().filter(|&c| diag.corner_type(c).is_stop()).collect();
        if stops.len() < 2 {
            continue;
        }
        for i in 0..stops.len() {
            let (a, b) = (stops[i], stops[(i + 1) % stops.len()]);
            if let Some(t) = first_common(&occ[a], &occ[b]) {
                out.push(MotionFinding::StopsNotSeparated { vertex: v, corners: (a, b), time: t });
            }
        }
    }
    out
}

fn first_common(a: &[Interval], b: &[Interval]) -> Option<Q> {
    a.iter().flat_map(|x| b.iter().map(move |y| (x.lo.max(y.lo), x.hi.min(y.hi)))).find(|(lo, hi)| lo <= hi).map(|(lo, _)| lo)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CarCrashVerdict {
    pub cc_vertices: i64,
    pub edge_points: i64,
    pub face_terms: i64,
    pub lhs: i64,
    pub chi: i64,
    pub holds: bool,
}

/// `|cc vertices| + Σ K′(e) + Σ K′(D) ≥ χ`.
pub fn car_crash_audit(report: &CollisionReport) -> CarCrashVerdict {
    let cc_vertices = report.cc_vertices.len() as i64;
    let edge_points = report.edge_points.iter().map(|e| e.points as i64).sum();
    let face_terms = report.face_kprime.iter().sum();
    let lhs = cc_vertices + edge_points + face_terms;
    CarCrashVerdict { cc_vertices, edge_points, face_terms, lhs, chi: report.chi, holds: lhs >= report.chi }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "finding")]
pub enum Lemma5Finding {
    CollisionAtMixedVertex { vertex: usize },
    NonIntegerCollision { vertex: usize, time: Interval },
    WrongParity { vertex: usize, kind: VertexKind, time: Interval },
    InteriorEdgeCollision { edge: usize, points: usize },
    BoundaryEdgeBound { edge: usize, points: usize, bound: i64 },
    DirectionInvariant { face: usize, car: usize, #[serde(with = "qstr")] t0: Q, #[serde(with = "qstr")] t1: Q },
}

/// The standard-motion claims: interior complete collisions only at sinks
/// (even times) and sources (odd times), none on interior edges, at most
/// `k(2m + 1)` points per boundary edge, and the direction invariant.
pub fn lemma5_audit(diag: &HowieDiagram, motion: &MultipleMotion, report: &CollisionReport) -> Vec<Lemma5Finding> {
    let mut out = Vec::new();
    let interior: BTreeSet<usize> = interior_vertices(diag).into_iter().collect();
    for cc in &report.cc_vertices {
        if !interior.contains(&cc.vertex) {
            continue;
        }
        let kind = diag.vertex_kind(cc.vertex);
        if kind == VertexKind::Mixed {
            out.push(Lemma5Finding::CollisionAtMixedVertex { vertex: cc.vertex });
            continue;
        }
        for &iv in &cc.times {
            if !iv.is_point() || !iv.lo.is_integer() {
                out.push(Lemma5Finding::NonIntegerCollision { vertex: cc.vertex, time: iv });
                continue;
            }
            let odd = iv.lo.to_integer().rem_euclid(2) == 1;
            if odd != (kind == VertexKind::Source) {
                out.push(Lemma5Finding::WrongParity { vertex: cc.vertex, kind, time: iv });
            }
        }
    }
    let boundary = diag.boundary_edges();
    for e in &report.edge_points {
        if !boundary[e.edge] {
            out.push(Lemma5Finding::InteriorEdgeCollision { edge: e.edge, points: e.points });
        } else if e.points as i64 > report.d_constant {
            out.push(Lemma5Finding::BoundaryEdgeBound { edge: e.edge, points: e.points, bound: report.d_constant });
        }
    }
    for (f, cars) in motion.faces.iter().enumerate() {
        if diag.is_exterior_face(f) {
            continue;
        }
        let cycle = diag.map.face(f);
        for (j, car) in cars.iter().enumerate() {
            for seg in car.segments(cycle.len()) {
                if seg.at_corner || seg.vel.is_zero() {
                    continue;
                }
                let unit = seg.t0.floor();
                let inside = seg.t1 <= unit + q(1);
                let odd = unit.to_integer().rem_euclid(2) == 1;
                if !inside || odd != diag.is_forward(cycle[seg.slot]) {
                    out.push(Lemma5Finding::DirectionInvariant { face: f, car: j, t0: seg.t0, t1: seg.t1 });
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CombinedError {
    #[error(transparent)]
    Curvature(#[from] CurvatureError),
    #[error(transparent)]
    Motion(#[from] MotionError),
    #[error("combined audit needs k >= 2, got {0}")]
    SmallK(u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "finding")]
pub enum Section8Finding {
    PositiveInteriorVertex { vertex: usize, curvature: i64 },
    ZeroVertexCollision { vertex: usize, case: String, times: Vec<Interval> },
    InvolutionHypothesisGap { vertex: usize, case: String, message: String },
    LargeFaceCombined { face: usize, value: i64 },
    DigonCombined { face: usize, value: i64 },
    InteriorEdgeCombined { edge: usize, value: i64 },
    FinalInequality { lhs: i64, rhs: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Section8Report {
    pub d_constant: i64,
    pub perimeter: i64,
    pub large_faces: i64,
    pub lhs: i64,
    pub rhs: i64,
    pub inequality_holds: bool,
    pub findings: Vec<Section8Finding>,
    pub warnings: Vec<Section8Finding>,
    pub collisions: CollisionReport,
}

impl Section8Report {
    pub fn passed(&self) -> bool {
        self.findings.is_empty() && self.inequality_holds
    }
}

fn zero_case(p: i64, n: i64, l: i64) -> &'static str {
    match (p, n, l) {
        (p, _, _) if p > 0 => "a",
        (0, 0, 2) => "b",
        (0, 1, 3) => "c",
        (0, 2, 4) => "d",
        _ => "other",
    }
}

/// Weights, standard motion and collisions combined:
/// (i) `K(v) ≤ 0` at interior vertices, (ii) no complete collision at an
/// interior vertex with `K(v) = 0`, (iii) combined curvature of large faces
/// `≤ −1`, of digons and interior edges `= 0`, (iv)
/// `(D + 3)·perimeter − large + 2 ≥ 6`.
pub fn combined_audit(diag: &HowieDiagram) -> Result<Section8Report, CombinedError> {
    if diag.k() < 2 {
        return Err(CombinedError::SmallK(diag.k()));
    }
    let ext = disk_exterior(diag)?;
    let weights = section5_weights(diag)?;
    let motion = standard_motion(diag)?;
    let collisions = detect_collisions(diag, &motion);
    let mut findings = Vec::new();
    let mut warnings = Vec::new();
    let involutions = diag.presentation.group.has_involution() && diag.k() == 2;
    for v in interior_vertices(diag) {
        let census = vertex_census(diag, &weights, v);
        if census.curvature > 0 {
            findings.push(Section8Finding::PositiveInteriorVertex { vertex: v, curvature: census.curvature });
        }
        if census.curvature == 0 {
            if let Some(cc) = collisions.cc_vertices.iter().find(|c| c.vertex == v) {
                let case = zero_case(census.p, census.n, census.l).to_string();
                findings.push(Section8Finding::ZeroVertexCollision { vertex: v, case: case.clone(), times: cc.times.clone() });
                if involutions {
                    warnings.push(Section8Finding::InvolutionHypothesisGap {
                        vertex: v,
                        case,
                        message: "G has an involution and k = 2: the exclusion of this collision assumes G has no involutions".into(),
                    });
                }
            }
        }
    }
    for (f, kind) in weights.kinds.iter().enumerate() {
        let value = face_curvature(diag, &weights, f) + collisions.face_kprime[f];
        match kind {
            k if k.is_large() && value > -1 => findings.push(Section8Finding::LargeFaceCombined { face: f, value }),
            FaceKind::Digon { .. } if value != 0 => findings.push(Section8Finding::DigonCombined { face: f, value }),
            _ => {}
        }
    }
    let boundary = diag.boundary_edges();
    for e in &collisions.edge_points {
        if !boundary[e.edge] && e.points > 0 {
            findings.push(Section8Finding::InteriorEdgeCombined { edge: e.edge, value: e.points as i64 });
        }
    }
    let d_constant = collisions.d_constant;
    let perimeter = diag.map.face(ext).len() as i64;
    let large_faces = weights.kinds.iter().filter(|k| k.is_large()).count() as i64;
    let lhs = (d_constant + 3) * perimeter - large_faces + 2;
    let rhs = 6;
    if lhs < rhs {
        findings.push(Section8Finding::FinalInequality { lhs, rhs });
    }
    Ok(Section8Report { d_constant, perimeter, large_faces, lhs, rhs, inequality_holds: lhs >= rhs, findings, warnings, collisions })
}
