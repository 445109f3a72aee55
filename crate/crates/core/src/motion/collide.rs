//! Exact collision detection over one time circle.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use serde::Serialize;

use super::schedule::{qstr, wrap, Segment, Q};
use super::MultipleMotion;
use crate::diagram::HowieDiagram;

/// Closed time interval `[lo, hi]`; a point when `lo == hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Interval {
    #[serde(with = "qstr")]
    pub lo: Q,
    #[serde(with = "qstr")]
    pub hi: Q,
}

impl Interval {
    pub fn point(t: Q) -> Self {
        Interval { lo: t, hi: t }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexCollision {
    pub vertex: usize,
    pub times: Vec<Interval>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct EdgeEvent {
    #[serde(with = "qstr")]
    pub time: Q,
    /// Offset from the tail of the edge's smaller dart, in `(0, 1)`.
    #[serde(with = "qstr")]
    pub position: Q,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeCollisions {
    pub edge: usize,
    pub events: Vec<EdgeEvent>,
    /// `K′(e)`: number of distinct collision positions.
    pub points: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CollisionReport {
    pub cc_vertices: Vec<VertexCollision>,
    pub edge_points: Vec<EdgeCollisions>,
    /// `K′(D) = 1 − d_D` per face.
    pub face_kprime: Vec<i64>,
    pub chi: i64,
    /// `k(2m + 1)`.
    pub d_constant: i64,
}

impl CollisionReport {
    pub fn edge_kprime(&self, edge: usize) -> usize {
        self.edge_points.iter().find(|e| e.edge == edge).map_or(0, |e| e.points)
    }

    pub fn has_cc(&self, vertex: usize) -> bool {
        self.cc_vertices.iter().any(|c| c.vertex == vertex)
    }
}

fn normalise(mut v: Vec<Interval>, l: Q) -> Vec<Interval> {
    let extra: Vec<Interval> = v
        .iter()
        .flat_map(|iv| {
            let mut e = Vec::new();
            if iv.lo.is_zero() {
                e.push(Interval::point(l));
            }
            if iv.hi == l {
                e.push(Interval::point(Q::zero()));
            }
            e
        })
        .collect();
    v.extend(extra);
    v.sort();
    let mut out: Vec<Interval> = Vec::new();
    for iv in v {
        match out.last_mut() {
            Some(last) if iv.lo <= last.hi => last.hi = last.hi.max(iv.hi),
            _ => out.push(iv),
        }
    }
    out
}

/// Times (within `[0, L]`) at which some car of the face is at each corner.
pub fn corner_occupancy(diag: &HowieDiagram, motion: &MultipleMotion) -> Vec<Vec<Interval>> {
    let l = motion.circle;
    let mut occ = vec![Vec::new(); diag.map.dart_count()];
    for (f, cars) in motion.faces.iter().enumerate() {
        let cycle = diag.map.face(f);
        let n = cycle.len() as i64;
        let corner = |x: Q| cycle[x.to_integer().rem_euclid(n) as usize];
        for car in cars {
            for p in &car.pieces {
                if p.vel.is_zero() {
                    if p.pos0.is_integer() {
                        occ[corner(p.pos0)].push(Interval { lo: p.t0, hi: p.t1 });
                    }
                    continue;
                }
                let end = p.end_pos();
                let mut x = p.pos0.ceil();
                while x < end {
                    occ[corner(x)].push(Interval::point(p.t0 + (x - p.pos0) / p.vel));
                    x += Q::one();
                }
            }
        }
    }
    occ.into_iter().map(|v| normalise(v, l)).collect()
}

fn intersect(a: &[Interval], b: &[Interval]) -> Vec<Interval> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        let lo = a[i].lo.max(b[j].lo);
        let hi = a[i].hi.min(b[j].hi);
        if lo <= hi {
            out.push(Interval { lo, hi });
        }
        if a[i].hi < b[j].hi {
            i += 1;
        } else {
            j += 1;
        }
    }
    out
}

fn edge_meetings(a: &Segment, b: &Segment, l: Q, out: &mut Vec<(Q, Q)>) {
    for shift in [-l, Q::zero(), l] {
        let lo = a.t0.max(b.t0 + shift);
        let hi = a.t1.min(b.t1 + shift);
        if lo > hi {
            continue;
        }
        // x_a(t) + x_b(t - shift) = 1
        let speed = a.vel + b.vel;
        let at_lo = a.x_at(lo) + b.x_at(lo - shift) - Q::one();
        let times: Vec<Q> = if speed.is_zero() {
            if at_lo.is_zero() {
                vec![lo, hi]
            } else {
                vec![]
            }
        } else {
            let t = lo - at_lo / speed;
            if t >= lo && t <= hi {
                vec![t]
            } else {
                vec![]
            }
        };
        for t in times {
            let x = a.x_at(t);
            if x > Q::zero() && x < Q::one() {
                out.push((wrap(t, l), x));
            }
        }
    }
}

pub fn detect_collisions(diag: &HowieDiagram, motion: &MultipleMotion) -> CollisionReport {
    let l = motion.circle;
    let occ = corner_occupancy(diag, motion);
    let mut cc_vertices = Vec::new();
    for (v, orbit) in diag.map.vertices().iter().enumerate() {
        let mut times = occ[orbit[0]].clone();
        for &c in &orbit[1..] {
            times = intersect(&times, &occ[c]);
        }
        // report each instant once on the circle
        if times.len() > 1 && times.last().is_some_and(|iv| iv.lo == l) {
            times.pop();
        }
        if !times.is_empty() {
            cc_vertices.push(VertexCollision { vertex: v, times });
        }
    }

    let mut segments: Vec<Vec<Segment>> = vec![Vec::new(); diag.map.dart_count()];
    for (f, cars) in motion.faces.iter().enumerate() {
        let cycle = diag.map.face(f);
        for car in cars {
            for seg in car.segments(cycle.len()) {
                if !seg.at_corner {
                    segments[cycle[seg.slot]].push(seg);
                }
            }
        }
    }
    let mut edge_points = Vec::new();
    for (e, &(d, d2)) in diag.map.edges().iter().enumerate() {
        let mut hits = Vec::new();
        for a in &segments[d] {
            for b in &segments[d2] {
                edge_meetings(a, b, l, &mut hits);
            }
        }
        if hits.is_empty() {
            continue;
        }
        let events: BTreeSet<EdgeEvent> = hits.into_iter().map(|(time, position)| EdgeEvent { time, position }).collect();
        let points = events.iter().map(|ev| ev.position).collect::<BTreeSet<_>>().len();
        edge_points.push(EdgeCollisions { edge: e, events: events.into_iter().collect(), points });
    }

    let m = diag.presentation.m();
    CollisionReport {
        cc_vertices,
        edge_points,
        face_kprime: motion.faces.iter().map(|cars| 1 - cars.len() as i64).collect(),
        chi: diag.map.euler_characteristic(),
        d_constant: diag.k() as i64 * (2 * m + 1),
    }
}

/// Collision times shifted by `delta` and wrapped, for origin-invariance checks.
pub fn shifted_events(report: &CollisionReport, delta: Q, l: Q) -> BTreeSet<(usize, Q, Q)> {
    report
        .edge_points
        .iter()
        .flat_map(|e| e.events.iter().map(move |ev| (e.edge, wrap(ev.time - delta, l), ev.position)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::motion::{from_legs, q, standard_motion};
    use crate::surface::SurfaceMap;

    #[test]
    fn digon_sphere_collisions_by_hand() {
        // both cars at their (+−) corners at even times; the two (+−) corners
        // sit at the same vertex, so that vertex collides at t = 0.
        let p = fixtures::z3_s1_presentation(2);
        let d = fixtures::digon_pair(&p, &crate::kernel::FpWord::single(0, 1));
        let mm = standard_motion(&d).unwrap();
        let rep = detect_collisions(&d, &mm);
        let verts: Vec<usize> = rep.cc_vertices.iter().map(|c| c.vertex).collect();
        assert_eq!(verts.len(), 2);
        for c in &rep.cc_vertices {
            assert!(c.times.iter().all(|iv| iv.is_point() && iv.lo.is_integer()));
        }
        assert!(rep.edge_points.is_empty());
    }

    #[test]
    fn single_car_never_meets_itself() {
        let map = SurfaceMap::build_map(2, vec![1, 0], vec![vec![0, 1]]).unwrap();
        let p = fixtures::cyclic_presentation(3, 2);
        let g = crate::kernel::FpWord::identity();
        let d = HowieDiagram::new(map, &[0], vec![g.clone(), g], vec![0], vec![], p).unwrap();
        let l = q(6);
        let mm = MultipleMotion {
            period: l,
            circle: l,
            faces: vec![vec![from_legs(crate::motion::frac(1, 3), &[(q(1), q(1))], l)]],
        };
        let rep = detect_collisions(&d, &mm);
        assert!(rep.edge_points.is_empty());
    }
}
