//! Brute-force collision oracle for the standard motion.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use relpres_core::fixtures;
use relpres_core::motion::{detect_collisions, frac, shifted_events, standard_motion, wrap, CarSchedule, Piece, Q};
use relpres_core::{HowieDiagram, MultipleMotion};

fn pieces(car: &CarSchedule) -> impl Iterator<Item = &Piece> {
    car.pieces.iter().filter(|p| p.t0 < p.t1)
}

/// Integer positions `j` whose slot is dart `d`, over the range a piece sweeps.
fn slots(cycle: &[usize], d: usize, p: &Piece) -> Vec<i64> {
    let n = cycle.len() as i64;
    let (a, b) = (p.pos0.min(p.end_pos()), p.pos0.max(p.end_pos()));
    (a.floor().to_integer()..=b.floor().to_integer()).filter(|j| cycle[j.rem_euclid(n) as usize] == d).collect()
}

/// Time window in which the piece lies in `[j, j + 1]`.
fn window(p: &Piece, j: i64) -> Option<(Q, Q)> {
    let (lo, hi) = (Q::from(j), Q::from(j + 1));
    if p.vel.is_zero() {
        return (p.pos0 >= lo && p.pos0 <= hi).then_some((p.t0, p.t1));
    }
    let (ta, tb) = (p.t0 + (lo - p.pos0) / p.vel, p.t0 + (hi - p.pos0) / p.vel);
    let (s, e) = (ta.min(tb).max(p.t0), ta.max(tb).min(p.t1));
    (s <= e).then_some((s, e))
}

/// Meetings on each edge, measured along its first dart.
fn edge_oracle(d: &HowieDiagram, mm: &MultipleMotion, swap: bool) -> BTreeSet<(usize, Q, Q)> {
    let l = mm.circle;
    let mut out = BTreeSet::new();
    for (e, &(x, y)) in d.map.edges().iter().enumerate() {
        let (da, db) = if swap { (y, x) } else { (x, y) };
        let (fa, fb) = (d.map.face_of(da), d.map.face_of(db));
        let (ca, cb) = (d.map.face(fa), d.map.face(fb));
        for car_a in &mm.faces[fa] {
            for car_b in &mm.faces[fb] {
                for pa in pieces(car_a) {
                    for pb in pieces(car_b) {
                        for ja in slots(ca, da, pa) {
                            for jb in slots(cb, db, pb) {
                                let (Some(wa), Some(wb)) = (window(pa, ja), window(pb, jb)) else { continue };
                                let (lo, hi) = (wa.0.max(wb.0), wa.1.min(wb.1));
                                if lo > hi {
                                    continue;
                                }
                                let xa = |t: Q| pa.pos_at(t) - Q::from(ja);
                                let xb = |t: Q| pb.pos_at(t) - Q::from(jb);
                                let gap = |t: Q| xa(t) + xb(t) - Q::one();
                                let speed = pa.vel + pb.vel;
                                let times = if speed.is_zero() {
                                    if gap(lo).is_zero() {
                                        vec![lo, hi]
                                    } else {
                                        vec![]
                                    }
                                } else {
                                    let t = lo - gap(lo) / speed;
                                    if t >= lo && t <= hi {
                                        vec![t]
                                    } else {
                                        vec![]
                                    }
                                };
                                for t in times {
                                    let pos = xa(t);
                                    if pos > Q::zero() && pos < Q::one() {
                                        let along = if swap { Q::one() - pos } else { pos };
                                        out.insert((e, wrap(t, l), along));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

fn reported(d: &HowieDiagram, mm: &MultipleMotion) -> BTreeSet<(usize, Q, Q)> {
    shifted_events(&detect_collisions(d, mm), Q::zero(), mm.circle)
}

/// Every instant some car reaches a corner, plus every breakpoint.
fn candidate_times(mm: &MultipleMotion) -> BTreeSet<Q> {
    let mut out = BTreeSet::new();
    for car in mm.faces.iter().flatten() {
        for p in pieces(car) {
            out.insert(p.t0);
            if p.vel.is_zero() {
                out.insert((p.t0 + p.t1) / Q::from(2));
                continue;
            }
            let mut x = p.pos0.ceil();
            while x < p.end_pos() {
                out.insert(p.t0 + (x - p.pos0) / p.vel);
                x += Q::one();
            }
        }
    }
    out.into_iter().map(|t| wrap(t, mm.circle)).collect()
}

fn vertex_full(d: &HowieDiagram, mm: &MultipleMotion, v: &[usize], t: Q) -> bool {
    v.iter().all(|&c| {
        let f = d.map.face_of(c);
        let cycle = d.map.face(f);
        let slot = Q::from(cycle.iter().position(|&x| x == c).unwrap() as i64);
        mm.faces[f].iter().any(|car| car.at(t, cycle.len(), mm.circle) == Some(slot))
    })
}

fn corpus() -> Vec<(String, HowieDiagram)> {
    let mut out = fixtures::corpus();
    out.push(("shared a corner z2 k2".into(), fixtures::shared_a_corner(&fixtures::cyclic_presentation(2, 2))));
    out
}

#[test]
fn edge_collisions_match_oracle() {
    for (name, d) in corpus() {
        let mm = standard_motion(&d).unwrap();
        assert_eq!(reported(&d, &mm), edge_oracle(&d, &mm, false), "{name}");
    }
}

#[test]
fn edge_collisions_symmetric_under_dart_swap() {
    for (name, d) in corpus() {
        let mm = standard_motion(&d).unwrap();
        assert_eq!(edge_oracle(&d, &mm, true), edge_oracle(&d, &mm, false), "{name}");
    }
}

#[test]
fn vertex_collisions_match_oracle() {
    for (name, d) in corpus() {
        let mm = standard_motion(&d).unwrap();
        let rep = detect_collisions(&d, &mm);
        let vertices = d.map.vertices();
        for vc in &rep.cc_vertices {
            for iv in &vc.times {
                for t in [iv.lo, (iv.lo + iv.hi) / Q::from(2), iv.hi] {
                    assert!(vertex_full(&d, &mm, &vertices[vc.vertex], t), "{name} vertex {} at {t}", vc.vertex);
                }
            }
        }
        let times = candidate_times(&mm);
        for (v, orbit) in vertices.iter().enumerate() {
            for &t in &times {
                if vertex_full(&d, &mm, orbit, t) {
                    let covered = rep.cc_vertices.iter().filter(|vc| vc.vertex == v).flat_map(|vc| &vc.times).any(|iv| {
                        (iv.lo <= t && t <= iv.hi) || (t.is_zero() && iv.hi == mm.circle)
                    });
                    assert!(covered, "{name} vertex {v} full at {t} but unreported");
                }
            }
        }
    }
}

#[test]
fn collisions_invariant_under_time_shift() {
    for (name, d) in corpus() {
        let mm = standard_motion(&d).unwrap();
        let base = detect_collisions(&d, &mm);
        for delta in [frac(1, 3), frac(5, 7), Q::from(1), frac(13, 4)] {
            let moved = detect_collisions(&d, &mm.shift_time(delta));
            assert_eq!(shifted_events(&base, delta, mm.circle), shifted_events(&moved, Q::zero(), mm.circle), "{name} {delta}");
            assert_eq!(base.cc_vertices.len(), moved.cc_vertices.len(), "{name} {delta}");
        }
    }
}
