//! Hand-built presentations and diagrams used by tests, benches and the CLI.

use crate::diagram::HowieDiagram;
use crate::kernel::{FpWord, Group, TLetter, TWord};
use crate::rewrite::PhiPresentation;
use crate::surface::SurfaceMap;

/// One dart of a polygon: its edge, whether it runs along the edge, and the
/// label of the corner that follows it.
pub type Side = (usize, bool, FpWord);

/// Builds a diagram from labelled polygons. Faces listed in `exterior` get
/// their corner labels chosen so that every vertex label is trivial.
pub fn build(polygons: &[Vec<Side>], exterior: &[usize], p: &PhiPresentation) -> HowieDiagram {
    let shapes: Vec<Vec<(usize, bool)>> = polygons.iter().map(|f| f.iter().map(|(e, a, _)| (*e, *a)).collect()).collect();
    let (map, forward) = SurfaceMap::from_polygons(&shapes).expect("fixture polygons form a map");
    // label after the dart at position i sits at corner position i + 1
    let mut labels = Vec::with_capacity(map.dart_count());
    for poly in polygons {
        let n = poly.len();
        for j in 0..n {
            labels.push(poly[(j + n - 1) % n].2.clone());
        }
    }
    let mut diagram =
        HowieDiagram::new(map, &forward, labels, exterior.to_vec(), Vec::new(), p.clone()).expect("fixture is well formed");
    close_exterior(&mut diagram);
    diagram
}

/// Sets the first exterior corner at every vertex to the inverse of the rest.
pub fn close_exterior(diagram: &mut HowieDiagram) {
    let group = diagram.presentation.group.clone();
    for orbit in diagram.map.vertices() {
        let Some(at) = orbit.iter().position(|&c| diagram.is_exterior_face(diagram.map.face_of(c))) else {
            continue;
        };
        let r = orbit.len();
        let rest = (1..r).fold(FpWord::identity(), |acc, i| acc.mul(diagram.label(orbit[(at + i) % r]), &group));
        diagram.set_label(orbit[at], rest.inverse(&group));
    }
}

fn z_word(letters: &[(usize, i8)]) -> TWord {
    let mut w = TWord::new();
    for &(g, e) in letters {
        if g != 0 {
            w.push(TLetter::coeff(g));
        }
        w.push(TLetter::t(e));
    }
    w
}

/// `G = ℤn`, `s = 0`, `m = 0`, `c = a_0 = b_0 = g`, from `w = g t g t⁻¹ g t`.
pub fn cyclic_presentation(n: usize, k: u32) -> PhiPresentation {
    let g = FpWord::single(0, 1);
    PhiPresentation::new(Group::cyclic(n), 0, k, g.clone(), vec![g.clone()], vec![g])
        .expect("valid")
        .with_source(z_word(&[(1, 1), (1, -1), (1, 1)]))
}

/// `G = ℤ3`, `s = 1`, `m = 0`, `c = g^(0)`, `a_0 = g^(1)`, `b_0 = g^(0)`.
pub fn z3_s1_presentation(k: u32) -> PhiPresentation {
    let p = PhiPresentation::new(
        Group::cyclic(3),
        1,
        k,
        FpWord::single(0, 1),
        vec![FpWord::single(1, 1)],
        vec![FpWord::single(0, 1)],
    )
    .expect("valid");
    let source = p.relator_period().embed().reduce(&p.group);
    p.with_source(source)
}

fn large_polygon(p: &PhiPresentation, positive: bool, edges: &[usize], flip: bool) -> Vec<Side> {
    p.large_face_pairs(positive)
        .into_iter()
        .zip(edges)
        .map(|((e, label), &edge)| (edge, (e > 0) != flip, label))
        .collect()
}

/// One large face glued to an exterior face along its whole boundary.
pub fn pillow(p: &PhiPresentation) -> HowieDiagram {
    let n = p.period_len() * p.k as usize;
    let large = large_polygon(p, true, &(0..n).collect::<Vec<_>>(), false);
    let outer: Vec<Side> = large.iter().rev().map(|(e, a, _)| (*e, !a, FpWord::identity())).collect();
    build(&[large, outer], &[1], p)
}

/// A large face glued to its mirror image: every edge is a reducible pair.
pub fn mirror_pillow(p: &PhiPresentation) -> HowieDiagram {
    let n = p.period_len() * p.k as usize;
    let large = large_polygon(p, true, &(0..n).collect::<Vec<_>>(), false);
    let group = &p.group;
    let mirror: Vec<Side> = (0..n)
        .map(|i| {
            let (e, a, _) = &large[n - 1 - i];
            (*e, !a, large[(2 * n - 2 - i) % n].2.inverse(group))
        })
        .collect();
    build(&[large, mirror], &[], p)
}

/// Two digons on `q` glued along both edges (a sphere with two faces).
pub fn digon_pair(p: &PhiPresentation, q: &FpWord) -> HowieDiagram {
    let group = &p.group;
    let qi = q.inverse(group);
    let d1 = vec![(0, false, q.clone()), (1, true, p.phi(q).inverse(group))];
    let d2 = vec![(1, false, qi.clone()), (0, true, p.phi(&qi).inverse(group))];
    build(&[d1, d2], &[], p)
}

/// Two digons on `q1` and `q2` sharing one edge, closed off by an exterior face.
pub fn digon_chain(p: &PhiPresentation, q1: &FpWord, q2: &FpWord) -> HowieDiagram {
    let group = &p.group;
    let d1 = vec![(0, false, q1.clone()), (1, true, p.phi(q1).inverse(group))];
    let d2 = vec![(1, false, q2.clone()), (2, true, p.phi(q2).inverse(group))];
    let outer = vec![(2, false, FpWord::identity()), (0, true, FpWord::identity())];
    build(&[d1, d2, outer], &[2], p)
}

/// Two large faces sharing the two edges around an `a_0` corner, closed off by
/// an exterior face. The shared vertex is a source with corners `a_0`, `a_0`.
pub fn shared_a_corner(p: &PhiPresentation) -> HowieDiagram {
    assert_eq!(p.m(), 0, "fixture assumes m = 0");
    let n = p.period_len() * p.k as usize;
    let f1 = large_polygon(p, true, &(0..n).collect::<Vec<_>>(), false);
    let pairs = p.large_face_pairs(true);
    // the second face uses edges 2 and 1 (reversed) as its darts 1 and 2
    let mut edges2 = vec![n, 2, 1];
    edges2.extend(n + 1..2 * n - 2);
    let f2: Vec<Side> = pairs
        .iter()
        .zip(&edges2)
        .map(|((e, label), &edge)| (edge, *e > 0, label.clone()))
        .collect();
    // boundary of the union, anticlockwise: f1 from edge 2 round to edge 1, then f2 likewise
    let boundary: Vec<&Side> = (3..n).chain(0..1).map(|j| &f1[j]).chain((3..n).chain(0..1).map(|j| &f2[j])).collect();
    let outer: Vec<Side> = boundary.iter().rev().map(|(e, a, _)| (*e, !a, FpWord::identity())).collect();
    build(&[f1, f2, outer], &[2], p)
}

/// `G = ℤ3`, `s = 0`, `m = 1`, every coefficient `g`.
pub fn z3_m1_presentation(k: u32) -> PhiPresentation {
    let g = FpWord::single(0, 1);
    PhiPresentation::new(Group::cyclic(3), 0, k, g.clone(), vec![g.clone(), g.clone()], vec![g.clone(), g]).expect("valid")
}

/// `G = ℤ2`, `s = 1`, `m = 0`, `c = g^(0)`, `a_0 = g^(1)`, `b_0 = g^(0)`.
pub fn z2_s1_presentation(k: u32) -> PhiPresentation {
    PhiPresentation::new(Group::cyclic(2), 1, k, FpWord::single(0, 1), vec![FpWord::single(1, 1)], vec![FpWord::single(0, 1)])
        .expect("valid")
}

/// Named diagrams with legal faces, used by the curvature criteria.
pub fn corpus() -> Vec<(String, HowieDiagram)> {
    let z3 = |k| cyclic_presentation(3, k);
    vec![
        ("pillow z3 k2".into(), pillow(&z3(2))),
        ("pillow z3 k3".into(), pillow(&z3(3))),
        ("pillow z3 k5".into(), pillow(&z3(5))),
        ("pillow z3 m1 k2".into(), pillow(&z3_m1_presentation(2))),
        ("pillow z3 m1 k3".into(), pillow(&z3_m1_presentation(3))),
        ("pillow z3 s1 k2".into(), pillow(&z3_s1_presentation(2))),
        ("pillow z2 s1 k4".into(), pillow(&z2_s1_presentation(4))),
        ("mirror pillow z3 k2".into(), mirror_pillow(&z3(2))),
        ("mirror pillow z3 m1 k3".into(), mirror_pillow(&z3_m1_presentation(3))),
        ("digon pair z3 s1".into(), digon_pair(&z3_s1_presentation(2), &FpWord::single(0, 1))),
        ("digon chain z3 s1".into(), digon_chain(&z3_s1_presentation(2), &FpWord::single(0, 1), &FpWord::single(0, 1))),
        ("shared a corner z2 k2".into(), shared_a_corner(&cyclic_presentation(2, 2))),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::FaceKind;

    #[test]
    fn pillow_is_legal() {
        let p = cyclic_presentation(3, 2);
        let d = pillow(&p);
        let r = d.validate_diagram();
        assert!(r.passed(), "{:?}", r.findings);
        assert_eq!(r.faces[0], FaceKind::LargePos { start: 0 });
        assert_eq!(r.faces[1], FaceKind::Exterior);
        assert_eq!(d.map.face(1).len(), 6);
        assert!(d.reducedness_check().phi_reduced);
    }

    #[test]
    fn mirror_is_reducible() {
        let p = cyclic_presentation(3, 2);
        let d = mirror_pillow(&p);
        let r = d.validate_diagram();
        assert!(r.passed(), "{:?}", r.findings);
        assert!(matches!(r.faces[1], FaceKind::LargeNeg { .. }));
        let red = d.reducedness_check();
        assert!(!red.reduced);
        assert_eq!(red.reducible_pairs.len(), 6);
    }

    #[test]
    fn digons_share_edges() {
        let p = z3_s1_presentation(2);
        let d = digon_pair(&p, &FpWord::single(0, 1));
        let r = d.validate_diagram();
        assert!(r.passed(), "{:?}", r.findings);
        assert!(r.faces.iter().all(FaceKind::is_digon));
        let red = d.reducedness_check();
        assert!(!red.phi_reduced);
        assert_eq!(red.digon_adjacencies.len(), 2);
    }

    #[test]
    fn shared_corner_over_z2() {
        let p = cyclic_presentation(2, 2);
        let d = shared_a_corner(&p);
        let r = d.validate_diagram();
        assert!(r.passed(), "{:?}", r.findings);
        assert_eq!(d.map.euler_characteristic(), 2);
        assert!(d.reducedness_check().phi_reduced);
    }
}
