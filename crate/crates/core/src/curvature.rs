//! Corner weights, the combinatorial Gauss–Bonnet identity, and the
//! curvature audits for diagrams over the canonical presentation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::diagram::{CornerType, FaceKind, HowieDiagram, VertexKind};
use crate::surface::SurfaceMap;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurvatureError {
    #[error("{got} weights for {corners} corners")]
    MissingWeight { got: usize, corners: usize },
    #[error("face {0} is neither exterior, a digon nor a large face")]
    UnclassifiedFace(usize),
    #[error("wrong shape: {0}")]
    WrongShape(String),
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurvatureReport {
    pub vertex: Vec<BigRational>,
    pub face: Vec<BigRational>,
    pub edge: Vec<BigRational>,
    pub total: BigRational,
    pub chi: i64,
}

impl CurvatureReport {
    /// Total curvature equals `2χ`.
    pub fn identity_holds(&self) -> bool {
        self.total == rat(2 * self.chi)
    }
}

/// `K(v) = 2 − Σ ν(c)` over the corners at `v`, `K(D) = 2 − Σ (1 − ν(c))` over
/// the corners of `D`, `K(e) = 0`.
pub fn gauss_bonnet_report(map: &SurfaceMap, nu: &[BigRational]) -> Result<CurvatureReport, CurvatureError> {
    if nu.len() != map.dart_count() {
        return Err(CurvatureError::MissingWeight { got: nu.len(), corners: map.dart_count() });
    }
    let two = rat(2);
    let vertex: Vec<BigRational> =
        map.vertices().iter().map(|orbit| orbit.iter().fold(two.clone(), |acc, &c| acc - &nu[c])).collect();
    let face: Vec<BigRational> = map
        .faces()
        .iter()
        .map(|cycle| cycle.iter().fold(two.clone(), |acc, &c| acc - (BigRational::one() - &nu[c])))
        .collect();
    let edge = vec![BigRational::zero(); map.edge_count()];
    let total = vertex.iter().chain(&face).chain(&edge).fold(BigRational::zero(), |acc, x| acc + x);
    Ok(CurvatureReport { vertex, face, edge, total, chi: map.euler_characteristic() })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SpecialDigon {
    pub face: usize,
    pub positive: usize,
    pub negative: usize,
}

/// Weights in `{−1, 0, 1}` per corner plus the special digons found.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Weights {
    pub nu: Vec<i64>,
    pub special: Vec<SpecialDigon>,
    pub kinds: Vec<FaceKind>,
}

impl Weights {
    pub fn as_rationals(&self) -> Vec<BigRational> {
        self.nu.iter().map(|&x| rat(x)).collect()
    }
}

/// A digon is special when both faces across its edges are interior and one
/// corner has a `(++)` and a `(−−)` corner as its two rotation neighbours.
pub fn special_digon(diag: &HowieDiagram, face: usize) -> Option<SpecialDigon> {
    let map = &diag.map;
    let cycle = map.face(face);
    if cycle.len() != 2 {
        return None;
    }
    if cycle.iter().any(|&d| {
        let g = map.face_of(map.theta(d));
        g == face || diag.is_exterior_face(g)
    }) {
        return None;
    }
    let qualifies = |c: usize| {
        let a = diag.corner_type(map.rho(c));
        let b = diag.corner_type(diag.rho_inv(c));
        matches!(
            (a, b),
            (CornerType::PlusPlus, CornerType::MinusMinus) | (CornerType::MinusMinus, CornerType::PlusPlus)
        )
    };
    let (c0, c1) = (cycle[0], cycle[1]);
    if qualifies(c0) {
        Some(SpecialDigon { face, positive: c0, negative: c1 })
    } else if qualifies(c1) {
        Some(SpecialDigon { face, positive: c1, negative: c0 })
    } else {
        None
    }
}

pub fn section5_weights(diag: &HowieDiagram) -> Result<Weights, CurvatureError> {
    let kinds = diag.classify_faces();
    let map = &diag.map;
    let mut nu = vec![1i64; map.dart_count()];
    let mut special = Vec::new();
    for (f, kind) in kinds.iter().enumerate() {
        match kind {
            FaceKind::Illegal => return Err(CurvatureError::UnclassifiedFace(f)),
            FaceKind::Exterior => {}
            FaceKind::Digon { .. } => match special_digon(diag, f) {
                Some(sd) => {
                    nu[sd.negative] = -1;
                    special.push(sd);
                }
                None => map.face(f).iter().for_each(|&c| nu[c] = 0),
            },
            FaceKind::LargePos { .. } | FaceKind::LargeNeg { .. } => {
                for &c in map.face(f) {
                    if diag.corner_type(c).is_stop() {
                        nu[c] = 0;
                    }
                }
            }
        }
    }
    Ok(Weights { nu, special, kinds })
}

/// Integer face curvature `2 − Σ (1 − ν)`.
pub fn face_curvature(diag: &HowieDiagram, w: &Weights, f: usize) -> i64 {
    2 - diag.map.face(f).iter().map(|&c| 1 - w.nu[c]).sum::<i64>()
}

pub fn vertex_curvature(diag: &HowieDiagram, w: &Weights, v: usize) -> i64 {
    2 - diag.map.vertices()[v].iter().map(|&c| w.nu[c]).sum::<i64>()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VertexCensus {
    pub n: i64,
    pub l: i64,
    pub p: i64,
    pub x: i64,
    pub curvature: i64,
    pub identity_holds: bool,
}

impl VertexCensus {
    pub fn formula(&self) -> i64 {
        2 + self.n - self.l - self.p - self.x
    }
}

pub fn vertex_census(diag: &HowieDiagram, w: &Weights, v: usize) -> VertexCensus {
    let (mut n, mut l, mut p, mut x) = (0, 0, 0, 0);
    for &c in &diag.map.vertices()[v] {
        let f = diag.map.face_of(c);
        match &w.kinds[f] {
            FaceKind::Exterior => x += 1,
            k if k.is_large() && !diag.corner_type(c).is_stop() => l += 1,
            _ => {}
        }
        for sd in &w.special {
            if sd.positive == c {
                p += 1;
            }
            if sd.negative == c {
                n += 1;
            }
        }
    }
    let curvature = vertex_curvature(diag, w, v);
    let mut census = VertexCensus { n, l, p, x, curvature, identity_holds: false };
    census.identity_holds = census.formula() == curvature;
    census
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "finding")]
pub enum CurvatureFinding {
    PositiveInteriorVertex { vertex: usize, curvature: i64, case: String, kind: VertexKind, label: String },
    TooFewLargeCorners { vertex: usize, n: i64, l: i64 },
    AdjacentStopCorners { vertex: usize, corners: (usize, usize) },
    CensusMismatch { vertex: usize },
}

/// Vertices that are not on the boundary of an exterior face and not exterior.
pub fn interior_vertices(diag: &HowieDiagram) -> Vec<usize> {
    diag.boundary_vertices().iter().enumerate().filter(|(_, &b)| !b).map(|(v, _)| v).collect()
}

pub fn interior_curvature_audit(diag: &HowieDiagram) -> Result<Vec<CurvatureFinding>, CurvatureError> {
    let w = section5_weights(diag)?;
    let vertices = diag.map.vertices();
    let mut out = Vec::new();
    for v in interior_vertices(diag) {
        let census = vertex_census(diag, &w, v);
        if !census.identity_holds {
            out.push(CurvatureFinding::CensusMismatch { vertex: v });
        }
        if census.curvature > 0 {
            let case = match (census.p, census.n, census.l) {
                (0, 1, 2) => "n=1,l=2",
                (0, 0, 1) => "n=0,l=1",
                (0, 0, 0) => "n=0,l=0",
                _ => "other",
            };
            out.push(CurvatureFinding::PositiveInteriorVertex {
                vertex: v,
                curvature: census.curvature,
                case: case.into(),
                kind: diag.vertex_kind(v),
                label: diag.vertex_label(v).to_string(),
            });
        }
        if census.l < 2 * census.n {
            out.push(CurvatureFinding::TooFewLargeCorners { vertex: v, n: census.n, l: census.l });
        }
        let orbit = &vertices[v];
        for i in 0..orbit.len() {
            let (a, b) = (orbit[i], orbit[(i + 1) % orbit.len()]);
            if a == b {
                continue;
            }
            let (ta, tb) = (diag.corner_type(a), diag.corner_type(b));
            let interior = |c: usize| !diag.is_exterior_face(diag.map.face_of(c));
            if ta.is_stop() && tb.is_stop() && ta != tb && interior(a) && interior(b) {
                out.push(CurvatureFinding::AdjacentStopCorners { vertex: v, corners: (a, b) });
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsoperimetricVerdict {
    pub k: u32,
    pub perimeter: i64,
    pub large_faces: i64,
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
}

/// `2·perimeter − (k − 2)·large + 2 ≥ 4`.
pub fn isoperimetric_k3_values(k: u32, perimeter: i64, large_faces: i64) -> IsoperimetricVerdict {
    let lhs = 2 * perimeter - (k as i64 - 2) * large_faces + 2;
    IsoperimetricVerdict { k, perimeter, large_faces, lhs, rhs: 4, holds: lhs >= 4 }
}

/// One exterior face and no exterior vertex; returns the face index.
pub fn disk_exterior(diag: &HowieDiagram) -> Result<usize, CurvatureError> {
    match (diag.exterior_faces.as_slice(), diag.exterior_vertices.is_empty()) {
        ([f], true) => Ok(*f),
        _ => Err(CurvatureError::WrongShape("need exactly one exterior face and no exterior vertex".into())),
    }
}

pub fn count_large(diag: &HowieDiagram) -> i64 {
    diag.classify_faces().iter().filter(|k| k.is_large()).count() as i64
}

pub fn isoperimetric_check_k3(diag: &HowieDiagram) -> Result<IsoperimetricVerdict, CurvatureError> {
    let k = diag.k();
    if k < 3 {
        return Err(CurvatureError::WrongShape(format!("k = {k} < 3; use the combined audit")));
    }
    let ext = disk_exterior(diag)?;
    let perimeter = diag.map.face(ext).len() as i64;
    Ok(isoperimetric_k3_values(k, perimeter, count_large(diag)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::surface::SurfaceMap;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn zero_weights() {
        let m = SurfaceMap::build_map(4, vec![2, 3, 0, 1], vec![vec![0, 1, 2, 3]]).unwrap();
        let rep = gauss_bonnet_report(&m, &vec![BigRational::zero(); 4]).unwrap();
        assert_eq!(rep.vertex, vec![rat(2)]);
        assert_eq!(rep.face, vec![rat(-2)]);
        assert_eq!(rep.total, rat(0));
        assert!(rep.identity_holds());
    }

    #[test]
    fn tetrahedron_fractional() {
        let polys = vec![
            vec![(0, true), (1, true), (2, true)],
            vec![(0, false), (3, true), (4, false)],
            vec![(1, false), (4, true), (5, false)],
            vec![(2, false), (5, true), (3, false)],
        ];
        let (m, _) = SurfaceMap::from_polygons(&polys).unwrap();
        let nu: Vec<BigRational> = (0..12).map(|i| r(i * 7 - 30, i + 2)).collect();
        let rep = gauss_bonnet_report(&m, &nu).unwrap();
        assert_eq!(rep.total, rat(4));
        assert!(gauss_bonnet_report(&m, &nu[..11]).is_err());
    }

    #[test]
    fn pillow_face_curvatures() {
        for k in [2, 3, 4] {
            let d = fixtures::pillow(&fixtures::cyclic_presentation(3, k));
            let w = section5_weights(&d).unwrap();
            assert_eq!(face_curvature(&d, &w, 0), 2 - k as i64);
            assert_eq!(face_curvature(&d, &w, 1), 2);
            for v in 0..d.map.vertices().len() {
                let c = vertex_census(&d, &w, v);
                assert!(c.identity_holds);
                assert_eq!(c.x, 1);
            }
        }
    }

    #[test]
    fn nonspecial_digons_are_flat() {
        let p = fixtures::z3_s1_presentation(2);
        let d = fixtures::digon_pair(&p, &crate::kernel::FpWord::single(0, 1));
        let w = section5_weights(&d).unwrap();
        assert!(w.special.is_empty());
        assert_eq!(face_curvature(&d, &w, 0), 0);
        assert_eq!(face_curvature(&d, &w, 1), 0);
    }

    #[test]
    fn isoperimetric_values() {
        let v = isoperimetric_k3_values(3, 9, 1);
        assert_eq!((v.lhs, v.holds), (19, true));
        assert!(!isoperimetric_k3_values(3, 1, 100).holds);
        let d = fixtures::pillow(&fixtures::cyclic_presentation(3, 3));
        assert_eq!(isoperimetric_check_k3(&d).unwrap(), v);
        let d2 = fixtures::pillow(&fixtures::cyclic_presentation(3, 2));
        assert!(matches!(isoperimetric_check_k3(&d2), Err(CurvatureError::WrongShape(_))));
    }

    #[test]
    fn shared_corner_is_flat_source() {
        let d = fixtures::shared_a_corner(&fixtures::cyclic_presentation(2, 2));
        let inner = interior_vertices(&d);
        assert_eq!(inner.len(), 1);
        let w = section5_weights(&d).unwrap();
        let c = vertex_census(&d, &w, inner[0]);
        assert_eq!((c.p, c.n, c.l, c.x, c.curvature), (0, 0, 2, 0, 0));
        assert_eq!(d.vertex_kind(inner[0]), VertexKind::Source);
        assert!(interior_curvature_audit(&d).unwrap().is_empty());
    }

    #[test]
    fn mirror_has_adjacent_stops() {
        let d = fixtures::mirror_pillow(&fixtures::cyclic_presentation(3, 2));
        let findings = interior_curvature_audit(&d).unwrap();
        assert!(findings.iter().any(|f| matches!(f, CurvatureFinding::AdjacentStopCorners { .. })));
    }
}
