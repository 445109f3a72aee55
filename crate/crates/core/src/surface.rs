//! Combinatorial maps on closed oriented surfaces.
//!
//! A map is a set of darts, a fixed-point-free involution `theta` pairing darts
//! into edges, and a partition of the darts into anticlockwise face cycles.
//! Corner `d` is the gap of its face just before dart `d`, so corners and darts
//! share indices. The vertex rotation is `ρ(d) = next(θ(d))`.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("a map needs a positive even number of darts, got {0}")]
    BadDartCount(usize),
    #[error("theta has {got} entries for {darts} darts")]
    ThetaLength { got: usize, darts: usize },
    #[error("theta is not an involution at dart {0}")]
    ThetaNotInvolution(usize),
    #[error("theta fixes dart {0}")]
    ThetaHasFixedPoint(usize),
    #[error("faces do not partition the darts: {0}")]
    FacesNotPartition(String),
    #[error("face degrees sum to the odd number {0}")]
    OddDartTotal(usize),
    #[error("edge {0} appears {1} times; each edge must appear exactly twice")]
    EdgeMultiplicity(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapFile {
    pub darts: usize,
    pub theta: Vec<usize>,
    pub faces: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceMap {
    theta: Vec<usize>,
    faces: Vec<Vec<usize>>,
    face_of: Vec<usize>,
    pos_of: Vec<usize>,
}

impl SurfaceMap {
    pub fn build_map(darts: usize, theta: Vec<usize>, faces: Vec<Vec<usize>>) -> Result<Self, MapError> {
        if darts == 0 || darts % 2 == 1 {
            return Err(MapError::BadDartCount(darts));
        }
        if theta.len() != darts {
            return Err(MapError::ThetaLength { got: theta.len(), darts });
        }
        for (d, &e) in theta.iter().enumerate() {
            if e >= darts || theta[e] != d {
                return Err(MapError::ThetaNotInvolution(d));
            }
            if e == d {
                return Err(MapError::ThetaHasFixedPoint(d));
            }
        }
        let mut face_of = vec![usize::MAX; darts];
        let mut pos_of = vec![0; darts];
        for (f, cycle) in faces.iter().enumerate() {
            if cycle.is_empty() {
                return Err(MapError::FacesNotPartition(format!("face {f} is empty")));
            }
            for (i, &d) in cycle.iter().enumerate() {
                if d >= darts {
                    return Err(MapError::FacesNotPartition(format!("dart {d} out of range")));
                }
                if face_of[d] != usize::MAX {
                    return Err(MapError::FacesNotPartition(format!("dart {d} appears twice")));
                }
                face_of[d] = f;
                pos_of[d] = i;
            }
        }
        if let Some(d) = face_of.iter().position(|&f| f == usize::MAX) {
            return Err(MapError::FacesNotPartition(format!("dart {d} belongs to no face")));
        }
        Ok(SurfaceMap { theta, faces, face_of, pos_of })
    }

    pub fn from_file(file: MapFile) -> Result<Self, MapError> {
        Self::build_map(file.darts, file.theta, file.faces)
    }

    pub fn to_file(&self) -> MapFile {
        MapFile { darts: self.dart_count(), theta: self.theta.clone(), faces: self.faces.clone() }
    }

    /// Builds a map from polygon boundaries given as `(edge, along)` pairs; every
    /// edge must occur exactly twice. Darts are numbered face by face. Also
    /// returns, per edge, the dart that was listed with `along = true` (or the
    /// first occurrence when both or neither are).
    pub fn from_polygons(polygons: &[Vec<(usize, bool)>]) -> Result<(Self, Vec<usize>), MapError> {
        let edge_count = polygons.iter().flatten().map(|&(e, _)| e + 1).max().unwrap_or(0);
        let mut seen: Vec<Vec<(usize, bool)>> = vec![Vec::new(); edge_count];
        let mut faces = Vec::with_capacity(polygons.len());
        let mut next = 0;
        for poly in polygons {
            let mut cycle = Vec::with_capacity(poly.len());
            for &(e, along) in poly {
                seen[e].push((next, along));
                cycle.push(next);
                next += 1;
            }
            faces.push(cycle);
        }
        let mut theta = vec![0; next];
        let mut forward = Vec::with_capacity(edge_count);
        for (e, uses) in seen.iter().enumerate() {
            if uses.len() != 2 {
                return Err(MapError::EdgeMultiplicity(e, uses.len()));
            }
            let (a, b) = (uses[0].0, uses[1].0);
            theta[a] = b;
            theta[b] = a;
            forward.push(if !uses[0].1 && uses[1].1 { b } else { a });
        }
        Ok((Self::build_map(next, theta, faces)?, forward))
    }

    pub fn dart_count(&self) -> usize {
        self.theta.len()
    }

    pub fn theta(&self, d: usize) -> usize {
        self.theta[d]
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn face(&self, f: usize) -> &[usize] {
        &self.faces[f]
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn edge_count(&self) -> usize {
        self.theta.len() / 2
    }

    pub fn face_of(&self, d: usize) -> usize {
        self.face_of[d]
    }

    /// Position of dart `d` (equivalently of corner `d`) in its face cycle.
    pub fn pos_of(&self, d: usize) -> usize {
        self.pos_of[d]
    }

    /// Dart following `d` in its face.
    pub fn next(&self, d: usize) -> usize {
        let f = &self.faces[self.face_of[d]];
        f[(self.pos_of[d] + 1) % f.len()]
    }

    /// Dart preceding `d` in its face; corner `d` sits between `prev(d)` and `d`.
    pub fn prev(&self, d: usize) -> usize {
        let f = &self.faces[self.face_of[d]];
        f[(self.pos_of[d] + f.len() - 1) % f.len()]
    }

    /// The rotation `ρ` on corners.
    pub fn rho(&self, c: usize) -> usize {
        self.next(self.theta[c])
    }

    /// Edges listed by their smaller dart, in increasing order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.dart_count()).filter(|&d| d < self.theta[d]).map(|d| (d, self.theta[d])).collect()
    }

    /// Index of the edge containing `d` in [`SurfaceMap::edges`].
    pub fn edge_of(&self, d: usize) -> usize {
        let lo = d.min(self.theta[d]);
        (0..lo).filter(|&x| x < self.theta[x]).count()
    }

    /// `ρ`-orbits, each starting at its smallest corner; ordered by that corner.
    pub fn vertices(&self) -> Vec<Vec<usize>> {
        let n = self.dart_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut c = start;
            while !seen[c] {
                seen[c] = true;
                orbit.push(c);
                c = self.rho(c);
            }
            out.push(orbit);
        }
        out
    }

    /// Vertex index of every corner.
    pub fn vertex_of_corners(&self) -> Vec<usize> {
        let mut out = vec![0; self.dart_count()];
        for (v, orbit) in self.vertices().iter().enumerate() {
            for &c in orbit {
                out[c] = v;
            }
        }
        out
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices().len() as i64 - self.edge_count() as i64 + self.face_count() as i64
    }

    /// `ρ` must be a bijection on corners.
    pub fn rho_is_permutation(&self) -> bool {
        let mut hit = vec![false; self.dart_count()];
        for c in 0..self.dart_count() {
            let r = self.rho(c);
            if hit[r] {
                return false;
            }
            hit[r] = true;
        }
        true
    }
}

/// Faces of the given degrees with a uniformly random pairing of the darts.
pub fn random_map(degrees: &[usize], seed: u64) -> Result<SurfaceMap, MapError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_map_with(degrees, &mut rng)
}

pub fn random_map_with<R: rand::Rng>(degrees: &[usize], rng: &mut R) -> Result<SurfaceMap, MapError> {
    let total: usize = degrees.iter().sum();
    if total % 2 == 1 {
        return Err(MapError::OddDartTotal(total));
    }
    let mut faces = Vec::with_capacity(degrees.len());
    let mut next = 0;
    for &deg in degrees {
        faces.push((next..next + deg).collect());
        next += deg;
    }
    let mut order: Vec<usize> = (0..total).collect();
    order.shuffle(rng);
    let mut theta = vec![0; total];
    for pair in order.chunks(2) {
        theta[pair[0]] = pair[1];
        theta[pair[1]] = pair[0];
    }
    SurfaceMap::build_map(total, theta, faces)
}
