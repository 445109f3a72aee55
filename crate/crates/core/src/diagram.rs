//! Howie diagrams over the canonical φ-presentation.
//!
//! Every edge is labelled by `t`; a dart is positive when it is traversed along
//! the edge orientation. A face is read anticlockwise as `t^{ε_1} λ_1 t^{ε_2} λ_2 …`
//! where `λ_i` labels the corner after the `i`-th dart.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kernel::{FpError, FpWord};
use crate::rewrite::{HWord, PhiPresentation};
use crate::surface::{MapError, SurfaceMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error(transparent)]
    Map(#[from] MapError),
    #[error("edgeForward lists {got} darts for {edges} edges")]
    ForwardCount { got: usize, edges: usize },
    #[error("edge of dart {0} is given two forward darts or none")]
    ForwardEdge(usize),
    #[error("{got} corner labels for {corners} corners")]
    LabelCount { got: usize, corners: usize },
    #[error("corner {corner}: {source}")]
    Label { corner: usize, source: FpError },
    #[error("exterior face {0} does not exist")]
    ExteriorFace(usize),
    #[error("exterior vertex {0} does not exist")]
    ExteriorVertex(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DiagramFile {
    pub darts: usize,
    pub theta: Vec<usize>,
    pub faces: Vec<Vec<usize>>,
    pub edge_forward: Vec<usize>,
    /// One label per corner, face by face in face order.
    pub corner_labels: Vec<FpWord>,
    #[serde(default)]
    pub exterior_faces: Vec<usize>,
    #[serde(default)]
    pub exterior_vertices: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub presentation: Option<String>,
    #[serde(default = "yes")]
    pub sphere: bool,
}

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CornerType {
    #[serde(rename = "++")]
    PlusPlus,
    #[serde(rename = "--")]
    MinusMinus,
    #[serde(rename = "+-")]
    PlusMinus,
    #[serde(rename = "-+")]
    MinusPlus,
}

impl CornerType {
    pub fn from_signs(incoming: i8, outgoing: i8) -> Self {
        match (incoming > 0, outgoing > 0) {
            (true, true) => CornerType::PlusPlus,
            (false, false) => CornerType::MinusMinus,
            (true, false) => CornerType::PlusMinus,
            (false, true) => CornerType::MinusPlus,
        }
    }

    /// `(++)` or `(−−)`.
    pub fn is_stop(self) -> bool {
        matches!(self, CornerType::PlusPlus | CornerType::MinusMinus)
    }
}

/// `start` is the face position of the dart matched with the first pair of the pattern.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum FaceKind {
    Exterior,
    Digon { p: FpWord, start: usize },
    LargePos { start: usize },
    LargeNeg { start: usize },
    Illegal,
}

impl FaceKind {
    pub fn is_large(&self) -> bool {
        matches!(self, FaceKind::LargePos { .. } | FaceKind::LargeNeg { .. })
    }

    pub fn is_digon(&self) -> bool {
        matches!(self, FaceKind::Digon { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum VertexKind {
    Sink,
    Source,
    Mixed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HowieDiagram {
    pub map: SurfaceMap,
    forward: Vec<bool>,
    labels: Vec<FpWord>,
    pub exterior_faces: Vec<usize>,
    pub exterior_vertices: Vec<usize>,
    pub presentation: PhiPresentation,
    pub require_sphere: bool,
}

impl HowieDiagram {
    /// `labels` holds one label per corner, face by face in face order.
    pub fn new(
        map: SurfaceMap,
        edge_forward: &[usize],
        labels: Vec<FpWord>,
        exterior_faces: Vec<usize>,
        exterior_vertices: Vec<usize>,
        presentation: PhiPresentation,
    ) -> Result<Self, DiagramError> {
        let n = map.dart_count();
        if edge_forward.len() != map.edge_count() {
            return Err(DiagramError::ForwardCount { got: edge_forward.len(), edges: map.edge_count() });
        }
        let mut forward = vec![false; n];
        for &d in edge_forward {
            if d >= n || forward[d] || forward[map.theta(d)] {
                return Err(DiagramError::ForwardEdge(d.min(n.saturating_sub(1))));
            }
            forward[d] = true;
        }
        if labels.len() != n {
            return Err(DiagramError::LabelCount { got: labels.len(), corners: n });
        }
        let mut by_corner = vec![FpWord::identity(); n];
        let mut it = labels.into_iter();
        for (i, &d) in map.faces().iter().flatten().enumerate() {
            let w = it.next().expect("length checked");
            by_corner[d] =
                w.reduce_checked(&presentation.group, presentation.s).map_err(|source| DiagramError::Label { corner: i, source })?;
        }
        if let Some(&f) = exterior_faces.iter().find(|&&f| f >= map.face_count()) {
            return Err(DiagramError::ExteriorFace(f));
        }
        let vcount = map.vertices().len();
        if let Some(&v) = exterior_vertices.iter().find(|&&v| v >= vcount) {
            return Err(DiagramError::ExteriorVertex(v));
        }
        Ok(HowieDiagram { map, forward, labels: by_corner, exterior_faces, exterior_vertices, presentation, require_sphere: true })
    }

    pub fn from_file(file: DiagramFile, presentation: PhiPresentation) -> Result<Self, DiagramError> {
        let map = SurfaceMap::build_map(file.darts, file.theta, file.faces)?;
        let mut d = Self::new(map, &file.edge_forward, file.corner_labels, file.exterior_faces, file.exterior_vertices, presentation)?;
        d.require_sphere = file.sphere;
        Ok(d)
    }

    pub fn to_file(&self, presentation: Option<String>) -> DiagramFile {
        let edge_forward = self.map.edges().iter().map(|&(a, b)| if self.forward[a] { a } else { b }).collect();
        let corner_labels = self.map.faces().iter().flatten().map(|&d| self.labels[d].clone()).collect();
        let mf = self.map.to_file();
        DiagramFile {
            darts: mf.darts,
            theta: mf.theta,
            faces: mf.faces,
            edge_forward,
            corner_labels,
            exterior_faces: self.exterior_faces.clone(),
            exterior_vertices: self.exterior_vertices.clone(),
            presentation,
            sphere: self.require_sphere,
        }
    }

    pub fn k(&self) -> u32 {
        self.presentation.k
    }

    /// `+1` when dart `d` runs along its edge's orientation.
    pub fn sign(&self, d: usize) -> i8 {
        if self.forward[d] {
            1
        } else {
            -1
        }
    }

    pub fn is_forward(&self, d: usize) -> bool {
        self.forward[d]
    }

    pub fn label(&self, corner: usize) -> &FpWord {
        &self.labels[corner]
    }

    pub fn set_label(&mut self, corner: usize, w: FpWord) {
        self.labels[corner] = w.reduce(&self.presentation.group);
    }

    pub fn is_exterior_face(&self, f: usize) -> bool {
        self.exterior_faces.contains(&f)
    }

    /// `(ε, corner label)` pairs of face `f` starting at face position `start`.
    pub fn face_pairs(&self, f: usize, start: usize) -> Vec<(i8, FpWord)> {
        let cycle = self.map.face(f);
        let n = cycle.len();
        (0..n)
            .map(|i| {
                let d = cycle[(start + i) % n];
                (self.sign(d), self.labels[self.map.next(d)].clone())
            })
            .collect()
    }

    pub fn face_label(&self, f: usize, start: usize) -> HWord {
        HWord::from_signed_pairs(&self.face_pairs(f, start))
    }

    /// Product of the corner labels around `v` in rotation order.
    pub fn vertex_label(&self, v: usize) -> FpWord {
        let orbit = &self.map.vertices()[v];
        let group = &self.presentation.group;
        orbit.iter().fold(FpWord::identity(), |acc, &c| acc.mul(&self.labels[c], group))
    }

    pub fn corner_type(&self, c: usize) -> CornerType {
        CornerType::from_signs(self.sign(self.map.prev(c)), self.sign(c))
    }

    pub fn vertex_kind(&self, v: usize) -> VertexKind {
        let orbit = &self.map.vertices()[v];
        let types: Vec<CornerType> = orbit.iter().map(|&c| self.corner_type(c)).collect();
        if types.iter().all(|&t| t == CornerType::PlusMinus) {
            VertexKind::Sink
        } else if types.iter().all(|&t| t == CornerType::MinusPlus) {
            VertexKind::Source
        } else {
            VertexKind::Mixed
        }
    }

    /// `(++)` and `(−−)` corners alternate around `v`; without them, `v` is a sink or a source.
    pub fn lemma4_holds(&self, v: usize) -> bool {
        let orbit = &self.map.vertices()[v];
        let stops: Vec<CornerType> = orbit.iter().map(|&c| self.corner_type(c)).filter(|t| t.is_stop()).collect();
        if stops.is_empty() {
            return self.vertex_kind(v) != VertexKind::Mixed;
        }
        stops.len() % 2 == 0 && (0..stops.len()).all(|i| stops[i] != stops[(i + 1) % stops.len()])
    }

    /// `ρ⁻¹`.
    pub fn rho_inv(&self, c: usize) -> usize {
        self.map.theta(self.map.prev(c))
    }

    /// Vertices touching an exterior face, plus exterior vertices.
    pub fn boundary_vertices(&self) -> Vec<bool> {
        let vertex_of = self.map.vertex_of_corners();
        let mut out = vec![false; self.map.vertices().len()];
        for &f in &self.exterior_faces {
            for &c in self.map.face(f) {
                out[vertex_of[c]] = true;
            }
        }
        for &v in &self.exterior_vertices {
            out[v] = true;
        }
        out
    }

    /// Edges with a dart on an exterior face.
    pub fn boundary_edges(&self) -> Vec<bool> {
        self.map
            .edges()
            .iter()
            .map(|&(a, b)| self.is_exterior_face(self.map.face_of(a)) || self.is_exterior_face(self.map.face_of(b)))
            .collect()
    }

    pub fn classify_faces(&self) -> Vec<FaceKind> {
        (0..self.map.face_count()).map(|f| self.classify_face(f)).collect()
    }

    pub fn classify_face(&self, f: usize) -> FaceKind {
        if self.is_exterior_face(f) {
            return FaceKind::Exterior;
        }
        let p = &self.presentation;
        let n = self.map.face(f).len();
        if n == 2 {
            for start in 0..2 {
                let pairs = self.face_pairs(f, start);
                let q = &pairs[0].1;
                if pairs[0].0 == -1 && !q.is_empty() && p.in_p(q) && pairs == p.digon_pairs(q) {
                    return FaceKind::Digon { p: q.clone(), start };
                }
            }
        }
        let period = p.period_len();
        if n == period * p.k as usize {
            let pos = p.large_face_pairs(true);
            let neg = p.large_face_pairs(false);
            for start in 0..period {
                let pairs = self.face_pairs(f, start);
                if pairs == pos {
                    return FaceKind::LargePos { start };
                }
                if pairs == neg {
                    return FaceKind::LargeNeg { start };
                }
            }
        }
        FaceKind::Illegal
    }

    pub fn reducedness_check(&self) -> ReducednessReport {
        let kinds = self.classify_faces();
        let group = &self.presentation.group;
        let mut report = ReducednessReport { reduced: true, phi_reduced: true, reducible_pairs: Vec::new(), digon_adjacencies: Vec::new() };
        for (e, &(d, o)) in self.map.edges().iter().enumerate() {
            let (f1, f2) = (self.map.face_of(d), self.map.face_of(o));
            if f1 == f2 || self.is_exterior_face(f1) || self.is_exterior_face(f2) {
                continue;
            }
            let starting = self.face_label(f1, self.map.pos_of(d)).free_reduce(group);
            let mut other = self.face_label(f2, self.map.pos_of(o));
            let first = other.0.remove(0);
            other.0.push(first);
            if starting == other.inverse(group).free_reduce(group) {
                report.reduced = false;
                report.reducible_pairs.push(FacePair { edge: e, faces: (f1, f2) });
            }
            if kinds[f1].is_digon() && kinds[f2].is_digon() {
                report.digon_adjacencies.push(FacePair { edge: e, faces: (f1, f2) });
            }
        }
        report.phi_reduced = report.reduced && report.digon_adjacencies.is_empty();
        report
    }

    pub fn validate_diagram(&self) -> DiagramReport {
        let kinds = self.classify_faces();
        let mut findings = Vec::new();
        for (f, kind) in kinds.iter().enumerate() {
            if *kind == FaceKind::Illegal {
                findings.push(Finding::IllegalFace { face: f, label: self.face_label(f, 0).to_string() });
            }
        }
        let vertices = self.map.vertices();
        for v in 0..vertices.len() {
            if self.exterior_vertices.contains(&v) {
                continue;
            }
            let label = self.vertex_label(v);
            if !label.is_empty() {
                findings.push(Finding::InteriorVertexNontrivial { vertex: v, label: label.to_string() });
            }
            if !self.lemma4_holds(v) {
                findings.push(Finding::CornerTypesOutOfOrder { vertex: v });
            }
        }
        let chi = self.map.euler_characteristic();
        if self.require_sphere && chi != 2 {
            findings.push(Finding::NotSphere { chi });
        }
        if self.exterior_faces.len() > 1 || self.exterior_vertices.len() > 1 {
            findings.push(Finding::ExteriorMarking { detail: "more than one exterior face or vertex".into() });
        }
        if !self.exterior_faces.is_empty() && !self.exterior_vertices.is_empty() {
            findings.push(Finding::ExteriorMarking { detail: "both an exterior face and an exterior vertex".into() });
        }
        DiagramReport { chi, faces: kinds, findings }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FacePair {
    pub edge: usize,
    pub faces: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReducednessReport {
    pub reduced: bool,
    pub phi_reduced: bool,
    pub reducible_pairs: Vec<FacePair>,
    pub digon_adjacencies: Vec<FacePair>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "finding")]
pub enum Finding {
    IllegalFace { face: usize, label: String },
    InteriorVertexNontrivial { vertex: usize, label: String },
    CornerTypesOutOfOrder { vertex: usize },
    NotSphere { chi: i64 },
    ExteriorMarking { detail: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagramReport {
    pub chi: i64,
    pub faces: Vec<FaceKind>,
    pub findings: Vec<Finding>,
}

impl DiagramReport {
    pub fn passed(&self) -> bool {
        self.findings.is_empty()
    }
}
