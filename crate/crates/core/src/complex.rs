//! Finite abstract simplicial complexes.
//!
//! Vertices are indices `0..labels.len()`; every labelled vertex is a 0-face.
//! Faces are stored per dimension in ordered sets so iteration is
//! deterministic, and the edge/triangle incidence that curvature needs is
//! indexed once at construction.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::poset::{ChainCapExceeded, Element, Poset};
use crate::NodeId;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("vertex index {index} out of range for {count} vertices")]
    VertexOutOfRange { index: usize, count: usize },
    #[error("face {face} is missing its boundary face {missing}")]
    NotDownwardClosed { face: Simplex, missing: Simplex },
    #[error("duplicate vertex label {0:?}")]
    DuplicateLabel(String),
    #[error("empty simplex")]
    EmptySimplex,
    #[error("{0} is not a face of the complex")]
    AbsentFace(Simplex),
    #[error("expected a {expected}-simplex, got {got}")]
    WrongDimension { expected: usize, got: Simplex },
}

/// A simplex as a strictly increasing list of vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Simplex(Vec<usize>);

impl Simplex {
    /// Builds a simplex from any vertex collection; order and repeats are ignored.
    pub fn new(vertices: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = vertices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Simplex(v)
    }

    pub fn vertex(v: usize) -> Self {
        Simplex(vec![v])
    }

    pub fn edge(a: usize, b: usize) -> Self {
        Simplex::new([a, b])
    }

    pub fn triangle(a: usize, b: usize, c: usize) -> Self {
        Simplex::new([a, b, c])
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `len - 1`; `None` for the empty simplex.
    pub fn dim(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// The codimension-1 faces, in lexicographic order of the dropped vertex.
    pub fn boundary(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = self.0.len();
        (0..n).filter(move |_| n > 1).map(move |skip| {
            Simplex(
                self.0
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect(),
            )
        })
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

/// Face counts per dimension, trimmed to `dim + 1` entries.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
#[serde(transparent)]
pub struct FVector {
    counts: Vec<usize>,
}

impl FVector {
    pub fn new(mut counts: Vec<usize>) -> Self {
        while counts.last() == Some(&0) {
            counts.pop();
        }
        FVector { counts }
    }

    /// Number of `d`-faces, zero past the top dimension.
    pub fn get(&self, d: usize) -> usize {
        self.counts.get(d).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    /// The first `n` entries, zero-padded.
    pub fn padded(&self, n: usize) -> Vec<usize> {
        (0..n).map(|d| self.get(d)).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        alternating_sum(&self.counts)
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &FVector) -> bool {
        let n = self.counts.len().max(other.counts.len());
        (0..n).all(|d| self.get(d) <= other.get(d))
    }
}

pub(crate) fn alternating_sum(counts: &[usize]) -> i64 {
    counts
        .iter()
        .enumerate()
        .map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) })
        .sum()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    labels: Vec<String>,
    faces: Vec<BTreeSet<Simplex>>,
    vertex_edges: Vec<Vec<Simplex>>,
    edge_triangles: HashMap<Simplex, Vec<Simplex>>,
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        SimplicialComplex {
            labels: Vec::new(),
            faces: Vec::new(),
            vertex_edges: Vec::new(),
            edge_triangles: HashMap::new(),
        }
    }

    /// Builds a complex from an explicit face list, rejecting anything that is
    /// not downward-closed. Vertices need not be listed.
    pub fn from_faces(
        labels: Vec<String>,
        faces: impl IntoIterator<Item = Simplex>,
    ) -> Result<Self, ComplexError> {
        check_labels(&labels)?;
        let mut by_dim: Vec<BTreeSet<Simplex>> = Vec::new();
        for face in faces {
            let d = face.dim().ok_or(ComplexError::EmptySimplex)?;
            check_range(&face, labels.len())?;
            if by_dim.len() <= d {
                by_dim.resize_with(d + 1, BTreeSet::new);
            }
            by_dim[d].insert(face);
        }
        Self::assemble(labels, by_dim, true)
    }

    /// The downward closure of `generators`, truncated to `max_dim` when given.
    pub fn from_generators(
        labels: Vec<String>,
        generators: impl IntoIterator<Item = Simplex>,
        max_dim: Option<usize>,
    ) -> Result<Self, ComplexError> {
        check_labels(&labels)?;
        let mut by_dim: Vec<BTreeSet<Simplex>> = Vec::new();
        for generator in generators {
            if generator.is_empty() {
                return Err(ComplexError::EmptySimplex);
            }
            check_range(&generator, labels.len())?;
            let max_len = max_dim.map_or(generator.len(), |d| (d + 1).min(generator.len()));
            for_each_subset(generator.vertices(), max_len, &mut |subset| {
                let d = subset.len() - 1;
                if by_dim.len() <= d {
                    by_dim.resize_with(d + 1, BTreeSet::new);
                }
                by_dim[d].insert(Simplex(subset.to_vec()));
            });
        }
        Self::assemble(labels, by_dim, false)
    }

    fn assemble(
        labels: Vec<String>,
        mut by_dim: Vec<BTreeSet<Simplex>>,
        validate: bool,
    ) -> Result<Self, ComplexError> {
        if !labels.is_empty() {
            if by_dim.is_empty() {
                by_dim.push(BTreeSet::new());
            }
            by_dim[0].extend((0..labels.len()).map(Simplex::vertex));
        }
        if validate {
            for d in 1..by_dim.len() {
                for face in &by_dim[d] {
                    if let Some(missing) = face.boundary().find(|b| !by_dim[d - 1].contains(b)) {
                        return Err(ComplexError::NotDownwardClosed {
                            face: face.clone(),
                            missing,
                        });
                    }
                }
            }
        }
        while by_dim.last().is_some_and(BTreeSet::is_empty) {
            by_dim.pop();
        }

        let mut vertex_edges = vec![Vec::new(); labels.len()];
        let mut edge_triangles: HashMap<Simplex, Vec<Simplex>> = HashMap::new();
        if let Some(edges) = by_dim.get(1) {
            for e in edges {
                vertex_edges[e.0[0]].push(e.clone());
                vertex_edges[e.0[1]].push(e.clone());
                edge_triangles.insert(e.clone(), Vec::new());
            }
        }
        if let Some(triangles) = by_dim.get(2) {
            for t in triangles {
                for e in t.boundary() {
                    edge_triangles
                        .get_mut(&e)
                        .expect("closed complex has every triangle edge")
                        .push(t.clone());
                }
            }
        }
        Ok(SimplicialComplex {
            labels,
            faces: by_dim,
            vertex_edges,
            edge_triangles,
        })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    /// Vertex labels of a face.
    pub fn face_labels(&self, s: &Simplex) -> Vec<String> {
        s.vertices().iter().map(|&v| self.labels[v].clone()).collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Top dimension; `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.faces.len().checked_sub(1)
    }

    pub fn faces(&self, d: usize) -> impl Iterator<Item = &Simplex> {
        self.faces.get(d).into_iter().flatten()
    }

    pub fn all_faces(&self) -> impl Iterator<Item = &Simplex> {
        self.faces.iter().flatten()
    }

    pub fn edges(&self) -> impl Iterator<Item = &Simplex> {
        self.faces(1)
    }

    pub fn triangles(&self) -> impl Iterator<Item = &Simplex> {
        self.faces(2)
    }

    pub fn count(&self, d: usize) -> usize {
        self.faces.get(d).map_or(0, BTreeSet::len)
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        s.dim()
            .and_then(|d| self.faces.get(d))
            .is_some_and(|set| set.contains(s))
    }

    pub fn f_vector(&self) -> FVector {
        FVector::new(self.faces.iter().map(BTreeSet::len).collect())
    }

    /// `Σ_d (−1)^d f_d`.
    pub fn euler_characteristic(&self) -> i64 {
        alternating_sum(&self.faces.iter().map(BTreeSet::len).collect::<Vec<_>>())
    }

    /// All faces of dimension at most `d`.
    pub fn skeleton(&self, d: usize) -> SimplicialComplex {
        if self.dim().is_none_or(|top| top <= d) {
            return self.clone();
        }
        let faces = self.faces[..=d].to_vec();
        Self::assemble(self.labels.clone(), faces, false).expect("skeleton of a valid complex")
    }

    /// Number of edges containing `v`.
    pub fn degree(&self, v: usize) -> usize {
        self.vertex_edges[v].len()
    }

    pub fn edges_at(&self, v: usize) -> &[Simplex] {
        &self.vertex_edges[v]
    }

    /// The 2-faces having `e` as a face.
    pub fn triangles_containing(&self, e: &Simplex) -> Result<&[Simplex], ComplexError> {
        expect_dim(e, 1)?;
        self.edge_triangles
            .get(e)
            .map(Vec::as_slice)
            .ok_or_else(|| ComplexError::AbsentFace(e.clone()))
    }

    /// Edges parallel to `e` in Forman's sense: sharing a vertex with `e` or a
    /// triangle with `e`, but not both. A shared triangle always implies a
    /// shared vertex, so these are the vertex-neighbours of `e` that lie in no
    /// common triangle with it.
    pub fn parallel_edges(&self, e: &Simplex) -> Result<Vec<Simplex>, ComplexError> {
        let cofaces = self.triangles_containing(e)?;
        let apexes: HashSet<usize> = cofaces
            .iter()
            .flat_map(|t| t.vertices().iter().copied())
            .filter(|v| !e.contains_vertex(*v))
            .collect();
        let mut out: Vec<Simplex> = e
            .vertices()
            .iter()
            .flat_map(|&u| self.vertex_edges[u].iter())
            .filter(|other| *other != e)
            .filter(|other| {
                let far = other.vertices().iter().find(|v| !e.contains_vertex(**v));
                far.is_some_and(|w| !apexes.contains(w))
            })
            .cloned()
            .collect();
        out.sort();
        Ok(out)
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

fn check_labels(labels: &[String]) -> Result<(), ComplexError> {
    let mut seen = HashSet::with_capacity(labels.len());
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(ComplexError::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

fn check_range(s: &Simplex, count: usize) -> Result<(), ComplexError> {
    match s.vertices().last() {
        Some(&index) if index >= count => Err(ComplexError::VertexOutOfRange { index, count }),
        _ => Ok(()),
    }
}

fn expect_dim(s: &Simplex, expected: usize) -> Result<(), ComplexError> {
    if s.dim() == Some(expected) {
        Ok(())
    } else {
        Err(ComplexError::WrongDimension {
            expected,
            got: s.clone(),
        })
    }
}

/// Calls `f` on every nonempty subset of the sorted slice `vertices` of size
/// at most `max_len`, each as a sorted slice.
pub(crate) fn for_each_subset(vertices: &[usize], max_len: usize, f: &mut impl FnMut(&[usize])) {
    fn recurse(
        vertices: &[usize],
        start: usize,
        max_len: usize,
        current: &mut Vec<usize>,
        f: &mut impl FnMut(&[usize]),
    ) {
        for i in start..vertices.len() {
            current.push(vertices[i]);
            f(current);
            if current.len() < max_len {
                recurse(vertices, i + 1, max_len, current, f);
            }
            current.pop();
        }
    }
    if max_len > 0 {
        recurse(vertices, 0, max_len, &mut Vec::with_capacity(max_len), f);
    }
}

/// The order complex Δ(P): one vertex per element, one `m`-simplex per chain
/// of `m + 1` pairwise comparable elements. `skeleton_dim` caps `m`.
pub fn order_complex(
    poset: &Poset,
    skeleton_dim: Option<usize>,
    chain_cap: u64,
) -> Result<SimplicialComplex, ChainCapExceeded> {
    let labels = poset.elements().iter().map(Element::to_string).collect();
    let mut faces = Vec::new();
    for chain in poset.chains(skeleton_dim.map(|d| d + 1), chain_cap) {
        faces.push(Simplex(chain?));
    }
    Ok(SimplicialComplex::from_faces(labels, faces).expect("chains of a poset are downward-closed"))
}

/// The face poset of `k`: faces as vertex-label sets, ordered by inclusion.
pub fn face_poset(k: &SimplicialComplex) -> Poset {
    Poset::from_sets(k.all_faces().map(|s| {
        s.vertices()
            .iter()
            .map(|&v| NodeId::new(k.label(v)))
            .collect::<Element>()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("v{i}")).collect()
    }

    #[test]
    fn closure_validation_rejects_open_faces() {
        let err = SimplicialComplex::from_faces(labels(3), [Simplex::triangle(0, 1, 2)]).unwrap_err();
        assert!(matches!(err, ComplexError::NotDownwardClosed { .. }));
        let err = SimplicialComplex::from_faces(labels(2), [Simplex::edge(0, 5)]).unwrap_err();
        assert!(matches!(err, ComplexError::VertexOutOfRange { index: 5, .. }));
    }

    #[test]
    fn generators_are_closed_and_truncated() {
        let k = SimplicialComplex::from_generators(labels(4), [Simplex::new(0..4)], Some(2)).unwrap();
        assert_eq!(k.f_vector().counts(), &[4, 6, 4]);
        assert_eq!(k.euler_characteristic(), 2);
        let full = SimplicialComplex::from_generators(labels(4), [Simplex::new(0..4)], None).unwrap();
        assert_eq!(full.f_vector().counts(), &[4, 6, 4, 1]);
        assert_eq!(full.euler_characteristic(), 1);
    }

    #[test]
    fn euler_characteristic_examples() {
        assert_eq!(fixtures::tetrahedron_boundary().euler_characteristic(), 2);
        let torus = fixtures::torus7();
        assert_eq!(torus.f_vector().counts(), &[7, 21, 14]);
        assert_eq!(torus.euler_characteristic(), 0);
        assert_eq!(SimplicialComplex::empty().euler_characteristic(), 0);
        assert_eq!(SimplicialComplex::empty().dim(), None);
    }

    #[test]
    fn skeleton_examples() {
        let tet = fixtures::tetrahedron_boundary();
        let one = tet.skeleton(1);
        assert_eq!(one.f_vector().counts(), &[4, 6]);
        assert_eq!(one.euler_characteristic(), -2);
        assert_eq!(tet.skeleton(2), tet);
        assert_eq!(tet.skeleton(7), tet);
        let tri = fixtures::single_triangle();
        let zero = tri.skeleton(0);
        assert_eq!(zero.f_vector().counts(), &[3]);
        assert_eq!(zero.euler_characteristic(), 3);
        assert!(zero.triangles_containing(&Simplex::edge(0, 1)).is_err());
    }

    #[test]
    fn triangles_containing_examples() {
        let tet = fixtures::tetrahedron_boundary();
        for e in tet.edges() {
            assert_eq!(tet.triangles_containing(e).unwrap().len(), 2);
        }
        let tri = fixtures::single_triangle();
        assert_eq!(
            tri.triangles_containing(&Simplex::edge(0, 1)).unwrap(),
            &[Simplex::triangle(0, 1, 2)]
        );
        let path = fixtures::path(3);
        assert!(path.triangles_containing(&Simplex::edge(0, 1)).unwrap().is_empty());
        assert_eq!(
            path.triangles_containing(&Simplex::edge(0, 2)),
            Err(ComplexError::AbsentFace(Simplex::edge(0, 2)))
        );
        assert!(matches!(
            path.triangles_containing(&Simplex::vertex(0)),
            Err(ComplexError::WrongDimension { .. })
        ));
    }

    #[test]
    fn parallel_edges_examples() {
        let path = fixtures::path(3);
        assert_eq!(path.parallel_edges(&Simplex::edge(0, 1)).unwrap(), vec![Simplex::edge(1, 2)]);
        let tri = fixtures::single_triangle();
        assert!(tri.parallel_edges(&Simplex::edge(0, 1)).unwrap().is_empty());
        let tet = fixtures::tetrahedron_boundary();
        assert!(tet.parallel_edges(&Simplex::edge(0, 1)).unwrap().is_empty());
        assert!(path.parallel_edges(&Simplex::edge(0, 2)).is_err());
    }

    /// Direct transcription of the XOR rule over all edge pairs.
    fn parallel_by_definition(k: &SimplicialComplex, e: &Simplex) -> Vec<Simplex> {
        k.edges()
            .filter(|f| *f != e)
            .filter(|f| {
                let share_vertex = f.vertices().iter().any(|v| e.contains_vertex(*v));
                let share_triangle = k.triangles().any(|t| {
                    e.vertices().iter().chain(f.vertices()).all(|v| t.contains_vertex(*v))
                });
                share_vertex ^ share_triangle
            })
            .cloned()
            .collect()
    }

    #[test]
    fn parallel_edges_match_definition_and_are_symmetric() {
        for k in fixtures::corpus_complexes().into_iter().map(|(_, k)| k) {
            for e in k.edges() {
                let fast = k.parallel_edges(e).unwrap();
                assert_eq!(fast, parallel_by_definition(&k, e));
                for f in &fast {
                    assert!(k.parallel_edges(f).unwrap().contains(e));
                }
            }
        }
    }

    #[test]
    fn order_complex_examples() {
        let p = fixtures::example_poset(true);
        let k = order_complex(&p, None, u64::MAX).unwrap();
        assert_eq!(k.f_vector().counts(), &[6, 9, 4]);
        assert_eq!(k.dim(), Some(2));
        assert_eq!(k.euler_characteristic(), 1);

        let boolean = fixtures::boolean_lattice_2();
        let k = order_complex(&boolean, None, u64::MAX).unwrap();
        assert_eq!(k.f_vector().counts(), &[4, 5, 2]);
        assert_eq!(k.euler_characteristic(), 1);

        let anti = Poset::from_sets(["a", "b", "c"].map(|s| Element::from_iter([NodeId::new(s)])));
        let k = order_complex(&anti, None, u64::MAX).unwrap();
        assert_eq!(k.f_vector().counts(), &[3]);
        assert_eq!(k.dim(), Some(0));
    }

    #[test]
    fn order_complex_respects_chain_cap() {
        let p = fixtures::example_poset(true);
        assert_eq!(order_complex(&p, None, 18), Err(ChainCapExceeded { cap: 18 }));
        assert!(order_complex(&p, None, 19).is_ok());
    }

    #[test]
    fn subsets_enumerated_once() {
        let mut seen = Vec::new();
        for_each_subset(&[1, 4, 6], 3, &mut |s| seen.push(s.to_vec()));
        assert_eq!(seen.len(), 7);
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 7);
        let mut pairs = 0;
        for_each_subset(&[0, 1, 2, 3, 4], 2, &mut |_| pairs += 1);
        assert_eq!(pairs, 5 + 10);
    }
}
