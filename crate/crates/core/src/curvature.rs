//! Combinatorial curvature on 2-dimensional simplicial complexes.
//!
//! With all weights equal to one, Forman's Ricci curvature of an edge is
//!
//! ```text
//! Ric(e) = #{triangles ⊃ e} − #{edges parallel to e} + 2
//! ```
//!
//! and together with Bloch's vertex and triangle terms
//!
//! ```text
//! R0(v) = 1 + (3/2)·deg(v) − deg(v)²      R2(t) = 1 + 6·B − B²,  B = 3
//! ```
//!
//! it satisfies `Σ R0 − Σ Ric + Σ R2 = χ` exactly. Vertex terms are
//! half-integers, so every sum here is carried in [`HalfInteger`].
//!
//! Substituting the parallel count `deg(u) + deg(v) − 2 − 2·T` gives the
//! closed form `Ric(uv) = 3·T + 4 − deg(u) − deg(v)`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::complex::{ComplexError, FVector, Simplex, SimplicialComplex};
use crate::half::HalfInteger;
use crate::hypernet::Hypernetwork;

/// Number of edges on the boundary of a triangle.
const TRIANGLE_EDGES: i64 = 3;

/// Triangle coefficient of the printed directed formula, kept verbatim.
const DIRECTED_TRIANGLE_WEIGHT: i64 = 28;

pub fn forman_ricci(k: &SimplicialComplex, e: &Simplex) -> Result<i64, ComplexError> {
    let triangles = k.triangles_containing(e)?.len() as i64;
    let parallels = k.parallel_edges(e)?.len() as i64;
    Ok(triangles - parallels + 2)
}

/// `3·T + 4 − deg(u) − deg(v)`; agrees with [`forman_ricci`] on every edge.
pub fn forman_ricci_closed(k: &SimplicialComplex, e: &Simplex) -> Result<i64, ComplexError> {
    let triangles = k.triangles_containing(e)?.len() as i64;
    let degree_sum: i64 = e.vertices().iter().map(|&v| k.degree(v) as i64).sum();
    Ok(3 * triangles + 4 - degree_sum)
}

/// `1 + (3/2)·d − d²`.
pub fn r0_from_degree(degree: usize) -> HalfInteger {
    let d = degree as i64;
    HalfInteger::from_halves(2 + 3 * d - 2 * d * d)
}

pub fn r0(k: &SimplicialComplex, v: usize) -> Result<HalfInteger, ComplexError> {
    if v >= k.vertex_count() {
        return Err(ComplexError::AbsentFace(Simplex::vertex(v)));
    }
    Ok(r0_from_degree(k.degree(v)))
}

/// `1 + 6·B − B²` with `B` the number of boundary edges; 10 for any triangle.
pub fn r2(k: &SimplicialComplex, t: &Simplex) -> Result<i64, ComplexError> {
    if t.dim() != Some(2) {
        return Err(ComplexError::WrongDimension {
            expected: 2,
            got: t.clone(),
        });
    }
    if !k.contains(t) {
        return Err(ComplexError::AbsentFace(t.clone()));
    }
    let below = t.boundary().filter(|e| k.contains(e)).count() as i64;
    debug_assert_eq!(below, TRIANGLE_EDGES);
    Ok(1 + 6 * below - below * below)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeCurvature {
    #[serde(skip)]
    pub edge: Simplex,
    #[serde(rename = "edge")]
    pub labels: Vec<String>,
    pub triangles: usize,
    pub parallels: usize,
    pub ricci: i64,
    pub ricci_closed: i64,
}

impl EdgeCurvature {
    pub fn forms_agree(&self) -> bool {
        self.ricci == self.ricci_closed
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexCurvature {
    #[serde(skip)]
    pub vertex: usize,
    #[serde(rename = "vertex")]
    pub label: String,
    pub degree: usize,
    pub r0: HalfInteger,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TriangleCurvature {
    #[serde(skip)]
    pub triangle: Simplex,
    #[serde(rename = "triangle")]
    pub labels: Vec<String>,
    pub r2: i64,
}

/// Per-face curvature terms plus the Gauss–Bonnet balance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurvatureReport {
    pub edges: Vec<EdgeCurvature>,
    pub vertices: Vec<VertexCurvature>,
    pub triangles: Vec<TriangleCurvature>,
    pub sum_r0: HalfInteger,
    pub sum_ricci: i64,
    pub sum_r2: i64,
    pub chi: i64,
    /// `sum_r0 − sum_ricci + sum_r2 − chi`; zero on every valid complex.
    pub gb_residual: HalfInteger,
    /// Set when the input had faces above dimension 2 and was truncated.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truncated_from_dim: Option<usize>,
}

impl CurvatureReport {
    pub fn holds(&self) -> bool {
        self.gb_residual == HalfInteger::ZERO
    }

    pub fn ricci_forms_agree(&self) -> bool {
        self.edges.iter().all(EdgeCurvature::forms_agree)
    }
}

/// Restricts to the 2-skeleton, warning when that drops faces.
fn two_skeleton(k: &SimplicialComplex) -> (SimplicialComplex, Option<usize>) {
    match k.dim() {
        Some(d) if d > 2 => {
            log::warn!("complex has dimension {d}; curvature uses its 2-skeleton");
            (k.skeleton(2), Some(d))
        }
        _ => (k.clone(), None),
    }
}

/// Full curvature report of `k` (its 2-skeleton if `k` is higher-dimensional).
pub fn gauss_bonnet(k: &SimplicialComplex) -> CurvatureReport {
    let (k, truncated_from_dim) = two_skeleton(k);

    let edges: Vec<EdgeCurvature> = k
        .edges()
        .map(|e| {
            let triangles = k.triangles_containing(e).expect("own edge").len();
            let parallels = k.parallel_edges(e).expect("own edge").len();
            EdgeCurvature {
                edge: e.clone(),
                labels: k.face_labels(e),
                triangles,
                parallels,
                ricci: triangles as i64 - parallels as i64 + 2,
                ricci_closed: forman_ricci_closed(&k, e).expect("own edge"),
            }
        })
        .collect();
    let vertices: Vec<VertexCurvature> = (0..k.vertex_count())
        .map(|v| VertexCurvature {
            vertex: v,
            label: k.label(v).to_owned(),
            degree: k.degree(v),
            r0: r0_from_degree(k.degree(v)),
        })
        .collect();
    let triangles: Vec<TriangleCurvature> = k
        .triangles()
        .map(|t| TriangleCurvature {
            triangle: t.clone(),
            labels: k.face_labels(t),
            r2: r2(&k, t).expect("own triangle"),
        })
        .collect();

    let sum_r0: HalfInteger = vertices.iter().map(|v| v.r0).sum();
    let sum_ricci: i64 = edges.iter().map(|e| e.ricci).sum();
    let sum_r2: i64 = triangles.iter().map(|t| t.r2).sum();
    let chi = k.euler_characteristic();
    CurvatureReport {
        edges,
        vertices,
        triangles,
        sum_r0,
        sum_ricci,
        sum_r2,
        chi,
        gb_residual: sum_r0 - sum_ricci + sum_r2 - chi,
        truncated_from_dim,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiltrationStep {
    pub threshold: i64,
    pub f_vector: FVector,
    pub chi: i64,
}

/// Sublevel filtration by Forman curvature. At each distinct curvature value
/// `τ` (ascending) the subcomplex holds every vertex, every edge with
/// `Ric ≤ τ`, and every triangle whose three edges are present. A complex
/// without edges has no thresholds and yields no steps.
pub fn curvature_filtration(k: &SimplicialComplex) -> Vec<FiltrationStep> {
    let (k, _) = two_skeleton(k);
    let ricci: BTreeMap<&Simplex, i64> = k
        .edges()
        .map(|e| (e, forman_ricci(&k, e).expect("own edge")))
        .collect();
    let thresholds: BTreeSet<i64> = ricci.values().copied().collect();
    thresholds
        .into_iter()
        .map(|tau| {
            let edges = ricci.values().filter(|&&r| r <= tau).count();
            let triangles = k
                .triangles()
                .filter(|t| t.boundary().all(|e| ricci[&e] <= tau))
                .count();
            let f_vector = FVector::new(vec![k.vertex_count(), edges, triangles]);
            let chi = f_vector.euler_characteristic();
            FiltrationStep {
                threshold: tau,
                f_vector,
                chi,
            }
        })
        .collect()
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DirectedError {
    #[error("hyperedge {0:?} has no direction")]
    UndirectedEdge(String),
    #[error("arc ({0}, {1}) is a loop or references a missing vertex")]
    InvalidArc(usize, usize),
    #[error("arc ({0}, {1}) appears twice")]
    DuplicateArc(usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DegreeMode {
    In,
    Out,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TriangleMode {
    /// `u→v, v→w, u→w`
    Transitive,
    /// `u→v, v→w, w→u`
    Cyclic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DirectedConfig {
    pub degree_mode: DegreeMode,
    pub triangle_mode: TriangleMode,
}

impl Default for DirectedConfig {
    fn default() -> Self {
        DirectedConfig {
            degree_mode: DegreeMode::Out,
            triangle_mode: TriangleMode::Transitive,
        }
    }
}

/// A directed graph viewed as a 1-complex whose triangles are chosen by
/// orientation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedComplex {
    labels: Vec<String>,
    arcs: BTreeSet<(usize, usize)>,
}

/// A coherently oriented triangle as its three arcs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DirectedTriangle {
    pub arcs: [(usize, usize); 3],
}

impl DirectedTriangle {
    pub fn vertices(&self) -> [usize; 3] {
        let [(a, b), (_, c), _] = self.arcs;
        [a, b, c]
    }
}

impl DirectedComplex {
    pub fn new(labels: Vec<String>, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, DirectedError> {
        let mut set = BTreeSet::new();
        for (u, v) in arcs {
            if u == v || u >= labels.len() || v >= labels.len() {
                return Err(DirectedError::InvalidArc(u, v));
            }
            if !set.insert((u, v)) {
                return Err(DirectedError::DuplicateArc(u, v));
            }
        }
        Ok(DirectedComplex { labels, arcs: set })
    }

    /// Hypervertices become vertices and hyperedges become arcs from tail to
    /// head. Every hyperedge must be directed.
    pub fn from_hypernetwork(h: &Hypernetwork) -> Result<Self, DirectedError> {
        let labels: Vec<String> = h.hypervertices().iter().map(|hv| hv.id().to_owned()).collect();
        let index = |id: &str| labels.iter().position(|l| l == id).expect("validated hyperedge");
        let mut arcs = Vec::with_capacity(h.hyperedges().len());
        for e in h.hyperedges() {
            if !e.is_directed() {
                return Err(DirectedError::UndirectedEdge(e.id().to_owned()));
            }
            arcs.push((index(e.tail()), index(e.head())));
        }
        DirectedComplex::new(labels, arcs)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arcs.iter().copied()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.arcs.contains(&(u, v))
    }

    /// Arcs entering (`In`) or leaving (`Out`) `v`.
    pub fn io_degree(&self, v: usize, mode: DegreeMode) -> usize {
        self.arcs
            .iter()
            .filter(|&&(a, b)| match mode {
                DegreeMode::In => b == v,
                DegreeMode::Out => a == v,
            })
            .count()
    }

    fn successors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.arcs.range((u, 0)..(u + 1, 0)).map(|&(_, v)| v)
    }

    /// Triangles whose arcs orient according to `mode`. Cyclic triangles are
    /// listed once, starting from their smallest vertex.
    pub fn directed_triangles(&self, mode: TriangleMode) -> Vec<DirectedTriangle> {
        let mut out = Vec::new();
        for &(u, v) in &self.arcs {
            for w in self.successors(v) {
                if w == u {
                    continue;
                }
                match mode {
                    TriangleMode::Transitive if self.has_arc(u, w) => out.push(DirectedTriangle {
                        arcs: [(u, v), (v, w), (u, w)],
                    }),
                    TriangleMode::Cyclic if u < v && u < w && self.has_arc(w, u) => out.push(DirectedTriangle {
                        arcs: [(u, v), (v, w), (w, u)],
                    }),
                    _ => {}
                }
            }
        }
        out.sort();
        out
    }

    /// The printed directed formula, term by term:
    ///
    /// ```text
    /// Σ_v (1 + (3/2)·deg(v) − deg(v)²) − Σ_e (4 + 3·#{t̄ ⊃ e} − Σ_{v<e} deg(v)) + 28·#t̄
    /// ```
    pub fn chi_directed_paper(&self, cfg: DirectedConfig) -> HalfInteger {
        let degrees: Vec<i64> = (0..self.vertex_count())
            .map(|v| self.io_degree(v, cfg.degree_mode) as i64)
            .collect();
        let triangles = self.directed_triangles(cfg.triangle_mode);
        let mut per_arc: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for t in &triangles {
            for arc in t.arcs {
                *per_arc.entry(arc).or_default() += 1;
            }
        }
        let vertex_terms: HalfInteger = degrees.iter().map(|&d| r0_from_degree(d as usize)).sum();
        let edge_terms: i64 = self
            .arcs
            .iter()
            .map(|&(u, v)| 4 + 3 * per_arc.get(&(u, v)).copied().unwrap_or(0) - degrees[u] - degrees[v])
            .sum();
        vertex_terms - edge_terms + DIRECTED_TRIANGLE_WEIGHT * triangles.len() as i64
    }

    /// `F0 − F1 + #t̄`: all vertices and arcs, only the chosen triangles.
    pub fn chi_directed_count(&self, cfg: DirectedConfig) -> i64 {
        self.vertex_count() as i64 - self.arc_count() as i64
            + self.directed_triangles(cfg.triangle_mode).len() as i64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn ric_of(k: &SimplicialComplex, a: usize, b: usize) -> (i64, i64) {
        let e = Simplex::edge(a, b);
        (forman_ricci(k, &e).unwrap(), forman_ricci_closed(k, &e).unwrap())
    }

    #[test]
    fn forman_examples() {
        assert_eq!(ric_of(&fixtures::single_triangle(), 0, 1), (3, 3));
        assert_eq!(ric_of(&fixtures::path(3), 0, 1), (1, 1));
        assert_eq!(ric_of(&fixtures::star(3), 0, 1), (0, 0));
        assert_eq!(ric_of(&fixtures::tetrahedron_boundary(), 0, 1), (4, 4));
        assert_eq!(ric_of(&fixtures::path(2), 0, 1), (2, 2));
        assert_eq!(ric_of(&fixtures::cycle(4), 0, 1), (0, 0));
        assert!(forman_ricci(&fixtures::path(3), &Simplex::edge(0, 2)).is_err());
        assert!(forman_ricci_closed(&fixtures::path(3), &Simplex::edge(0, 2)).is_err());
    }

    #[test]
    fn r0_examples() {
        assert_eq!(r0_from_degree(1), HalfInteger::from_halves(3));
        assert_eq!(r0_from_degree(2), HalfInteger::ZERO);
        assert_eq!(r0_from_degree(0), HalfInteger::from_int(1));
        assert_eq!(r0_from_degree(3), HalfInteger::from_halves(-7));
        assert!(r0(&fixtures::path(2), 5).is_err());
    }

    #[test]
    fn r2_examples() {
        let tri = fixtures::single_triangle();
        assert_eq!(r2(&tri, &Simplex::triangle(0, 1, 2)), Ok(10));
        let tet = fixtures::tetrahedron_boundary();
        for t in tet.triangles() {
            assert_eq!(r2(&tet, t), Ok(10));
        }
        assert!(r2(&tet, &Simplex::triangle(0, 1, 9)).is_err());
        assert!(gauss_bonnet(&fixtures::path(4)).triangles.is_empty());
    }

    fn sums(r: &CurvatureReport) -> (HalfInteger, i64, i64, i64) {
        (r.sum_r0, r.sum_ricci, r.sum_r2, r.chi)
    }

    #[test]
    fn gauss_bonnet_examples() {
        let r = gauss_bonnet(&fixtures::single_triangle());
        assert_eq!(sums(&r), (HalfInteger::ZERO, 9, 10, 1));
        assert!(r.holds());

        let r = gauss_bonnet(&fixtures::tetrahedron_boundary());
        assert_eq!(sums(&r), (HalfInteger::from_int(-14), 24, 40, 2));
        assert!(r.holds());

        let k = crate::complex::order_complex(&fixtures::example_poset(true), None, u64::MAX).unwrap();
        let r = gauss_bonnet(&k);
        assert_eq!(sums(&r), (HalfInteger::from_int(-27), 12, 40, 1));
        assert!(r.holds());
        assert!(r.ricci_forms_agree());

        let r = gauss_bonnet(&fixtures::path(2));
        assert_eq!(sums(&r), (HalfInteger::from_int(3), 2, 0, 1));
    }

    #[test]
    fn higher_dimensional_input_is_truncated() {
        let k = SimplicialComplex::from_generators(
            (0..4).map(|i| i.to_string()).collect(),
            [Simplex::new(0..4)],
            None,
        )
        .unwrap();
        let r = gauss_bonnet(&k);
        assert_eq!(r.truncated_from_dim, Some(3));
        assert_eq!(r.chi, 2);
        assert!(r.holds());
    }

    fn chain_abc() -> DirectedComplex {
        DirectedComplex::new(vec!["a".into(), "b".into(), "c".into()], [(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    fn cycle_abc() -> DirectedComplex {
        DirectedComplex::new(vec!["a".into(), "b".into(), "c".into()], [(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn io_degree_examples() {
        let d = chain_abc();
        let out: Vec<_> = (0..3).map(|v| d.io_degree(v, DegreeMode::Out)).collect();
        let inn: Vec<_> = (0..3).map(|v| d.io_degree(v, DegreeMode::In)).collect();
        assert_eq!(out, [2, 1, 0]);
        assert_eq!(inn, [0, 1, 2]);
        let lone = DirectedComplex::new(vec!["x".into()], []).unwrap();
        assert_eq!(lone.io_degree(0, DegreeMode::In), 0);
        assert_eq!(lone.io_degree(0, DegreeMode::Out), 0);
    }

    #[test]
    fn directed_triangle_examples() {
        assert_eq!(chain_abc().directed_triangles(TriangleMode::Transitive).len(), 1);
        assert_eq!(chain_abc().directed_triangles(TriangleMode::Cyclic).len(), 0);
        assert_eq!(cycle_abc().directed_triangles(TriangleMode::Transitive).len(), 0);
        assert_eq!(cycle_abc().directed_triangles(TriangleMode::Cyclic).len(), 1);
        // Every orientation of a 3-cycle is transitive or cyclic, so a chorded
        // square always has two coherent triangles; only the chordless square has none.
        let labels = ["a", "b", "c", "d"].map(String::from).to_vec();
        let square = DirectedComplex::new(labels.clone(), [(0, 1), (2, 1), (2, 3), (3, 0)]).unwrap();
        assert_eq!(square.directed_triangles(TriangleMode::Transitive).len(), 0);
        assert_eq!(square.directed_triangles(TriangleMode::Cyclic).len(), 0);
        let chorded = DirectedComplex::new(labels, [(0, 1), (2, 1), (2, 3), (3, 0), (1, 3)]).unwrap();
        let transitive = chorded.directed_triangles(TriangleMode::Transitive);
        let cyclic = chorded.directed_triangles(TriangleMode::Cyclic);
        assert_eq!(transitive.len(), 1);
        assert_eq!(transitive[0].vertices(), [2, 1, 3]);
        assert_eq!(cyclic.len(), 1);
        assert_eq!(cyclic[0].vertices(), [0, 1, 3]);
    }

    #[test]
    fn directed_chi_examples() {
        let cfg = DirectedConfig::default();
        assert_eq!(chain_abc().chi_directed_paper(cfg), HalfInteger::from_halves(31));
        let edge = DirectedComplex::new(vec!["a".into(), "b".into()], [(0, 1)]).unwrap();
        assert_eq!(edge.chi_directed_paper(cfg), HalfInteger::from_halves(-1));
        let empty = DirectedComplex::new(vec![], []).unwrap();
        assert_eq!(empty.chi_directed_paper(cfg), HalfInteger::ZERO);

        assert_eq!(chain_abc().chi_directed_count(cfg), 1);
        assert_eq!(cycle_abc().chi_directed_count(cfg), 0);
        let cyclic = DirectedConfig {
            triangle_mode: TriangleMode::Cyclic,
            ..cfg
        };
        assert_eq!(cycle_abc().chi_directed_count(cyclic), 1);
    }

    #[test]
    fn directed_complex_rejects_bad_arcs() {
        let labels = vec!["a".to_string(), "b".to_string()];
        assert!(DirectedComplex::new(labels.clone(), [(0, 0)]).is_err());
        assert!(DirectedComplex::new(labels.clone(), [(0, 2)]).is_err());
        assert!(DirectedComplex::new(labels, [(0, 1), (0, 1)]).is_err());
        let h = crate::hypernet::parse(b"V1: a\nV2: b\nE: V1 V2\n", crate::hypernet::Format::Text).unwrap();
        assert_eq!(
            DirectedComplex::from_hypernetwork(&h),
            Err(DirectedError::UndirectedEdge("E1".into()))
        );
    }

    #[test]
    fn filtration_examples() {
        let steps = curvature_filtration(&fixtures::tetrahedron_boundary());
        assert_eq!(steps.len(), 1);
        assert_eq!((steps[0].threshold, steps[0].f_vector.padded(3), steps[0].chi), (4, vec![4, 6, 4], 2));

        let steps = curvature_filtration(&fixtures::star(3));
        assert_eq!(steps.len(), 1);
        assert_eq!((steps[0].threshold, steps[0].f_vector.padded(3), steps[0].chi), (0, vec![4, 3, 0], 1));

        // triangle abc with pendant edge cd: Ric(cd) = 0, Ric(ac) = Ric(bc) = 2, Ric(ab) = 3
        let k = fixtures::triangle_with_pendant();
        let rows: Vec<_> = curvature_filtration(&k)
            .into_iter()
            .map(|s| (s.threshold, s.f_vector.padded(3), s.chi))
            .collect();
        assert_eq!(
            rows,
            [(0, vec![4, 1, 0], 3), (2, vec![4, 3, 0], 1), (3, vec![4, 4, 1], 1)]
        );
        assert!(curvature_filtration(&fixtures::isolated_points(3)).is_empty());
    }
}
