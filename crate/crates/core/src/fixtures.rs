//! Small reference complexes, posets and hypernetworks with known invariants.

use crate::complex::{order_complex, Simplex, SimplicialComplex};
use crate::hypernet::{Hyperedge, Hypernetwork, Hypervertex};
use crate::poset::{Element, Poset};
use crate::NodeId;

fn letters(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| {
            if i < 26 {
                char::from(b'a' + i as u8).to_string()
            } else {
                format!("v{i}")
            }
        })
        .collect()
}

fn from_generators(n: usize, gens: impl IntoIterator<Item = Simplex>) -> SimplicialComplex {
    SimplicialComplex::from_generators(letters(n), gens, None).expect("fixture is valid")
}

pub fn isolated_points(n: usize) -> SimplicialComplex {
    from_generators(n, [])
}

/// Path on `n` vertices, `n − 1` edges.
pub fn path(n: usize) -> SimplicialComplex {
    from_generators(n, (1..n).map(|i| Simplex::edge(i - 1, i)))
}

pub fn single_edge() -> SimplicialComplex {
    path(2)
}

pub fn cycle(n: usize) -> SimplicialComplex {
    from_generators(n, (0..n).map(|i| Simplex::edge(i, (i + 1) % n)))
}

/// `K_{1,k}` with the hub at vertex 0.
pub fn star(k: usize) -> SimplicialComplex {
    from_generators(k + 1, (1..=k).map(|i| Simplex::edge(0, i)))
}

pub fn single_triangle() -> SimplicialComplex {
    from_generators(3, [Simplex::triangle(0, 1, 2)])
}

/// Triangle `abc` plus the pendant edge `cd`.
pub fn triangle_with_pendant() -> SimplicialComplex {
    from_generators(4, [Simplex::triangle(0, 1, 2), Simplex::edge(2, 3)])
}

pub fn tetrahedron_boundary() -> SimplicialComplex {
    from_generators(
        4,
        [
            Simplex::triangle(0, 1, 2),
            Simplex::triangle(0, 1, 3),
            Simplex::triangle(0, 2, 3),
            Simplex::triangle(1, 2, 3),
        ],
    )
}

/// Möbius' minimal torus: triangles `{i, i+1, i+3}` and `{i, i+2, i+3}` mod 7.
pub fn torus7() -> SimplicialComplex {
    from_generators(
        7,
        (0..7).flat_map(|i| {
            [
                Simplex::triangle(i, (i + 1) % 7, (i + 3) % 7),
                Simplex::triangle(i, (i + 2) % 7, (i + 3) % 7),
            ]
        }),
    )
}

/// Disjoint union; vertex labels of `b` get enough `'` marks to stay distinct.
pub fn disjoint_union(a: &SimplicialComplex, b: &SimplicialComplex) -> SimplicialComplex {
    let offset = a.vertex_count();
    let primes = |k: &SimplicialComplex| k.labels().iter().map(|l| l.len() - l.trim_end_matches('\'').len()).max();
    let marks = "'".repeat(primes(a).unwrap_or(0).max(primes(b).unwrap_or(0)) + 1);
    let labels = a
        .labels()
        .iter()
        .cloned()
        .chain(b.labels().iter().map(|l| format!("{l}{marks}")))
        .collect();
    let faces = a.all_faces().cloned().chain(
        b.all_faces()
            .map(|s| Simplex::new(s.vertices().iter().map(|v| v + offset))),
    );
    SimplicialComplex::from_faces(labels, faces).expect("union of valid complexes")
}

/// `V1 = {a, b}`, `V2 = {b, c}`, hyperedge `E12 = V1V2`.
pub fn example_network() -> Hypernetwork {
    Hypernetwork::new(
        None,
        vec![
            Hypervertex::new("V1", ["a", "b"].map(NodeId::from)),
            Hypervertex::new("V2", ["b", "c"].map(NodeId::from)),
        ],
        vec![Hyperedge::new("E12", "V1", "V2", false)],
        false,
    )
    .expect("fixture is valid")
}

pub fn example_poset(include_singletons: bool) -> Poset {
    Poset::from_hypernetwork(&example_network(), include_singletons)
}

fn element(nodes: &[&str]) -> Element {
    nodes.iter().map(|n| NodeId::new(*n)).collect()
}

/// All subsets of `{a, b}`, including the empty set.
pub fn boolean_lattice_2() -> Poset {
    Poset::from_sets([element(&[]), element(&["a"]), element(&["b"]), element(&["a", "b"])])
}

/// Covers `{a} ≺ {a,b} ≺ {a,b,x}` and `{x} ≺ {a,b,x}`: the top element is
/// two steps above `{a}` but one step above `{x}`.
pub fn conflict_poset() -> Poset {
    Poset::from_sets([
        element(&["a"]),
        element(&["x"]),
        element(&["a", "b"]),
        element(&["a", "b", "x"]),
    ])
}

/// The named 2-complexes every invariant is checked against.
pub fn corpus_complexes() -> Vec<(&'static str, SimplicialComplex)> {
    let example = order_complex(&example_poset(true), None, u64::MAX).expect("small poset");
    vec![
        ("single-edge", single_edge()),
        ("path-4", path(4)),
        ("path-6", path(6)),
        ("cycle-4", cycle(4)),
        ("cycle-5", cycle(5)),
        ("star-3", star(3)),
        ("single-triangle", single_triangle()),
        ("triangle-with-pendant", triangle_with_pendant()),
        ("tetrahedron-boundary", tetrahedron_boundary()),
        ("torus-7", torus7()),
        ("example-order-complex", example),
        ("triangle+path", disjoint_union(&single_triangle(), &path(3))),
        ("tetrahedron+torus", disjoint_union(&tetrahedron_boundary(), &torus7())),
    ]
}
