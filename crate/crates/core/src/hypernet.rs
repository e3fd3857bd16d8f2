//! Hypernetworks: hypervertices are node sets, hyperedges join two of them.
//!
//! Two input formats are supported. JSON:
//!
//! ```json
//! { "nodes": ["a", "b", "c"],
//!   "hypervertices": [{"id": "V1", "nodes": ["a", "b"]}, {"id": "V2", "nodes": ["b", "c"]}],
//!   "hyperedges": [{"id": "E12", "tail": "V1", "head": "V2"}],
//!   "directed": false }
//! ```
//!
//! and a line-oriented text format (`.hnet`):
//!
//! ```text
//! # comment
//! V1: a b
//! V2: b c
//! E: V1 V2
//! E>: V2 V1
//! ```
//!
//! Text hyperedges get positional ids `E1`, `E2`, …; the network is directed
//! when it has at least one hyperedge and all of them use `E>:`.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use bitvec::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{SimplicialComplex, Simplex};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(String);

impl NodeId {
    pub fn new(label: impl Into<String>) -> Self {
        NodeId(label.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for NodeId {
    fn from(s: &str) -> Self {
        NodeId::new(s)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HypernetError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("hypervertex {hypervertex:?} references unknown node {node:?}")]
    UnknownNode { hypervertex: String, node: String },
    #[error("hyperedge {edge:?} references unknown hypervertex {hypervertex:?}")]
    UnknownHypervertex { edge: String, hypervertex: String },
    #[error("duplicate {kind} id {id:?}")]
    DuplicateId { kind: &'static str, id: String },
    #[error("hyperedge {edge:?} is a hyper-loop on {hypervertex:?}")]
    HyperLoop { edge: String, hypervertex: String },
    #[error("hypervertex {id:?} has no nodes")]
    EmptyHypervertex { id: String },
    #[error("hyperedge {edge:?} connects the same hypervertices as {other:?}")]
    DuplicateHyperedge { edge: String, other: String },
    #[error("line {line}: a hyperedge joins exactly two hypervertices, found {arity}")]
    NotPairwise { line: usize, arity: usize },
    #[error("hyperedge {edge:?} is undirected in a directed hypernetwork")]
    UndirectedInDirected { edge: String },
    #[error("empty identifier")]
    EmptyId,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypervertex {
    id: String,
    nodes: BTreeSet<NodeId>,
}

impl Hypervertex {
    pub fn new(id: impl Into<String>, nodes: impl IntoIterator<Item = NodeId>) -> Self {
        Hypervertex {
            id: id.into(),
            nodes: nodes.into_iter().collect(),
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn nodes(&self) -> &BTreeSet<NodeId> {
        &self.nodes
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hyperedge {
    id: String,
    tail: String,
    head: String,
    directed: bool,
}

impl Hyperedge {
    pub fn new(id: impl Into<String>, tail: impl Into<String>, head: impl Into<String>, directed: bool) -> Self {
        Hyperedge {
            id: id.into(),
            tail: tail.into(),
            head: head.into(),
            directed,
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn tail(&self) -> &str {
        &self.tail
    }

    pub fn head(&self) -> &str {
        &self.head
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypernetwork {
    nodes: BTreeSet<NodeId>,
    hypervertices: Vec<Hypervertex>,
    hyperedges: Vec<Hyperedge>,
    directed: bool,
}

impl Hypernetwork {
    /// Validates and assembles a hypernetwork. With `nodes = None` the node
    /// set is the union of the hypervertices. Undirected hyperedges are
    /// stored with `tail <= head`.
    pub fn new(
        nodes: Option<Vec<NodeId>>,
        hypervertices: Vec<Hypervertex>,
        mut hyperedges: Vec<Hyperedge>,
        directed: bool,
    ) -> Result<Self, HypernetError> {
        let node_set: BTreeSet<NodeId> = match nodes {
            Some(list) => {
                let mut set = BTreeSet::new();
                for n in list {
                    if n.as_str().is_empty() {
                        return Err(HypernetError::EmptyId);
                    }
                    if let Some(dup) = set.replace(n) {
                        return Err(HypernetError::DuplicateId {
                            kind: "node",
                            id: dup.0,
                        });
                    }
                }
                for hv in &hypervertices {
                    if let Some(n) = hv.nodes.iter().find(|n| !set.contains(*n)) {
                        return Err(HypernetError::UnknownNode {
                            hypervertex: hv.id.clone(),
                            node: n.0.clone(),
                        });
                    }
                }
                set
            }
            None => hypervertices.iter().flat_map(|hv| hv.nodes.iter().cloned()).collect(),
        };
        if node_set.iter().any(|n| n.as_str().is_empty()) {
            return Err(HypernetError::EmptyId);
        }

        let mut hv_ids = HashSet::new();
        for hv in &hypervertices {
            if hv.id.is_empty() {
                return Err(HypernetError::EmptyId);
            }
            if !hv_ids.insert(hv.id.as_str()) {
                return Err(HypernetError::DuplicateId {
                    kind: "hypervertex",
                    id: hv.id.clone(),
                });
            }
            if hv.nodes.is_empty() {
                return Err(HypernetError::EmptyHypervertex { id: hv.id.clone() });
            }
        }

        let mut edge_ids = HashSet::new();
        // unordered pair -> (edge id, directed orientation if any)
        type Pair = (String, String);
        let mut pairs: HashMap<Pair, Vec<(String, Option<Pair>)>> = HashMap::new();
        for e in &mut hyperedges {
            if e.id.is_empty() {
                return Err(HypernetError::EmptyId);
            }
            if !edge_ids.insert(e.id.clone()) {
                return Err(HypernetError::DuplicateId {
                    kind: "hyperedge",
                    id: e.id.clone(),
                });
            }
            for end in [&e.tail, &e.head] {
                if !hv_ids.contains(end.as_str()) {
                    return Err(HypernetError::UnknownHypervertex {
                        edge: e.id.clone(),
                        hypervertex: end.clone(),
                    });
                }
            }
            if e.tail == e.head {
                return Err(HypernetError::HyperLoop {
                    edge: e.id.clone(),
                    hypervertex: e.tail.clone(),
                });
            }
            if directed && !e.directed {
                return Err(HypernetError::UndirectedInDirected { edge: e.id.clone() });
            }
            if !e.directed && e.tail > e.head {
                std::mem::swap(&mut e.tail, &mut e.head);
            }
            let key = if e.tail < e.head {
                (e.tail.clone(), e.head.clone())
            } else {
                (e.head.clone(), e.tail.clone())
            };
            let orientation = e.directed.then(|| (e.tail.clone(), e.head.clone()));
            let existing = pairs.entry(key).or_default();
            if let Some((other, _)) = existing
                .iter()
                .find(|(_, o)| o.is_none() || orientation.is_none() || *o == orientation)
            {
                return Err(HypernetError::DuplicateHyperedge {
                    edge: e.id.clone(),
                    other: other.clone(),
                });
            }
            existing.push((e.id.clone(), orientation));
        }

        Ok(Hypernetwork {
            nodes: node_set,
            hypervertices,
            hyperedges,
            directed,
        })
    }

    pub fn nodes(&self) -> &BTreeSet<NodeId> {
        &self.nodes
    }

    pub fn hypervertices(&self) -> &[Hypervertex] {
        &self.hypervertices
    }

    pub fn hyperedges(&self) -> &[Hyperedge] {
        &self.hyperedges
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn has_directed_edges(&self) -> bool {
        self.hyperedges.iter().any(|e| e.directed)
    }

    pub fn hypervertex(&self, id: &str) -> Option<&Hypervertex> {
        self.hypervertices.iter().find(|hv| hv.id == id)
    }

    /// Node labels in sorted order; these index the vertices of every
    /// complex built directly from the network.
    pub fn node_labels(&self) -> Vec<String> {
        self.nodes.iter().map(|n| n.0.clone()).collect()
    }

    fn node_index(&self) -> HashMap<&NodeId, usize> {
        self.nodes.iter().enumerate().map(|(i, n)| (n, i)).collect()
    }

    fn endpoints(&self, e: &Hyperedge) -> (&Hypervertex, &Hypervertex) {
        let tail = self.hypervertex(&e.tail).expect("validated hyperedge");
        let head = self.hypervertex(&e.head).expect("validated hyperedge");
        (tail, head)
    }

    /// Generating simplices of the geometric model: every hypervertex and
    /// every hyperedge union, as node-index simplices.
    fn geometric_generators(&self) -> Vec<Simplex> {
        let index = self.node_index();
        let to_simplex = |nodes: &mut dyn Iterator<Item = &NodeId>| Simplex::new(nodes.map(|n| index[n]));
        let mut gens: Vec<Simplex> = self
            .hypervertices
            .iter()
            .map(|hv| to_simplex(&mut hv.nodes.iter()))
            .collect();
        for e in &self.hyperedges {
            let (t, h) = self.endpoints(e);
            gens.push(to_simplex(&mut t.nodes.union(&h.nodes)));
        }
        gens
    }
}

/// Graph on the nodes: every hypervertex becomes a clique, and every
/// hyperedge `V_i V_j` adds the pairs `(u, w)` with `u ∈ V_i \ V_j`,
/// `w ∈ V_j \ V_i`.
pub fn clique_expansion(h: &Hypernetwork) -> SimplicialComplex {
    let index = h.node_index();
    let mut edges = BTreeSet::new();
    for hv in &h.hypervertices {
        let vs: Vec<usize> = hv.nodes.iter().map(|n| index[n]).collect();
        for (i, &a) in vs.iter().enumerate() {
            for &b in &vs[i + 1..] {
                edges.insert(Simplex::edge(a, b));
            }
        }
    }
    for e in &h.hyperedges {
        let (t, hd) = h.endpoints(e);
        for u in t.nodes.difference(&hd.nodes) {
            for w in hd.nodes.difference(&t.nodes) {
                edges.insert(Simplex::edge(index[u], index[w]));
            }
        }
    }
    SimplicialComplex::from_faces(h.node_labels(), edges).expect("edges over known nodes")
}

/// 2-skeleton of the union of a full simplex on each hypervertex and on
/// `V_i ∪ V_j` for each hyperedge.
pub fn geometric_complex(h: &Hypernetwork) -> SimplicialComplex {
    SimplicialComplex::from_generators(h.node_labels(), h.geometric_generators(), Some(2))
        .expect("generators over known nodes")
}

/// Largest maximal simplex for which faces are enumerated explicitly.
const ENUMERATION_LIMIT: usize = 16;

/// Euler characteristic of the untruncated geometric model.
///
/// Small models are enumerated face by face; once a maximal simplex exceeds
/// the enumeration limit the count switches to inclusion–exclusion over
/// maximal simplices.
pub fn geometric_euler_characteristic(h: &Hypernetwork) -> i64 {
    let maximal = maximal_generators(h);
    if maximal.iter().all(|s| s.len() <= ENUMERATION_LIMIT) {
        geometric_chi_by_enumeration(h)
    } else {
        chi_by_inclusion_exclusion(&maximal, h.nodes.len())
    }
}

/// Explicit enumeration of every face of the full geometric model.
pub fn geometric_chi_by_enumeration(h: &Hypernetwork) -> i64 {
    SimplicialComplex::from_generators(h.node_labels(), h.geometric_generators(), None)
        .expect("generators over known nodes")
        .euler_characteristic()
}

/// Inclusion–exclusion over maximal simplices: every nonempty intersection
/// of simplices is a simplex with χ = 1, so
/// `χ(⋃ σ_i) = Σ_{S : ⋂_S σ ≠ ∅} (−1)^{|S|+1}`.
pub fn geometric_chi_by_inclusion_exclusion(h: &Hypernetwork) -> i64 {
    chi_by_inclusion_exclusion(&maximal_generators(h), h.nodes.len())
}

/// Maximal generating simplices, including lone vertices for nodes outside
/// every hypervertex.
fn maximal_generators(h: &Hypernetwork) -> Vec<Simplex> {
    let mut gens = h.geometric_generators();
    let covered: HashSet<usize> = gens.iter().flat_map(|s| s.vertices().to_vec()).collect();
    gens.extend((0..h.nodes.len()).filter(|v| !covered.contains(v)).map(Simplex::vertex));
    gens.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    gens.dedup();
    let mut maximal: Vec<Simplex> = Vec::new();
    for g in gens {
        let inside = maximal
            .iter()
            .any(|m| g.vertices().iter().all(|v| m.contains_vertex(*v)));
        if !inside {
            maximal.push(g);
        }
    }
    maximal
}

fn chi_by_inclusion_exclusion(maximal: &[Simplex], vertex_count: usize) -> i64 {
    fn recurse(sets: &[BitVec], start: usize, current: &BitVec, size: usize) -> i64 {
        let mut total = 0;
        for i in start..sets.len() {
            let next = current.clone() & &sets[i];
            if next.not_any() {
                continue;
            }
            let sign = if size.is_multiple_of(2) { 1 } else { -1 };
            total += sign + recurse(sets, i + 1, &next, size + 1);
        }
        total
    }
    let sets: Vec<BitVec> = maximal
        .iter()
        .map(|s| {
            let mut bits = bitvec![0; vertex_count];
            for &v in s.vertices() {
                bits.set(v, true);
            }
            bits
        })
        .collect();
    recurse(&sets, 0, &bitvec![1; vertex_count], 0)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNetwork {
    #[serde(default)]
    nodes: Option<Vec<String>>,
    #[serde(default)]
    hypervertices: Vec<RawHypervertex>,
    #[serde(default)]
    hyperedges: Vec<RawHyperedge>,
    #[serde(default)]
    directed: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawHypervertex {
    id: String,
    nodes: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawHyperedge {
    id: String,
    tail: String,
    head: String,
    #[serde(default)]
    directed: Option<bool>,
}

pub fn parse(input: &[u8], format: Format) -> Result<Hypernetwork, HypernetError> {
    match format {
        Format::Json => parse_json(input),
        Format::Text => parse_text(input),
    }
}

fn parse_json(input: &[u8]) -> Result<Hypernetwork, HypernetError> {
    let raw: RawNetwork = serde_json::from_slice(input).map_err(|e| HypernetError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    from_value(raw)
}

/// Builds a hypernetwork from an already-parsed JSON document.
pub fn from_json_value(value: serde_json::Value) -> Result<Hypernetwork, HypernetError> {
    let raw: RawNetwork = serde_json::from_value(value).map_err(|e| HypernetError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    from_value(raw)
}

fn from_value(raw: RawNetwork) -> Result<Hypernetwork, HypernetError> {
    let hypervertices = raw
        .hypervertices
        .into_iter()
        .map(|hv| Hypervertex::new(hv.id, hv.nodes.into_iter().map(NodeId)))
        .collect();
    let hyperedges = raw
        .hyperedges
        .into_iter()
        .map(|e| Hyperedge::new(e.id, e.tail, e.head, e.directed.unwrap_or(raw.directed)))
        .collect();
    Hypernetwork::new(
        raw.nodes.map(|ns| ns.into_iter().map(NodeId).collect()),
        hypervertices,
        hyperedges,
        raw.directed,
    )
}

fn parse_text(input: &[u8]) -> Result<Hypernetwork, HypernetError> {
    let text = std::str::from_utf8(input).map_err(|e| {
        let before = &input[..e.valid_up_to()];
        let line = before.iter().filter(|&&b| b == b'\n').count() + 1;
        let column = before.iter().rev().take_while(|&&b| b != b'\n').count() + 1;
        HypernetError::Syntax {
            line,
            column,
            message: "invalid UTF-8".into(),
        }
    })?;

    let mut hypervertices = Vec::new();
    let mut hyperedges = Vec::new();
    for (i, raw_line) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw_line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((head, rest)) = line.split_once(':') else {
            let column = raw_line.len() - raw_line.trim_start().len() + 1;
            return Err(HypernetError::Syntax {
                line: line_no,
                column,
                message: "expected `<id>: ...`".into(),
            });
        };
        let head = head.trim();
        let tokens: Vec<&str> = rest.split_whitespace().collect();
        match head {
            "E" | "E>" => {
                let [tail, target] = tokens[..] else {
                    return Err(HypernetError::NotPairwise {
                        line: line_no,
                        arity: tokens.len(),
                    });
                };
                if let Some(bad) = tokens.iter().find(|t| !is_text_token(t)) {
                    return Err(token_error(raw_line, line_no, bad));
                }
                let id = format!("E{}", hyperedges.len() + 1);
                hyperedges.push(Hyperedge::new(id, tail, target, head == "E>"));
            }
            id => {
                if id.is_empty() || !is_text_token(id) {
                    return Err(HypernetError::Syntax {
                        line: line_no,
                        column: raw_line.find(line).unwrap_or(0) + 1,
                        message: format!("invalid hypervertex id {id:?}"),
                    });
                }
                if let Some(bad) = tokens.iter().find(|t| !is_text_token(t)) {
                    return Err(token_error(raw_line, line_no, bad));
                }
                hypervertices.push(Hypervertex::new(id, tokens.into_iter().map(NodeId::new)));
            }
        }
    }
    let directed = !hyperedges.is_empty() && hyperedges.iter().all(|e: &Hyperedge| e.directed);
    Hypernetwork::new(None, hypervertices, hyperedges, directed)
}

/// Ids and node names in the text format: no whitespace, no `#`, `:` or JSON punctuation.
fn is_text_token(t: &str) -> bool {
    !t.chars().any(|c| c.is_whitespace() || "#:{}[]\",".contains(c))
}

fn token_error(raw_line: &str, line: usize, token: &str) -> HypernetError {
    HypernetError::Syntax {
        line,
        column: raw_line.find(token).unwrap_or(0) + 1,
        message: format!("invalid name {token:?}"),
    }
}

pub fn serialize(h: &Hypernetwork, format: Format) -> String {
    match format {
        Format::Json => {
            let raw = RawNetwork {
                nodes: Some(h.node_labels()),
                hypervertices: h
                    .hypervertices
                    .iter()
                    .map(|hv| RawHypervertex {
                        id: hv.id.clone(),
                        nodes: hv.nodes.iter().map(|n| n.0.clone()).collect(),
                    })
                    .collect(),
                hyperedges: h
                    .hyperedges
                    .iter()
                    .map(|e| RawHyperedge {
                        id: e.id.clone(),
                        tail: e.tail.clone(),
                        head: e.head.clone(),
                        directed: Some(e.directed),
                    })
                    .collect(),
                directed: h.directed,
            };
            serde_json::to_string_pretty(&raw).expect("plain data serializes")
        }
        Format::Text => {
            let mut out = String::new();
            for hv in &h.hypervertices {
                out.push_str(&hv.id);
                out.push(':');
                for n in &hv.nodes {
                    out.push(' ');
                    out.push_str(n.as_str());
                }
                out.push('\n');
            }
            for e in &h.hyperedges {
                let tag = if e.directed { "E>" } else { "E" };
                out.push_str(&format!("{tag}: {} {}\n", e.tail, e.head));
            }
            out
        }
    }
}
