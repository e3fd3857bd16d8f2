//! Inclusion posets of node sets.
//!
//! Elements are kept sorted by `(size, contents)`, so `q ⊂ p` always implies
//! `index(q) < index(p)`. Cover pairs, rank propagation and chain
//! enumeration all rely on that ordering.

use std::collections::BTreeSet;
use std::fmt;

use bitvec::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::complex::alternating_sum;
use crate::hypernet::Hypernetwork;
use crate::NodeId;

/// Default upper bound on the number of chains a single enumeration may emit.
pub const DEFAULT_CHAIN_CAP: u64 = 10_000_000;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("chain enumeration exceeded the cap of {cap} chains")]
pub struct ChainCapExceeded {
    pub cap: u64,
}

/// A poset element: a finite set of nodes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct Element(BTreeSet<NodeId>);

impl Element {
    pub fn nodes(&self) -> &BTreeSet<NodeId> {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_proper_subset(&self, other: &Element) -> bool {
        self.0.len() < other.0.len() && self.0.is_subset(&other.0)
    }
}

impl FromIterator<NodeId> for Element {
    fn from_iter<I: IntoIterator<Item = NodeId>>(iter: I) -> Self {
        Element(iter.into_iter().collect())
    }
}

impl From<BTreeSet<NodeId>> for Element {
    fn from(nodes: BTreeSet<NodeId>) -> Self {
        Element(nodes)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, n) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(n.as_str())?;
        }
        f.write_str("}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    elements: Vec<Element>,
    /// `below[p][q]` iff `q < p`.
    below: Vec<BitVec>,
    /// Strictly greater elements, ascending.
    above: Vec<Vec<usize>>,
    /// Elements covered by each element, ascending.
    lower_covers: Vec<Vec<usize>>,
}

impl Poset {
    /// Deduplicates `sets`, orders them by inclusion and computes the cover
    /// relation as the transitive reduction of all comparabilities.
    pub fn from_sets(sets: impl IntoIterator<Item = Element>) -> Self {
        let unique: BTreeSet<Element> = sets.into_iter().collect();
        let mut elements: Vec<Element> = unique.into_iter().collect();
        elements.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let n = elements.len();

        let mut below = vec![bitvec![0; n]; n];
        let mut above = vec![Vec::new(); n];
        for p in 0..n {
            for q in 0..p {
                if elements[q].is_proper_subset(&elements[p]) {
                    below[p].set(q, true);
                    above[q].push(p);
                }
            }
        }

        // The covers of p are the maximal elements below p. Scanning downward
        // in index order sees every r > q before q.
        let mut lower_covers = vec![Vec::new(); n];
        for p in 0..n {
            let mut maximal: Vec<usize> = Vec::new();
            for q in below[p].iter_ones().rev() {
                if !maximal.iter().any(|&r| below[r][q]) {
                    maximal.push(q);
                }
            }
            maximal.reverse();
            lower_covers[p] = maximal;
        }

        Poset {
            elements,
            below,
            above,
            lower_covers,
        }
    }

    /// The canonical poset of a hypernetwork: optionally the singletons of
    /// every node, every hypervertex, and the union `V_i ∪ V_j` of every
    /// hyperedge, ordered by inclusion.
    pub fn from_hypernetwork(h: &Hypernetwork, include_singletons: bool) -> Self {
        let singletons = h
            .nodes()
            .iter()
            .filter(|_| include_singletons)
            .map(|n| Element::from_iter([n.clone()]));
        let hypervertices = h.hypervertices().iter().map(|hv| Element::from(hv.nodes().clone()));
        let unions = h.hyperedges().iter().map(|e| {
            let tail = h.hypervertex(e.tail()).expect("validated hyperedge");
            let head = h.hypervertex(e.head()).expect("validated hyperedge");
            Element::from(tail.nodes().union(head.nodes()).cloned().collect::<BTreeSet<_>>())
        });
        Poset::from_sets(singletons.chain(hypervertices).chain(unions))
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, e: &Element) -> Option<usize> {
        self.elements.iter().position(|x| x == e)
    }

    /// `q < p`.
    pub fn less(&self, q: usize, p: usize) -> bool {
        self.below[p][q]
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        a != b && (self.less(a, b) || self.less(b, a))
    }

    pub fn comparable_pair_count(&self) -> usize {
        self.below.iter().map(|b| b.count_ones()).sum()
    }

    pub fn lower_covers(&self, p: usize) -> &[usize] {
        &self.lower_covers[p]
    }

    /// Cover pairs `(q, p)` with `p` covering `q`, sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .lower_covers
            .iter()
            .enumerate()
            .flat_map(|(p, qs)| qs.iter().map(move |&q| (q, p)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn minimal_elements(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&p| self.lower_covers[p].is_empty())
    }

    /// Propagates rank 0 from the minimal elements along covers. Returns the
    /// unique rank function, or the first element that receives two
    /// different ranks.
    pub fn rank_function(&self) -> Ranking {
        let mut ranks = vec![0usize; self.len()];
        for p in 0..self.len() {
            let mut via = self.lower_covers[p].iter().map(|&q| (ranks[q] + 1, q));
            let Some((rank, first)) = via.next() else {
                continue;
            };
            if let Some((other, second)) = via.find(|&(r, _)| r != rank) {
                return Ranking::NotRanked(RankConflict {
                    element: p,
                    first_rank: rank,
                    first_via: first,
                    second_rank: other,
                    second_via: second,
                });
            }
            ranks[p] = rank;
        }
        let max_rank = ranks.iter().copied().max().unwrap_or(0);
        Ranking::Ranked(RankFunction { ranks, max_rank })
    }

    /// `Σ_j (−1)^j F_j` over the rank levels.
    pub fn chi_g(&self) -> Result<i64, RankConflict> {
        match self.rank_function() {
            Ranking::Ranked(rf) => Ok(rf.level_counts().chi_g()),
            Ranking::NotRanked(conflict) => Err(conflict),
        }
    }

    /// Every chain of pairwise comparable elements with `1..=max_length`
    /// members, as ascending index lists in lexicographic order.
    pub fn chains(&self, max_length: Option<usize>, cap: u64) -> Chains<'_> {
        Chains {
            poset: self,
            max_length: max_length.unwrap_or(usize::MAX),
            cap,
            emitted: 0,
            next_root: 0,
            stack: Vec::new(),
            done: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankFunction {
    ranks: Vec<usize>,
    max_rank: usize,
}

impl RankFunction {
    pub fn rank(&self, p: usize) -> usize {
        self.ranks[p]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn max_rank(&self) -> usize {
        self.max_rank
    }

    pub fn level_counts(&self) -> LevelCounts {
        if self.ranks.is_empty() {
            return LevelCounts { counts: Vec::new() };
        }
        let mut counts = vec![0; self.max_rank + 1];
        for &r in &self.ranks {
            counts[r] += 1;
        }
        LevelCounts { counts }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct LevelCounts {
    counts: Vec<usize>,
}

impl LevelCounts {
    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn chi_g(&self) -> i64 {
        alternating_sum(&self.counts)
    }
}

/// An element reached with two different ranks through two of its covers.
#[derive(Debug, Error, Clone, Copy, PartialEq, Eq, Serialize)]
#[error("poset is not ranked: element {element} gets rank {first_rank} via {first_via} and rank {second_rank} via {second_via}")]
pub struct RankConflict {
    pub element: usize,
    pub first_rank: usize,
    pub first_via: usize,
    pub second_rank: usize,
    pub second_via: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ranking {
    Ranked(RankFunction),
    NotRanked(RankConflict),
}

impl Ranking {
    pub fn ranked(&self) -> Option<&RankFunction> {
        match self {
            Ranking::Ranked(rf) => Some(rf),
            Ranking::NotRanked(_) => None,
        }
    }
}

/// Depth-first chain enumeration over the comparability digraph.
pub struct Chains<'a> {
    poset: &'a Poset,
    max_length: usize,
    cap: u64,
    emitted: u64,
    next_root: usize,
    /// (element, position of the next candidate in its `above` list)
    stack: Vec<(usize, usize)>,
    done: bool,
}

impl Chains<'_> {
    fn emit(&mut self) -> Option<Result<Vec<usize>, ChainCapExceeded>> {
        self.emitted += 1;
        if self.emitted > self.cap {
            self.done = true;
            return Some(Err(ChainCapExceeded { cap: self.cap }));
        }
        Some(Ok(self.stack.iter().map(|&(p, _)| p).collect()))
    }
}

impl Iterator for Chains<'_> {
    type Item = Result<Vec<usize>, ChainCapExceeded>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done || self.max_length == 0 {
            return None;
        }
        loop {
            let depth = self.stack.len();
            let Some((element, cursor)) = self.stack.last_mut() else {
                if self.next_root == self.poset.len() {
                    self.done = true;
                    return None;
                }
                self.stack.push((self.next_root, 0));
                self.next_root += 1;
                return self.emit();
            };
            // The top is the chain's largest element, so anything above it is
            // above every member.
            let candidates = &self.poset.above[*element];
            if depth < self.max_length && *cursor < candidates.len() {
                let next = candidates[*cursor];
                *cursor += 1;
                self.stack.push((next, 0));
                return self.emit();
            }
            self.stack.pop();
        }
    }
}
