//! The independent-set hypercube `Q(G)`: enumeration, layers, the cover
//! digraph's degrees, and shadows.
//!
//! Enumeration is a depth-first backtrack over vertices in label order.
//! A node carries the set built so far and the mask of vertices that can
//! still be appended (larger than every member, not adjacent to any).
//! Output is therefore in the lexicographic order of [`VertexSet`].

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigUint;
use rustc_hash::FxHashSet;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::set::{mask, VertexSet};
use crate::BigCount;

/// True iff `a` is a subset of `[n]` spanning no edge of `g`.
pub fn is_independent(g: &Graph, a: VertexSet) -> bool {
    a.is_subset(VertexSet::full(g.n())) && g.neighborhood(a).intersection(a).is_empty()
}

/// Size of `a` in the cover digraph: every member can be removed.
pub fn in_degree(a: VertexSet) -> usize {
    a.len()
}

/// Number of vertices `b` outside `a` with `a + b` still independent.
pub fn out_degree(g: &Graph, a: VertexSet) -> usize {
    let blocked = a.union(g.neighborhood(a));
    (mask(g.n()) & !blocked.bits()).count_ones() as usize
}

/// Depth-first iterator over `Q(G)`, optionally capped at a maximum size.
pub struct IndependentSets<'g> {
    adj: &'g [u64],
    stack: Vec<(u64, u64)>,
    max_size: usize,
}

impl<'g> IndependentSets<'g> {
    fn new(g: &'g Graph, max_size: usize) -> Self {
        IndependentSets {
            adj: g.adj_bits(),
            stack: vec![(0, mask(g.n()))],
            max_size,
        }
    }
}

impl Iterator for IndependentSets<'_> {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        let (set, allowed) = self.stack.pop()?;
        if (set.count_ones() as usize) < self.max_size {
            let mut rest = allowed;
            // Push high vertices first so the lowest is expanded next.
            while rest != 0 {
                let v = 63 - rest.leading_zeros() as usize;
                rest &= !(1u64 << v);
                let above = !mask(v + 1);
                self.stack
                    .push((set | 1 << v, allowed & above & !self.adj[v]));
            }
        }
        Some(VertexSet::from_bits(set))
    }
}

/// Every independent set of `g`, each once, in lexicographic order.
pub fn enumerate_all(g: &Graph) -> IndependentSets<'_> {
    IndependentSets::new(g, usize::MAX)
}

/// Independent sets of size at most `max_size`.
pub fn enumerate_up_to(g: &Graph, max_size: usize) -> IndependentSets<'_> {
    IndependentSets::new(g, max_size)
}

fn layer_sets(g: &Graph, r: usize) -> Vec<VertexSet> {
    fn go(adj: &[u64], set: u64, allowed: u64, need: u32, out: &mut Vec<VertexSet>) {
        if need == 0 {
            out.push(VertexSet::from_bits(set));
            return;
        }
        let mut rest = allowed;
        while rest.count_ones() >= need {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            go(adj, set | 1 << v, rest & !adj[v], need - 1, out);
        }
    }
    let mut out = Vec::new();
    if r <= g.n() {
        go(g.adj_bits(), 0, mask(g.n()), r as u32, &mut out);
    }
    out
}

/// `Q^(r)(G)` in lexicographic order.
pub fn enumerate_layer(g: &Arc<Graph>, r: usize) -> Family {
    Family::from_parts(g.clone(), layer_sets(g, r))
}

/// Layers `lo..=hi` of `Q(G)`, each in lexicographic order.
pub fn enumerate_band(g: &Graph, lo: usize, hi: usize) -> Vec<Vec<VertexSet>> {
    let mut layers = vec![Vec::new(); hi.saturating_sub(lo) + 1];
    for a in enumerate_up_to(g, hi) {
        let r = a.len();
        if r >= lo {
            layers[r - lo].push(a);
        }
    }
    layers
}

/// `|Q^(r)(G)|` for `r = 0..=n` without materialising the sets.
pub fn layer_counts(g: &Graph) -> Vec<BigCount> {
    fn go(adj: &[u64], allowed: u64, size: usize, counts: &mut [u64]) {
        counts[size] += 1;
        let mut rest = allowed;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            go(adj, rest & !adj[v], size + 1, counts);
        }
    }
    let mut counts = vec![0u64; g.n() + 1];
    go(g.adj_bits(), mask(g.n()), 0, &mut counts);
    counts.into_iter().map(BigUint::from).collect()
}

/// `|Q(G)|`.
pub fn count_all(g: &Graph) -> BigCount {
    layer_counts(g).into_iter().sum()
}

/// Out-degree histogram of the `r`-th layer: `d -> #{A : |A| = r, d+(A) = d}`.
pub fn outdegree_histogram(g: &Graph, r: usize) -> BTreeMap<usize, BigCount> {
    let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
    for a in layer_sets(g, r) {
        *counts.entry(out_degree(g, a)).or_default() += 1;
    }
    counts.into_iter().map(|(d, c)| (d, BigUint::from(c))).collect()
}

/// An ordered list of distinct independent sets of one context graph.
#[derive(Clone, Debug)]
pub struct Family {
    graph: Arc<Graph>,
    sets: Vec<VertexSet>,
}

impl PartialEq for Family {
    fn eq(&self, other: &Self) -> bool {
        self.sets == other.sets && *self.graph == *other.graph
    }
}

impl Family {
    /// Validates independence and distinctness; keeps the given order.
    pub fn new(graph: Arc<Graph>, sets: Vec<VertexSet>) -> Result<Self> {
        let mut seen = FxHashSet::default();
        for &a in &sets {
            if !is_independent(&graph, a) {
                return Err(Error::InvalidArgument(format!("{a} is not independent in the context graph")));
            }
            if !seen.insert(a) {
                return Err(Error::InvalidArgument(format!("{a} appears twice")));
            }
        }
        Ok(Family { graph, sets })
    }

    pub(crate) fn from_parts(graph: Arc<Graph>, sets: Vec<VertexSet>) -> Self {
        Family { graph, sets }
    }

    /// Sorts and removes duplicates before validating.
    pub fn from_unsorted(graph: Arc<Graph>, mut sets: Vec<VertexSet>) -> Result<Self> {
        sets.sort_unstable();
        sets.dedup();
        Family::new(graph, sets)
    }

    pub fn empty(graph: Arc<Graph>) -> Self {
        Family { graph, sets: Vec::new() }
    }

    /// All of `Q(G)`.
    pub fn cube(graph: &Arc<Graph>) -> Self {
        let sets = enumerate_all(graph).collect();
        Family::from_parts(graph.clone(), sets)
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn sets(&self) -> &[VertexSet] {
        &self.sets
    }

    pub fn into_sets(self) -> Vec<VertexSet> {
        self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, a: VertexSet) -> bool {
        self.sets.contains(&a)
    }

    fn sorted(graph: Arc<Graph>, mut sets: Vec<VertexSet>) -> Self {
        sets.sort_unstable();
        sets.dedup();
        Family { graph, sets }
    }

    fn same_graph(&self, other: &Family) -> Result<()> {
        if Arc::ptr_eq(&self.graph, &other.graph) || *self.graph == *other.graph {
            Ok(())
        } else {
            Err(Error::GraphMismatch)
        }
    }

    /// Members of size `r`.
    pub fn layer(&self, r: usize) -> Family {
        let sets = self.sets.iter().copied().filter(|a| a.len() == r).collect();
        Family::from_parts(self.graph.clone(), sets)
    }

    /// Member sizes with multiplicities.
    pub fn size_profile(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for a in &self.sets {
            *out.entry(a.len()).or_default() += 1;
        }
        out
    }

    /// Sorted union; both families must share a context graph.
    pub fn union(&self, other: &Family) -> Result<Family> {
        self.same_graph(other)?;
        let mut sets = self.sets.clone();
        sets.extend_from_slice(&other.sets);
        Ok(Family::sorted(self.graph.clone(), sets))
    }

    /// Members of `self` not in `other`, order preserved.
    pub fn difference(&self, other: &Family) -> Result<Family> {
        self.same_graph(other)?;
        let drop: FxHashSet<_> = other.sets.iter().copied().collect();
        let sets = self.sets.iter().copied().filter(|a| !drop.contains(a)).collect();
        Ok(Family::from_parts(self.graph.clone(), sets))
    }

    /// True iff every member of `self` is a member of `other`.
    pub fn is_subfamily_of(&self, other: &Family) -> Result<bool> {
        self.same_graph(other)?;
        let all: FxHashSet<_> = other.sets.iter().copied().collect();
        Ok(self.sets.iter().all(|a| all.contains(a)))
    }

    /// `{B : B + b in F for some b not in B}`, sorted.
    pub fn lower_shadow(&self) -> Family {
        let mut out = Vec::new();
        for &a in &self.sets {
            out.extend(a.iter().map(|v| a.without(v)));
        }
        Family::sorted(self.graph.clone(), out)
    }

    /// `{B : B - b in F for some b in B}`, sorted. Only independent sets
    /// qualify.
    pub fn upper_shadow(&self) -> Family {
        let n_mask = mask(self.graph.n());
        let mut out = Vec::new();
        for &a in &self.sets {
            let blocked = a.union(self.graph.neighborhood(a)).bits();
            let free = VertexSet::from_bits(n_mask & !blocked);
            out.extend(free.iter().map(|v| a.with(v)));
        }
        Family::sorted(self.graph.clone(), out)
    }

    pub fn is_antichain(&self) -> bool {
        is_antichain(&self.sets)
    }

    /// One set per line, labels sorted and comma-separated. The empty set is
    /// an empty line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for a in &self.sets {
            let _ = writeln!(out, "{}", a.to_labels_string());
        }
        out
    }

    /// Inverse of [`Family::to_text`]; validates against `graph`.
    pub fn parse_text(graph: Arc<Graph>, text: &str) -> Result<Self> {
        let body = text.strip_suffix('\n').unwrap_or(text);
        let mut sets = Vec::new();
        if !text.is_empty() {
            for (i, line) in body.split('\n').enumerate() {
                let a = VertexSet::parse_labels(line.trim_end(), graph.n())
                    .map_err(|message| Error::Parse { line: i + 1, message })?;
                sets.push(a);
            }
        }
        Family::new(graph, sets)
    }
}

/// True iff no member strictly contains another.
///
/// Uses a pairwise scan or, when members are small, a top-down walk of the
/// strict down-closure, whichever is cheaper.
pub fn is_antichain(sets: &[VertexSet]) -> bool {
    let k = sets.len() as f64;
    let pairwise = k * k / 2.0;
    let closure: f64 = sets.iter().map(|a| (a.len() as f64).exp2() * a.len().max(1) as f64).sum();
    if closure < pairwise {
        antichain_by_closure(sets)
    } else {
        antichain_pairwise(sets)
    }
}

fn antichain_pairwise(sets: &[VertexSet]) -> bool {
    let mut by_size: Vec<VertexSet> = sets.to_vec();
    by_size.sort_unstable_by_key(|a| a.len());
    for (i, &a) in by_size.iter().enumerate() {
        for &b in &by_size[i + 1..] {
            if a.is_strict_subset(b) {
                return false;
            }
        }
    }
    true
}

fn antichain_by_closure(sets: &[VertexSet]) -> bool {
    let top = sets.iter().map(|a| a.len()).max().unwrap_or(0);
    let mut members: Vec<Vec<u64>> = vec![Vec::new(); top + 1];
    for a in sets {
        members[a.len()].push(a.bits());
    }
    // below: every set strictly under some member, at the current level.
    let mut below: FxHashSet<u64> = FxHashSet::default();
    for r in (0..=top).rev() {
        if members[r].iter().any(|a| below.contains(a)) {
            return false;
        }
        let mut next = FxHashSet::default();
        for &a in members[r].iter().chain(below.iter()) {
            let mut rest = a;
            while rest != 0 {
                let low = rest & rest.wrapping_neg();
                next.insert(a & !low);
                rest &= rest - 1;
            }
        }
        below = next;
    }
    true
}
