//! Iterative A/B/C chain partitions of `Q(P_n)`.
//!
//! Starting from the single chain `(∅, {1})` of `Q(P_1)`, each chain of
//! `Q(P_n)` produces chains of `Q(P_{n+1})`:
//!
//! - an A-chain (every member contains `n`) becomes a B-chain with the same sets;
//! - a B-chain `C_1 < ... < C_l` (no member contains `n`) becomes the C-chain
//!   `C_1 < ... < C_l < C_l + (n+1)` and, when `l > 1`, the A-chain
//!   `C_1 + (n+1) < ... < C_{l-1} + (n+1)`;
//! - a C-chain `C_1 < ... < C_{l-1} < C_{l-1} + n` becomes a B-chain with the
//!   same sets and the A-chain `C_1 + (n+1) < ... < C_{l-1} + (n+1)`.
//!
//! Children are listed in parent order, A before B before C.

use std::fmt;
use std::fmt::Write as _;

use rustc_hash::FxHashSet;
use serde::Serialize;

use crate::cube::enumerate_all;
use crate::error::{Error, Result};
use crate::formulas::{layer_sizes_pn, max_layer_pn};
use crate::graph::Graph;
use crate::set::VertexSet;

/// Largest `n` accepted by [`build_partition`]; `|Q(P_25)| = F_27 = 196418`.
pub const PARTITION_LIMIT: usize = 25;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ChainKind {
    A,
    B,
    C,
}

impl fmt::Display for ChainKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChainKind::A => "A",
            ChainKind::B => "B",
            ChainKind::C => "C",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TaggedChain {
    pub kind: ChainKind,
    pub sets: Vec<VertexSet>,
}

impl TaggedChain {
    fn new(kind: ChainKind, sets: Vec<VertexSet>) -> Self {
        TaggedChain { kind, sets }
    }

    /// Strictly increasing, and the tag matches how `n` occurs.
    pub fn is_valid(&self, n: usize) -> bool {
        if self.sets.is_empty() || !self.sets.windows(2).all(|w| w[0].is_strict_subset(w[1])) {
            return false;
        }
        let last = self.sets.len() - 1;
        match self.kind {
            ChainKind::A => self.sets.iter().all(|a| a.contains(n)),
            ChainKind::B => self.sets.iter().all(|a| !a.contains(n)),
            ChainKind::C => last >= 1 && self.sets.iter().enumerate().all(|(i, a)| a.contains(n) == (i == last)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainPartition {
    pub n: usize,
    pub chains: Vec<TaggedChain>,
}

impl ChainPartition {
    /// One chain per line: `B: {} < {1}`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for c in &self.chains {
            let sets: Vec<String> = c.sets.iter().map(|a| a.to_string()).collect();
            let _ = writeln!(out, "{}: {}", c.kind, sets.join(" < "));
        }
        out
    }
}

fn step(p: &ChainPartition) -> ChainPartition {
    let n = p.n;
    let next = n + 1;
    let lift = |sets: &[VertexSet]| sets.iter().map(|a| a.with(next)).collect::<Vec<_>>();
    let mut chains = Vec::with_capacity(p.chains.len() * 2);
    for c in &p.chains {
        let sets = &c.sets;
        match c.kind {
            ChainKind::A => chains.push(TaggedChain::new(ChainKind::B, sets.clone())),
            ChainKind::B => {
                if sets.len() > 1 {
                    chains.push(TaggedChain::new(ChainKind::A, lift(&sets[..sets.len() - 1])));
                }
                let mut grown = sets.clone();
                grown.push(sets[sets.len() - 1].with(next));
                chains.push(TaggedChain::new(ChainKind::C, grown));
            }
            ChainKind::C => {
                chains.push(TaggedChain::new(ChainKind::A, lift(&sets[..sets.len() - 1])));
                chains.push(TaggedChain::new(ChainKind::B, sets.clone()));
            }
        }
    }
    ChainPartition { n: next, chains }
}

/// The iterative partition of `Q(P_n)`.
pub fn build_partition(n: usize) -> Result<ChainPartition> {
    if n == 0 {
        return Err(Error::InvalidArgument("chain partitions need n >= 1".into()));
    }
    if n > PARTITION_LIMIT {
        return Err(Error::budget("chain partition", n, PARTITION_LIMIT));
    }
    let mut p = ChainPartition {
        n: 1,
        chains: vec![TaggedChain::new(ChainKind::C, vec![VertexSet::EMPTY, VertexSet::singleton(1)])],
    };
    while p.n < n {
        p = step(&p);
    }
    Ok(p)
}

/// Replaces `({2,5,8})`, `({2,5},{2,5,7})`, `({5,7})` by `({2,5},{2,5,8})`
/// and `({5,7},{2,5,7})`, at the position of the first of the three.
pub fn repair_n8(p: &ChainPartition) -> Result<ChainPartition> {
    let s = |v: &[usize]| VertexSet::from_labels(v.iter().copied());
    let targets = [vec![s(&[2, 5, 8])], vec![s(&[2, 5]), s(&[2, 5, 7])], vec![s(&[5, 7])]];
    if p.n != 8 {
        return Err(Error::Precondition(format!("the repair applies to n = 8, not {}", p.n)));
    }
    let positions: Vec<usize> = targets
        .iter()
        .map(|t| p.chains.iter().position(|c| &c.sets == t))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Precondition("the three chains to replace are not all present".into()))?;
    let first = *positions.iter().min().unwrap();
    let mut chains = Vec::with_capacity(p.chains.len() - 1);
    for (i, c) in p.chains.iter().enumerate() {
        if i == first {
            chains.push(TaggedChain::new(ChainKind::C, vec![s(&[2, 5]), s(&[2, 5, 8])]));
            chains.push(TaggedChain::new(ChainKind::B, vec![s(&[5, 7]), s(&[2, 5, 7])]));
        }
        if !positions.contains(&i) {
            chains.push(c.clone());
        }
    }
    Ok(ChainPartition { n: 8, chains })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionReport {
    pub n: usize,
    /// Disjoint chains covering `Q(P_n)` exactly.
    pub is_partition: bool,
    /// Every chain strictly increasing and consistent with its tag.
    pub chains_valid: bool,
    /// Every chain's sizes are consecutive integers.
    pub consecutive_sizes: bool,
    pub chains_missing_largest_layer: usize,
    pub chain_count: usize,
    pub total_length: usize,
}

/// Checks `p` against an enumeration of `Q(P_n)`. Never fails; problems are
/// reported in the fields.
pub fn validate_partition(n: usize, p: &ChainPartition) -> PartitionReport {
    let (ground, largest): (Vec<VertexSet>, Vec<usize>) = match Graph::path(n) {
        Ok(g) => {
            let sizes = layer_sizes_pn(n as u64);
            let top = max_layer_pn(n as u64);
            (enumerate_all(&g).collect(), (0..sizes.len()).filter(|&r| sizes[r] == top).collect())
        }
        Err(_) => (Vec::new(), Vec::new()),
    };
    let all: FxHashSet<VertexSet> = ground.iter().copied().collect();
    let mut seen = FxHashSet::default();
    let mut disjoint_inside = true;
    for c in &p.chains {
        for &a in &c.sets {
            if !all.contains(&a) || !seen.insert(a) {
                disjoint_inside = false;
            }
        }
    }
    PartitionReport {
        n,
        is_partition: p.n == n && disjoint_inside && seen.len() == all.len() && !all.is_empty(),
        chains_valid: p.chains.iter().all(|c| c.is_valid(n)),
        consecutive_sizes: p.chains.iter().all(|c| c.sets.windows(2).all(|w| w[1].len() == w[0].len() + 1)),
        chains_missing_largest_layer: p
            .chains
            .iter()
            .filter(|c| !c.sets.iter().any(|a| largest.contains(&a.len())))
            .count(),
        chain_count: p.chains.len(),
        total_length: p.chains.iter().map(|c| c.sets.len()).sum(),
    }
}
