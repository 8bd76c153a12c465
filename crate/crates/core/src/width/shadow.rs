//! Pushing antichains of `Q(P_n)` into the middle band, and brute-force
//! shadow minimisation.

use std::sync::Arc;

use crate::cube::{enumerate_layer, Family};
use crate::error::{Error, Result};
use crate::formulas::binomial;
use crate::graph::Graph;
use crate::set::VertexSet;
use crate::BigCount;

/// Default cap on the number of families [`min_shadow_search`] may visit.
pub const MIN_SHADOW_BUDGET: u64 = 10_000_000;

/// Moves an antichain of `Q(P_n)` into the sizes `r` with
/// `(n-1)/4 < r < (n+2)/3` without shrinking it.
///
/// While the top size `r` has `3r >= n+2` the whole top layer is replaced by
/// its lower shadow; while the bottom size has `4r <= n-1` the bottom layer
/// is replaced by its upper shadow. Each step is checked to leave an
/// antichain at least as large as before.
pub fn shadow_push(family: &Family) -> Result<Family> {
    let g = family.graph().clone();
    let n = g.n();
    if n < 2 || *g != Graph::path(n)? {
        return Err(Error::Precondition("shadow push needs the path P_n with n >= 2".into()));
    }
    if !family.is_antichain() {
        return Err(Error::Precondition("input family is not an antichain".into()));
    }
    let mut current = family.clone();
    loop {
        let Some(top) = current.sets().iter().map(|a| a.len()).max() else {
            return Ok(current);
        };
        let bottom = current.sets().iter().map(|a| a.len()).min().unwrap_or(top);
        let replaced = if 3 * top >= n + 2 {
            let layer = current.layer(top);
            current.difference(&layer)?.union(&layer.lower_shadow())?
        } else if 4 * bottom < n {
            let layer = current.layer(bottom);
            current.difference(&layer)?.union(&layer.upper_shadow())?
        } else {
            return Ok(current);
        };
        if replaced.len() < current.len() {
            return Err(Error::Certificate(format!("shadow step shrank {} sets to {}", current.len(), replaced.len())));
        }
        if !replaced.is_antichain() {
            return Err(Error::Certificate("shadow step broke the antichain property".into()));
        }
        current = replaced;
    }
}

/// A family of `s` sets in `Q^(r)(P_n)` with the smallest lower shadow, by
/// exhaustive search over all `C(q_n^r, s)` choices. The first minimiser in
/// lexicographic order of choices is returned.
pub fn min_shadow_search(n: usize, r: usize, s: usize, budget: u64) -> Result<(Family, BigCount)> {
    let g = Arc::new(Graph::path(n)?);
    let layer = enumerate_layer(&g, r).into_sets();
    if s > layer.len() {
        return Err(Error::InvalidArgument(format!("layer {r} of P_{n} has only {} sets", layer.len())));
    }
    let choices = binomial(layer.len() as i64, s as i64);
    if choices > BigCount::from(budget) {
        return Err(Error::budget("shadow search", choices, budget));
    }
    let below: Vec<VertexSet> = if r == 0 { Vec::new() } else { enumerate_layer(&g, r - 1).into_sets() };
    let words = below.len().div_ceil(64);
    let shadows: Vec<Vec<u64>> = layer
        .iter()
        .map(|a| {
            let mut row = vec![0u64; words];
            for v in a.iter() {
                let i = below.binary_search(&a.without(v)).expect("shadow of an independent set is independent");
                row[i / 64] |= 1 << (i % 64);
            }
            row
        })
        .collect();

    struct Search<'a> {
        shadows: &'a [Vec<u64>],
        s: usize,
        acc: Vec<Vec<u64>>,
        pick: Vec<usize>,
        best: u32,
        best_pick: Vec<usize>,
    }
    impl Search<'_> {
        fn go(&mut self, depth: usize, from: usize) {
            let size: u32 = self.acc[depth].iter().map(|w| w.count_ones()).sum();
            if size >= self.best {
                return;
            }
            if depth == self.s {
                self.best = size;
                self.best_pick = self.pick.clone();
                return;
            }
            let remaining = self.s - depth;
            for i in from..=self.shadows.len() - remaining {
                let next: Vec<u64> = self.acc[depth].iter().zip(&self.shadows[i]).map(|(a, b)| a | b).collect();
                self.acc[depth + 1] = next;
                self.pick.push(i);
                self.go(depth + 1, i + 1);
                self.pick.pop();
            }
        }
    }
    let mut search = Search {
        shadows: &shadows,
        s,
        acc: vec![vec![0u64; words]; s + 1],
        pick: Vec::with_capacity(s),
        best: u32::MAX,
        best_pick: Vec::new(),
    };
    search.go(0, 0);
    let sets = search.best_pick.iter().map(|&i| layer[i]).collect();
    Ok((Family::new(g, sets)?, BigCount::from(search.best)))
}
