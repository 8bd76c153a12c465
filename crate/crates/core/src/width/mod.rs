//! Poset width with Dilworth certificates.
//!
//! Explicit families go through the transitive closure and a bipartite
//! matching; full layer bands of `Q(G)` go through a flow on the cover
//! digraph, which scales to bands of millions of sets. Either way the answer
//! is an antichain and a chain partition of equal size, and that equality is
//! checked on the sets themselves before a report is returned.

mod flow;
mod matching;
mod order;
mod report;
mod shadow;

use crate::cube::Family;
use crate::error::{Error, Result};
use crate::graph::Graph;

pub use flow::{BAND_EDGE_LIMIT, BAND_ELEMENT_LIMIT};
pub use order::{build_order, ContainmentOrder, ORDER_ELEMENT_LIMIT, ORDER_PAIR_LIMIT};
pub use report::{check_certificate, serialize_count, WidthReport};
pub use shadow::{min_shadow_search, shadow_push, MIN_SHADOW_BUDGET};

use matching::{alternating_reach, hopcroft_karp, Bipartite, NIL};

/// Maximum antichain of an explicit family.
///
/// The minimum chain cover comes from a maximum matching between two copies
/// of the family; the antichain is the set of elements whose left copy is
/// alternately reachable from an unmatched left vertex while the right copy
/// is not.
pub fn max_antichain(family: &Family) -> Result<WidthReport> {
    let order = build_order(family)?;
    if order.pair_count() > ORDER_PAIR_LIMIT {
        return Err(Error::budget("matching", order.pair_count(), ORDER_PAIR_LIMIT));
    }
    let n = order.len();
    let mut offsets = Vec::with_capacity(n + 1);
    let mut targets = Vec::with_capacity(order.pair_count() as usize);
    offsets.push(0);
    for i in 0..n {
        targets.extend(order.successors(i).map(|j| j as u32));
        offsets.push(targets.len());
    }
    let bip = Bipartite {
        left: n,
        right: n,
        offsets,
        targets,
    };
    let m = hopcroft_karp(&bip);
    let (zl, zr) = alternating_reach(&bip, &m);
    let sets = order.elements();
    let antichain: Vec<_> = (0..n).filter(|&v| zl[v] && !zr[v]).map(|v| sets[v]).collect();
    debug_assert_eq!(antichain.len(), n - m.size);
    let mut chains = Vec::new();
    for start in 0..n {
        if m.mate_right[start] != NIL {
            continue;
        }
        let mut chain = vec![sets[start]];
        let mut x = start;
        while m.mate_left[x] != NIL {
            x = m.mate_left[x] as usize;
            chain.push(sets[x]);
        }
        chains.push(chain);
    }
    WidthReport::certified(sets, antichain, chains)
}

/// Maximum antichain among the sets of `Q(g)` with sizes in `lo..=hi`.
pub fn max_antichain_band(g: &Graph, lo: usize, hi: usize) -> Result<WidthReport> {
    if lo > hi || hi > g.n() {
        return Err(Error::InvalidArgument(format!("band {lo}..={hi} is not inside 0..={}", g.n())));
    }
    let sol = flow::solve_band(g, lo, hi)?;
    let e = &sol.elements;
    let antichain = sol.antichain.iter().map(|&i| e[i as usize]).collect();
    let chains = sol.chains.iter().map(|c| c.iter().map(|&i| e[i as usize]).collect()).collect();
    WidthReport::certified(e, antichain, chains)
}

/// Width of all of `Q(g)`.
pub fn max_antichain_cube(g: &Graph) -> Result<WidthReport> {
    max_antichain_band(g, 0, g.n())
}

#[cfg(test)]
mod tests;
