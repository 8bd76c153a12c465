//! The strict containment order on an explicit family, as successor bit-rows.

use rayon::prelude::*;

use crate::cube::Family;
use crate::error::{Error, Result};
use crate::set::VertexSet;

/// Largest family [`build_order`] accepts.
pub const ORDER_ELEMENT_LIMIT: usize = 20_000;
/// Largest number of related pairs the matching solver accepts.
pub const ORDER_PAIR_LIMIT: u64 = 50_000_000;

/// `related(i, j)` iff `elements[i]` is a proper subset of `elements[j]`.
/// Proper containment is transitive, so the rows are closed already.
#[derive(Clone, Debug)]
pub struct ContainmentOrder {
    elements: Vec<VertexSet>,
    words: usize,
    rows: Vec<u64>,
    pairs: u64,
}

impl ContainmentOrder {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[VertexSet] {
        &self.elements
    }

    /// Number of related pairs.
    pub fn pair_count(&self) -> u64 {
        self.pairs
    }

    pub fn related(&self, i: usize, j: usize) -> bool {
        self.rows[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    /// Indices `j` with `elements[i] < elements[j]`, ascending.
    pub fn successors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        let row = &self.rows[i * self.words..(i + 1) * self.words];
        row.iter().enumerate().flat_map(|(w, &bits)| {
            let mut rest = bits;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let j = w * 64 + rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(j)
            })
        })
    }
}

/// Tests every pair of different cardinalities; equal sizes are never related.
pub fn build_order(family: &Family) -> Result<ContainmentOrder> {
    build_order_of(family.sets())
}

pub(crate) fn build_order_of(elements: &[VertexSet]) -> Result<ContainmentOrder> {
    let n = elements.len();
    if n > ORDER_ELEMENT_LIMIT {
        return Err(Error::budget("containment order", n, ORDER_ELEMENT_LIMIT));
    }
    let words = n.div_ceil(64).max(1);
    let mut by_size: Vec<usize> = (0..n).collect();
    by_size.sort_by_key(|&i| elements[i].len());
    // first position in by_size holding a set larger than each size
    let top = elements.iter().map(|a| a.len()).max().unwrap_or(0);
    let mut larger_from = vec![n; top + 2];
    for (pos, &i) in by_size.iter().enumerate().rev() {
        let r = elements[i].len();
        for slot in larger_from.iter_mut().take(r) {
            *slot = pos;
        }
    }

    let mut rows = vec![0u64; n * words];
    let pairs: u64 = rows
        .par_chunks_mut(words)
        .enumerate()
        .map(|(i, row)| {
            let a = elements[i];
            let mut count = 0;
            for &j in &by_size[larger_from[a.len()]..] {
                if a.is_subset(elements[j]) {
                    row[j / 64] |= 1 << (j % 64);
                    count += 1;
                }
            }
            count
        })
        .sum();
    Ok(ContainmentOrder {
        elements: elements.to_vec(),
        words,
        rows,
        pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use std::sync::Arc;

    fn s(v: &[usize]) -> VertexSet {
        VertexSet::from_labels(v.iter().copied())
    }

    #[test]
    fn small_orders() {
        let p3 = Arc::new(Graph::path(3).unwrap());
        let q = Family::cube(&p3);
        assert_eq!(q.len(), 5);
        let o = build_order(&q).unwrap();
        // the empty set under four sets, {1} and {3} under {1,3}
        assert_eq!(o.pair_count(), 6);

        let layer = crate::cube::enumerate_layer(&Arc::new(Graph::path(9).unwrap()), 3);
        assert_eq!(build_order(&layer).unwrap().pair_count(), 0);

        let chain = Family::new(p3, vec![s(&[]), s(&[1]), s(&[1, 3])]).unwrap();
        let o = build_order(&chain).unwrap();
        assert_eq!(o.pair_count(), 3);
        assert!(o.related(0, 2) && !o.related(2, 0));
        assert_eq!(o.successors(0).collect::<Vec<_>>(), vec![1, 2]);
    }

    #[test]
    fn pair_count_matches_brute_force() {
        let g = Arc::new(Graph::erdos_renyi(12, 0.25, 5).unwrap());
        let q = Family::cube(&g);
        let o = build_order(&q).unwrap();
        let sets = q.sets();
        let mut brute = 0;
        for (i, &a) in sets.iter().enumerate() {
            for (j, &b) in sets.iter().enumerate() {
                assert_eq!(o.related(i, j), a.is_strict_subset(b));
                brute += a.is_strict_subset(b) as u64;
            }
        }
        assert_eq!(o.pair_count(), brute);
    }

    #[test]
    fn over_budget_is_an_error() {
        let g = Arc::new(Graph::edgeless(15).unwrap());
        let err = build_order(&Family::cube(&g)).unwrap_err();
        assert!(err.is_budget());
    }
}
