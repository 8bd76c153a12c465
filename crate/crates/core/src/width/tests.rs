use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::cube::{count_all, enumerate_layer, is_antichain};
use crate::formulas::{binomial, cube_size_pn, max_layer_pn};
use crate::set::VertexSet;
use crate::BigCount;

fn arc(g: crate::Result<Graph>) -> Arc<Graph> {
    Arc::new(g.unwrap())
}

/// Largest antichain by trying every subfamily; fine up to about 20 sets.
fn brute_width(sets: &[VertexSet]) -> usize {
    let k = sets.len();
    let comparable: Vec<u32> = (0..k)
        .map(|i| {
            (0..k)
                .filter(|&j| sets[i].is_strict_subset(sets[j]) || sets[j].is_strict_subset(sets[i]))
                .fold(0u32, |m, j| m | 1 << j)
        })
        .collect();
    let mut best = 0;
    for pick in 0u32..1 << k {
        if (0..k).all(|i| pick >> i & 1 == 0 || comparable[i] & pick == 0) {
            best = best.max(pick.count_ones() as usize);
        }
    }
    best
}

#[test]
fn sperner_on_edgeless() {
    for n in 1..=8 {
        let g = arc(Graph::edgeless(n));
        let expect = binomial(n as i64, n as i64 / 2);
        let by_flow = max_antichain_cube(&g).unwrap();
        let by_matching = max_antichain(&Family::cube(&g)).unwrap();
        assert_eq!(by_flow.width, expect);
        assert_eq!(by_matching.width, expect);
        assert!(by_flow.certificate_ok && by_matching.certificate_ok);
    }
}

#[test]
fn paths_up_to_ten_have_width_max_layer() {
    for n in 1..=10 {
        let g = arc(Graph::path(n));
        let r = max_antichain_cube(&g).unwrap();
        assert_eq!(r.width, max_layer_pn(n as u64), "n={n}");
        assert_eq!(r.ratio, 1.0);
        assert_eq!(max_antichain(&Family::cube(&g)).unwrap().width, r.width);
    }
}

#[test]
fn path_width_below_previous_cube_size() {
    for n in 2..=16 {
        let r = max_antichain_cube(&Graph::path(n).unwrap()).unwrap();
        assert!(r.width <= cube_size_pn(n as u64 - 1));
    }
}

#[test]
fn p11_band() {
    let g = Graph::path(11).unwrap();
    let band = max_antichain_band(&g, 3, 4).unwrap();
    assert_eq!(band.ground_set, 154);
    assert!(band.width >= BigCount::from(84u32));
    let single = max_antichain_band(&g, 3, 3).unwrap();
    assert_eq!(single.width, BigCount::from(84u32));
    assert_eq!(single.chain_cover.len(), 84);
}

#[test]
fn band_over_everything_equals_cube() {
    for seed in 0..12 {
        let g = arc(Graph::erdos_renyi(11, 0.3, seed));
        let full = max_antichain(&Family::cube(&g)).unwrap();
        let band = max_antichain_band(&g, 0, g.n()).unwrap();
        assert_eq!(full.width, band.width, "seed {seed}");
        assert_eq!(band.ground_set, usize::try_from(count_all(&g)).unwrap());
    }
}

#[test]
fn inner_bands_agree_with_matching() {
    let g = arc(Graph::cycle(12));
    for lo in 0..=4 {
        for hi in lo..=6 {
            let band = max_antichain_band(&g, lo, hi).unwrap();
            let sets: Vec<_> = (lo..=hi).flat_map(|r| enumerate_layer(&g, r).into_sets()).collect();
            let fam = Family::from_unsorted(g.clone(), sets).unwrap();
            assert_eq!(max_antichain(&fam).unwrap().width, band.width, "{lo}..={hi}");
        }
    }
}

#[test]
fn small_cubes_match_exhaustive_search() {
    let mut checked = 0;
    for n in 2..=9 {
        for seed in 0..40 {
            let p = 0.2 + 0.1 * (seed % 6) as f64;
            let g = arc(Graph::erdos_renyi(n, p, seed));
            let q = Family::cube(&g);
            if q.len() > 18 {
                continue;
            }
            let expect = brute_width(q.sets());
            assert_eq!(max_antichain(&q).unwrap().width, BigCount::from(expect));
            assert_eq!(max_antichain_cube(&g).unwrap().width, BigCount::from(expect));
            checked += 1;
        }
    }
    assert!(checked > 50, "{checked}");
}

#[test]
fn certificates_rejected_when_broken() {
    let g = Graph::path(5).unwrap();
    let ground: Vec<_> = crate::cube::enumerate_all(&g).collect();
    let r = max_antichain_cube(&g).unwrap();
    r.verify(&ground).unwrap();

    let mut short = r.clone();
    short.antichain.pop();
    assert!(short.verify(&ground).is_err());

    let mut merged = r.clone();
    let last = merged.chain_cover.pop().unwrap();
    merged.chain_cover[0].extend(last);
    assert!(merged.verify(&ground).is_err());

    assert!(r.verify(&ground[1..]).is_err());
}

#[test]
fn reports_are_deterministic_and_sorted() {
    let g = Graph::path(9).unwrap();
    let a = max_antichain_cube(&g).unwrap();
    let b = max_antichain_cube(&g).unwrap();
    assert_eq!(a, b);
    assert!(a.antichain.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn gap_families() {
    let g = arc(Graph::sperner_gap_family(1));
    let r = max_antichain_cube(&g).unwrap();
    assert_eq!(r.width, BigCount::from(14u32));
    assert_eq!(max_antichain(&Family::cube(&g)).unwrap().width, r.width);
    let t = max_antichain_cube(&Graph::tower_family(2).unwrap()).unwrap();
    assert_eq!(t.width, BigCount::from(22u32));
    assert_eq!(t.max_layer, BigCount::from(20u32));
}

#[test]
fn band_arguments_checked() {
    let g = Graph::path(6).unwrap();
    assert!(max_antichain_band(&g, 3, 2).is_err());
    assert!(max_antichain_band(&g, 0, 7).is_err());
}

#[test]
fn oversized_family_is_a_budget_error() {
    let g = arc(Graph::edgeless(16));
    assert!(max_antichain(&Family::cube(&g)).unwrap_err().is_budget());
}

#[test]
fn shadow_push_examples() {
    let g = arc(Graph::path(11));
    let top = enumerate_layer(&g, 5);
    assert_eq!(top.len(), 21);
    let pushed = shadow_push(&top).unwrap();
    assert!(pushed.len() >= 21);
    assert!(pushed.sets().iter().all(|a| (3..=4).contains(&a.len())));

    let inside = enumerate_layer(&g, 3);
    assert_eq!(shadow_push(&inside).unwrap(), inside);

    let g10 = arc(Graph::path(10));
    let empty_set = Family::new(g10.clone(), vec![VertexSet::EMPTY]).unwrap();
    let up = shadow_push(&empty_set).unwrap();
    assert!(!up.is_empty() && up.sets().iter().all(|a| a.len() == 3));

    let not_antichain = Family::from_unsorted(g10, vec![VertexSet::EMPTY, VertexSet::singleton(1)]).unwrap();
    assert!(matches!(shadow_push(&not_antichain), Err(crate::Error::Precondition(_))));
    let cycle = arc(Graph::cycle(6));
    assert!(shadow_push(&enumerate_layer(&cycle, 1)).is_err());
}

#[test]
fn min_shadow_examples() {
    let (f, v) = min_shadow_search(6, 2, 1, MIN_SHADOW_BUDGET).unwrap();
    assert_eq!((f.len(), v), (1, BigCount::from(2u32)));
    let q = enumerate_layer(&arc(Graph::path(6)), 2).len();
    let (_, v) = min_shadow_search(6, 2, q, MIN_SHADOW_BUDGET).unwrap();
    assert_eq!(v, BigCount::from(6u32));

    // three 2-sets in P_7 by plain triple loops
    let layer = enumerate_layer(&arc(Graph::path(7)), 2).into_sets();
    assert_eq!(layer.len(), 15);
    let mut best = usize::MAX;
    for i in 0..15 {
        for j in i + 1..15 {
            for k in j + 1..15 {
                let u = layer[i].union(layer[j]).union(layer[k]);
                best = best.min(u.len());
            }
        }
    }
    let (f, v) = min_shadow_search(7, 2, 3, MIN_SHADOW_BUDGET).unwrap();
    assert_eq!(v, BigCount::from(best));
    assert_eq!(best, 3);
    assert_eq!(f.lower_shadow().len(), best);
    assert!(min_shadow_search(12, 3, 10, 1000).unwrap_err().is_budget());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_subfamilies_match_exhaustive_search(keep in proptest::collection::vec(any::<bool>(), 34)) {
        let g = arc(Graph::path(7));
        let all: Vec<_> = Family::cube(&g).into_sets();
        let picked: Vec<_> = all.iter().zip(&keep).filter(|(_, &k)| k).map(|(&a, _)| a).take(18).collect();
        let fam = Family::new(g, picked.clone()).unwrap();
        let r = max_antichain(&fam).unwrap();
        prop_assert_eq!(r.width, BigCount::from(brute_width(&picked)));
        prop_assert!(is_antichain(&r.antichain));
    }

    #[test]
    fn pushed_antichains_land_in_band(n in 8usize..=14, seed in any::<u64>()) {
        let g = arc(Graph::path(n));
        let a = random_antichain(&g, seed);
        let pushed = shadow_push(&a).unwrap();
        prop_assert!(pushed.len() >= a.len());
        for s in pushed.sets() {
            let r = s.len();
            prop_assert!(4 * r > n - 1 && 3 * r < n + 2);
        }
    }
}

/// Greedy antichain from a shuffled `Q(P_n)`.
pub(crate) fn random_antichain(g: &Arc<Graph>, seed: u64) -> Family {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut all = Family::cube(g).into_sets();
    all.shuffle(&mut rng);
    let take = rand::Rng::gen_range(&mut rng, 1..=all.len());
    let mut chosen: Vec<VertexSet> = Vec::new();
    for a in all.into_iter().take(take) {
        if chosen.iter().all(|b| !a.is_subset(*b) && !b.is_subset(a)) {
            chosen.push(a);
        }
    }
    Family::from_unsorted(g.clone(), chosen).unwrap()
}
