use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::BigCount;

/// `C(a, b)`, zero when `b < 0` or `b > a`.
pub fn binomial(a: i64, b: i64) -> BigUint {
    if b < 0 || b > a {
        return BigUint::zero();
    }
    let b = b.min(a - b) as u64;
    let a = a as u64;
    let mut acc = BigUint::one();
    for i in 0..b {
        acc *= a - i;
        acc /= i + 1;
    }
    acc
}

/// `F_0 = 0`, `F_1 = 1`, `F_{k+2} = F_{k+1} + F_k`.
pub fn fibonacci(n: u64) -> BigCount {
    let (mut a, mut b) = (BigUint::zero(), BigUint::one());
    for _ in 0..n {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}

/// `|Q(P_n)| = F_{n+2}`.
pub fn cube_size_pn(n: u64) -> BigCount {
    fibonacci(n + 2)
}

/// `q_n^r = C(n - r + 1, r)`; zero outside `0..=ceil(n/2)`.
pub fn layer_size_pn(n: u64, r: i64) -> BigCount {
    binomial(n as i64 - r + 1, r)
}

/// All nonzero layer sizes `q_n^0, ..., q_n^{ceil(n/2)}`, computed by the
/// exact ratio `q^{r+1} (r+1)(n-r+1) = q^r (n-2r)(n-2r+1)`.
pub fn layer_sizes_pn(n: u64) -> Vec<BigCount> {
    let top = n.div_ceil(2);
    let mut out = Vec::with_capacity(top as usize + 1);
    let mut q = BigUint::one();
    out.push(q.clone());
    for r in 0..top {
        q *= (n - 2 * r) * (n - 2 * r + 1);
        q /= (r + 1) * (n - r + 1);
        out.push(q.clone());
    }
    out
}

/// `max_r q_n^r`.
pub fn max_layer_pn(n: u64) -> BigCount {
    layer_size_pn(n, r_star(n).low as i64)
}

/// `q_n^{r,d}`: elements of layer `r` with out-degree `d`.
///
/// Equals `C(r+1, d-n+3r) C(n-2r, n-2r-d)` except on the single-element
/// layer `r = (n+1)/2` (odd `n`), whose member `{1,3,...,n}` has out-degree
/// zero; the product form evaluates that layer to zero.
pub fn outdeg_count_pn(n: u64, r: i64, d: i64) -> BigCount {
    let n = n as i64;
    if r < 0 {
        return BigUint::zero();
    }
    if n - 2 * r + 1 == 0 {
        return if d == 0 { BigUint::one() } else { BigUint::zero() };
    }
    binomial(r + 1, d - n + 3 * r) * binomial(n - 2 * r, n - 2 * r - d)
}

/// Nonzero `(d, q_n^{r,d})` pairs in increasing `d`.
pub fn outdeg_histogram_pn(n: u64, r: i64) -> Vec<(u64, BigCount)> {
    let Some((lo, hi)) = outdeg_support(n, r) else {
        return Vec::new();
    };
    (lo..=hi)
        .map(|d| (d, outdeg_count_pn(n, r, d as i64)))
        .filter(|(_, c)| !c.is_zero())
        .collect()
}

/// Range of out-degrees present in layer `r`, if the layer is nonempty.
fn outdeg_support(n: u64, r: i64) -> Option<(u64, u64)> {
    let (n, rr) = (n as i64, r);
    if rr < 0 || rr > (n + 1) / 2 {
        return None;
    }
    if n - 2 * rr + 1 == 0 {
        return Some((0, 0));
    }
    Some(((n - 3 * rr).max(0) as u64, (n - 2 * rr) as u64))
}

/// One maximiser, or two consecutive tied maximisers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MaximizerSet {
    pub low: u64,
    pub high: u64,
}

impl MaximizerSet {
    fn single(v: u64) -> Self {
        MaximizerSet { low: v, high: v }
    }

    fn pair(v: u64) -> Self {
        MaximizerSet { low: v, high: v + 1 }
    }

    pub fn is_tie(&self) -> bool {
        self.high != self.low
    }

    pub fn contains(&self, v: u64) -> bool {
        (self.low..=self.high).contains(&v)
    }

    pub fn values(&self) -> Vec<u64> {
        (self.low..=self.high).collect()
    }

    pub fn midpoint(&self) -> f64 {
        (self.low + self.high) as f64 / 2.0
    }

    /// Distance from `v` to the nearest member.
    pub fn distance(&self, v: i64) -> u64 {
        if v < self.low as i64 {
            (self.low as i64 - v) as u64
        } else if v > self.high as i64 {
            (v - self.high as i64) as u64
        } else {
            0
        }
    }
}

/// Maximisers of `r -> q_n^r`.
///
/// `q^{r+1} >= q^r` iff `5r^2 - (5n+2)r + n^2 - 1 >= 0`; the quadratic
/// decreases up to its vertex, so the maximiser is its first negative point
/// `m`, tied with `m - 1` when the quadratic vanishes there.
pub fn r_star(n: u64) -> MaximizerSet {
    assert!(n >= 1, "r_star needs n >= 1");
    let n = n as i128;
    let h = |r: i128| 5 * r * r - (5 * n + 2) * r + n * n - 1;
    let vertex = (5 * n + 2) / 10;
    // First r in [0, vertex + 1] with h(r) < 0.
    let (mut lo, mut hi) = (0i128, vertex + 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if h(mid) < 0 {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    debug_assert!(h(lo) < 0);
    if lo > 0 && h(lo - 1) == 0 {
        MaximizerSet::pair(lo as u64 - 1)
    } else {
        MaximizerSet::single(lo as u64)
    }
}

/// Maximisers of `d -> q_n^{r,d}` for a nonempty layer `1 <= r <= ceil(n/2)`.
///
/// `q^{r,d+1} >= q^{r,d}` iff `d (n-r+3) <= (n-2r)^2 + 2n - 5r - 1`, with
/// equality giving a tie; the threshold is clamped to the support.
pub fn d_star(n: u64, r: i64) -> Result<MaximizerSet> {
    if r < 1 {
        return Err(Error::Precondition(format!("d_star needs r >= 1, got {r}")));
    }
    let (lo, hi) = outdeg_support(n, r)
        .ok_or_else(|| Error::Precondition(format!("layer {r} of Q(P_{n}) is empty")))?;
    if lo == hi {
        return Ok(MaximizerSet::single(lo));
    }
    let (n, r) = (n as i128, r as i128);
    let num = (n - 2 * r).pow(2) + 2 * n - 5 * r - 1;
    let den = n - r + 3;
    let floor = num.div_euclid(den);
    let exact = num.rem_euclid(den) == 0;
    let (lo, hi) = (lo as i128, hi as i128);
    let (first, last) = if exact { (floor, floor + 1) } else { (floor + 1, floor + 1) };
    let first = first.clamp(lo, hi);
    let last = last.clamp(lo, hi);
    Ok(MaximizerSet {
        low: first as u64,
        high: last as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn fibonacci_values() {
        assert_eq!(fibonacci(0), big(0));
        assert_eq!(fibonacci(1), big(1));
        assert_eq!(fibonacci(3), big(2));
        assert_eq!(fibonacci(12), big(144));
        assert_eq!(cube_size_pn(1), big(2));
        assert_eq!(cube_size_pn(2), big(3));
        assert_eq!(cube_size_pn(11), big(233));
    }

    #[test]
    fn layer_sizes() {
        assert_eq!(layer_size_pn(11, 3), big(84));
        assert_eq!(layer_size_pn(11, 4), big(70));
        assert_eq!(layer_size_pn(11, 3) + layer_size_pn(11, 4), big(154));
        assert_eq!(layer_size_pn(4, 2), big(3));
        assert_eq!(layer_size_pn(4, -1), big(0));
        assert_eq!(layer_size_pn(4, 3), big(0));
        assert_eq!(layer_size_pn(9, 5), big(1));
        for n in 1..=60 {
            let direct: Vec<_> = (0..=(n as i64 + 1) / 2).map(|r| layer_size_pn(n, r)).collect();
            assert_eq!(layer_sizes_pn(n), direct, "n={n}");
            assert_eq!(direct.into_iter().sum::<BigUint>(), cube_size_pn(n));
        }
    }

    #[test]
    fn out_degree_counts() {
        assert_eq!(outdeg_count_pn(5, 1, 2), big(3));
        assert_eq!(outdeg_count_pn(5, 1, 3), big(2));
        assert_eq!(outdeg_count_pn(5, 1, 1), big(0));
        assert_eq!(outdeg_count_pn(5, 3, 0), big(1));
        for n in 1..=20u64 {
            for r in 0..=(n as i64 + 1) / 2 {
                let total: BigUint = (-2..=n as i64 + 2).map(|d| outdeg_count_pn(n, r, d)).sum();
                assert_eq!(total, layer_size_pn(n, r), "n={n} r={r}");
                let hist: BigUint = outdeg_histogram_pn(n, r).into_iter().map(|(_, c)| c).sum();
                assert_eq!(hist, layer_size_pn(n, r));
            }
        }
    }

    #[test]
    fn out_degree_support_for_r_at_least_one() {
        for n in 2..=40u64 {
            for r in 1..=(n as i64) / 2 {
                for d in 0..=n as i64 {
                    let inside = n as i64 - 3 * r <= d && d <= n as i64 - 2 * r;
                    assert_eq!(!outdeg_count_pn(n, r, d).is_zero(), inside, "n={n} r={r} d={d}");
                }
            }
        }
    }

    #[test]
    fn r_star_values() {
        assert_eq!(r_star(11), MaximizerSet::single(3));
        assert_eq!(r_star(1), MaximizerSet::pair(0));
        assert_eq!(r_star(8), MaximizerSet::single(2));
        let m = r_star(500);
        assert!(!m.is_tie());
        assert!(m.distance(138) <= 2);
    }

    #[test]
    fn d_star_values() {
        assert_eq!(d_star(5, 1).unwrap(), MaximizerSet::single(2));
        assert!(matches!(d_star(5, 0), Err(Error::Precondition(_))));
        assert!(d_star(5, 4).is_err());
        assert_eq!(d_star(5, 3).unwrap(), MaximizerSet::single(0));
    }

    #[test]
    fn maximizers_match_direct_scan() {
        fn argmax(vals: &[(u64, BigUint)]) -> MaximizerSet {
            let best = vals.iter().map(|(_, v)| v).max().unwrap();
            let at: Vec<u64> = vals.iter().filter(|(_, v)| v == best).map(|(k, _)| *k).collect();
            MaximizerSet { low: at[0], high: *at.last().unwrap() }
        }
        for n in 1..=200u64 {
            let layers: Vec<_> = layer_sizes_pn(n).into_iter().enumerate().map(|(r, q)| (r as u64, q)).collect();
            assert_eq!(r_star(n), argmax(&layers), "n={n}");
            for r in 1..=(n as i64 + 1) / 2 {
                assert_eq!(d_star(n, r).unwrap(), argmax(&outdeg_histogram_pn(n, r)), "n={n} r={r}");
            }
        }
    }

    #[test]
    fn unimodal_in_out_degree() {
        for n in [30u64, 77, 150] {
            for r in 1..=(n as i64 + 1) / 2 {
                let m = d_star(n, r).unwrap();
                let hist = outdeg_histogram_pn(n, r);
                for w in hist.windows(2) {
                    let ((d0, a), (_, b)) = (&w[0], &w[1]);
                    if *d0 < m.low {
                        assert!(a < b, "n={n} r={r} d={d0}");
                    } else if *d0 >= m.high {
                        assert!(a > b, "n={n} r={r} d={d0}");
                    }
                }
            }
        }
    }
}
