//! Gaussian-type sums and their closed-form bounds.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};

/// Dropped tails are kept below this absolute size.
const TAIL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GaussianSum {
    pub lower: f64,
    pub upper: f64,
    pub partial_sum: f64,
}

impl GaussianSum {
    pub fn holds(&self) -> bool {
        self.lower <= self.partial_sum && self.partial_sum <= self.upper
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QuadSum {
    pub bound: f64,
    pub sum: f64,
}

/// Sums `exp(-a2 k^2)` for `k = k0, k0 + 1, ...` after shifting by `offset`,
/// i.e. terms `exp(-a2 (k + offset)^2)` with `k + offset >= 0`.
fn one_sided(a2: f64, offset: f64) -> f64 {
    let mut sum = 0.0;
    let mut k = 0u64;
    loop {
        let x = k as f64 + offset;
        let term = (-a2 * x * x).exp();
        sum += term;
        // every later term shrinks by at least this factor
        let ratio = (-a2 * (2.0 * x + 3.0)).exp();
        let next = (-a2 * (x + 1.0) * (x + 1.0)).exp();
        if ratio < 1.0 && next / (1.0 - ratio) < TAIL {
            return sum;
        }
        k += 1;
    }
}

/// Bracket `sqrt(pi/4a) e^{-a} <= sum_{i>=1} e^{-a i^2} <= sqrt(pi/2a)`.
pub fn gaussian_sum_bounds(a: f64) -> Result<GaussianSum> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::InvalidArgument(format!("gaussian sum needs a > 0, got {a}")));
    }
    Ok(GaussianSum {
        lower: (PI / (4.0 * a)).sqrt() * (-a).exp(),
        upper: (PI / (2.0 * a)).sqrt(),
        partial_sum: one_sided(a, 1.0),
    })
}

/// For `g(x) = a2 x^2 + a1 x + a0`, the sum of `e^{-g(i)}` over all integers
/// and the bound `exp(a1^2/(4 a2) - a0) (3 + 2 sqrt(pi/2a2))`.
pub fn quad_exp_sum_bound(a0: f64, a1: f64, a2: f64) -> Result<QuadSum> {
    if !(a2 > 0.0 && a2.is_finite()) || !a0.is_finite() || !a1.is_finite() {
        return Err(Error::InvalidArgument(format!("quadratic sum needs a2 > 0, got {a2}")));
    }
    let m = -a1 / (2.0 * a2);
    let shift = a1 * a1 / (4.0 * a2) - a0;
    let up = m.ceil();
    // integers >= ceil(m) and <= ceil(m) - 1, each measured from the vertex
    let sum = (one_sided(a2, up - m) + one_sided(a2, m - (up - 1.0))) * shift.exp();
    Ok(QuadSum {
        bound: shift.exp() * (1.0 + 2.0 * (PI / (2.0 * a2)).sqrt() + 2.0),
        sum,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn direct(a: f64) -> f64 {
        (1..10_000).map(|i| (-a * (i * i) as f64).exp()).sum()
    }

    #[test]
    fn unit_values() {
        let s = gaussian_sum_bounds(1.0).unwrap();
        assert!((s.lower - 0.3261).abs() < 1e-4);
        assert!((s.partial_sum - 0.3863).abs() < 1e-4);
        assert!((s.upper - 1.2533).abs() < 1e-4);
        assert!(s.holds());
        assert!(gaussian_sum_bounds(10.0).unwrap().holds());
        assert!(gaussian_sum_bounds(0.0).is_err());
        assert!(gaussian_sum_bounds(-1.0).is_err());
    }

    #[test]
    fn partial_sum_matches_direct_summation() {
        for a in [0.01, 0.1, 0.7, 3.0, 40.0] {
            let s = gaussian_sum_bounds(a).unwrap();
            assert!((s.partial_sum - direct(a)).abs() < 1e-10, "a={a}");
        }
    }

    #[test]
    fn large_a_is_first_term() {
        let s = gaussian_sum_bounds(30.0).unwrap();
        assert!((s.partial_sum / (-30f64).exp() - 1.0).abs() < 1e-12);
        assert!(s.partial_sum >= s.lower);
    }

    #[test]
    fn quadratic_examples() {
        let q = quad_exp_sum_bound(0.0, 0.0, 1.0).unwrap();
        assert!((q.sum - 1.7726).abs() < 1e-4);
        assert!(q.sum <= q.bound);
        let shifted = quad_exp_sum_bound(5.0, 0.0, 1.0).unwrap();
        assert!((shifted.sum - q.sum * (-5f64).exp()).abs() < 1e-12);
        let off = quad_exp_sum_bound(0.75, -3.0, 3.0).unwrap();
        let brute: f64 = (-50..50).map(|i| (-3.0 * (i as f64 - 0.5).powi(2)).exp()).sum();
        assert!((off.sum - brute).abs() < 1e-12);
        assert!(off.sum <= off.bound);
        assert!(quad_exp_sum_bound(0.0, 0.0, 0.0).is_err());
    }
}
