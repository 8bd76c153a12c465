//! Entropy exponents and Stirling-scale approximations of `q_n^r` and
//! `q_n^{r,d}`.
//!
//! The approximations are returned both as logarithms and as plain doubles;
//! the latter overflow once `n F(alpha)` passes about 709.

use std::f64::consts::PI;

use serde::Serialize;

use super::exact::{d_star, layer_size_pn, outdeg_count_pn, r_star};
use crate::bigreal;
use crate::error::{Error, Result};

/// Limit of `r_star(n) / n`: `(5 - sqrt 5) / 10`.
pub const R_STAR_SLOPE: f64 = 0.276_393_202_250_021;

/// Margin keeping arguments away from the boundary of the open domains.
const MARGIN: f64 = 1e-9;

/// Value and first two derivatives of an entropy exponent. For the
/// two-variable function the derivatives are taken in `y` at fixed `x`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EntropyPoint {
    pub x: f64,
    pub y: Option<f64>,
    pub value: f64,
    pub first: f64,
    pub second: f64,
}

fn xlogx(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

fn domain(what: &'static str, detail: String) -> Error {
    Error::Domain { what, detail }
}

/// `F(x) = (1-x) ln(1-x) - x ln x - (1-2x) ln(1-2x)` on `(0, 1/2)`.
pub fn entropy_f(x: f64) -> Result<EntropyPoint> {
    if !(x > 0.0 && x < 0.5) {
        return Err(domain("entropy_F", format!("x = {x} not in (0, 1/2)")));
    }
    Ok(EntropyPoint {
        x,
        y: None,
        value: xlogx(1.0 - x) - xlogx(x) - xlogx(1.0 - 2.0 * x),
        first: ((1.0 - 2.0 * x).powi(2) / (x * (1.0 - x))).ln(),
        second: -4.0 / (1.0 - 2.0 * x) - 1.0 / x + 1.0 / (1.0 - x),
    })
}

fn check_g_domain(x: f64, y: f64) -> Result<()> {
    let ok = y > MARGIN && y < x - MARGIN && x < (1.0 + y - MARGIN) / 3.0;
    if ok {
        Ok(())
    } else {
        Err(domain(
            "entropy_G",
            format!("(x, y) = ({x}, {y}) violates 1e-9 < y < x - 1e-9, x < (1 + y - 1e-9)/3"),
        ))
    }
}

/// The out-degree exponent
/// `G(x,y) = 2x ln x + 2(1-2x) ln(1-2x) - y ln y - 2(x-y) ln(x-y) - (1-x) ln(1-x) - (1-3x+y) ln(1-3x+y)`.
pub fn entropy_g(x: f64, y: f64) -> Result<EntropyPoint> {
    check_g_domain(x, y)?;
    let w = 1.0 - 3.0 * x + y;
    let value = 2.0 * xlogx(x) + 2.0 * xlogx(1.0 - 2.0 * x)
        - xlogx(y)
        - 2.0 * xlogx(x - y)
        - xlogx(1.0 - x)
        - xlogx(w);
    Ok(EntropyPoint {
        x,
        y: Some(y),
        value,
        first: ((x - y).powi(2) / (y * w)).ln(),
        second: -2.0 / (x - y) - 1.0 / y - 1.0 / w,
    })
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > MARGIN && alpha < 0.5 - MARGIN {
        Ok(())
    } else {
        Err(domain("layer_size_stirling", format!("alpha = {alpha} not in (1e-9, 1/2 - 1e-9)")))
    }
}

/// `ln` of `P(alpha) n^{-1/2} exp(n F(alpha))` with
/// `P = (1-alpha)^{3/2} / (sqrt(2 pi alpha (1-2alpha)) (1-2alpha))`.
pub fn layer_size_stirling_ln(n: u64, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let a = alpha;
    let pre = (1.0 - a) * (1.0 - a).sqrt() / ((2.0 * PI * a * (1.0 - 2.0 * a)).sqrt() * (1.0 - 2.0 * a));
    let n = n as f64;
    Ok(pre.ln() - 0.5 * n.ln() + n * entropy_f(a)?.value)
}

/// Stirling approximation of `q_n^{alpha n}`; relative error `O(1/n)`.
pub fn layer_size_stirling(n: u64, alpha: f64) -> Result<f64> {
    layer_size_stirling_ln(n, alpha).map(f64::exp)
}

/// `ln` of the Stirling approximation of `q_n^{alpha n, (1 - 3 alpha + beta) n}`:
/// `alpha sqrt(alpha (1-2alpha)) / (2 pi (alpha-beta)^2 sqrt(beta (1-3alpha+beta))) n^{-1} exp(n (G + F))`.
///
/// The exponent is `G(alpha, beta) + F(alpha)`: `G` alone is the exponent of
/// the share `q^{r,d} / q^r`, which is what governs decay in `d`.
pub fn outdeg_stirling_ln(n: u64, alpha: f64, beta: f64) -> Result<f64> {
    check_g_domain(alpha, beta)?;
    let (a, b) = (alpha, beta);
    let w = 1.0 - 3.0 * a + b;
    let pre = a * (a * (1.0 - 2.0 * a)).sqrt() / (2.0 * PI * (a - b).powi(2) * (b * w).sqrt());
    let nf = n as f64;
    Ok(pre.ln() - nf.ln() + nf * (entropy_g(a, b)?.value + entropy_f(a)?.value))
}

pub fn outdeg_stirling(n: u64, alpha: f64, beta: f64) -> Result<f64> {
    outdeg_stirling_ln(n, alpha, beta).map(f64::exp)
}

/// Main terms of `d_star(n, r_star + c sqrt n)`:
/// `R n - (5 sqrt 5 - 7)/2 c sqrt n + (10 - 2 sqrt 5) c^2`.
pub fn d_star_expansion(n: u64, c: f64) -> Result<f64> {
    let nf = n as f64;
    if n < 2 || c.abs() > nf.ln().sqrt() {
        return Err(domain("d_star_expansion", format!("|c| = {} exceeds sqrt(ln {n})", c.abs())));
    }
    let s5 = 5f64.sqrt();
    Ok(R_STAR_SLOPE * nf - (5.0 * s5 - 7.0) / 2.0 * c * nf.sqrt() + (10.0 - 2.0 * s5) * c * c)
}

/// `q_n^{r, d_star} sqrt(n) / q_n^r` for `|r - r_star| <= sqrt(n ln n)`.
pub fn qrdstar_ratio(n: u64, r: i64) -> Result<f64> {
    let window = ((n as f64) * (n as f64).ln()).sqrt();
    let dist = r_star(n).distance(r);
    if r < 1 || dist as f64 > window {
        return Err(domain("qrdstar_ratio", format!("r = {r} is {dist} from r_star, window {window:.3}")));
    }
    let d = d_star(n, r)?.low as i64;
    let share = bigreal::ratio(&outdeg_count_pn(n, r, d), &layer_size_pn(n, r));
    Ok(share * (n as f64).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::exact::layer_sizes_pn;

    const S5: f64 = 2.236_067_977_499_79;

    #[test]
    fn slope_constant() {
        assert!((R_STAR_SLOPE - (5.0 - S5) / 10.0).abs() < 1e-15);
    }

    #[test]
    fn f_stationary_point() {
        let p = entropy_f(R_STAR_SLOPE).unwrap();
        assert!(p.first.abs() < 1e-12);
        assert!((p.second + 5.0 * S5).abs() < 1e-9);
        assert!(entropy_f(0.1).unwrap().first > 0.0);
        assert!(entropy_f(0.4).unwrap().first < 0.0);
        assert!(entropy_f(0.0).is_err());
        assert!(entropy_f(0.5).is_err());
    }

    #[test]
    fn f_derivatives_match_finite_differences() {
        let h = 1e-5;
        for x in [0.05, 0.2, 0.3, 0.45] {
            let p = entropy_f(x).unwrap();
            let v = |t: f64| entropy_f(t).unwrap().value;
            let d1 = (v(x + h) - v(x - h)) / (2.0 * h);
            let d2 = (v(x + h) - 2.0 * v(x) + v(x - h)) / (h * h);
            assert!((p.first - d1).abs() < 1e-7, "x={x}");
            assert!((p.second - d2).abs() < 1e-3 * p.second.abs().max(1.0), "x={x}");
        }
    }

    #[test]
    fn g_stationary_point() {
        for a in [0.2, R_STAR_SLOPE, 0.3] {
            let b = a * a / (1.0 - a);
            let p = entropy_g(a, b).unwrap();
            assert!(p.first.abs() < 1e-12);
            let expect = -(1.0 - a).powi(3) / (a * a * (1.0 - 2.0 * a).powi(2));
            assert!((p.second - expect).abs() < 1e-9 * expect.abs());
        }
        let p = entropy_g(R_STAR_SLOPE, R_STAR_SLOPE.powi(2) / (1.0 - R_STAR_SLOPE)).unwrap();
        assert!((p.second.abs() - (25.0 + 11.0 * S5) / 2.0).abs() < 1e-9);
    }

    #[test]
    fn g_derivatives_match_finite_differences() {
        let h = 1e-5;
        for (x, y) in [(0.3, 0.15), (0.25, 0.05), (0.2, 0.1)] {
            let p = entropy_g(x, y).unwrap();
            let v = |t: f64| entropy_g(x, t).unwrap().value;
            let d1 = (v(y + h) - v(y - h)) / (2.0 * h);
            let d2 = (v(y + h) - 2.0 * v(y) + v(y - h)) / (h * h);
            assert!((p.first - d1).abs() < 1e-7);
            assert!((p.second - d2).abs() < 1e-3 * p.second.abs());
        }
    }

    #[test]
    fn domain_guards() {
        assert!(outdeg_stirling_ln(240, 0.3, 0.29).is_ok());
        assert!(outdeg_stirling_ln(240, 0.3, 0.3).is_err());
        assert!(outdeg_stirling_ln(240, 0.3, 0.0).is_err());
        assert!(entropy_g(0.45, 0.2).is_err());
        assert!(layer_size_stirling(100, 0.5).is_err());
        assert!(layer_size_stirling(100, 0.0).is_err());
    }

    #[test]
    fn stirling_maximised_near_r_star() {
        let n = 1000;
        let best = (1..n / 2)
            .max_by(|&a, &b| {
                let fa = layer_size_stirling_ln(n, a as f64 / n as f64).unwrap();
                let fb = layer_size_stirling_ln(n, b as f64 / n as f64).unwrap();
                fa.total_cmp(&fb)
            })
            .unwrap();
        assert!(r_star(n).distance(best as i64) <= 1);
    }

    #[test]
    fn outdeg_stirling_maximised_at_beta_star() {
        let n = 1000u64;
        let alpha = 0.3;
        let beta_star = alpha * alpha / (1.0 - alpha);
        let best = (40..=290)
            .map(|k| k as f64 / n as f64)
            .max_by(|a, b| {
                let fa = outdeg_stirling_ln(n, alpha, *a).unwrap();
                let fb = outdeg_stirling_ln(n, alpha, *b).unwrap();
                fa.total_cmp(&fb)
            })
            .unwrap();
        assert!((best - beta_star).abs() <= 1.5 / n as f64, "best={best} star={beta_star}");
    }

    #[test]
    fn expansion_terms() {
        let e0 = d_star_expansion(10_000, 0.0).unwrap();
        assert!((e0 - R_STAR_SLOPE * 1e4).abs() < 1e-9);
        assert!(d_star_expansion(10_000, 1.0).unwrap() < d_star_expansion(10_000, 0.5).unwrap());
        assert!(d_star_expansion(10_000, 4.0).is_err());
    }

    #[test]
    fn expansion_tracks_exact_d_star() {
        let n = 10_000u64;
        let r = r_star(n).low as i64;
        let d = d_star(n, r).unwrap();
        assert!((d.midpoint() - d_star_expansion(n, 0.0).unwrap()).abs() <= 50.0);
    }

    #[test]
    fn qrdstar_bracket() {
        let r = r_star(100).low as i64;
        let v = qrdstar_ratio(100, r).unwrap();
        assert!(v > 0.1 && v < 10.0, "{v}");
        assert!(qrdstar_ratio(100, r + 100).is_err());
        let a = qrdstar_ratio(2000, r_star(2000).low as i64).unwrap();
        let b = qrdstar_ratio(4000, r_star(4000).low as i64).unwrap();
        assert!((a - b).abs() / a < 0.2);
    }

    #[test]
    fn layer_stirling_relative_error_is_order_one_over_n() {
        let rel = |n: u64, alpha: f64| {
            let r = (alpha * n as f64).round() as usize;
            let exact = bigreal::ln(&layer_sizes_pn(n)[r]);
            (layer_size_stirling_ln(n, alpha).unwrap() - exact).exp_m1().abs()
        };
        let e500 = rel(500, 0.25);
        let e1000 = rel(1000, 0.25);
        let halving = e1000 / e500;
        assert!((halving - 0.5).abs() <= 0.125, "{halving}");
    }
}
