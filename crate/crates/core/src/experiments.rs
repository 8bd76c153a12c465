//! Batch audits: conjecture instances, decay and Stirling audits, tail
//! masses, and random-graph studies.
//!
//! Every function is deterministic in its arguments. Rows come out sorted by
//! their key, and CSV output carries no timing unless asked for, so reruns
//! are byte-identical.

use std::fmt::Write as _;
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::bigreal;
use crate::cube::layer_counts;
use crate::error::{Error, Result};
use crate::formulas::{binomial, d_star, layer_size_pn, layer_size_stirling_ln, outdeg_count_pn, outdeg_stirling_ln, r_star};
use crate::graph::Graph;
use crate::width::{max_antichain_band, max_antichain_cube, serialize_count, WidthReport};
use crate::BigCount;

/// `x` with 12 significant digits, in the style of C's `%.12g`.
pub fn format_real(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    let trim = |s: String| {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    };
    // rounding can bump the exponent, so format in scientific first
    let sci = format!("{:.11e}", x);
    let (mantissa, e) = sci.split_once('e').unwrap();
    let e: i32 = e.parse().unwrap();
    let exp = exp.max(e);
    if (-5..12).contains(&exp) {
        trim(format!("{:.*}", (11 - exp).max(0) as usize, x))
    } else {
        format!("{}e{}{:02}", trim(mantissa.to_string()), if e < 0 { '-' } else { '+' }, e.abs())
    }
}

/// A record with a fixed CSV layout.
pub trait CsvRow {
    fn header() -> Vec<&'static str>;
    fn fields(&self) -> Vec<String>;
}

/// Header line plus one line per row.
pub fn to_csv<R: CsvRow>(rows: &[R]) -> String {
    let mut out = R::header().join(",");
    out.push('\n');
    for r in rows {
        out.push_str(&r.fields().join(","));
        out.push('\n');
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConjectureRow {
    pub n: usize,
    #[serde(serialize_with = "serialize_count")]
    pub width: BigCount,
    #[serde(serialize_with = "serialize_count")]
    pub max_layer: BigCount,
    pub ratio: f64,
    pub certificate_ok: bool,
    /// Wall-clock time of the solve; left out of CSV.
    #[serde(skip)]
    pub runtime_ms: u64,
}

impl CsvRow for ConjectureRow {
    fn header() -> Vec<&'static str> {
        vec!["n", "width", "max_layer", "ratio", "certificate_ok"]
    }

    fn fields(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.width.to_string(),
            self.max_layer.to_string(),
            format_real(self.ratio),
            self.certificate_ok.to_string(),
        ]
    }
}

fn conjecture_row(n: usize, g: &Graph) -> Result<ConjectureRow> {
    let start = Instant::now();
    let r = max_antichain_cube(g)?;
    Ok(ConjectureRow {
        n,
        width: r.width,
        max_layer: r.max_layer,
        ratio: r.ratio,
        certificate_ok: r.certificate_ok,
        runtime_ms: start.elapsed().as_millis() as u64,
    })
}

/// Width against the largest layer for `P_1, ..., P_{n_max}`.
pub fn conjecture_check_pn(n_max: usize) -> Result<Vec<ConjectureRow>> {
    (1..=n_max).map(|n| conjecture_row(n, &Graph::path(n)?)).collect()
}

/// Width against the largest layer for `C_3, ..., C_{n_max}`.
pub fn conjecture_check_cn(n_max: usize) -> Result<Vec<ConjectureRow>> {
    (3..=n_max).map(|n| conjecture_row(n, &Graph::cycle(n)?)).collect()
}

/// Both solves for `P_11`: layers 3 and 4 only, and the whole cube.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OpenCase {
    pub band: WidthReport,
    pub full: WidthReport,
    pub widths_equal: bool,
}

pub fn open_case_n11() -> Result<OpenCase> {
    let g = Graph::path(11)?;
    let band = max_antichain_band(&g, 3, 4)?;
    let full = max_antichain_cube(&g)?;
    let widths_equal = band.width == full.width;
    Ok(OpenCase { band, full, widths_equal })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GnpTrialRow {
    pub n: usize,
    pub p: f64,
    pub seed: u64,
    #[serde(serialize_with = "serialize_count")]
    pub width: BigCount,
    #[serde(serialize_with = "serialize_count")]
    pub max_layer: BigCount,
    pub ratio: f64,
    pub certificate_ok: bool,
    pub layer_counts: Vec<u64>,
    pub expected_counts: Vec<f64>,
}

impl CsvRow for GnpTrialRow {
    fn header() -> Vec<&'static str> {
        vec!["n", "p", "seed", "width", "max_layer", "ratio", "certificate_ok", "layer_counts", "expected_counts"]
    }

    fn fields(&self) -> Vec<String> {
        let join = |v: Vec<String>| v.join(";");
        vec![
            self.n.to_string(),
            format_real(self.p),
            self.seed.to_string(),
            self.width.to_string(),
            self.max_layer.to_string(),
            format_real(self.ratio),
            self.certificate_ok.to_string(),
            join(self.layer_counts.iter().map(|c| c.to_string()).collect()),
            join(self.expected_counts.iter().map(|&x| format_real(x)).collect()),
        ]
    }
}

/// `E |Q^(r)(G_{n,p})| = C(n,r) (1-p)^{C(r,2)}` for `r = 0..=n`.
pub fn gnp_expected_counts(n: usize, p: f64) -> Vec<f64> {
    (0..=n)
        .map(|r| {
            let c = binomial(n as i64, r as i64).to_f64().unwrap_or(f64::INFINITY);
            c * (1.0 - p).powf((r * r.saturating_sub(1) / 2) as f64)
        })
        .collect()
}

fn gnp_p(n: usize, c: f64) -> Result<f64> {
    let p = c / n as f64;
    if n == 0 || !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!("p = c/n = {c}/{n} is not a probability")));
    }
    Ok(p)
}

fn counts_u64(g: &Graph) -> Vec<u64> {
    layer_counts(g).iter().map(|c| c.to_u64().expect("layer count fits u64")).collect()
}

/// One row per seed for `G_{n, c/n}`, in the order of `seeds`. Trials run in
/// parallel.
pub fn gnp_experiment(n: usize, c: f64, seeds: &[u64]) -> Result<Vec<GnpTrialRow>> {
    let p = gnp_p(n, c)?;
    let expected = gnp_expected_counts(n, p);
    seeds
        .par_iter()
        .map(|&seed| {
            let g = Graph::erdos_renyi(n, p, seed)?;
            let r = max_antichain_cube(&g)?;
            Ok(GnpTrialRow {
                n,
                p,
                seed,
                width: r.width,
                max_layer: r.max_layer,
                ratio: r.ratio,
                certificate_ok: r.certificate_ok,
                layer_counts: counts_u64(&g),
                expected_counts: expected.clone(),
            })
        })
        .collect()
}

/// Empirical mean of one layer count against its expectation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LayerMean {
    pub r: usize,
    pub mean: f64,
    pub std_error: f64,
    pub expected: f64,
    /// `(mean - expected) / std_error`; zero when both vanish.
    pub z: f64,
}

impl CsvRow for LayerMean {
    fn header() -> Vec<&'static str> {
        vec!["r", "mean", "std_error", "expected", "z"]
    }

    fn fields(&self) -> Vec<String> {
        [self.mean, self.std_error, self.expected, self.z]
            .iter()
            .fold(vec![self.r.to_string()], |mut v, &x| {
                v.push(format_real(x));
                v
            })
    }
}

fn layer_means(n: usize, samples: &[Vec<u64>], expected: &[f64]) -> Vec<LayerMean> {
    let k = samples.len() as f64;
    (0..=n)
        .map(|r| {
            let xs = samples.iter().map(|c| c.get(r).copied().unwrap_or(0) as f64);
            let mean = xs.clone().sum::<f64>() / k;
            let var = if k > 1.0 { xs.map(|x| (x - mean).powi(2)).sum::<f64>() / (k - 1.0) } else { 0.0 };
            let std_error = (var / k).sqrt();
            let diff = mean - expected[r];
            let z = if diff == 0.0 { 0.0 } else { diff / std_error };
            LayerMean {
                r,
                mean,
                std_error,
                expected: expected[r],
                z,
            }
        })
        .collect()
}

/// Per-layer summary of [`gnp_experiment`] rows.
pub fn gnp_summary(rows: &[GnpTrialRow]) -> Vec<LayerMean> {
    let Some(first) = rows.first() else {
        return Vec::new();
    };
    let samples: Vec<Vec<u64>> = rows.iter().map(|r| r.layer_counts.clone()).collect();
    layer_means(first.n, &samples, &first.expected_counts)
}

/// Layer-count means only, for large seed sets where widths are not needed.
pub fn gnp_layer_means(n: usize, c: f64, seeds: &[u64]) -> Result<Vec<LayerMean>> {
    let p = gnp_p(n, c)?;
    let samples: Vec<Vec<u64>> = seeds
        .par_iter()
        .map(|&seed| Graph::erdos_renyi(n, p, seed).map(|g| counts_u64(&g)))
        .collect::<Result<_>>()?;
    Ok(layer_means(n, &samples, &gnp_expected_counts(n, p)))
}

/// Offsets `c` used by the decay audits.
pub const DECAY_GRID: [f64; 4] = [0.0, 0.5, 1.0, 1.5];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecayRow {
    pub n: u64,
    pub c: f64,
    /// The shifted layer (layer audit) or out-degree (out-degree audit).
    pub r_or_d: u64,
    /// `ln` of the peak count over the shifted count.
    pub exact: f64,
    /// The stated quadratic.
    pub approx: f64,
    pub rel_error: f64,
    /// Quadratic with the curvature of the entropy exponent at its peak;
    /// present on out-degree rows only.
    pub curvature: Option<f64>,
}

impl CsvRow for DecayRow {
    fn header() -> Vec<&'static str> {
        vec!["n", "c", "r_or_d", "exact", "approx", "rel_error", "curvature"]
    }

    fn fields(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            format_real(self.c),
            self.r_or_d.to_string(),
            format_real(self.exact),
            format_real(self.approx),
            format_real(self.rel_error),
            self.curvature.map(format_real).unwrap_or_default(),
        ]
    }
}

fn rel(exact: f64, approx: f64) -> f64 {
    if approx == 0.0 {
        exact.abs()
    } else {
        (exact - approx).abs() / approx.abs()
    }
}

fn sqrt5() -> f64 {
    5f64.sqrt()
}

/// `ln(q^{r*} / q^{r* + floor(c sqrt n)})` against `5 sqrt5 c^2 / 2`.
pub fn decay_audit_layers(n: u64, grid: &[f64]) -> Result<Vec<DecayRow>> {
    let rs = r_star(n).low as i64;
    let peak = layer_size_pn(n, rs);
    grid.iter()
        .map(|&c| {
            let r = rs + (c * (n as f64).sqrt()).floor() as i64;
            let q = layer_size_pn(n, r);
            if c < 0.0 || q.is_zero() {
                return Err(Error::Domain {
                    what: "decay_audit_layers",
                    detail: format!("layer {r} is empty for n = {n}"),
                });
            }
            let exact = bigreal::ratio(&peak, &q).ln();
            let approx = 5.0 * sqrt5() * c * c / 2.0;
            Ok(DecayRow {
                n,
                c,
                r_or_d: r as u64,
                exact,
                approx,
                rel_error: rel(exact, approx),
                curvature: None,
            })
        })
        .collect()
}

/// `ln(q^{r,d*} / q^{r,d* + floor(c sqrt n)})` against `(25 + 11 sqrt5) c^2 / 8`,
/// with `(25 + 11 sqrt5) c^2 / 4` alongside.
pub fn decay_audit_outdeg(n: u64, r: i64, grid: &[f64]) -> Result<Vec<DecayRow>> {
    let ds = d_star(n, r)?.low as i64;
    let peak = outdeg_count_pn(n, r, ds);
    grid.iter()
        .map(|&c| {
            let d = ds + (c * (n as f64).sqrt()).floor() as i64;
            let q = outdeg_count_pn(n, r, d);
            if c < 0.0 || q.is_zero() {
                return Err(Error::Domain {
                    what: "decay_audit_outdeg",
                    detail: format!("out-degree {d} is absent from layer {r} for n = {n}"),
                });
            }
            let exact = bigreal::ratio(&peak, &q).ln();
            let k = (25.0 + 11.0 * sqrt5()) * c * c;
            Ok(DecayRow {
                n,
                c,
                r_or_d: d as u64,
                exact,
                approx: k / 8.0,
                rel_error: rel(exact, k / 8.0),
                curvature: Some(k / 4.0),
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StirlingRow {
    pub n: u64,
    pub alpha: f64,
    pub beta: Option<f64>,
    pub r: u64,
    pub d: Option<u64>,
    pub exact_ln: f64,
    pub approx_ln: f64,
    /// `approx / exact - 1`.
    pub rel_error: f64,
}

impl CsvRow for StirlingRow {
    fn header() -> Vec<&'static str> {
        vec!["n", "alpha", "beta", "r", "d", "exact_ln", "approx_ln", "rel_error"]
    }

    fn fields(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            format_real(self.alpha),
            self.beta.map(format_real).unwrap_or_default(),
            self.r.to_string(),
            self.d.map(|d| d.to_string()).unwrap_or_default(),
            format_real(self.exact_ln),
            format_real(self.approx_ln),
            format_real(self.rel_error),
        ]
    }
}

fn grid_point(n: u64, x: f64, what: &'static str) -> Result<u64> {
    let v = x * n as f64;
    let k = v.round();
    if (v - k).abs() > 1e-6 {
        return Err(Error::Domain {
            what,
            detail: format!("{x} * {n} is not an integer"),
        });
    }
    Ok(k as u64)
}

/// Layer approximation against the exact `q_n^{alpha n}`.
pub fn stirling_audit_layer(n: u64, alpha: f64) -> Result<StirlingRow> {
    let r = grid_point(n, alpha, "stirling_audit_layer")?;
    let approx_ln = layer_size_stirling_ln(n, alpha)?;
    let exact_ln = bigreal::ln(&layer_size_pn(n, r as i64));
    Ok(StirlingRow {
        n,
        alpha,
        beta: None,
        r,
        d: None,
        exact_ln,
        approx_ln,
        rel_error: (approx_ln - exact_ln).exp_m1(),
    })
}

/// Out-degree approximation against the exact `q_n^{alpha n, (1 - 3 alpha + beta) n}`.
pub fn stirling_audit_outdeg(n: u64, alpha: f64, beta: f64) -> Result<StirlingRow> {
    let r = grid_point(n, alpha, "stirling_audit_outdeg")?;
    let b = grid_point(n, beta, "stirling_audit_outdeg")?;
    let d = n + b - 3 * r;
    let approx_ln = outdeg_stirling_ln(n, alpha, beta)?;
    let exact_ln = bigreal::ln(&outdeg_count_pn(n, r as i64, d as i64));
    Ok(StirlingRow {
        n,
        alpha,
        beta: Some(beta),
        r,
        d: Some(d),
        exact_ln,
        approx_ln,
        rel_error: (approx_ln - exact_ln).exp_m1(),
    })
}

/// Mass of the layers far from the peak, relative to the peak.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TailRow {
    pub n: u64,
    /// `sqrt(n ln n)`.
    pub window: f64,
    /// `sum of q^r over |r - r*| > window`, divided by `q^{r*}`.
    pub tail_ratio: f64,
}

impl CsvRow for TailRow {
    fn header() -> Vec<&'static str> {
        vec!["n", "window", "tail_ratio"]
    }

    fn fields(&self) -> Vec<String> {
        vec![self.n.to_string(), format_real(self.window), format_real(self.tail_ratio)]
    }
}

/// Streams the layer sizes through their exact ratio, so that memory stays
/// at a few big integers even for `n = 10^5`.
pub fn tail_mass(n: u64) -> Result<TailRow> {
    if n == 0 {
        return Err(Error::InvalidArgument("tail mass needs n >= 1".into()));
    }
    let star = r_star(n);
    let window = ((n as f64) * (n as f64).ln()).sqrt();
    let mut q = BigUint::from(1u32);
    let mut tail = BigUint::zero();
    let mut peak = BigUint::zero();
    for r in 0..=n.div_ceil(2) {
        if r > 0 {
            let k = r - 1;
            q *= (n - 2 * k) * (n - 2 * k + 1);
            q /= (k + 1) * (n - k + 1);
        }
        if star.low == r {
            peak = q.clone();
        }
        if star.distance(r as i64) as f64 > window {
            tail += &q;
        }
    }
    Ok(TailRow {
        n,
        window,
        tail_ratio: bigreal::ratio(&tail, &peak),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TailReport {
    pub rows: Vec<TailRow>,
    /// The ratio at `4n` is below the ratio at `n` along the grid.
    pub shrinking: bool,
}

/// [`tail_mass`] on `n, 2n, 4n, ...` (`steps` points).
pub fn tail_mass_audit(n: u64, steps: usize) -> Result<TailReport> {
    let rows: Vec<TailRow> = (0..steps).map(|i| tail_mass(n << i)).collect::<Result<_>>()?;
    let shrinking = rows.windows(3).all(|w| w[2].tail_ratio < w[0].tail_ratio);
    Ok(TailReport { rows, shrinking })
}

/// Renders rows as an aligned text table.
pub fn to_table<R: CsvRow>(rows: &[R]) -> String {
    let header: Vec<String> = R::header().iter().map(|s| s.to_string()).collect();
    let body: Vec<Vec<String>> = rows.iter().map(|r| r.fields()).collect();
    let widths: Vec<usize> = (0..header.len())
        .map(|i| body.iter().map(|r| r[i].len()).chain([header[i].len()]).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for line in std::iter::once(&header).chain(body.iter()) {
        let cells: Vec<String> = line.iter().zip(&widths).map(|(c, &w)| format!("{c:>w$}")).collect();
        let _ = writeln!(out, "{}", cells.join("  ").trim_end());
    }
    out
}
