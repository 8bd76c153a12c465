//! `gcube`: command-line front end.
//!
//! Every run is fully described by its flags, and the resolved flags are
//! echoed into the output: a `invocation` field in JSON, `# invocation:`
//! lines ahead of CSV and text. Exit codes: 0 success, 2 usage error,
//! 3 resource budget exceeded, 1 anything else.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use flate2::write::GzEncoder;
use flate2::Compression;
use serde::Serialize;
use serde_json::{json, Value};

use gcube::chains::{build_partition, repair_n8, validate_partition};
use gcube::cube::{enumerate_layer, layer_counts, outdegree_histogram, Family};
use gcube::experiments::{
    conjecture_check_cn, conjecture_check_pn, decay_audit_layers, decay_audit_outdeg, format_real, gnp_experiment,
    gnp_summary, open_case_n11, stirling_audit_layer, stirling_audit_outdeg, tail_mass_audit, to_csv, to_table,
    ConjectureRow, CsvRow, DECAY_GRID,
};
use gcube::formulas::{self, MaximizerSet};
use gcube::width::{max_antichain, max_antichain_band, max_antichain_cube, min_shadow_search, shadow_push, MIN_SHADOW_BUDGET};
use gcube::{Graph, PartSpec, WidthReport};

const SCHEMA_VERSION: u32 = 1;
/// Seed used when `--seed` is not given.
const DEFAULT_SEED: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Parser, Serialize)]
#[command(name = "gcube", version, about = "Exact computation on independent-set hypercubes Q(G)")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Emit a JSON document.
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,

    /// Emit CSV.
    #[arg(long, global = true)]
    csv: bool,

    /// Write to this file instead of stdout; a `.gz` suffix compresses.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads for parallel stages; output order does not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum GraphKind {
    Path,
    Cycle,
    Edgeless,
    Multipartite,
    Gnp,
    File,
}

#[derive(Args, Serialize, Clone)]
struct GraphArgs {
    /// Host graph family.
    #[arg(long, value_enum, default_value = "path")]
    graph: GraphKind,

    /// Vertex count.
    #[arg(long)]
    n: Option<usize>,

    /// Part sizes for `multipartite`, e.g. `4,2,2,2,2`.
    #[arg(long, value_delimiter = ',')]
    parts: Option<Vec<usize>>,

    /// Edge probability for `gnp`.
    #[arg(long, conflicts_with = "c_over_n")]
    p: Option<f64>,

    /// Edge probability `c / n` for `gnp`.
    #[arg(long)]
    c_over_n: Option<f64>,

    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Edge-list file for `file`.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Command {
    /// Print the host graph as an edge list.
    Graph(GraphArgs),
    /// List the independent sets, or one layer with `--r`.
    Enumerate {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        r: Option<usize>,
    },
    /// Layer sizes of Q(G).
    Layers(GraphArgs),
    /// Out-degree histogram of layer `r`.
    Outdeg {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        r: usize,
    },
    /// Closed forms and bounds.
    Formulas {
        #[command(subcommand)]
        which: FormulaCommand,
    },
    /// Width of Q(G) with a Dilworth certificate.
    Width {
        #[command(flatten)]
        graph: GraphArgs,
        /// Solve through the explicit containment order and a matching.
        #[arg(long)]
        explicit: bool,
    },
    /// Width of the layers `r-lo..=r-hi` of Q(G).
    BandWidth {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        r_lo: usize,
        #[arg(long)]
        r_hi: usize,
    },
    /// Push an antichain of Q(P_n) into the middle layers.
    ShadowPush {
        #[arg(long)]
        n: usize,
        /// Start from layer `r` of Q(P_n).
        #[arg(long, required_unless_present = "family")]
        r: Option<usize>,
        /// Start from a family file (one set per line).
        #[arg(long, conflicts_with = "r")]
        family: Option<PathBuf>,
        /// Instead, find `s` sets in layer `r` with the smallest lower shadow.
        #[arg(long, requires = "r")]
        minimize: Option<usize>,
    },
    /// A/B/C chain partition of Q(P_n).
    Chains {
        #[arg(long)]
        n: usize,
        /// Apply the n = 8 repair.
        #[arg(long)]
        repair: bool,
    },
    /// Width against the largest layer for paths or cycles.
    Conjecture {
        #[arg(long, value_enum, default_value = "path")]
        family: ConjectureFamily,
        #[arg(long)]
        n_max: usize,
        /// Add solve times (makes output vary between runs).
        #[arg(long)]
        timing: bool,
    },
    /// Random graphs G(n, c/n) over consecutive seeds.
    Gnp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        c_over_n: f64,
        /// Number of seeds, starting at `--seed`.
        #[arg(long, default_value_t = 200)]
        seeds: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Print per-layer means against expectations instead of trials.
        #[arg(long)]
        summary: bool,
    },
    /// Quadratic decay of layer sizes or out-degree counts around the peak.
    DecayAudit {
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value = "layers")]
        kind: DecayKind,
        /// Layer for the out-degree audit; defaults to r*.
        #[arg(long)]
        r: Option<i64>,
        /// Offsets c, comma-separated.
        #[arg(long, value_delimiter = ',')]
        c: Option<Vec<f64>>,
    },
    /// Band and full width of Q(P_11).
    #[command(name = "open-case-11")]
    #[serde(rename = "open-case-11")]
    OpenCase11,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum ConjectureFamily {
    Path,
    Cycle,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum DecayKind {
    Layers,
    Outdeg,
}

#[derive(Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum FormulaCommand {
    Fibonacci { #[arg(long)] n: u64 },
    CubeSize { #[arg(long)] n: u64 },
    LayerSize { #[arg(long)] n: u64, #[arg(long, allow_hyphen_values = true)] r: i64 },
    RStar { #[arg(long)] n: u64 },
    OutdegCount {
        #[arg(long)] n: u64,
        #[arg(long, allow_hyphen_values = true)] r: i64,
        #[arg(long, allow_hyphen_values = true)] d: i64,
    },
    DStar { #[arg(long)] n: u64, #[arg(long, allow_hyphen_values = true)] r: i64 },
    DStarExpansion { #[arg(long)] n: u64, #[arg(long, allow_hyphen_values = true)] c: f64 },
    EntropyF { #[arg(long)] x: f64 },
    EntropyG { #[arg(long)] x: f64, #[arg(long)] y: f64 },
    LayerStirling { #[arg(long)] n: u64, #[arg(long)] alpha: f64 },
    OutdegStirling { #[arg(long)] n: u64, #[arg(long)] alpha: f64, #[arg(long)] beta: f64 },
    /// Stirling approximation against the exact count (layer, or out-degree with `--beta`).
    StirlingAudit { #[arg(long)] n: u64, #[arg(long)] alpha: f64, #[arg(long)] beta: Option<f64> },
    GaussianSum { #[arg(long)] a: f64 },
    QuadSum {
        #[arg(long, allow_hyphen_values = true)] a0: f64,
        #[arg(long, allow_hyphen_values = true)] a1: f64,
        #[arg(long)] a2: f64,
    },
    Qrdstar { #[arg(long)] n: u64, #[arg(long, allow_hyphen_values = true)] r: i64 },
    TailMass { #[arg(long)] n: u64, #[arg(long, default_value_t = 3)] steps: usize },
}

enum Failure {
    Usage(String),
    Budget(String),
    Other(String),
}

impl From<gcube::Error> for Failure {
    fn from(e: gcube::Error) -> Self {
        use gcube::Error as E;
        match e {
            E::Budget { .. } => Failure::Budget(e.to_string()),
            E::InvalidArgument(_) | E::Parse { .. } | E::Domain { .. } | E::Precondition(_) | E::GraphMismatch => {
                Failure::Usage(e.to_string())
            }
            E::Certificate(_) => Failure::Other(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Other(e.to_string())
    }
}

type Outcome<T> = Result<T, Failure>;

/// A result in all three renderings.
struct Rendered {
    json: Value,
    csv: String,
    text: String,
}

impl Rendered {
    fn rows<R: CsvRow + Serialize>(rows: &[R]) -> Self {
        Rendered {
            json: serde_json::to_value(rows).expect("rows serialise"),
            csv: to_csv(rows),
            text: to_table(rows),
        }
    }

    /// A flat record shown as one CSV row and `key: value` lines.
    fn record(json: Value, fields: &[(&str, String)]) -> Self {
        let keys: Vec<&str> = fields.iter().map(|(k, _)| *k).collect();
        let vals: Vec<&str> = fields.iter().map(|(_, v)| v.as_str()).collect();
        let text = fields.iter().map(|(k, v)| format!("{k}: {v}\n")).collect();
        Rendered {
            json,
            csv: format!("{}\n{}\n", keys.join(","), vals.join(",")),
            text,
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn need<T: Copy>(v: Option<T>, flag: &str) -> Outcome<T> {
    v.ok_or_else(|| usage(format!("--{flag} is required for this graph")))
}

fn build_graph(a: &GraphArgs) -> Outcome<Graph> {
    Ok(match a.graph {
        GraphKind::Path => Graph::path(need(a.n, "n")?)?,
        GraphKind::Cycle => Graph::cycle(need(a.n, "n")?)?,
        GraphKind::Edgeless => Graph::edgeless(need(a.n, "n")?)?,
        GraphKind::Multipartite => {
            let parts = a.parts.clone().ok_or_else(|| usage("--parts is required for multipartite"))?;
            Graph::complete_multipartite(&PartSpec::new(parts)?)?
        }
        GraphKind::Gnp => {
            let n = need(a.n, "n")?;
            let p = match (a.p, a.c_over_n) {
                (Some(p), _) => p,
                (None, Some(c)) => c / n as f64,
                (None, None) => return Err(usage("gnp needs --p or --c-over-n")),
            };
            Graph::erdos_renyi(n, p, a.seed)?
        }
        GraphKind::File => {
            let path = a.file.as_ref().ok_or_else(|| usage("--file is required for file graphs"))?;
            Graph::parse_edge_list(&std::fs::read_to_string(path)?)?
        }
    })
}

fn big_json(v: &gcube::BigCount) -> Value {
    match u64::try_from(v) {
        Ok(x) => json!(x),
        Err(_) => json!(v.to_string()),
    }
}

fn maximizer(m: MaximizerSet) -> Rendered {
    let values = m.values();
    let joined = values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(";");
    Rendered::record(json!({ "values": values, "tie": m.is_tie() }), &[("values", joined), ("tie", m.is_tie().to_string())])
}

fn counts_table(label: &str, rows: Vec<(String, String, Option<String>)>) -> Rendered {
    let with_formula = rows.iter().any(|r| r.2.is_some());
    let mut header = vec![label, "count"];
    if with_formula {
        header.push("formula");
    }
    let mut csv = header.join(",") + "\n";
    let mut json_rows = Vec::new();
    let mut lines = Vec::new();
    for (k, c, f) in &rows {
        let mut cells = vec![k.clone(), c.clone()];
        let mut obj = json!({ label: k.parse::<u64>().ok(), "count": c.parse::<u64>().ok() });
        if let Some(f) = f {
            cells.push(f.clone());
            obj["formula"] = json!(f.parse::<u64>().ok());
        }
        csv += &(cells.join(",") + "\n");
        lines.push(cells);
        json_rows.push(obj);
    }
    let mut text = format!("{:>6}  {:>12}{}\n", label, "count", if with_formula { "       formula" } else { "" });
    for cells in lines {
        text += &format!("{:>6}  {:>12}{}\n", cells[0], cells[1], cells.get(2).map(|f| format!("  {f:>12}")).unwrap_or_default());
    }
    Rendered {
        json: Value::Array(json_rows),
        csv,
        text,
    }
}

fn width_rendered(r: &WidthReport) -> Rendered {
    let mut text = format!(
        "width: {}\nmax_layer: {}\nratio: {}\nground_set: {}\ncertificate_ok: {}\nantichain ({} sets):\n",
        r.width,
        r.max_layer,
        format_real(r.ratio),
        r.ground_set,
        r.certificate_ok,
        r.antichain.len()
    );
    for a in &r.antichain {
        text += &format!("  {a}\n");
    }
    text += &format!("chain cover ({} chains):\n", r.chain_cover.len());
    for c in &r.chain_cover {
        text += &format!("  {}\n", c.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(" < "));
    }
    Rendered {
        json: serde_json::to_value(r).expect("report serialises"),
        csv: format!(
            "width,max_layer,ratio,ground_set,certificate_ok\n{},{},{},{},{}\n",
            r.width,
            r.max_layer,
            format_real(r.ratio),
            r.ground_set,
            r.certificate_ok
        ),
        text,
    }
}

fn family_rendered(f: &Family) -> Rendered {
    let sets: Vec<Vec<usize>> = f.sets().iter().map(|a| a.to_vec()).collect();
    let mut csv = String::from("size,set\n");
    for a in f.sets() {
        csv += &format!("{},\"{}\"\n", a.len(), a.to_labels_string());
    }
    Rendered {
        json: json!({ "count": f.len(), "sets": sets }),
        csv,
        text: f.to_text(),
    }
}

fn formulas_cmd(which: &FormulaCommand) -> Outcome<Rendered> {
    use FormulaCommand as F;
    let real = |name: &str, x: f64| Rendered::record(json!({ name: x }), &[(name, format_real(x))]);
    let count = |name: &str, v: gcube::BigCount| Rendered::record(json!({ name: big_json(&v) }), &[(name, v.to_string())]);
    Ok(match *which {
        F::Fibonacci { n } => count("fibonacci", formulas::fibonacci(n)),
        F::CubeSize { n } => {
            if n == 0 {
                return Err(usage("--n must be at least 1"));
            }
            count("cube_size", formulas::cube_size_pn(n))
        }
        F::LayerSize { n, r } => count("layer_size", formulas::layer_size_pn(n, r)),
        F::RStar { n } => {
            if n == 0 {
                return Err(usage("--n must be at least 1"));
            }
            let m = formulas::r_star(n);
            let mut out = maximizer(m);
            let size = formulas::layer_size_pn(n, m.low as i64);
            out.json["layer_size"] = big_json(&size);
            out.text += &format!("layer_size: {size}\n");
            out.csv = out.csv.replacen('\n', ",layer_size\n", 1).trim_end().to_string() + &format!(",{size}\n");
            out
        }
        F::OutdegCount { n, r, d } => count("outdeg_count", formulas::outdeg_count_pn(n, r, d)),
        F::DStar { n, r } => maximizer(formulas::d_star(n, r)?),
        F::DStarExpansion { n, c } => real("d_star_expansion", formulas::d_star_expansion(n, c)?),
        F::EntropyF { x } => entropy(formulas::entropy_f(x)?),
        F::EntropyG { x, y } => entropy(formulas::entropy_g(x, y)?),
        F::LayerStirling { n, alpha } => real("layer_size_stirling", formulas::layer_size_stirling(n, alpha)?),
        F::OutdegStirling { n, alpha, beta } => real("outdeg_stirling", formulas::outdeg_stirling(n, alpha, beta)?),
        F::StirlingAudit { n, alpha, beta } => {
            let row = match beta {
                None => stirling_audit_layer(n, alpha)?,
                Some(b) => stirling_audit_outdeg(n, alpha, b)?,
            };
            Rendered::rows(&[row])
        }
        F::GaussianSum { a } => {
            let s = formulas::gaussian_sum_bounds(a)?;
            Rendered::record(
                serde_json::to_value(s).unwrap(),
                &[
                    ("lower", format_real(s.lower)),
                    ("partial_sum", format_real(s.partial_sum)),
                    ("upper", format_real(s.upper)),
                ],
            )
        }
        F::QuadSum { a0, a1, a2 } => {
            let q = formulas::quad_exp_sum_bound(a0, a1, a2)?;
            Rendered::record(serde_json::to_value(q).unwrap(), &[("sum", format_real(q.sum)), ("bound", format_real(q.bound))])
        }
        F::Qrdstar { n, r } => real("qrdstar_ratio", formulas::qrdstar_ratio(n, r)?),
        F::TailMass { n, steps } => {
            let report = tail_mass_audit(n, steps)?;
            let mut out = Rendered::rows(&report.rows);
            out.json = serde_json::to_value(&report).unwrap();
            out.text += &format!("shrinking: {}\n", report.shrinking);
            out
        }
    })
}

fn entropy(p: formulas::EntropyPoint) -> Rendered {
    let mut fields = vec![("x", format_real(p.x))];
    if let Some(y) = p.y {
        fields.push(("y", format_real(y)));
    }
    fields.extend([("value", format_real(p.value)), ("first", format_real(p.first)), ("second", format_real(p.second))]);
    Rendered::record(serde_json::to_value(p).unwrap(), &fields)
}

fn conjecture_rendered(rows: &[ConjectureRow], timing: bool) -> Rendered {
    let mut out = Rendered::rows(rows);
    if timing {
        let mut csv = String::new();
        for (i, line) in out.csv.lines().enumerate() {
            let extra = if i == 0 { "runtime_ms".to_string() } else { rows[i - 1].runtime_ms.to_string() };
            csv += &format!("{line},{extra}\n");
        }
        out.csv = csv;
        for (obj, r) in out.json.as_array_mut().unwrap().iter_mut().zip(rows) {
            obj["runtime_ms"] = json!(r.runtime_ms);
        }
        out.text += &rows.iter().map(|r| format!("n={} runtime_ms={}\n", r.n, r.runtime_ms)).collect::<String>();
    }
    out
}

fn run(cli: &Cli) -> Outcome<Rendered> {
    Ok(match &cli.command {
        Command::Graph(a) => {
            let g = build_graph(a)?;
            let edges = g.edges();
            let mut csv = String::from("u,v\n");
            for (u, v) in &edges {
                csv += &format!("{u},{v}\n");
            }
            Rendered {
                json: json!({ "n": g.n(), "m": edges.len(), "edges": edges }),
                csv,
                text: g.to_edge_list(),
            }
        }
        Command::Enumerate { graph, r } => {
            let g = Arc::new(build_graph(graph)?);
            let family = match r {
                Some(r) if *r > g.n() => return Err(usage(format!("--r {r} exceeds n = {}", g.n()))),
                Some(r) => enumerate_layer(&g, *r),
                None => Family::cube(&g),
            };
            family_rendered(&family)
        }
        Command::Layers(a) => {
            let g = build_graph(a)?;
            let is_path = a.graph == GraphKind::Path;
            let rows = layer_counts(&g)
                .into_iter()
                .enumerate()
                .map(|(r, c)| {
                    let f = is_path.then(|| formulas::layer_size_pn(g.n() as u64, r as i64).to_string());
                    (r.to_string(), c.to_string(), f)
                })
                .collect();
            counts_table("r", rows)
        }
        Command::Outdeg { graph, r } => {
            let g = build_graph(graph)?;
            if *r > g.n() {
                return Err(usage(format!("--r {r} exceeds n = {}", g.n())));
            }
            let is_path = graph.graph == GraphKind::Path;
            let rows = outdegree_histogram(&g, *r)
                .into_iter()
                .map(|(d, c)| {
                    let f = is_path.then(|| formulas::outdeg_count_pn(g.n() as u64, *r as i64, d as i64).to_string());
                    (d.to_string(), c.to_string(), f)
                })
                .collect();
            counts_table("d", rows)
        }
        Command::Formulas { which } => formulas_cmd(which)?,
        Command::Width { graph, explicit } => {
            let g = build_graph(graph)?;
            let report = if *explicit {
                max_antichain(&Family::cube(&Arc::new(g)))?
            } else {
                max_antichain_cube(&g)?
            };
            width_rendered(&report)
        }
        Command::BandWidth { graph, r_lo, r_hi } => width_rendered(&max_antichain_band(&build_graph(graph)?, *r_lo, *r_hi)?),
        Command::ShadowPush { n, r, family, minimize } => {
            let g = Arc::new(Graph::path(*n)?);
            if let Some(s) = minimize {
                let (best, size) = min_shadow_search(*n, r.unwrap(), *s, MIN_SHADOW_BUDGET)?;
                let mut out = family_rendered(&best);
                out.json["lower_shadow"] = big_json(&size);
                out.text = format!("lower_shadow: {size}\n{}", out.text);
                out
            } else {
                let start = match (r, family) {
                    (Some(r), _) if *r > *n => return Err(usage(format!("--r {r} exceeds n = {n}"))),
                    (Some(r), _) => enumerate_layer(&g, *r),
                    (None, Some(path)) => Family::parse_text(g.clone(), &std::fs::read_to_string(path)?)?,
                    (None, None) => return Err(usage("give --r or --family")),
                };
                let pushed = shadow_push(&start)?;
                let mut out = family_rendered(&pushed);
                out.json["input_count"] = json!(start.len());
                out
            }
        }
        Command::Chains { n, repair } => {
            let mut p = build_partition(*n)?;
            if *repair {
                p = repair_n8(&p)?;
            }
            let report = validate_partition(*n, &p);
            let fields = [
                ("n", report.n.to_string()),
                ("chain_count", report.chain_count.to_string()),
                ("is_partition", report.is_partition.to_string()),
                ("chains_valid", report.chains_valid.to_string()),
                ("consecutive_sizes", report.consecutive_sizes.to_string()),
                ("chains_missing_largest_layer", report.chains_missing_largest_layer.to_string()),
                ("total_length", report.total_length.to_string()),
            ];
            let mut out = Rendered::record(json!({ "report": report, "partition": p }), &fields);
            out.text += &p.dump();
            out
        }
        Command::Conjecture { family, n_max, timing } => {
            let rows = match family {
                ConjectureFamily::Path => conjecture_check_pn(*n_max)?,
                ConjectureFamily::Cycle => conjecture_check_cn(*n_max)?,
            };
            conjecture_rendered(&rows, *timing)
        }
        Command::Gnp { n, c_over_n, seeds, seed, summary } => {
            let list: Vec<u64> = (0..*seeds).map(|i| seed.wrapping_add(i)).collect();
            let rows = gnp_experiment(*n, *c_over_n, &list)?;
            if *summary {
                Rendered::rows(&gnp_summary(&rows))
            } else {
                Rendered::rows(&rows)
            }
        }
        Command::DecayAudit { n, kind, r, c } => {
            let grid = c.clone().unwrap_or_else(|| DECAY_GRID.to_vec());
            let rows = match kind {
                DecayKind::Layers => decay_audit_layers(*n, &grid)?,
                DecayKind::Outdeg => {
                    if *n == 0 {
                        return Err(usage("--n must be at least 1"));
                    }
                    let r = r.unwrap_or(formulas::r_star(*n).low as i64);
                    decay_audit_outdeg(*n, r, &grid)?
                }
            };
            Rendered::rows(&rows)
        }
        Command::OpenCase11 => {
            let case = open_case_n11()?;
            let mut out = width_rendered(&case.band);
            out.json = serde_json::to_value(&case).unwrap();
            out.text = format!(
                "band 3..4: width {} over {} sets\nfull: width {} over {} sets\nwidths_equal: {}\ncertificate_ok: {}\n",
                case.band.width,
                case.band.ground_set,
                case.full.width,
                case.full.ground_set,
                case.widths_equal,
                case.band.certificate_ok && case.full.certificate_ok
            );
            out.csv = format!(
                "band_width,band_ground_set,full_width,full_ground_set,widths_equal,certificate_ok\n{},{},{},{},{},{}\n",
                case.band.width,
                case.band.ground_set,
                case.full.width,
                case.full.ground_set,
                case.widths_equal,
                case.band.certificate_ok && case.full.certificate_ok
            );
            out
        }
    })
}

fn emit(cli: &Cli, r: Rendered) -> io::Result<()> {
    let invocation = serde_json::to_value(cli).expect("flags serialise");
    let body = if cli.json {
        let doc = json!({ "schema_version": SCHEMA_VERSION, "invocation": invocation, "result": r.json });
        serde_json::to_string_pretty(&doc).unwrap() + "\n"
    } else {
        let header = format!("# schema_version: {SCHEMA_VERSION}\n# invocation: {invocation}\n");
        header + if cli.csv { &r.csv } else { &r.text }
    };
    match &cli.out {
        None => io::stdout().lock().write_all(body.as_bytes()),
        Some(path) if path.extension().is_some_and(|e| e == "gz") => {
            let mut gz = GzEncoder::new(File::create(path)?, Compression::default());
            gz.write_all(body.as_bytes())?;
            gz.finish().map(|_| ())
        }
        Some(path) => std::fs::write(path, body),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(k) = cli.threads {
        if k == 0 || rayon::ThreadPoolBuilder::new().num_threads(k).build_global().is_err() {
            eprintln!("error: --threads must be a positive integer");
            return ExitCode::from(2);
        }
    }
    let result = run(&cli).and_then(|r| emit(&cli, r).map_err(Failure::from));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
        Err(Failure::Other(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
