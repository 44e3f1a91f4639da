//! Command-line front end.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::FromPrimitive;
use serde::Serialize;

use crate::algebra::{IntMatrix, IntPoly};
use crate::algebraic::{
    classify_irreducibility, low_degree_factors_enumerate, low_degree_factors_subset, Effort, FactorReport,
    DEFAULT_CEILING,
};
use crate::bounds::{
    bound_report, ff_irreducible_count, figure_lower_bound, lo_exact_pm1, theorem_budget, Regime,
};
use crate::control::{godsil_cross_check, Graph, Verdict};
use crate::ensembles::{sample, EnsembleSpec, Sample, SeedStream};
use crate::experiments::{
    delocalization_profile, exhaustive_reducibility, mc_estimate, render_records, standard_configurations,
    validate_main_theorem, ExperimentConfig, RegionSpec, ReportFormat, RunOptions, Statistic, TheoremConfig,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "polylab",
    version,
    about = "Low-degree algebraic roots of random integer polynomials and matrices"
)]
pub struct Cli {
    /// Master seed for all random streams
    #[arg(long, global = true, env = "POLYLAB_SEED", hide_env_values = true, default_value_t = 0)]
    seed: u64,
    /// Output format (each subcommand has its own default)
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the main output to this file instead of standard output
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for parallel experiments (default: logical cores)
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Search for low-degree factors or decide irreducibility
    Factor(FactorArgs),
    /// Exact characteristic polynomial of an integer matrix
    Charpoly(CharpolyArgs),
    /// Draw samples from a random model
    Sample(SampleArgs),
    /// Monte Carlo estimates, delocalization profiles and bound validation
    Experiment(ExperimentArgs),
    /// Evaluate closed-form bounds
    Bounds(BoundsArgs),
    /// Count monic irreducible polynomials over a finite field
    Ffcount(FfcountArgs),
    /// Controllability, symmetry and charpoly irreducibility of a graph
    Control(ControlArgs),
    /// Exact reducibility census of all +-1 polynomials of one degree
    Census(CensusArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum FactorMethod {
    Classify,
    Subset,
    Enumerate,
}

#[derive(Args, Debug)]
struct FactorArgs {
    /// Monic polynomial as a JSON array of coefficients, constant term first
    #[arg(long)]
    poly: String,
    /// Largest factor degree to search for; omit to classify irreducibility
    #[arg(long)]
    k: Option<usize>,
    /// Search method (default: subset with --k, classify without)
    #[arg(long, value_enum)]
    method: Option<FactorMethod>,
    /// Root radius for the enumerate method (default: Cauchy bound)
    #[arg(long = "radius")]
    radius: Option<f64>,
    /// Refuse enumerations with more candidates than this
    #[arg(long, default_value_t = DEFAULT_CEILING)]
    ceiling: u64,
}

#[derive(Args, Debug)]
struct CharpolyArgs {
    /// Square matrix as a JSON array of rows
    #[arg(long)]
    matrix: String,
}

#[derive(Args, Debug, Clone)]
struct ModelArgs {
    /// Model name, e.g. rademacher-poly, iid-sign-matrix, erdos-renyi
    #[arg(long)]
    model: Option<String>,
    /// Model as a JSON object with a "model" tag
    #[arg(long, conflicts_with = "model")]
    spec: Option<String>,
    /// Degree or matrix dimension
    #[arg(long)]
    n: Option<usize>,
    /// Edge or entry probability
    #[arg(long)]
    p: Option<f64>,
    /// Correlation of the elliptical model
    #[arg(long)]
    rho: Option<f64>,
    /// Outdegree of the fixed-outdegree model
    #[arg(long)]
    s: Option<usize>,
    /// Number of factors of the product-signs model
    #[arg(long)]
    factors: Option<usize>,
    /// Coefficient bound N of the uniform-poly model
    #[arg(long = "big-n")]
    big_n: Option<u64>,
    /// Entry bound B of the symmetric-bounded model
    #[arg(long = "big-b")]
    big_b: Option<u64>,
    /// Mean-zero entries for the symmetric-bounded model
    #[arg(long)]
    mean_zero: bool,
}

impl ModelArgs {
    fn spec(&self) -> Result<EnsembleSpec, String> {
        if let Some(js) = &self.spec {
            let spec: EnsembleSpec = serde_json::from_str(js).map_err(|e| format!("--spec: {e}"))?;
            spec.validate().map_err(|e| e.to_string())?;
            return Ok(spec);
        }
        let name = self.model.as_deref().ok_or("--model or --spec is required")?;
        let n = self.n.ok_or("--n is required")?;
        let need = |v: Option<f64>, flag: &str| v.ok_or(format!("--{flag} is required for {name}"));
        let need_u = |v: Option<u64>, flag: &str| v.ok_or(format!("--{flag} is required for {name}"));
        let spec = match name {
            "rademacher-poly" => EnsembleSpec::RademacherPoly { n },
            "uniform-poly" => EnsembleSpec::UniformPoly {
                n,
                big_n: need_u(self.big_n, "big-n")?,
            },
            "zero-one-konyagin" => EnsembleSpec::ZeroOneKonyagin { n },
            "iid-sign-matrix" => EnsembleSpec::IidSignMatrix { n },
            "symmetric-bounded" => EnsembleSpec::SymmetricBounded {
                n,
                b: need_u(self.big_b, "big-b")?,
                mean_zero: self.mean_zero,
            },
            "elliptical" => EnsembleSpec::Elliptical {
                n,
                rho: need(self.rho, "rho")?,
            },
            "product-signs" => EnsembleSpec::ProductSigns {
                n,
                m: self.factors.ok_or("--factors is required for product-signs")?,
            },
            "erdos-renyi" => EnsembleSpec::ErdosRenyi {
                n,
                p: need(self.p, "p")?,
            },
            "directed-bernoulli" => EnsembleSpec::DirectedBernoulli {
                n,
                p: need(self.p, "p")?,
            },
            "fixed-outdegree" => EnsembleSpec::FixedOutdegree {
                n,
                s: self.s.ok_or("--s is required for fixed-outdegree")?,
            },
            "permutation-matrix" => EnsembleSpec::PermutationMatrix { n },
            other => return Err(format!("unknown model {other:?}")),
        };
        spec.validate().map_err(|e| e.to_string())?;
        Ok(spec)
    }
}

#[derive(Args, Debug)]
struct SampleArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// First stream index
    #[arg(long, default_value_t = 0)]
    index: u64,
    /// Number of consecutive streams to sample
    #[arg(long, default_value_t = 1)]
    count: u64,
    /// Print characteristic polynomials of matrix samples instead of the matrices
    #[arg(long)]
    charpoly: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// Monte Carlo estimate of one statistic
    Estimate,
    /// Per-candidate divisibility frequencies
    Profile,
    /// Compare the measured root probability with the bound
    Validate,
    /// Run `validate` on the twelve standard configurations
    Standard,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum StatisticName {
    Reducible,
    HasFactorDegAtMost,
    IntegerPointRoot,
    MinPolyDivides,
    Singular,
    TrivialEigenvalueMultiplicity2,
}

#[derive(Args, Debug)]
struct ExperimentArgs {
    /// What to run
    #[arg(long, value_enum, default_value_t = Mode::Estimate)]
    mode: Mode,
    /// JSON file holding one experiment config or an array of them (estimate mode)
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(flatten)]
    model: ModelArgs,
    /// Statistic to estimate
    #[arg(long, value_enum)]
    statistic: Option<StatisticName>,
    /// Factor degree bound
    #[arg(long)]
    k: Option<usize>,
    /// Integer point for integer-point-root
    #[arg(long, allow_hyphen_values = true)]
    x: Option<i64>,
    /// Polynomial for min-poly-divides, as a JSON coefficient array
    #[arg(long)]
    g: Option<String>,
    /// Region radius M
    #[arg(long)]
    radius: Option<f64>,
    /// Number of samples
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    /// Record wall time in the seconds column
    #[arg(long)]
    timing: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum BoundKind {
    /// Product and sum bounds with both comparison sides
    Product,
    /// Probability budget from p, M, k and tail
    Budget,
    /// One of the four parameter regimes
    Regime,
    /// Exact probability that a +-1 polynomial vanishes at 1 or -1
    LittlewoodOfford,
    /// Odd-degree lower curve for the reducibility probability
    Figure,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum RegimeName {
    I,
    Ii,
    Iii,
    Iv,
}

#[derive(Args, Debug)]
struct BoundsArgs {
    /// Which bound to evaluate
    #[arg(long, value_enum, default_value_t = BoundKind::Product)]
    what: BoundKind,
    /// Degree bound k
    #[arg(long)]
    k: Option<usize>,
    /// Radius M, an integer, fraction a/b or decimal
    #[arg(long = "radius")]
    radius: Option<String>,
    /// Pointwise probability p
    #[arg(long)]
    p: Option<f64>,
    /// Probability of a root outside the radius
    #[arg(long, default_value_t = 0.0)]
    tail: f64,
    /// Regime to evaluate
    #[arg(long, value_enum)]
    regime: Option<RegimeName>,
    /// Concrete n; for regimes, omit to scan for a threshold
    #[arg(long)]
    n: Option<f64>,
    /// Regime (i): p = scale / sqrt(n)
    #[arg(long, default_value_t = 1.0)]
    scale: f64,
    /// Regime (ii): exponent slack epsilon
    #[arg(long)]
    eps: Option<f64>,
    /// Regime (iii): exponent c
    #[arg(long)]
    c: Option<f64>,
    /// Regime (iii): exponent c'
    #[arg(long)]
    c_prime: Option<f64>,
    /// Regime (iii): radius constant C
    #[arg(long)]
    big_c: Option<f64>,
    /// Regime (iv): target exponent B
    #[arg(long)]
    b: Option<f64>,
    /// Regime (iv): radius exponent m
    #[arg(long)]
    m_exp: Option<f64>,
    /// Littlewood-Offord evaluation point, 1 or -1
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    x: i8,
}

#[derive(Args, Debug)]
struct FfcountArgs {
    /// Field size, a prime power
    #[arg(long)]
    q: u64,
    /// Degree
    #[arg(long)]
    n: u32,
}

#[derive(Args, Debug)]
struct ControlArgs {
    /// JSON edge list file: {"n": .., "edges": [[u, v], ..]}
    #[arg(long, conflicts_with = "model")]
    graph: Option<PathBuf>,
    /// Random graph model (erdos-renyi)
    #[arg(long)]
    model: Option<String>,
    /// Vertex count for the random model
    #[arg(long)]
    n: Option<usize>,
    /// Edge probability for the random model
    #[arg(long)]
    p: Option<f64>,
    /// Number of random graphs to check
    #[arg(long, default_value_t = 1)]
    count: u64,
}

#[derive(Args, Debug)]
struct CensusArgs {
    /// Degree, at most 14
    #[arg(long)]
    n: usize,
}

/// Output of one subcommand: the rendered text and the exit code.
struct Outcome {
    text: String,
    code: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, code: EXIT_OK }
    }
}

type CmdResult = Result<Outcome, String>;

fn json<T: Serialize + ?Sized>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn parse_poly(s: &str) -> Result<IntPoly, String> {
    let f: IntPoly = serde_json::from_str(s).map_err(|e| format!("invalid polynomial {s:?}: {e}"))?;
    if !f.is_monic() || f.degree().unwrap_or(0) == 0 {
        return Err("polynomial must be monic of degree at least 1".into());
    }
    Ok(f)
}

fn parse_rational(s: &str) -> Result<BigRational, String> {
    if let Ok(r) = s.parse::<BigRational>() {
        return Ok(r);
    }
    s.parse::<f64>()
        .ok()
        .and_then(BigRational::from_f64)
        .ok_or_else(|| format!("invalid number {s:?}"))
}

fn pick(format: Option<Format>, default: Format, allowed: &[Format]) -> Result<Format, String> {
    let f = format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(format!("format {f:?} is not available for this subcommand").to_lowercase())
    }
}

fn factor_text(r: &FactorReport) -> String {
    let v = serde_json::to_value(r).expect("serializable");
    let mut s = format!("status: {}\n", v["status"].as_str().unwrap_or_default());
    if let Some(c) = &r.certificate {
        s += &format!("certificate: {}\n", serde_json::to_string(c).expect("serializable"));
    }
    for f in &r.factors {
        s += &format!("factor: {} (degree {})\n", f.poly, f.degree);
    }
    s
}

fn cmd_factor(a: &FactorArgs, format: Option<Format>) -> CmdResult {
    let f = parse_poly(&a.poly)?;
    let method = a.method.unwrap_or(if a.k.is_some() {
        FactorMethod::Subset
    } else {
        FactorMethod::Classify
    });
    let report = match method {
        FactorMethod::Classify => classify_irreducibility(&f, Effort::default()),
        FactorMethod::Subset => low_degree_factors_subset(&f, a.k.ok_or("--k is required for subset")?),
        FactorMethod::Enumerate => {
            low_degree_factors_enumerate(&f, a.k.ok_or("--k is required for enumerate")?, a.radius, a.ceiling)
        }
    }
    .map_err(|e| e.to_string())?;
    Ok(Outcome::ok(match pick(format, Format::Json, &[Format::Json, Format::Text])? {
        Format::Json => json(&report),
        _ => factor_text(&report),
    }))
}

fn cmd_charpoly(a: &CharpolyArgs, format: Option<Format>) -> CmdResult {
    let rows: Vec<Vec<i64>> = serde_json::from_str(&a.matrix).map_err(|e| format!("invalid matrix: {e}"))?;
    let m = IntMatrix::from_rows(&rows).map_err(|e| e.to_string())?;
    let f = m.charpoly();
    Ok(Outcome::ok(match pick(format, Format::Json, &[Format::Json, Format::Text])? {
        Format::Json => json(&f),
        _ => format!("{f}\n"),
    }))
}

fn cmd_sample(a: &SampleArgs, seed: u64, format: Option<Format>) -> CmdResult {
    let spec = a.model.spec()?;
    let fmt = pick(format, Format::Json, &[Format::Json, Format::Text])?;
    let mut out = Vec::new();
    for i in a.index..a.index + a.count {
        let s = sample(&spec, SeedStream::new(seed, i)).map_err(|e| e.to_string())?;
        out.push(match (s, a.charpoly) {
            (Sample::Matrix(m), true) => Sample::Poly(m.charpoly()),
            (s, _) => s,
        });
    }
    Ok(Outcome::ok(match fmt {
        Format::Json => json(&out),
        _ => out
            .iter()
            .map(|s| match s {
                Sample::Poly(f) => format!("{f}\n"),
                Sample::Matrix(m) => format!("{m:?}\n"),
            })
            .collect(),
    }))
}

fn statistic_of(a: &ExperimentArgs) -> Result<Statistic, String> {
    let name = a.statistic.ok_or("--statistic is required")?;
    Ok(match name {
        StatisticName::Reducible => Statistic::Reducible,
        StatisticName::HasFactorDegAtMost => Statistic::HasFactorDegAtMost {
            k: a.k.ok_or("--k is required")?,
        },
        StatisticName::IntegerPointRoot => Statistic::IntegerPointRoot {
            x: a.x.ok_or("--x is required")?,
        },
        StatisticName::MinPolyDivides => Statistic::MinPolyDivides {
            g: parse_poly(a.g.as_deref().ok_or("--g is required")?)?,
        },
        StatisticName::Singular => Statistic::Singular,
        StatisticName::TrivialEigenvalueMultiplicity2 => Statistic::TrivialEigenvalueMultiplicityAtLeast2,
    })
}

fn cmd_experiment(a: &ExperimentArgs, seed: u64, format: Option<Format>, opts: RunOptions) -> CmdResult {
    match a.mode {
        Mode::Estimate => {
            let configs: Vec<ExperimentConfig> = match &a.config {
                Some(path) => {
                    let raw = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
                    let v: serde_json::Value =
                        serde_json::from_str(&raw).map_err(|e| format!("{}: {e}", path.display()))?;
                    let parsed = if v.is_array() {
                        serde_json::from_value(v)
                    } else {
                        serde_json::from_value(v).map(|c| vec![c])
                    };
                    parsed.map_err(|e| format!("{}: {e}", path.display()))?
                }
                None => vec![ExperimentConfig {
                    spec: a.model.spec()?,
                    statistic: statistic_of(a)?,
                    trials: a.trials,
                    seed,
                    region: a.radius.map(RegionSpec::disk),
                }],
            };
            let records = configs
                .iter()
                .map(|c| mc_estimate(c, opts))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| e.to_string())?;
            let fmt = match pick(format, Format::Csv, &[Format::Csv, Format::Json])? {
                Format::Csv => ReportFormat::Csv,
                _ => ReportFormat::Json,
            };
            Ok(Outcome::ok(render_records(&records, fmt)))
        }
        Mode::Profile => {
            pick(format, Format::Json, &[Format::Json])?;
            let spec = a.model.spec()?;
            let radius = a.radius.ok_or("--radius is required")?;
            let k = a.k.ok_or("--k is required")?;
            let region = RegionSpec {
                radius,
                excluded: spec.trivial_eigenvalue().into_iter().collect(),
                real_only: spec.is_symmetric(),
            };
            let prof =
                delocalization_profile(&spec, k, &region, a.trials, seed, opts).map_err(|e| e.to_string())?;
            Ok(Outcome::ok(json(&prof)))
        }
        Mode::Validate | Mode::Standard => {
            pick(format, Format::Json, &[Format::Json])?;
            let cfgs = if a.mode == Mode::Standard {
                standard_configurations(a.trials, seed)
            } else {
                vec![TheoremConfig {
                    spec: a.model.spec()?,
                    k: a.k.ok_or("--k is required")?,
                    m: a.radius,
                    trials: a.trials,
                    seed,
                }]
            };
            let reports = cfgs
                .iter()
                .map(|c| validate_main_theorem(c, opts))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| e.to_string())?;
            let code = if reports.iter().all(|r| r.holds) {
                EXIT_OK
            } else {
                EXIT_VIOLATION
            };
            Ok(Outcome {
                text: json(&reports),
                code,
            })
        }
    }
}

fn cmd_bounds(a: &BoundsArgs, format: Option<Format>) -> CmdResult {
    let fmt = pick(format, Format::Text, &[Format::Text, Format::Json])?;
    let need_f = |v: Option<f64>, flag: &str| v.ok_or(format!("--{flag} is required"));
    let (value, verdict): (serde_json::Value, Option<bool>) = match a.what {
        BoundKind::Product => {
            let k = a.k.ok_or("--k is required")?;
            let m = parse_rational(a.radius.as_deref().ok_or("--radius is required")?)?;
            let r = bound_report(k, &m).map_err(|e| e.to_string())?;
            let ok = r.holds();
            if fmt == Format::Text {
                let mut s = format!("k = {}, M = {}\n", r.k, r.m);
                for e in &r.entries {
                    s += &format!(
                        "{:<14} ln = {:>22.12}{}\n",
                        e.name,
                        e.log_value,
                        e.exact.as_ref().map(|x| format!("  exact = {x}")).unwrap_or_default()
                    );
                }
                for (name, okv) in &r.verdicts {
                    s += &format!("{:<20} {}\n", name, if *okv { "holds" } else { "fails" });
                }
                return Ok(Outcome {
                    text: s,
                    code: if ok { EXIT_OK } else { EXIT_VIOLATION },
                });
            }
            (serde_json::to_value(&r).expect("serializable"), Some(ok))
        }
        BoundKind::Budget => {
            let k = a.k.ok_or("--k is required")?;
            let m: f64 = a
                .radius
                .as_deref()
                .ok_or("--radius is required")?
                .parse()
                .map_err(|_| "invalid --radius")?;
            let b = theorem_budget(need_f(a.p, "p")?, m, k, a.tail).map_err(|e| e.to_string())?;
            (serde_json::json!({ "budget": b }), None)
        }
        BoundKind::Regime => {
            let regime = match a.regime.ok_or("--regime is required")? {
                RegimeName::I => Regime::I {
                    scale: a.scale,
                    k: a.k.ok_or("--k is required")?,
                },
                RegimeName::Ii => Regime::Ii {
                    eps: need_f(a.eps, "eps")?,
                },
                RegimeName::Iii => Regime::Iii {
                    c: need_f(a.c, "c")?,
                    c_prime: need_f(a.c_prime, "c-prime")?,
                    big_c: need_f(a.big_c, "big-c")?,
                },
                RegimeName::Iv => Regime::Iv {
                    b: need_f(a.b, "b")?,
                    m: need_f(a.m_exp, "m-exp")?,
                    k: a.k.ok_or("--k is required")?,
                },
            };
            match a.n {
                Some(n) => {
                    let v = regime.evaluate(n).map_err(|e| e.to_string())?;
                    let ok = v.holds;
                    (serde_json::to_value(&v).expect("serializable"), Some(ok))
                }
                None => {
                    let scan = regime.threshold_scan(1e300, 10).map_err(|e| e.to_string())?;
                    let ok = scan.confirmed();
                    (serde_json::to_value(&scan).expect("serializable"), Some(ok))
                }
            }
        }
        BoundKind::LittlewoodOfford => {
            let n = need_f(a.n, "n")?;
            if n.fract() != 0.0 || n < 1.0 {
                return Err("--n must be a positive integer".into());
            }
            let p = lo_exact_pm1(n as u64, a.x).map_err(|e| e.to_string())?;
            (serde_json::json!({ "n": n as u64, "x": a.x, "probability": p.to_string() }), None)
        }
        BoundKind::Figure => {
            let n = need_f(a.n, "n")?;
            if n.fract() != 0.0 || n < 1.0 {
                return Err("--n must be a positive integer".into());
            }
            let v = figure_lower_bound(n as u64).map_err(|e| e.to_string())?;
            (serde_json::json!({ "n": n as u64, "lower_bound": v }), None)
        }
    };
    let code = match verdict {
        Some(false) => EXIT_VIOLATION,
        _ => EXIT_OK,
    };
    let text = match fmt {
        Format::Json => json(&value),
        _ => text_lines(&value),
    };
    Ok(Outcome { text, code })
}

fn text_lines(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::Object(map) => map
            .iter()
            .map(|(k, v)| match v {
                serde_json::Value::String(s) => format!("{k}: {s}\n"),
                serde_json::Value::Array(items) if k == "confirmations" => {
                    let held = items.iter().filter(|i| i["holds"] == true).count();
                    format!("{k}: {held} of {} hold\n", items.len())
                }
                other => format!("{k}: {other}\n"),
            })
            .collect(),
        other => format!("{other}\n"),
    }
}

fn cmd_ffcount(a: &FfcountArgs, format: Option<Format>) -> CmdResult {
    let c = ff_irreducible_count(a.q, a.n).map_err(|e| e.to_string())?;
    Ok(Outcome::ok(match pick(format, Format::Text, &[Format::Text, Format::Json])? {
        Format::Json => json(&serde_json::json!({ "q": a.q, "n": a.n, "count": c.to_string() })),
        _ => format!("{c}\n"),
    }))
}

fn cmd_control(a: &ControlArgs, seed: u64, format: Option<Format>) -> CmdResult {
    pick(format, Format::Json, &[Format::Json])?;
    let graphs: Vec<Graph> = match (&a.graph, a.model.as_deref()) {
        (Some(path), _) => {
            let raw = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            vec![serde_json::from_str(&raw).map_err(|e| format!("{}: {e}", path.display()))?]
        }
        (None, Some("erdos-renyi")) => {
            let spec = EnsembleSpec::ErdosRenyi {
                n: a.n.ok_or("--n is required")?,
                p: a.p.ok_or("--p is required")?,
            };
            (0..a.count)
                .map(|i| match sample(&spec, SeedStream::new(seed, i)) {
                    Ok(Sample::Matrix(m)) => Graph::from_adjacency(&m).map_err(|e| e.to_string()),
                    Ok(Sample::Poly(_)) => unreachable!(),
                    Err(e) => Err(e.to_string()),
                })
                .collect::<Result<_, _>>()?
        }
        (None, Some(other)) => return Err(format!("unsupported graph model {other:?}")),
        (None, None) => return Err("--graph or --model is required".into()),
    };
    let checks: Vec<_> = graphs.iter().map(|g| godsil_cross_check(g, Effort::default())).collect();
    let code = if checks.iter().any(|c| c.verdict == Verdict::Violated) {
        EXIT_VIOLATION
    } else {
        EXIT_OK
    };
    Ok(Outcome {
        text: json(&checks),
        code,
    })
}

fn cmd_census(a: &CensusArgs, format: Option<Format>, opts: RunOptions) -> CmdResult {
    let c = exhaustive_reducibility(a.n, opts).map_err(|e| e.to_string())?;
    let fmt = pick(format, Format::Text, &[Format::Text, Format::Json, Format::Csv])?;
    Ok(Outcome::ok(match fmt {
        Format::Json => json(&serde_json::json!({
            "n": c.n,
            "total": c.total,
            "reducible": c.reducible,
            "probability": c.probability,
            "fraction": c.fraction(),
            "by_min_degree": c.by_min_degree,
        })),
        Format::Csv => format!(
            "n,total,reducible,probability,fraction\n{},{},{},{},{}\n",
            c.n,
            c.total,
            c.reducible,
            c.probability,
            c.fraction()
        ),
        Format::Text => {
            let mut s = format!(
                "n = {}: {} of {} reducible, probability {} = {}\n",
                c.n,
                c.reducible,
                c.total,
                c.probability,
                c.fraction()
            );
            for (d, count) in &c.by_min_degree {
                s += &format!("smallest factor degree {d}: {count}\n");
            }
            s
        }
    }))
}

/// Parses `args` (program name first), runs the subcommand and writes its
/// output. Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{rendered}");
                EXIT_USAGE
            } else {
                let _ = write!(stdout, "{rendered}");
                EXIT_OK
            };
        }
    };
    let _ = writeln!(stderr, "seed: {}", cli.seed);
    let opts = RunOptions {
        workers: cli.workers,
        timing: matches!(&cli.command, Command::Experiment(a) if a.timing),
    };
    let result = match &cli.command {
        Command::Factor(a) => cmd_factor(a, cli.format),
        Command::Charpoly(a) => cmd_charpoly(a, cli.format),
        Command::Sample(a) => cmd_sample(a, cli.seed, cli.format),
        Command::Experiment(a) => cmd_experiment(a, cli.seed, cli.format, opts),
        Command::Bounds(a) => cmd_bounds(a, cli.format),
        Command::Ffcount(a) => cmd_ffcount(a, cli.format),
        Command::Control(a) => cmd_control(a, cli.seed, cli.format),
        Command::Census(a) => cmd_census(a, cli.format, opts),
    };
    match result {
        Ok(out) => {
            let written = match &cli.out {
                Some(path) => fs::write(path, &out.text).map_err(|e| format!("{}: {e}", path.display())),
                None => stdout.write_all(out.text.as_bytes()).map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => out.code,
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    EXIT_USAGE
                }
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}

/// Entry point for the binary.
pub fn main_with_env() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
