//! Exhaustive and Monte Carlo measurements over the ensembles.

mod report;

pub use report::{emit_report, render_records, ReportFormat, CSV_HEADER};

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::IntPoly;
use crate::algebraic::{
    classify_irreducibility, enumerate_candidates, low_degree_factors_subset, AlgebraicError,
    Effort, Status, DEFAULT_CEILING,
};
use crate::bounds::{theorem_budget, BoundsError};
use crate::ensembles::{polynomial_of_sample, sample, EnsembleError, EnsembleSpec, Sample, SeedStream};
use crate::roots::{find_roots, max_root_modulus};

/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.959963984540054;

/// Largest degree accepted by [`exhaustive_reducibility`].
pub const CENSUS_MAX_N: usize = 14;

/// Relative slack on the region radius for numerically computed roots.
const REGION_SLACK: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error(transparent)]
    Ensemble(#[from] EnsembleError),
    #[error(transparent)]
    Algebraic(#[from] AlgebraicError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("statistic {statistic} needs {needs}")]
    Incompatible { statistic: String, needs: &'static str },
    #[error("could not decide the statistic for stream index {0}")]
    Undecided(u64),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

fn invalid(msg: impl Into<String>) -> ExperimentError {
    ExperimentError::InvalidParameter(msg.into())
}

/// Wilson score interval at 95%.
pub fn wilson_interval(successes: u64, trials: u64) -> (f64, f64) {
    assert!(trials > 0 && successes <= trials);
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = Z95 * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((centre - half).clamp(0.0, p), (centre + half).clamp(p, 1.0))
}

/// The region `Omega`: a closed disk, minus some integer points, optionally
/// intersected with the real line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionSpec {
    pub radius: f64,
    #[serde(default)]
    pub excluded: Vec<i64>,
    #[serde(default)]
    pub real_only: bool,
}

impl RegionSpec {
    pub fn disk(radius: f64) -> Self {
        RegionSpec {
            radius,
            excluded: Vec::new(),
            real_only: false,
        }
    }

    pub fn validate(&self) -> Result<(), ExperimentError> {
        if !(self.radius > 0.0) || !self.radius.is_finite() {
            return Err(invalid("region radius must be positive and finite"));
        }
        if self.excluded.iter().any(|&s| s.unsigned_abs() as f64 > self.radius) {
            return Err(invalid("excluded points must lie inside the region radius"));
        }
        Ok(())
    }

    /// Whether the irreducible monic `g` has a root in the region.
    pub fn holds_root_of(&self, g: &IntPoly) -> bool {
        if g.degree() == Some(1) {
            let r = -g.coeff(0);
            let r_f = num_traits::ToPrimitive::to_f64(&r).unwrap_or(f64::INFINITY);
            let excluded = num_traits::ToPrimitive::to_i64(&r).is_some_and(|r| self.excluded.contains(&r));
            return !excluded && r_f.abs() <= self.radius;
        }
        let Ok(rs) = find_roots(g) else {
            return false;
        };
        rs.roots.iter().any(|w| {
            w.norm() <= self.radius * (1.0 + REGION_SLACK)
                && (!self.real_only || w.im.abs() <= REGION_SLACK * (1.0 + w.norm()))
        })
    }
}

/// Event measured per sample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Statistic {
    Reducible,
    /// A factor of degree at most `k`; with a region, one having a root there.
    HasFactorDegAtMost { k: usize },
    IntegerPointRoot { x: i64 },
    MinPolyDivides { g: IntPoly },
    Singular,
    TrivialEigenvalueMultiplicityAtLeast2,
}

impl Statistic {
    pub fn label(&self) -> String {
        match self {
            Statistic::Reducible => "reducible".into(),
            Statistic::HasFactorDegAtMost { .. } => "has-factor-deg-at-most".into(),
            Statistic::IntegerPointRoot { x } => format!("integer-point-root({x})"),
            Statistic::MinPolyDivides { g } => format!("min-poly-divides({g})"),
            Statistic::Singular => "singular".into(),
            Statistic::TrivialEigenvalueMultiplicityAtLeast2 => "trivial-eigenvalue-multiplicity-2".into(),
        }
    }

    fn k(&self) -> Option<usize> {
        match self {
            Statistic::HasFactorDegAtMost { k } => Some(*k),
            _ => None,
        }
    }

    fn check(&self, spec: &EnsembleSpec) -> Result<(), ExperimentError> {
        let incompatible = |needs| ExperimentError::Incompatible {
            statistic: self.label(),
            needs,
        };
        match self {
            Statistic::Singular if !spec.is_matrix() => Err(incompatible("a matrix model")),
            Statistic::TrivialEigenvalueMultiplicityAtLeast2 if spec.trivial_eigenvalue().is_none() => {
                Err(incompatible("a model with a trivial eigenvalue"))
            }
            Statistic::HasFactorDegAtMost { k: 0 } => Err(invalid("k must be at least 1")),
            Statistic::MinPolyDivides { g } if !g.is_monic() || g.degree() == Some(0) => {
                Err(invalid("g must be monic of degree at least 1"))
            }
            _ => Ok(()),
        }
    }
}

/// What to measure and how often.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub spec: EnsembleSpec,
    pub statistic: Statistic,
    pub trials: u64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub region: Option<RegionSpec>,
}

/// Execution knobs that do not change results.
#[derive(Debug, Clone, Copy, Default)]
pub struct RunOptions {
    /// Worker threads; `None` uses the global pool.
    pub workers: Option<usize>,
    /// Record wall time in the `seconds` column.
    pub timing: bool,
}

impl RunOptions {
    fn install<R: Send>(&self, job: impl FnOnce() -> R + Send) -> R {
        match self.workers {
            Some(w) => rayon::ThreadPoolBuilder::new()
                .num_threads(w.max(1))
                .build()
                .expect("thread pool")
                .install(job),
            None => job(),
        }
    }
}

/// One estimated probability.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimateRecord {
    pub model: String,
    pub n: usize,
    pub statistic: String,
    pub k: Option<usize>,
    #[serde(rename = "M")]
    pub m: Option<f64>,
    pub trials: u64,
    pub successes: u64,
    pub p_hat: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    pub seed: u64,
    pub seconds: Option<f64>,
}

impl EstimateRecord {
    fn new(
        spec: &EnsembleSpec,
        statistic: &Statistic,
        region: Option<&RegionSpec>,
        trials: u64,
        successes: u64,
        seed: u64,
        seconds: Option<f64>,
    ) -> Self {
        let (ci_lo, ci_hi) = wilson_interval(successes, trials);
        EstimateRecord {
            model: spec.name().to_string(),
            n: spec.n(),
            statistic: statistic.label(),
            k: statistic.k(),
            m: region.map(|r| r.radius),
            trials,
            successes,
            p_hat: successes as f64 / trials as f64,
            ci_lo,
            ci_hi,
            seed,
            seconds,
        }
    }
}

/// Irreducible box candidates of degree `<= k` with a root in the region.
fn region_candidates(k: usize, region: &RegionSpec) -> Result<Vec<IntPoly>, ExperimentError> {
    let mut out = Vec::new();
    for d in 1..=k {
        for g in enumerate_candidates(d, region.radius.max(1.0), DEFAULT_CEILING)? {
            if is_irreducible(&g)? && region.holds_root_of(&g) {
                out.push(g);
            }
        }
    }
    Ok(out)
}

fn is_irreducible(g: &IntPoly) -> Result<bool, ExperimentError> {
    match classify_irreducibility(g, Effort::FULL)?.status {
        Status::Irreducible => Ok(true),
        Status::Reducible => Ok(false),
        _ => Err(invalid(format!("could not decide irreducibility of {g}"))),
    }
}

/// `h | f` is impossible unless `h(x) | f(x)` for every integer `x`.
fn value_filter(g: &IntPoly, f_at: &[BigInt; 2]) -> bool {
    [0i64, 1].iter().zip(f_at).all(|(&x, fv)| {
        if fv.is_zero() {
            return true;
        }
        let gv = g.eval_i64(x);
        !gv.is_zero() && fv.is_multiple_of(&gv)
    })
}

fn divides(g: &IntPoly, f: &IntPoly, f_at: &[BigInt; 2]) -> bool {
    value_filter(g, f_at) && f.is_divisible_by(g).expect("monic candidate")
}

fn values_at_0_1(f: &IntPoly) -> [BigInt; 2] {
    [f.eval_i64(0), f.eval_i64(1)]
}

/// Evaluates a statistic on one sample.
struct Evaluator<'a> {
    statistic: &'a Statistic,
    spec: &'a EnsembleSpec,
    candidates: Option<Vec<IntPoly>>,
}

impl<'a> Evaluator<'a> {
    fn new(statistic: &'a Statistic, spec: &'a EnsembleSpec, region: Option<&RegionSpec>) -> Result<Self, ExperimentError> {
        statistic.check(spec)?;
        let candidates = match (statistic, region) {
            (Statistic::HasFactorDegAtMost { k }, Some(r)) => Some(region_candidates(*k, r)?),
            _ => None,
        };
        Ok(Evaluator {
            statistic,
            spec,
            candidates,
        })
    }

    fn eval(&self, stream: SeedStream) -> Result<bool, ExperimentError> {
        let s = sample(self.spec, stream)?;
        if let Statistic::Singular = self.statistic {
            return match s {
                Sample::Matrix(a) => Ok(a.det().is_zero()),
                Sample::Poly(_) => unreachable!("checked"),
            };
        }
        let f = match s {
            Sample::Poly(f) => f,
            Sample::Matrix(a) => a.charpoly(),
        };
        let n = f.degree().unwrap_or(0);
        Ok(match self.statistic {
            Statistic::Reducible => match classify_irreducibility(&f, Effort::FULL)?.status {
                Status::Irreducible => false,
                Status::Reducible => true,
                _ => return Err(ExperimentError::Undecided(stream.index)),
            },
            Statistic::HasFactorDegAtMost { k } => match &self.candidates {
                Some(cands) => {
                    let at = values_at_0_1(&f);
                    cands.iter().any(|g| divides(g, &f, &at))
                }
                None if n <= *k => true,
                None => {
                    let rep = low_degree_factors_subset(&f, *k)?;
                    match rep.status {
                        Status::Reducible => true,
                        Status::NoFactorUpTo(_) => false,
                        _ if !rep.factors.is_empty() => true,
                        _ => return Err(ExperimentError::Undecided(stream.index)),
                    }
                }
            },
            Statistic::IntegerPointRoot { x } => f.eval_i64(*x).is_zero(),
            Statistic::MinPolyDivides { g } => f.is_divisible_by(g).expect("checked monic"),
            Statistic::TrivialEigenvalueMultiplicityAtLeast2 => {
                let s = self.spec.trivial_eigenvalue().expect("checked");
                let lin = IntPoly::linear(&BigInt::from(s));
                f.is_divisible_by(&(&lin * &lin)).expect("monic")
            }
            Statistic::Singular => unreachable!(),
        })
    }
}

fn validate_trials(trials: u64) -> Result<(), ExperimentError> {
    if trials == 0 {
        return Err(invalid("trials must be at least 1"));
    }
    Ok(())
}

/// Monte Carlo estimate over streams `0..trials` of `config.seed`.
pub fn mc_estimate(config: &ExperimentConfig, opts: RunOptions) -> Result<EstimateRecord, ExperimentError> {
    Ok(mc_estimate_shared(
        &config.spec,
        std::slice::from_ref(&config.statistic),
        config.region.as_ref(),
        config.trials,
        config.seed,
        opts,
    )?
    .remove(0))
}

/// Several statistics evaluated on the same samples.
pub fn mc_estimate_shared(
    spec: &EnsembleSpec,
    statistics: &[Statistic],
    region: Option<&RegionSpec>,
    trials: u64,
    seed: u64,
    opts: RunOptions,
) -> Result<Vec<EstimateRecord>, ExperimentError> {
    validate_trials(trials)?;
    spec.validate()?;
    if let Some(r) = region {
        r.validate()?;
    }
    let start = Instant::now();
    let evaluators: Vec<Evaluator> = statistics
        .iter()
        .map(|s| Evaluator::new(s, spec, region))
        .collect::<Result<_, _>>()?;
    let counts = opts.install(|| {
        (0..trials)
            .into_par_iter()
            .map(|i| {
                let stream = SeedStream::new(seed, i);
                evaluators
                    .iter()
                    .map(|e| e.eval(stream).map(u64::from))
                    .collect::<Result<Vec<u64>, _>>()
            })
            .try_reduce(
                || vec![0u64; evaluators.len()],
                |a, b| Ok(a.iter().zip(&b).map(|(x, y)| x + y).collect()),
            )
    })?;
    let seconds = opts.timing.then(|| start.elapsed().as_secs_f64());
    Ok(statistics
        .iter()
        .zip(counts)
        .map(|(s, c)| EstimateRecord::new(spec, s, region, trials, c, seed, seconds))
        .collect())
}

/// Exact reducibility census of the `2^n` monic `+-1` polynomials.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Census {
    pub n: usize,
    pub total: u64,
    pub reducible: u64,
    /// `reducible / total` in lowest terms
    pub probability: String,
    /// Count of reducible polynomials by smallest factor degree.
    pub by_min_degree: BTreeMap<usize, u64>,
}

impl Census {
    pub fn probability(&self) -> BigRational {
        BigRational::new(BigInt::from(self.reducible), BigInt::from(self.total))
    }

    pub fn fraction(&self) -> f64 {
        self.reducible as f64 / self.total as f64
    }
}

/// The `+-1` polynomial with sign pattern `code`: bit `i` set means `+1` at `z^i`.
pub fn sign_poly(n: usize, code: u64) -> IntPoly {
    let mut c: Vec<i64> = (0..n).map(|i| if code >> i & 1 == 1 { 1 } else { -1 }).collect();
    c.push(1);
    IntPoly::from_i64s(&c)
}

/// Smallest degree of a nontrivial factor of a reducible `f`.
fn smallest_factor_degree(f: &IntPoly, found: usize) -> Result<usize, ExperimentError> {
    if found <= 1 {
        return Ok(found);
    }
    let rep = low_degree_factors_subset(f, found - 1)?;
    match (rep.status, rep.min_factor_degree()) {
        (_, Some(d)) => Ok(d),
        (Status::NoFactorUpTo(_), None) => Ok(found),
        _ => Err(invalid(format!("could not settle the smallest factor of {f}"))),
    }
}

/// Classifies every monic degree-`n` polynomial with `+-1` coefficients.
pub fn exhaustive_reducibility(n: usize, opts: RunOptions) -> Result<Census, ExperimentError> {
    if n == 0 || n > CENSUS_MAX_N {
        return Err(invalid(format!("census degree must lie in 1..={CENSUS_MAX_N}")));
    }
    let total = 1u64 << n;
    let degrees: Vec<Option<usize>> = opts.install(|| {
        (0..total)
            .into_par_iter()
            .map(|code| {
                let f = sign_poly(n, code);
                let rep = classify_irreducibility(&f, Effort::FULL)?;
                match rep.status {
                    Status::Irreducible => Ok(None),
                    Status::Reducible => {
                        let d = rep.min_factor_degree().expect("reducible reports carry a factor");
                        Ok(Some(smallest_factor_degree(&f, d)?))
                    }
                    _ => Err(ExperimentError::Undecided(code)),
                }
            })
            .collect::<Result<Vec<_>, ExperimentError>>()
    })?;
    let mut by_min_degree = BTreeMap::new();
    for d in degrees.iter().flatten() {
        *by_min_degree.entry(*d).or_insert(0u64) += 1;
    }
    let reducible = by_min_degree.values().sum();
    let probability = BigRational::new(BigInt::from(reducible), BigInt::from(total)).to_string();
    Ok(Census {
        n,
        total,
        reducible,
        probability,
        by_min_degree,
    })
}

/// Frequency with which one candidate divides the sample.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CandidateEstimate {
    pub candidate: IntPoly,
    pub successes: u64,
    pub p_hat: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    /// Irreducible with a root in the region.
    pub in_region: bool,
}

/// Per-candidate divisibility frequencies on shared samples.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DelocalizationProfile {
    pub model: String,
    pub n: usize,
    pub k: usize,
    #[serde(rename = "M")]
    pub m: f64,
    pub trials: u64,
    pub seed: u64,
    pub shared: bool,
    pub candidates: Vec<CandidateEstimate>,
    /// Largest frequency among in-region candidates, and which one.
    pub p_hat: f64,
    pub argmax: Option<IntPoly>,
    /// Samples with an in-region candidate dividing them.
    pub events: u64,
    /// Samples with a root of modulus above `M`.
    pub tail_events: u64,
}

/// Estimates `P(g | f)` for every box candidate `g` of degree `<= k` and
/// radius `M`, all on the same samples.
pub fn delocalization_profile(
    spec: &EnsembleSpec,
    k: usize,
    region: &RegionSpec,
    trials: u64,
    seed: u64,
    opts: RunOptions,
) -> Result<DelocalizationProfile, ExperimentError> {
    validate_trials(trials)?;
    spec.validate()?;
    region.validate()?;
    if k == 0 {
        return Err(invalid("k must be at least 1"));
    }
    let mut cands = Vec::new();
    for d in 1..=k {
        cands.extend(enumerate_candidates(d, region.radius.max(1.0), DEFAULT_CEILING)?);
    }
    let in_region: Vec<bool> = cands
        .iter()
        .map(|g| Ok(is_irreducible(g)? && region.holds_root_of(g)))
        .collect::<Result<_, ExperimentError>>()?;
    let width = cands.len();
    let counts = opts.install(|| {
        (0..trials)
            .into_par_iter()
            .map(|i| {
                let f = polynomial_of_sample(spec, SeedStream::new(seed, i))?;
                let at = values_at_0_1(&f);
                let mut row = vec![0u64; width + 2];
                let mut event = false;
                for (j, g) in cands.iter().enumerate() {
                    if divides(g, &f, &at) {
                        row[j] = 1;
                        event |= in_region[j];
                    }
                }
                row[width] = event as u64;
                let outside = max_root_modulus(&f).map_or(true, |r| r > region.radius * (1.0 + REGION_SLACK));
                row[width + 1] = outside as u64;
                Ok(row)
            })
            .try_reduce(
                || vec![0u64; width + 2],
                |a, b| Ok(a.iter().zip(&b).map(|(x, y)| x + y).collect()),
            )
    })
    .map_err(|e: ExperimentError| e)?;
    let candidates: Vec<CandidateEstimate> = cands
        .into_iter()
        .zip(&counts)
        .zip(&in_region)
        .map(|((g, &c), &inr)| {
            let (ci_lo, ci_hi) = wilson_interval(c, trials);
            CandidateEstimate {
                candidate: g,
                successes: c,
                p_hat: c as f64 / trials as f64,
                ci_lo,
                ci_hi,
                in_region: inr,
            }
        })
        .collect();
    let best = candidates
        .iter()
        .filter(|c| c.in_region)
        .fold(None::<&CandidateEstimate>, |acc, c| match acc {
            Some(a) if a.successes >= c.successes => Some(a),
            _ => Some(c),
        });
    Ok(DelocalizationProfile {
        model: spec.name().to_string(),
        n: spec.n(),
        k,
        m: region.radius,
        trials,
        seed,
        shared: true,
        p_hat: best.map_or(0.0, |c| c.p_hat),
        argmax: best.map(|c| c.candidate.clone()),
        candidates,
        events: counts[width],
        tail_events: counts[width + 1],
    })
}

/// One end-to-end check of the main probability bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremConfig {
    pub spec: EnsembleSpec,
    pub k: usize,
    /// Region radius; `None` takes the largest Cauchy bound over the samples.
    #[serde(rename = "M")]
    pub m: Option<f64>,
    pub trials: u64,
    #[serde(default)]
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremReport {
    pub model: String,
    pub n: usize,
    pub k: usize,
    #[serde(rename = "M")]
    pub m: f64,
    pub excluded: Vec<i64>,
    pub real_only: bool,
    pub trials: u64,
    pub seed: u64,
    pub events: u64,
    pub empirical: f64,
    pub p_hat: f64,
    pub argmax: Option<IntPoly>,
    pub tail: f64,
    pub budget: f64,
    pub holds: bool,
}

/// Measures `P(f has an algebraic root of degree <= k in Omega)` and
/// compares it with the budget evaluated at the measured `p` and tail.
///
/// `Omega` is the disk of radius `M` minus the model's trivial eigenvalue,
/// restricted to the real line for symmetric models.
pub fn validate_main_theorem(cfg: &TheoremConfig, opts: RunOptions) -> Result<TheoremReport, ExperimentError> {
    validate_trials(cfg.trials)?;
    cfg.spec.validate()?;
    let m = match cfg.m {
        Some(m) => m,
        None => {
            let bounds: Vec<BigInt> = opts.install(|| {
                (0..cfg.trials)
                    .into_par_iter()
                    .map(|i| {
                        let f = polynomial_of_sample(&cfg.spec, SeedStream::new(cfg.seed, i))?;
                        Ok(crate::algebra::cauchy_root_bound(&f).expect("monic"))
                    })
                    .collect::<Result<Vec<_>, ExperimentError>>()
            })?;
            let top = bounds.into_iter().max().expect("trials >= 1");
            num_traits::ToPrimitive::to_f64(&top).unwrap_or(f64::INFINITY)
        }
    };
    if !(m >= 1.0) || !m.is_finite() {
        return Err(invalid("M must be finite and at least 1"));
    }
    let region = RegionSpec {
        radius: m,
        excluded: cfg.spec.trivial_eigenvalue().into_iter().collect(),
        real_only: cfg.spec.is_symmetric(),
    };
    let prof = delocalization_profile(&cfg.spec, cfg.k, &region, cfg.trials, cfg.seed, opts)?;
    let trials = cfg.trials as f64;
    let empirical = prof.events as f64 / trials;
    let tail = prof.tail_events as f64 / trials;
    let budget = theorem_budget(prof.p_hat, m, cfg.k, tail)?;
    // the budget is a float; allow only its rounding error
    let holds = empirical <= budget * (1.0 + 1e-12);
    Ok(TheoremReport {
        model: prof.model,
        n: prof.n,
        k: cfg.k,
        m,
        excluded: region.excluded,
        real_only: region.real_only,
        trials: cfg.trials,
        seed: cfg.seed,
        events: prof.events,
        empirical,
        p_hat: prof.p_hat,
        argmax: prof.argmax,
        tail,
        budget,
        holds,
    })
}

/// The twelve fixed `(model, n, k, M)` configurations checked in CI.
pub fn standard_configurations(trials: u64, seed: u64) -> Vec<TheoremConfig> {
    use EnsembleSpec::*;
    let cfg = |spec, k, m: f64| TheoremConfig {
        spec,
        k,
        m: Some(m),
        trials,
        seed,
    };
    vec![
        cfg(RademacherPoly { n: 8 }, 1, 2.0),
        cfg(RademacherPoly { n: 8 }, 2, 2.0),
        cfg(RademacherPoly { n: 12 }, 1, 2.0),
        cfg(RademacherPoly { n: 12 }, 2, 2.0),
        cfg(IidSignMatrix { n: 6 }, 1, 6.0),
        cfg(IidSignMatrix { n: 4 }, 1, 4.0),
        cfg(ErdosRenyi { n: 6, p: 0.5 }, 1, 6.0),
        cfg(ErdosRenyi { n: 6, p: 0.3 }, 1, 6.0),
        cfg(FixedOutdegree { n: 6, s: 2 }, 1, 6.0),
        cfg(FixedOutdegree { n: 6, s: 3 }, 1, 6.0),
        cfg(Elliptical { n: 6, rho: 0.5 }, 1, 6.0),
        cfg(ZeroOneKonyagin { n: 10 }, 2, 2.0),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wilson_examples() {
        let (lo, hi) = wilson_interval(0, 100);
        assert_eq!(lo, 0.0);
        assert!(hi > 0.03 && hi < 0.04);
        let (lo, hi) = wilson_interval(50, 100);
        assert!((lo - 0.4038).abs() < 1e-3 && (hi - 0.5962).abs() < 1e-3);
        let (lo, hi) = wilson_interval(100, 100);
        assert_eq!(hi, 1.0);
        assert!(lo < 1.0);
    }

    #[test]
    fn small_censuses() {
        let c = exhaustive_reducibility(2, RunOptions::default()).unwrap();
        assert_eq!(c.reducible, 0);
        let c = exhaustive_reducibility(3, RunOptions::default()).unwrap();
        assert_eq!((c.reducible, c.total), (4, 8));
        assert_eq!(c.probability, "1/2");
        assert_eq!(c.by_min_degree.get(&1), Some(&4));
        assert_eq!(exhaustive_reducibility(4, RunOptions::default()).unwrap().reducible, 0);
        assert!(exhaustive_reducibility(15, RunOptions::default()).is_err());
    }

    #[test]
    fn fixed_outdegree_always_has_s() {
        let cfg = ExperimentConfig {
            spec: EnsembleSpec::FixedOutdegree { n: 5, s: 2 },
            statistic: Statistic::MinPolyDivides {
                g: IntPoly::from_i64s(&[-2, 1]),
            },
            trials: 200,
            seed: 3,
            region: None,
        };
        let r = mc_estimate(&cfg, RunOptions::default()).unwrap();
        assert_eq!(r.successes, 200);
        assert_eq!(r.p_hat, 1.0);
    }

    #[test]
    fn incompatible_statistics() {
        let cfg = ExperimentConfig {
            spec: EnsembleSpec::RademacherPoly { n: 4 },
            statistic: Statistic::Singular,
            trials: 10,
            seed: 0,
            region: None,
        };
        assert!(matches!(
            mc_estimate(&cfg, RunOptions::default()),
            Err(ExperimentError::Incompatible { .. })
        ));
    }

    #[test]
    fn permutation_profile_has_z_minus_one() {
        let prof = delocalization_profile(
            &EnsembleSpec::PermutationMatrix { n: 6 },
            1,
            &RegionSpec::disk(6.0),
            300,
            1,
            RunOptions::default(),
        )
        .unwrap();
        let one = prof
            .candidates
            .iter()
            .find(|c| c.candidate == IntPoly::from_i64s(&[-1, 1]))
            .unwrap();
        assert_eq!(one.successes, 300);
        assert_eq!(prof.p_hat, 1.0);
    }

    #[test]
    fn workers_do_not_change_results() {
        let cfg = ExperimentConfig {
            spec: EnsembleSpec::RademacherPoly { n: 7 },
            statistic: Statistic::IntegerPointRoot { x: 1 },
            trials: 500,
            seed: 9,
            region: None,
        };
        let a = mc_estimate(&cfg, RunOptions { workers: Some(1), timing: false }).unwrap();
        let b = mc_estimate(&cfg, RunOptions { workers: Some(4), timing: false }).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn theorem_holds_on_a_small_case() {
        let cfg = TheoremConfig {
            spec: EnsembleSpec::RademacherPoly { n: 7 },
            k: 1,
            m: None,
            trials: 400,
            seed: 2,
        };
        let rep = validate_main_theorem(&cfg, RunOptions::default()).unwrap();
        assert_eq!(rep.m, 2.0);
        assert_eq!(rep.tail, 0.0);
        assert!(rep.holds);
        assert!(rep.events > 0);
    }

    #[test]
    fn region_membership() {
        let r = RegionSpec {
            radius: 2.0,
            excluded: vec![2],
            real_only: false,
        };
        assert!(!r.holds_root_of(&IntPoly::from_i64s(&[-2, 1])));
        assert!(r.holds_root_of(&IntPoly::from_i64s(&[2, 1])));
        assert!(r.holds_root_of(&IntPoly::from_i64s(&[4, 0, 1])));
        assert!(!r.holds_root_of(&IntPoly::from_i64s(&[5, 0, 1])));
        let real = RegionSpec { real_only: true, ..r };
        assert!(!real.holds_root_of(&IntPoly::from_i64s(&[1, 0, 1])));
        assert!(real.holds_root_of(&IntPoly::from_i64s(&[-2, 0, 1])));
    }
}
