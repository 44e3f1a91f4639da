//! Closed-form bounds and counts, evaluated exactly where feasible and in
//! natural-log space otherwise.

pub mod arith;

use std::f64::consts::{LN_2, PI};

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use arith::{divisors, mobius, prime_power};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundsError {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("n = {0} must be odd")]
    EvenDegree(u64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

fn invalid(msg: impl Into<String>) -> BoundsError {
    BoundsError::InvalidParameter(msg.into())
}

/// Rational lower and upper enclosures of `e`.
pub fn e_lower() -> BigRational {
    BigRational::new(BigInt::from(2_718_281_828u64), BigInt::from(1_000_000_000u64))
}

pub fn e_upper() -> BigRational {
    BigRational::new(BigInt::from(2_718_281_829u64), BigInt::from(1_000_000_000u64))
}

/// Natural log of a positive big integer, accurate to double precision.
pub fn ln_bigint(x: &BigInt) -> f64 {
    assert!(x.is_positive(), "ln of a non-positive integer");
    let bits = x.bits();
    if bits <= 1000 {
        x.to_f64().unwrap().ln()
    } else {
        let shift = bits - 64;
        (x >> shift).to_f64().unwrap().ln() + shift as f64 * LN_2
    }
}

pub fn ln_rational(x: &BigRational) -> f64 {
    ln_bigint(x.numer()) - ln_bigint(x.denom())
}

fn check_km(k: usize, m: &BigRational) -> Result<(), BoundsError> {
    if k == 0 {
        return Err(invalid("k must be at least 1"));
    }
    if *m < BigRational::one() {
        return Err(invalid("M must be at least 1"));
    }
    Ok(())
}

/// `prod_{j=1}^k (2 C(k,j) M^j + 1)`, exactly.
pub fn product_bound(k: usize, m: &BigRational) -> Result<BigRational, BoundsError> {
    check_km(k, m)?;
    let mut acc = BigRational::one();
    let mut mj = BigRational::one();
    for j in 1..=k {
        mj *= m;
        let c = BigRational::from_integer(binomial(BigInt::from(k), BigInt::from(j)));
        acc *= BigRational::from_integer(BigInt::from(2)) * c * &mj + BigRational::one();
    }
    Ok(acc)
}

/// `sum_{l=1}^k l * product_bound(l, M)`, exactly.
pub fn sum_bound(k: usize, m: &BigRational) -> Result<BigRational, BoundsError> {
    check_km(k, m)?;
    let mut acc = BigRational::zero();
    for l in 1..=k {
        acc += BigRational::from_integer(BigInt::from(l)) * product_bound(l, m)?;
    }
    Ok(acc)
}

/// Log-space counterpart of [`product_bound`].
pub fn log_product_bound(k: usize, m: f64) -> f64 {
    (1..=k)
        .map(|j| {
            let lc = ln_binomial(k, j);
            // ln(2 C M^j + 1) = ln(2 C M^j) + ln(1 + 1/(2 C M^j))
            let big = LN_2 + lc + j as f64 * m.ln();
            big + (-big).exp().ln_1p()
        })
        .sum()
}

/// Log-space counterpart of [`sum_bound`].
pub fn log_sum_bound(k: usize, m: f64) -> f64 {
    let terms: Vec<f64> = (1..=k)
        .map(|l| (l as f64).ln() + log_product_bound(l, m))
        .collect();
    let top = terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    top + terms.iter().map(|t| (t - top).exp()).sum::<f64>().ln()
}

fn ln_binomial(n: usize, j: usize) -> f64 {
    (0..j).map(|i| ((n - i) as f64).ln() - ((i + 1) as f64).ln()).sum()
}

/// Outcome of the exact sandwich check for one `(k, M)`.
#[derive(Debug, Clone, Serialize)]
pub struct Sandwich {
    pub k: usize,
    pub m: String,
    /// `M^{(k^2+k)/2} e^{(k^2 - k ln k)/2} <= product`
    pub lower_holds: bool,
    /// `product <= (eM)^{(k^2+k)/2}`, or `2M + 1 <= 3M` when `k = 1`
    pub upper_holds: bool,
    /// `sum <= (eM)^{k^2}`; `None` for `k = 1`
    pub sum_holds: Option<bool>,
    pub log_product: f64,
    pub log_product_exact: f64,
    pub log_sum: f64,
    pub log_sum_exact: f64,
}

impl Sandwich {
    pub fn holds(&self) -> bool {
        self.lower_holds && self.upper_holds && self.sum_holds.unwrap_or(true)
    }

    pub fn log_agreement(&self) -> f64 {
        let rel = |a: f64, b: f64| (a - b).abs() / b.abs().max(1.0);
        rel(self.log_product, self.log_product_exact).max(rel(self.log_sum, self.log_sum_exact))
    }
}

/// Verifies both sides of the product sandwich and the sum bound in exact
/// rational arithmetic, replacing `e` by a rational enclosure on the side
/// that makes each check sufficient.
pub fn sandwich(k: usize, m: &BigRational) -> Result<Sandwich, BoundsError> {
    let product = product_bound(k, m)?;
    let sum = sum_bound(k, m)?;
    let (lower_holds, upper_holds, sum_holds) = if k == 1 {
        let three_m = BigRational::from_integer(BigInt::from(3)) * m;
        (true, product <= three_m, None)
    } else {
        let half = (k * k + k) / 2;
        let upper = (e_lower() * m).pow(half as u32);
        // square both sides: M^{k^2+k} e^{k^2} <= product^2 k^k
        let lhs = m.clone().pow((k * k + k) as u32) * e_upper().pow((k * k) as u32);
        let rhs = product.clone().pow(2u32) * BigRational::from_integer(BigInt::from(k).pow(k as u32));
        let sum_cap = (e_lower() * m).pow((k * k) as u32);
        (lhs <= rhs, product <= upper, Some(sum <= sum_cap))
    };
    let mf = m.to_f64().unwrap();
    Ok(Sandwich {
        k,
        m: m.to_string(),
        lower_holds,
        upper_holds,
        sum_holds,
        log_product: log_product_bound(k, mf),
        log_product_exact: ln_rational(&product),
        log_sum: log_sum_bound(k, mf),
        log_sum_exact: ln_rational(&sum),
    })
}

/// Budget `p (eM)^{k^2} + tail` for `k >= 2` and `3M p + tail` for `k = 1`,
/// clamped to at most 1.
pub fn theorem_budget(p: f64, m: f64, k: usize, tail: f64) -> Result<f64, BoundsError> {
    if !(0.0..=1.0).contains(&p) || !(0.0..=1.0).contains(&tail) {
        return Err(invalid("p and tail must lie in [0, 1]"));
    }
    if !(m >= 1.0) || !m.is_finite() {
        return Err(invalid("M must be a finite number at least 1"));
    }
    if k == 0 {
        return Err(invalid("k must be at least 1"));
    }
    let main = if p == 0.0 {
        0.0
    } else if k == 1 {
        3.0 * m * p
    } else {
        let log = p.ln() + (k * k) as f64 * (1.0 + m.ln());
        if log > 1.0 {
            1.0
        } else {
            log.exp()
        }
    };
    Ok((main + tail).min(1.0))
}

/// The four parameter regimes for `p (eM)^{k^2}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "case", rename_all = "lowercase")]
pub enum Regime {
    /// `p = scale / sqrt(n)`, `M = 2`, fixed `k <= sqrt(ln n / 4)`.
    I { scale: f64, k: usize },
    /// `p = 2^{-n/2}`, `M = n`, `k = floor(n^{1/2 - eps})`.
    Ii { eps: f64 },
    /// `p = 2 exp(-n^c)`, `M = C sqrt(n)`, `k = n^{c'}` with `c' < c / 2`.
    Iii { c: f64, c_prime: f64, big_c: f64 },
    /// `M = n^m`, constant `k`, `p = n^{-B'}` with `B' = B + 2 m k^2`.
    Iv { b: f64, m: f64, k: usize },
}

/// One regime evaluated at one `n`, in log space.
#[derive(Debug, Clone, Serialize)]
pub struct RegimeVerdict {
    pub regime: Regime,
    pub n: f64,
    /// `ln(p (eM)^{k^2})`
    pub log_value: f64,
    /// log of the right-hand side the regime compares against
    pub log_target: f64,
    pub holds: bool,
    /// `exp(log_value / n)`, reported for regime (ii)
    pub base: Option<f64>,
}

/// Threshold scan for a regime: first `n >= 8` where the predicate holds on a
/// geometric grid, then a confirmation grid above it.
#[derive(Debug, Clone, Serialize)]
pub struct ThresholdScan {
    pub regime: Regime,
    pub threshold: Option<f64>,
    pub confirmations: Vec<RegimeVerdict>,
}

impl ThresholdScan {
    pub fn confirmed(&self) -> bool {
        self.threshold.is_some() && self.confirmations.iter().all(|v| v.holds)
    }
}

impl Regime {
    fn validate(&self) -> Result<(), BoundsError> {
        match *self {
            Regime::I { scale, k } => {
                if !(scale > 0.0) || k == 0 {
                    return Err(invalid("(i) needs scale > 0 and k >= 1"));
                }
            }
            Regime::Ii { eps } => {
                if !(eps > 0.0 && eps < 0.5) {
                    return Err(invalid("(ii) needs 0 < eps < 1/2"));
                }
            }
            Regime::Iii { c, c_prime, big_c } => {
                if !(c > 0.0 && c < 1.0) || !(big_c > 0.0) || !(c_prime > 0.0) {
                    return Err(invalid("(iii) needs 0 < c < 1, C > 0, c' > 0"));
                }
                if c_prime >= c / 2.0 {
                    return Err(invalid("(iii) needs c' < c/2"));
                }
            }
            Regime::Iv { b, m, k } => {
                if !(b > 0.0) || !(m >= 1.0) || k == 0 {
                    return Err(invalid("(iv) needs B > 0, m >= 1, k >= 1"));
                }
            }
        }
        Ok(())
    }

    pub fn b_prime(&self) -> Option<f64> {
        match *self {
            Regime::Iv { b, m, k } => Some(b + 2.0 * m * (k * k) as f64),
            _ => None,
        }
    }

    /// Evaluates the regime's inequality at a concrete `n`.
    pub fn evaluate(&self, n: f64) -> Result<RegimeVerdict, BoundsError> {
        self.validate()?;
        if !(n >= 2.0) || !n.is_finite() {
            return Err(invalid("n must be finite and at least 2"));
        }
        let ln_n = n.ln();
        let (log_value, log_target, base) = match *self {
            Regime::I { scale, k } => {
                if (k * k) as f64 > ln_n / 4.0 * (1.0 + 1e-12) {
                    return Err(invalid(format!("(i) needs k <= sqrt(ln n / 4); k = {k}, n = {n}")));
                }
                let v = scale.ln() - 0.5 * ln_n + (k * k) as f64 * (1.0 + LN_2);
                (v, 0.0, None)
            }
            Regime::Ii { eps } => {
                let k = n.powf(0.5 - eps).floor();
                let v = -0.5 * n * LN_2 + k * k * (1.0 + ln_n);
                (v, 0.0, Some((v / n).exp()))
            }
            Regime::Iii { c, c_prime, big_c } => {
                let nc = n.powf(c);
                let k2 = n.powf(2.0 * c_prime);
                let v = LN_2 - nc + k2 * (1.0 + big_c.ln() + 0.5 * ln_n);
                (v, LN_2 - 2.0 / 3.0 * nc, None)
            }
            Regime::Iv { b, m, k } => {
                let bp = self.b_prime().unwrap();
                let k2 = (k * k) as f64;
                let v = -bp * ln_n + k2 * (1.0 + m * ln_n);
                (v, -b * ln_n, None)
            }
        };
        let holds = match self {
            Regime::I { .. } | Regime::Ii { .. } => log_value < log_target,
            _ => log_value <= log_target,
        };
        Ok(RegimeVerdict {
            regime: *self,
            n,
            log_value,
            log_target,
            holds,
            base,
        })
    }

    /// Scans `n = 8, 8 r, 8 r^2, ...` up to `n_max` for the first `n` where
    /// the predicate holds, refines it by bisection on integers, then checks
    /// `confirmations` log-spaced points between the threshold and
    /// `threshold * 10^6`.
    pub fn threshold_scan(&self, n_max: f64, confirmations: usize) -> Result<ThresholdScan, BoundsError> {
        self.validate()?;
        let ratio = 1.05f64;
        let mut prev = 8.0f64;
        let mut threshold = None;
        if self.evaluate(8.0)?.holds {
            threshold = Some(8.0);
        } else {
            let mut n = 8.0f64;
            while n < n_max {
                let next = (n * ratio).ceil();
                if self.evaluate(next)?.holds {
                    let (mut lo, mut hi) = (prev.max(n), next);
                    while hi - lo > 1.0 {
                        let mid = ((lo + hi) / 2.0).floor();
                        if mid <= lo || mid >= hi {
                            break;
                        }
                        if self.evaluate(mid)?.holds {
                            hi = mid;
                        } else {
                            lo = mid;
                        }
                    }
                    threshold = Some(hi);
                    break;
                }
                prev = n;
                n = next;
            }
        }
        let confirmations = match threshold {
            None => Vec::new(),
            Some(t) => (1..=confirmations)
                .map(|i| self.evaluate(t * 10f64.powf(6.0 * i as f64 / confirmations as f64)))
                .collect::<Result<_, _>>()?,
        };
        Ok(ThresholdScan {
            regime: *self,
            threshold,
            confirmations,
        })
    }
}

/// Convenience wrapper: evaluates `regime` at `n`.
pub fn collected_bounds_check(regime: Regime, n: f64) -> Result<RegimeVerdict, BoundsError> {
    regime.evaluate(n)
}

/// Number of monic irreducible polynomials of degree `n` over `F_q`.
pub fn ff_irreducible_count(q: u64, n: u32) -> Result<BigInt, BoundsError> {
    if prime_power(q).is_none() {
        return Err(BoundsError::NotPrimePower(q));
    }
    if n == 0 {
        return Err(invalid("degree must be at least 1"));
    }
    let qb = BigInt::from(q);
    let total: BigInt = divisors(n as u64)
        .into_iter()
        .map(|d| BigInt::from(mobius(d)) * qb.clone().pow(n / d as u32))
        .sum();
    Ok(total / BigInt::from(n))
}

/// Number of sign vectors of length `a` summing to `s`.
fn signed_sum_count(a: u64, s: i64) -> BigInt {
    let t = a as i64 + s;
    if t < 0 || t % 2 != 0 || t / 2 > a as i64 {
        return BigInt::zero();
    }
    binomial(BigInt::from(a), BigInt::from(t / 2))
}

/// `P(f_n(x) = 0)` for `x = +-1`, where `f_n` is monic of degree `n` with
/// independent `+-1` lower coefficients.
pub fn lo_exact_pm1(n: u64, x: i8) -> Result<BigRational, BoundsError> {
    if n == 0 {
        return Err(invalid("n must be at least 1"));
    }
    if x != 1 && x != -1 {
        return Err(invalid("x must be 1 or -1"));
    }
    // f(x) = x^n + sum of n independent signs, in distribution
    let lead: i64 = if x == 1 || n % 2 == 0 { 1 } else { -1 };
    Ok(BigRational::new(
        signed_sum_count(n, -lead),
        BigInt::from(2).pow(n as u32),
    ))
}

/// `P(f_n(1) = 0 and f_n(-1) = 0)`.
pub fn lo_exact_both(n: u64) -> Result<BigRational, BoundsError> {
    if n == 0 {
        return Err(invalid("n must be at least 1"));
    }
    // E, O: sums of the even- and odd-indexed lower coefficients
    // f(1) = 1 + E + O, f(-1) = (-1)^n + E - O
    let evens = n.div_ceil(2);
    let odds = n / 2;
    let sign = if n % 2 == 0 { 1 } else { -1 };
    // E + O = -1, E - O = -sign
    let e2 = -1 - sign;
    let o2 = -1 + sign;
    let count = signed_sum_count(evens, e2 / 2) * signed_sum_count(odds, o2 / 2);
    Ok(BigRational::new(count, BigInt::from(2).pow(n as u32)))
}

/// `P(f_n(1) = 0 or f_n(-1) = 0)` by inclusion-exclusion.
pub fn lo_exact_union(n: u64) -> Result<BigRational, BoundsError> {
    Ok(lo_exact_pm1(n, 1)? + lo_exact_pm1(n, -1)? - lo_exact_both(n)?)
}

/// `2 sqrt(2 / (pi (n+1))) - 4 / (pi (n+1))` for odd `n`.
pub fn figure_lower_bound(n: u64) -> Result<f64, BoundsError> {
    if n % 2 == 0 {
        return Err(BoundsError::EvenDegree(n));
    }
    let t = PI * (n + 1) as f64;
    Ok(2.0 * (2.0 / t).sqrt() - 4.0 / t)
}

/// A single named quantity: its natural log and, when small enough, the
/// exact value.
#[derive(Debug, Clone, Serialize)]
pub struct BoundEntry {
    pub name: String,
    pub log_value: f64,
    pub exact: Option<String>,
}

/// Product and sum bounds with their comparison sides for one `(k, M)`.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub k: usize,
    pub m: String,
    pub entries: Vec<BoundEntry>,
    pub verdicts: Vec<(String, bool)>,
}

impl BoundReport {
    pub fn holds(&self) -> bool {
        self.verdicts.iter().all(|(_, ok)| *ok)
    }
}

/// Exact evaluation is carried out for `k <= 12` and `M <= 10`.
pub fn bound_report(k: usize, m: &BigRational) -> Result<BoundReport, BoundsError> {
    check_km(k, m)?;
    let mf = m
        .to_f64()
        .filter(|x| x.is_finite())
        .ok_or_else(|| invalid("M out of range"))?;
    let exact_ok = k <= 12 && *m <= BigRational::from_integer(BigInt::from(10));
    let kk = k as f64;
    let half = (kk * kk + kk) / 2.0;
    let mut entries = vec![
        BoundEntry {
            name: "product".into(),
            log_value: log_product_bound(k, mf),
            exact: None,
        },
        BoundEntry {
            name: "sum".into(),
            log_value: log_sum_bound(k, mf),
            exact: None,
        },
        BoundEntry {
            name: "product_lower".into(),
            log_value: half * mf.ln() + (kk * kk - kk * kk.ln()) / 2.0,
            exact: None,
        },
        BoundEntry {
            name: "product_upper".into(),
            log_value: if k == 1 { (3.0 * mf).ln() } else { half * (1.0 + mf.ln()) },
            exact: None,
        },
        BoundEntry {
            name: "sum_upper".into(),
            log_value: kk * kk * (1.0 + mf.ln()),
            exact: None,
        },
    ];
    let mut verdicts = Vec::new();
    if exact_ok {
        let s = sandwich(k, m)?;
        entries[0].exact = Some(product_bound(k, m)?.to_string());
        entries[1].exact = Some(sum_bound(k, m)?.to_string());
        verdicts.push(("product_lower".to_string(), s.lower_holds));
        verdicts.push(("product_upper".to_string(), s.upper_holds));
        if let Some(ok) = s.sum_holds {
            verdicts.push(("sum_upper".to_string(), ok));
        }
        verdicts.push(("log_exact_agreement".to_string(), s.log_agreement() <= 1e-9));
    } else {
        let e = &entries;
        verdicts.push(("product_lower".to_string(), e[2].log_value <= e[0].log_value));
        verdicts.push(("product_upper".to_string(), e[0].log_value <= e[3].log_value));
        if k >= 2 {
            verdicts.push(("sum_upper".to_string(), e[1].log_value <= e[4].log_value));
        }
    }
    Ok(BoundReport {
        k,
        m: m.to_string(),
        entries,
        verdicts,
    })
}
