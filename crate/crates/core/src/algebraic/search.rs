//! Searches for monic integer factors of low degree.
//!
//! Two independent routes are provided: trial division by every candidate in
//! the coefficient box, and reconstruction from subsets of numeric roots.
//! Both accept a factor only after exact division.

use std::collections::HashSet;
use std::ops::{Mul, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use super::candidates::{enumerate_pruned, CandidateBox};
use super::report::{factor, Factor, FactorReport, Method, Status};
use super::AlgebraicError;
use crate::algebra::{cauchy_root_bound, IntPoly};
use crate::roots::ddouble::{CDd, Dd};
use crate::roots::{find_roots, refine_double_double};

/// Acceptance window for rounding symmetric functions to integers.
pub const ROUNDING_WINDOW: f64 = 0.3;
/// Largest relative Newton step tolerated after double-double refinement.
pub const REFINED_STEP_TOL: f64 = 1e-8;

fn require_monic(f: &IntPoly) -> Result<usize, AlgebraicError> {
    match f.degree() {
        None | Some(0) => Err(AlgebraicError::DegreeTooSmall),
        Some(_) if !f.is_monic() => Err(AlgebraicError::NotMonic),
        Some(d) => Ok(d),
    }
}

/// `z - r` for every integer root `r` of the monic polynomial `f`.
pub fn rational_root_factors(f: &IntPoly) -> Result<Vec<IntPoly>, AlgebraicError> {
    require_monic(f)?;
    let mut out = Vec::new();
    let zeros = f.coeffs().iter().take_while(|c| c.is_zero()).count();
    if zeros > 0 {
        out.push(IntPoly::monomial(1));
    }
    let g = IntPoly::new(f.coeffs()[zeros..].to_vec());
    if g.degree().unwrap_or(0) == 0 {
        return Ok(out);
    }
    // Integer roots divide g(0) and lie strictly inside the Cauchy bound.
    let g0 = g.coeff(0).abs();
    let bound = cauchy_root_bound(&g).expect("monic, degree >= 1");
    let mut candidates = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= g0 && d < bound {
        if (&g0 % &d).is_zero() {
            candidates.push(d.clone());
            let co = &g0 / &d;
            if co < bound {
                candidates.push(co);
            }
        }
        d += 1;
    }
    candidates.sort();
    candidates.dedup();
    for c in candidates {
        for r in [-c.clone(), c] {
            if g.eval(&r).is_zero() {
                out.push(IntPoly::linear(&r));
            }
        }
    }
    out.sort_by(|a, b| a.report_order(b));
    Ok(out)
}

/// Trial division of `f` by every box candidate of degree `1..=min(k, deg f - 1)`.
///
/// Complete for the given `(k, M)`: any monic factor whose roots all have
/// modulus at most `M` is found. `M` defaults to the Cauchy bound of `f`.
pub fn low_degree_factors_enumerate(
    f: &IntPoly,
    k: usize,
    m: Option<f64>,
    ceiling: u64,
) -> Result<FactorReport, AlgebraicError> {
    let n = require_monic(f)?;
    let m = match m {
        Some(m) => m,
        None => cauchy_root_bound(f)
            .expect("monic")
            .to_f64()
            .unwrap_or(f64::INFINITY),
    };
    let kmax = k.min(n - 1);
    let boxes: Vec<CandidateBox> = (1..=kmax)
        .map(|d| CandidateBox::new(d, m))
        .collect::<Result<_, _>>()?;
    let total: BigInt = boxes.iter().map(|b| b.cardinality()).sum();
    if total > BigInt::from(ceiling) {
        return Err(AlgebraicError::CeilingExceeded {
            predicted: total,
            ceiling,
        });
    }
    let f0 = f.coeff(0);
    let mut factors = Vec::new();
    for b in &boxes {
        for h in enumerate_pruned(b, &f0, ceiling)? {
            if f.is_divisible_by(&h).expect("monic candidate") {
                factors.push(factor(h, Method::Enumerate));
            }
        }
    }
    Ok(finish(factors, k))
}

fn finish(factors: Vec<Factor>, k: usize) -> FactorReport {
    let status = if factors.is_empty() {
        Status::NoFactorUpTo(k)
    } else {
        Status::Reducible
    };
    FactorReport::new(status, factors, None)
}

/// Complex scalar usable by the subset scan.
trait SubsetScalar: Copy + Mul<Output = Self> + Sub<Output = Self> {
    fn one() -> Self;
    /// Nearest integer to the real part and the distance to it.
    fn round_re(self) -> (f64, f64);
    fn abs_im(self) -> f64;
}

impl SubsetScalar for Complex64 {
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn round_re(self) -> (f64, f64) {
        let r = self.re.round();
        (r, (self.re - r).abs())
    }
    fn abs_im(self) -> f64 {
        self.im.abs()
    }
}

impl SubsetScalar for CDd {
    fn one() -> Self {
        CDd::real(Dd::from_f64(1.0))
    }
    fn round_re(self) -> (f64, f64) {
        (self.re.round(), self.re.frac_dist())
    }
    fn abs_im(self) -> f64 {
        self.im.to_f64().abs()
    }
}

struct SubsetScan<'a, T> {
    f: &'a IntPoly,
    f0: BigInt,
    roots: &'a [T],
    kmax: usize,
    seen: HashSet<IntPoly>,
    found: Vec<Factor>,
}

impl<T: SubsetScalar> SubsetScan<'_, T> {
    fn run(&mut self) {
        let start = vec![T::one()];
        self.dfs(0, &start);
    }

    /// `prod` holds the coefficients (ascending) of the product over the
    /// chosen roots; extend it by each later root in turn.
    fn dfs(&mut self, next: usize, prod: &[T]) {
        if prod.len() - 1 == self.kmax {
            return;
        }
        for i in next..self.roots.len() {
            let r = self.roots[i];
            let mut ext = Vec::with_capacity(prod.len() + 1);
            // (z - r) * prod
            for j in 0..=prod.len() {
                let hi = if j >= 1 { prod[j - 1] } else { T::one() - T::one() };
                let lo = if j < prod.len() { prod[j] * r } else { T::one() - T::one() };
                ext.push(hi - lo);
            }
            self.check(&ext);
            self.dfs(i + 1, &ext);
        }
    }

    fn check(&mut self, coeffs: &[T]) {
        let d = coeffs.len() - 1;
        let mut ints = Vec::with_capacity(coeffs.len());
        for c in &coeffs[..d] {
            let (r, dist) = c.round_re();
            if dist > ROUNDING_WINDOW || c.abs_im() > ROUNDING_WINDOW {
                return;
            }
            ints.push(r);
        }
        if !self.f0.is_zero() {
            let c0 = BigInt::from_f64(ints[0]).unwrap_or_default();
            if c0.is_zero() || !(&self.f0 % &c0).is_zero() {
                return;
            }
        }
        let mut big: Vec<BigInt> = ints
            .iter()
            .map(|&x| BigInt::from_f64(x).unwrap_or_default())
            .collect();
        big.push(BigInt::one());
        let h = IntPoly::new(big);
        if self.seen.contains(&h) {
            return;
        }
        if self.f.is_divisible_by(&h).expect("monic") {
            self.seen.insert(h.clone());
            self.found.push(factor(h, Method::Subset));
        }
    }
}

fn scan<T: SubsetScalar>(f: &IntPoly, roots: &[T], kmax: usize) -> Vec<Factor> {
    let mut s = SubsetScan {
        f,
        f0: f.coeff(0),
        roots,
        kmax,
        seen: HashSet::new(),
        found: Vec::new(),
    };
    s.run();
    s.found
}

/// Factors of degree `1..=min(k, deg f - 1)` reconstructed from subsets of
/// the numeric roots.
///
/// Each subset's elementary symmetric functions are rounded; a candidate
/// within [`ROUNDING_WINDOW`] of integrality is kept only if it divides `f`
/// exactly. Unconverged or clustered root sets are first refined in
/// double-double; if that refinement does not settle, the status is `Unknown`.
pub fn low_degree_factors_subset(f: &IntPoly, k: usize) -> Result<FactorReport, AlgebraicError> {
    let n = require_monic(f)?;
    let kmax = k.min(n - 1);
    if kmax == 0 {
        return Ok(finish(Vec::new(), k));
    }
    let rs = match find_roots(f) {
        Ok(rs) => rs,
        Err(_) => return Ok(FactorReport::new(Status::Unknown, Vec::new(), None)),
    };
    if rs.converged && !rs.clustered {
        return Ok(finish(scan(f, &rs.roots, kmax), k));
    }
    let refined = refine_double_double(f, &rs.roots);
    let settled = refined
        .iter()
        .all(|(z, step)| *step <= REFINED_STEP_TOL * z.abs_f64().max(1.0));
    let roots: Vec<CDd> = refined.into_iter().map(|(z, _)| z).collect();
    let found = scan(f, &roots, kmax);
    if settled {
        Ok(finish(found, k))
    } else {
        Ok(FactorReport::new(Status::Unknown, found, None))
    }
}

/// Number of root subsets the subset search visits for degree `n` up to `kmax`.
pub fn subset_count(n: usize, kmax: usize) -> u128 {
    let mut total: u128 = 0;
    let mut c: u128 = 1;
    for d in 1..=kmax.min(n) {
        c = c * (n - d + 1) as u128 / d as u128;
        total += c;
    }
    total
}
