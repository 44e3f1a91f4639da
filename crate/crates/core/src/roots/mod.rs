//! Numeric localization of the complex roots of an integer polynomial.
//!
//! Roots come from Aberth-Ehrlich simultaneous iteration in `f64`. Each root
//! carries a backward-error residual; sets that fail to converge are flagged
//! rather than returned as if they were good. A second tier refines roots
//! with Newton steps in double-double arithmetic.

pub mod ddouble;

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::algebra::IntPoly;
use ddouble::{CDd, Dd};

/// Relative correction below which a root is considered converged.
pub const CONVERGENCE_TOL: f64 = 1e-12;
/// Relaxed tolerance accepted when corrections stagnate (repeated roots).
pub const CLUSTER_TOL: f64 = 1e-6;
pub const MAX_SWEEPS: usize = 500;
/// Backward-error ceiling for an accepted root.
pub const RESIDUAL_TOL: f64 = 1e-9;
/// Newton steps taken in double-double by [`refine_double_double`].
pub const REFINE_STEPS: usize = 30;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("the zero polynomial has no root set")]
    ZeroPolynomial,
    #[error("a constant polynomial has no roots")]
    Constant,
    #[error("root iteration did not converge")]
    Unconverged,
    #[error("polynomial is not monic with all other coefficients equal to +1 or -1")]
    NotSignClass,
}

/// Numeric roots of a polynomial, one per unit of degree.
#[derive(Debug, Clone)]
pub struct RootSet {
    pub roots: Vec<Complex64>,
    /// `|f(z)| / sum_i |a_i| |z|^i` per root.
    pub residuals: Vec<f64>,
    pub converged: bool,
    /// Corrections stagnated above the strict tolerance or roots nearly coincide.
    pub clustered: bool,
    pub sweeps: usize,
}

impl RootSet {
    pub fn max_modulus(&self) -> f64 {
        self.roots.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn min_modulus(&self) -> f64 {
        self.roots.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min)
    }
}

impl Serialize for RootSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<[f64; 2]> = self.roots.iter().map(|z| [z.re, z.im]).collect();
        let mut st = s.serialize_struct("RootSet", 4)?;
        st.serialize_field("roots", &pairs)?;
        st.serialize_field("residuals", &self.residuals)?;
        st.serialize_field("converged", &self.converged)?;
        st.serialize_field("clustered", &self.clustered)?;
        st.end()
    }
}

fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

fn backward_error(abs_coeffs: &[f64], value: Complex64, z: Complex64) -> f64 {
    let r = z.norm();
    let scale = abs_coeffs.iter().rev().fold(0.0, |acc, &c| acc * r + c);
    if scale == 0.0 {
        0.0
    } else {
        value.norm() / scale
    }
}

/// All complex roots of `f` by Aberth-Ehrlich iteration.
///
/// Zero roots are split off exactly. Initial guesses sit on the circle whose
/// radius is the Cauchy bound of the remaining factor.
pub fn find_roots(f: &IntPoly) -> Result<RootSet, RootError> {
    let deg = match f.degree() {
        None => return Err(RootError::ZeroPolynomial),
        Some(0) => return Err(RootError::Constant),
        Some(d) => d,
    };
    let zeros = f.coeffs().iter().take_while(|c| num_traits::Zero::is_zero(*c)).count();
    let raw = f.to_f64_coeffs();
    let coeffs: Vec<Complex64> = raw[zeros..].iter().map(|&c| Complex64::new(c, 0.0)).collect();
    let abs_coeffs: Vec<f64> = raw[zeros..].iter().map(|c| c.abs()).collect();
    let n = deg - zeros;

    let mut roots = vec![Complex64::new(0.0, 0.0); zeros];
    let mut residuals = vec![0.0; zeros];
    if n == 0 {
        return Ok(RootSet {
            roots,
            residuals,
            converged: true,
            clustered: zeros > 1,
            sweeps: 0,
        });
    }

    let lead = coeffs[n].norm();
    let radius = 1.0 + abs_coeffs[..n].iter().fold(0.0_f64, |m, &c| m.max(c / lead));
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, TAU * k as f64 / n as f64 + 0.4))
        .collect();

    let mut history: Vec<f64> = Vec::new();
    let mut converged = false;
    let mut stagnated = false;
    let mut sweeps = 0;
    while sweeps < MAX_SWEEPS {
        sweeps += 1;
        let mut worst = 0.0_f64;
        for i in 0..n {
            let (p, dp) = horner(&coeffs, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let mut repulsion = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    let d = z[i] - z[j];
                    if d.norm() > 0.0 {
                        repulsion += d.inv();
                    }
                }
            }
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !w.re.is_finite() || !w.im.is_finite() {
                continue;
            }
            z[i] -= w;
            worst = worst.max(w.norm() / z[i].norm().max(1.0));
        }
        history.push(worst);
        if worst < CONVERGENCE_TOL {
            converged = true;
            break;
        }
        // Repeated roots only converge linearly and then wobble at the
        // rounding floor; accept them at the relaxed tolerance.
        if sweeps >= 40 && worst < CLUSTER_TOL {
            let recent = history[sweeps - 20..].iter().cloned().fold(f64::INFINITY, f64::min);
            let earlier = history[..sweeps - 20].iter().cloned().fold(f64::INFINITY, f64::min);
            if recent > 0.5 * earlier {
                converged = true;
                stagnated = true;
                break;
            }
        }
    }
    if !converged {
        if let Some(&last) = history.last() {
            if last < CLUSTER_TOL {
                converged = true;
                stagnated = true;
            }
        }
    }

    for &r in &z {
        let (p, _) = horner(&coeffs, r);
        residuals.push(backward_error(&abs_coeffs, p, r));
    }
    roots.extend(z);
    let residual_ok = residuals.iter().all(|&r| r < RESIDUAL_TOL);
    let near_coincident = min_separation(&roots) < 1e-4;
    Ok(RootSet {
        roots,
        residuals,
        converged: converged && residual_ok,
        clustered: stagnated || near_coincident || zeros > 1,
        sweeps,
    })
}

fn min_separation(roots: &[Complex64]) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            let scale = roots[i].norm().max(roots[j].norm()).max(1.0);
            best = best.min((roots[i] - roots[j]).norm() / scale);
        }
    }
    best
}

/// Largest root modulus; errors when the root set is flagged unconverged.
pub fn max_root_modulus(f: &IntPoly) -> Result<f64, RootError> {
    let rs = find_roots(f)?;
    if !rs.converged {
        return Err(RootError::Unconverged);
    }
    Ok(rs.max_modulus())
}

/// For a monic polynomial whose other coefficients are all `+1` or `-1`:
/// true iff every root modulus lies in `[0.5 + 1e-6, 2 - 1e-6]`.
pub fn annulus_check(f: &IntPoly) -> Result<bool, RootError> {
    if !f.is_sign_class() || f.degree() == Some(0) {
        return Err(RootError::NotSignClass);
    }
    let rs = find_roots(f)?;
    if !rs.converged {
        return Err(RootError::Unconverged);
    }
    Ok(rs
        .roots
        .iter()
        .all(|z| (0.5 + 1e-6..=2.0 - 1e-6).contains(&z.norm())))
}

/// Roots refined by [`REFINE_STEPS`] Newton steps in double-double, with the
/// size of the final step for each root.
pub fn refine_double_double(f: &IntPoly, roots: &[Complex64]) -> Vec<(CDd, f64)> {
    let coeffs: Vec<Dd> = f.coeffs().iter().map(Dd::from_bigint).collect();
    roots
        .iter()
        .map(|&z0| {
            let mut z = CDd::from_c64(z0);
            let mut last_step = 0.0;
            for _ in 0..REFINE_STEPS {
                let mut p = CDd::ZERO;
                let mut dp = CDd::ZERO;
                for &c in coeffs.iter().rev() {
                    dp = dp * z + p;
                    p = p * z + CDd::real(c);
                }
                if p.re.hi == 0.0 && p.im.hi == 0.0 {
                    last_step = 0.0;
                    break;
                }
                if dp.re.hi == 0.0 && dp.im.hi == 0.0 {
                    break;
                }
                let step = p / dp;
                last_step = step.abs_f64();
                if !last_step.is_finite() {
                    break;
                }
                z = z - step;
            }
            (z, last_step)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn sorted(mut v: Vec<Complex64>) -> Vec<Complex64> {
        let key = |z: &Complex64| ((z.re * 1e8).round(), (z.im * 1e8).round());
        v.sort_by(|a, b| key(a).partial_cmp(&key(b)).unwrap());
        v
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn simple_real_roots() {
        let rs = find_roots(&p(&[-1, 0, 1])).unwrap();
        assert!(rs.converged);
        let r = sorted(rs.roots);
        assert!(close(r[0], Complex64::new(-1.0, 0.0), 1e-10));
        assert!(close(r[1], Complex64::new(1.0, 0.0), 1e-10));
    }

    #[test]
    fn unit_circle_roots() {
        let rs = find_roots(&p(&[1, 1, 1, 1])).unwrap();
        assert!(rs.converged);
        let r = sorted(rs.roots);
        assert!(close(r[0], Complex64::new(-1.0, 0.0), 1e-10));
        assert!(close(r[1], Complex64::new(0.0, -1.0), 1e-10));
        assert!(close(r[2], Complex64::new(0.0, 1.0), 1e-10));
    }

    #[test]
    fn double_root_relaxed() {
        let rs = find_roots(&p(&[1, -2, 1])).unwrap();
        assert!(rs.converged);
        for z in &rs.roots {
            assert!(close(*z, Complex64::new(1.0, 0.0), 1e-6), "{z}");
        }
        assert!(rs.clustered);
    }

    #[test]
    fn zero_roots_split_exactly() {
        let rs = find_roots(&p(&[0, 0, -4, 0, 1])).unwrap();
        assert_eq!(rs.roots.iter().filter(|z| z.norm() == 0.0).count(), 2);
        assert!(rs.converged);
    }

    #[test]
    fn rejects_degenerate_input() {
        assert_eq!(find_roots(&IntPoly::zero()).unwrap_err(), RootError::ZeroPolynomial);
        assert_eq!(find_roots(&p(&[3])).unwrap_err(), RootError::Constant);
    }

    #[test]
    fn max_modulus_examples() {
        assert!((max_root_modulus(&p(&[-4, 0, 1])).unwrap() - 2.0).abs() < 1e-10);
        assert!((max_root_modulus(&p(&[-8, 0, 0, 1])).unwrap() - 2.0).abs() < 1e-10);
        let m = max_root_modulus(&p(&[1, -1, -1, 1, 1, -1, 1])).unwrap();
        assert!(m > 0.5 && m < 2.0);
    }

    #[test]
    fn annulus_examples() {
        assert!(annulus_check(&p(&[1, 1, 1, 1])).unwrap());
        assert!(annulus_check(&p(&[1, 1])).unwrap());
        assert_eq!(annulus_check(&p(&[2, 1])), Err(RootError::NotSignClass));
        assert_eq!(annulus_check(&p(&[1, 0, 1])), Err(RootError::NotSignClass));
    }

    #[test]
    fn double_double_refinement_sharpens_double_root() {
        // (z - 1)^2 (z + 2)
        let f = p(&[2, -3, 0, 1]);
        let rs = find_roots(&f).unwrap();
        let refined = refine_double_double(&f, &rs.roots);
        let near_one: Vec<_> = refined
            .iter()
            .filter(|(z, _)| (z.to_c64() - Complex64::new(1.0, 0.0)).norm() < 1e-3)
            .collect();
        assert_eq!(near_one.len(), 2);
        for (z, _) in near_one {
            assert!((z.re - Dd::from_f64(1.0)).to_f64().abs() < 1e-12);
        }
    }
}
