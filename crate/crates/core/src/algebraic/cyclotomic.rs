//! Cyclotomic polynomials and the inverse of Euler's totient.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use crate::algebra::IntPoly;
use crate::bounds::arith::{divisors, totient_sieve};

fn cache() -> &'static RwLock<HashMap<u64, IntPoly>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, IntPoly>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `Phi_kk(z) = (z^kk - 1) / prod_{d | kk, d < kk} Phi_d(z)`.
///
/// Memoized process-wide; the divisors of `kk` are built first, in
/// increasing order.
pub fn cyclotomic(kk: u64) -> IntPoly {
    assert!(kk >= 1, "cyclotomic index must be positive");
    if let Some(p) = cache().read().unwrap().get(&kk) {
        return p.clone();
    }
    let mut local: HashMap<u64, IntPoly> = HashMap::new();
    for d in divisors(kk) {
        let known = cache().read().unwrap().get(&d).cloned();
        let phi = match known {
            Some(p) => p,
            None => {
                let mut p = IntPoly::x_pow_minus_one(d as usize);
                for e in divisors(d) {
                    if e < d {
                        p = p.exact_div(&local[&e]).expect("cyclotomic divisors divide exactly");
                    }
                }
                cache().write().unwrap().insert(d, p.clone());
                p
            }
        };
        local.insert(d, phi);
    }
    local.remove(&kk).unwrap()
}

/// All `kk` with `phi(kk) = d`, ascending.
///
/// Uses `phi(kk) >= sqrt(kk / 2)`, so the search stops at `kk = 2 d^2`.
pub fn inverse_totient(d: u64) -> Vec<u64> {
    if d == 0 {
        return Vec::new();
    }
    let limit = 2 * d * d;
    let phi = totient_sieve(limit as usize);
    (1..=limit).filter(|&kk| phi[kk as usize] == d).collect()
}

/// Every `(kk, Phi_kk)` with `deg Phi_kk <= dmax` dividing the monic `f`,
/// ordered by `kk`.
pub fn cyclotomic_factors(f: &IntPoly, dmax: usize) -> Vec<(u64, IntPoly)> {
    let deg = f.degree().unwrap_or(0);
    let mut out = Vec::new();
    for d in 1..=dmax.min(deg) {
        for kk in inverse_totient(d as u64) {
            let phi = cyclotomic(kk);
            if f.is_divisible_by(&phi).expect("cyclotomic polynomials are monic") {
                out.push((kk, phi));
            }
        }
    }
    out.sort_by_key(|(kk, _)| *kk);
    out
}
