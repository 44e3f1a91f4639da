use crate::algebra::IntPoly;
use crate::bounds::arith::{first_primes, is_prime, multiplicative_order};

use super::cyclotomic::cyclotomic_factors;
use super::finite_field::modp_irreducibility_certificate;
use super::report::{factor, Certificate, FactorReport, Method, Status};
use super::search::{low_degree_factors_subset, rational_root_factors, subset_count};
use super::AlgebraicError;

/// Number of small primes tried for a mod-p certificate.
pub const CERTIFICATE_PRIMES: usize = 25;

/// True iff `n + 1` is prime and 2 generates `(Z/(n+1))^*`. In that case every
/// monic degree-`n` polynomial with `±1` coefficients reduces to
/// `1 + z + ... + z^n` mod 2, which is irreducible there, so all of them are
/// irreducible over the integers.
pub fn rademacher_structural_certificate(n: usize) -> bool {
    let q = n as u64 + 1;
    n >= 1 && is_prime(q) && multiplicative_order(2, q) == Some(n as u64)
}

/// Work allowed for the final root-subset search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Effort {
    pub max_subsets: u128,
}

impl Effort {
    pub const FULL: Effort = Effort {
        max_subsets: u128::MAX,
    };
}

impl Default for Effort {
    fn default() -> Self {
        Effort {
            max_subsets: 5_000_000,
        }
    }
}

/// Decides irreducibility of a monic integer polynomial where it can.
///
/// Stages, cheapest first: degree one, the `±1` structural certificate,
/// integer roots, cyclotomic factors, a mod-p certificate over the first 25
/// primes, and finally a root-subset search up to half the degree if it fits
/// in the effort budget. `Irreducible` is returned only with a certificate,
/// `Reducible` only with an exactly verified factor; anything else is
/// `Unknown`.
pub fn classify_irreducibility(f: &IntPoly, effort: Effort) -> Result<FactorReport, AlgebraicError> {
    let n = match f.degree() {
        None | Some(0) => return Err(AlgebraicError::DegreeTooSmall),
        Some(_) if !f.is_monic() => return Err(AlgebraicError::NotMonic),
        Some(n) => n,
    };
    if n == 1 {
        return Ok(FactorReport::irreducible(Certificate::Linear));
    }
    if f.is_sign_class() && rademacher_structural_certificate(n) {
        return Ok(FactorReport::irreducible(Certificate::Structural { n }));
    }

    let linear = rational_root_factors(f)?;
    if !linear.is_empty() {
        let factors = linear
            .into_iter()
            .map(|h| factor(h, Method::RationalRoot))
            .collect();
        return Ok(FactorReport::new(Status::Reducible, factors, None));
    }
    if n <= 3 {
        return Ok(FactorReport::irreducible(Certificate::NoRationalRoot));
    }

    let cyclo = cyclotomic_factors(f, n);
    if let Some((kk, _)) = cyclo.iter().find(|(_, phi)| phi.degree() == Some(n)) {
        return Ok(FactorReport::irreducible(Certificate::Cyclotomic { index: *kk }));
    }
    if !cyclo.is_empty() {
        let factors = cyclo
            .into_iter()
            .map(|(_, phi)| factor(phi, Method::Cyclotomic))
            .collect();
        return Ok(FactorReport::new(Status::Reducible, factors, None));
    }

    if let Some(p) = modp_irreducibility_certificate(f, &first_primes(CERTIFICATE_PRIMES)) {
        return Ok(FactorReport::irreducible(Certificate::ModP { p }));
    }

    let half = n / 2;
    if subset_count(n, half) > effort.max_subsets {
        return Ok(FactorReport::new(Status::Unknown, Vec::new(), None));
    }
    let search = low_degree_factors_subset(f, half)?;
    Ok(match search.status {
        Status::NoFactorUpTo(_) => {
            FactorReport::irreducible(Certificate::CompleteSearch { degree: half })
        }
        Status::Reducible => search,
        Status::Irreducible | Status::Unknown => {
            // partial findings are still verified factors
            if search.factors.is_empty() {
                FactorReport::new(Status::Unknown, Vec::new(), None)
            } else {
                FactorReport::new(Status::Reducible, search.factors, None)
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn structural_examples() {
        assert!(rademacher_structural_certificate(2));
        assert!(rademacher_structural_certificate(4));
        assert!(!rademacher_structural_certificate(6));
        assert!(rademacher_structural_certificate(10));
        assert!(!rademacher_structural_certificate(1));
        assert!(!rademacher_structural_certificate(3));
    }

    #[test]
    fn classify_examples() {
        let r = classify_irreducibility(&p(&[1, 1, 1]), Effort::FULL).unwrap();
        assert_eq!(r.status, Status::Irreducible);

        let f = p(&[1, 0, -1, -1, 0, 1]);
        let r = classify_irreducibility(&f, Effort::FULL).unwrap();
        assert_eq!(r.status, Status::Reducible);
        assert!(r.polys().contains(&p(&[-1, 1])));
        assert!(r.verify(&f));

        let r = classify_irreducibility(&p(&[-1, -1, 1]), Effort::FULL).unwrap();
        assert_eq!(r.status, Status::Irreducible);
    }

    #[test]
    fn cyclotomic_input_is_irreducible() {
        let r = classify_irreducibility(&p(&[1, 0, 0, 0, 1]), Effort::FULL).unwrap();
        assert_eq!(r.status, Status::Irreducible);
        assert_eq!(r.certificate, Some(Certificate::Cyclotomic { index: 8 }));
    }

    #[test]
    fn product_of_quadratics_found_by_subset_search() {
        // (z^2 - 2)(z^2 - 3): no rational roots, no cyclotomic factor,
        // reducible mod every prime
        let f = &p(&[-2, 0, 1]) * &p(&[-3, 0, 1]);
        let r = classify_irreducibility(&f, Effort::FULL).unwrap();
        assert_eq!(r.status, Status::Reducible);
        assert_eq!(r.polys(), vec![p(&[-3, 0, 1]), p(&[-2, 0, 1])]);
    }

    #[test]
    fn budget_exhaustion_is_unknown() {
        let f = &p(&[-2, 0, 1]) * &p(&[-3, 0, 1]);
        let r = classify_irreducibility(&f, Effort { max_subsets: 3 }).unwrap();
        assert_eq!(r.status, Status::Unknown);
    }

    #[test]
    fn structural_degrees_are_all_irreducible() {
        for n in [2usize, 4] {
            for code in 0..(1u32 << n) {
                let mut c: Vec<i64> = (0..n).map(|i| if code >> i & 1 == 1 { 1 } else { -1 }).collect();
                c.push(1);
                let r = classify_irreducibility(&p(&c), Effort::FULL).unwrap();
                assert_eq!(r.status, Status::Irreducible);
            }
        }
    }
}
