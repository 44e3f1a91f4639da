//! The finite box of monic integer polynomials that can be the minimal
//! polynomial of an algebraic integer of degree `k` whose conjugates all lie
//! in the disc of radius `M`.

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::AlgebraicError;
use crate::algebra::IntPoly;

/// Candidates beyond this count are refused rather than enumerated.
pub const DEFAULT_CEILING: u64 = 100_000_000;

/// Coefficient box for monic degree-`k` polynomials with all roots in `|z| <= M`.
///
/// By Vieta, the coefficient of `z^{k-j}` is bounded by `C(k, j) M^j`;
/// `per_degree_bounds[j - 1]` holds that bound floored to an integer.
#[derive(Debug, Clone, PartialEq)]
pub struct CandidateBox {
    pub k: usize,
    pub m: f64,
    pub per_degree_bounds: Vec<BigInt>,
}

impl CandidateBox {
    pub fn new(k: usize, m: f64) -> Result<Self, AlgebraicError> {
        if k == 0 {
            return Err(AlgebraicError::InvalidParameter("k must be at least 1".into()));
        }
        if !(m >= 1.0) || !m.is_finite() {
            return Err(AlgebraicError::InvalidParameter(format!(
                "root bound M must be finite and at least 1, got {m}"
            )));
        }
        let m_exact = BigRational::from_float(m).expect("finite");
        let mut per_degree_bounds = Vec::with_capacity(k);
        let mut m_pow = BigRational::one();
        for j in 1..=k {
            m_pow *= &m_exact;
            let b = BigRational::from_integer(binomial(BigInt::from(k), BigInt::from(j))) * &m_pow;
            per_degree_bounds.push(b.floor().to_integer());
        }
        Ok(CandidateBox {
            k,
            m,
            per_degree_bounds,
        })
    }

    /// `prod_j (2 floor(C(k,j) M^j) + 1)`.
    pub fn cardinality(&self) -> BigInt {
        self.per_degree_bounds
            .iter()
            .map(|b| BigInt::from(2) * b + 1)
            .product()
    }

    /// Bound on `|c_i|`, the coefficient of `z^i`, for `i < k`.
    pub fn coeff_bound(&self, i: usize) -> &BigInt {
        &self.per_degree_bounds[self.k - i - 1]
    }

    fn checked(&self, ceiling: u64) -> Result<(), AlgebraicError> {
        let predicted = self.cardinality();
        if predicted > BigInt::from(ceiling) {
            return Err(AlgebraicError::CeilingExceeded { predicted, ceiling });
        }
        Ok(())
    }
}

/// Allowed values for one coefficient position.
#[derive(Debug, Clone)]
pub(crate) enum Slot {
    Range(i64, i64),
    List(Vec<i64>),
}

impl Slot {
    fn first(&self) -> Option<i64> {
        match self {
            Slot::Range(lo, hi) => (lo <= hi).then_some(*lo),
            Slot::List(v) => v.first().copied(),
        }
    }

    fn len(&self) -> u64 {
        match self {
            Slot::Range(lo, hi) => (hi - lo + 1).max(0) as u64,
            Slot::List(v) => v.len() as u64,
        }
    }

    fn value(&self, idx: u64) -> i64 {
        match self {
            Slot::Range(lo, _) => lo + idx as i64,
            Slot::List(v) => v[idx as usize],
        }
    }
}

/// Odometer over coefficient vectors `(c_0, ..., c_{k-1})`, `c_0` fastest.
#[derive(Debug, Clone)]
pub struct CandidateIter {
    slots: Vec<Slot>,
    idx: Vec<u64>,
    done: bool,
}

impl CandidateIter {
    pub(crate) fn from_slots(slots: Vec<Slot>) -> Self {
        let done = slots.iter().any(|s| s.first().is_none());
        CandidateIter {
            idx: vec![0; slots.len()],
            slots,
            done,
        }
    }

    /// Number of polynomials the iterator yields in total.
    pub fn total(&self) -> u64 {
        self.slots.iter().map(Slot::len).product()
    }
}

impl Iterator for CandidateIter {
    type Item = IntPoly;

    fn next(&mut self) -> Option<IntPoly> {
        if self.done {
            return None;
        }
        let mut coeffs: Vec<BigInt> = self
            .slots
            .iter()
            .zip(&self.idx)
            .map(|(s, &i)| BigInt::from(s.value(i)))
            .collect();
        coeffs.push(BigInt::one());
        let out = IntPoly::new(coeffs);

        let mut pos = 0;
        loop {
            if pos == self.slots.len() {
                self.done = true;
                break;
            }
            self.idx[pos] += 1;
            if self.idx[pos] < self.slots[pos].len() {
                break;
            }
            self.idx[pos] = 0;
            pos += 1;
        }
        Some(out)
    }
}

pub(crate) fn box_slots(b: &CandidateBox) -> Vec<Slot> {
    (0..b.k)
        .map(|i| {
            let bound = b.coeff_bound(i).to_i64().expect("bounded by the ceiling");
            Slot::Range(-bound, bound)
        })
        .collect()
}

/// Every monic degree-`k` polynomial in the coefficient box for root bound `M`.
pub fn enumerate_candidates(k: usize, m: f64, ceiling: u64) -> Result<CandidateIter, AlgebraicError> {
    let b = CandidateBox::new(k, m)?;
    b.checked(ceiling)?;
    Ok(CandidateIter::from_slots(box_slots(&b)))
}

/// As [`enumerate_candidates`], but constant terms restricted to divisors of
/// `f0` when `f0` is nonzero: a monic factor's constant term divides `f(0)`.
pub(crate) fn enumerate_pruned(
    b: &CandidateBox,
    f0: &BigInt,
    ceiling: u64,
) -> Result<CandidateIter, AlgebraicError> {
    b.checked(ceiling)?;
    let mut slots = box_slots(b);
    if !f0.is_zero() {
        let bound = b.coeff_bound(0).to_i64().expect("bounded by the ceiling");
        let mut allowed = Vec::new();
        for c in 1..=bound {
            if (f0 % BigInt::from(c)).is_zero() {
                allowed.push(-c);
                allowed.push(c);
            }
        }
        allowed.sort_unstable();
        slots[0] = Slot::List(allowed);
    }
    Ok(CandidateIter::from_slots(slots))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(k: usize, m: f64) -> u64 {
        enumerate_candidates(k, m, DEFAULT_CEILING).unwrap().count() as u64
    }

    #[test]
    fn linear_unit_box() {
        let got: Vec<IntPoly> = enumerate_candidates(1, 1.0, DEFAULT_CEILING).unwrap().collect();
        assert_eq!(
            got,
            vec![
                IntPoly::from_i64s(&[-1, 1]),
                IntPoly::from_i64s(&[0, 1]),
                IntPoly::from_i64s(&[1, 1])
            ]
        );
    }

    #[test]
    fn counts_match_product_formula() {
        assert_eq!(count(2, 1.0), 15);
        assert_eq!(CandidateBox::new(2, 1.0).unwrap().cardinality(), BigInt::from(15));
        assert_eq!(count(1, 2.0), 5);
        // k = 3, M = 2: bounds 6, 12, 8
        let b = CandidateBox::new(3, 2.0).unwrap();
        assert_eq!(b.per_degree_bounds, vec![6, 12, 8].into_iter().map(BigInt::from).collect::<Vec<_>>());
        assert_eq!(count(3, 2.0), 13 * 25 * 17);
    }

    #[test]
    fn real_bound_is_floored() {
        let b = CandidateBox::new(2, 1.5).unwrap();
        // floor(2 * 1.5) = 3, floor(1.5^2) = 2
        assert_eq!(b.per_degree_bounds, vec![BigInt::from(3), BigInt::from(2)]);
        assert_eq!(count(2, 1.5), 7 * 5);
    }

    #[test]
    fn ceiling_refuses() {
        match enumerate_candidates(6, 2.0, 1000) {
            Err(AlgebraicError::CeilingExceeded { predicted, ceiling }) => {
                assert_eq!(ceiling, 1000);
                assert!(predicted > BigInt::from(1000));
            }
            other => panic!("expected refusal, got {other:?}"),
        }
    }

    #[test]
    fn bad_parameters() {
        assert!(CandidateBox::new(0, 2.0).is_err());
        assert!(CandidateBox::new(2, 0.5).is_err());
        assert!(CandidateBox::new(2, f64::NAN).is_err());
    }

    #[test]
    fn pruning_keeps_divisors_only() {
        let b = CandidateBox::new(1, 3.0).unwrap();
        let got: Vec<IntPoly> = enumerate_pruned(&b, &BigInt::from(2), DEFAULT_CEILING).unwrap().collect();
        let consts: Vec<i64> = got.iter().map(|p| p.to_i64_coeffs().unwrap()[0]).collect();
        assert_eq!(consts, vec![-2, -1, 1, 2]);
    }
}
