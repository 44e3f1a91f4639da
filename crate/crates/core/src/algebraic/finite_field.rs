//! Polynomials over a prime field `F_p`, enough for Rabin's irreducibility
//! test and distinct-degree factorization.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::algebra::{mul_mod, pow_mod, IntPoly};
use crate::bounds::arith::factorize;

/// Dense polynomial over `F_p`, ascending, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpPoly {
    p: u64,
    c: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, mut c: Vec<u64>) -> Self {
        for x in c.iter_mut() {
            *x %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        FpPoly { p, c }
    }

    pub fn reduce(f: &IntPoly, p: u64) -> Self {
        let pb = BigInt::from(p);
        Self::new(
            p,
            f.coeffs()
                .iter()
                .map(|x| x.mod_floor(&pb).to_u64().unwrap())
                .collect(),
        )
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn is_one(&self) -> bool {
        self.c == [1]
    }

    pub fn sub(&self, o: &FpPoly) -> FpPoly {
        let n = self.c.len().max(o.c.len());
        let p = self.p;
        FpPoly::new(
            p,
            (0..n)
                .map(|i| {
                    let a = self.c.get(i).copied().unwrap_or(0);
                    let b = o.c.get(i).copied().unwrap_or(0);
                    (a + p - b) % p
                })
                .collect(),
        )
    }

    pub fn mul(&self, o: &FpPoly) -> FpPoly {
        if self.is_zero() || o.is_zero() {
            return FpPoly::new(self.p, vec![]);
        }
        let p = self.p;
        let mut out = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(a, b, p)) % p;
            }
        }
        FpPoly::new(p, out)
    }

    /// Remainder modulo a nonzero divisor.
    pub fn rem(&self, m: &FpPoly) -> FpPoly {
        let p = self.p;
        let dm = m.degree().expect("nonzero modulus");
        let inv = pow_mod(m.c[dm], p - 2, p);
        let mut r = self.c.clone();
        while r.len() > dm && !r.is_empty() {
            let top = r.len() - 1;
            let q = mul_mod(r[top], inv, p);
            if q != 0 {
                for j in 0..=dm {
                    let idx = top - dm + j;
                    r[idx] = (r[idx] + p - mul_mod(q, m.c[j], p)) % p;
                }
            }
            r.pop();
            while r.last() == Some(&0) {
                r.pop();
            }
        }
        FpPoly::new(p, r)
    }

    pub fn derivative(&self) -> FpPoly {
        let p = self.p;
        FpPoly::new(
            p,
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &a)| mul_mod(a, i as u64 % p, p))
                .collect(),
        )
    }

    pub fn gcd(&self, o: &FpPoly) -> FpPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    fn monic(self) -> FpPoly {
        match self.c.last() {
            None => self,
            Some(&lead) => {
                let inv = pow_mod(lead, self.p - 2, self.p);
                let p = self.p;
                FpPoly::new(p, self.c.iter().map(|&x| mul_mod(x, inv, p)).collect())
            }
        }
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &FpPoly) -> FpPoly {
        let mut acc = FpPoly::new(self.p, vec![1]).rem(m);
        let mut base = self.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        let d = self.derivative();
        !d.is_zero() && self.gcd(&d).is_one()
    }
}

/// Rabin's test: a monic `f` of degree `n` is irreducible over `F_p` iff
/// `x^{p^n} = x mod f` and `gcd(x^{p^{n/l}} - x, f) = 1` for each prime `l | n`.
///
/// Returns `None` when the reduction is not squarefree (or loses degree).
pub fn is_irreducible_mod_p(f: &IntPoly, p: u64) -> Option<bool> {
    let n = f.degree()?;
    let fp = FpPoly::reduce(f, p);
    if fp.degree() != Some(n) || !fp.is_squarefree() {
        return None;
    }
    if n == 1 {
        return Some(true);
    }
    let x = FpPoly::x(p);
    // frob[i] = x^{p^i} mod f
    let mut frob = vec![x.rem(&fp)];
    for _ in 0..n {
        let next = frob.last().unwrap().pow_mod(p, &fp);
        frob.push(next);
    }
    if frob[n] != x.rem(&fp) {
        return Some(false);
    }
    for (l, _) in factorize(n as u64) {
        let g = frob[n / l as usize].sub(&x).gcd(&fp);
        if !g.is_one() {
            return Some(false);
        }
    }
    Some(true)
}

/// First prime in `primes` modulo which `f` is irreducible. A returned prime
/// certifies irreducibility over the integers (and the rationals, by Gauss).
pub fn modp_irreducibility_certificate(f: &IntPoly, primes: &[u64]) -> Option<u64> {
    if !f.is_monic() || f.degree().unwrap_or(0) == 0 {
        return None;
    }
    primes
        .iter()
        .copied()
        .find(|&p| is_irreducible_mod_p(f, p) == Some(true))
}

/// Degrees of the irreducible factors of a squarefree `f mod p`, by
/// distinct-degree factorization; `None` if the reduction is not squarefree.
pub fn factor_degrees_mod_p(f: &IntPoly, p: u64) -> Option<Vec<usize>> {
    let n = f.degree()?;
    let mut rest = FpPoly::reduce(f, p);
    if rest.degree() != Some(n) || !rest.is_squarefree() {
        return None;
    }
    let x = FpPoly::x(p);
    let mut h = x.clone();
    let mut degs = Vec::new();
    let mut i = 0;
    while rest.degree().unwrap_or(0) > 0 {
        i += 1;
        if 2 * i > rest.degree().unwrap() {
            degs.push(rest.degree().unwrap());
            break;
        }
        h = h.pow_mod(p, &rest);
        let g = h.sub(&x).gcd(&rest);
        let dg = g.degree().unwrap_or(0);
        if dg > 0 {
            degs.extend(std::iter::repeat_n(i, dg / i));
            rest = divide_exact(&rest, &g);
            h = h.rem(&rest);
        }
    }
    Some(degs)
}

fn divide_exact(a: &FpPoly, b: &FpPoly) -> FpPoly {
    let p = a.p;
    let db = b.degree().unwrap();
    let inv = pow_mod(b.c[db], p - 2, p);
    let mut r = a.c.clone();
    let da = a.degree().unwrap();
    let mut q = vec![0u64; da - db + 1];
    for i in (0..=da - db).rev() {
        let coef = mul_mod(r[i + db], inv, p);
        q[i] = coef;
        for j in 0..=db {
            r[i + j] = (r[i + j] + p - mul_mod(coef, b.c[j], p)) % p;
        }
    }
    FpPoly::new(p, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::arith::first_primes;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn certificate_examples() {
        assert_eq!(modp_irreducibility_certificate(&p(&[1, 1, 1]), &[2]), Some(2));
        assert_eq!(modp_irreducibility_certificate(&p(&[-1, 0, 1]), &first_primes(25)), None);
        let primes: Vec<u64> = first_primes(26);
        assert_eq!(*primes.last().unwrap(), 101);
        assert_eq!(modp_irreducibility_certificate(&p(&[1, 0, 0, 0, 1]), &primes), None);
    }

    #[test]
    fn phi8_splits_everywhere() {
        // z^4 + 1 factors mod every prime; for odd p into pieces of degree <= 2
        let f = p(&[1, 0, 0, 0, 1]);
        for q in first_primes(26).into_iter().skip(1) {
            let degs = factor_degrees_mod_p(&f, q).unwrap();
            assert_eq!(degs.iter().sum::<usize>(), 4);
            assert!(degs.iter().all(|&d| d <= 2), "p = {q}: {degs:?}");
        }
        // mod 2 it is (z + 1)^4
        assert_eq!(factor_degrees_mod_p(&f, 2), None);
    }

    #[test]
    fn rabin_matches_brute_force_over_f2_and_f3() {
        // A monic polynomial of degree n <= 3 over F_q is irreducible iff it has no root.
        for q in [2u64, 3] {
            for n in 2..=3usize {
                let total = q.pow(n as u32);
                for code in 0..total {
                    let mut c: Vec<i64> = (0..n).map(|i| ((code / q.pow(i as u32)) % q) as i64).collect();
                    c.push(1);
                    let f = p(&c);
                    let has_root = (0..q as i64).any(|x| {
                        num_integer::Integer::mod_floor(&f.eval_i64(x), &BigInt::from(q)) == BigInt::from(0)
                    });
                    match is_irreducible_mod_p(&f, q) {
                        Some(irr) => assert_eq!(irr, !has_root, "{f} mod {q}"),
                        None => assert!(has_root, "{f} mod {q} non-squarefree yet rootless"),
                    }
                }
            }
        }
    }

    #[test]
    fn squarefree_detection() {
        assert!(!FpPoly::reduce(&p(&[1, 2, 1]), 5).is_squarefree());
        assert!(FpPoly::reduce(&p(&[1, 1, 1]), 5).is_squarefree());
    }
}
