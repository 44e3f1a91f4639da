//! Square integer matrices with exact determinant, rank and characteristic
//! polynomial.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::{bigint_str, IntPoly};
use super::AlgebraError;

/// Row-major `n x n` matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(n: usize, entries: Vec<BigInt>) -> Result<Self, AlgebraError> {
        if entries.len() != n * n {
            return Err(AlgebraError::NotSquare {
                n,
                len: entries.len(),
            });
        }
        Ok(IntMatrix { n, entries })
    }

    pub fn zeros(n: usize) -> Self {
        IntMatrix {
            n,
            entries: vec![BigInt::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self, AlgebraError> {
        let n = rows.len();
        let entries: Vec<BigInt> = rows.iter().flatten().map(|&x| BigInt::from(x)).collect();
        Self::new(n, entries)
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        IntMatrix { n, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn transpose(&self) -> IntMatrix {
        Self::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn mul(&self, rhs: &IntMatrix) -> Result<IntMatrix, AlgebraError> {
        if self.n != rhs.n {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.n,
                got: rhs.n,
            });
        }
        let n = self.n;
        Ok(Self::from_fn(n, |i, j| {
            let mut acc = BigInt::zero();
            for k in 0..n {
                let a = self.get(i, k);
                if !a.is_zero() {
                    acc += a * rhs.get(k, j);
                }
            }
            acc
        }))
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>, AlgebraError> {
        if v.len() != self.n {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.n,
                got: v.len(),
            });
        }
        Ok((0..self.n)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, _)| !a.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    /// `x I - self`.
    pub fn shifted_negation(&self, x: &BigInt) -> IntMatrix {
        Self::from_fn(self.n, |i, j| {
            let v = -self.get(i, j);
            if i == j {
                v + x
            } else {
                v
            }
        })
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        let n = self.n;
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut sign = false;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = !sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        if sign {
            -d
        } else {
            d
        }
    }

    /// Characteristic polynomial `det(z I - self)`.
    ///
    /// Evaluates the determinant at `z = 0..=n` and interpolates in the
    /// falling-factorial basis. For an integer polynomial the `j`-th forward
    /// difference at zero is divisible by `j!`, so every division is exact.
    pub fn charpoly(&self) -> IntPoly {
        let n = self.n;
        let mut diffs: Vec<BigInt> = (0..=n)
            .map(|x| self.shifted_negation(&BigInt::from(x)).det())
            .collect();
        // Newton coefficients a_j = Δ^j f(0) / j!.
        let mut newton = Vec::with_capacity(n + 1);
        let mut fact = BigInt::one();
        for j in 0..=n {
            if j > 0 {
                fact *= j;
            }
            newton.push(&diffs[0] / &fact);
            for i in 0..n - j {
                diffs[i] = &diffs[i + 1] - &diffs[i];
            }
        }
        // Sum a_j * z(z-1)...(z-j+1).
        let mut result = IntPoly::zero();
        let mut falling = IntPoly::one();
        for (j, a) in newton.iter().enumerate() {
            if !a.is_zero() {
                result = &result + &(&falling * &IntPoly::constant(a.clone()));
            }
            falling = &falling * &IntPoly::linear(&BigInt::from(j));
        }
        result
    }

    /// Exact rank of an arbitrary `rows x cols` integer array by fraction-free
    /// row echelon reduction.
    pub fn rank_of(rows: usize, cols: usize, data: &[BigInt]) -> usize {
        assert_eq!(data.len(), rows * cols);
        let mut a: Vec<Vec<BigInt>> = data.chunks(cols.max(1)).map(|r| r.to_vec()).collect();
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(p, r);
            for i in r + 1..rows {
                for j in c + 1..cols {
                    let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                    a[i][j] = v / &prev;
                }
                a[i][c] = BigInt::zero();
            }
            prev = a[r][c].clone();
            r += 1;
        }
        r
    }

    pub fn rank(&self) -> usize {
        Self::rank_of(self.n, self.n, &self.entries)
    }

    /// Rank over the prime field `F_p`.
    pub fn rank_mod_p(&self, p: u64) -> usize {
        let n = self.n;
        let pb = BigInt::from(p);
        let mut a: Vec<Vec<u64>> = (0..n)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| x.mod_floor(&pb).to_u64().unwrap())
                    .collect()
            })
            .collect();
        rank_mod_p_u64(&mut a, p)
    }

    pub fn max_abs_entry(&self) -> BigInt {
        self.entries.iter().map(|x| x.abs()).max().unwrap_or_default()
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

/// Gaussian elimination over `F_p` on a dense row list; destroys `a`.
pub(crate) fn rank_mod_p_u64(a: &mut [Vec<u64>], p: u64) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(piv, r);
        let inv = pow_mod(a[r][c], p - 2, p);
        for i in r + 1..rows {
            if a[i][c] == 0 {
                continue;
            }
            let factor = mul_mod(a[i][c], inv, p);
            for j in c..cols {
                let sub = mul_mod(factor, a[r][j], p);
                a[i][j] = (a[i][j] + p - sub) % p;
            }
        }
        r += 1;
    }
    r
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.n)
            .map(|i| self.row(i).iter().map(|x| x.to_string()).collect())
            .collect();
        write!(f, "IntMatrix{rows:?}")
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    n: usize,
    #[serde(
        serialize_with = "bigint_str::serialize_vec",
        deserialize_with = "bigint_str::deserialize_vec"
    )]
    entries: Vec<BigInt>,
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MatrixRepr {
            n: self.n,
            entries: self.entries.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = MatrixRepr::deserialize(d)?;
        IntMatrix::new(r.n, r.entries).map_err(serde::de::Error::custom)
    }
}
