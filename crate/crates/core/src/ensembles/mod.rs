//! Seeded samplers for the random polynomial and random matrix models.
//!
//! Every sample is a pure function of `(spec, seed, stream index)`. The
//! generator is ChaCha8 keyed by `seed_from_u64(seed)` with the stream
//! index selecting the ChaCha stream; all sampling primitives on top of it
//! are defined here, so outputs do not depend on any external sampling code.

use num_bigint::BigInt;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{IntMatrix, IntPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnsembleError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("model {0} does not produce a matrix")]
    NotMatrix(&'static str),
}

fn invalid(msg: impl Into<String>) -> EnsembleError {
    EnsembleError::InvalidParameter(msg.into())
}

/// `(master seed, stream index)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeedStream {
    pub seed: u64,
    pub index: u64,
}

impl SeedStream {
    pub fn new(seed: u64, index: u64) -> Self {
        SeedStream { seed, index }
    }

    pub fn sampler(&self) -> Sampler {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.index);
        Sampler { rng }
    }
}

/// Portable sampling primitives over a ChaCha8 stream.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// `+1` or `-1`, from the top bit.
    pub fn sign(&mut self) -> i64 {
        if self.next_u64() >> 63 == 1 {
            1
        } else {
            -1
        }
    }

    pub fn bit(&mut self) -> bool {
        self.next_u64() >> 63 == 1
    }

    /// Uniform on `0..n` by rejection from the largest multiple of `n`.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "empty range");
        let zone = u64::MAX - (u64::MAX % n + 1) % n;
        loop {
            let x = self.next_u64();
            if x <= zone {
                return x % n;
            }
        }
    }

    /// Uniform on `[0, 1)` with 53 random bits.
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.unit() < p
    }

    /// Uniform permutation of `0..n` by Fisher-Yates.
    pub fn permutation(&mut self, n: usize) -> Vec<usize> {
        let mut v: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = self.below(i as u64 + 1) as usize;
            v.swap(i, j);
        }
        v
    }

    /// Uniform `s`-subset of `0..n`, as a 0/1 indicator.
    pub fn subset_indicator(&mut self, n: usize, s: usize) -> Vec<bool> {
        let mut v: Vec<usize> = (0..n).collect();
        for i in 0..s {
            let j = i + self.below((n - i) as u64) as usize;
            v.swap(i, j);
        }
        let mut out = vec![false; n];
        for &i in &v[..s] {
            out[i] = true;
        }
        out
    }
}

/// Random model and its parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "kebab-case", deny_unknown_fields)]
pub enum EnsembleSpec {
    /// Monic, lower coefficients independent `+-1`.
    RademacherPoly { n: usize },
    /// Monic, lower coefficients uniform on `0..=N`.
    UniformPoly {
        n: usize,
        #[serde(rename = "N")]
        big_n: u64,
    },
    /// Constant and leading coefficient 1, the rest independent 0/1.
    ZeroOneKonyagin { n: usize },
    IidSignMatrix { n: usize },
    /// Symmetric with independent entries on and above the diagonal: uniform
    /// on `+-{1..B}` when `mean_zero`, uniform on `{0..B}` otherwise.
    SymmetricBounded {
        n: usize,
        #[serde(rename = "B")]
        b: u64,
        mean_zero: bool,
    },
    /// `+-1` entries; `x_ij = x_ji xi_ij` below the diagonal with
    /// `P(xi = 1) = (1 + rho) / 2`.
    Elliptical { n: usize, rho: f64 },
    /// Product of `m` independent sign matrices.
    ProductSigns { n: usize, m: usize },
    /// Adjacency matrix of `G(n, p)`.
    ErdosRenyi { n: usize, p: f64 },
    /// Independent 0/1 entries with `P(1) = p`, diagonal included.
    DirectedBernoulli { n: usize, p: f64 },
    /// Independent rows, each uniform among 0/1 vectors with `s` ones.
    FixedOutdegree { n: usize, s: usize },
    PermutationMatrix { n: usize },
}

/// Output of [`sample`].
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Sample {
    Poly(IntPoly),
    Matrix(IntMatrix),
}

impl EnsembleSpec {
    pub fn name(&self) -> &'static str {
        match self {
            EnsembleSpec::RademacherPoly { .. } => "rademacher-poly",
            EnsembleSpec::UniformPoly { .. } => "uniform-poly",
            EnsembleSpec::ZeroOneKonyagin { .. } => "zero-one-konyagin",
            EnsembleSpec::IidSignMatrix { .. } => "iid-sign-matrix",
            EnsembleSpec::SymmetricBounded { .. } => "symmetric-bounded",
            EnsembleSpec::Elliptical { .. } => "elliptical",
            EnsembleSpec::ProductSigns { .. } => "product-signs",
            EnsembleSpec::ErdosRenyi { .. } => "erdos-renyi",
            EnsembleSpec::DirectedBernoulli { .. } => "directed-bernoulli",
            EnsembleSpec::FixedOutdegree { .. } => "fixed-outdegree",
            EnsembleSpec::PermutationMatrix { .. } => "permutation-matrix",
        }
    }

    pub fn n(&self) -> usize {
        match *self {
            EnsembleSpec::RademacherPoly { n }
            | EnsembleSpec::UniformPoly { n, .. }
            | EnsembleSpec::ZeroOneKonyagin { n }
            | EnsembleSpec::IidSignMatrix { n }
            | EnsembleSpec::SymmetricBounded { n, .. }
            | EnsembleSpec::Elliptical { n, .. }
            | EnsembleSpec::ProductSigns { n, .. }
            | EnsembleSpec::ErdosRenyi { n, .. }
            | EnsembleSpec::DirectedBernoulli { n, .. }
            | EnsembleSpec::FixedOutdegree { n, .. }
            | EnsembleSpec::PermutationMatrix { n } => n,
        }
    }

    pub fn is_matrix(&self) -> bool {
        !matches!(
            self,
            EnsembleSpec::RademacherPoly { .. }
                | EnsembleSpec::UniformPoly { .. }
                | EnsembleSpec::ZeroOneKonyagin { .. }
        )
    }

    /// Whether every sample is a symmetric matrix.
    pub fn is_symmetric(&self) -> bool {
        matches!(
            self,
            EnsembleSpec::SymmetricBounded { .. } | EnsembleSpec::ErdosRenyi { .. }
        )
    }

    /// An eigenvalue present in every sample, if the model forces one.
    pub fn trivial_eigenvalue(&self) -> Option<i64> {
        match *self {
            EnsembleSpec::FixedOutdegree { s, .. } => Some(s as i64),
            _ => None,
        }
    }

    /// Variance of a single entry for `SymmetricBounded`.
    pub fn entry_variance(&self) -> Option<f64> {
        match *self {
            EnsembleSpec::SymmetricBounded { b, mean_zero, .. } => {
                let b = b as f64;
                Some(if mean_zero {
                    (b + 1.0) * (2.0 * b + 1.0) / 6.0
                } else {
                    b * (b + 2.0) / 12.0
                })
            }
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<(), EnsembleError> {
        let n = self.n();
        if n == 0 {
            return Err(invalid("n must be at least 1"));
        }
        let open_unit = |p: f64| p > 0.0 && p < 1.0;
        match *self {
            EnsembleSpec::UniformPoly { big_n, .. } if big_n == 0 => {
                Err(invalid("N must be at least 1"))
            }
            EnsembleSpec::SymmetricBounded { b, .. } if b == 0 => {
                Err(invalid("B must be at least 1"))
            }
            EnsembleSpec::Elliptical { rho, .. } if !(rho > -1.0 && rho < 1.0) => {
                Err(invalid("rho must lie in (-1, 1)"))
            }
            EnsembleSpec::ProductSigns { m, .. } if m == 0 => Err(invalid("m must be at least 1")),
            EnsembleSpec::ErdosRenyi { p, .. } | EnsembleSpec::DirectedBernoulli { p, .. }
                if !open_unit(p) =>
            {
                Err(invalid("p must lie in (0, 1)"))
            }
            EnsembleSpec::FixedOutdegree { s, .. } if s == 0 || s >= n => {
                Err(invalid("s must satisfy 1 <= s <= n - 1"))
            }
            _ => Ok(()),
        }
    }
}

fn poly(coeffs: Vec<i64>) -> IntPoly {
    IntPoly::from_i64s(&coeffs)
}

fn matrix(n: usize, entries: Vec<i64>) -> IntMatrix {
    IntMatrix::new(n, entries.into_iter().map(BigInt::from).collect()).expect("square by construction")
}

fn sign_entries(n: usize, g: &mut Sampler) -> Vec<i64> {
    (0..n * n).map(|_| g.sign()).collect()
}

/// Draws one sample.
pub fn sample(spec: &EnsembleSpec, stream: SeedStream) -> Result<Sample, EnsembleError> {
    spec.validate()?;
    let mut g = stream.sampler();
    let n = spec.n();
    Ok(match *spec {
        EnsembleSpec::RademacherPoly { .. } => {
            let mut c: Vec<i64> = (0..n).map(|_| g.sign()).collect();
            c.push(1);
            Sample::Poly(poly(c))
        }
        EnsembleSpec::UniformPoly { big_n, .. } => {
            let mut c: Vec<i64> = (0..n).map(|_| g.below(big_n + 1) as i64).collect();
            c.push(1);
            Sample::Poly(poly(c))
        }
        EnsembleSpec::ZeroOneKonyagin { .. } => {
            let mut c = vec![1i64];
            c.extend((1..n).map(|_| g.bit() as i64));
            c.push(1);
            Sample::Poly(poly(c))
        }
        EnsembleSpec::IidSignMatrix { .. } => Sample::Matrix(matrix(n, sign_entries(n, &mut g))),
        EnsembleSpec::SymmetricBounded { b, mean_zero, .. } => {
            let mut e = vec![0i64; n * n];
            for i in 0..n {
                for j in i..n {
                    let x = if mean_zero {
                        g.sign() * (1 + g.below(b) as i64)
                    } else {
                        g.below(b + 1) as i64
                    };
                    e[i * n + j] = x;
                    e[j * n + i] = x;
                }
            }
            Sample::Matrix(matrix(n, e))
        }
        EnsembleSpec::Elliptical { rho, .. } => {
            let mut e = vec![0i64; n * n];
            for i in 0..n {
                for j in i..n {
                    e[i * n + j] = g.sign();
                }
            }
            let keep = (1.0 + rho) / 2.0;
            for i in 1..n {
                for j in 0..i {
                    let xi = if g.bernoulli(keep) { 1 } else { -1 };
                    e[i * n + j] = e[j * n + i] * xi;
                }
            }
            Sample::Matrix(matrix(n, e))
        }
        EnsembleSpec::ProductSigns { m, .. } => {
            let mut acc = matrix(n, sign_entries(n, &mut g));
            for _ in 1..m {
                let next = matrix(n, sign_entries(n, &mut g));
                acc = acc.mul(&next).expect("equal dimensions");
            }
            Sample::Matrix(acc)
        }
        EnsembleSpec::ErdosRenyi { p, .. } => {
            let mut e = vec![0i64; n * n];
            for i in 0..n {
                for j in i + 1..n {
                    let x = g.bernoulli(p) as i64;
                    e[i * n + j] = x;
                    e[j * n + i] = x;
                }
            }
            Sample::Matrix(matrix(n, e))
        }
        EnsembleSpec::DirectedBernoulli { p, .. } => {
            Sample::Matrix(matrix(n, (0..n * n).map(|_| g.bernoulli(p) as i64).collect()))
        }
        EnsembleSpec::FixedOutdegree { s, .. } => {
            let mut e = Vec::with_capacity(n * n);
            for _ in 0..n {
                e.extend(g.subset_indicator(n, s).into_iter().map(i64::from));
            }
            Sample::Matrix(matrix(n, e))
        }
        EnsembleSpec::PermutationMatrix { .. } => {
            let pi = g.permutation(n);
            let mut e = vec![0i64; n * n];
            for (j, &i) in pi.iter().enumerate() {
                e[i * n + j] = 1;
            }
            Sample::Matrix(matrix(n, e))
        }
    })
}

/// Characteristic polynomial of a matrix-valued sample.
pub fn charpoly_of_sample(spec: &EnsembleSpec, stream: SeedStream) -> Result<IntPoly, EnsembleError> {
    if !spec.is_matrix() {
        return Err(EnsembleError::NotMatrix(spec.name()));
    }
    match sample(spec, stream)? {
        Sample::Matrix(a) => Ok(a.charpoly()),
        Sample::Poly(_) => unreachable!(),
    }
}

/// The polynomial studied for a sample: the sample itself for polynomial
/// models, its characteristic polynomial for matrix models.
pub fn polynomial_of_sample(spec: &EnsembleSpec, stream: SeedStream) -> Result<IntPoly, EnsembleError> {
    Ok(match sample(spec, stream)? {
        Sample::Poly(f) => f,
        Sample::Matrix(a) => a.charpoly(),
    })
}
