use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::algebra::IntPoly;

/// How a factor was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Enumerate,
    Subset,
    Cyclotomic,
    RationalRoot,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factor {
    #[serde(rename = "coeffs")]
    pub poly: IntPoly,
    pub degree: usize,
    pub method: Method,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Irreducible,
    Reducible,
    /// A search complete for its parameters found no factor of degree `<= k`.
    NoFactorUpTo(usize),
    Unknown,
}

/// Evidence backing an `Irreducible` verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    /// Degree one.
    Linear,
    /// Degree 2 or 3 without a rational root.
    NoRationalRoot,
    /// `n + 1` prime with 2 a primitive root, for a `±1` polynomial.
    Structural { n: usize },
    /// The input is itself a cyclotomic polynomial.
    Cyclotomic { index: u64 },
    /// Irreducible modulo `p`.
    ModP { p: u64 },
    /// A complete factor search up to half the degree found nothing.
    CompleteSearch { degree: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorReport {
    pub status: Status,
    pub factors: Vec<Factor>,
    pub certificate: Option<Certificate>,
}

impl FactorReport {
    /// Sorts factors by degree then coefficients and drops duplicates.
    pub fn new(status: Status, mut factors: Vec<Factor>, certificate: Option<Certificate>) -> Self {
        factors.sort_by(|a, b| a.poly.report_order(&b.poly));
        factors.dedup_by(|a, b| a.poly == b.poly);
        FactorReport {
            status,
            factors,
            certificate,
        }
    }

    pub fn irreducible(certificate: Certificate) -> Self {
        Self::new(Status::Irreducible, Vec::new(), Some(certificate))
    }

    pub fn polys(&self) -> Vec<IntPoly> {
        self.factors.iter().map(|f| f.poly.clone()).collect()
    }

    pub fn min_factor_degree(&self) -> Option<usize> {
        self.factors.iter().map(|f| f.degree).min()
    }

    /// Re-checks that every listed factor is monic and divides `f` exactly.
    pub fn verify(&self, f: &IntPoly) -> bool {
        self.factors.iter().all(|fac| {
            fac.poly.is_monic()
                && fac.poly.degree() == Some(fac.degree)
                && f.is_divisible_by(&fac.poly).unwrap_or(false)
        })
    }
}

impl Serialize for FactorReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("FactorReport", 4)?;
        let (name, k) = match self.status {
            Status::Irreducible => ("irreducible", None),
            Status::Reducible => ("reducible", None),
            Status::NoFactorUpTo(k) => ("no-factor-up-to", Some(k)),
            Status::Unknown => ("unknown", None),
        };
        st.serialize_field("status", name)?;
        if let Some(k) = k {
            st.serialize_field("k", &k)?;
        }
        if let Some(c) = &self.certificate {
            st.serialize_field("certificate", c)?;
        }
        st.serialize_field("factors", &self.factors)?;
        st.end()
    }
}

pub(crate) fn factor(poly: IntPoly, method: Method) -> Factor {
    let degree = poly.degree().unwrap_or(0);
    Factor {
        poly,
        degree,
        method,
    }
}
