//! The Hopf *-algebra of SU_q(2) over exact rationals, plus its truncated
//! Hilbert-space representation for spectral estimates.
//!
//! Elements are expanded in the basis `a_{kmn} = α^{(k)} γ^m γ*^n`, where
//! `α^{(k)}` is `α^k` for `k ≥ 0` and `α*^{-k}` otherwise.

mod hopf;
mod rep;
mod rewrite;

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::bialgebra::Element;
use crate::error::{Error, Result};
use crate::scalar::{format_rational, ExactScalar};

pub use hopf::{character, haar_gram_matrix, haar_monomial, Suq2, Suq2Character};
pub use rep::{spectral_witness, TruncatedRep};
pub use rewrite::{normal_form, parse_word, rewrite, Letter, Strategy, Word};

/// Basis monomial `a_{kmn}`; ordered lexicographically by `(k, m, n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Mono {
    pub k: i64,
    pub m: u32,
    pub n: u32,
}

impl Mono {
    pub const ONE: Mono = Mono { k: 0, m: 0, n: 0 };

    pub fn new(k: i64, m: u32, n: u32) -> Self {
        Self { k, m, n }
    }

    pub fn degree(&self) -> usize {
        self.k.unsigned_abs() as usize + self.m as usize + self.n as usize
    }

    /// Monomials of total degree exactly `d`, ordered by `(k, m, n)`.
    pub fn of_degree(d: usize) -> Vec<Mono> {
        let d = d as i64;
        let mut out = Vec::new();
        for k in -d..=d {
            let rest = (d - k.abs()) as u32;
            for m in 0..=rest {
                out.push(Mono::new(k, m, rest - m));
            }
        }
        out
    }

    /// Monomials of total degree at most `d`, by degree and then `(k, m, n)`.
    pub fn up_to_degree(d: usize) -> Vec<Mono> {
        (0..=d).flat_map(Mono::of_degree).collect()
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.k, self.m, self.n)
    }
}

/// A deformation parameter `q` with `0 < |q| < 1`.
pub fn check_q(q: &BigRational) -> Result<()> {
    if q.is_zero() || q.abs() >= BigRational::one() {
        return Err(Error::Invalid(format!("q = {} must satisfy 0 < |q| < 1", format_rational(q))));
    }
    Ok(())
}

/// An element of SU_q(2) together with its deformation parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SUq2Element {
    pub q: BigRational,
    pub terms: Element<Mono>,
}

impl SUq2Element {
    pub fn new(q: BigRational, terms: Element<Mono>) -> Self {
        Self { q, terms }
    }

    pub fn monomial(q: BigRational, mono: Mono) -> Self {
        Self::new(q, Element::basis(mono))
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Mono::degree).max().unwrap_or(0)
    }

    fn same_q(&self, other: &Self) -> Result<()> {
        if self.q != other.q {
            return Err(Error::Invalid(format!(
                "elements have different q ({} vs {})",
                format_rational(&self.q),
                format_rational(&other.q)
            )));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_q(other)?;
        Ok(Self::new(self.q.clone(), hopf::product(&self.q, &self.terms, &other.terms)))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_q(other)?;
        Ok(Self::new(self.q.clone(), self.terms.add(&other.terms)))
    }

    pub fn star(&self) -> Self {
        Self::new(self.q.clone(), hopf::star(&self.q, &self.terms))
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        Self::new(self.q.clone(), self.terms.scale(c))
    }

    /// One `(k,m,n): re+im·i` line per term, sorted by `(k, m, n)`.
    pub fn to_lines(&self) -> Vec<String> {
        self.terms
            .iter()
            .map(|(mono, c)| {
                let (re, im) = c.to_strings();
                match im.strip_prefix('-') {
                    Some(abs) => format!("{mono}: {re}-{abs}·i"),
                    None => format!("{mono}: {re}+{im}·i"),
                }
            })
            .collect()
    }
}

impl fmt::Display for SUq2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_zero() {
            return write!(f, "0");
        }
        write!(f, "{}", self.to_lines().join("\n"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_counts() {
        for d in 0..6 {
            assert_eq!(Mono::of_degree(d).len(), (d + 1) * (d + 1));
            assert!(Mono::of_degree(d).iter().all(|m| m.degree() == d));
        }
        assert_eq!(Mono::up_to_degree(4).len(), 55);
    }

    #[test]
    fn q_range() {
        assert!(check_q(&BigRational::new(1.into(), 2.into())).is_ok());
        assert!(check_q(&BigRational::new((-1).into(), 2.into())).is_ok());
        assert!(check_q(&BigRational::zero()).is_err());
        assert!(check_q(&BigRational::one()).is_err());
    }

    #[test]
    fn mixed_q_is_rejected() {
        let a = SUq2Element::monomial(BigRational::new(1.into(), 2.into()), Mono::new(1, 0, 0));
        let b = SUq2Element::monomial(BigRational::new(1.into(), 3.into()), Mono::new(1, 0, 0));
        assert!(a.mul(&b).is_err());
        assert!(a.add(&b).is_err());
    }

    #[test]
    fn display_lines() {
        let q = BigRational::new(1.into(), 2.into());
        let x = SUq2Element::new(
            q,
            Element::from_terms([(Mono::new(0, 1, 1), ExactScalar::from_int(-1)), (Mono::ONE, ExactScalar::one())]),
        );
        assert_eq!(x.to_string(), "(0,0,0): 1+0·i\n(0,1,1): -1+0·i");
    }
}
