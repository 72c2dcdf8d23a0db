//! Sparse elements and the [`BialgebraView`] interface shared by every backend.

use std::collections::BTreeMap;
use std::fmt::Debug;

use crate::scalar::ExactScalar;

/// Finitely supported map `K → ExactScalar` with no stored zeros.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sparse<K: Ord> {
    terms: BTreeMap<K, ExactScalar>,
}

pub type Element<B> = Sparse<B>;
pub type Tensor<B> = Sparse<(B, B)>;

impl<K: Ord> Default for Sparse<K> {
    fn default() -> Self {
        Self { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Debug> Debug for Sparse<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl<K: Ord + Clone> Sparse<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(k: K, c: ExactScalar) -> Self {
        let mut s = Self::zero();
        s.add_term(k, c);
        s
    }

    pub fn basis(k: K) -> Self {
        Self::single(k, ExactScalar::one())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (K, ExactScalar)>) -> Self {
        let mut s = Self::zero();
        for (k, c) in terms {
            s.add_term(k, c);
        }
        s
    }

    pub fn add_term(&mut self, k: K, c: ExactScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &ExactScalar) {
        if c.is_zero() {
            return;
        }
        for (k, x) in &other.terms {
            self.add_term(k.clone(), x * c);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &ExactScalar::one());
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &-ExactScalar::one());
        out
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn coeff(&self, k: &K) -> ExactScalar {
        self.terms.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &ExactScalar)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn as_map(&self) -> &BTreeMap<K, ExactScalar> {
        &self.terms
    }

    pub fn into_map(self) -> BTreeMap<K, ExactScalar> {
        self.terms
    }

    /// Linear extension of `f` applied to each basis key.
    pub fn flat_map<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> Sparse<L>) -> Sparse<L> {
        let mut out = Sparse::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), c);
        }
        out
    }
}

impl<B: Ord + Clone> Sparse<(B, B)> {
    pub fn pure(a: &Element<B>, b: &Element<B>) -> Self {
        let mut out = Self::zero();
        for (x, c) in a.iter() {
            for (y, d) in b.iter() {
                out.add_term((x.clone(), y.clone()), c * d);
            }
        }
        out
    }

    pub fn flip(&self) -> Self {
        Self::from_terms(self.iter().map(|((a, b), c)| ((b.clone(), a.clone()), c.clone())))
    }
}

/// Abstract bialgebra with a distinguished basis.
///
/// Finite algebras list their whole basis. Graded infinite-dimensional ones
/// (SU_q(2), the disc semigroup) list the monomials of degree at most
/// [`degree_bound`](Self::degree_bound), and every structure map on a basis
/// element of degree `d` lands in degree at most `d` per tensor leg.
pub trait BialgebraView {
    type Basis: Clone + Ord + Debug;

    /// Identifier shared by every functional built on this basis.
    fn basis_id(&self) -> String;
    fn basis(&self) -> Vec<Self::Basis>;
    fn index_of(&self, b: &Self::Basis) -> Option<usize>;
    fn label(&self, b: &Self::Basis) -> String;

    fn degree_bound(&self) -> Option<usize> {
        None
    }

    fn degree(&self, _b: &Self::Basis) -> usize {
        0
    }

    fn unit(&self) -> Element<Self::Basis>;
    fn multiply(&self, x: &Self::Basis, y: &Self::Basis) -> Element<Self::Basis>;
    fn involution(&self, x: &Self::Basis) -> Element<Self::Basis>;
    fn comultiply(&self, x: &Self::Basis) -> Tensor<Self::Basis>;

    /// Values of the counit candidate on [`basis`](Self::basis), if the backend has one.
    fn counit_values(&self) -> Option<Vec<ExactScalar>> {
        None
    }

    fn antipode(&self, _x: &Self::Basis) -> Option<Element<Self::Basis>> {
        None
    }

    fn has_antipode(&self) -> bool {
        false
    }

    fn mul(&self, x: &Element<Self::Basis>, y: &Element<Self::Basis>) -> Element<Self::Basis> {
        let mut out = Element::zero();
        for (a, c) in x.iter() {
            for (b, d) in y.iter() {
                out.add_scaled(&self.multiply(a, b), &(c * d));
            }
        }
        out
    }

    fn star(&self, x: &Element<Self::Basis>) -> Element<Self::Basis> {
        let mut out = Element::zero();
        for (a, c) in x.iter() {
            out.add_scaled(&self.involution(a), &c.conj());
        }
        out
    }

    fn delta(&self, x: &Element<Self::Basis>) -> Tensor<Self::Basis> {
        x.flat_map(|b| self.comultiply(b))
    }

    fn tensor_mul(&self, x: &Tensor<Self::Basis>, y: &Tensor<Self::Basis>) -> Tensor<Self::Basis> {
        let mut out = Tensor::zero();
        for ((a1, a2), c) in x.iter() {
            for ((b1, b2), d) in y.iter() {
                let left = self.multiply(a1, b1);
                let right = self.multiply(a2, b2);
                let mut t = Tensor::pure(&left, &right);
                t = t.scale(&(c * d));
                out.add_scaled(&t, &ExactScalar::one());
            }
        }
        out
    }

    fn kappa(&self, x: &Element<Self::Basis>) -> Option<Element<Self::Basis>> {
        let mut out = Element::zero();
        for (a, c) in x.iter() {
            out.add_scaled(&self.antipode(a)?, c);
        }
        Some(out)
    }
}
