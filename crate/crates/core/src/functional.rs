//! Linear functionals on a view's basis and the convolution product.

use crate::bialgebra::{BialgebraView, Element, Tensor};
use crate::error::{Error, Result};
use crate::scalar::ExactScalar;

/// Values of a functional on each element of a view's enumerated basis.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearFunctional {
    pub basis_id: String,
    pub coeffs: Vec<ExactScalar>,
}

impl LinearFunctional {
    pub fn new(basis_id: impl Into<String>, coeffs: Vec<ExactScalar>) -> Self {
        Self { basis_id: basis_id.into(), coeffs }
    }

    /// Tabulates `f` on the basis of `view`.
    pub fn tabulate<V: BialgebraView>(view: &V, f: impl FnMut(&V::Basis) -> ExactScalar) -> Self {
        Self::new(view.basis_id(), view.basis().iter().map(f).collect())
    }

    /// The view's counit candidate.
    pub fn counit<V: BialgebraView>(view: &V) -> Result<Self> {
        let coeffs = view
            .counit_values()
            .ok_or_else(|| Error::Unsupported(format!("{} exposes no counit", view.basis_id())))?;
        Ok(Self::new(view.basis_id(), coeffs))
    }

    pub fn check_basis<V: BialgebraView>(&self, view: &V) -> Result<()> {
        let expected = view.basis_id();
        if self.basis_id != expected {
            return Err(Error::BasisMismatch { expected, got: self.basis_id.clone() });
        }
        let n = view.basis().len();
        if self.coeffs.len() != n {
            return Err(Error::BasisMismatch {
                expected: format!("{expected} (dimension {n})"),
                got: format!("{} (dimension {})", self.basis_id, self.coeffs.len()),
            });
        }
        Ok(())
    }

    pub fn value<V: BialgebraView>(&self, view: &V, b: &V::Basis) -> Result<ExactScalar> {
        match view.index_of(b) {
            Some(i) => Ok(self.coeffs[i].clone()),
            None => Err(Error::DegreeOverflow {
                degree: view.degree(b),
                bound: view.degree_bound().unwrap_or(0),
            }),
        }
    }

    pub fn eval<V: BialgebraView>(&self, view: &V, x: &Element<V::Basis>) -> Result<ExactScalar> {
        let mut acc = ExactScalar::zero();
        for (b, c) in x.iter() {
            acc += c * &self.value(view, b)?;
        }
        Ok(acc)
    }

    /// `(self ⊗ other)(t)`.
    pub fn eval_tensor<V: BialgebraView>(
        &self,
        other: &LinearFunctional,
        view: &V,
        t: &Tensor<V::Basis>,
    ) -> Result<ExactScalar> {
        let mut acc = ExactScalar::zero();
        for ((a, b), c) in t.iter() {
            let x = self.value(view, a)?;
            if x.is_zero() {
                continue;
            }
            acc += &(c * &x) * &other.value(view, b)?;
        }
        Ok(acc)
    }

    /// `(id ⊗ self)(t)` as an element.
    pub fn slice_right<V: BialgebraView>(&self, view: &V, t: &Tensor<V::Basis>) -> Result<Element<V::Basis>> {
        let mut out = Element::zero();
        for ((a, b), c) in t.iter() {
            out.add_term(a.clone(), c * &self.value(view, b)?);
        }
        Ok(out)
    }

    /// `(self ⊗ id)(t)` as an element.
    pub fn slice_left<V: BialgebraView>(&self, view: &V, t: &Tensor<V::Basis>) -> Result<Element<V::Basis>> {
        let mut out = Element::zero();
        for ((a, b), c) in t.iter() {
            out.add_term(b.clone(), c * &self.value(view, a)?);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        Self::new(self.basis_id.clone(), self.coeffs.iter().map(|x| x * c).collect())
    }
}

/// `(τ ⊗ σ)∘Δ` on every basis element.
pub fn convolve<V: BialgebraView>(
    tau: &LinearFunctional,
    sigma: &LinearFunctional,
    view: &V,
) -> Result<LinearFunctional> {
    tau.check_basis(view)?;
    sigma.check_basis(view)?;
    let coeffs = view
        .basis()
        .iter()
        .map(|b| tau.eval_tensor(sigma, view, &view.comultiply(b)))
        .collect::<Result<Vec<_>>>()?;
    Ok(LinearFunctional::new(view.basis_id(), coeffs))
}

/// Exhaustive check that `τ(1) = 1` and `τ(xy) = τ(x)τ(y)` on basis pairs
/// (pairs whose degrees sum past the bound are skipped for graded views).
pub fn check_multiplicative<V: BialgebraView>(tau: &LinearFunctional, view: &V) -> Result<()> {
    tau.check_basis(view)?;
    if !tau.eval(view, &view.unit())?.is_one() {
        return Err(Error::NotMultiplicative("1".into(), "1".into()));
    }
    let basis = view.basis();
    let bound = view.degree_bound();
    for (i, x) in basis.iter().enumerate() {
        for (j, y) in basis.iter().enumerate() {
            if let Some(d) = bound {
                if view.degree(x) + view.degree(y) > d {
                    continue;
                }
            }
            let lhs = tau.eval(view, &view.multiply(x, y))?;
            if lhs != &tau.coeffs[i] * &tau.coeffs[j] {
                return Err(Error::NotMultiplicative(view.label(x), view.label(y)));
            }
        }
    }
    Ok(())
}

/// The convolution inverse `τ∘κ` of a multiplicative functional.
pub fn convolution_inverse<V: BialgebraView>(tau: &LinearFunctional, view: &V) -> Result<LinearFunctional> {
    if !view.has_antipode() {
        return Err(Error::Unsupported(format!("{} has no antipode", view.basis_id())));
    }
    check_multiplicative(tau, view)?;
    let coeffs = view
        .basis()
        .iter()
        .map(|b| {
            let k = view
                .antipode(b)
                .ok_or_else(|| Error::Unsupported(format!("antipode undefined on {}", view.label(b))))?;
            tau.eval(view, &k)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LinearFunctional::new(view.basis_id(), coeffs))
}

/// Whether `τ(x*) = conj(τ(x))` on every basis element whose involution stays in range.
pub fn is_star_preserving<V: BialgebraView>(tau: &LinearFunctional, view: &V) -> Result<bool> {
    for (i, b) in view.basis().iter().enumerate() {
        if tau.eval(view, &view.involution(b))? != tau.coeffs[i].conj() {
            return Ok(false);
        }
    }
    Ok(true)
}
