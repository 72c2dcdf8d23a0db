use std::collections::HashMap;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{check_q, Mono};
use crate::bialgebra::{BialgebraView, Element, Tensor};
use crate::error::{Error, Result};
use crate::functional::LinearFunctional;
use crate::linalg::Matrix;
use crate::scalar::{format_rational, ExactScalar};

fn qpow(q: &BigRational, e: i64) -> ExactScalar {
    ExactScalar::real(q.clone()).powi(e)
}

/// Expands `α^{(k1)} α^{(k2)}` as `Σ c_p α^{(k1+k2)} x^p` with `x = γγ*`.
///
/// Uses `αα* = 1 − q²x`, `α*α = 1 − x` and `xα* = q²α*x`, `xα = q⁻²αx`.
fn alpha_product(q: &BigRational, k1: i64, k2: i64) -> Vec<ExactScalar> {
    let mut poly = vec![ExactScalar::one()];
    if k1.signum() * k2.signum() >= 0 {
        return poly;
    }
    let t = k1.abs().min(k2.abs());
    for s in 0..t {
        let c = if k1 > 0 {
            // α^{k1-s} α*^{j-s} peels one αα*, leaving x behind α*^{j-s-1}.
            qpow(q, 2 * (-k2 - s))
        } else {
            // α*^{i-s} α^{k2-s} peels one α*α, leaving x behind α^{k2-s-1}.
            qpow(q, -2 * (k2 - 1 - s))
        };
        let mut next = poly.clone();
        next.push(ExactScalar::zero());
        for (p, a) in poly.iter().enumerate() {
            next[p + 1] -= &(a * &c);
        }
        poly = next;
    }
    poly
}

/// Product of two basis monomials in normal form.
pub(crate) fn mono_product(q: &BigRational, a: &Mono, b: &Mono) -> Element<Mono> {
    let shift = qpow(q, -b.k * (a.m as i64 + a.n as i64));
    let k = a.k + b.k;
    let mut out = Element::zero();
    for (p, c) in alpha_product(q, a.k, b.k).into_iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let p = p as u32;
        out.add_term(Mono::new(k, a.m + b.m + p, a.n + b.n + p), &c * &shift);
    }
    out
}

pub(crate) fn product(q: &BigRational, x: &Element<Mono>, y: &Element<Mono>) -> Element<Mono> {
    let mut out = Element::zero();
    for (a, c) in x.iter() {
        for (b, d) in y.iter() {
            out.add_scaled(&mono_product(q, a, b), &(c * d));
        }
    }
    out
}

/// `(α^{(k)} γ^m γ*^n)* = γ^n γ*^m α^{(-k)} = q^{k(m+n)} a_{-k,n,m}`.
pub(crate) fn mono_star(q: &BigRational, a: &Mono) -> Element<Mono> {
    mono_product(q, &Mono::new(0, a.n, a.m), &Mono::new(-a.k, 0, 0))
}

pub(crate) fn star(q: &BigRational, x: &Element<Mono>) -> Element<Mono> {
    let mut out = Element::zero();
    for (a, c) in x.iter() {
        out.add_scaled(&mono_star(q, a), &c.conj());
    }
    out
}

fn tensor_product(q: &BigRational, x: &Tensor<Mono>, y: &Tensor<Mono>) -> Tensor<Mono> {
    let mut out = Tensor::zero();
    for ((a1, a2), c) in x.iter() {
        for ((b1, b2), d) in y.iter() {
            let left = mono_product(q, a1, b1);
            let right = mono_product(q, a2, b2);
            out.add_scaled(&Tensor::pure(&left, &right), &(c * d));
        }
    }
    out
}

fn tensor_power(q: &BigRational, base: &Tensor<Mono>, e: u32) -> Tensor<Mono> {
    let mut acc = Tensor::basis((Mono::ONE, Mono::ONE));
    for _ in 0..e {
        acc = tensor_product(q, &acc, base);
    }
    acc
}

const ALPHA: Mono = Mono { k: 1, m: 0, n: 0 };
const ALPHA_STAR: Mono = Mono { k: -1, m: 0, n: 0 };
const GAMMA: Mono = Mono { k: 0, m: 1, n: 0 };
const GAMMA_STAR: Mono = Mono { k: 0, m: 0, n: 1 };

/// Comultiplication from `Δ(U_ij) = Σ_k U_ik ⊗ U_kj` with
/// `U = [[α, −qγ*], [γ, α*]]`, extended multiplicatively.
pub(crate) fn mono_coproduct(q: &BigRational, a: &Mono) -> Tensor<Mono> {
    let mq = -ExactScalar::real(q.clone());
    let one = ExactScalar::one();
    let d_alpha = Tensor::from_terms([((ALPHA, ALPHA), one.clone()), ((GAMMA_STAR, GAMMA), mq.clone())]);
    let d_alpha_star = Tensor::from_terms([((ALPHA_STAR, ALPHA_STAR), one.clone()), ((GAMMA, GAMMA_STAR), mq)]);
    let d_gamma = Tensor::from_terms([((GAMMA, ALPHA), one.clone()), ((ALPHA_STAR, GAMMA), one.clone())]);
    let d_gamma_star = Tensor::from_terms([((GAMMA_STAR, ALPHA_STAR), one.clone()), ((ALPHA, GAMMA_STAR), one)]);
    let alpha_part = if a.k >= 0 {
        tensor_power(q, &d_alpha, a.k as u32)
    } else {
        tensor_power(q, &d_alpha_star, (-a.k) as u32)
    };
    let t = tensor_product(q, &alpha_part, &tensor_power(q, &d_gamma, a.m));
    tensor_product(q, &t, &tensor_power(q, &d_gamma_star, a.n))
}

/// `κ(a_{kmn}) = κ(γ*)^n κ(γ)^m κ(α^{(k)})` with `κ(α) = α*`, `κ(γ) = −qγ`, `κ(γ*) = −q⁻¹γ*`.
pub(crate) fn mono_antipode(q: &BigRational, a: &Mono) -> Element<Mono> {
    let sign = if (a.m + a.n).is_multiple_of(2) { ExactScalar::one() } else { -ExactScalar::one() };
    let c = &sign * &qpow(q, a.m as i64 - a.n as i64);
    mono_product(q, &Mono::new(0, a.m, a.n), &Mono::new(-a.k, 0, 0)).scale(&c)
}

pub(crate) fn mono_counit(a: &Mono) -> ExactScalar {
    if a.m == 0 && a.n == 0 { ExactScalar::one() } else { ExactScalar::zero() }
}

/// `h(a_{0mm}) = (1 − q²)/(1 − q^{2m+2})`, zero off the diagonal monomials.
pub(crate) fn mono_haar(q: &BigRational, a: &Mono) -> ExactScalar {
    if a.k != 0 || a.m != a.n {
        return ExactScalar::zero();
    }
    let q2 = q * q;
    let num = BigRational::one() - &q2;
    let den = BigRational::one() - num_traits::pow(q2, a.m as usize + 1);
    ExactScalar::real(num / den)
}

/// `h(a_kmn)`, which vanishes unless `k = 0` and `m = n`.
pub fn haar_monomial(q: &BigRational, a: Mono) -> Result<ExactScalar> {
    check_q(q)?;
    Ok(mono_haar(q, &a))
}

/// Degree-truncated view of SU_q(2) at a fixed rational `q`.
#[derive(Clone, Debug)]
pub struct Suq2 {
    pub q: BigRational,
    pub degree_bound: usize,
    basis: Vec<Mono>,
    index: HashMap<Mono, usize>,
}

impl Suq2 {
    pub fn new(q: BigRational, degree_bound: usize) -> Result<Self> {
        check_q(&q)?;
        let basis = Mono::up_to_degree(degree_bound);
        let index = basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        Ok(Self { q, degree_bound, basis, index })
    }

    pub fn product(&self, x: &Element<Mono>, y: &Element<Mono>) -> Element<Mono> {
        product(&self.q, x, y)
    }

    fn check_degree(&self, x: &Element<Mono>) -> Result<()> {
        match x.keys().map(Mono::degree).max() {
            Some(d) if d > self.degree_bound => Err(Error::DegreeOverflow { degree: d, bound: self.degree_bound }),
            _ => Ok(()),
        }
    }

    /// Exact comultiplication; rejects elements above the degree bound.
    pub fn comultiply_element(&self, x: &Element<Mono>) -> Result<Tensor<Mono>> {
        self.check_degree(x)?;
        Ok(x.flat_map(|a| mono_coproduct(&self.q, a)))
    }

    pub fn counit(&self, x: &Element<Mono>) -> ExactScalar {
        let mut acc = ExactScalar::zero();
        for (a, c) in x.iter() {
            acc += &(c * &mono_counit(a));
        }
        acc
    }

    pub fn antipode_element(&self, x: &Element<Mono>) -> Result<Element<Mono>> {
        self.check_degree(x)?;
        let mut out = Element::zero();
        for (a, c) in x.iter() {
            out.add_scaled(&mono_antipode(&self.q, a), c);
        }
        Ok(out)
    }

    /// Haar state; defined on every monomial regardless of the bound.
    pub fn haar(&self, x: &Element<Mono>) -> ExactScalar {
        let mut acc = ExactScalar::zero();
        for (a, c) in x.iter() {
            acc += &(c * &mono_haar(&self.q, a));
        }
        acc
    }

    pub fn haar_functional(&self) -> LinearFunctional {
        LinearFunctional::tabulate(self, |a| mono_haar(&self.q, a))
    }

    pub fn counit_functional(&self) -> LinearFunctional {
        LinearFunctional::tabulate(self, mono_counit)
    }
}

impl BialgebraView for Suq2 {
    type Basis = Mono;

    fn basis_id(&self) -> String {
        format!("SU_q(2)[q={},deg<={}]", format_rational(&self.q), self.degree_bound)
    }

    fn basis(&self) -> Vec<Mono> {
        self.basis.clone()
    }

    fn index_of(&self, b: &Mono) -> Option<usize> {
        self.index.get(b).copied()
    }

    fn label(&self, b: &Mono) -> String {
        format!("a{b}")
    }

    fn degree_bound(&self) -> Option<usize> {
        Some(self.degree_bound)
    }

    fn degree(&self, b: &Mono) -> usize {
        b.degree()
    }

    fn unit(&self) -> Element<Mono> {
        Element::basis(Mono::ONE)
    }

    fn multiply(&self, x: &Mono, y: &Mono) -> Element<Mono> {
        mono_product(&self.q, x, y)
    }

    fn involution(&self, x: &Mono) -> Element<Mono> {
        mono_star(&self.q, x)
    }

    fn comultiply(&self, x: &Mono) -> Tensor<Mono> {
        mono_coproduct(&self.q, x)
    }

    fn counit_values(&self) -> Option<Vec<ExactScalar>> {
        Some(self.basis.iter().map(mono_counit).collect())
    }

    fn antipode(&self, x: &Mono) -> Option<Element<Mono>> {
        Some(mono_antipode(&self.q, x))
    }

    fn has_antipode(&self) -> bool {
        true
    }
}

/// `λ^{(k)}`: `λ^k` for `k ≥ 0`, `conj(λ)^{-k}` otherwise.
fn signed_power(lambda: &ExactScalar, k: i64) -> ExactScalar {
    if k >= 0 { lambda.powi(k) } else { lambda.conj().powi(-k) }
}

/// The character `τ_λ` with `τ_λ(α) = λ`, `τ_λ(γ) = 0`, tabulated on the view.
pub fn character(view: &Suq2, lambda: &ExactScalar) -> Result<LinearFunctional> {
    if !lambda.norm_sqr().is_one() {
        return Err(Error::Invalid(format!("|λ| ≠ 1 for λ = {lambda}")));
    }
    Ok(LinearFunctional::tabulate(view, |a| {
        if a.m == 0 && a.n == 0 { signed_power(lambda, a.k) } else { ExactScalar::zero() }
    }))
}

/// Floating-point `τ_λ` for `λ` on the unit circle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Suq2Character {
    pub lambda: Complex64,
}

impl Suq2Character {
    pub fn new(lambda: Complex64) -> Result<Self> {
        if (lambda.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::Invalid(format!("|λ| = {} is not 1", lambda.norm())));
        }
        Ok(Self { lambda })
    }

    pub fn value(&self, a: &Mono) -> Complex64 {
        if a.m != 0 || a.n != 0 {
            return Complex64::zero();
        }
        if a.k >= 0 { self.lambda.powi(a.k as i32) } else { self.lambda.conj().powi((-a.k) as i32) }
    }

    pub fn eval(&self, x: &Element<Mono>) -> Complex64 {
        x.iter().map(|(a, c)| c.to_complex64() * self.value(a)).sum()
    }
}

/// `G[(i, j)] = h(b_i* b_j)` over the monomials of degree at most `degree`.
pub fn haar_gram_matrix(q: &BigRational, degree: usize) -> Matrix {
    let basis = Mono::up_to_degree(degree);
    let stars: Vec<Element<Mono>> = basis.iter().map(|b| mono_star(q, b)).collect();
    Matrix::from_fn(basis.len(), basis.len(), |i, j| {
        let mut acc = ExactScalar::zero();
        for (a, c) in stars[i].iter() {
            for (m, d) in mono_product(q, a, &basis[j]).iter() {
                acc += &(&(c * d) * &mono_haar(q, m));
            }
        }
        acc
    })
}
