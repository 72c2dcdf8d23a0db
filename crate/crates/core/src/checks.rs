//! Exact Hopf-axiom checkers over any [`BialgebraView`].

use std::collections::BTreeMap;

use serde::Serialize;

use crate::bialgebra::{BialgebraView, Element, Sparse, Tensor};
use crate::error::Result;
use crate::functional::LinearFunctional;
use crate::linalg::SpanBuilder;
use crate::scalar::ExactScalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub axiom: String,
    pub checked: usize,
    /// Labels of the basis elements on which the identity failed.
    pub failures: Vec<String>,
}

impl AxiomReport {
    fn new(axiom: &str) -> Self {
        Self { axiom: axiom.to_string(), checked: 0, failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `(Δ⊗id)Δ(b) = (id⊗Δ)Δ(b)` for each `b` in `sample`.
pub fn check_coassociativity<V: BialgebraView>(view: &V, sample: &[V::Basis]) -> AxiomReport {
    let mut report = AxiomReport::new("coassociativity");
    for b in sample {
        let d = view.comultiply(b);
        let mut left: Sparse<(V::Basis, V::Basis, V::Basis)> = Sparse::zero();
        let mut right: Sparse<(V::Basis, V::Basis, V::Basis)> = Sparse::zero();
        for ((x, y), c) in d.iter() {
            for ((x1, x2), e) in view.comultiply(x).iter() {
                left.add_term((x1.clone(), x2.clone(), y.clone()), c * e);
            }
            for ((y1, y2), e) in view.comultiply(y).iter() {
                right.add_term((x.clone(), y1.clone(), y2.clone()), c * e);
            }
        }
        report.checked += 1;
        if left != right {
            report.failures.push(view.label(b));
        }
    }
    report
}

/// `(ε⊗id)Δ(b) = b = (id⊗ε)Δ(b)` for each `b` in `sample`.
pub fn check_counit<V: BialgebraView>(
    view: &V,
    eps: &LinearFunctional,
    sample: &[V::Basis],
) -> Result<AxiomReport> {
    eps.check_basis(view)?;
    let mut report = AxiomReport::new("counit");
    for b in sample {
        let d = view.comultiply(b);
        let target = Element::basis(b.clone());
        report.checked += 1;
        if eps.slice_left(view, &d)? != target || eps.slice_right(view, &d)? != target {
            report.failures.push(view.label(b));
        }
    }
    Ok(report)
}

/// `m(κ⊗id)Δ(b) = ε(b)1 = m(id⊗κ)Δ(b)` for each `b` in `sample`.
pub fn check_antipode<V: BialgebraView>(
    view: &V,
    kappa: impl Fn(&V::Basis) -> Element<V::Basis>,
    eps: &LinearFunctional,
    sample: &[V::Basis],
) -> Result<AxiomReport> {
    eps.check_basis(view)?;
    let mut report = AxiomReport::new("antipode");
    let unit = view.unit();
    for b in sample {
        let d = view.comultiply(b);
        let target = unit.scale(&eps.value(view, b)?);
        let mut left = Element::zero();
        let mut right = Element::zero();
        for ((x, y), c) in d.iter() {
            left.add_scaled(&view.mul(&kappa(x), &Element::basis(y.clone())), c);
            right.add_scaled(&view.mul(&Element::basis(x.clone()), &kappa(y)), c);
        }
        report.checked += 1;
        if left != target || right != target {
            report.failures.push(view.label(b));
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DensityReport {
    /// Rank of span{(a⊗1)Δ(b)}.
    pub left_rank: usize,
    /// Rank of span{(1⊗a)Δ(b)}.
    pub right_rank: usize,
    /// `dim(A⊗A)`, or the size of the degree flag space for truncations.
    pub target_dim: usize,
    pub degree_bound: Option<usize>,
    pub left_missing: Vec<String>,
    pub right_missing: Vec<String>,
}

impl DensityReport {
    pub fn passed(&self) -> bool {
        self.left_missing.is_empty() && self.right_missing.is_empty()
    }
}

/// Spans of `(a⊗1)Δ(b)` and `(1⊗a)Δ(b)` over all basis pairs.
///
/// For a finite basis the target is all of `A⊗A`. For a degree-`d`
/// truncation the target is the flag space spanned by `x⊗y` with
/// `deg x + deg y ≤ d`; a target tensor counts as attained when it lies in
/// the span generated from the truncated basis.
pub fn check_density_spans<V: BialgebraView>(view: &V) -> DensityReport {
    let basis = view.basis();
    let bound = view.degree_bound();
    let mut left = SpanBuilder::new();
    let mut right = SpanBuilder::new();
    for a in &basis {
        let ea = Element::basis(a.clone());
        for b in &basis {
            let d = view.comultiply(b);
            let mut l = Tensor::zero();
            let mut r = Tensor::zero();
            for ((x, y), c) in d.iter() {
                let ax = view.mul(&ea, &Element::basis(x.clone()));
                let ay = view.mul(&ea, &Element::basis(y.clone()));
                l.add_scaled(&Tensor::pure(&ax, &Element::basis(y.clone())), c);
                r.add_scaled(&Tensor::pure(&Element::basis(x.clone()), &ay), c);
            }
            left.insert(l.into_map());
            right.insert(r.into_map());
        }
    }
    let targets: Vec<(V::Basis, V::Basis)> = basis
        .iter()
        .flat_map(|x| basis.iter().map(move |y| (x.clone(), y.clone())))
        .filter(|(x, y)| bound.is_none_or(|d| view.degree(x) + view.degree(y) <= d))
        .collect();
    let missing = |span: &SpanBuilder<(V::Basis, V::Basis)>| -> Vec<String> {
        targets
            .iter()
            .filter(|t| !span.contains(BTreeMap::from([((*t).clone(), ExactScalar::one())])))
            .map(|(x, y)| format!("{}⊗{}", view.label(x), view.label(y)))
            .collect()
    };
    DensityReport {
        left_rank: left.rank(),
        right_rank: right.rank(),
        target_dim: targets.len(),
        degree_bound: bound,
        left_missing: missing(&left),
        right_missing: missing(&right),
    }
}

/// `(h⊗id)Δ(b) = h(b)1 = (id⊗h)Δ(b)` for each `b` in `sample`.
pub fn check_invariance<V: BialgebraView>(
    view: &V,
    h: &LinearFunctional,
    sample: &[V::Basis],
) -> Result<AxiomReport> {
    h.check_basis(view)?;
    let mut report = AxiomReport::new("invariance");
    let unit = view.unit();
    for b in sample {
        let d = view.comultiply(b);
        let target = unit.scale(&h.value(view, b)?);
        report.checked += 1;
        if h.slice_left(view, &d)? != target || h.slice_right(view, &d)? != target {
            report.failures.push(view.label(b));
        }
    }
    Ok(report)
}
