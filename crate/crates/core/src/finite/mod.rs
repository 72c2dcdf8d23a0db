//! Finite-dimensional compact quantum groups given by structure constants.

mod bundled;
mod characters;
mod constructors;
mod corep;
mod gns;
mod haar;
mod json;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::bialgebra::{BialgebraView, Element, Tensor};
use crate::checks::{self, AxiomReport, DensityReport};
use crate::error::{Error, Result};
use crate::functional::LinearFunctional;
use crate::linalg::{solve_sparse, Matrix};
use crate::scalar::ExactScalar;

pub use bundled::{bundled, bundled_names, bundled_quantum_group_names, reference_objects, corrupted_function_algebra_s3, BUNDLED_JSON};
pub use characters::{characters, convolution_table, is_isomorphic_to_group, translate, CharacterSet};
pub use constructors::{
    disc_truncation, function_algebra, group_algebra, tensor_product, trivial, GroupTable,
};
pub use corep::{corep_decompose, verify_corepresentation, CorepDecomposition, CorepJson, Corepresentation};
pub use gns::{gns, multiplicative_unitary, GnsData, MultiplicativeUnitary};
pub use haar::{gram_matrix, haar_solve, invariance_kernel, left_kernel, quotient, reduce, Quotient, Reduced};
pub use json::FqgJson;

/// Finite-dimensional *-algebra with comultiplication, basis indexed `0..dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteQuantumGroup {
    pub name: String,
    pub dim: usize,
    pub labels: Vec<String>,
    pub unit: Element<usize>,
    /// `mult[i * dim + j] = e_i e_j`.
    pub mult: Vec<Element<usize>>,
    /// `invol[i] = e_i*`.
    pub invol: Vec<Element<usize>>,
    pub comult: Vec<Tensor<usize>>,
    /// Known counit; solved for when absent.
    pub counit: Option<Vec<ExactScalar>>,
    /// Known antipode; solved for when absent.
    pub antipode: Option<Vec<Element<usize>>>,
}

impl FiniteQuantumGroup {
    pub fn basis_element(&self, i: usize) -> Element<usize> {
        Element::basis(i)
    }

    pub fn to_dense(&self, x: &Element<usize>) -> Vec<ExactScalar> {
        let mut v = vec![ExactScalar::zero(); self.dim];
        for (&i, c) in x.iter() {
            v[i] = c.clone();
        }
        v
    }

    pub fn from_dense(v: &[ExactScalar]) -> Element<usize> {
        Element::from_terms(v.iter().cloned().enumerate())
    }

    /// Matrix of left multiplication by `x`; column `j` holds `x e_j`.
    pub fn left_mult_matrix(&self, x: &Element<usize>) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            for (&i, c) in self.mul(x, &Element::basis(j)).iter() {
                m[(i, j)] = c.clone();
            }
        }
        m
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (i..self.dim).all(|j| self.mult[i * self.dim + j] == self.mult[j * self.dim + i]))
    }

    pub fn is_cocommutative(&self) -> bool {
        self.comult.iter().all(|d| *d == d.flip())
    }

    /// Relabels the algebra name; structure is untouched.
    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Unique functional with `(ε⊗id)Δ = id = (id⊗ε)Δ`, if one exists.
    pub fn solve_counit(&self) -> Option<Vec<ExactScalar>> {
        let n = self.dim;
        let mut eqs: BTreeMap<(u8, usize, usize), BTreeMap<usize, ExactScalar>> = BTreeMap::new();
        for b in 0..n {
            for ((x, y), c) in self.comult[b].iter() {
                add_coeff(&mut eqs, (0, b, *y), *x, c);
                add_coeff(&mut eqs, (1, b, *x), *y, c);
            }
        }
        let mut rows = Vec::new();
        for side in 0..2u8 {
            for b in 0..n {
                for out in 0..n {
                    let rhs = if b == out { ExactScalar::one() } else { ExactScalar::zero() };
                    rows.push((eqs.remove(&(side, b, out)).unwrap_or_default(), rhs));
                }
            }
        }
        let sol = solve_sparse(n, rows)?;
        sol.kernel.is_empty().then_some(sol.particular)
    }

    /// Unique linear map with `m(κ⊗id)Δ = ε(·)1 = m(id⊗κ)Δ`, if one exists.
    pub fn solve_antipode(&self, eps: &[ExactScalar]) -> Option<Vec<Element<usize>>> {
        let n = self.dim;
        // Unknown K[j][x] = coefficient of e_j in κ(e_x), flattened as j*n + x.
        let mut eqs: BTreeMap<(u8, usize, usize), BTreeMap<usize, ExactScalar>> = BTreeMap::new();
        for b in 0..n {
            for ((x, y), c) in self.comult[b].iter() {
                for j in 0..n {
                    for (&out, d) in self.mult[j * n + y].iter() {
                        add_coeff(&mut eqs, (0, b, out), j * n + x, &(c * d));
                    }
                    for (&out, d) in self.mult[x * n + j].iter() {
                        add_coeff(&mut eqs, (1, b, out), j * n + y, &(c * d));
                    }
                }
            }
        }
        let mut rows = Vec::new();
        for side in 0..2u8 {
            for b in 0..n {
                for out in 0..n {
                    let rhs = &eps[b] * &self.unit.coeff(&out);
                    let row = eqs.remove(&(side, b, out)).unwrap_or_default();
                    rows.push((row, rhs));
                }
            }
        }
        let sol = solve_sparse(n * n, rows)?;
        if !sol.kernel.is_empty() {
            return None;
        }
        Some(
            (0..n)
                .map(|x| Element::from_terms((0..n).map(|j| (j, sol.particular[j * n + x].clone()))))
                .collect(),
        )
    }

    /// Counit, from the stored value or by solving.
    pub fn counit_functional(&self) -> Option<LinearFunctional> {
        let c = self.counit.clone().or_else(|| self.solve_counit())?;
        Some(LinearFunctional::new(self.basis_id(), c))
    }

    pub fn antipode_map(&self) -> Option<Vec<Element<usize>>> {
        if let Some(k) = &self.antipode {
            return Some(k.clone());
        }
        let eps = self.counit_functional()?;
        self.solve_antipode(&eps.coeffs)
    }

    /// Fills in counit and antipode by solving when they are absent.
    pub fn with_derived_structure(mut self) -> Self {
        if self.counit.is_none() {
            self.counit = self.solve_counit();
        }
        if self.antipode.is_none() {
            if let Some(eps) = &self.counit {
                self.antipode = self.solve_antipode(eps);
            }
        }
        self
    }

    /// Unit, associativity, involution and comultiplication-homomorphism checks.
    pub fn structure_report(&self) -> StructureReport {
        let n = self.dim;
        let mut failures = Vec::new();
        let e = |i: usize| Element::basis(i);
        for i in 0..n {
            if self.mul(&self.unit, &e(i)) != e(i) || self.mul(&e(i), &self.unit) != e(i) {
                failures.push(format!("unit: 1·{0} or {0}·1", self.labels[i]));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = &self.mult[i * n + j];
                for k in 0..n {
                    let left = self.mul(ij, &e(k));
                    let right = self.mul(&e(i), &self.mult[j * n + k]);
                    if left != right {
                        failures.push(format!(
                            "associativity: ({}·{})·{}",
                            self.labels[i], self.labels[j], self.labels[k]
                        ));
                    }
                }
            }
        }
        for i in 0..n {
            if self.star(&self.invol[i]) != e(i) {
                failures.push(format!("involution not involutive on {}", self.labels[i]));
            }
            for j in 0..n {
                let lhs = self.star(&self.mult[i * n + j]);
                let rhs = self.mul(&self.invol[j], &self.invol[i]);
                if lhs != rhs {
                    failures.push(format!(
                        "involution not antimultiplicative on ({}, {})",
                        self.labels[i], self.labels[j]
                    ));
                }
            }
        }
        let unit_tensor = Tensor::pure(&self.unit, &self.unit);
        if self.delta(&self.unit) != unit_tensor {
            failures.push("comultiplication: Δ(1) ≠ 1⊗1".into());
        }
        for i in 0..n {
            for j in 0..n {
                let lhs = self.delta(&self.mult[i * n + j]);
                let rhs = self.tensor_mul(&self.comult[i], &self.comult[j]);
                if lhs != rhs {
                    failures.push(format!(
                        "comultiplication not multiplicative on ({}, {})",
                        self.labels[i], self.labels[j]
                    ));
                }
            }
            let lhs = self.delta(&self.invol[i]);
            let rhs = self.tensor_star(&self.comult[i]);
            if lhs != rhs {
                failures.push(format!("comultiplication not *-preserving on {}", self.labels[i]));
            }
        }
        StructureReport { failures }
    }

    pub fn tensor_star(&self, t: &Tensor<usize>) -> Tensor<usize> {
        let mut out = Tensor::zero();
        for ((a, b), c) in t.iter() {
            out.add_scaled(&Tensor::pure(&self.invol[*a], &self.invol[*b]), &c.conj());
        }
        out
    }

    /// Every axiom the command line reports on, in one pass.
    pub fn axiom_report(&self) -> FullReport {
        let basis: Vec<usize> = (0..self.dim).collect();
        let structure = self.structure_report();
        let coassociativity = checks::check_coassociativity(self, &basis);
        let counit = self.counit_functional();
        let counit_report = counit.as_ref().map(|eps| checks::check_counit(self, eps, &basis).expect("basis matches"));
        let antipode = self.antipode_map();
        let antipode_report = match (&antipode, &counit) {
            (Some(k), Some(eps)) => Some(checks::check_antipode(self, |x| k[*x].clone(), eps, &basis).expect("basis matches")),
            _ => None,
        };
        let density = checks::check_density_spans(self);
        let haar = haar::haar_solve(self);
        let (haar_coeffs, haar_error) = match haar {
            Ok(h) => (Some(h.coeffs.iter().map(ToString::to_string).collect()), None),
            Err(e) => (None, Some(e.to_string())),
        };
        FullReport {
            name: self.name.clone(),
            dim: self.dim,
            structure,
            coassociativity,
            counit_present: counit.is_some(),
            counit: counit_report,
            antipode_present: antipode.is_some(),
            antipode: antipode_report,
            density,
            haar: haar_coeffs,
            haar_error,
        }
    }

    /// Checks that `map` (column `j` is the image of `e_j` in `target`) is a
    /// unital *-homomorphism intertwining the comultiplications.
    pub fn is_morphism_to(&self, target: &FiniteQuantumGroup, map: &Matrix) -> bool {
        assert_eq!((map.rows(), map.cols()), (target.dim, self.dim));
        let img = |x: &Element<usize>| -> Element<usize> {
            let mut out = Element::zero();
            for (&j, c) in x.iter() {
                out.add_scaled(&FiniteQuantumGroup::from_dense(&map.column(j)), c);
            }
            out
        };
        let img_t = |t: &Tensor<usize>| -> Tensor<usize> {
            let mut out = Tensor::zero();
            for ((a, b), c) in t.iter() {
                out.add_scaled(&Tensor::pure(&img(&Element::basis(*a)), &img(&Element::basis(*b))), c);
            }
            out
        };
        if img(&self.unit) != target.unit {
            return false;
        }
        let n = self.dim;
        for i in 0..n {
            let ei = Element::basis(i);
            if img(&self.invol[i]) != target.star(&img(&ei)) {
                return false;
            }
            if img_t(&self.comult[i]) != target.delta(&img(&ei)) {
                return false;
            }
            for j in 0..n {
                let lhs = img(&self.mult[i * n + j]);
                let rhs = target.mul(&img(&ei), &img(&Element::basis(j)));
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }
}

fn add_coeff(
    eqs: &mut BTreeMap<(u8, usize, usize), BTreeMap<usize, ExactScalar>>,
    key: (u8, usize, usize),
    unknown: usize,
    c: &ExactScalar,
) {
    let row = eqs.entry(key).or_default();
    let e = row.entry(unknown).or_insert_with(ExactScalar::zero);
    *e += c;
    if e.is_zero() {
        row.remove(&unknown);
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub failures: Vec<String>,
}

impl StructureReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Combined axiom report for one finite datum.
#[derive(Clone, Debug, Serialize)]
pub struct FullReport {
    pub name: String,
    pub dim: usize,
    pub structure: StructureReport,
    pub coassociativity: AxiomReport,
    pub counit_present: bool,
    pub counit: Option<AxiomReport>,
    pub antipode_present: bool,
    pub antipode: Option<AxiomReport>,
    pub density: DensityReport,
    pub haar: Option<Vec<String>>,
    pub haar_error: Option<String>,
}

impl FullReport {
    pub fn passed(&self) -> bool {
        self.structure.passed()
            && self.coassociativity.passed()
            && self.counit.as_ref().is_some_and(AxiomReport::passed)
            && self.antipode.as_ref().is_some_and(AxiomReport::passed)
            && self.density.passed()
            && self.haar.is_some()
    }

    /// Names of failing axioms, for diagnostics.
    pub fn failing_axioms(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.structure.passed() {
            out.push(format!("structure: {}", self.structure.failures.join("; ")));
        }
        if !self.coassociativity.passed() {
            out.push(format!("coassociativity fails on {}", self.coassociativity.failures.join(", ")));
        }
        match &self.counit {
            None => out.push("counit absent".into()),
            Some(r) if !r.passed() => out.push(format!("counit fails on {}", r.failures.join(", "))),
            _ => {}
        }
        match &self.antipode {
            None => out.push("antipode absent".into()),
            Some(r) if !r.passed() => out.push(format!("antipode fails on {}", r.failures.join(", "))),
            _ => {}
        }
        if !self.density.passed() {
            let first = self
                .density
                .left_missing
                .first()
                .or(self.density.right_missing.first())
                .cloned()
                .unwrap_or_default();
            out.push(format!(
                "density spans deficient (ranks {}/{} of {}; {} not attained)",
                self.density.left_rank, self.density.right_rank, self.density.target_dim, first
            ));
        }
        if let Some(e) = &self.haar_error {
            out.push(format!("haar: {e}"));
        }
        out
    }
}

impl BialgebraView for FiniteQuantumGroup {
    type Basis = usize;

    fn basis_id(&self) -> String {
        self.name.clone()
    }

    fn basis(&self) -> Vec<usize> {
        (0..self.dim).collect()
    }

    fn index_of(&self, b: &usize) -> Option<usize> {
        (*b < self.dim).then_some(*b)
    }

    fn label(&self, b: &usize) -> String {
        self.labels[*b].clone()
    }

    fn unit(&self) -> Element<usize> {
        self.unit.clone()
    }

    fn multiply(&self, x: &usize, y: &usize) -> Element<usize> {
        self.mult[x * self.dim + y].clone()
    }

    fn involution(&self, x: &usize) -> Element<usize> {
        self.invol[*x].clone()
    }

    fn comultiply(&self, x: &usize) -> Tensor<usize> {
        self.comult[*x].clone()
    }

    fn counit_values(&self) -> Option<Vec<ExactScalar>> {
        self.counit.clone().or_else(|| self.solve_counit())
    }

    fn antipode(&self, x: &usize) -> Option<Element<usize>> {
        self.antipode.as_ref().map(|k| k[*x].clone())
    }

    fn has_antipode(&self) -> bool {
        self.antipode.is_some()
    }
}

pub(crate) fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond { Ok(()) } else { Err(Error::Invalid(msg())) }
}
