use std::collections::BTreeMap;

use super::FiniteQuantumGroup;
use crate::bialgebra::{BialgebraView, Element, Tensor};
use crate::error::{Error, Result};
use crate::functional::LinearFunctional;
use crate::linalg::{solve_sparse, Matrix};
use crate::scalar::ExactScalar;

/// Kernel of the two-sided invariance equations `(h⊗id)Δ(a) = h(a)1 = (id⊗h)Δ(a)`.
pub fn invariance_kernel(a: &FiniteQuantumGroup) -> Vec<Vec<ExactScalar>> {
    let n = a.dim;
    let mut eqs: BTreeMap<(u8, usize, usize), BTreeMap<usize, ExactScalar>> = BTreeMap::new();
    let mut add = |key, unknown, c: ExactScalar| {
        let row: &mut BTreeMap<usize, ExactScalar> = eqs.entry(key).or_default();
        let e = row.entry(unknown).or_insert_with(ExactScalar::zero);
        *e += c;
        if e.is_zero() {
            row.remove(&unknown);
        }
    };
    for b in 0..n {
        for ((x, y), c) in a.comult[b].iter() {
            add((0, b, *y), *x, c.clone());
            add((1, b, *x), *y, c.clone());
        }
        for (out, c) in a.unit.iter() {
            add((0, b, *out), b, -c);
            add((1, b, *out), b, -c);
        }
    }
    let rows = eqs.into_values().map(|r| (r, ExactScalar::zero()));
    solve_sparse(n, rows).expect("homogeneous system is consistent").kernel
}

/// The Haar state: unique invariant functional with `h(1) = 1`, checked positive.
pub fn haar_solve(a: &FiniteQuantumGroup) -> Result<LinearFunctional> {
    let kernel = invariance_kernel(a);
    if kernel.len() != 1 {
        return Err(Error::NotQuantumGroup(format!(
            "invariant functionals form a space of dimension {}, expected 1",
            kernel.len()
        )));
    }
    let v = &kernel[0];
    let h1: ExactScalar = a.unit.iter().map(|(&i, c)| c * &v[i]).sum();
    let Some(inv) = h1.inv() else {
        return Err(Error::NotQuantumGroup("invariant functional vanishes on 1".into()));
    };
    let h = LinearFunctional::new(a.basis_id(), v.iter().map(|x| x * &inv).collect());
    if !gram_matrix(a, &h).hermitian_psd().positive_semidefinite {
        return Err(Error::NotQuantumGroup("invariant functional is not positive".into()));
    }
    Ok(h)
}

/// `G[(i, j)] = φ(e_i* e_j)`.
pub fn gram_matrix(a: &FiniteQuantumGroup, phi: &LinearFunctional) -> Matrix {
    let n = a.dim;
    Matrix::from_fn(n, n, |i, j| {
        let p = a.mul(&a.invol[i], &Element::basis(j));
        phi.eval(a, &p).expect("finite basis")
    })
}

/// Basis of `{x : φ(x*x) = 0}` as coefficient vectors.
pub fn left_kernel(a: &FiniteQuantumGroup, phi: &LinearFunctional) -> Result<Vec<Vec<ExactScalar>>> {
    phi.check_basis(a)?;
    let g = gram_matrix(a, phi);
    if !g.hermitian_psd().positive_semidefinite {
        return Err(Error::NotPositive);
    }
    Ok(g.nullspace())
}

/// `A/N` for a *-ideal `N` that is also a coideal.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: FiniteQuantumGroup,
    /// `dim(A/N) × dim(A)` matrix of the quotient map.
    pub theta: Matrix,
    /// Basis indices of `A` whose classes form the quotient basis.
    pub representatives: Vec<usize>,
}

impl Quotient {
    pub fn project(&self, x: &Element<usize>) -> Element<usize> {
        let mut out = Element::zero();
        for (&i, c) in x.iter() {
            for r in 0..self.theta.rows() {
                let t = &self.theta[(r, i)];
                if !t.is_zero() {
                    out.add_term(r, c * t);
                }
            }
        }
        out
    }

    fn project_tensor(&self, t: &Tensor<usize>) -> Tensor<usize> {
        let mut out = Tensor::zero();
        for ((x, y), c) in t.iter() {
            let px = self.project(&Element::basis(*x));
            let py = self.project(&Element::basis(*y));
            out.add_scaled(&Tensor::pure(&px, &py), c);
        }
        out
    }
}

/// Quotient of `a` by the span of `ideal`.
///
/// The classes of the non-pivot basis vectors (after row reduction of the
/// spanning set) form the quotient basis. Rejects subspaces that are not
/// two-sided *-ideals and coideals. The counit and antipode descend when
/// they preserve the subspace.
pub fn quotient(a: &FiniteQuantumGroup, ideal: &[Vec<ExactScalar>]) -> Result<Quotient> {
    let n = a.dim;
    let (theta, reps) = vector_quotient(n, ideal);
    let q = Quotient { algebra: a.clone(), theta, representatives: reps.clone() };
    let basis_rows: Vec<Element<usize>> = ideal.iter().map(|v| FiniteQuantumGroup::from_dense(v)).collect();
    for nvec in &basis_rows {
        if !q.project(nvec).is_zero() {
            return Err(Error::Invalid("projection does not annihilate the subspace".into()));
        }
        if !q.project(&a.star(nvec)).is_zero() {
            return Err(Error::Invalid("subspace is not closed under the involution".into()));
        }
        for i in 0..n {
            let e = Element::basis(i);
            if !q.project(&a.mul(&e, nvec)).is_zero() || !q.project(&a.mul(nvec, &e)).is_zero() {
                return Err(Error::Invalid("subspace is not a two-sided ideal".into()));
            }
        }
        if !q.project_tensor(&a.delta(nvec)).is_zero() {
            return Err(Error::Invalid("subspace is not a coideal".into()));
        }
    }
    let m = reps.len();
    let mut mult = Vec::with_capacity(m * m);
    for &x in &reps {
        for &y in &reps {
            mult.push(q.project(&a.mult[x * n + y]));
        }
    }
    let counit = a.counit_functional().and_then(|eps| {
        let kills = basis_rows.iter().all(|v| eps.eval(a, v).unwrap().is_zero());
        kills.then(|| reps.iter().map(|&i| eps.coeffs[i].clone()).collect())
    });
    let antipode = a.antipode_map().and_then(|k| {
        let preserves = basis_rows.iter().all(|v| {
            let kv = v.flat_map(|i| k[*i].clone());
            q.project(&kv).is_zero()
        });
        preserves.then(|| reps.iter().map(|&i| q.project(&k[i])).collect())
    });
    let algebra = FiniteQuantumGroup {
        name: format!("{}/N", a.name),
        dim: m,
        labels: reps.iter().map(|&i| format!("[{}]", a.labels[i])).collect(),
        unit: q.project(&a.unit),
        mult,
        invol: reps.iter().map(|&i| q.project(&a.invol[i])).collect(),
        comult: reps.iter().map(|&i| q.project_tensor(&a.comult[i])).collect(),
        counit,
        antipode,
    };
    Ok(Quotient { algebra, ..q })
}

/// The reduced quantum group `A_r = A/N_h`.
#[derive(Clone, Debug)]
pub struct Reduced {
    pub quotient: Quotient,
    pub haar: LinearFunctional,
    pub reduced_haar: LinearFunctional,
    pub reduced_haar_faithful: bool,
    pub theta_bijective: bool,
    /// `Δ_r(θ(a)) = (θ⊗θ)Δ(a)` on every basis element.
    pub theta_intertwines: bool,
    /// `h = h_r∘θ` on every basis element.
    pub haar_factors: bool,
}

/// Row-reduced projection `A → A/span(kernel)`; returns the projection and representatives.
pub(crate) fn vector_quotient(n: usize, kernel: &[Vec<ExactScalar>]) -> (Matrix, Vec<usize>) {
    if kernel.is_empty() {
        return (Matrix::identity(n), (0..n).collect());
    }
    let (rref, pivots) = Matrix::from_rows(kernel.to_vec()).rref();
    let reps: Vec<usize> = (0..n).filter(|i| !pivots.contains(i)).collect();
    let proj = Matrix::from_fn(reps.len(), n, |r, i| match reps.iter().position(|&f| f == i) {
        Some(k) => if k == r { ExactScalar::one() } else { ExactScalar::zero() },
        None => {
            let row = pivots.iter().position(|&p| p == i).unwrap();
            -&rref[(row, reps[r])]
        }
    });
    (proj, reps)
}

pub fn reduce(a: &FiniteQuantumGroup) -> Result<Reduced> {
    let h = haar_solve(a)?;
    let kernel = left_kernel(a, &h)?;
    let mut q = quotient(a, &kernel)?;
    q.algebra.name = format!("{}_r", a.name);
    let ar = &q.algebra;
    let reduced_haar =
        LinearFunctional::new(ar.basis_id(), q.representatives.iter().map(|&i| h.coeffs[i].clone()).collect());
    let reduced_haar_faithful = gram_matrix(ar, &reduced_haar).hermitian_psd().positive_definite(ar.dim);
    let theta_intertwines = (0..a.dim).all(|i| {
        let lhs = ar.delta(&q.project(&Element::basis(i)));
        lhs == q.project_tensor(&a.comult[i])
    });
    let haar_factors = (0..a.dim).all(|i| {
        reduced_haar.eval(ar, &q.project(&Element::basis(i))).unwrap() == h.coeffs[i]
    });
    let theta_bijective = q.theta.is_square() && q.theta.rank() == a.dim;
    Ok(Reduced { quotient: q, haar: h, reduced_haar, reduced_haar_faithful, theta_bijective, theta_intertwines, haar_factors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::{function_algebra, group_algebra, tensor_product, trivial, GroupTable};

    fn s(n: i64) -> ExactScalar {
        ExactScalar::from_int(n)
    }

    fn half() -> ExactScalar {
        ExactScalar::ratio(1, 2)
    }

    #[test]
    fn haar_of_cz2_is_uniform() {
        let a = function_algebra(&GroupTable::cyclic(2));
        assert_eq!(haar_solve(&a).unwrap().coeffs, vec![half(), half()]);
    }

    #[test]
    fn haar_of_group_algebra_is_trace() {
        let a = group_algebra(&GroupTable::symmetric3());
        let h = haar_solve(&a).unwrap();
        assert_eq!(h.coeffs, vec![s(1), s(0), s(0), s(0), s(0), s(0)]);
        let z2 = group_algebra(&GroupTable::cyclic(2));
        assert_eq!(haar_solve(&z2).unwrap().coeffs, vec![s(1), s(0)]);
    }

    #[test]
    fn haar_of_trivial_is_counit() {
        let c = trivial();
        assert_eq!(haar_solve(&c).unwrap().coeffs, c.counit.clone().unwrap());
    }

    #[test]
    fn haar_of_tensor_product_factors() {
        let z2 = GroupTable::cyclic(2);
        let (a, b) = (function_algebra(&z2), group_algebra(&z2));
        let t = tensor_product(&a, &b);
        let (ha, hb, ht) = (haar_solve(&a).unwrap(), haar_solve(&b).unwrap(), haar_solve(&t).unwrap());
        for x in 0..t.dim {
            assert_eq!(ht.coeffs[x], &ha.coeffs[x / 2] * &hb.coeffs[x % 2]);
        }
    }

    #[test]
    fn left_kernels() {
        let a = function_algebra(&GroupTable::cyclic(2));
        let h = haar_solve(&a).unwrap();
        assert!(left_kernel(&a, &h).unwrap().is_empty());
        let ev0 = LinearFunctional::new(a.basis_id(), vec![s(1), s(0)]);
        assert_eq!(left_kernel(&a, &ev0).unwrap(), vec![vec![s(0), s(1)]]);
        let s3 = function_algebra(&GroupTable::symmetric3());
        let hs = haar_solve(&s3).unwrap();
        assert_eq!(gram_matrix(&s3, &hs).rank(), 6);
        let neg = LinearFunctional::new(a.basis_id(), vec![s(1), s(-1)]);
        assert!(matches!(left_kernel(&a, &neg), Err(Error::NotPositive)));
    }

    #[test]
    fn reduce_is_bijective_on_finite_examples() {
        for a in [
            function_algebra(&GroupTable::cyclic(2)),
            function_algebra(&GroupTable::symmetric3()),
            group_algebra(&GroupTable::symmetric3()),
        ] {
            let r = reduce(&a).unwrap();
            assert!(r.theta_bijective && r.reduced_haar_faithful && r.theta_intertwines && r.haar_factors);
        }
        let a = function_algebra(&GroupTable::cyclic(2));
        let r = reduce(&a).unwrap();
        assert!(r.quotient.theta.is_identity());
        assert_eq!(r.quotient.algebra.mult, a.mult);
    }

    #[test]
    fn quotient_by_left_kernel_of_point_evaluation() {
        let a = function_algebra(&GroupTable::cyclic(2));
        let ev0 = LinearFunctional::new(a.basis_id(), vec![s(1), s(0)]);
        let q = quotient(&a, &left_kernel(&a, &ev0).unwrap()).unwrap();
        assert_eq!(q.algebra.dim, 1);
        assert_eq!(q.algebra.unit, Element::basis(0));
        assert!(q.algebra.structure_report().passed());
    }

    #[test]
    fn quotient_rejects_non_ideals() {
        let a = group_algebra(&GroupTable::cyclic(2));
        // span{u1} is not an ideal: u1·u1 = u0.
        assert!(quotient(&a, &[vec![s(0), s(1)]]).is_err());
    }
}
