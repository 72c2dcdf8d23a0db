use super::haar::{gram_matrix, haar_solve, left_kernel, vector_quotient};
use super::FiniteQuantumGroup;
use crate::bialgebra::Element;
use crate::error::{Error, Result};
use crate::functional::LinearFunctional;
use crate::linalg::{dot, Matrix};
use crate::scalar::ExactScalar;

/// GNS data of a state on the space `A/N_φ`.
#[derive(Clone, Debug)]
pub struct GnsData {
    pub gns_dim: usize,
    /// `⟨[a], [b]⟩ = b† G a` with `G[(k, l)] = φ(e_k* e_l)` on the representatives.
    pub inner_product: Matrix,
    /// `rep[i]` is left multiplication by `e_i` on the quotient.
    pub rep: Vec<Matrix>,
    pub cyclic_vector: Vec<ExactScalar>,
    pub representatives: Vec<usize>,
    projection: Matrix,
}

impl GnsData {
    /// Class of `x` in `A/N_φ`.
    pub fn class_of(&self, x: &Element<usize>) -> Vec<ExactScalar> {
        let mut out = vec![ExactScalar::zero(); self.gns_dim];
        for (&i, c) in x.iter() {
            for (r, o) in out.iter_mut().enumerate() {
                let t = &self.projection[(r, i)];
                if !t.is_zero() {
                    *o += &(c * t);
                }
            }
        }
        out
    }

    pub fn inner(&self, x: &[ExactScalar], y: &[ExactScalar]) -> ExactScalar {
        let gx = self.inner_product.mul_vec(x);
        let yc: Vec<ExactScalar> = y.iter().map(ExactScalar::conj).collect();
        dot(&yc, &gx)
    }

    /// Adjoint with respect to the GNS inner product.
    pub fn adjoint(&self, m: &Matrix) -> Matrix {
        let g = &self.inner_product;
        g.inverse().expect("GNS Gram matrix is invertible").mul(&m.conj_transpose()).mul(g)
    }

    /// Checks unitality, multiplicativity, the *-property and `φ(a) = ⟨π(a)z, z⟩`.
    pub fn verify(&self, a: &FiniteQuantumGroup, phi: &LinearFunctional) -> bool {
        let pi = |x: &Element<usize>| -> Matrix {
            let mut m = Matrix::zeros(self.gns_dim, self.gns_dim);
            for (&i, c) in x.iter() {
                m = m.add(&self.rep[i].scale(c));
            }
            m
        };
        if !pi(&a.unit).is_identity() {
            return false;
        }
        for i in 0..a.dim {
            let value = self.inner(&self.rep[i].mul_vec(&self.cyclic_vector), &self.cyclic_vector);
            if value != phi.coeffs[i] {
                return false;
            }
            if pi(&a.invol[i]) != self.adjoint(&self.rep[i]) {
                return false;
            }
            for j in 0..a.dim {
                if pi(&a.mult[i * a.dim + j]) != self.rep[i].mul(&self.rep[j]) {
                    return false;
                }
            }
        }
        true
    }
}

pub fn gns(a: &FiniteQuantumGroup, phi: &LinearFunctional) -> Result<GnsData> {
    phi.check_basis(a)?;
    if !phi.eval(a, &a.unit)?.is_one() {
        return Err(Error::Invalid("functional is not unital, so not a state".into()));
    }
    let kernel = left_kernel(a, phi)?;
    let (projection, reps) = vector_quotient(a.dim, &kernel);
    let m = reps.len();
    let full = gram_matrix(a, phi);
    let inner_product = Matrix::from_fn(m, m, |k, l| full[(reps[k], reps[l])].clone());
    let mut data = GnsData {
        gns_dim: m,
        inner_product,
        rep: Vec::new(),
        cyclic_vector: Vec::new(),
        representatives: reps.clone(),
        projection,
    };
    data.cyclic_vector = data.class_of(&a.unit);
    data.rep = (0..a.dim)
        .map(|i| {
            let mut mat = Matrix::zeros(m, m);
            for (col, &r) in reps.iter().enumerate() {
                let v = data.class_of(&a.mult[i * a.dim + r]);
                for (row, x) in v.into_iter().enumerate() {
                    mat[(row, col)] = x;
                }
            }
            mat
        })
        .collect();
    Ok(data)
}

/// `W(e_a⊗e_b) = Δ(e_b)(e_a⊗1)` on `A⊗A` with the Haar inner product.
#[derive(Clone, Debug)]
pub struct MultiplicativeUnitary {
    /// Column `a·n + b` is `W(e_a⊗e_b)`.
    pub matrix: Matrix,
    /// Gram matrix of `(h⊗h)(c'* c)` on basis tensors.
    pub gram: Matrix,
}

impl MultiplicativeUnitary {
    pub fn adjoint(&self) -> Matrix {
        self.gram.inverse().expect("faithful Haar").mul(&self.matrix.conj_transpose()).mul(&self.gram)
    }

    /// `W*W = I`.
    pub fn is_isometry(&self) -> bool {
        self.adjoint().mul(&self.matrix).is_identity()
    }

    /// `WW* = I`.
    pub fn is_coisometry(&self) -> bool {
        self.matrix.mul(&self.adjoint()).is_identity()
    }

    /// `(h⊗h)(W(c)*W(c')) = (h⊗h)(c*c')` on all basis tensors, i.e. `W†GW = G`.
    pub fn preserves_inner_product(&self) -> bool {
        self.matrix.conj_transpose().mul(&self.gram).mul(&self.matrix) == self.gram
    }
}

pub fn multiplicative_unitary(a: &FiniteQuantumGroup) -> Result<MultiplicativeUnitary> {
    let h = haar_solve(a)?;
    let g = gram_matrix(a, &h);
    if g.rank() != a.dim {
        return Err(Error::Invalid("Haar state is not faithful; reduce first".into()));
    }
    let n = a.dim;
    let mut w = Matrix::zeros(n * n, n * n);
    for x in 0..n {
        for b in 0..n {
            for ((p, y), c) in a.comult[b].iter() {
                for (&px, d) in a.mult[p * n + x].iter() {
                    w[(px * n + y, x * n + b)] += c * d;
                }
            }
        }
    }
    Ok(MultiplicativeUnitary { matrix: w, gram: g.kron(&g) })
}
