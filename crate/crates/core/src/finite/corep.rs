use serde::{Deserialize, Serialize};

use super::FiniteQuantumGroup;
use crate::bialgebra::{BialgebraView, Element, Tensor};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::ExactScalar;

/// Square matrix of algebra elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Corepresentation {
    pub size: usize,
    /// Row-major, `entries[i * size + j] = w_ij`.
    pub entries: Vec<Element<usize>>,
}

impl Corepresentation {
    pub fn entry(&self, i: usize, j: usize) -> &Element<usize> {
        &self.entries[i * self.size + j]
    }

    pub fn to_json(&self) -> CorepJson {
        CorepJson {
            size: self.size,
            entries: (0..self.size)
                .map(|i| {
                    (0..self.size)
                        .map(|j| {
                            self.entry(i, j)
                                .iter()
                                .map(|(&k, c)| {
                                    let (re, im) = c.to_strings();
                                    (k, re, im)
                                })
                                .collect()
                        })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn from_json(j: &CorepJson, dim: usize) -> Result<Self> {
        if j.entries.len() != j.size || j.entries.iter().any(|r| r.len() != j.size) {
            return Err(Error::Invalid("corepresentation entries are not a size×size array".into()));
        }
        let mut entries = Vec::with_capacity(j.size * j.size);
        for row in &j.entries {
            for cell in row {
                let mut e = Element::zero();
                for (k, re, im) in cell {
                    if *k >= dim {
                        return Err(Error::Invalid(format!("basis index {k} out of range")));
                    }
                    e.add_term(*k, ExactScalar::from_strings(re, im)?);
                }
                entries.push(e);
            }
        }
        Ok(Self { size: j.size, entries })
    }
}

/// On-disk form: `{"size": N, "entries": [[ [[k, "re", "im"], ...], ... ], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CorepJson {
    pub size: usize,
    pub entries: Vec<Vec<Vec<(usize, String, String)>>>,
}

/// `Δ(w_ij) = Σ_k w_ik ⊗ w_kj` for all `i, j`.
pub fn verify_corepresentation(a: &FiniteQuantumGroup, w: &Corepresentation) -> bool {
    let n = w.size;
    (0..n).all(|i| {
        (0..n).all(|j| {
            let mut rhs = Tensor::zero();
            for k in 0..n {
                rhs.add_scaled(&Tensor::pure(w.entry(i, k), w.entry(k, j)), &ExactScalar::one());
            }
            a.delta(w.entry(i, j)) == rhs
        })
    })
}

#[derive(Clone, Debug)]
pub struct CorepDecomposition {
    pub x: Element<usize>,
    /// Basis `e_i` of the span of the left legs, with `Δ(e_j) = Σ_k e_k ⊗ w_kj`.
    pub e: Vec<Element<usize>>,
    /// Linearly independent right legs, `Δ(x) = Σ_i e_i ⊗ z_i`.
    pub z: Vec<Element<usize>>,
    pub w: Corepresentation,
    /// `coefficients[i][j] = ε(z_i e_j)`, so that `x = Σ_ij ε(z_i e_j) w_ji`.
    pub coefficients: Vec<Vec<ExactScalar>>,
    /// `v_ij = w_ij + (δ_ij − ε(w_ij))·1`.
    pub v: Corepresentation,
}

impl CorepDecomposition {
    pub fn reconstruct(&self) -> Element<usize> {
        let mut out = Element::zero();
        for (i, row) in self.coefficients.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                out.add_scaled(self.w.entry(j, i), c);
            }
        }
        out
    }
}

/// Writes `x` as a combination of corepresentation entries.
///
/// Row reduction of the coefficient matrix of `Δ(x)` yields independent right
/// legs `z_i` with unit entries at pivot columns `p_i`; the dual functionals
/// are the coordinates at those pivots, so the choice is deterministic.
pub fn corep_decompose(a: &FiniteQuantumGroup, x: &Element<usize>) -> Result<CorepDecomposition> {
    let n = a.dim;
    let eps = a
        .counit_functional()
        .ok_or_else(|| Error::Unsupported(format!("{} has no counit", a.name)))?;
    let d = a.delta(x);
    let c = Matrix::from_fn(n, n, |p, q| d.coeff(&(p, q)));
    let (rref, pivots) = c.rref();
    let r = pivots.len();
    let z: Vec<Element<usize>> = (0..r).map(|i| FiniteQuantumGroup::from_dense(rref.row(i))).collect();
    let e: Vec<Element<usize>> = pivots.iter().map(|&p| FiniteQuantumGroup::from_dense(&c.column(p))).collect();
    let mut entries = Vec::with_capacity(r * r);
    for zi in &z {
        let dz = a.delta(zi);
        for &pj in &pivots {
            let mut w = Element::zero();
            for ((u, v), coeff) in dz.iter() {
                if *v == pj {
                    w.add_term(*u, coeff.clone());
                }
            }
            entries.push(w);
        }
    }
    let w = Corepresentation { size: r, entries };
    let coefficients = (0..r)
        .map(|i| (0..r).map(|j| eps.eval(a, &a.mul(&z[i], &e[j]))).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let mut v_entries = Vec::with_capacity(r * r);
    for i in 0..r {
        for j in 0..r {
            let wij = w.entry(i, j);
            let delta = if i == j { ExactScalar::one() } else { ExactScalar::zero() };
            let shift = &delta - &eps.eval(a, wij)?;
            let mut v = wij.clone();
            v.add_scaled(&a.unit, &shift);
            v_entries.push(v);
        }
    }
    Ok(CorepDecomposition {
        x: x.clone(),
        e,
        z,
        w,
        coefficients,
        v: Corepresentation { size: r, entries: v_entries },
    })
}
