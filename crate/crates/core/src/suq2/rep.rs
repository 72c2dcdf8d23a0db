use super::Mono;
use crate::error::{Error, Result};
use crate::spectral::tridiagonal_top_eigenvalue;

/// Real sparse matrix in triplet form.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix {
    pub dim: usize,
    pub entries: Vec<(usize, usize, f64)>,
}

impl SparseMatrix {
    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        for &(r, c, x) in &self.entries {
            out[r] += x * v[c];
        }
        out
    }

    pub fn adjoint(&self) -> SparseMatrix {
        SparseMatrix { dim: self.dim, entries: self.entries.iter().map(|&(r, c, x)| (c, r, x)).collect() }
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let mut m = vec![vec![0.0; self.dim]; self.dim];
        for &(r, c, x) in &self.entries {
            m[r][c] += x;
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.2 == 0.0)
    }
}

/// `φ` on the span of `e_{n,k}`, `0 ≤ n ≤ n_max`, `|k| ≤ k_window`, with
/// `φ(α)e_{nk} = c_n e_{n-1,k}` and `φ(γ)e_{nk} = qⁿ e_{n,k+1}`; vectors
/// pushed outside the window are dropped.
#[derive(Clone, Debug)]
pub struct TruncatedRep {
    pub q: f64,
    pub n_max: usize,
    pub k_window: usize,
    pub alpha: SparseMatrix,
    pub alpha_adj: SparseMatrix,
    pub gamma: SparseMatrix,
    pub gamma_adj: SparseMatrix,
}

/// Largest sup-norm residual of each defining relation on interior basis vectors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RelationResiduals {
    /// `α*α + γ*γ − 1`.
    pub left_unitarity: f64,
    /// `αα* + q²γγ* − 1`.
    pub right_unitarity: f64,
    /// `αγ − qγα`.
    pub alpha_gamma: f64,
    /// `αγ* − qγ*α`.
    pub alpha_gamma_star: f64,
    /// `γγ* − γ*γ`.
    pub gamma_normal: f64,
}

impl RelationResiduals {
    pub fn max(&self) -> f64 {
        [self.left_unitarity, self.right_unitarity, self.alpha_gamma, self.alpha_gamma_star, self.gamma_normal]
            .into_iter()
            .fold(0.0, f64::max)
    }
}

pub fn c(q: f64, n: usize) -> f64 {
    (1.0 - q.powi(2 * n as i32)).sqrt()
}

impl TruncatedRep {
    pub fn new(q: f64, n_max: usize, k_window: usize) -> Result<Self> {
        if !(q.is_finite() && q != 0.0 && q.abs() < 1.0) {
            return Err(Error::Invalid(format!("q = {q} must satisfy 0 < |q| < 1")));
        }
        if n_max == 0 {
            return Err(Error::Invalid("n_max must be positive".into()));
        }
        let dim = (n_max + 1) * (2 * k_window + 1);
        let kw = k_window as i64;
        let idx = |n: usize, k: i64| ((k + kw) as usize) * (n_max + 1) + n;
        let mut alpha = Vec::new();
        let mut gamma = Vec::new();
        for k in -kw..=kw {
            for n in 0..=n_max {
                if n > 0 {
                    alpha.push((idx(n - 1, k), idx(n, k), c(q, n)));
                }
                if k < kw {
                    gamma.push((idx(n, k + 1), idx(n, k), q.powi(n as i32)));
                }
            }
        }
        let alpha = SparseMatrix { dim, entries: alpha };
        let gamma = SparseMatrix { dim, entries: gamma };
        Ok(Self {
            q,
            n_max,
            k_window,
            alpha_adj: alpha.adjoint(),
            gamma_adj: gamma.adjoint(),
            alpha,
            gamma,
        })
    }

    pub fn dim(&self) -> usize {
        self.alpha.dim
    }

    pub fn index(&self, n: usize, k: i64) -> usize {
        ((k + self.k_window as i64) as usize) * (self.n_max + 1) + n
    }

    pub fn basis_vector(&self, n: usize, k: i64) -> Vec<f64> {
        let mut v = vec![0.0; self.dim()];
        v[self.index(n, k)] = 1.0;
        v
    }

    /// `φ(α^{(k)} γ^m γ*^n) v`.
    pub fn apply_monomial(&self, a: &Mono, v: &[f64]) -> Vec<f64> {
        let mut w = v.to_vec();
        for _ in 0..a.n {
            w = self.gamma_adj.apply(&w);
        }
        for _ in 0..a.m {
            w = self.gamma.apply(&w);
        }
        let alpha = if a.k >= 0 { &self.alpha } else { &self.alpha_adj };
        for _ in 0..a.k.unsigned_abs() {
            w = alpha.apply(&w);
        }
        w
    }

    /// Relation residuals over `n < n_max`, `|k| < k_window`.
    pub fn relation_residuals(&self) -> RelationResiduals {
        let q = self.q;
        let (a, ad, g, gd) = (&self.alpha, &self.alpha_adj, &self.gamma, &self.gamma_adj);
        let mut r = RelationResiduals {
            left_unitarity: 0.0,
            right_unitarity: 0.0,
            alpha_gamma: 0.0,
            alpha_gamma_star: 0.0,
            gamma_normal: 0.0,
        };
        let sup = |x: Vec<f64>, y: Vec<f64>, s: f64, e: &[f64]| -> f64 {
            x.iter().zip(&y).zip(e).map(|((x, y), e)| (x + s * y - e).abs()).fold(0.0, f64::max)
        };
        let zero = vec![0.0; self.dim()];
        let kw = self.k_window as i64;
        for k in (1 - kw)..kw {
            for n in 0..self.n_max {
                let e = self.basis_vector(n, k);
                let upd = |slot: &mut f64, v: f64| *slot = slot.max(v);
                upd(&mut r.left_unitarity, sup(ad.apply(&a.apply(&e)), gd.apply(&g.apply(&e)), 1.0, &e));
                upd(&mut r.right_unitarity, sup(a.apply(&ad.apply(&e)), g.apply(&gd.apply(&e)), q * q, &e));
                upd(&mut r.alpha_gamma, sup(a.apply(&g.apply(&e)), g.apply(&a.apply(&e)), -q, &zero));
                upd(&mut r.alpha_gamma_star, sup(a.apply(&gd.apply(&e)), gd.apply(&a.apply(&e)), -q, &zero));
                upd(&mut r.gamma_normal, sup(g.apply(&gd.apply(&e)), gd.apply(&g.apply(&e)), -1.0, &zero));
            }
        }
        r
    }

    /// Partial sum `(1 − q²) Σ_{n ≤ n_max} q^{2n} ⟨φ(a) e_{n0}, e_{n0}⟩`.
    pub fn haar_series(&self, a: &Mono) -> f64 {
        let q2 = self.q * self.q;
        (0..=self.n_max)
            .map(|n| {
                let e = self.basis_vector(n, 0);
                let v = self.apply_monomial(a, &e);
                q2.powi(n as i32) * v[self.index(n, 0)]
            })
            .sum::<f64>()
            * (1.0 - q2)
    }
}

/// Top eigenvalue of `φ(α) + φ(α)*` on one `k`-block: the symmetric
/// tridiagonal matrix with zero diagonal and off-diagonal `c_1, …, c_{n_max}`.
pub fn spectral_witness(q: f64, n_max: usize) -> Result<f64> {
    if n_max < 2 {
        return Err(Error::Invalid("spectral witness needs n_max ≥ 2".into()));
    }
    if !(q.is_finite() && q != 0.0 && q.abs() < 1.0) {
        return Err(Error::Invalid(format!("q = {q} must satisfy 0 < |q| < 1")));
    }
    let diag = vec![0.0; n_max + 1];
    let off: Vec<f64> = (1..=n_max).map(|n| c(q, n)).collect();
    Ok(tridiagonal_top_eigenvalue(&diag, &off))
}
