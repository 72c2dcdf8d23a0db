//! Floating-point spectral tools: tridiagonal bisection and Lanczos.
//!
//! Everything here estimates the top of the spectrum of a self-adjoint
//! operator from below. Ritz values never exceed the true top eigenvalue
//! in exact arithmetic, which is what the verdict logic relies on.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

/// Scalars the Lanczos recurrence can run over.
pub trait LanczosField: Copy + Send + Sync + Default + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> {
    fn scale(self, r: f64) -> Self;
    fn conj(self) -> Self;
    fn re(self) -> f64;
    fn norm_sqr(self) -> f64;
    fn from_re(r: f64) -> Self;
}

impl LanczosField for f64 {
    fn scale(self, r: f64) -> Self {
        self * r
    }
    fn conj(self) -> Self {
        self
    }
    fn re(self) -> f64 {
        self
    }
    fn norm_sqr(self) -> f64 {
        self * self
    }
    fn from_re(r: f64) -> Self {
        r
    }
}

impl LanczosField for Complex64 {
    fn scale(self, r: f64) -> Self {
        self * r
    }
    fn conj(self) -> Self {
        Complex64::conj(&self)
    }
    fn re(self) -> f64 {
        self.re
    }
    fn norm_sqr(self) -> f64 {
        Complex64::norm_sqr(&self)
    }
    fn from_re(r: f64) -> Self {
        Complex64::new(r, 0.0)
    }
}

/// Number of eigenvalues strictly below `x` of the symmetric tridiagonal
/// matrix with diagonal `diag` and off-diagonal `off` (Sturm count).
pub fn sturm_count(diag: &[f64], off: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut d = 1.0f64;
    for i in 0..diag.len() {
        let b2 = if i == 0 { 0.0 } else { off[i - 1] * off[i - 1] };
        d = diag[i] - x - if i == 0 { 0.0 } else { b2 / d };
        if d == 0.0 {
            d = -f64::EPSILON * (x.abs() + 1.0);
        }
        if d < 0.0 {
            count += 1;
        }
    }
    count
}

/// Largest eigenvalue of a symmetric tridiagonal matrix by bisection.
pub fn tridiagonal_top_eigenvalue(diag: &[f64], off: &[f64]) -> f64 {
    let n = diag.len();
    assert!(n > 0 && off.len() + 1 >= n, "off-diagonal too short");
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let r = if i > 0 { off[i - 1].abs() } else { 0.0 } + if i + 1 < n { off[i].abs() } else { 0.0 };
        lo = lo.min(diag[i] - r);
        hi = hi.max(diag[i] + r);
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if sturm_count(diag, off, mid) == n {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    lo
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LanczosOutcome {
    pub estimate: f64,
    pub iterations: usize,
    /// The Krylov space became invariant; the estimate is then the top
    /// eigenvalue of the operator restricted to it.
    pub breakdown: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct LanczosConfig {
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for LanczosConfig {
    fn default() -> Self {
        Self { tol: 1e-9, max_iter: 2000 }
    }
}

/// Top Ritz value of a self-adjoint operator by the three-term recurrence.
///
/// No basis vectors are stored. Stops once the top Ritz value moves by less
/// than `tol` on two consecutive steps, on breakdown, or after `max_iter`.
pub fn lanczos_top<T: LanczosField>(
    n: usize,
    mut apply: impl FnMut(&[T], &mut [T]),
    start: &[T],
    cfg: LanczosConfig,
) -> LanczosOutcome {
    assert_eq!(start.len(), n);
    let norm = start.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    assert!(norm > 0.0, "zero start vector");
    let mut v: Vec<T> = start.iter().map(|x| x.scale(1.0 / norm)).collect();
    let mut prev = vec![T::default(); n];
    let mut w = vec![T::default(); n];
    let mut alphas = Vec::new();
    let mut betas: Vec<f64> = Vec::new();
    let mut beta_prev = 0.0;
    let mut theta_prev = f64::NEG_INFINITY;
    let mut calm = 0;
    let mut theta = 0.0;
    for it in 1..=cfg.max_iter {
        apply(&v, &mut w);
        let alpha: f64 = v.iter().zip(&w).map(|(a, b)| (a.conj() * *b).re()).sum();
        // prev <- w - alpha v - beta_prev prev
        for ((p, wi), vi) in prev.iter_mut().zip(&w).zip(&v) {
            *p = *wi - vi.scale(alpha) - p.scale(beta_prev);
        }
        let beta = prev.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        alphas.push(alpha);
        theta = tridiagonal_top_eigenvalue(&alphas, &betas);
        let scale = alphas.iter().map(|a| a.abs()).fold(1.0, f64::max).max(betas.iter().copied().fold(0.0, f64::max));
        if beta <= 1e-12 * scale {
            return LanczosOutcome { estimate: theta, iterations: it, breakdown: true };
        }
        if (theta - theta_prev).abs() < cfg.tol {
            calm += 1;
            if calm >= 2 {
                return LanczosOutcome { estimate: theta, iterations: it, breakdown: false };
            }
        } else {
            calm = 0;
        }
        theta_prev = theta;
        betas.push(beta);
        std::mem::swap(&mut prev, &mut v);
        for x in v.iter_mut() {
            *x = x.scale(1.0 / beta);
        }
        // After the swap `prev` holds the old v, as the recurrence needs.
        beta_prev = beta;
    }
    LanczosOutcome { estimate: theta, iterations: cfg.max_iter, breakdown: false }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_graph_closed_form() {
        for n in [1usize, 2, 5, 17, 101] {
            let top = tridiagonal_top_eigenvalue(&vec![0.0; n], &vec![1.0; n.saturating_sub(1)]);
            let exact = 2.0 * (std::f64::consts::PI / (n as f64 + 1.0)).cos();
            assert!((top - exact).abs() < 1e-12, "n={n}: {top} vs {exact}");
        }
    }

    #[test]
    fn bisection_matches_two_by_two() {
        // [[1,2],[2,-3]] has eigenvalues -1 ± 2√2.
        let top = tridiagonal_top_eigenvalue(&[1.0, -3.0], &[2.0]);
        assert!((top - (-1.0 + 2.0 * 2f64.sqrt())).abs() < 1e-13);
    }

    #[test]
    fn lanczos_on_path_graph() {
        let n = 101;
        let apply = |v: &[f64], out: &mut [f64]| {
            for i in 0..n {
                out[i] = if i > 0 { v[i - 1] } else { 0.0 } + if i + 1 < n { v[i + 1] } else { 0.0 };
            }
        };
        let mut start = vec![0.0; n];
        start[50] = 1.0;
        let out = lanczos_top(n, apply, &start, LanczosConfig::default());
        let exact = 2.0 * (std::f64::consts::PI / 102.0).cos();
        assert!((out.estimate - exact).abs() < 1e-9);
        assert!(out.estimate <= exact + 1e-12);
    }

    #[test]
    fn complex_lanczos_hermitian() {
        // [[0, i],[-i, 0]] has eigenvalues ±1.
        let apply = |v: &[Complex64], out: &mut [Complex64]| {
            out[0] = Complex64::i() * v[1];
            out[1] = -Complex64::i() * v[0];
        };
        let out = lanczos_top(2, apply, &[Complex64::new(1.0, 0.0), Complex64::new(0.3, 0.0)], LanczosConfig::default());
        assert!((out.estimate - 1.0).abs() < 1e-12);
    }
}
