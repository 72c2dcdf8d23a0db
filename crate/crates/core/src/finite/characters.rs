use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::constructors::GroupTable;
use super::haar::vector_quotient;
use super::FiniteQuantumGroup;
use crate::bialgebra::{BialgebraView, Element};
use crate::error::{Error, Result};
use crate::functional::{check_multiplicative, convolve, is_star_preserving, LinearFunctional};
use crate::linalg::{Matrix, SpanBuilder};
use crate::scalar::ExactScalar;

/// Characters of a finite quantum group with values in `ℚ(i)`.
#[derive(Clone, Debug)]
pub struct CharacterSet {
    /// Sorted by descending coefficient vector.
    pub characters: Vec<LinearFunctional>,
    /// Number of characters over `ℂ`, i.e. the dimension of `A/[A, A]`.
    pub total_count: usize,
    /// Characters taking values outside `ℚ(i)`; counted but not listed.
    pub non_rational: usize,
}

/// Span of `x[e_i, e_j]y` over basis elements, as dense vectors.
fn commutator_ideal(a: &FiniteQuantumGroup) -> Vec<Vec<ExactScalar>> {
    let n = a.dim;
    let mut span = SpanBuilder::new();
    let mut queue: Vec<Element<usize>> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let c = a.mult[i * n + j].sub(&a.mult[j * n + i]);
            if span.insert(c.as_map().clone()) {
                queue.push(c);
            }
        }
    }
    let mut members = queue.clone();
    while let Some(v) = queue.pop() {
        for k in 0..n {
            let e = Element::basis(k);
            for w in [a.mul(&e, &v), a.mul(&v, &e)] {
                if span.insert(w.as_map().clone()) {
                    members.push(w.clone());
                    queue.push(w);
                }
            }
        }
    }
    members.iter().map(|v| a.to_dense(v)).collect()
}

/// Coefficients of `det(xI − M)`, lowest degree first (Faddeev–LeVerrier).
fn char_poly(m: &Matrix) -> Vec<ExactScalar> {
    let n = m.rows();
    let mut coeffs = vec![ExactScalar::zero(); n + 1];
    coeffs[n] = ExactScalar::one();
    let mut mk = Matrix::zeros(n, n);
    for k in 1..=n {
        let prev = coeffs[n - k + 1].clone();
        mk = m.mul(&mk).add(&Matrix::identity(n).scale(&prev));
        let am = m.mul(&mk);
        let tr: ExactScalar = (0..n).map(|i| am[(i, i)].clone()).sum();
        coeffs[n - k] = -(&tr / &ExactScalar::from_int(k as i64));
    }
    coeffs
}

fn eval_poly(p: &[ExactScalar], x: &ExactScalar) -> ExactScalar {
    p.iter().rev().fold(ExactScalar::zero(), |acc, c| &(&acc * x) + c)
}

/// Approximate roots by the Aberth–Ehrlich iteration.
fn poly_roots(p: &[ExactScalar]) -> Vec<Complex64> {
    let n = p.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let c: Vec<Complex64> = p.iter().map(ExactScalar::to_complex64).collect();
    let lead = c[n];
    let c: Vec<Complex64> = c.iter().map(|x| x / lead).collect();
    let radius = 1.0 + c[..n].iter().map(|x| x.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius * 0.5, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64))
        .collect();
    let eval = |x: Complex64| {
        let mut v = Complex64::new(0.0, 0.0);
        let mut d = Complex64::new(0.0, 0.0);
        for k in (0..=n).rev() {
            d = d * x + v;
            v = v * x + c[k];
        }
        (v, d)
    };
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for k in 0..n {
            let (v, d) = eval(z[k]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / d;
            let s: Complex64 = (0..n).filter(|&j| j != k).map(|j| 1.0 / (z[k] - z[j])).sum();
            let w = ratio / (1.0 - ratio * s);
            z[k] -= w;
            moved = moved.max(w.norm());
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// Best rational approximation with denominator at most `max_den`.
fn rationalize(x: f64, max_den: i64) -> BigRational {
    let sign = if x < 0.0 { -1 } else { 1 };
    let mut v = x.abs();
    let (mut h0, mut h1, mut k0, mut k1) = (0i64, 1i64, 1i64, 0i64);
    for _ in 0..40 {
        let a = v.floor();
        let ai = a as i64;
        let h2 = ai.saturating_mul(h1).saturating_add(h0);
        let k2 = ai.saturating_mul(k1).saturating_add(k0);
        if k2 > max_den {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = v - a;
        if frac < 1e-12 {
            break;
        }
        v = 1.0 / frac;
    }
    BigRational::new(BigInt::from(sign * h1), BigInt::from(k1.max(1)))
}

fn rationalize_complex(z: Complex64) -> ExactScalar {
    ExactScalar::new(rationalize(z.re, 1 << 20), rationalize(z.im, 1 << 20))
}

/// Every unital multiplicative *-preserving functional with values in `ℚ(i)`.
///
/// Characters factor through the commutative quotient `B = A/[A, A]`. For a
/// generic element `g` of `B` the characters are the left eigenvectors of
/// left multiplication by `g`; eigenvalues are located numerically, snapped
/// to `ℚ(i)` and accepted only after exact verification.
pub fn characters(a: &FiniteQuantumGroup) -> Result<CharacterSet> {
    let n = a.dim;
    let ideal = commutator_ideal(a);
    let (theta, reps) = vector_quotient(n, &ideal);
    let m = reps.len();
    let project = |x: &Element<usize>| -> Vec<ExactScalar> {
        let mut out = vec![ExactScalar::zero(); m];
        for (&i, c) in x.iter() {
            for (r, o) in out.iter_mut().enumerate() {
                if !theta[(r, i)].is_zero() {
                    *o += &(c * &theta[(r, i)]);
                }
            }
        }
        out
    };
    let lift = |chi_b: &[ExactScalar]| -> LinearFunctional {
        LinearFunctional::new(
            a.basis_id(),
            (0..n).map(|i| (0..m).map(|r| &theta[(r, i)] * &chi_b[r]).sum()).collect(),
        )
    };
    // Left multiplication on B in the representative basis.
    let left_mult = |g: &[ExactScalar]| -> Matrix {
        let mut mat = Matrix::zeros(m, m);
        for (col, &r) in reps.iter().enumerate() {
            let mut prod = Element::zero();
            for (k, c) in g.iter().enumerate() {
                if !c.is_zero() {
                    prod.add_scaled(&a.mult[reps[k] * n + r], c);
                }
            }
            for (row, x) in project(&prod).into_iter().enumerate() {
                mat[(row, col)] = x;
            }
        }
        mat
    };
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _attempt in 0..32 {
        let g: Vec<ExactScalar> = (0..m).map(|_| ExactScalar::from_int(rng.gen_range(-9..=9))).collect();
        let lg = left_mult(&g);
        let poly = char_poly(&lg);
        let roots = poly_roots(&poly);
        let separated = roots.iter().enumerate().all(|(i, z)| roots[i + 1..].iter().all(|w| (z - w).norm() > 1e-6));
        if !separated {
            continue;
        }
        let lgt = lg.transpose();
        let mut found = Vec::new();
        for z in &roots {
            let lambda = rationalize_complex(*z);
            if !eval_poly(&poly, &lambda).is_zero() {
                continue;
            }
            let shifted = lgt.sub(&Matrix::identity(m).scale(&lambda));
            let kernel = shifted.nullspace();
            if kernel.len() != 1 {
                return Err(Error::Invalid("commutative quotient is not semisimple".into()));
            }
            let v = &kernel[0];
            let unit_class = project(&a.unit);
            let at_one: ExactScalar = v.iter().zip(&unit_class).map(|(x, y)| x * y).sum();
            let Some(inv) = at_one.inv() else { continue };
            let chi = lift(&v.iter().map(|x| x * &inv).collect::<Vec<_>>());
            if check_multiplicative(&chi, a).is_ok() && is_star_preserving(&chi, a)? {
                found.push(chi);
            }
        }
        found.sort_by(|x, y| y.coeffs.cmp(&x.coeffs));
        let non_rational = m - found.len();
        return Ok(CharacterSet { characters: found, total_count: m, non_rational });
    }
    Err(Error::Invalid("could not separate characters with a generic element".into()))
}

/// `table[i][j]` is the index of `characters[i] * characters[j]`.
pub fn convolution_table(a: &FiniteQuantumGroup, chars: &[LinearFunctional]) -> Result<Vec<Vec<usize>>> {
    chars
        .iter()
        .map(|t| {
            chars
                .iter()
                .map(|s| {
                    let c = convolve(t, s, a)?;
                    chars
                        .iter()
                        .position(|x| *x == c)
                        .ok_or_else(|| Error::Invalid("characters not closed under convolution".into()))
                })
                .collect()
        })
        .collect()
}

/// Whether `table` is the multiplication table of a group isomorphic to `g`.
pub fn is_isomorphic_to_group(table: &[Vec<usize>], g: &GroupTable) -> bool {
    let n = table.len();
    if n != g.order {
        return false;
    }
    fn extend(table: &[Vec<usize>], g: &GroupTable, map: &mut Vec<Option<usize>>, used: &mut Vec<bool>, k: usize) -> bool {
        let n = table.len();
        if k == n {
            return (0..n).all(|x| (0..n).all(|y| map[table[x][y]] == Some(g.mul(map[x].unwrap(), map[y].unwrap()))));
        }
        for t in 0..n {
            if used[t] {
                continue;
            }
            map[k] = Some(t);
            used[t] = true;
            let consistent = (0..=k).all(|x| {
                (0..=k).all(|y| match map[table[x][y]] {
                    Some(v) => v == g.mul(map[x].unwrap(), map[y].unwrap()),
                    None => true,
                })
            });
            if consistent && extend(table, g, map, used, k + 1) {
                return true;
            }
            map[k] = None;
            used[t] = false;
        }
        false
    }
    extend(table, g, &mut vec![None; n], &mut vec![false; n], 0)
}

/// The translation map `τ̂ = (id⊗τ)∘Δ` of a character `τ`.
#[derive(Clone, Debug)]
pub struct Translation {
    /// Column `j` is `τ̂(e_j)`.
    pub matrix: Matrix,
    pub unital_star_homomorphism: bool,
    pub bijective: bool,
}

pub fn translate(a: &FiniteQuantumGroup, tau: &LinearFunctional) -> Result<Translation> {
    check_multiplicative(tau, a)?;
    if !is_star_preserving(tau, a)? {
        return Err(Error::Invalid("functional is not *-preserving, so not a character".into()));
    }
    let n = a.dim;
    let images: Vec<Element<usize>> = (0..n).map(|j| tau.slice_right(a, &a.comult[j])).collect::<Result<_>>()?;
    let matrix = Matrix::from_fn(n, n, |i, j| images[j].coeff(&i));
    let apply = |x: &Element<usize>| x.flat_map(|j| images[*j].clone());
    let mut hom = apply(&a.unit) == a.unit;
    for i in 0..n {
        hom &= apply(&a.invol[i]) == a.star(&images[i]);
        for j in 0..n {
            hom &= apply(&a.mult[i * n + j]) == a.mul(&images[i], &images[j]);
        }
    }
    let bijective = matrix.rank() == n;
    Ok(Translation { matrix, unital_star_homomorphism: hom, bijective })
}
