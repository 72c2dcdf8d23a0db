use num_complex::Complex64;
use rayon::prelude::*;
use rustc_hash::FxHashMap;

use super::{validate_generators, DiscreteGroup};
use crate::error::{Error, Result};

/// Marks a neighbor outside the ball.
pub const NO_NEIGHBOR: u32 = u32::MAX;

const PAR_THRESHOLD: usize = 1 << 15;

/// The word-length ball of radius `R` in a Cayley graph, indexed in BFS order,
/// together with the truncated left regular representation on `ℓ²(ball)`.
///
/// Index 0 is the identity. Within a sphere, elements appear in the order they
/// are first reached from the previous sphere, scanning generators in order.
#[derive(Clone, Debug)]
pub struct CayleyBall<E> {
    pub radius: usize,
    pub elements: Vec<E>,
    /// `sphere_ends[r]` is the number of elements of length at most `r`.
    pub sphere_ends: Vec<usize>,
    pub n_gens: usize,
    /// `neighbors[i * n_gens + j]` is the index of `s_j · g_i`.
    neighbors: Vec<u32>,
    /// `inverse_gen[j]` is the position of `s_j⁻¹` in `S`.
    inverse_gen: Vec<usize>,
}

impl<E: Clone + Eq + std::hash::Hash + Send + Sync> CayleyBall<E> {
    pub const DEFAULT_CAP: usize = 20_000_000;

    pub fn build<G: DiscreteGroup<Elem = E> + ?Sized>(group: &G, radius: usize, cap: usize) -> Result<Self> {
        validate_generators(group)?;
        if radius > group.radius_limit() {
            return Err(Error::CapExceeded {
                what: format!("radius {radius} for the element representation of {}", group.name()),
                cap: group.radius_limit(),
            });
        }
        let cap = cap.min(NO_NEIGHBOR as usize);
        let gens = group.generators();
        let n_gens = gens.len();
        let inverse_gen = gens
            .iter()
            .map(|s| {
                let inv = group.invert(s);
                gens.iter().position(|t| *t == inv).expect("validated symmetric")
            })
            .collect();

        let mut elements = vec![group.identity()];
        let mut index: FxHashMap<E, u32> = FxHashMap::default();
        index.insert(group.identity(), 0);
        let mut neighbors: Vec<u32> = Vec::new();
        let mut sphere_ends = vec![1];
        let mut start = 0;
        for r in 0..=radius {
            let end = elements.len();
            for i in start..end {
                for s in &gens {
                    let h = group.multiply(s, &elements[i]);
                    let k = match index.get(&h) {
                        Some(&k) => k,
                        None if r == radius => NO_NEIGHBOR,
                        None => {
                            if elements.len() >= cap {
                                return Err(Error::CapExceeded {
                                    what: format!("ball of radius {radius} in {}", group.name()),
                                    cap,
                                });
                            }
                            let k = elements.len() as u32;
                            index.insert(h.clone(), k);
                            elements.push(h);
                            k
                        }
                    };
                    neighbors.push(k);
                }
            }
            if r < radius {
                sphere_ends.push(elements.len());
            }
            start = end;
        }
        drop(index);
        let ball = Self { radius, elements, sphere_ends, n_gens, neighbors, inverse_gen };
        if let Some(order) = group.order() {
            if ball.is_closed() && ball.len() != order {
                return Err(Error::Invalid(format!(
                    "generators of {} reach only {} of {order} elements",
                    group.name(),
                    ball.len()
                )));
            }
        }
        Ok(ball)
    }
}

impl<E> CayleyBall<E> {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn sphere_sizes(&self) -> Vec<usize> {
        let mut prev = 0;
        self.sphere_ends
            .iter()
            .map(|&e| {
                let s = e - prev;
                prev = e;
                s
            })
            .collect()
    }

    /// Index of `s_j · g_i`, if it lies in the ball.
    pub fn neighbor(&self, i: usize, j: usize) -> Option<usize> {
        match self.neighbors[i * self.n_gens + j] {
            NO_NEIGHBOR => None,
            k => Some(k as usize),
        }
    }

    pub fn inverse_generator(&self, j: usize) -> usize {
        self.inverse_gen[j]
    }

    /// True when no generator leads out of the ball, i.e. the ball is the
    /// whole (finite) group.
    pub fn is_closed(&self) -> bool {
        !self.neighbors.contains(&NO_NEIGHBOR)
    }

    /// `(Av)(g) = Σ_{s∈S} v(s g)` restricted to the ball. Since `S = S⁻¹` this
    /// is also `Σ_s (L_s v)(g)`, and `A` is symmetric.
    pub fn apply_sum(&self, v: &[f64], out: &mut [f64]) {
        let (n, neighbors) = (self.n_gens, &self.neighbors);
        let row = |(i, o): (usize, &mut f64)| {
            *o = neighbors[i * n..(i + 1) * n]
                .iter()
                .filter(|&&k| k != NO_NEIGHBOR)
                .map(|&k| v[k as usize])
                .sum();
        };
        if out.len() >= PAR_THRESHOLD {
            out.par_iter_mut().enumerate().for_each(row);
        } else {
            out.iter_mut().enumerate().for_each(row);
        }
    }

    /// `B = λ₀ I + Σ_j λ_j L_{s_j}` (or `B*` when `adjoint`), truncated, with
    /// `(L_s v)(g) = v(s⁻¹ g)`.
    pub fn apply_combination(&self, lambda: &[Complex64], adjoint: bool, v: &[Complex64], out: &mut [Complex64]) {
        assert_eq!(lambda.len(), self.n_gens + 1);
        let (n, neighbors) = (self.n_gens, &self.neighbors);
        let coeff: Vec<Complex64> = lambda.iter().map(|c| if adjoint { c.conj() } else { *c }).collect();
        // L_s reads the neighbor along s⁻¹; its adjoint L_{s⁻¹} reads along s.
        let along: Vec<usize> = (0..n).map(|j| if adjoint { j } else { self.inverse_gen[j] }).collect();
        let row = |(i, o): (usize, &mut Complex64)| {
            let nb = &neighbors[i * n..(i + 1) * n];
            let mut acc = coeff[0] * v[i];
            for j in 0..n {
                let k = nb[along[j]];
                if k != NO_NEIGHBOR {
                    acc += coeff[j + 1] * v[k as usize];
                }
            }
            *o = acc;
        };
        if out.len() >= PAR_THRESHOLD {
            out.par_iter_mut().enumerate().for_each(row);
        } else {
            out.iter_mut().enumerate().for_each(row);
        }
    }

    /// Dense matrix of the truncated `Σ_s L_s`; meant for small balls.
    pub fn dense_matrix(&self) -> Vec<Vec<u32>> {
        let n = self.len();
        let mut m = vec![vec![0u32; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            for j in 0..self.n_gens {
                if let Some(k) = self.neighbor(i, j) {
                    row[k] += 1;
                }
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{Builtin, FiniteGroup, FreeGroup, Lattice};

    fn ball<G: DiscreteGroup>(g: &G, r: usize) -> CayleyBall<G::Elem> {
        CayleyBall::build(g, r, CayleyBall::<G::Elem>::DEFAULT_CAP).unwrap()
    }

    #[test]
    fn reference_sizes() {
        assert_eq!(ball(&Lattice { dim: 1 }, 50).len(), 101);
        let f2 = ball(&FreeGroup::new(2).unwrap(), 3);
        assert_eq!(f2.len(), 53);
        assert_eq!(f2.sphere_sizes(), vec![1, 4, 12, 36]);
        assert_eq!(ball(&Lattice { dim: 2 }, 2).len(), 13);
        assert_eq!(ball(&Lattice { dim: 0 }, 5).len(), 1);
    }

    #[test]
    fn taxicab_ball_matches_enumeration() {
        for r in 0..6i64 {
            let count = (-r..=r).flat_map(|x| (-r..=r).map(move |y| (x, y))).filter(|(x, y)| x.abs() + y.abs() <= r).count();
            assert_eq!(ball(&Lattice { dim: 2 }, r as usize).len(), count);
        }
    }

    #[test]
    fn bfs_order_is_deterministic() {
        let b = ball(&Lattice { dim: 1 }, 3);
        assert_eq!(b.elements, vec![vec![0], vec![1], vec![-1], vec![2], vec![-2], vec![3], vec![-3]]);
        let f = FreeGroup::new(2).unwrap();
        let b = ball(&f, 1);
        let names: Vec<String> = b.elements.iter().map(|w| f.format(w)).collect();
        assert_eq!(names, ["e", "a", "A", "b", "B"]);
        let again = ball(&f, 4);
        assert_eq!(again.elements, ball(&f, 4).elements);
    }

    #[test]
    fn truncated_operator_is_symmetric() {
        for name in ["Z^2", "F_2", "S_3", "Z x F_2", "Z_4 x Z_3"] {
            let g = Builtin::parse(name).unwrap();
            let b = ball(&g, 3);
            let m = b.dense_matrix();
            for i in 0..b.len() {
                for j in 0..b.len() {
                    assert_eq!(m[i][j], m[j][i], "{name} at ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn combination_adjoint_pairs() {
        let g = Builtin::parse("F_2").unwrap();
        let b = ball(&g, 3);
        let lambda: Vec<Complex64> = (0..5).map(|i| Complex64::new(i as f64 * 0.5 - 1.0, (i * i) as f64 * 0.25)).collect();
        let n = b.len();
        let x: Vec<Complex64> = (0..n).map(|i| Complex64::new((i % 7) as f64, (i % 3) as f64 - 1.0)).collect();
        let y: Vec<Complex64> = (0..n).map(|i| Complex64::new((i % 5) as f64 - 2.0, (i % 11) as f64)).collect();
        let mut bx = vec![Complex64::default(); n];
        let mut bsy = vec![Complex64::default(); n];
        b.apply_combination(&lambda, false, &x, &mut bx);
        b.apply_combination(&lambda, true, &y, &mut bsy);
        let lhs: Complex64 = y.iter().zip(&bx).map(|(a, b)| a.conj() * b).sum();
        let rhs: Complex64 = bsy.iter().zip(&x).map(|(a, b)| a.conj() * b).sum();
        assert!((lhs - rhs).norm() < 1e-9);
    }

    #[test]
    fn shift_moves_delta_to_generator() {
        let g = Lattice { dim: 1 };
        let b = ball(&g, 2);
        let mut delta = vec![Complex64::default(); b.len()];
        delta[0] = Complex64::new(1.0, 0.0);
        let mut out = vec![Complex64::default(); b.len()];
        // L_{+1} δ_0 = δ_{+1}
        b.apply_combination(&[0.0, 1.0, 0.0].map(|x| Complex64::new(x, 0.0)), false, &delta, &mut out);
        assert_eq!(out[1], Complex64::new(1.0, 0.0));
        assert_eq!(out.iter().map(|c| c.norm()).sum::<f64>(), 1.0);
    }

    #[test]
    fn cap_is_named() {
        let err = CayleyBall::build(&FreeGroup::new(2).unwrap(), 10, 1000).unwrap_err();
        assert!(err.to_string().contains("1000"), "{err}");
        let err = CayleyBall::build(&FreeGroup::new(2).unwrap(), 40, 1000).unwrap_err();
        assert!(err.to_string().contains("31"), "{err}");
    }

    #[test]
    fn finite_group_closes() {
        let b = ball(&FiniteGroup::symmetric3(), 3);
        assert_eq!(b.len(), 6);
        assert!(b.is_closed());
        assert!(!ball(&Lattice { dim: 1 }, 3).is_closed());
    }

    #[test]
    fn non_generating_set_is_rejected() {
        let t = crate::finite::GroupTable::cyclic(4);
        let g = FiniteGroup::new("Z_4", t, Some(vec![2])).unwrap();
        assert!(CayleyBall::build(&g, 5, 100).is_err());
    }
}
