//! Polynomial functions on the closed unit disc under multiplication.
//!
//! Monomials `z^m z̄^n` are group-like, `Δx = x⊗x`. Evaluation at `1` is a
//! counit and evaluation at `0` is a two-sided invariant state, but the
//! cancellation spans are not dense, so this is a quantum semigroup only.

use crate::bialgebra::{BialgebraView, Element, Tensor};
use crate::functional::LinearFunctional;
use crate::scalar::ExactScalar;

/// Degree-truncated view of the disc bialgebra; basis key `(m, n)` is `z^m z̄^n`.
#[derive(Clone, Debug)]
pub struct DiscSemigroup {
    pub degree_bound: usize,
}

impl DiscSemigroup {
    pub fn new(degree_bound: usize) -> Self {
        Self { degree_bound }
    }

    /// Evaluation at `z = 0`.
    pub fn delta0(&self) -> LinearFunctional {
        LinearFunctional::tabulate(self, |&(m, n)| {
            if m == 0 && n == 0 { ExactScalar::one() } else { ExactScalar::zero() }
        })
    }

    /// Evaluation at `z = 1`.
    pub fn delta1(&self) -> LinearFunctional {
        LinearFunctional::tabulate(self, |_| ExactScalar::one())
    }
}

impl BialgebraView for DiscSemigroup {
    type Basis = (usize, usize);

    fn basis_id(&self) -> String {
        format!("disc[deg<={}]", self.degree_bound)
    }

    /// Ordered by total degree, then by the power of `z̄`.
    fn basis(&self) -> Vec<(usize, usize)> {
        (0..=self.degree_bound)
            .flat_map(|s| (0..=s).map(move |n| (s - n, n)))
            .collect()
    }

    fn index_of(&self, &(m, n): &(usize, usize)) -> Option<usize> {
        let s = m + n;
        (s <= self.degree_bound).then(|| s * (s + 1) / 2 + n)
    }

    fn label(&self, &(m, n): &(usize, usize)) -> String {
        match (m, n) {
            (0, 0) => "1".into(),
            (m, 0) => pow_label("z", m),
            (0, n) => pow_label("z̄", n),
            (m, n) => format!("{}{}", pow_label("z", m), pow_label("z̄", n)),
        }
    }

    fn degree_bound(&self) -> Option<usize> {
        Some(self.degree_bound)
    }

    fn degree(&self, &(m, n): &(usize, usize)) -> usize {
        m + n
    }

    fn unit(&self) -> Element<(usize, usize)> {
        Element::basis((0, 0))
    }

    fn multiply(&self, x: &(usize, usize), y: &(usize, usize)) -> Element<(usize, usize)> {
        Element::basis((x.0 + y.0, x.1 + y.1))
    }

    fn involution(&self, &(m, n): &(usize, usize)) -> Element<(usize, usize)> {
        Element::basis((n, m))
    }

    fn comultiply(&self, x: &(usize, usize)) -> Tensor<(usize, usize)> {
        Tensor::basis((*x, *x))
    }

    fn counit_values(&self) -> Option<Vec<ExactScalar>> {
        Some(self.delta1().coeffs)
    }
}

fn pow_label(sym: &str, k: usize) -> String {
    if k == 1 { sym.to_string() } else { format!("{sym}^{k}") }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checks::*;

    #[test]
    fn basis_indexing_is_consistent() {
        let d = DiscSemigroup::new(4);
        let basis = d.basis();
        assert_eq!(basis.len(), 15);
        for (i, b) in basis.iter().enumerate() {
            assert_eq!(d.index_of(b), Some(i));
        }
        assert_eq!(d.index_of(&(3, 2)), None);
    }

    #[test]
    fn coassociative_with_counit_delta1() {
        let d = DiscSemigroup::new(6);
        let sample = d.basis();
        assert!(check_coassociativity(&d, &sample).passed());
        assert!(check_counit(&d, &d.delta1(), &sample).unwrap().passed());
    }

    #[test]
    fn delta0_is_invariant_but_not_a_counit() {
        let d = DiscSemigroup::new(6);
        let sample = d.basis();
        assert!(check_invariance(&d, &d.delta0(), &sample).unwrap().passed());
        let rep = check_counit(&d, &d.delta0(), &sample).unwrap();
        assert!(!rep.passed());
        assert!(rep.failures.contains(&"z".to_string()));
    }

    #[test]
    fn density_fails_at_degree_four() {
        let d = DiscSemigroup::new(4);
        let rep = check_density_spans(&d);
        assert!(!rep.passed());
        assert!(rep.left_missing.contains(&"1⊗z".to_string()));
        assert!(rep.right_missing.contains(&"z⊗1".to_string()));
    }
}
