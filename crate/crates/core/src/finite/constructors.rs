use serde::{Deserialize, Serialize};

use super::{require, FiniteQuantumGroup};
use crate::bialgebra::{Element, Tensor};
use crate::error::Result;
use crate::scalar::ExactScalar;

/// Validated multiplication table of a finite group; `table[a][b] = ab`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupTable {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub generators: Option<Vec<usize>>,
    #[serde(skip)]
    pub labels: Vec<String>,
    #[serde(skip)]
    identity: usize,
    #[serde(skip)]
    inverse: Vec<usize>,
}

impl GroupTable {
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        require(n > 0, || "empty group table".into())?;
        require(table.iter().all(|r| r.len() == n), || "group table is not square".into())?;
        require(table.iter().flatten().all(|&x| x < n), || "group table entry out of range".into())?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    require(table[table[a][b]][c] == table[a][table[b][c]], || {
                        format!("group table is not associative at ({a}, {b}, {c})")
                    })?;
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| crate::error::Error::Invalid("group table has no identity".into()))?;
        let mut inverse = Vec::with_capacity(n);
        for g in 0..n {
            let inv = (0..n)
                .find(|&h| table[g][h] == identity && table[h][g] == identity)
                .ok_or_else(|| crate::error::Error::Invalid(format!("element {g} has no inverse")))?;
            inverse.push(inv);
        }
        let labels = (0..n).map(|g| g.to_string()).collect();
        Ok(Self { order: n, table, generators: None, labels, identity, inverse })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.order);
        self.labels = labels;
        self
    }

    pub fn with_generators(mut self, generators: Vec<usize>) -> Self {
        self.generators = Some(generators);
        self
    }

    /// Parses `{"order": n, "table": [[...]], "generators": [...]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Raw {
            order: usize,
            table: Vec<Vec<usize>>,
            #[serde(default)]
            generators: Option<Vec<usize>>,
        }
        let raw: Raw = serde_json::from_str(text)?;
        require(raw.order == raw.table.len(), || {
            format!("order {} does not match table size {}", raw.order, raw.table.len())
        })?;
        let mut g = Self::new(raw.table)?;
        if let Some(gens) = raw.generators {
            require(gens.iter().all(|&s| s < g.order), || "generator out of range".into())?;
            g.generators = Some(gens);
        }
        Ok(g)
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.table[a][b] == self.table[b][a]))
    }

    pub fn trivial() -> Self {
        Self::new(vec![vec![0]]).unwrap().with_labels(vec!["e".into()])
    }

    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::new(table).unwrap()
    }

    /// `S_3` on permutations of `{0,1,2}` in lexicographic order, composed as
    /// `(gh)(i) = g(h(i))`, generated by the adjacent transpositions.
    pub fn symmetric3() -> Self {
        let perms: Vec<[usize; 3]> =
            vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let idx = |p: [usize; 3]| perms.iter().position(|&q| q == p).unwrap();
        let table = perms
            .iter()
            .map(|g| perms.iter().map(|h| idx([g[h[0]], g[h[1]], g[h[2]]])).collect())
            .collect();
        let labels = ["e", "(12)", "(01)", "(012)", "(021)", "(02)"].iter().map(|s| s.to_string()).collect();
        Self::new(table).unwrap().with_labels(labels).with_generators(vec![2, 1])
    }

    /// Direct product; element `(a, b)` has index `a * |H| + b`.
    pub fn product(g: &GroupTable, h: &GroupTable) -> Self {
        let (n, m) = (g.order, h.order);
        let table = (0..n * m)
            .map(|x| (0..n * m).map(|y| g.mul(x / m, y / m) * m + h.mul(x % m, y % m)).collect())
            .collect();
        let labels = (0..n * m).map(|x| format!("({},{})", g.labels[x / m], h.labels[x % m])).collect();
        Self::new(table).unwrap().with_labels(labels)
    }
}

fn basis_tensor(a: usize, b: usize) -> Tensor<usize> {
    Tensor::basis((a, b))
}

/// `C(G)`: delta functions with pointwise product and `Δδ_g = Σ_{ab=g} δ_a⊗δ_b`.
pub fn function_algebra(g: &GroupTable) -> FiniteQuantumGroup {
    let n = g.order;
    let mut mult = vec![Element::zero(); n * n];
    for a in 0..n {
        mult[a * n + a] = Element::basis(a);
    }
    let mut comult = vec![Tensor::zero(); n];
    for a in 0..n {
        for b in 0..n {
            comult[g.mul(a, b)].add_scaled(&basis_tensor(a, b), &ExactScalar::one());
        }
    }
    let counit = (0..n)
        .map(|a| if a == g.identity() { ExactScalar::one() } else { ExactScalar::zero() })
        .collect();
    FiniteQuantumGroup {
        name: format!("C(G{n})"),
        dim: n,
        labels: g.labels.iter().map(|l| format!("δ{l}")).collect(),
        unit: Element::from_terms((0..n).map(|a| (a, ExactScalar::one()))),
        mult,
        invol: (0..n).map(Element::basis).collect(),
        comult,
        counit: Some(counit),
        antipode: Some((0..n).map(|a| Element::basis(g.inverse(a))).collect()),
    }
}

/// `C[G]`: group elements `u_g` with `u_g u_h = u_{gh}` and `Δu_g = u_g⊗u_g`.
pub fn group_algebra(g: &GroupTable) -> FiniteQuantumGroup {
    let n = g.order;
    let mult = (0..n * n).map(|x| Element::basis(g.mul(x / n, x % n))).collect();
    FiniteQuantumGroup {
        name: format!("C[G{n}]"),
        dim: n,
        labels: g.labels.iter().map(|l| format!("u{l}")).collect(),
        unit: Element::basis(g.identity()),
        mult,
        invol: (0..n).map(|a| Element::basis(g.inverse(a))).collect(),
        comult: (0..n).map(|a| basis_tensor(a, a)).collect(),
        counit: Some(vec![ExactScalar::one(); n]),
        antipode: Some((0..n).map(|a| Element::basis(g.inverse(a))).collect()),
    }
}

/// The one-dimensional quantum group `ℂ`.
pub fn trivial() -> FiniteQuantumGroup {
    group_algebra(&GroupTable::trivial()).with_name("C")
}

/// Tensor product with comultiplication `(id⊗flip⊗id)(Δ₁⊗Δ₂)`; index `(i, j) ↦ i·dim₂ + j`.
pub fn tensor_product(a: &FiniteQuantumGroup, b: &FiniteQuantumGroup) -> FiniteQuantumGroup {
    let (n, m) = (a.dim, b.dim);
    let pair = |x: &Element<usize>, y: &Element<usize>| -> Element<usize> {
        let mut out = Element::zero();
        for (i, c) in x.iter() {
            for (j, d) in y.iter() {
                out.add_term(i * m + j, c * d);
            }
        }
        out
    };
    let mut mult = Vec::with_capacity(n * m * n * m);
    for x in 0..n * m {
        for y in 0..n * m {
            mult.push(pair(&a.mult[(x / m) * n + y / m], &b.mult[(x % m) * m + y % m]));
        }
    }
    let invol = (0..n * m).map(|x| pair(&a.invol[x / m], &b.invol[x % m])).collect();
    let comult = (0..n * m)
        .map(|x| {
            let mut t = Tensor::zero();
            for ((a1, a2), c) in a.comult[x / m].iter() {
                for ((b1, b2), d) in b.comult[x % m].iter() {
                    t.add_term((a1 * m + b1, a2 * m + b2), c * d);
                }
            }
            t
        })
        .collect();
    let counit = match (a.counit_values_cached(), b.counit_values_cached()) {
        (Some(ea), Some(eb)) => Some((0..n * m).map(|x| &ea[x / m] * &eb[x % m]).collect()),
        _ => None,
    };
    let antipode = match (&a.antipode, &b.antipode) {
        (Some(ka), Some(kb)) => Some((0..n * m).map(|x| pair(&ka[x / m], &kb[x % m])).collect()),
        _ => None,
    };
    FiniteQuantumGroup {
        name: format!("{}⊗{}", a.name, b.name),
        dim: n * m,
        labels: (0..n * m).map(|x| format!("{}⊗{}", a.labels[x / m], b.labels[x % m])).collect(),
        unit: pair(&a.unit, &b.unit),
        mult,
        invol,
        comult,
        counit,
        antipode,
    }
}

impl FiniteQuantumGroup {
    fn counit_values_cached(&self) -> Option<Vec<ExactScalar>> {
        self.counit.clone().or_else(|| self.solve_counit())
    }
}

/// Quotient of the disc bialgebra by monomials of degree above `d`.
///
/// Coassociative with counit `δ₁` and invariant state `δ₀`, but the
/// cancellation spans are deficient and no antipode exists.
pub fn disc_truncation(d: usize) -> FiniteQuantumGroup {
    use crate::bialgebra::BialgebraView;
    let view = crate::disc::DiscSemigroup::new(d);
    let basis = view.basis();
    let n = basis.len();
    let mut mult = Vec::with_capacity(n * n);
    for x in &basis {
        for y in &basis {
            let p = (x.0 + y.0, x.1 + y.1);
            mult.push(view.index_of(&p).map_or_else(Element::zero, Element::basis));
        }
    }
    FiniteQuantumGroup {
        name: format!("disc{d}"),
        dim: n,
        labels: basis.iter().map(|b| view.label(b)).collect(),
        unit: Element::basis(0),
        mult,
        invol: basis.iter().map(|&(m, k)| Element::basis(view.index_of(&(k, m)).unwrap())).collect(),
        comult: (0..n).map(|i| basis_tensor(i, i)).collect(),
        counit: Some(vec![ExactScalar::one(); n]),
        antipode: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bialgebra::BialgebraView;
    use crate::checks::*;
    use crate::linalg::Matrix;

    fn all_axioms(a: &FiniteQuantumGroup) {
        let rep = a.axiom_report();
        assert!(rep.passed(), "{}: {:?}", a.name, rep.failing_axioms());
    }

    #[test]
    fn group_tables_validate() {
        let s3 = GroupTable::symmetric3();
        assert!(!s3.is_abelian());
        for g in 0..6 {
            assert_eq!(s3.mul(g, s3.inverse(g)), s3.identity());
        }
        assert!(GroupTable::new(vec![vec![0, 1], vec![0, 1]]).is_err());
        assert!(GroupTable::new(vec![vec![0, 1], vec![1, 1]]).is_err());
        assert_eq!(GroupTable::product(&GroupTable::cyclic(2), &GroupTable::cyclic(3)).order, 6);
    }

    #[test]
    fn trivial_group_quantum_group() {
        let c = trivial();
        assert_eq!(c.dim, 1);
        all_axioms(&c);
    }

    #[test]
    fn function_and_group_algebras_pass_axioms() {
        for g in [GroupTable::cyclic(2), GroupTable::cyclic(3), GroupTable::symmetric3()] {
            all_axioms(&function_algebra(&g));
            all_axioms(&group_algebra(&g));
        }
    }

    #[test]
    fn s3_function_algebra_is_not_cocommutative() {
        let a = function_algebra(&GroupTable::symmetric3());
        assert!(a.is_commutative());
        assert!(!a.is_cocommutative());
        let b = group_algebra(&GroupTable::symmetric3());
        assert!(b.is_cocommutative());
        assert!(!b.is_commutative());
    }

    #[test]
    fn solved_counit_and_antipode_match_constructed_ones() {
        for a in [function_algebra(&GroupTable::symmetric3()), group_algebra(&GroupTable::cyclic(3))] {
            assert_eq!(a.solve_counit(), a.counit);
            assert_eq!(a.solve_antipode(a.counit.as_ref().unwrap()), a.antipode);
        }
    }

    #[test]
    fn fourier_transform_identifies_z2_algebras() {
        let g = GroupTable::cyclic(2);
        let (cg, fg) = (group_algebra(&g), function_algebra(&g));
        let s = ExactScalar::from_int;
        // u0 ↦ δ0 + δ1, u1 ↦ δ0 − δ1
        let f = Matrix::from_rows(vec![vec![s(1), s(1)], vec![s(1), s(-1)]]);
        assert!(cg.is_morphism_to(&fg, &f));
        assert!(!cg.is_morphism_to(&fg, &Matrix::identity(2)));
    }

    #[test]
    fn tensor_with_c_is_identity() {
        let a = function_algebra(&GroupTable::symmetric3());
        let t = tensor_product(&trivial(), &a);
        assert_eq!(t.mult, a.mult);
        assert_eq!(t.comult, a.comult);
        assert_eq!(t.invol, a.invol);
    }

    #[test]
    fn tensor_of_function_algebras_is_function_algebra_of_product() {
        let z2 = GroupTable::cyclic(2);
        let t = tensor_product(&function_algebra(&z2), &function_algebra(&z2));
        let p = function_algebra(&GroupTable::product(&z2, &z2));
        assert!(t.is_morphism_to(&p, &Matrix::identity(4)));
        assert!(p.is_morphism_to(&t, &Matrix::identity(4)));
    }

    #[test]
    fn mixed_tensor_product() {
        let z2 = GroupTable::cyclic(2);
        let t = tensor_product(&function_algebra(&z2), &group_algebra(&z2));
        all_axioms(&t);
        assert!(t.is_commutative());
        assert!(t.is_cocommutative());
        assert_eq!(t.dim, 4);
    }

    #[test]
    fn disc_truncation_is_a_bialgebra_without_density() {
        let d = disc_truncation(4);
        assert_eq!(d.dim, 15);
        let rep = d.axiom_report();
        assert!(rep.structure.passed(), "{:?}", rep.structure);
        assert!(rep.coassociativity.passed());
        assert!(rep.counit.as_ref().unwrap().passed());
        assert!(!rep.antipode_present);
        assert!(!rep.density.passed());
        let basis = d.basis();
        let delta0 = crate::functional::LinearFunctional::tabulate(&d, |&i| {
            if i == 0 { ExactScalar::one() } else { ExactScalar::zero() }
        });
        assert!(check_invariance(&d, &delta0, &basis).unwrap().passed());
    }
}
