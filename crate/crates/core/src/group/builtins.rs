use super::DiscreteGroup;
use crate::error::{Error, Result};
use crate::finite::GroupTable;

/// `Z^d` with the standard generators `±e_1, …, ±e_d`, in that order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    pub dim: usize,
}

impl DiscreteGroup for Lattice {
    type Elem = Vec<i64>;

    fn name(&self) -> String {
        match self.dim {
            1 => "Z".into(),
            d => format!("Z^{d}"),
        }
    }

    fn identity(&self) -> Vec<i64> {
        vec![0; self.dim]
    }

    fn multiply(&self, g: &Vec<i64>, h: &Vec<i64>) -> Vec<i64> {
        g.iter().zip(h).map(|(a, b)| a + b).collect()
    }

    fn invert(&self, g: &Vec<i64>) -> Vec<i64> {
        g.iter().map(|a| -a).collect()
    }

    fn generators(&self) -> Vec<Vec<i64>> {
        let mut out = Vec::with_capacity(2 * self.dim);
        for i in 0..self.dim {
            for sign in [1, -1] {
                let mut e = vec![0; self.dim];
                e[i] = sign;
                out.push(e);
            }
        }
        out
    }

    fn format(&self, g: &Vec<i64>) -> String {
        let parts: Vec<String> = g.iter().map(|x| x.to_string()).collect();
        format!("({})", parts.join(","))
    }

    fn amenable(&self) -> Option<bool> {
        Some(true)
    }

    fn reduced_norm(&self) -> Option<f64> {
        Some(2.0 * self.dim as f64)
    }

    fn order(&self) -> Option<usize> {
        (self.dim == 0).then_some(1)
    }
}

/// A reduced word packed into a `u64`, first letter in the lowest bits.
///
/// Letter `2i` is the `i`-th free generator and `2i + 1` its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FreeWord {
    pub len: u8,
    pub bits: u64,
}

/// The free group `F_k` on `a, b, c, …` with `S = {a, a⁻¹, b, b⁻¹, …}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeGroup {
    pub rank: usize,
    width: u32,
}

impl FreeGroup {
    pub fn new(rank: usize) -> Result<Self> {
        if rank > 16 {
            return Err(Error::Unsupported(format!("free groups of rank {rank} > 16")));
        }
        let width = (usize::BITS - (2 * rank).saturating_sub(1).leading_zeros()).max(1);
        Ok(Self { rank, width })
    }

    fn max_len(&self) -> usize {
        (64 / self.width) as usize
    }

    fn mask(&self) -> u64 {
        (1u64 << self.width) - 1
    }

    pub fn letters(&self, w: &FreeWord) -> Vec<u8> {
        (0..w.len as u32).map(|i| ((w.bits >> (i * self.width)) & self.mask()) as u8).collect()
    }

    /// Reduces and packs a letter sequence.
    pub fn word(&self, letters: &[u8]) -> FreeWord {
        let mut stack: Vec<u8> = Vec::with_capacity(letters.len());
        for &c in letters {
            assert!((c as usize) < 2 * self.rank, "letter {c} out of range");
            if stack.last() == Some(&(c ^ 1)) {
                stack.pop();
            } else {
                stack.push(c);
            }
        }
        assert!(stack.len() <= self.max_len(), "reduced word longer than {} letters", self.max_len());
        let bits = stack.iter().enumerate().fold(0u64, |acc, (i, &c)| acc | (c as u64) << (i as u32 * self.width));
        FreeWord { len: stack.len() as u8, bits }
    }

    /// `c · w` for a single letter `c`.
    pub fn prepend(&self, c: u8, w: &FreeWord) -> FreeWord {
        if w.len > 0 && (w.bits & self.mask()) as u8 == c ^ 1 {
            return FreeWord { len: w.len - 1, bits: w.bits >> self.width };
        }
        assert!((w.len as usize) < self.max_len(), "word exceeds packed capacity");
        FreeWord { len: w.len + 1, bits: (w.bits << self.width) | c as u64 }
    }

    fn letter_name(&self, c: u8) -> String {
        let i = (c / 2) as usize;
        let base = if self.rank <= 26 { ((b'a' + i as u8) as char).to_string() } else { format!("x{i}") };
        if c.is_multiple_of(2) {
            base
        } else if self.rank <= 26 {
            base.to_uppercase()
        } else {
            format!("{base}^-1")
        }
    }
}

impl DiscreteGroup for FreeGroup {
    type Elem = FreeWord;

    fn name(&self) -> String {
        format!("F_{}", self.rank)
    }

    fn identity(&self) -> FreeWord {
        FreeWord::default()
    }

    fn multiply(&self, g: &FreeWord, h: &FreeWord) -> FreeWord {
        if g.len == 1 {
            return self.prepend(g.bits as u8, h);
        }
        let mut letters = self.letters(g);
        letters.extend(self.letters(h));
        self.word(&letters)
    }

    fn invert(&self, g: &FreeWord) -> FreeWord {
        let letters: Vec<u8> = self.letters(g).into_iter().rev().map(|c| c ^ 1).collect();
        self.word(&letters)
    }

    fn generators(&self) -> Vec<FreeWord> {
        (0..2 * self.rank as u8).map(|c| self.word(&[c])).collect()
    }

    fn format(&self, g: &FreeWord) -> String {
        if g.len == 0 {
            return "e".into();
        }
        self.letters(g).into_iter().map(|c| self.letter_name(c)).collect()
    }

    fn amenable(&self) -> Option<bool> {
        Some(self.rank <= 1)
    }

    fn reduced_norm(&self) -> Option<f64> {
        Some(match self.rank {
            0 => 0.0,
            k => 2.0 * ((2 * k - 1) as f64).sqrt(),
        })
    }

    /// Ball construction looks one step past the radius.
    fn radius_limit(&self) -> usize {
        self.max_len() - 1
    }

    fn order(&self) -> Option<usize> {
        (self.rank == 0).then_some(1)
    }
}

/// A finite group given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    pub name: String,
    pub table: GroupTable,
    gens: Vec<usize>,
}

impl FiniteGroup {
    /// Uses `generators`, else the table's own list, else every non-identity
    /// element. Missing inverses are appended after the given generators.
    pub fn new(name: impl Into<String>, table: GroupTable, generators: Option<Vec<usize>>) -> Result<Self> {
        let given = match generators.or_else(|| table.generators.clone()) {
            Some(g) => g,
            None => (0..table.order).filter(|&g| g != table.identity()).collect(),
        };
        let mut gens: Vec<usize> = Vec::with_capacity(2 * given.len());
        for (i, &s) in given.iter().enumerate() {
            if s >= table.order {
                return Err(Error::Invalid(format!("generator {s} out of range")));
            }
            if given[..i].contains(&s) {
                return Err(Error::Invalid(format!("generator {s} is repeated; S must be a set")));
            }
            gens.push(s);
        }
        for &s in &given {
            let inv = table.inverse(s);
            if !gens.contains(&inv) {
                gens.push(inv);
            }
        }
        Ok(Self { name: name.into(), table, gens })
    }

    /// Parses `{"order": n, "table": [[...]], "generators": [...]}`.
    pub fn from_json(name: impl Into<String>, text: &str) -> Result<Self> {
        Self::new(name, GroupTable::from_json(text)?, None)
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("Z_0 is not finite; use Z".into()));
        }
        let gens = if n == 1 { vec![] } else { vec![1] };
        Self::new(format!("Z_{n}"), GroupTable::cyclic(n), Some(gens))
    }

    pub fn symmetric3() -> Self {
        Self::new("S_3", GroupTable::symmetric3(), None).expect("S_3 table is valid")
    }
}

impl DiscreteGroup for FiniteGroup {
    type Elem = usize;

    fn name(&self) -> String {
        self.name.clone()
    }

    fn identity(&self) -> usize {
        self.table.identity()
    }

    fn multiply(&self, g: &usize, h: &usize) -> usize {
        self.table.mul(*g, *h)
    }

    fn invert(&self, g: &usize) -> usize {
        self.table.inverse(*g)
    }

    fn generators(&self) -> Vec<usize> {
        self.gens.clone()
    }

    fn format(&self, g: &usize) -> String {
        self.table.labels[*g].clone()
    }

    fn amenable(&self) -> Option<bool> {
        Some(true)
    }

    fn reduced_norm(&self) -> Option<f64> {
        Some(self.gens.len() as f64)
    }

    fn order(&self) -> Option<usize> {
        Some(self.table.order)
    }
}

/// `G × H` generated by `S_G × {e}` followed by `{e} × S_H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductGroup<G, H> {
    pub left: G,
    pub right: H,
}

impl<G: DiscreteGroup, H: DiscreteGroup> DiscreteGroup for ProductGroup<G, H> {
    type Elem = (G::Elem, H::Elem);

    fn name(&self) -> String {
        format!("{} x {}", self.left.name(), self.right.name())
    }

    fn identity(&self) -> Self::Elem {
        (self.left.identity(), self.right.identity())
    }

    fn multiply(&self, g: &Self::Elem, h: &Self::Elem) -> Self::Elem {
        (self.left.multiply(&g.0, &h.0), self.right.multiply(&g.1, &h.1))
    }

    fn invert(&self, g: &Self::Elem) -> Self::Elem {
        (self.left.invert(&g.0), self.right.invert(&g.1))
    }

    fn generators(&self) -> Vec<Self::Elem> {
        let (e1, e2) = self.identity();
        let mut out: Vec<Self::Elem> = self.left.generators().into_iter().map(|s| (s, e2.clone())).collect();
        out.extend(self.right.generators().into_iter().map(|t| (e1.clone(), t)));
        out
    }

    fn format(&self, g: &Self::Elem) -> String {
        format!("({}, {})", self.left.format(&g.0), self.right.format(&g.1))
    }

    fn amenable(&self) -> Option<bool> {
        match (self.left.amenable(), self.right.amenable()) {
            (Some(false), _) | (_, Some(false)) => Some(false),
            (Some(true), Some(true)) => Some(true),
            _ => None,
        }
    }

    fn reduced_norm(&self) -> Option<f64> {
        Some(self.left.reduced_norm()? + self.right.reduced_norm()?)
    }

    fn radius_limit(&self) -> usize {
        self.left.radius_limit().min(self.right.radius_limit())
    }

    fn order(&self) -> Option<usize> {
        self.left.order()?.checked_mul(self.right.order()?)
    }
}

/// Catalog groups, selected by name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Builtin {
    Lattice(Lattice),
    Free(FreeGroup),
    Finite(FiniteGroup),
    Product(Box<ProductGroup<Builtin, Builtin>>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BuiltinElem {
    Lattice(Vec<i64>),
    Free(FreeWord),
    Finite(usize),
    Pair(Box<(BuiltinElem, BuiltinElem)>),
}

impl BuiltinElem {
    fn lattice(&self) -> &Vec<i64> {
        match self {
            BuiltinElem::Lattice(v) => v,
            other => panic!("expected a lattice element, got {other:?}"),
        }
    }

    fn free(&self) -> &FreeWord {
        match self {
            BuiltinElem::Free(w) => w,
            other => panic!("expected a free-group element, got {other:?}"),
        }
    }

    fn finite(&self) -> usize {
        match self {
            BuiltinElem::Finite(g) => *g,
            other => panic!("expected a finite-group element, got {other:?}"),
        }
    }

    fn pair(&self) -> &(BuiltinElem, BuiltinElem) {
        match self {
            BuiltinElem::Pair(p) => p,
            other => panic!("expected a pair, got {other:?}"),
        }
    }
}

impl Builtin {
    /// Parses names such as `Z`, `Z^2`, `F_2`, `S_3`, `Z_5`, `trivial` and
    /// products `Z x F_2` (also `×`).
    pub fn parse(name: &str) -> Result<Self> {
        let normalized = name.replace('×', " x ");
        let mut factors = normalized.split(" x ").map(str::trim);
        let first = factors.next().filter(|f| !f.is_empty());
        let mut group = Self::atom(first.ok_or_else(|| Error::Parse("empty group name".into()))?)?;
        for f in factors {
            group = Builtin::Product(Box::new(ProductGroup { left: group, right: Self::atom(f)? }));
        }
        Ok(group)
    }

    fn atom(name: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown group {name:?}; try Z, Z^d, F_k, S_3, Z_n, trivial or A x B"));
        let number = |s: &str| s.parse::<usize>().map_err(|_| bad());
        Ok(match name {
            "Z" => Builtin::Lattice(Lattice { dim: 1 }),
            "trivial" | "1" | "e" => Builtin::Lattice(Lattice { dim: 0 }),
            "S_3" | "S3" => Builtin::Finite(FiniteGroup::symmetric3()),
            _ => {
                if let Some(d) = name.strip_prefix("Z^") {
                    Builtin::Lattice(Lattice { dim: number(d)? })
                } else if let Some(k) = name.strip_prefix("F_").or_else(|| name.strip_prefix('F')) {
                    Builtin::Free(FreeGroup::new(number(k)?)?)
                } else if let Some(n) = name.strip_prefix("Z_") {
                    Builtin::Finite(FiniteGroup::cyclic(number(n)?)?)
                } else {
                    return Err(bad());
                }
            }
        })
    }

    /// A representative set of catalog entries.
    pub fn catalog() -> Vec<Builtin> {
        ["trivial", "Z", "Z^2", "Z^3", "F_2", "F_3", "Z_2", "Z_3", "S_3", "Z x F_2", "Z^2 x S_3"]
            .iter()
            .map(|n| Builtin::parse(n).expect("catalog names parse"))
            .collect()
    }

    /// Norm of `λ₀ + Σ λ_i λ(s_i)` when the closed form applies: `λ₀ = 0`
    /// and all `λ_i` equal.
    pub fn uniform_weight_norm(&self, lambda: &[num_complex::Complex64]) -> Option<f64> {
        let (first, rest) = lambda.split_first()?;
        if *first != num_complex::Complex64::new(0.0, 0.0) {
            return None;
        }
        let c = rest.first()?;
        rest.iter().all(|x| x == c).then(|| c.norm() * self.reduced_norm().unwrap_or(f64::NAN)).filter(|x| x.is_finite())
    }
}

impl DiscreteGroup for Builtin {
    type Elem = BuiltinElem;

    fn name(&self) -> String {
        match self {
            Builtin::Lattice(g) => g.name(),
            Builtin::Free(g) => g.name(),
            Builtin::Finite(g) => g.name(),
            Builtin::Product(p) => p.name(),
        }
    }

    fn identity(&self) -> BuiltinElem {
        match self {
            Builtin::Lattice(g) => BuiltinElem::Lattice(g.identity()),
            Builtin::Free(g) => BuiltinElem::Free(g.identity()),
            Builtin::Finite(g) => BuiltinElem::Finite(g.identity()),
            Builtin::Product(p) => BuiltinElem::Pair(Box::new((p.left.identity(), p.right.identity()))),
        }
    }

    fn multiply(&self, g: &BuiltinElem, h: &BuiltinElem) -> BuiltinElem {
        match self {
            Builtin::Lattice(l) => BuiltinElem::Lattice(l.multiply(g.lattice(), h.lattice())),
            Builtin::Free(f) => BuiltinElem::Free(f.multiply(g.free(), h.free())),
            Builtin::Finite(t) => BuiltinElem::Finite(t.multiply(&g.finite(), &h.finite())),
            Builtin::Product(p) => BuiltinElem::Pair(Box::new(p.multiply(g.pair(), h.pair()))),
        }
    }

    fn invert(&self, g: &BuiltinElem) -> BuiltinElem {
        match self {
            Builtin::Lattice(l) => BuiltinElem::Lattice(l.invert(g.lattice())),
            Builtin::Free(f) => BuiltinElem::Free(f.invert(g.free())),
            Builtin::Finite(t) => BuiltinElem::Finite(t.invert(&g.finite())),
            Builtin::Product(p) => BuiltinElem::Pair(Box::new(p.invert(g.pair()))),
        }
    }

    fn generators(&self) -> Vec<BuiltinElem> {
        match self {
            Builtin::Lattice(l) => l.generators().into_iter().map(BuiltinElem::Lattice).collect(),
            Builtin::Free(f) => f.generators().into_iter().map(BuiltinElem::Free).collect(),
            Builtin::Finite(t) => t.generators().into_iter().map(BuiltinElem::Finite).collect(),
            Builtin::Product(p) => p.generators().into_iter().map(|x| BuiltinElem::Pair(Box::new(x))).collect(),
        }
    }

    fn format(&self, g: &BuiltinElem) -> String {
        match self {
            Builtin::Lattice(l) => l.format(g.lattice()),
            Builtin::Free(f) => f.format(g.free()),
            Builtin::Finite(t) => t.format(&g.finite()),
            Builtin::Product(p) => p.format(g.pair()),
        }
    }

    fn amenable(&self) -> Option<bool> {
        match self {
            Builtin::Lattice(g) => g.amenable(),
            Builtin::Free(g) => g.amenable(),
            Builtin::Finite(g) => g.amenable(),
            Builtin::Product(p) => p.amenable(),
        }
    }

    fn reduced_norm(&self) -> Option<f64> {
        match self {
            Builtin::Lattice(g) => g.reduced_norm(),
            Builtin::Free(g) => g.reduced_norm(),
            Builtin::Finite(g) => g.reduced_norm(),
            Builtin::Product(p) => p.reduced_norm(),
        }
    }

    fn radius_limit(&self) -> usize {
        match self {
            Builtin::Lattice(g) => g.radius_limit(),
            Builtin::Free(g) => g.radius_limit(),
            Builtin::Finite(g) => g.radius_limit(),
            Builtin::Product(p) => p.radius_limit(),
        }
    }

    fn order(&self) -> Option<usize> {
        match self {
            Builtin::Lattice(g) => g.order(),
            Builtin::Free(g) => g.order(),
            Builtin::Finite(g) => g.order(),
            Builtin::Product(p) => p.order(),
        }
    }
}

/// Runs `$body` with `$g` bound to the concrete group inside a [`Builtin`],
/// so the common cases avoid the boxed element representation.
#[macro_export]
macro_rules! with_builtin {
    ($builtin:expr, |$g:ident| $body:expr) => {
        match $builtin {
            $crate::group::Builtin::Lattice($g) => $body,
            $crate::group::Builtin::Free($g) => $body,
            $crate::group::Builtin::Finite($g) => $body,
            product @ $crate::group::Builtin::Product(_) => {
                let $g = product;
                $body
            }
        }
    };
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::validate_generators;

    #[test]
    fn free_words_reduce() {
        let f = FreeGroup::new(2).unwrap();
        let [a, a_inv, b, _b_inv] = [0u8, 1, 2, 3];
        assert_eq!(f.word(&[a, a_inv]), f.identity());
        let ab = f.word(&[a, b]);
        assert_eq!(f.format(&ab), "ab");
        assert_eq!(f.format(&f.invert(&ab)), "BA");
        assert_eq!(f.multiply(&ab, &f.invert(&ab)), f.identity());
        assert_eq!(f.multiply(&f.word(&[a_inv]), &ab), f.word(&[b]));
        assert_eq!(f.radius_limit(), 31);
        assert_eq!(FreeGroup::new(1).unwrap().radius_limit(), 63);
    }

    #[test]
    fn free_group_axioms_on_short_words() {
        let f = FreeGroup::new(2).unwrap();
        let words: Vec<FreeWord> = (0..64u32)
            .map(|x| f.word(&[(x & 3) as u8, ((x >> 2) & 3) as u8, ((x >> 4) & 3) as u8]))
            .collect();
        for g in &words {
            assert_eq!(f.multiply(g, &f.invert(g)), f.identity());
            for h in words.iter().take(8) {
                for k in words.iter().step_by(7) {
                    assert_eq!(f.multiply(&f.multiply(g, h), k), f.multiply(g, &f.multiply(h, k)));
                }
            }
        }
    }

    #[test]
    fn parse_names() {
        assert_eq!(Builtin::parse("Z^2").unwrap().name(), "Z^2");
        assert_eq!(Builtin::parse("Z").unwrap().generators().len(), 2);
        assert_eq!(Builtin::parse("F_2").unwrap().generators().len(), 4);
        assert_eq!(Builtin::parse("S_3").unwrap().generators().len(), 2);
        assert_eq!(Builtin::parse("Z_5").unwrap().generators().len(), 2);
        assert_eq!(Builtin::parse("Z_2").unwrap().generators().len(), 1);
        let p = Builtin::parse("Z x F_2").unwrap();
        assert_eq!(p.name(), "Z x F_2");
        assert_eq!(p.generators().len(), 6);
        assert_eq!(Builtin::parse("Z×F_2").unwrap(), p);
        for bad in ["", "Q", "F_x", "Z^", "Z x "] {
            assert!(Builtin::parse(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn amenability_tags() {
        let tag = |n: &str| Builtin::parse(n).unwrap().amenable();
        assert_eq!(tag("Z x F_2"), Some(false));
        assert_eq!(tag("Z^0"), Some(true));
        assert_eq!(Builtin::parse("Z^0").unwrap().order(), Some(1));
        assert_eq!(tag("S_3"), Some(true));
        assert_eq!(Builtin::parse("S_3").unwrap().order(), Some(6));
        assert_eq!(tag("F_1"), Some(true));
        assert_eq!(tag("F_3"), Some(false));
        assert_eq!(tag("Z^2 x S_3"), Some(true));
        let n = Builtin::parse("Z x F_2").unwrap().reduced_norm().unwrap();
        assert!((n - (2.0 + 2.0 * 3f64.sqrt())).abs() < 1e-15);
    }

    #[test]
    fn catalog_generating_sets_are_symmetric_sets() {
        for g in Builtin::catalog() {
            validate_generators(&g).unwrap();
        }
    }

    #[test]
    fn repeated_generators_are_rejected() {
        assert!(FiniteGroup::new("Z_3", GroupTable::cyclic(3), Some(vec![1, 1])).is_err());
        let g = FiniteGroup::new("Z_3", GroupTable::cyclic(3), Some(vec![1])).unwrap();
        assert_eq!(g.generators(), vec![1, 2]);
    }

    #[test]
    fn s3_from_table_json() {
        let t = GroupTable::symmetric3();
        let text = serde_json::json!({"order": 6, "table": t.table}).to_string();
        let g = FiniteGroup::from_json("S3", &text).unwrap();
        assert_eq!(g.order(), Some(6));
        assert_eq!(g.amenable(), Some(true));
        assert_eq!(g.generators().len(), 5);
    }

    #[test]
    fn uniform_weight_norm() {
        use num_complex::Complex64;
        let f2 = Builtin::parse("F_2").unwrap();
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        assert_eq!(f2.uniform_weight_norm(&[zero, one, one, one, one]), Some(2.0 * 3f64.sqrt()));
        assert_eq!(f2.uniform_weight_norm(&[one, one, one, one, one]), None);
    }
}
