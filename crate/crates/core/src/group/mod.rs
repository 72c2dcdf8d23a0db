//! Discrete groups, their Cayley balls, and Kesten-type spectral tests on the
//! reduced group C*-algebra.
//!
//! Everything here works in `f64` on a hard (Dirichlet) truncation of the left
//! regular representation to a word-length ball, so every norm computed is a
//! lower bound for the true one. Negative verdicts need an upper bound from
//! outside.

mod ball;
mod builtins;
mod kesten;

use std::fmt::Debug;
use std::hash::Hash;

pub use ball::{CayleyBall, NO_NEIGHBOR};
pub use builtins::{Builtin, BuiltinElem, FiniteGroup, FreeGroup, FreeWord, Lattice, ProductGroup};
pub use kesten::{
    closed_walks, co_amenability_verdict, condition5_check, kesten_estimate, Condition5Report, Condition5Status,
    KestenOptions, KestenReport, Method, Verdict, WalkCount,
};

/// A finitely generated group with decidable normal forms.
///
/// `Elem` values are normal forms: two values compare equal exactly when they
/// name the same group element.
pub trait DiscreteGroup: Sync {
    type Elem: Clone + Eq + Hash + Debug + Send + Sync;

    fn name(&self) -> String;
    fn identity(&self) -> Self::Elem;
    fn multiply(&self, g: &Self::Elem, h: &Self::Elem) -> Self::Elem;
    fn invert(&self, g: &Self::Elem) -> Self::Elem;
    /// The generating set `S`, closed under inverses, without repeats.
    fn generators(&self) -> Vec<Self::Elem>;
    fn format(&self, g: &Self::Elem) -> String;

    /// `Some(true)` for groups known to be amenable, `Some(false)` for groups
    /// known not to be.
    fn amenable(&self) -> Option<bool> {
        None
    }

    /// Closed form for the top of the spectrum of `Σ_{s∈S} λ(s)` in the
    /// reduced C*-algebra, when known.
    fn reduced_norm(&self) -> Option<f64> {
        None
    }

    /// Largest radius the element representation can hold.
    fn radius_limit(&self) -> usize {
        usize::MAX
    }

    /// Order of the group when finite.
    fn order(&self) -> Option<usize> {
        None
    }
}

/// Rejects repeated generators and generating sets not closed under inverses.
pub fn validate_generators<G: DiscreteGroup + ?Sized>(group: &G) -> crate::Result<()> {
    let gens = group.generators();
    for (i, s) in gens.iter().enumerate() {
        if gens[..i].contains(s) {
            return Err(crate::Error::Invalid(format!(
                "generator {} of {} is repeated; S must be a set",
                group.format(s),
                group.name()
            )));
        }
        if !gens.contains(&group.invert(s)) {
            return Err(crate::Error::Invalid(format!(
                "generating set of {} is not symmetric: {} has no inverse in S",
                group.name(),
                group.format(s)
            )));
        }
    }
    Ok(())
}
