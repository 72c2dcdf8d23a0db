use super::constructors::{disc_truncation, function_algebra, group_algebra, tensor_product, trivial, GroupTable};
use super::FiniteQuantumGroup;
use crate::error::{Error, Result};
use crate::scalar::ExactScalar;

/// Bundled examples as `(name, JSON text)`. The last two are negative controls.
pub const BUNDLED_JSON: &[(&str, &str)] = &[
    ("C", include_str!("../../fixtures/c.json")),
    ("C(Z2)", include_str!("../../fixtures/fun_z2.json")),
    ("C(Z3)", include_str!("../../fixtures/fun_z3.json")),
    ("C(S3)", include_str!("../../fixtures/fun_s3.json")),
    ("C[Z2]", include_str!("../../fixtures/grp_z2.json")),
    ("C[Z3]", include_str!("../../fixtures/grp_z3.json")),
    ("C[S3]", include_str!("../../fixtures/grp_s3.json")),
    ("C(Z2)⊗C[Z2]", include_str!("../../fixtures/fun_z2_grp_z2.json")),
    ("disc4", include_str!("../../fixtures/disc4.json")),
    ("C(S3)-corrupted", include_str!("../../fixtures/fun_s3_corrupted.json")),
];

const NEGATIVE_CONTROLS: &[&str] = &["disc4", "C(S3)-corrupted"];

pub fn bundled_names() -> Vec<&'static str> {
    BUNDLED_JSON.iter().map(|(n, _)| *n).collect()
}

/// Names of bundled examples that are genuine finite quantum groups.
pub fn bundled_quantum_group_names() -> Vec<&'static str> {
    bundled_names().into_iter().filter(|n| !NEGATIVE_CONTROLS.contains(n)).collect()
}

/// Loads a bundled example; `x` is accepted in place of `⊗`.
pub fn bundled(name: &str) -> Result<FiniteQuantumGroup> {
    let wanted = name.replace('x', "⊗");
    BUNDLED_JSON
        .iter()
        .find(|(n, _)| *n == name || *n == wanted)
        .ok_or_else(|| Error::Invalid(format!("no bundled example named {name:?}; known: {}", bundled_names().join(", "))))
        .and_then(|(_, text)| FiniteQuantumGroup::from_json_str(text))
}

/// `C(S3)` with the coefficient of `δe⊗δ(012)` in `Δ(δ(012))` changed from 1 to 2.
pub fn corrupted_function_algebra_s3() -> FiniteQuantumGroup {
    let mut a = function_algebra(&GroupTable::symmetric3()).with_name("C(S3)-corrupted");
    a.comult[3].add_term((0, 3), ExactScalar::one());
    a
}

/// The in-memory objects the fixture files encode.
pub fn reference_objects() -> Vec<FiniteQuantumGroup> {
    let z2 = GroupTable::cyclic(2);
    let z3 = GroupTable::cyclic(3);
    let s3 = GroupTable::symmetric3();
    vec![
        trivial(),
        function_algebra(&z2).with_name("C(Z2)"),
        function_algebra(&z3).with_name("C(Z3)"),
        function_algebra(&s3).with_name("C(S3)"),
        group_algebra(&z2).with_name("C[Z2]"),
        group_algebra(&z3).with_name("C[Z3]"),
        group_algebra(&s3).with_name("C[S3]"),
        tensor_product(&function_algebra(&z2).with_name("C(Z2)"), &group_algebra(&z2).with_name("C[Z2]")),
        disc_truncation(4),
        corrupted_function_algebra_s3(),
    ]
}
