use serde::{Deserialize, Serialize};

use super::FiniteQuantumGroup;
use crate::bialgebra::{Element, Tensor};
use crate::error::{Error, Result};
use crate::scalar::{parse_scalar, ExactScalar};

/// A scalar in a file: either `"p/q"`-style text or an explicit `["re", "im"]` pair.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonScalar {
    Text(String),
    Pair(String, String),
}

impl JsonScalar {
    fn parse(&self) -> Result<ExactScalar> {
        match self {
            JsonScalar::Text(s) => parse_scalar(s),
            JsonScalar::Pair(re, im) => ExactScalar::from_strings(re, im),
        }
    }

    fn from_scalar(c: &ExactScalar) -> Self {
        let (re, im) = c.to_strings();
        JsonScalar::Pair(re, im)
    }
}

/// Serialized finite quantum group. Counit and antipode are optional extensions.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FqgJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dim: usize,
    pub labels: Vec<String>,
    pub unit: Vec<JsonScalar>,
    pub mult: Vec<(usize, usize, usize, String, String)>,
    pub invol: Vec<(usize, usize, String, String)>,
    pub comult: Vec<(usize, usize, usize, String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counit: Option<Vec<JsonScalar>>,
    /// `[i, j, re, im]`: `κ(e_i)` has coefficient `re + im·i` on `e_j`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub antipode: Option<Vec<(usize, usize, String, String)>>,
}

fn check_index(i: usize, dim: usize, what: &str) -> Result<()> {
    if i < dim {
        Ok(())
    } else {
        Err(Error::Parse(format!("{what}: index {i} out of range for dimension {dim}")))
    }
}

fn dense(values: &[JsonScalar], dim: usize, what: &str) -> Result<Vec<ExactScalar>> {
    if values.len() != dim {
        return Err(Error::Parse(format!("{what}: expected {dim} entries, found {}", values.len())));
    }
    values.iter().map(JsonScalar::parse).collect()
}

impl FqgJson {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_quantum_group(&self) -> Result<FiniteQuantumGroup> {
        let n = self.dim;
        if self.labels.len() != n {
            return Err(Error::Parse(format!("labels: expected {n}, found {}", self.labels.len())));
        }
        let unit = Element::from_terms(dense(&self.unit, n, "unit")?.into_iter().enumerate());
        let mut mult = vec![Element::zero(); n * n];
        for (i, j, k, re, im) in &self.mult {
            for idx in [*i, *j, *k] {
                check_index(idx, n, "mult")?;
            }
            mult[i * n + j].add_term(*k, ExactScalar::from_strings(re, im)?);
        }
        let mut invol = vec![Element::zero(); n];
        for (i, j, re, im) in &self.invol {
            check_index(*i, n, "invol")?;
            check_index(*j, n, "invol")?;
            invol[*i].add_term(*j, ExactScalar::from_strings(re, im)?);
        }
        let mut comult = vec![Tensor::zero(); n];
        for (i, j, k, re, im) in &self.comult {
            for idx in [*i, *j, *k] {
                check_index(idx, n, "comult")?;
            }
            comult[*i].add_term((*j, *k), ExactScalar::from_strings(re, im)?);
        }
        let counit = self.counit.as_ref().map(|c| dense(c, n, "counit")).transpose()?;
        let antipode = match &self.antipode {
            None => None,
            Some(entries) => {
                let mut k = vec![Element::zero(); n];
                for (i, j, re, im) in entries {
                    check_index(*i, n, "antipode")?;
                    check_index(*j, n, "antipode")?;
                    k[*i].add_term(*j, ExactScalar::from_strings(re, im)?);
                }
                Some(k)
            }
        };
        Ok(FiniteQuantumGroup {
            name: self.name.clone().unwrap_or_else(|| "unnamed".into()),
            dim: n,
            labels: self.labels.clone(),
            unit,
            mult,
            invol,
            comult,
            counit,
            antipode,
        })
    }

    pub fn from_quantum_group(a: &FiniteQuantumGroup) -> Self {
        let n = a.dim;
        let strings = |c: &ExactScalar| c.to_strings();
        let mut mult = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for (&k, c) in a.mult[i * n + j].iter() {
                    let (re, im) = strings(c);
                    mult.push((i, j, k, re, im));
                }
            }
        }
        let mut invol = Vec::new();
        for (i, x) in a.invol.iter().enumerate() {
            for (&j, c) in x.iter() {
                let (re, im) = strings(c);
                invol.push((i, j, re, im));
            }
        }
        let mut comult = Vec::new();
        for (i, d) in a.comult.iter().enumerate() {
            for (&(j, k), c) in d.iter() {
                let (re, im) = strings(c);
                comult.push((i, j, k, re, im));
            }
        }
        let antipode = a.antipode.as_ref().map(|k| {
            let mut out = Vec::new();
            for (i, x) in k.iter().enumerate() {
                for (&j, c) in x.iter() {
                    let (re, im) = strings(c);
                    out.push((i, j, re, im));
                }
            }
            out
        });
        FqgJson {
            name: Some(a.name.clone()),
            dim: n,
            labels: a.labels.clone(),
            unit: a.to_dense(&a.unit).iter().map(JsonScalar::from_scalar).collect(),
            mult,
            invol,
            comult,
            counit: a.counit.as_ref().map(|c| c.iter().map(JsonScalar::from_scalar).collect()),
            antipode,
        }
    }

    pub fn to_string_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

impl FiniteQuantumGroup {
    pub fn from_json_str(text: &str) -> Result<Self> {
        FqgJson::parse(text)?.to_quantum_group()
    }

    pub fn to_json_string(&self) -> String {
        FqgJson::from_quantum_group(self).to_string_pretty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::{function_algebra, group_algebra, GroupTable};

    #[test]
    fn round_trip() {
        for a in [function_algebra(&GroupTable::symmetric3()), group_algebra(&GroupTable::cyclic(3))] {
            let back = FiniteQuantumGroup::from_json_str(&a.to_json_string()).unwrap();
            assert_eq!(back, a);
        }
    }

    #[test]
    fn rejects_float_scalars() {
        let text = r#"{"dim":1,"labels":["1"],"unit":["1"],"mult":[[0,0,0,"1.0","0"]],
            "invol":[[0,0,"1","0"]],"comult":[[0,0,0,"1","0"]]}"#;
        assert!(FiniteQuantumGroup::from_json_str(text).is_err());
        let text = r#"{"dim":1,"labels":["1"],"unit":[1.0],"mult":[[0,0,0,"1","0"]],
            "invol":[[0,0,"1","0"]],"comult":[[0,0,0,"1","0"]]}"#;
        assert!(FiniteQuantumGroup::from_json_str(text).is_err());
        let text = r#"{"dim":1,"labels":["1"],"unit":["1"],"mult":[[0,0,0.0,"1","0"]],
            "invol":[[0,0,"1","0"]],"comult":[[0,0,0,"1","0"]]}"#;
        assert!(FiniteQuantumGroup::from_json_str(text).is_err());
    }

    #[test]
    fn minimal_file_solves_counit_and_antipode() {
        let text = r#"{"dim":1,"labels":["1"],"unit":["1"],"mult":[[0,0,0,"1","0"]],
            "invol":[[0,0,"1","0"]],"comult":[[0,0,0,"1","0"]]}"#;
        let a = FiniteQuantumGroup::from_json_str(text).unwrap();
        assert!(a.axiom_report().passed());
    }

    #[test]
    fn rejects_out_of_range_and_unknown_fields() {
        let text = r#"{"dim":1,"labels":["1"],"unit":["1"],"mult":[[0,0,3,"1","0"]],
            "invol":[[0,0,"1","0"]],"comult":[[0,0,0,"1","0"]]}"#;
        assert!(FiniteQuantumGroup::from_json_str(text).is_err());
        let text = r#"{"dim":1,"labels":["1"],"unit":["1"],"mult":[[0,0,0,"1","0"]],
            "invol":[[0,0,"1","0"]],"comult":[[0,0,0,"1","0"]],"extra":1}"#;
        assert!(FiniteQuantumGroup::from_json_str(text).is_err());
    }
}
