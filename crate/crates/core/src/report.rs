//! Output helpers shared by the spectral reports and the command line.

use serde::{Serialize, Serializer};

/// `x` with 17 significant digits, or `None` when not finite.
pub fn sig17_text(x: f64) -> Option<String> {
    x.is_finite().then(|| format!("{x:.16e}"))
}

/// Serializes a float as a JSON number with 17 significant digits.
pub fn sig17<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    opt_sig17(&Some(*x), s)
}

/// As [`sig17`]; `None` and non-finite values become `null`.
pub fn opt_sig17<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::Error as _;
    match x.and_then(sig17_text) {
        None => s.serialize_none(),
        Some(text) => serde_json::value::RawValue::from_string(text).map_err(S::Error::custom)?.serialize(s),
    }
}

/// Serializes float vectors with [`sig17`].
pub fn vec_sig17<S: Serializer>(xs: &[f64], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    struct One(f64);
    impl Serialize for One {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            sig17(&self.0, s)
        }
    }
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        seq.serialize_element(&One(*x))?;
    }
    seq.end()
}

/// `key<TAB>value` per top-level field; strings bare, nulls empty, anything
/// else as compact JSON.
pub fn tsv_lines(value: &serde_json::Value) -> String {
    let mut out = String::new();
    if let serde_json::Value::Object(map) = value {
        for (k, v) in map {
            let text = match v {
                serde_json::Value::String(s) => s.clone(),
                serde_json::Value::Null => String::new(),
                other => other.to_string(),
            };
            out.push_str(k);
            out.push('\t');
            out.push_str(&text);
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct R {
        #[serde(serialize_with = "sig17")]
        x: f64,
        #[serde(serialize_with = "opt_sig17")]
        y: Option<f64>,
        #[serde(serialize_with = "vec_sig17")]
        z: Vec<f64>,
    }

    #[test]
    fn seventeen_digits_round_trip() {
        let r = R { x: 0.1, y: None, z: vec![2.0f64.sqrt(), f64::NAN] };
        let text = serde_json::to_string(&r).unwrap();
        assert_eq!(text, r#"{"x":1.0000000000000001e-1,"y":null,"z":[1.4142135623730951e0,null]}"#);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["x"].as_f64(), Some(0.1));
        assert_eq!(tsv_lines(&v), "x\t0.1\ny\t\nz\t[1.4142135623730951,null]\n");
    }
}
