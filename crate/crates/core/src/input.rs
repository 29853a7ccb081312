//! JSON tensor files.
//!
//! ```json
//! {"dense": [27 values, lexicographic abc]}
//! {"sparse": {"111": 0.1, "233": -0.05}}
//! {"general": true, "sparse": {"033": 1.0, "111": 1.0}}
//! ```
//!
//! MDS keys use digits 1-3; general keys use 0-3 (`"000"` may be omitted).
//! A general file may also give `"dense"` with 64 values.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hs::{parse_label, GeneralHsTensor, MdsTensor};

#[derive(Debug, Clone, PartialEq)]
#[allow(clippy::large_enum_variant)]
pub enum TensorInput {
    Mds(MdsTensor<f64>),
    General(GeneralHsTensor<f64>),
}

impl TensorInput {
    /// The same operator as a general tensor.
    pub fn to_general(&self) -> GeneralHsTensor<f64> {
        match self {
            TensorInput::Mds(t) => GeneralHsTensor::from_mds(t),
            TensorInput::General(g) => *g,
        }
    }

    /// The MDS tensor if the operator has no identity-bearing terms.
    pub fn as_mds(&self) -> Option<MdsTensor<f64>> {
        match self {
            TensorInput::Mds(t) => Some(*t),
            TensorInput::General(g) => g.has_only_triple_terms(0.0).then(|| g.mds_part()),
        }
    }
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawTensor {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    general: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dense: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sparse: Option<BTreeMap<String, f64>>,
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn parse_tensor_json(text: &str) -> Result<TensorInput> {
    let raw: RawTensor = serde_json::from_str(text)
        .map_err(|e| parse_err(format!("line {}, column {}: {e}", e.line(), e.column())))?;
    let field = |name: &str, e: Error| match e {
        Error::Input(m) | Error::Parse(m) => parse_err(format!("field {name:?}: {m}")),
        other => other,
    };
    match (raw.dense, raw.sparse) {
        (Some(_), Some(_)) => Err(parse_err("give exactly one of \"dense\" or \"sparse\", not both")),
        (None, None) => Err(parse_err("missing \"dense\" or \"sparse\" field")),
        (Some(values), None) if raw.general => {
            if values.len() != 64 {
                return Err(parse_err(format!("field \"dense\": general tensor needs 64 values, got {}", values.len())));
            }
            let mut r = [[[0.0; 4]; 4]; 4];
            for (k, v) in values.into_iter().enumerate() {
                r[k / 16][(k / 4) % 4][k % 4] = v;
            }
            GeneralHsTensor::new(r).map(TensorInput::General).map_err(|e| field("dense", e))
        }
        (Some(values), None) => {
            if values.len() != 27 {
                return Err(parse_err(format!("field \"dense\": expected 27 values, got {}", values.len())));
            }
            let mut r = [[[0.0; 3]; 3]; 3];
            for (k, v) in values.into_iter().enumerate() {
                r[k / 9][(k / 3) % 3][k % 3] = v;
            }
            MdsTensor::from_finite(r).map(TensorInput::Mds).map_err(|e| field("dense", e))
        }
        (None, Some(map)) if raw.general => {
            GeneralHsTensor::from_sparse(map.iter().map(|(k, &v)| (k.as_str(), v)))
                .map(TensorInput::General)
                .map_err(|e| field("sparse", e))
        }
        (None, Some(map)) => {
            let mut r = [[[0.0; 3]; 3]; 3];
            for (k, &v) in &map {
                let [a, b, c] = parse_label::<3>(k, 1).map_err(|e| field("sparse", e))?;
                r[a][b][c] = v;
            }
            MdsTensor::from_finite(r).map(TensorInput::Mds).map_err(|e| field("sparse", e))
        }
    }
}

pub fn read_tensor_file(path: &std::path::Path) -> Result<TensorInput> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    parse_tensor_json(&text).map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        other => other,
    })
}

/// Sparse JSON for a tensor, nonzero entries only, keys sorted.
pub fn tensor_to_json(t: &TensorInput, name: Option<&str>) -> String {
    let (general, sparse) = match t {
        TensorInput::Mds(m) => (
            false,
            m.iter()
                .filter(|(_, v)| *v != 0.0)
                .map(|([a, b, c], v)| (format!("{}{}{}", a + 1, b + 1, c + 1), v))
                .collect(),
        ),
        TensorInput::General(g) => (
            true,
            g.iter()
                .filter(|(_, v)| *v != 0.0)
                .map(|([m, n, k], v)| (format!("{m}{n}{k}"), v))
                .collect(),
        ),
    };
    let raw = RawTensor {
        name: name.map(str::to_owned),
        general,
        dense: None,
        sparse: Some(sparse),
    };
    let mut s = serde_json::to_string_pretty(&raw).expect("tensor serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{EXAMPLE_1, EXAMPLE_2};

    #[test]
    fn dense_and_sparse() {
        let dense = format!("{{\"dense\": {:?}}}", EXAMPLE_1.to_vec());
        let t = parse_tensor_json(&dense).unwrap();
        assert_eq!(t, TensorInput::Mds(MdsTensor::from_dense(&EXAMPLE_1).unwrap()));

        let sparse = r#"{"sparse": {"112": 0.05, "113": 0.22, "132": 0.12, "133": 0.2, "211": 0.12,
                          "221": 0.3, "311": 0.15, "322": 0.25, "333": 0.1}}"#;
        let t = parse_tensor_json(sparse).unwrap();
        assert_eq!(t, TensorInput::Mds(MdsTensor::from_sparse(EXAMPLE_2).unwrap()));
        assert_eq!(parse_tensor_json(&tensor_to_json(&t, None)).unwrap(), t);
    }

    #[test]
    fn general_files() {
        let g = parse_tensor_json(r#"{"general": true, "sparse": {"111": 1.0, "033": 1.0}}"#).unwrap();
        assert!(matches!(g, TensorInput::General(_)));
        assert!(g.as_mds().is_none());
        let only_triple = parse_tensor_json(r#"{"general": true, "sparse": {"111": 0.2}}"#).unwrap();
        assert!(only_triple.as_mds().is_some());
        assert_eq!(parse_tensor_json(&tensor_to_json(&g, Some("x"))).unwrap(), g);
    }

    #[test]
    fn errors_carry_context() {
        let e = parse_tensor_json("{\"dense\": [1, 2,\n 3,]}").unwrap_err();
        assert!(matches!(&e, Error::Parse(m) if m.contains("line 2")), "{e}");
        let e = parse_tensor_json(r#"{"sparse": {"104": 0.1}}"#).unwrap_err();
        assert!(matches!(&e, Error::Parse(m) if m.contains("sparse")), "{e}");
        assert!(parse_tensor_json(r#"{"dense": [0.1]}"#).is_err());
        assert!(parse_tensor_json(r#"{"dens": []}"#).is_err());
        assert!(parse_tensor_json(r#"{}"#).is_err());
        assert!(parse_tensor_json(r#"{"general": true, "sparse": {"000": 2.0}}"#).is_err());
    }

    #[test]
    fn out_of_box_entries_are_kept() {
        let t = parse_tensor_json(r#"{"sparse": {"111": 1.5}}"#).unwrap();
        assert_eq!(t.as_mds().unwrap().get(0, 0, 0), 1.5);
    }
}
