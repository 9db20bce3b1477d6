//! JSON files describing an algebra and named operators.
//!
//! ```json
//! { "dim": 2, "degrees": [0, 0],
//!   "mult": [[0, 0, 0, "1"], [0, 1, 1, "1"], [1, 0, 1, "1"]],
//!   "operators": { "d_dx": { "degree": 0, "matrix": [["0", "1"], ["0", "0"]] } } }
//! ```
//!
//! `mult` lists `e_i e_j = Σ c e_k` as `[i, j, k, c]`; omitted entries are zero.
//! Operator matrices are row-major and may be rectangular.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{GradedAlgebra, GradedVectorSpace, LinOp};
use crate::catalog::{self, CatalogEntry};
use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorJson {
    pub degree: i64,
    pub matrix: Vec<Vec<Rational>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraJson {
    pub dim: usize,
    pub degrees: Vec<i64>,
    #[serde(default)]
    pub mult: Vec<(usize, usize, usize, Rational)>,
    #[serde(default)]
    pub operators: BTreeMap<String, OperatorJson>,
}

/// A validated algebra with its named operators.
#[derive(Debug, Clone)]
pub struct LoadedAlgebra {
    pub name: String,
    pub algebra: GradedAlgebra,
    pub operators: BTreeMap<String, LinOp>,
}

impl LoadedAlgebra {
    /// Looks up an operator; `zero` is always available.
    pub fn operator(&self, name: &str) -> Result<LinOp> {
        if let Some(op) = self.operators.get(name) {
            return Ok(op.clone());
        }
        if name == "zero" {
            return Ok(LinOp::zero(self.algebra.dim(), 0));
        }
        Err(Error::UnknownOperator(name.to_string()))
    }

    pub fn operators_named(&self, names: &[String]) -> Result<Vec<LinOp>> {
        names.iter().map(|n| self.operator(n)).collect()
    }
}

impl From<CatalogEntry> for LoadedAlgebra {
    fn from(e: CatalogEntry) -> Self {
        LoadedAlgebra {
            name: e.name,
            algebra: e.algebra,
            operators: e.operators.into_iter().collect(),
        }
    }
}

fn operator_from_json(name: &str, op: &OperatorJson) -> Result<LinOp> {
    let cols = op.matrix.first().map_or(0, Vec::len);
    if op.matrix.iter().any(|r| r.len() != cols) {
        return Err(Error::Format(format!("operator {name:?}: ragged matrix")));
    }
    LinOp::from_rows(op.matrix.clone(), op.degree)
}

pub fn operator_to_json(op: &LinOp) -> OperatorJson {
    OperatorJson {
        degree: op.degree(),
        matrix: op.row_vecs(),
    }
}

/// Parses and validates. Syntax and shape problems give [`Error::Format`];
/// algebra axioms and operator homogeneity give their own errors.
pub fn parse_algebra_json(text: &str, name: &str) -> Result<LoadedAlgebra> {
    let raw: AlgebraJson = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    if raw.degrees.len() != raw.dim {
        return Err(Error::Format(format!("dim is {} but {} degrees are given", raw.dim, raw.degrees.len())));
    }
    if let Some(&(i, j, k, _)) = raw.mult.iter().find(|&&(i, j, k, _)| i >= raw.dim || j >= raw.dim || k >= raw.dim) {
        return Err(Error::Format(format!("structure constant index ({i}, {j}, {k}) out of range")));
    }
    let space = GradedVectorSpace::new(raw.degrees.clone())?;
    let algebra = GradedAlgebra::from_sparse(space, &raw.mult)?;
    let mut operators = BTreeMap::new();
    for (op_name, op) in &raw.operators {
        let lin = operator_from_json(op_name, op)?;
        if lin.is_square() {
            if lin.rows() != raw.dim {
                return Err(Error::Format(format!("operator {op_name:?} is {0}x{0}, algebra has dimension {1}", lin.rows(), raw.dim)));
            }
            lin.check_homogeneous(algebra.space(), algebra.space())?;
        }
        operators.insert(op_name.clone(), lin);
    }
    Ok(LoadedAlgebra {
        name: name.to_string(),
        algebra,
        operators,
    })
}

pub fn algebra_to_json(alg: &GradedAlgebra, operators: &[(String, LinOp)]) -> AlgebraJson {
    AlgebraJson {
        dim: alg.dim(),
        degrees: alg.degrees().to_vec(),
        mult: alg.structure_constants(),
        operators: operators.iter().map(|(n, op)| (n.clone(), operator_to_json(op))).collect(),
    }
}

pub fn catalog_entry_json(entry: &CatalogEntry) -> String {
    serde_json::to_string_pretty(&algebra_to_json(&entry.algebra, &entry.operators)).expect("algebra serializes")
}

/// `catalog:NAME` or a path to a JSON file.
pub fn load_algebra(spec: &str) -> Result<LoadedAlgebra> {
    if let Some(name) = spec.strip_prefix("catalog:") {
        return catalog::get(name)
            .map(LoadedAlgebra::from)
            .ok_or_else(|| Error::Format(format!("no catalog algebra named {name:?}")));
    }
    let text = std::fs::read_to_string(spec).map_err(|e| Error::Format(format!("{spec}: {e}")))?;
    parse_algebra_json(&text, spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_catalog() {
        for e in catalog::all() {
            let text = catalog_entry_json(&e);
            let back = parse_algebra_json(&text, &e.name).unwrap();
            assert_eq!(back.algebra, e.algebra, "{}", e.name);
            for (n, op) in &e.operators {
                assert_eq!(&back.operators[n], op);
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse_algebra_json("{", "x"), Err(Error::Format(_))));
        let bad_rational = r#"{"dim":1,"degrees":[0],"mult":[[0,0,0,"2/4"]]}"#;
        assert!(matches!(parse_algebra_json(bad_rational, "x"), Err(Error::Format(_))));
        let bad_den = r#"{"dim":1,"degrees":[0],"mult":[[0,0,0,"1/-1"]]}"#;
        assert!(parse_algebra_json(bad_den, "x").is_err());
        let short = r#"{"dim":2,"degrees":[0],"mult":[]}"#;
        assert!(matches!(parse_algebra_json(short, "x"), Err(Error::Format(_))));
        // e0 e1 = e1 but e1 e0 = 0
        let noncomm = r#"{"dim":2,"degrees":[0,0],"mult":[[0,1,1,"1"]]}"#;
        let err = parse_algebra_json(noncomm, "x").unwrap_err();
        assert!(!matches!(err, Error::Format(_)));
    }

    #[test]
    fn zero_is_always_defined() {
        let a = load_algebra("catalog:trunc_poly_2").unwrap();
        assert!(a.operator("zero").unwrap().is_zero());
        assert!(matches!(a.operator("nope"), Err(Error::UnknownOperator(_))));
        assert!(load_algebra("catalog:nope").is_err());
    }
}
