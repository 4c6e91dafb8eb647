//! JSON interchange format for operators:
//! `{"n": 3, "arity": 2, "entries": {"1,2|2,1": "q - q^-1", ...}}`
//! with 1-based multi-indices and omitted entries meaning zero.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::TensorOp;
use crate::error::{Error, Result};
use crate::scalar::{annotate, parse_scalar};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorJson {
    pub n: usize,
    pub arity: usize,
    pub entries: BTreeMap<String, String>,
}

fn join(idx: &[usize]) -> String {
    idx.iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

pub fn operator_to_json(op: &TensorOp) -> OperatorJson {
    let entries = op
        .multi_entries()
        .map(|(r, c, v)| (format!("{}|{}", join(&r), join(&c)), v.to_string()))
        .collect();
    OperatorJson {
        n: op.n(),
        arity: op.arity(),
        entries,
    }
}

fn parse_multi(s: &str, key: &str) -> Result<Vec<usize>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::Input(format!("entry key \"{key}\": bad index \"{t}\"")))
        })
        .collect()
}

/// Validates shape and parses every entry; `params` are the declared
/// indeterminates besides `q`.
pub fn operator_from_json(doc: &OperatorJson, params: &[String]) -> Result<TensorOp> {
    if doc.n == 0 {
        return Err(Error::Input(
            "operator dimension n must be at least 1".into(),
        ));
    }
    let mut op = TensorOp::zero(doc.n, doc.arity);
    for (key, expr) in &doc.entries {
        let (r, c) = key
            .split_once('|')
            .ok_or_else(|| Error::Input(format!("entry key \"{key}\" lacks a '|' separator")))?;
        let (r, c) = (parse_multi(r, key)?, parse_multi(c, key)?);
        let (ri, ci) = match (op.flat_index(&r), op.flat_index(&c)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => {
                return Err(Error::Input(format!("entry key \"{key}\": {e}")));
            }
        };
        let value = parse_scalar(expr, params)
            .map_err(|e| Error::Input(format!("entry \"{key}\":\n{}", annotate(expr, &e))))?;
        if op.get_flat(ri, ci).is_some() {
            return Err(Error::Input(format!("entry key \"{key}\" given twice")));
        }
        op.set(&r, &c, value)?;
    }
    Ok(op)
}
