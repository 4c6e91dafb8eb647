//! Resolution of `--r` / `--f` arguments: a builtin name or a JSON file.

use std::path::Path;

use chnlab::tensor::{operator_from_json, OperatorJson};
use chnlab::ybkit::builtin;
use chnlab::{TensorOp, Var};

/// Builtins that take a dimension suffix.
const DIMENSIONED: [&str; 4] = ["standard", "standard_r", "permutation", "diagonal_twist"];

/// Validates and interns the `--params` names.
pub fn declare_params(names: &[String]) -> Result<Vec<String>, String> {
    let mut out: Vec<String> = Vec::new();
    for raw in names {
        let name = raw.trim();
        let mut chars = name.chars();
        let ok_head = chars
            .next()
            .is_some_and(|c| c.is_ascii_alphabetic() || c == '_');
        if !ok_head || !chars.all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(format!("--params: '{name}' is not an identifier"));
        }
        if name == "q" || name == "i" {
            return Err(format!("--params: '{name}' is reserved"));
        }
        if out.iter().any(|p| p == name) {
            return Err(format!("--params: '{name}' declared twice"));
        }
        Var::named(name).map_err(|e| format!("--params: {e}"))?;
        out.push(name.to_string());
    }
    Ok(out)
}

fn looks_like_file(arg: &str) -> bool {
    arg.ends_with(".json") || arg.contains('/') || Path::new(arg).is_file()
}

fn with_dimension(name: &str, n: Option<usize>) -> String {
    match n {
        Some(n) if !name.contains(':') && DIMENSIONED.contains(&name) => format!("{name}:{n}"),
        _ => name.to_string(),
    }
}

fn read_file(path: &str, params: &[String]) -> Result<TensorOp, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
    let doc: OperatorJson = serde_json::from_str(&text).map_err(|e| format!("{path}: {e}"))?;
    operator_from_json(&doc, params).map_err(|e| format!("{path}: {e}"))
}

/// Loads an operator of the given arity, checking the dimension against `n`
/// when one is given. Nothing is computed before this succeeds.
pub fn load(
    arg: &str,
    flag: &str,
    arity: usize,
    n: Option<usize>,
    params: &[String],
) -> Result<TensorOp, String> {
    let op = if looks_like_file(arg) {
        read_file(arg, params)?
    } else {
        builtin(&with_dimension(arg, n)).map_err(|e| format!("{flag}: {e}"))?
    };
    if op.arity() != arity {
        return Err(format!(
            "{flag}: expected an operator on {arity} tensor factors, got arity {}",
            op.arity()
        ));
    }
    if let Some(n) = n {
        if op.n() != n {
            return Err(format!(
                "{flag}: operator has dimension {} but --n is {n}",
                op.n()
            ));
        }
    }
    Ok(op)
}

/// Loads `R` and `F` and checks that they act on the same space.
pub fn load_pair(
    r: &str,
    f: &str,
    n: Option<usize>,
    params: &[String],
) -> Result<(TensorOp, TensorOp), String> {
    let r = load(r, "--r", 2, n, params)?;
    let f = load(f, "--f", 2, Some(n.unwrap_or(r.n())), params)?;
    Ok((r, f))
}
