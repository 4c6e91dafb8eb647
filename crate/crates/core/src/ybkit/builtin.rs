//! Named example matrices.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::tensor::TensorOp;

/// The standard two-eigenvalue braid matrix:
/// `R̂^{ij}_{kl} = q^{δ_ij} δ^i_l δ^j_k + λ [l > k] δ^i_k δ^j_l`,
/// row `(i,j)`, column `(k,l)`, `λ = q − q⁻¹`.
pub fn standard_r(n: usize) -> TensorOp {
    let q = Scalar::q();
    let lambda = Scalar::lambda();
    let mut items = Vec::new();
    for i in 0..n {
        for j in 0..n {
            // swap term
            let v = if i == j { q.clone() } else { Scalar::one() };
            items.push((i * n + j, j * n + i, v));
            if j > i {
                items.push((i * n + j, i * n + j, lambda.clone()));
            }
        }
    }
    TensorOp::from_flat(n, 2, items)
}

pub fn permutation(n: usize) -> TensorOp {
    TensorOp::permutation(n)
}

/// Entries of a 9×9 operator given by 1-based `(row, col)` positions.
fn nine(items: Vec<(usize, usize, Scalar)>) -> TensorOp {
    TensorOp::from_flat(3, 2, items.into_iter().map(|(r, c, v)| (r - 1, c - 1, v)))
}

/// The Cremmer-Gervais matrix with symbolic parameters `b` and `y`.
pub fn cremmer_gervais_r() -> TensorOp {
    let b = Scalar::param("b").expect("variable table has room");
    let y = Scalar::param("y").expect("variable table has room");
    cremmer_gervais_r_with(&b, &y)
}

/// The Cremmer-Gervais matrix at given values of `b` (nonzero) and `y`.
pub fn cremmer_gervais_r_with(b: &Scalar, y: &Scalar) -> TensorOp {
    let q = Scalar::q();
    let l = Scalar::lambda();
    let qi = q.inv().expect("q is invertible");
    let bi = b.inv().expect("b must be nonzero");
    let b2 = b.mul(b);
    nine(vec![
        (1, 1, q.clone()),
        (2, 4, b.clone()),
        (3, 7, b2.mul(&qi)),
        (4, 2, bi.clone()),
        (4, 4, l.clone()),
        (5, 3, y.clone()),
        (5, 5, q.clone()),
        (5, 7, b2.mul(y).mul(&qi).mul(&qi).neg()),
        (6, 8, b.clone()),
        (7, 3, q.mul(&bi).mul(&bi)),
        (7, 7, l.clone()),
        (8, 6, bi),
        (8, 8, l),
        (9, 9, q),
    ])
}

/// The Cremmer-Gervais twisting matrix with `α = β = γ = i`.
pub fn cremmer_gervais_f() -> TensorOp {
    let one = Scalar::one;
    let i = Scalar::i;
    nine(vec![
        (1, 1, one()),
        (2, 4, i()),
        (3, 7, one().neg()),
        (4, 2, i()),
        (5, 5, i()),
        (6, 8, i()),
        (7, 3, one().neg()),
        (8, 6, i()),
        (9, 9, one()),
    ])
}

/// `ΔP` for a diagonal `Δ` on `V⊗V` given by its `n²` diagonal entries in
/// basis order `11, 12, …, nn`.
pub fn diagonal_twist(delta: &[Scalar]) -> Result<TensorOp> {
    let n = (delta.len() as f64).sqrt().round() as usize;
    if n == 0 || n * n != delta.len() {
        return Err(Error::Input(format!(
            "a diagonal twist needs n^2 entries, got {}",
            delta.len()
        )));
    }
    if delta.iter().any(Scalar::is_zero) {
        return Err(Error::Input(
            "diagonal twist entries must be nonzero".into(),
        ));
    }
    let d = TensorOp::from_flat(
        n,
        2,
        delta.iter().enumerate().map(|(u, v)| (u, u, v.clone())),
    );
    d.compose(&TensorOp::permutation(n))
}

/// `ΔP` with independent symbolic entries `d11, d12, …, dnn`.
pub fn diagonal_twist_generic(n: usize) -> Result<TensorOp> {
    let mut delta = Vec::with_capacity(n * n);
    for i in 1..=n {
        for j in 1..=n {
            delta.push(Scalar::param(&format!("d{i}{j}"))?);
        }
    }
    diagonal_twist(&delta)
}

/// Builtin names accepted by [`builtin`]; `N` is a dimension.
pub fn builtin_names() -> &'static [&'static str] {
    &[
        "standard:N",
        "permutation:N",
        "cremmer_gervais_r",
        "cremmer_gervais_f",
        "diagonal_twist:N",
    ]
}

fn dim(arg: Option<&str>, name: &str) -> Result<usize> {
    let n: usize = arg
        .ok_or_else(|| Error::Input(format!("builtin '{name}' needs a dimension, e.g. {name}:2")))?
        .parse()
        .map_err(|_| Error::Input(format!("bad dimension in builtin '{name}'")))?;
    if n < 1 {
        return Err(Error::Input("dimension must be at least 1".into()));
    }
    Ok(n)
}

/// Resolves a builtin by name, e.g. `standard:3` or `cremmer_gervais_r`.
pub fn builtin(name: &str) -> Result<TensorOp> {
    let (head, arg) = match name.split_once(':') {
        Some((h, a)) => (h, Some(a)),
        None => (name, None),
    };
    match head {
        "standard" | "standard_r" => Ok(standard_r(dim(arg, head)?)),
        "permutation" => Ok(permutation(dim(arg, head)?)),
        "diagonal_twist" => diagonal_twist_generic(dim(arg, head)?),
        "cremmer_gervais_r" if arg.is_none() => Ok(cremmer_gervais_r()),
        "cremmer_gervais_f" if arg.is_none() => Ok(cremmer_gervais_f()),
        _ => Err(Error::Input(format!(
            "unknown builtin '{name}' (known: {})",
            builtin_names().join(", ")
        ))),
    }
}
