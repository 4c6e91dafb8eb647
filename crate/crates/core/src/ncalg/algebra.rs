use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::poly::{generator_label, generator_matrix, mul_op, op_mul, NCMatrix, NCPoly};
use crate::error::{Error, Result};
use crate::linalg::SparseEchelon;
use crate::scalar::Scalar;
use crate::tensor::TensorOp;
use crate::ybkit::CompatiblePair;

/// Which quantum matrix algebra a spec describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    /// `F̂ = P`: the RTT algebra with generators `T`.
    Rtt,
    /// `F̂ = R̂`: the RLRL algebra with generators `L`.
    Rlrl,
    /// Any compatible pair, generators `M`.
    General,
}

impl Flavor {
    /// Flavor implied by the pair: RTT if `F̂ = P`, RLRL if `F̂ = R̂`.
    pub fn detect(pair: &CompatiblePair) -> Self {
        if pair.fhat == TensorOp::permutation(pair.n()) {
            Flavor::Rtt
        } else if pair.fhat == pair.rhat {
            Flavor::Rlrl
        } else {
            Flavor::General
        }
    }

    /// Conventional name of the generator matrix.
    pub fn symbol(self) -> &'static str {
        match self {
            Flavor::Rtt => "T",
            Flavor::Rlrl => "L",
            Flavor::General => "M",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Flavor::Rtt => "rtt",
            Flavor::Rlrl => "rlrl",
            Flavor::General => "general",
        }
    }
}

/// A quadratic algebra `R̂ M̄₁M̄₂ = M̄₁M̄₂ R̂^{FF}` with its relations.
#[derive(Debug)]
pub struct AlgebraSpec {
    pub n: usize,
    pub pair: CompatiblePair,
    pub flavor: Flavor,
    /// Nonzero entries of `R̂ M̄₁M̄₂ − M̄₁M̄₂ R̂^{FF}`, in entry order.
    pub relations: Vec<NCPoly>,
    basis: OnceLock<Vec<NCPoly>>,
}

impl Clone for AlgebraSpec {
    fn clone(&self) -> Self {
        let basis = OnceLock::new();
        if let Some(b) = self.basis.get() {
            let _ = basis.set(b.clone());
        }
        Self {
            n: self.n,
            pair: self.pair.clone(),
            flavor: self.flavor,
            relations: self.relations.clone(),
            basis,
        }
    }
}

/// `M̄_k` on `V^{⊗total}`: `M̄₁ = M₁`, `M̄_{m+1} = F̂_m M̄_m F̂_m⁻¹`.
pub fn mbar(pair: &CompatiblePair, k: usize, total: usize) -> Result<NCMatrix> {
    Ok(mbar_chain(pair, total)?.swap_remove(k - 1))
}

/// `[M̄₁, …, M̄_total]` on `V^{⊗total}`.
pub fn mbar_chain(pair: &CompatiblePair, total: usize) -> Result<Vec<NCMatrix>> {
    if total == 0 {
        return Err(Error::Input("need at least one tensor factor".into()));
    }
    let n = pair.n();
    let mut chain = vec![generator_matrix(n, 1, total)?];
    for m in 1..total {
        let f = pair.fhat.place(m, total)?;
        let fi = pair.fhat_inv.place(m, total)?;
        let next = mul_op(&op_mul(&f, &chain[m - 1])?, &fi)?;
        chain.push(next);
    }
    Ok(chain)
}

/// Product `M̄₁M̄₂⋯M̄_k` on `V^{⊗k}`.
pub fn mbar_product(pair: &CompatiblePair, k: usize) -> Result<NCMatrix> {
    let chain = mbar_chain(pair, k)?;
    NCMatrix::product(chain.iter())
}

/// Sparse coordinate vector of a homogeneous polynomial of degree `d`:
/// the word `g₁…g_d` sits at `Σ g_t·G^{d−t}` with `G = n²`.
pub(crate) fn word_index(w: &[u8], g: usize) -> usize {
    w.iter().fold(0, |acc, &x| acc * g + x as usize)
}

pub(crate) fn to_sparse(p: &NCPoly, g: usize) -> Vec<(usize, Scalar)> {
    let mut v: Vec<_> = p
        .terms()
        .iter()
        .map(|(w, c)| (word_index(w, g), c.clone()))
        .collect();
    v.sort_by_key(|(i, _)| *i);
    v
}

pub(crate) fn from_sparse(v: &[(usize, Scalar)], g: usize, d: usize) -> NCPoly {
    let mut out = NCPoly::zero();
    for (idx, c) in v {
        let mut w = smallvec::SmallVec::new();
        let mut x = *idx;
        for _ in 0..d {
            w.push((x % g) as u8);
            x /= g;
        }
        w.reverse();
        out = out.add(&NCPoly::monomial(w, c.clone()));
    }
    out
}

impl AlgebraSpec {
    /// Number of generators `n²`.
    pub fn generators(&self) -> usize {
        self.n * self.n
    }

    /// Row-reduced basis of the degree-2 relation space (computed once).
    pub fn relation_basis(&self) -> &[NCPoly] {
        self.basis.get_or_init(|| {
            let g = self.generators();
            let mut ech = SparseEchelon::new();
            for r in &self.relations {
                ech.insert(to_sparse(r, g));
            }
            ech.reduced_rows()
                .iter()
                .map(|v| from_sparse(v, g, 2))
                .collect()
        })
    }

    pub fn symbol(&self) -> &'static str {
        self.flavor.symbol()
    }

    /// The generator `(i, j)`.
    pub fn gen(&self, i: usize, j: usize) -> NCPoly {
        NCPoly::generator(generator_label(self.n, i, j))
    }
}

/// Builds the algebra of a compatible pair. The flavor must agree with the
/// pair (`rtt` needs `F̂ = P`, `rlrl` needs `F̂ = R̂`); `general` accepts any.
pub fn relations_from(pair: &CompatiblePair, flavor: Flavor) -> Result<AlgebraSpec> {
    let detected = Flavor::detect(pair);
    if flavor != Flavor::General && flavor != detected {
        return Err(Error::Input(format!(
            "the pair does not define the {} algebra",
            flavor.name()
        )));
    }
    let mm = mbar_product(pair, 2)?;
    let res = op_mul(&pair.rhat, &mm)?.sub(&mul_op(&mm, &pair.rhat_ff)?)?;
    let relations = res.entries().values().cloned().collect();
    Ok(AlgebraSpec {
        n: pair.n(),
        pair: pair.clone(),
        flavor,
        relations,
        basis: OnceLock::new(),
    })
}
