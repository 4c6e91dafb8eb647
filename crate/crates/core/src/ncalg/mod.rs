//! Free noncommutative algebra on the `n²` matrix generators, the quadratic
//! relations of a compatible pair, and graded ideal-membership certificates.

mod algebra;
mod membership;
mod poly;

pub use algebra::{mbar, mbar_chain, mbar_product, relations_from, AlgebraSpec, Flavor};
pub use membership::{ideal_membership, matrix_membership, MembershipMode};
pub use poly::{
    generator_label, generator_matrix, lift, matrix_to_json, mul_op, op_mul, poly_left, poly_right,
    scale, NCMatrix, NCPoly, Word,
};

use crate::tensor::TensorOp;

/// Image of `p` under the algebra map `M ↦ D·M`, i.e. generator `(i, j)`
/// goes to `Σ_a D_{ia} M_{aj}`.
pub fn substitute_left(p: &NCPoly, d: &TensorOp) -> NCPoly {
    let n = d.n();
    let image = |g: u8| {
        let (i, j) = (g as usize / n, g as usize % n);
        (0..n).fold(NCPoly::zero(), |acc, a| {
            let c = d.value_flat(i, a);
            acc.add(&NCPoly::gen(n, a + 1, j + 1).scale(&c))
        })
    };
    let mut out = NCPoly::zero();
    for (w, c) in p.terms() {
        let term = w
            .iter()
            .fold(NCPoly::constant(c.clone()), |acc, &g| acc.mul(&image(g)));
        out = out.add(&term);
    }
    out
}

/// Images of all defining relations under `M ↦ D·M`; the map is an algebra
/// endomorphism iff they all lie in the relation ideal.
pub fn transformed_relations(spec: &AlgebraSpec, d: &TensorOp) -> Vec<NCPoly> {
    spec.relations
        .iter()
        .map(|r| substitute_left(r, d))
        .collect()
}
