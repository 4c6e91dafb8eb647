//! Cayley-Hamilton-Newton data and identity residuals, classical and
//! quantum.

pub mod classical;
mod quantum;

pub use classical::{
    classical_chn_check, classical_invariants, classical_newton_check, principal_minor_sum,
    ClassicalFlavor, ClassicalInvariants, ClassicalMatrix,
};
pub use quantum::{matrix_power, matrix_trace, ChnInstance, Family, SigmaNorm, Variant};

#[cfg(test)]
mod tests;
