//! Exact symbolic verification of Cayley-Hamilton-Newton identities.
//!
//! The crate builds the identities for classical matrices and for quantum
//! matrix algebras defined by a compatible pair of Yang-Baxter matrices
//! (the RTT and RLRL algebras being the special cases `F̂ = P` and
//! `F̂ = R̂`), and certifies each one by reducing its residual to zero:
//! exactly over rationals in the classical case, by graded ideal membership
//! in the quadratic relation ideal in the quantum cases.

pub mod error;
pub mod ring;
pub mod scalar;

pub use error::{Error, Result};
pub use ring::{Field, Ring};
pub use scalar::{GaussRational, Point, Scalar, Var};
pub mod linalg;
pub mod tensor;
pub use tensor::{Tensor, TensorOp};
pub mod report;
pub mod ybkit;
pub use report::{Mode, SystemStats, VerificationReport};
pub mod chn;
pub mod ncalg;
