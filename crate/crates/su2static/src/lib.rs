//! Static spin-dependent SU(2) Yang-Mills fields.
//!
//! The crate evaluates a three-parameter family of Pauli-matrix-valued
//! potentials, checks the static field equations pointwise (closed form and
//! finite differences), solves the angular-momentum constraints that produce
//! such potentials, and classifies which members solve the field equations.

pub mod abelian;
pub mod ansatz;
pub mod catalog;
pub mod cli;
pub mod diff;
pub mod error;
pub mod pauli;
pub mod residuals;
pub mod vpea;

pub use ansatz::{FieldPoint, GaugeConfig, RadialLaurent};
pub use error::{Error, Result};
pub use pauli::{Mat2, MatVec3, Vec3, C64};
pub use residuals::{verify, FieldMode, ResidualReport};
