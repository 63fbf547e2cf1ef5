//! Reports verifying parabolic subgroups of the catalogue groups: group
//! orders, single stabilizers, table reproduction and full lattice
//! classification, the chain of parabolics behind the non-existence of
//! resolutions, and the block structure of imprimitive stabilizers.

pub mod chain;
mod error;
pub mod imprimitive;
pub mod render;
pub mod report;
pub mod verify;

pub use error::CliError;
pub use report::{load, OrderReport, Provenance, Settings, StabilizerReport, VectorAction};
pub use verify::{VerificationReport, VerifyMode};

pub const SCHEMA_VERSION: &str = "1";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
