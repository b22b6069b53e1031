//! Exact structure-constant verification for weak bialgebras, weak Hopf
//! algebras, their comodule categories, and the standard example families.

pub mod constructions;
pub mod corep;
pub mod engine;
pub mod error;
pub mod exact;
pub mod qtg;
pub mod report;
pub mod structures;
pub mod wba;

pub use engine::CheckOptions;
pub use error::{Error, Result};
pub use exact::{Q, Shape, Space, SparseMatrix, SparseTensor, SparseVec, Subspace};
pub use report::{Check, CheckReport, Status, Witness};

/// Library version, recorded in verification reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
