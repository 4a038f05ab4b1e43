//! Secure linear network coding against wiretappers of type II.
//!
//! The source applies a coset code defined by a parity-check matrix `H` and
//! the network applies a linear network code. The crate builds network codes
//! that keep the pair secure and computes exactly what leaks when the
//! wiretapper sees more edges than the design allows. A brute-force entropy
//! oracle cross-checks the rank computations.

pub mod coset;
pub mod equivocation;
pub mod fmatrix;
pub mod gf;
pub mod limits;
pub mod netgraph;
pub mod oracle;
pub mod securecode;

pub use coset::CosetCode;
pub use fmatrix::FMatrix;
pub use gf::FieldSpec;
pub use netgraph::{Network, NetworkCode};

/// Library version, recorded in run manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub use equivocation::EquivError;
pub use oracle::OracleError;
pub use securecode::{SecureDesign, SecureError};

/// Any error raised by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] gf::GfError),
    #[error(transparent)]
    Matrix(#[from] fmatrix::MatrixError),
    #[error(transparent)]
    Coset(#[from] coset::CosetError),
    #[error(transparent)]
    Network(#[from] netgraph::NetError),
    #[error(transparent)]
    Secure(#[from] SecureError),
    #[error(transparent)]
    Equivocation(#[from] EquivError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}
