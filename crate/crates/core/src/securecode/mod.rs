//! Construction and verification of secure network codes.
//!
//! A pair (coset code `H`, network code) is secure against `mu` tapped edges
//! when no `mu` or fewer linearly independent global coding vectors combine
//! into a vector of the row space of `H`. Equivalently, for every edge set `W`
//! with `rank C_W = |W| <= mu`, `rank [H; C_W] = k + |W|`.

mod bounds;
mod cai_yeung;
mod combination;
mod condition;
mod lif;

pub use bounds::{
    alphabet_bound_general, alphabet_bound_minimal, alphabet_bound_two_sources, field_for_bound,
    projective_line_colors,
};
pub use cai_yeung::{cai_yeung_encode, cai_yeung_to_coset};
pub use combination::combination_secure_design;
pub use condition::{
    byzantine_secrecy_check, verify_secrecy_condition, wiretap_pool, SecrecyCheck,
};
pub use lif::secure_lif;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coset::{CosetCode, CosetError};
use crate::fmatrix::MatrixError;
use crate::netgraph::{NetError, NetworkCode};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SecureError {
    #[error("budget mu = {mu} exceeds the multicast dimension n = {n}")]
    BudgetExceedsCut { mu: usize, n: usize },
    #[error("field of order {q} is too small: {detail}")]
    FieldTooSmall { q: u32, detail: String },
    #[error("{checks} subset checks exceed the cap {cap}")]
    ComplexityCapExceeded { checks: u64, cap: u64 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error(transparent)]
    Net(#[from] NetError),
    #[error(transparent)]
    Coset(#[from] CosetError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Wiretap budget and code dimensions of a design.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SecurityParams {
    pub mu: usize,
    pub k: usize,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub restricted: Option<Vec<String>>,
}

/// Record of the checks a design passed (or the first one it failed).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub construction: String,
    pub secure: bool,
    pub subsets_checked: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    pub decodable: bool,
    /// Subset checks performed while choosing coefficients (secure LIF only).
    #[serde(default)]
    pub construction_checks: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SecureDesign {
    pub coset: CosetCode,
    pub netcode: NetworkCode,
    pub params: SecurityParams,
    pub certificate: Certificate,
}

impl SecureDesign {
    /// Verifies `(coset, netcode)` against `params` and records the outcome.
    pub fn certify(
        coset: CosetCode,
        netcode: NetworkCode,
        params: SecurityParams,
        construction: &str,
        construction_checks: u64,
    ) -> Result<SecureDesign, SecureError> {
        let restricted = match &params.restricted {
            Some(ids) => Some(netcode.network().edges_by_ids(ids)?),
            None => None,
        };
        let check = verify_secrecy_condition(
            coset.parity_check(),
            &netcode,
            params.mu,
            restricted.as_deref(),
        )?;
        let certificate = Certificate {
            construction: construction.to_string(),
            secure: check.secure,
            subsets_checked: check.subsets_checked,
            witness: check
                .witness
                .as_ref()
                .map(|w| netcode.network().edge_ids(w)),
            decodable: netcode.is_feasible(),
            construction_checks,
        };
        Ok(SecureDesign {
            coset,
            netcode,
            params,
            certificate,
        })
    }

    /// Re-runs verification on the stored code, ignoring the stored certificate.
    pub fn reverify(&self) -> Result<SecureDesign, SecureError> {
        SecureDesign::certify(
            self.coset.clone(),
            self.netcode.clone(),
            self.params.clone(),
            &self.certificate.construction,
            self.certificate.construction_checks,
        )
    }

    pub fn is_valid(&self) -> bool {
        self.certificate.secure && self.certificate.decodable
    }
}
