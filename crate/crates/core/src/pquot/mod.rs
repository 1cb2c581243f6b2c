//! Finite p-group quotients of the one-relator groups and outerness
//! certificates.

mod certify;
mod group;
mod hom;
mod table;

pub use certify::{
    certify_outer, certify_outer_bounded, load_certificate, verify_certificate, CertImages, FamilyMember,
    OuternessCertificate, SearchStats, CERTIFICATE_SCHEMA_VERSION,
};
pub use group::{Elem, Group, TargetDesc};
pub use hom::{
    class2_quotient_hom, finite_conjugacy, finite_conjugacy_bounded, heisenberg_case_hom, ConjugacyVerdict, FiniteHom,
    TorsionCase,
};
pub use table::{
    chatzidakis_hypothesis_check, higman_witness, ChatzidakisVerdict, ChiefSeries, FiniteGroupTable, HigmanWitness,
    TABLE_MAX_ORDER,
};

use thiserror::Error;

use crate::catalog::CatalogError;
use crate::words::WordError;

/// Default bound on enumerated subgroup orders (`3^9`).
pub const DEFAULT_MAX_ORDER: u128 = 19_683;

/// Environment variable overriding [`DEFAULT_MAX_ORDER`].
pub const MAX_ORDER_ENV: &str = "DEMUSKIN_MAX_ORDER";

pub fn max_order() -> u128 {
    std::env::var(MAX_ORDER_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_ORDER)
}

#[derive(Debug, Error)]
pub enum PquotError {
    #[error("resource bound exceeded: {0}")]
    Resource(String),
    #[error("element {0} does not belong to the target")]
    BadElement(String),
    #[error("relator `{0}` does not map to the identity")]
    RelatorNotKilled(String),
    #[error("parameter/case mismatch: {0}")]
    CaseMismatch(String),
    #[error("edge word image has order {got}, expected {expected}")]
    OrderMismatch { expected: u64, got: u64 },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("no certificate found in the quotient family ({0})")]
    NotFound(String),
    #[error("certificate does not re-verify: {0}")]
    Mismatch(String),
    #[error("internal invariant violated: {0}")]
    Bug(String),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl PquotError {
    pub fn is_resource(&self) -> bool {
        matches!(self, PquotError::Resource(_))
    }
}
