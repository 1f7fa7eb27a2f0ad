//! ζ on `Re(s) > 0`, the Beurling integral identity and the condition-(6) scanner.

mod beurling;
mod condition6;
mod scan;
mod zeta;

pub use beurling::{
    beurling_lhs, beurling_rhs, BeurlingKernel, BeurlingValue, DEFAULT_TRUNCATION, ZETA_REL_ERROR,
};
pub use condition6::{
    condition6_check, leading_term, regime_boundaries, remark_regime, Condition6Check,
    LeadingTerm, OmegaSpec,
};
pub use scan::{
    condition6_scan, PerM, ScanOptions, ScanParams, ScanReport, Violation, DEFAULT_CHUNK_M,
};
pub use zeta::{
    eta_borwein, zeta_eval, zeta_euler_maclaurin, ZetaMethod, ZetaValue, WINDOW_MAX_IM,
    WINDOW_MIN_RE,
};
