//! Approximation sequences built from `r_k(n) = n mod k` and their exact identities.

mod combo;
mod fm;
mod sums;
mod window;

pub use combo::{make_admissible, AdmissibleCombo};
pub use fm::{
    f_exact, f_float, f_prime, f_via_fractional_parts, gh_identity_first_failure, s_t_eval,
    PrimorialModulus,
};
pub use sums::{g_direct, g_mertens, h_direct, mobius_divisor_sum_upto, r, GWalk};
pub use window::{SequenceWindow, WindowKind};
