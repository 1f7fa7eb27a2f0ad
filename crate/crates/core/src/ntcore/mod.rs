//! Number-theoretic kernels: the linear sieve, Möbius prefix sums, primorials and
//! coprime counting.

mod arith;
pub mod cache;
mod harmonic;
mod sieve;

pub use arith::{
    coprime_count, mertens_at_quotients, nth_primorial_prime, primorial, primorial_index,
    PRIMORIAL_PRIMES,
};
pub use harmonic::{
    exact_mobius_harmonic, lcm_upto, mobius_harmonic_prefix, selberg_points, selberg_scan,
    MobiusPrefix, SelbergScan,
};
pub use sieve::{SieveTables, DEFAULT_BUDGET_ENTRIES};

/// Shorthand for [`SieveTables::build`].
pub fn build_sieve(limit: u64) -> crate::Result<SieveTables> {
    SieveTables::build(limit)
}
