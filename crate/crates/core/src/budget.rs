//! Enumeration budgets.
//!
//! Every exhaustive search in the crate measures its work as a count
//! (maps to scan, partitions, product tuples) and refuses to start when the
//! count exceeds its limit. Setting `POLYADIC_BUDGET` to an integer replaces
//! every default limit with that value.

use crate::error::{Error, Result};

pub const ENV_VAR: &str = "POLYADIC_BUDGET";

/// Default limit for `m_Q^{m_P}` in brute-force homomorphism scans (8^8).
pub const HOM_SCAN: u128 = 1 << 24;
/// Default limit on the carrier size for congruence enumeration.
pub const CONGRUENCE_CARRIER: u128 = 8;
/// Default limit on the product of stage sizes for thread enumeration.
pub const THREAD_PRODUCT: u128 = 1_000_000;
/// Default limit on `m^(m^n)` for brute-force table enumeration.
pub const TABLE_SCAN: u128 = 1_000_000;
/// Largest base-group order shipped in the small-groups library.
pub const CATALOG_ORDER: u128 = 8;

pub fn limit(default: u128) -> u128 {
    std::env::var(ENV_VAR).ok().and_then(|v| v.trim().parse::<u128>().ok()).unwrap_or(default)
}

pub fn check(what: &str, work: u128, default: u128) -> Result<()> {
    let limit = limit(default);
    if work > limit {
        return Err(Error::BudgetExceeded { what: what.to_string(), work, limit });
    }
    Ok(())
}

/// `base^exp`, saturating at `u128::MAX`.
pub fn saturating_pow(base: usize, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}
