//! Brute-force ground truth, counted straight from the definitions.
//!
//! Every enumeration ranks its objects by a mixed-radix integer over element
//! codes, so work splits into contiguous rank ranges that run in parallel and
//! merge by addition. Each entry point takes an explicit budget on the number
//! of objects it may visit and refuses, rather than truncates, when the
//! budget is too small.

pub mod centralizer;
pub mod krylov;
pub mod mu;
pub mod operator;
pub mod splitting;
pub mod subspace;

pub use centralizer::centralizer_brute;
pub use krylov::{kappa_brute, krylov_count, krylov_span};
pub use mu::{coprime_tuple_brute, mu_brute, mu_brute_range, Histogram};
pub use operator::{operator_from_invariants, operator_from_primary, random_invertible};
pub use splitting::{is_anti_invariant, is_splitting, sigma_brute};
pub use subspace::{enumerate_subspaces, SubspaceBasis};

use crate::error::{Error, Result};

/// Default cap on the number of enumerated objects.
pub const DEFAULT_BUDGET: u64 = 1 << 22;

/// Ranks per parallel work unit.
pub(crate) const CHUNK: u64 = 1 << 12;

/// `q^e`, refused when it exceeds `budget`.
pub fn check_budget(q: u32, e: usize, budget: u64) -> Result<u64> {
    let needed = (q as u128).checked_pow(e as u32).unwrap_or(u128::MAX);
    if needed > budget as u128 {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    Ok(needed as u64)
}

/// Splits `0..total` into contiguous chunks.
pub(crate) fn chunks(total: u64) -> Vec<std::ops::Range<u64>> {
    (0..total.div_ceil(CHUNK)).map(|c| c * CHUNK..((c + 1) * CHUNK).min(total)).collect()
}

/// Writes the base-q digits of `rank` into `out`, least significant first.
#[inline]
pub(crate) fn decode_rank(mut rank: u64, q: u32, out: &mut [u32]) {
    for d in out.iter_mut() {
        *d = (rank % q as u64) as u32;
        rank /= q as u64;
    }
}
