//! Matrices over F_q[x]: the spaces `M_q(n, k, d)`, Smith normal form,
//! determinantal divisors and the block companion linearization.

pub mod companion;
pub mod divisors;
pub mod matrix;
pub mod snf;

pub use companion::{block_companion, companion};
pub use divisors::{
    determinantal_divisor, invariant_factors, invariant_factors_from_divisors, is_unimodular, minor_gcd,
};
pub use matrix::{DegreeShaped, PolyMatrix};
pub use snf::{smith_diagonal, smith_normal_form, verify_witnesses, SmithForm};
