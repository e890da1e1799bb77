//! Exact arithmetic in F_q, F_q[x] and dense matrices over F_q.

pub mod factor;
pub mod field;
pub mod matrix;
pub mod parse;
pub mod poly;

pub use factor::{
    count_irreducible, enumerate_irreducible, enumerate_monic, factor, factor_seeded, factor_trial, is_irreducible,
};
pub use field::{field_arith, Field, FieldElement, FieldOp};
pub use matrix::FqMatrix;
pub use parse::{parse_poly, parse_poly_list, poly_to_string};
pub use poly::{gcd_all, Poly};
