use num_bigint::BigInt;
use rayon::prelude::*;

use crate::algebra::{Field, FqMatrix};
use crate::error::{Error, Result};
use crate::oracle::splitting::orbit_rows;
use crate::oracle::{check_budget, chunks, decode_rank};
use crate::simclass::{Count, Ratio};

/// RREF basis of `Kry(T, S; d)`, the span of `T^j v` for rows `v` of `s` and `j < d`.
pub fn krylov_span(t: &FqMatrix, s: &FqMatrix, d: usize, f: &Field) -> FqMatrix {
    let (r, piv) = orbit_rows(t, s, d, f).rref(f);
    let n = t.rows();
    let data = r.data()[..piv.len() * n].to_vec();
    FqMatrix::from_vec(piv.len(), n, data).expect("shape")
}

fn check_shape(m: usize, d: usize, t: &FqMatrix) -> Result<()> {
    if m == 0 || d == 0 || !t.is_square() || t.rows() != m * d {
        return Err(Error::DimensionMismatch(format!(
            "need a square operator of size m*d = {}, got {}x{}",
            m * d,
            t.rows(),
            t.cols()
        )));
    }
    Ok(())
}

/// Number of ordered `m`-tuples of vectors whose truncated Krylov space is all of `V`.
pub fn krylov_count(m: usize, d: usize, t: &FqMatrix, f: &Field, budget: u64) -> Result<Count> {
    check_shape(m, d, t)?;
    let n = t.rows();
    let total = check_budget(f.q(), n * m, budget)?;
    let hits: u64 = chunks(total)
        .into_par_iter()
        .map(|range| {
            let mut digits = vec![0u32; n * m];
            let mut hits = 0u64;
            for rank in range {
                decode_rank(rank, f.q(), &mut digits);
                let s = FqMatrix::from_vec(m, n, digits.clone()).expect("shape");
                if orbit_rows(t, &s, d, f).rank(f) == n {
                    hits += 1;
                }
            }
            hits
        })
        .sum();
    Ok(Count::from(hits))
}

/// `κ_{m,d}(T)` as an exact fraction.
pub fn kappa_brute(m: usize, d: usize, t: &FqMatrix, f: &Field, budget: u64) -> Result<Ratio> {
    let hits = krylov_count(m, d, t, f, budget)?;
    let total = check_budget(f.q(), t.rows() * m, budget)?;
    Ok(Ratio::new(BigInt::from(hits), BigInt::from(total)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{operator_from_invariants, DEFAULT_BUDGET};
    use crate::simclass::InvariantFactors;

    #[test]
    fn examples() {
        let f = Field::prime(2).unwrap();
        let c = operator_from_invariants(&InvariantFactors::parse("x^2+x+1", &f).unwrap(), &f).unwrap();
        assert_eq!(kappa_brute(1, 2, &c, &f, DEFAULT_BUDGET).unwrap(), Ratio::new(3.into(), 4.into()));
        let z = FqMatrix::zeros(4, 4);
        assert_eq!(kappa_brute(2, 2, &z, &f, DEFAULT_BUDGET).unwrap(), Ratio::from_integer(0.into()));
        let one = FqMatrix::zeros(1, 1);
        assert_eq!(kappa_brute(1, 1, &one, &f, DEFAULT_BUDGET).unwrap(), Ratio::new(1.into(), 2.into()));
    }

    #[test]
    fn span() {
        let f = Field::prime(2).unwrap();
        let c = operator_from_invariants(&InvariantFactors::parse("x^2+x+1", &f).unwrap(), &f).unwrap();
        let s = FqMatrix::from_rows(vec![vec![1, 0]]).unwrap();
        assert_eq!(krylov_span(&c, &s, 2, &f), FqMatrix::identity(2));
        assert_eq!(krylov_span(&c, &s, 1, &f), s);
        let zero = FqMatrix::from_rows(vec![vec![0, 0]]).unwrap();
        assert_eq!(krylov_span(&c, &zero, 2, &f).rows(), 0);
    }
}
