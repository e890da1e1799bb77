use rand::Rng;

use crate::algebra::{Field, FqMatrix};
use crate::error::{Error, Result};
use crate::polymat::companion;
use crate::simclass::{primary_to_invariants, InvariantFactors, PrimaryDecomposition};

/// Rational canonical form: block-diagonal companion matrices of the
/// nonconstant invariant factors.
pub fn operator_from_invariants(inv: &InvariantFactors, f: &Field) -> Result<FqMatrix> {
    if inv.degree() == 0 {
        return Err(Error::InvalidInvariants(format!("{inv} has degree 0")));
    }
    let blocks = inv.nonconstant().iter().map(|p| companion(p, f)).collect::<Result<Vec<_>>>()?;
    Ok(FqMatrix::block_diagonal(&blocks))
}

pub fn operator_from_primary(pd: &PrimaryDecomposition, f: &Field) -> Result<FqMatrix> {
    operator_from_invariants(&primary_to_invariants(pd, f)?, f)
}

/// Uniformly random element of `GL_n(F_q)` by rejection sampling.
pub fn random_invertible<R: Rng + ?Sized>(n: usize, f: &Field, rng: &mut R) -> FqMatrix {
    loop {
        let data = (0..n * n).map(|_| rng.gen_range(0..f.q())).collect();
        let m = FqMatrix::from_vec(n, n, data).expect("shape");
        if m.is_invertible(f) {
            return m;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polymat::{invariant_factors, PolyMatrix};
    use crate::simclass::enumerate_classes;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn round_trip_all_classes() {
        for q in [2u32, 3] {
            let f = Field::prime(q).unwrap();
            let max = if q == 2 { 4 } else { 3 };
            for n in 1..=max {
                for inv in enumerate_classes(n, &f) {
                    let a = operator_from_invariants(&inv, &f).unwrap();
                    assert_eq!(a.rows(), n);
                    let back = invariant_factors(&PolyMatrix::char_matrix(&a, &f).unwrap(), &f).unwrap();
                    assert_eq!(back, inv.to_length(n).unwrap());
                }
            }
        }
    }

    #[test]
    fn examples() {
        let f = Field::prime(2).unwrap();
        let zero = operator_from_invariants(&InvariantFactors::parse("x,x", &f).unwrap(), &f).unwrap();
        assert!(zero.is_zero());
        let c = operator_from_invariants(&InvariantFactors::parse("x^2+x+1", &f).unwrap(), &f).unwrap();
        assert_eq!(c.to_rows(), vec![vec![0, 1], vec![1, 1]]);
        assert!(operator_from_invariants(&InvariantFactors::ones(2), &f).is_err());
    }

    #[test]
    fn random_matrices_are_invertible_and_seeded() {
        let f = Field::prime(3).unwrap();
        let a = random_invertible(3, &f, &mut ChaCha8Rng::seed_from_u64(7));
        let b = random_invertible(3, &f, &mut ChaCha8Rng::seed_from_u64(7));
        assert_eq!(a, b);
        assert!(a.is_invertible(&f));
    }
}
