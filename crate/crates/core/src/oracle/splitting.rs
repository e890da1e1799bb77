use rayon::prelude::*;

use crate::algebra::{Field, FqMatrix};
use crate::error::{Error, Result};
use crate::oracle::subspace::enumerate_subspaces;
use crate::simclass::{q_binomial, Count};

/// Rows `T^j w_i` for every row `w_i` of `w` and `0 ≤ j < len`.
pub(crate) fn orbit_rows(t: &FqMatrix, w: &FqMatrix, len: usize, f: &Field) -> FqMatrix {
    let n = t.rows();
    let mut data = Vec::with_capacity(w.rows() * len * n);
    for i in 0..w.rows() {
        let mut v = w.row(i).to_vec();
        for j in 0..len {
            if j > 0 {
                v = t.mul_vec(&v, f);
            }
            data.extend_from_slice(&v);
        }
    }
    FqMatrix::from_vec(w.rows() * len, n, data).expect("shape")
}

/// `dim(W + TW + … + T^ℓ W) = (ℓ + 1) dim W`.
pub fn is_anti_invariant(t: &FqMatrix, w: &FqMatrix, ell: usize, f: &Field) -> bool {
    let need = (ell + 1) * w.rows();
    need <= t.rows() && orbit_rows(t, w, ell + 1, f).rank(f) == need
}

/// `V = W ⊕ TW ⊕ … ⊕ T^{d-1} W`.
pub fn is_splitting(t: &FqMatrix, w: &FqMatrix, d: usize, f: &Field) -> Result<bool> {
    if !t.is_square() || t.rows() != w.rows() * d || w.cols() != t.rows() {
        return Err(Error::DimensionMismatch(format!(
            "operator is {}x{}, subspace basis is {}x{}, d = {d}",
            t.rows(),
            t.cols(),
            w.rows(),
            w.cols()
        )));
    }
    Ok(orbit_rows(t, w, d, f).rank(f) == t.rows())
}

/// Number of `m`-dimensional `T`-splitting subspaces of degree `d`.
pub fn sigma_brute(m: usize, d: usize, t: &FqMatrix, f: &Field, budget: u64) -> Result<Count> {
    if m == 0 || d == 0 || !t.is_square() || t.rows() != m * d {
        return Err(Error::DimensionMismatch(format!(
            "need a square operator of size m*d = {}, got {}x{}",
            m * d,
            t.rows(),
            t.cols()
        )));
    }
    let subspaces = q_binomial(m * d, m, f.q());
    if subspaces > Count::from(budget) {
        let needed = u128::try_from(&subspaces).unwrap_or(u128::MAX);
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let hits =
        enumerate_subspaces(m * d, m, f).par_bridge().filter(|w| orbit_rows(t, w, d, f).rank(f) == m * d).count();
    Ok(Count::from(hits))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::operator_from_invariants;
    use crate::oracle::DEFAULT_BUDGET;
    use crate::simclass::InvariantFactors;

    fn op(s: &str, f: &Field) -> FqMatrix {
        operator_from_invariants(&InvariantFactors::parse(s, f).unwrap(), f).unwrap()
    }

    #[test]
    fn examples() {
        let f = Field::prime(2).unwrap();
        let sigma = |m, d, t: &FqMatrix| sigma_brute(m, d, t, &f, DEFAULT_BUDGET).unwrap();
        assert_eq!(sigma(1, 2, &op("x^2+x+1", &f)), Count::from(3u32));
        assert_eq!(sigma(1, 2, &op("1,x^2", &f)), Count::from(2u32));
        assert_eq!(sigma(1, 2, &FqMatrix::zeros(2, 2)), Count::from(0u32));
        assert_eq!(sigma(2, 1, &FqMatrix::zeros(2, 2)), Count::from(1u32));
        assert_eq!(sigma(3, 1, &op("x+1,x+1,x+1", &f)), Count::from(1u32));
    }

    #[test]
    fn anti_invariance() {
        let f = Field::prime(2).unwrap();
        let w = FqMatrix::from_rows(vec![vec![1, 0]]).unwrap();
        let z = FqMatrix::zeros(2, 2);
        assert!(is_anti_invariant(&z, &w, 0, &f));
        assert!(!is_anti_invariant(&z, &w, 1, &f));
        assert!(!is_anti_invariant(&z, &w, 2, &f));
        let c = op("x^2+x+1", &f);
        assert!(is_anti_invariant(&c, &w, 1, &f));
        assert!(is_splitting(&c, &w, 2, &f).unwrap());
        assert!(is_splitting(&c, &w, 3, &f).is_err());
    }

    #[test]
    fn budget_is_enforced() {
        let f = Field::prime(2).unwrap();
        assert!(matches!(
            sigma_brute(2, 2, &FqMatrix::zeros(4, 4), &f, 10),
            Err(Error::BudgetExceeded { needed: 35, budget: 10 })
        ));
    }
}
