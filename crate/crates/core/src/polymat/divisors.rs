//! Determinantal divisors, invariant factors and unimodularity.

use crate::algebra::{Field, Poly};
use crate::error::{Error, Result};
use crate::polymat::matrix::PolyMatrix;
use crate::polymat::snf::smith_diagonal;
use crate::simclass::InvariantFactors;

/// Above this size the brute-force minor expansion is replaced by the Smith form.
pub const BRUTE_MINOR_LIMIT: usize = 4;

/// All `i`-element subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, i: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, i: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if acc.len() == i {
            out.push(acc.clone());
            return;
        }
        for s in start..n {
            if n - s < i - acc.len() {
                break;
            }
            acc.push(s);
            rec(s + 1, n, i, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, i, &mut Vec::new(), &mut out);
    out
}

/// Monic gcd of every `i × i` minor, expanded by cofactors.
pub fn minor_gcd(p: &PolyMatrix, i: usize, f: &Field) -> Result<Poly> {
    let max = p.rows().min(p.cols());
    if i == 0 {
        return Ok(Poly::one());
    }
    if i > max {
        return Err(Error::IndexOutOfRange { index: i, max });
    }
    let mut g = Poly::zero();
    for rows in combinations(p.rows(), i) {
        for cols in combinations(p.cols(), i) {
            g = g.gcd(&p.submatrix(&rows, &cols).det(f)?, f);
            if g.is_one() {
                return Ok(g);
            }
        }
    }
    Ok(g)
}

/// `δᵢ(P)`, with `δ₀ = 1`.
pub fn determinantal_divisor(p: &PolyMatrix, i: usize, f: &Field) -> Result<Poly> {
    let max = p.rows().min(p.cols());
    if max <= BRUTE_MINOR_LIMIT || i == 0 || i > max {
        return minor_gcd(p, i, f);
    }
    let diag = smith_diagonal(p, f);
    Ok(diag[..i].iter().fold(Poly::one(), |acc, d| acc.mul(d, f)))
}

/// `δᵢ / δᵢ₋₁` for `i = 1..=min(n, k)`; a zero divisor yields zero from there on.
pub fn invariant_factors_from_divisors(p: &PolyMatrix, f: &Field) -> Result<Vec<Poly>> {
    let max = p.rows().min(p.cols());
    let mut prev = Poly::one();
    let mut out = Vec::with_capacity(max);
    for i in 1..=max {
        let cur = determinantal_divisor(p, i, f)?;
        out.push(if cur.is_zero() { Poly::zero() } else { cur.div_exact(&prev, f)? });
        prev = cur;
    }
    Ok(out)
}

/// Invariant factors of a full-rank matrix (every element of `M_q(n,k,d)` qualifies).
pub fn invariant_factors(p: &PolyMatrix, f: &Field) -> Result<InvariantFactors> {
    let diag = smith_diagonal(p, f);
    if diag.iter().any(Poly::is_zero) {
        return Err(Error::InvalidInvariants(format!("matrix {p} does not have full rank")));
    }
    InvariantFactors::new(diag, f)
}

/// Whether `δ_k(P) = 1`.
pub fn is_unimodular(p: &PolyMatrix, f: &Field) -> bool {
    smith_diagonal(p, f).iter().all(Poly::is_one)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;
    use crate::polymat::matrix::DegreeShaped;

    #[test]
    fn divisor_examples() {
        let f = Field::prime(2).unwrap();
        let p = PolyMatrix::parse("x,1;0,x", &f).unwrap();
        assert_eq!(determinantal_divisor(&p, 0, &f).unwrap(), Poly::one());
        assert_eq!(determinantal_divisor(&p, 1, &f).unwrap(), Poly::one());
        assert_eq!(determinantal_divisor(&p, 2, &f).unwrap(), parse_poly("x^2", &f).unwrap());
        assert!(matches!(determinantal_divisor(&p, 3, &f), Err(Error::IndexOutOfRange { .. })));
        assert_eq!(invariant_factors(&p, &f).unwrap().to_string(), "1,x^2");
    }

    #[test]
    fn scalar_and_column() {
        let f = Field::prime(3).unwrap();
        let xi = PolyMatrix::parse("x,0,0;0,x,0;0,0,x", &f).unwrap();
        assert_eq!(invariant_factors(&xi, &f).unwrap().to_string(), "x,x,x");
        let col = PolyMatrix::parse("x;1", &f).unwrap();
        assert_eq!(invariant_factors(&col, &f).unwrap().to_string(), "1");
        assert!(is_unimodular(&col, &f));
        assert!(!is_unimodular(&PolyMatrix::parse("x;0", &f).unwrap(), &f));
        assert!(invariant_factors(&PolyMatrix::parse("x;0", &f).unwrap(), &f).is_ok());
        assert!(invariant_factors(&PolyMatrix::parse("0;0", &f).unwrap(), &f).is_err());
    }

    #[test]
    fn square_degree_shaped_is_never_unimodular() {
        let f = Field::prime(2).unwrap();
        for rank in 0..(1u64 << 8) {
            let p = DegreeShaped::from_rank(rank, 2, 2, 2, 2);
            assert!(!is_unimodular(p.matrix(), &f));
            let d = determinantal_divisor(p.matrix(), 2, &f).unwrap();
            assert_eq!(d.deg(), 4);
        }
    }

    #[test]
    fn combination_counts() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(combinations(2, 3).len(), 0);
    }
}
