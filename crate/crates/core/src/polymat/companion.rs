use crate::algebra::{Field, FqMatrix, Poly};
use crate::error::{Error, Result};

/// The `md × md` block companion matrix of `x^d I + Σ x^j C_j`: identity
/// blocks on the block subdiagonal and `-C_0, …, -C_{d-1}` down the last
/// block column.
pub fn block_companion(coeffs: &[FqMatrix], f: &Field) -> Result<FqMatrix> {
    let d = coeffs.len();
    if d == 0 {
        return Err(Error::DimensionMismatch("need at least one coefficient block".into()));
    }
    let m = coeffs[0].rows();
    if coeffs.iter().any(|c| c.rows() != m || c.cols() != m) {
        return Err(Error::DimensionMismatch(format!("all blocks must be {m}x{m}")));
    }
    let n = m * d;
    let mut a = FqMatrix::zeros(n, n);
    for b in 1..d {
        for i in 0..m {
            a.set(b * m + i, (b - 1) * m + i, 1);
        }
    }
    for (b, c) in coeffs.iter().enumerate() {
        for i in 0..m {
            for j in 0..m {
                a.set(b * m + i, (d - 1) * m + j, f.neg(c.get(i, j)));
            }
        }
    }
    Ok(a)
}

/// Companion matrix of a monic polynomial of positive degree.
pub fn companion(p: &Poly, f: &Field) -> Result<FqMatrix> {
    if !p.is_monic() || p.deg() == 0 {
        return Err(Error::NotMonic(p.to_string()));
    }
    let coeffs: Vec<FqMatrix> =
        (0..p.deg()).map(|j| FqMatrix::from_vec(1, 1, vec![p.coeff(j)]).expect("1x1")).collect();
    block_companion(&coeffs, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;
    use crate::polymat::{invariant_factors, PolyMatrix};

    #[test]
    fn scalar_quadratic() {
        let f = Field::prime(5).unwrap();
        let c0 = FqMatrix::from_vec(1, 1, vec![3]).unwrap();
        let c1 = FqMatrix::from_vec(1, 1, vec![4]).unwrap();
        let a = block_companion(&[c0, c1], &f).unwrap();
        assert_eq!(a.to_rows(), vec![vec![0, 2], vec![1, 1]]);
        let inv = invariant_factors(&PolyMatrix::char_matrix(&a, &f).unwrap(), &f).unwrap();
        assert_eq!(inv.to_string(), "1,x^2+4*x+3");
    }

    #[test]
    fn degree_one_is_negated_block() {
        let f = Field::prime(3).unwrap();
        let c0 = FqMatrix::from_rows(vec![vec![1, 2], vec![0, 1]]).unwrap();
        assert_eq!(block_companion(std::slice::from_ref(&c0), &f).unwrap(), c0.neg(&f));
    }

    #[test]
    fn zero_blocks_over_f2() {
        let f = Field::prime(2).unwrap();
        let z = FqMatrix::zeros(2, 2);
        let a = block_companion(&[z.clone(), z], &f).unwrap();
        let inv = invariant_factors(&PolyMatrix::char_matrix(&a, &f).unwrap(), &f).unwrap();
        assert_eq!(inv.to_string(), "1,1,x^2,x^2");
    }

    #[test]
    fn companion_of_polynomial() {
        let f = Field::prime(2).unwrap();
        let p = parse_poly("x^3+x+1", &f).unwrap();
        let a = companion(&p, &f).unwrap();
        let inv = invariant_factors(&PolyMatrix::char_matrix(&a, &f).unwrap(), &f).unwrap();
        assert_eq!(inv.to_string(), "1,1,x^3+x+1");
        assert!(block_companion(&[], &f).is_err());
        let bad = [FqMatrix::zeros(2, 2), FqMatrix::zeros(1, 1)];
        assert!(block_companion(&bad, &f).is_err());
    }
}
