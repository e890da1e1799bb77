use rayon::prelude::*;

use crate::algebra::{Field, FqMatrix};
use crate::error::{Error, Result};
use crate::oracle::{check_budget, chunks, decode_rank};
use crate::simclass::Count;

/// Basis of `{X : XA = AX}`, each element flattened row-major.
fn commutant_basis(a: &FqMatrix, f: &Field) -> Vec<Vec<u32>> {
    let n = a.rows();
    let mut eq = FqMatrix::zeros(n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            let row = i * n + j;
            for t in 0..n {
                let x_it = i * n + t;
                eq.set(row, x_it, f.add(eq.get(row, x_it), a.get(t, j)));
                let x_tj = t * n + j;
                eq.set(row, x_tj, f.sub(eq.get(row, x_tj), a.get(i, t)));
            }
        }
    }
    eq.nullspace(f)
}

/// Order of the centralizer of `A` in `GL_N(F_q)`.
pub fn centralizer_brute(a: &FqMatrix, f: &Field, budget: u64) -> Result<Count> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!("{}x{} is not square", a.rows(), a.cols())));
    }
    let n = a.rows();
    let basis = commutant_basis(a, f);
    let total = check_budget(f.q(), basis.len(), budget)?;
    let hits: u64 = chunks(total)
        .into_par_iter()
        .map(|range| {
            let mut digits = vec![0u32; basis.len()];
            let mut hits = 0u64;
            for rank in range {
                decode_rank(rank, f.q(), &mut digits);
                let mut x = vec![0u32; n * n];
                for (c, b) in digits.iter().zip(&basis) {
                    if *c == 0 {
                        continue;
                    }
                    for (xe, be) in x.iter_mut().zip(b) {
                        *xe = f.add(*xe, f.mul(*c, *be));
                    }
                }
                if FqMatrix::from_vec(n, n, x).expect("shape").is_invertible(f) {
                    hits += 1;
                }
            }
            hits
        })
        .sum();
    Ok(Count::from(hits))
}
