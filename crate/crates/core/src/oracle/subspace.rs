use crate::algebra::{Field, FqMatrix};
use crate::polymat::divisors::combinations;

/// An `m × N` basis in reduced row echelon form with `m` pivots.
pub type SubspaceBasis = FqMatrix;

/// Every `m`-dimensional subspace of `F_q^N` exactly once, as its canonical
/// RREF basis, grouped by pivot profile in lexicographic order.
pub fn enumerate_subspaces(n: usize, m: usize, f: &Field) -> impl Iterator<Item = SubspaceBasis> + '_ {
    combinations(n, m).into_iter().flat_map(move |pivots| {
        let free: Vec<(usize, usize)> = (0..m)
            .flat_map(|row| {
                let pivots = pivots.clone();
                (pivots[row] + 1..n).filter(move |c| !pivots.contains(c)).map(move |c| (row, c))
            })
            .collect();
        let q = f.q() as u64;
        let total = q.pow(free.len() as u32);
        let pivots = pivots.clone();
        (0..total).map(move |mut rank| {
            let mut basis = FqMatrix::zeros(m, n);
            for (row, &c) in pivots.iter().enumerate() {
                basis.set(row, c, 1);
            }
            for &(row, c) in &free {
                basis.set(row, c, (rank % q) as u32);
                rank /= q;
            }
            basis
        })
    })
}
