use std::collections::BTreeMap;
use std::ops::Range;

use rayon::prelude::*;

use crate::algebra::{gcd_all, Field, Poly};
use crate::error::{Error, Result};
use crate::oracle::{check_budget, chunks, decode_rank};
use crate::polymat::{invariant_factors, DegreeShaped};
use crate::simclass::{Count, InvariantFactors};

/// Invariant-factor tuple to number of matrices.
pub type Histogram = BTreeMap<InvariantFactors, u64>;

fn merge(mut a: Histogram, b: Histogram) -> Histogram {
    for (k, v) in b {
        *a.entry(k).or_default() += v;
    }
    a
}

fn check_dims(n: usize, k: usize) -> Result<()> {
    if k == 0 || k > n {
        return Err(Error::DimensionMismatch(format!("need 1 <= k <= n, got n={n}, k={k}")));
    }
    Ok(())
}

/// Histogram over the matrices of `M_q(n, k, d)` with ranks in `range`.
pub fn mu_brute_range(n: usize, k: usize, d: usize, f: &Field, range: Range<u64>) -> Result<Histogram> {
    check_dims(n, k)?;
    let mut h = Histogram::new();
    for rank in range {
        let p = DegreeShaped::from_rank(rank, n, k, d, f.q());
        *h.entry(invariant_factors(p.matrix(), f)?).or_default() += 1;
    }
    Ok(h)
}

/// Histogram of invariant factors over all of `M_q(n, k, d)`.
pub fn mu_brute(n: usize, k: usize, d: usize, f: &Field, budget: u64) -> Result<Histogram> {
    check_dims(n, k)?;
    let total = check_budget(f.q(), n * k * d, budget)?;
    chunks(total)
        .into_par_iter()
        .map(|r| mu_brute_range(n, k, d, f, r))
        .try_reduce(Histogram::new, |a, b| Ok(merge(a, b)))
}

/// Number of `n`-tuples of monic degree-`d` polynomials with gcd 1.
pub fn coprime_tuple_brute(n: usize, d: usize, f: &Field, budget: u64) -> Result<Count> {
    let total = check_budget(f.q(), n * d, budget)?;
    let q = f.q();
    let hits: u64 = chunks(total)
        .into_par_iter()
        .map(|range| {
            let mut digits = vec![0u32; n * d];
            let mut hits = 0u64;
            for rank in range {
                decode_rank(rank, q, &mut digits);
                let polys: Vec<Poly> = digits
                    .chunks(d.max(1))
                    .take(n)
                    .map(|c| {
                        let mut c = if d == 0 { Vec::new() } else { c.to_vec() };
                        c.push(1);
                        Poly::from_coeffs(c)
                    })
                    .collect();
                if gcd_all(&polys, f).is_one() {
                    hits += 1;
                }
            }
            hits
        })
        .sum();
    Ok(Count::from(hits))
}
