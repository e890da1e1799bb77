//! Enumeration of monic polynomials, irreducibility testing and factorization.
//!
//! [`factor`] runs squarefree decomposition, distinct-degree splitting and
//! seeded equal-degree splitting. [`factor_trial`] divides by enumerated
//! irreducibles instead and is limited to small fields.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::field::Field;
use crate::algebra::poly::Poly;
use crate::error::{Error, Result};

/// Seed used by [`factor`].
pub const DEFAULT_SEED: u64 = 0x5eed;

/// Largest q for which [`factor_trial`] is offered.
pub const TRIAL_MAX_Q: u32 = 16;

/// Iterator over the `q^d` monic polynomials of degree `d`.
///
/// The lower coefficients are read as base-q digits of a counter with the
/// constant term least significant, so the order is lexicographic.
#[derive(Clone, Debug)]
pub struct MonicIter {
    degree: usize,
    q: u64,
    next: u64,
    total: u64,
}

impl Iterator for MonicIter {
    type Item = Poly;

    fn next(&mut self) -> Option<Poly> {
        if self.next >= self.total {
            return None;
        }
        let mut rank = self.next;
        self.next += 1;
        let mut coeffs = Vec::with_capacity(self.degree + 1);
        for _ in 0..self.degree {
            coeffs.push((rank % self.q) as u32);
            rank /= self.q;
        }
        coeffs.push(1);
        Some(Poly::from_coeffs(coeffs))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for MonicIter {}

pub fn enumerate_monic(degree: usize, f: &Field) -> MonicIter {
    let q = f.q() as u64;
    let total = q.checked_pow(degree as u32).expect("monic enumeration too large");
    MonicIter { degree, q, next: 0, total }
}

pub fn enumerate_irreducible(degree: usize, f: &Field) -> impl Iterator<Item = Poly> + '_ {
    enumerate_monic(degree, f).filter(move |p| is_irreducible(p, f))
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `x^(q^k) mod modulus` for k = 0..=n.
fn frobenius_powers(modulus: &Poly, n: usize, f: &Field) -> Vec<Poly> {
    let x = Poly::x().rem(modulus, f).expect("nonzero modulus");
    let mut out = vec![x.clone()];
    let mut h = x;
    for _ in 0..n {
        h = h.pow_mod(f.q() as u64, modulus, f).expect("nonzero modulus");
        out.push(h.clone());
    }
    out
}

/// Rabin's test. Constants are not irreducible.
pub fn is_irreducible(p: &Poly, f: &Field) -> bool {
    let n = match p.degree() {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(n) => n,
    };
    let g = p.monic(f);
    let frob = frobenius_powers(&g, n, f);
    if frob[n] != Poly::x() {
        return false;
    }
    prime_divisors(n).into_iter().all(|r| frob[n / r].sub(&Poly::x(), f).gcd(&g, f).is_one())
}

fn mobius(n: usize) -> i32 {
    let mut n = n;
    let mut sign = 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Number of monic irreducibles of degree `d` over F_q, `(1/d) Σ_{k|d} μ(k) q^{d/k}`.
pub fn count_irreducible(q: u32, d: usize) -> BigInt {
    if d == 0 {
        return BigInt::from(0);
    }
    let total: BigInt = (1..=d)
        .filter(|k| d.is_multiple_of(*k))
        .map(|k| BigInt::from(mobius(k)) * BigInt::from(q).pow((d / k) as u32))
        .sum();
    total / BigInt::from(d)
}

fn check_factorable(p: &Poly) -> Result<()> {
    if !p.is_monic() || p.deg() == 0 {
        return Err(Error::NotMonic(p.to_string()));
    }
    Ok(())
}

/// Squarefree decomposition of a monic polynomial: pairwise coprime
/// squarefree `g` with exponents, whose product `Π g^e` is `p`.
pub fn squarefree_decomposition(p: &Poly, f: &Field) -> Vec<(Poly, u32)> {
    let mut out = Vec::new();
    if p.deg() == 0 {
        return out;
    }
    let dp = p.derivative(f);
    let mut c = p.gcd(&dp, f);
    let mut w = p.div_exact(&c, f).expect("gcd divides");
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c, f);
        let fac = w.div_exact(&y, f).expect("gcd divides");
        if !fac.is_one() {
            out.push((fac, i));
        }
        w = y;
        c = c.div_exact(&w, f).expect("gcd divides");
        i += 1;
    }
    if !c.is_one() {
        // c is a polynomial in x^p
        let pp = f.p() as usize;
        let root = Poly::from_coeffs(c.coeffs().iter().step_by(pp).map(|&a| f.pth_root(a)).collect());
        for (g, e) in squarefree_decomposition(&root, f) {
            out.push((g, e * f.p()));
        }
    }
    out
}

/// Splits a squarefree monic polynomial into products of irreducibles of equal degree.
pub fn distinct_degree(p: &Poly, f: &Field) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    let mut rest = p.clone();
    let mut h = Poly::x().rem(&rest, f).expect("nonzero");
    let mut i = 1;
    while rest.deg() >= 2 * i {
        h = h.pow_mod(f.q() as u64, &rest, f).expect("nonzero");
        let g = h.sub(&Poly::x(), f).gcd(&rest, f);
        if !g.is_one() {
            rest = rest.div_exact(&g, f).expect("gcd divides");
            h = h.rem(&rest, f).expect("nonzero");
            out.push((g, i));
        }
        i += 1;
    }
    if rest.deg() > 0 {
        let d = rest.deg();
        out.push((rest, d));
    }
    out
}

fn random_poly(below_degree: usize, f: &Field, rng: &mut ChaCha8Rng) -> Poly {
    Poly::from_coeffs((0..below_degree).map(|_| rng.gen_range(0..f.q())).collect())
}

/// Splits a product of distinct irreducibles all of degree `d`.
pub fn equal_degree(g: &Poly, d: usize, f: &Field, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let n = g.deg();
    if n <= d {
        return vec![g.clone()];
    }
    loop {
        let a = random_poly(n, f, rng);
        if a.is_constant() {
            continue;
        }
        let b = if f.p() == 2 {
            let mut term = a.clone();
            let mut trace = a.clone();
            for _ in 1..(f.e() as usize * d) {
                term = term.mul(&term, f).rem(g, f).expect("nonzero");
                trace = trace.add(&term, f);
            }
            trace
        } else {
            let mut frob = a.clone();
            let mut norm = a.clone();
            for _ in 1..d {
                frob = frob.pow_mod(f.q() as u64, g, f).expect("nonzero");
                norm = norm.mul(&frob, f).rem(g, f).expect("nonzero");
            }
            norm.pow_mod(((f.q() - 1) / 2) as u64, g, f).expect("nonzero").sub(&Poly::one(), f)
        };
        let h = b.gcd(g, f);
        if h.deg() > 0 && h.deg() < n {
            let other = g.div_exact(&h, f).expect("gcd divides");
            let mut out = equal_degree(&h, d, f, rng);
            out.extend(equal_degree(&other, d, f, rng));
            return out;
        }
    }
}

fn collect(mut factors: Vec<(Poly, u32)>) -> Vec<(Poly, u32)> {
    factors.sort();
    let mut out: Vec<(Poly, u32)> = Vec::new();
    for (g, e) in factors {
        match out.last_mut() {
            Some((h, k)) if *h == g => *k += e,
            _ => out.push((g, e)),
        }
    }
    out
}

/// Factorization of a monic polynomial of positive degree into distinct
/// monic irreducibles with exponents, sorted by factor.
pub fn factor(p: &Poly, f: &Field) -> Result<Vec<(Poly, u32)>> {
    factor_seeded(p, f, DEFAULT_SEED)
}

pub fn factor_seeded(p: &Poly, f: &Field, seed: u64) -> Result<Vec<(Poly, u32)>> {
    check_factorable(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (sq, e) in squarefree_decomposition(p, f) {
        for (g, d) in distinct_degree(&sq, f) {
            for h in equal_degree(&g, d, f, &mut rng) {
                out.push((h, e));
            }
        }
    }
    Ok(collect(out))
}

/// Deterministic factorization by trial division over enumerated irreducibles.
pub fn factor_trial(p: &Poly, f: &Field) -> Result<Vec<(Poly, u32)>> {
    check_factorable(p)?;
    if f.q() > TRIAL_MAX_Q {
        return Err(Error::InvalidField(format!("trial factorization is limited to q <= {TRIAL_MAX_Q}")));
    }
    let mut rest = p.clone();
    let mut out = Vec::new();
    let mut d = 1;
    while rest.deg() > 0 {
        if rest.deg() < 2 * d {
            out.push((rest.clone(), 1));
            break;
        }
        for g in enumerate_irreducible(d, f) {
            let mut e = 0;
            while g.divides(&rest, f) {
                rest = rest.div_exact(&g, f)?;
                e += 1;
            }
            if e > 0 {
                out.push((g, e));
            }
        }
        d += 1;
    }
    Ok(collect(out))
}

/// Expands a factorization back into a polynomial.
pub fn expand(factors: &[(Poly, u32)], f: &Field) -> Poly {
    factors.iter().fold(Poly::one(), |acc, (g, e)| acc.mul(&g.pow(*e, f), f))
}
