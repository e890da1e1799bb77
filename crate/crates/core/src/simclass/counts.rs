//! Group orders, q-analogs and centralizer orders.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::algebra::{Field, Poly};
use crate::error::{Error, Result};
use crate::simclass::invariants::InvariantFactors;
use crate::simclass::partition::Partition;
use crate::simclass::types::{invariants_to_primary, type_of, SimilarityType};

/// Arbitrary-precision count.
pub type Count = BigUint;
/// Exact rational.
pub type Ratio = BigRational;

pub fn qpow(q: u32, e: u64) -> BigUint {
    BigUint::from(q).pow(e.to_u32().expect("exponent fits in u32"))
}

/// `q^e` as a rational, for signed `e`.
pub fn qpow_ratio(q: u32, e: i64) -> Ratio {
    let mag = BigInt::from(q).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        Ratio::from_integer(mag)
    } else {
        Ratio::new(BigInt::one(), mag)
    }
}

/// Converts a rational that must be a nonnegative integer.
pub fn ratio_to_count(r: &Ratio, what: &str) -> Result<Count> {
    if !r.is_integer() || r.numer() < &BigInt::zero() {
        return Err(Error::Internal(format!("{what} evaluated to non-integral {r}")));
    }
    Ok(r.to_integer().to_biguint().expect("nonnegative"))
}

pub fn count_to_ratio(c: &Count) -> Ratio {
    Ratio::from_integer(BigInt::from(c.clone()))
}

/// `γ_q(m) = |GL_m(F_q)| = Π_{i=0}^{m-1} (q^m - q^i)`; `γ_q(0) = 1`.
pub fn gamma(q: u32, m: usize) -> Count {
    let qm = qpow(q, m as u64);
    (0..m).map(|i| &qm - qpow(q, i as u64)).product()
}

/// Gaussian binomial `[k choose δ]_q`; zero when `δ > k`.
pub fn q_binomial(k: usize, delta: usize, q: u32) -> Count {
    if delta > k {
        return Count::zero();
    }
    let mut num = Count::one();
    let mut den = Count::one();
    for i in 0..delta {
        num *= qpow(q, (k - i) as u64) - 1u32;
        den *= qpow(q, (i + 1) as u64) - 1u32;
    }
    num / den
}

/// `(u)_r = Π_{i=1}^r (1 - u^i)` at `u = q^{-d}`.
pub fn q_pochhammer(q: u32, d: usize, r: usize) -> Ratio {
    (1..=r).map(|i| Ratio::one() - qpow_ratio(q, -((d * i) as i64))).product()
}

/// `c_d(λ) = q^{d⟨λ',λ'⟩} Π_{i≥1} (q^{-d})_{m_i(λ)}`.
pub fn c_local(d: usize, lambda: &Partition, q: u32) -> Result<Count> {
    let mut value = Ratio::from_integer(BigInt::from(qpow(q, d as u64 * lambda.conjugate().inner())));
    for (_, m) in lambda.multiplicities() {
        value *= q_pochhammer(q, d, m);
    }
    ratio_to_count(&value, "local centralizer factor")
}

/// `c(τ) = Π c_{dᵢ}(λᵢ)`; the empty type gives 1.
pub fn centralizer_order_type(tau: &SimilarityType, q: u32) -> Result<Count> {
    tau.blocks().iter().try_fold(Count::one(), |acc, (d, l)| Ok(acc * c_local(*d, l, q)?))
}

/// Order of the centralizer in `GL_N(F_q)` of an operator with invariant
/// factors `I`, where the tuple is first brought to length `deg I`.
pub fn centralizer_order(inv: &InvariantFactors, f: &Field) -> Result<Count> {
    let normal = inv.centralizer_normal_form();
    let pd = invariants_to_primary(&normal, f)?;
    centralizer_order_type(&type_of(&pd), f.q())
}

/// `(Ĩ, d₁)` with `d₁ = deg p₁` and `p̃ᵢ = pᵢ / p₁`.
pub fn reduce_invariants(inv: &InvariantFactors, f: &Field) -> Result<(InvariantFactors, usize)> {
    let p1 = inv.factors().first().ok_or_else(|| Error::InvalidInvariants("empty tuple cannot be reduced".into()))?;
    let reduced = inv.factors().iter().map(|p| p.div_exact(p1, f)).collect::<Result<Vec<Poly>>>()?;
    Ok((InvariantFactors::new(reduced, f)?, p1.deg()))
}

/// `τ̃` with `μᵢⱼ = λᵢⱼ - λᵢ,ₘ` over `m` slots; vanishing parts are dropped.
pub fn reduce_type(tau: &SimilarityType, m: usize) -> Result<SimilarityType> {
    let mut blocks = Vec::new();
    for (d, l) in tau.blocks() {
        if l.len() > m {
            return Err(Error::InvalidPartition(format!("partition {l} has more than {m} parts")));
        }
        let last = l.part(m);
        blocks.push((*d, Partition::from_unsorted(l.parts().iter().map(|&p| p - last).collect())));
    }
    SimilarityType::new(blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simclass::invariants::enumerate_classes;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn gamma_values() {
        assert_eq!(gamma(2, 0), Count::one());
        assert_eq!(gamma(2, 2), Count::from(6u32));
        assert_eq!(gamma(3, 2), Count::from(48u32));
        assert_eq!(gamma(2, 3), Count::from(168u32));
    }

    #[test]
    fn q_binomial_values() {
        assert_eq!(q_binomial(2, 1, 2), Count::from(3u32));
        assert_eq!(q_binomial(4, 2, 2), Count::from(35u32));
        assert_eq!(q_binomial(3, 0, 5), Count::one());
        assert_eq!(q_binomial(2, 3, 2), Count::zero());
    }

    #[test]
    fn q_pochhammer_value() {
        assert_eq!(q_pochhammer(2, 1, 1), Ratio::new(BigInt::one(), BigInt::from(2)));
        assert_eq!(q_pochhammer(3, 1, 0), Ratio::one());
    }

    #[test]
    fn local_factors() {
        assert_eq!(c_local(1, &part("1,1"), 2).unwrap(), Count::from(6u32));
        for q in [2, 3, 5, 7] {
            assert_eq!(c_local(1, &part("1"), q).unwrap(), Count::from(q - 1));
        }
        assert_eq!(c_local(2, &part("1"), 2).unwrap(), Count::from(3u32));
        // c_1((2)) = q^2 (1 - 1/q) = q(q-1)
        assert_eq!(c_local(1, &part("2"), 3).unwrap(), Count::from(6u32));
    }

    #[test]
    fn centralizer_examples() {
        let f = Field::prime(2).unwrap();
        let id = InvariantFactors::parse("x+1,x+1", &f).unwrap();
        assert_eq!(centralizer_order(&id, &f).unwrap(), Count::from(6u32));
        let split = InvariantFactors::parse("1,x^2+x", &f).unwrap();
        assert_eq!(centralizer_order(&split, &f).unwrap(), Count::one());
        let tau = SimilarityType::parse("{(2,[1])}").unwrap();
        assert_eq!(centralizer_order_type(&tau, 2).unwrap(), Count::from(3u32));
        assert_eq!(centralizer_order(&InvariantFactors::ones(3), &f).unwrap(), Count::one());
    }

    #[test]
    fn padding_conventions_do_not_change_centralizers() {
        let f = Field::prime(2).unwrap();
        let short = InvariantFactors::parse("x^2+x+1", &f).unwrap();
        let long = short.to_length(5).unwrap();
        assert_eq!(centralizer_order(&short, &f).unwrap(), centralizer_order(&long, &f).unwrap());
    }

    #[test]
    fn centralizers_divide_group_order() {
        for q in [2u32, 3] {
            let f = Field::prime(q).unwrap();
            for n in 1..=4 {
                let g = gamma(q, n);
                for inv in enumerate_classes(n, &f) {
                    let c = centralizer_order(&inv, &f).unwrap();
                    assert!((&g % &c).is_zero(), "c({inv}) = {c} does not divide {g}");
                    let tau = type_of(&invariants_to_primary(&inv, &f).unwrap());
                    assert_eq!(centralizer_order_type(&tau, q).unwrap(), c);
                }
            }
        }
    }

    #[test]
    fn reductions() {
        let f = Field::prime(2).unwrap();
        let (red, d1) = reduce_invariants(&InvariantFactors::parse("x,x^2", &f).unwrap(), &f).unwrap();
        assert_eq!((red.to_string().as_str(), d1), ("1,x", 1));
        let g = InvariantFactors::parse("x^2+x+1,x^2+x+1", &f).unwrap();
        let (red, d1) = reduce_invariants(&g, &f).unwrap();
        assert_eq!((red, d1), (InvariantFactors::ones(2), 2));

        let tau = SimilarityType::new(vec![(1, part("6,5,5,4,2"))]).unwrap();
        let red = reduce_type(&tau, 5).unwrap();
        assert_eq!(red.blocks()[0].1, part("4,3,3,2"));
        assert!(reduce_type(&tau, 4).is_err());
        let short = SimilarityType::new(vec![(1, part("2,1")), (2, part("1"))]).unwrap();
        assert_eq!(reduce_type(&short, 2).unwrap().to_string(), "{(1,[1]),(2,[1])}");
    }
}
