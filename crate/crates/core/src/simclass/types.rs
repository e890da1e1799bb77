//! Primary decompositions and similarity class types.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::algebra::{count_irreducible, enumerate_irreducible, factor, Field, Poly};
use crate::error::{Error, Result};
use crate::simclass::invariants::InvariantFactors;
use crate::simclass::partition::{partitions, Partition};

/// `{(φᵢ, λᵢ)}` with distinct monic irreducible `φᵢ`, sorted by polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimaryDecomposition {
    blocks: Vec<(Poly, Partition)>,
}

impl PrimaryDecomposition {
    pub fn new(mut blocks: Vec<(Poly, Partition)>) -> Result<Self> {
        blocks.retain(|(_, l)| !l.is_empty());
        blocks.sort();
        if blocks.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidInvariants("repeated irreducible in primary decomposition".into()));
        }
        Ok(PrimaryDecomposition { blocks })
    }

    pub fn blocks(&self) -> &[(Poly, Partition)] {
        &self.blocks
    }

    /// `Σ deg φᵢ · |λᵢ|`.
    pub fn size(&self) -> usize {
        self.blocks.iter().map(|(p, l)| p.deg() * l.size() as usize).sum()
    }
}

/// The multiset `{(dᵢ, λᵢ)}`, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimilarityType {
    blocks: Vec<(usize, Partition)>,
}

impl SimilarityType {
    pub fn new(mut blocks: Vec<(usize, Partition)>) -> Result<Self> {
        if blocks.iter().any(|(d, _)| *d == 0) {
            return Err(Error::InvalidPartition("type degrees must be positive".into()));
        }
        blocks.retain(|(_, l)| !l.is_empty());
        blocks.sort();
        Ok(SimilarityType { blocks })
    }

    pub fn blocks(&self) -> &[(usize, Partition)] {
        &self.blocks
    }

    /// `Σ dᵢ |λᵢ|`.
    pub fn size(&self) -> usize {
        self.blocks.iter().map(|(d, l)| d * l.size() as usize).sum()
    }

    /// Parses `{(1,[2,1]),(2,[1])}`.
    pub fn parse(text: &str) -> Result<Self> {
        let body: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let body = body
            .strip_prefix('{')
            .and_then(|b| b.strip_suffix('}'))
            .ok_or_else(|| Error::Parse(format!("type must be enclosed in braces: {text:?}")))?;
        let mut blocks = Vec::new();
        let mut rest = body;
        while !rest.is_empty() {
            let inner_end = rest.find(')').ok_or_else(|| Error::Parse(format!("unclosed block in {text:?}")))?;
            let block =
                rest[..inner_end].strip_prefix('(').ok_or_else(|| Error::Parse(format!("expected '(' in {text:?}")))?;
            let (d, parts) = block.split_once(',').ok_or_else(|| Error::Parse(format!("bad block {block:?}")))?;
            let d = d.parse::<usize>().map_err(|_| Error::Parse(format!("bad degree {d:?}")))?;
            if !(parts.starts_with('[') && parts.ends_with(']')) {
                return Err(Error::Parse(format!("partition must be bracketed: {parts:?}")));
            }
            blocks.push((d, parts.parse::<Partition>()?));
            rest = &rest[inner_end + 1..];
            rest = rest.strip_prefix(',').unwrap_or(rest);
        }
        SimilarityType::new(blocks)
    }
}

impl fmt::Display for SimilarityType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self.blocks.iter().map(|(d, l)| format!("({d},[{l}])")).collect();
        write!(f, "{{{}}}", blocks.join(","))
    }
}

fn multiplicity_in(phi: &Poly, p: &Poly, f: &Field) -> u32 {
    let mut e = 0;
    let mut rest = p.clone();
    while !rest.is_constant() && phi.divides(&rest, f) {
        rest = rest.div_exact(phi, f).expect("divides");
        e += 1;
    }
    e
}

/// `λ` for each irreducible `φ` collects the exponents of `φ` in `p_k, p_{k-1}, …`.
pub fn invariants_to_primary(inv: &InvariantFactors, f: &Field) -> Result<PrimaryDecomposition> {
    let Some(last) = inv.factors().last().filter(|p| !p.is_constant()) else {
        return PrimaryDecomposition::new(Vec::new());
    };
    let mut blocks = Vec::new();
    for (phi, _) in factor(last, f)? {
        let parts: Vec<u32> =
            inv.nonconstant().iter().rev().map(|p| multiplicity_in(&phi, p, f)).filter(|&e| e > 0).collect();
        blocks.push((phi, Partition::new(parts)?));
    }
    PrimaryDecomposition::new(blocks)
}

/// Inverse of [`invariants_to_primary`]; returns only the nonconstant entries.
pub fn primary_to_invariants(pd: &PrimaryDecomposition, f: &Field) -> Result<InvariantFactors> {
    let len = pd.blocks().iter().map(|(_, l)| l.len()).max().unwrap_or(0);
    let factors: Vec<Poly> = (1..=len)
        .rev()
        .map(|j| pd.blocks().iter().fold(Poly::one(), |acc, (phi, l)| acc.mul(&phi.pow(l.part(j), f), f)))
        .collect();
    InvariantFactors::new(factors, f)
}

pub fn type_of(pd: &PrimaryDecomposition) -> SimilarityType {
    SimilarityType::new(pd.blocks().iter().map(|(phi, l)| (phi.deg(), l.clone())).collect())
        .expect("irreducibles have positive degree")
}

/// Whether F_q has enough irreducibles of each degree to realize `τ`.
pub fn is_realizable(tau: &SimilarityType, q: u32) -> bool {
    let mut need: BTreeMap<usize, usize> = BTreeMap::new();
    for (d, _) in tau.blocks() {
        *need.entry(*d).or_default() += 1;
    }
    need.into_iter().all(|(d, n)| BigInt::from(n) <= count_irreducible(q, d))
}

/// A primary decomposition of type `τ`, using the first irreducibles of each
/// degree in enumeration order.
pub fn realize_type(tau: &SimilarityType, f: &Field) -> Result<PrimaryDecomposition> {
    let mut used: BTreeMap<usize, usize> = BTreeMap::new();
    let mut blocks = Vec::new();
    for (d, l) in tau.blocks() {
        let idx = used.entry(*d).or_default();
        let phi = enumerate_irreducible(*d, f)
            .nth(*idx)
            .ok_or_else(|| Error::InvalidInvariants(format!("type {tau} is not realizable over F_{}", f.q())))?;
        *idx += 1;
        blocks.push((phi, l.clone()));
    }
    PrimaryDecomposition::new(blocks)
}

/// Every similarity class type of the given size (realizable or not).
pub fn enumerate_types(size: usize) -> Vec<SimilarityType> {
    let mut atoms: Vec<(usize, Partition)> = Vec::new();
    for d in 1..=size {
        for n in 1..=size / d {
            for l in partitions(n as u32) {
                atoms.push((d, l));
            }
        }
    }
    fn rec(
        start: usize,
        remaining: usize,
        atoms: &[(usize, Partition)],
        acc: &mut Vec<(usize, Partition)>,
        out: &mut Vec<SimilarityType>,
    ) {
        if remaining == 0 {
            out.push(SimilarityType::new(acc.clone()).expect("valid atoms"));
            return;
        }
        for i in start..atoms.len() {
            let (d, l) = &atoms[i];
            let s = d * l.size() as usize;
            if s <= remaining {
                acc.push((*d, l.clone()));
                rec(i, remaining - s, atoms, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(0, size, &atoms, &mut Vec::new(), &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;
    use crate::simclass::invariants::enumerate_classes;

    #[test]
    fn primary_decomposition_example() {
        let f = Field::prime(2).unwrap();
        let inv = InvariantFactors::parse("x,x^3+x^2", &f).unwrap();
        let pd = invariants_to_primary(&inv, &f).unwrap();
        let expected = vec![
            (parse_poly("x", &f).unwrap(), Partition::new(vec![2, 1]).unwrap()),
            (parse_poly("x+1", &f).unwrap(), Partition::new(vec![1]).unwrap()),
        ];
        assert_eq!(pd.blocks(), expected.as_slice());
        assert_eq!(type_of(&pd).to_string(), "{(1,[1]),(1,[2,1])}");
    }

    #[test]
    fn equal_factors_give_rectangular_partition() {
        let f = Field::prime(3).unwrap();
        let g = parse_poly("x^2+1", &f).unwrap().pow(2, &f);
        let inv = InvariantFactors::new(vec![g.clone(), g.clone(), g], &f).unwrap();
        let pd = invariants_to_primary(&inv, &f).unwrap();
        assert_eq!(pd.blocks().len(), 1);
        assert_eq!(pd.blocks()[0].1.parts(), &[2, 2, 2]);
    }

    #[test]
    fn roundtrip_all_classes_up_to_degree_four_f2() {
        let f = Field::prime(2).unwrap();
        for n in 1..=4 {
            for inv in enumerate_classes(n, &f) {
                let pd = invariants_to_primary(&inv, &f).unwrap();
                assert_eq!(pd.size(), n);
                let back = primary_to_invariants(&pd, &f).unwrap();
                assert_eq!(back.to_length(n).unwrap(), inv);
                assert_eq!(back.factors(), inv.nonconstant());
            }
        }
    }

    #[test]
    fn type_text_roundtrip() {
        let t = SimilarityType::parse("{(2,[1]), (1,[2,1])}").unwrap();
        assert_eq!(t.to_string(), "{(1,[2,1]),(2,[1])}");
        assert_eq!(SimilarityType::parse(&t.to_string()).unwrap(), t);
        assert_eq!(t.size(), 5);
        assert!(SimilarityType::parse("(1,[1])").is_err());
        assert!(SimilarityType::parse("{(0,[1])}").is_err());
    }

    #[test]
    fn type_census_matches_classes() {
        // realizable types of size N over F_2 are exactly the types of the classes
        let f = Field::prime(2).unwrap();
        for n in 1..=4 {
            let mut from_classes: Vec<SimilarityType> =
                enumerate_classes(n, &f).iter().map(|i| type_of(&invariants_to_primary(i, &f).unwrap())).collect();
            from_classes.sort();
            from_classes.dedup();
            let realizable: Vec<SimilarityType> =
                enumerate_types(n).into_iter().filter(|t| is_realizable(t, 2)).collect();
            assert_eq!(realizable, from_classes);
        }
    }

    #[test]
    fn realization_has_requested_type() {
        let f = Field::prime(2).unwrap();
        let t = SimilarityType::parse("{(1,[1]),(1,[2]),(2,[1])}").unwrap();
        assert!(is_realizable(&t, 2));
        let pd = realize_type(&t, &f).unwrap();
        assert_eq!(type_of(&pd), t);
        let too_many = SimilarityType::parse("{(1,[1]),(1,[1]),(1,[1])}").unwrap();
        assert!(!is_realizable(&too_many, 2));
        assert!(realize_type(&too_many, &f).is_err());
    }
}
