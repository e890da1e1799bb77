use std::fmt;

use crate::algebra::{enumerate_monic, parse_poly_list, Field, Poly};
use crate::error::{Error, Result};

/// A tuple `(p₁, …, p_k)` of monic polynomials with `pᵢ | pᵢ₊₁`.
///
/// Constant entries are all equal to 1 and come first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InvariantFactors {
    factors: Vec<Poly>,
}

impl InvariantFactors {
    pub fn new(factors: Vec<Poly>, f: &Field) -> Result<Self> {
        if let Some(bad) = factors.iter().find(|p| !p.is_monic()) {
            return Err(Error::InvalidInvariants(format!("{bad} is not monic")));
        }
        for w in factors.windows(2) {
            if !w[0].divides(&w[1], f) {
                return Err(Error::InvalidInvariants(format!("{} does not divide {}", w[0], w[1])));
            }
        }
        Ok(InvariantFactors { factors })
    }

    /// Parses a comma-separated list given smallest first, e.g. `"1,x,x^2+x"`.
    pub fn parse(text: &str, f: &Field) -> Result<Self> {
        InvariantFactors::new(parse_poly_list(text, f)?, f)
    }

    /// The tuple `(1, …, 1)` of length `k`.
    pub fn ones(k: usize) -> Self {
        InvariantFactors { factors: vec![Poly::one(); k] }
    }

    pub fn factors(&self) -> &[Poly] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// `deg(p₁ ⋯ p_k)`.
    pub fn degree(&self) -> usize {
        self.factors.iter().map(Poly::deg).sum()
    }

    /// The trailing nonconstant entries.
    pub fn nonconstant(&self) -> &[Poly] {
        let first = self.factors.iter().position(|p| !p.is_constant()).unwrap_or(self.factors.len());
        &self.factors[first..]
    }

    pub fn is_all_ones(&self) -> bool {
        self.factors.iter().all(Poly::is_one)
    }

    /// Pads with leading ones, or drops leading ones, to reach `len` entries.
    pub fn to_length(&self, len: usize) -> Result<Self> {
        if len >= self.len() {
            let mut factors = vec![Poly::one(); len - self.len()];
            factors.extend(self.factors.iter().cloned());
            return Ok(InvariantFactors { factors });
        }
        let drop = self.len() - len;
        if self.factors[..drop].iter().any(|p| !p.is_one()) {
            return Err(Error::InvalidInvariants(format!(
                "cannot shorten {self} to {len} entries without dropping nonconstant factors"
            )));
        }
        Ok(InvariantFactors { factors: self.factors[drop..].to_vec() })
    }

    /// The two-sided convention used for centralizers: pad up to, or keep
    /// the last, `deg I` entries.
    pub fn centralizer_normal_form(&self) -> Self {
        self.to_length(self.degree()).expect("a tuple has at most deg I nonconstant entries")
    }
}

impl fmt::Display for InvariantFactors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(Poly::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// All invariant-factor tuples of `N × N` matrices over F_q, as `N`-tuples.
pub fn enumerate_classes(n: usize, f: &Field) -> Vec<InvariantFactors> {
    fn rec(
        upper: Option<&Poly>,
        remaining: usize,
        n: usize,
        acc: &mut Vec<Poly>,
        f: &Field,
        out: &mut Vec<InvariantFactors>,
    ) {
        if remaining == 0 {
            let mut factors = vec![Poly::one(); n - acc.len()];
            factors.extend(acc.iter().rev().cloned());
            out.push(InvariantFactors { factors });
            return;
        }
        let max = upper.map_or(remaining, |u| u.deg().min(remaining));
        for d in 1..=max {
            for g in enumerate_monic(d, f) {
                if upper.is_some_and(|u| !g.divides(u, f)) {
                    continue;
                }
                acc.push(g.clone());
                rec(Some(&g), remaining - d, n, acc, f, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(None, n, n, &mut Vec::new(), f, &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_is_validated() {
        let f = Field::prime(2).unwrap();
        assert!(InvariantFactors::parse("x,x^2", &f).is_ok());
        assert!(InvariantFactors::parse("x,x+1", &f).is_err());
        assert!(InvariantFactors::parse("0", &f).is_err());
        let f3 = Field::prime(3).unwrap();
        assert!(InvariantFactors::parse("2*x", &f3).is_err());
    }

    #[test]
    fn padding_and_trimming() {
        let f = Field::prime(2).unwrap();
        let i = InvariantFactors::parse("x,x^2+x", &f).unwrap();
        assert_eq!(i.to_length(4).unwrap().to_string(), "1,1,x,x^2+x");
        assert!(i.to_length(1).is_err());
        let j = InvariantFactors::parse("1,1,x^2", &f).unwrap();
        assert_eq!(j.centralizer_normal_form().to_string(), "1,x^2");
        assert_eq!(j.nonconstant().len(), 1);
    }

    #[test]
    fn class_counts() {
        // number of similarity classes in M_N(F_q): q, q^2+q, q^3+q^2+q
        for q in [2u32, 3] {
            let f = Field::prime(q).unwrap();
            assert_eq!(enumerate_classes(1, &f).len() as u32, q);
            assert_eq!(enumerate_classes(2, &f).len() as u32, q * q + q);
            assert_eq!(enumerate_classes(3, &f).len() as u32, q * q * q + q * q + q);
        }
    }
}
