use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// An integer partition stored as its weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition { parts })
    }

    /// Sorts the parts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `|λ|`.
    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// The `j`-th part, 1-indexed; zero past the last part.
    pub fn part(&self, j: usize) -> u32 {
        if j == 0 {
            return 0;
        }
        self.parts.get(j - 1).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let largest = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=largest).map(|i| self.parts.iter().filter(|&&p| p >= i).count() as u32).collect();
        Partition { parts }
    }

    /// `m_i(λ)`, the number of parts equal to `i`.
    pub fn multiplicity(&self, i: u32) -> usize {
        self.parts.iter().filter(|&&p| p == i).count()
    }

    /// `(i, m_i(λ))` for every part size present, largest first.
    pub fn multiplicities(&self) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((v, c)) if *v == p => *c += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// `⟨λ, λ⟩`, the sum of squared parts.
    pub fn inner(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64 * p as u64).sum()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches(['[', '(']).trim_end_matches([']', ')']);
        if s.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad part {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// All partitions of `n`, in reverse lexicographic order.
pub fn partitions(n: u32) -> Vec<Partition> {
    fn rec(remaining: u32, max: u32, acc: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition { parts: acc.clone() });
            return;
        }
        for p in (1..=max.min(remaining)).rev() {
            acc.push(p);
            rec(remaining - p, p, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjugate_and_multiplicities() {
        let l: Partition = "6,5,5,4,2".parse().unwrap();
        assert_eq!(l.conjugate().parts(), &[5, 5, 4, 4, 3, 1]);
        assert_eq!(l.multiplicity(5), 2);
        assert_eq!(l.multiplicity(3), 0);
        assert_eq!(l.inner(), 36 + 25 + 25 + 16 + 4);
        assert_eq!(l.part(5), 2);
        assert_eq!(l.part(6), 0);
    }

    #[test]
    fn rejects_bad_parts() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert!("2,x".parse::<Partition>().is_err());
    }

    #[test]
    fn partition_laws_up_to_eight() {
        let counts = [1, 1, 2, 3, 5, 7, 11, 15, 22];
        for n in 0..=8u32 {
            let all = partitions(n);
            assert_eq!(all.len(), counts[n as usize]);
            for l in all {
                let c = l.conjugate();
                assert_eq!(c.conjugate(), l);
                assert_eq!(c.size(), n);
                // m_i(λ) = λ'_i - λ'_{i+1} and Σ i·m_i = |λ|
                let mut total = 0;
                for i in 1..=n.max(1) {
                    let m = l.multiplicity(i);
                    assert_eq!(m as u32, c.part(i as usize) - c.part(i as usize + 1));
                    total += i * m as u32;
                }
                assert_eq!(total, n);
            }
        }
    }
}
