//! Closed-form counts with a record of which formula produced each value.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{factor, Field};
use crate::error::{Error, Result};
use crate::simclass::{
    centralizer_order, centralizer_order_type, count_to_ratio, gamma, q_binomial, q_pochhammer, qpow, qpow_ratio,
    ratio_to_count, reduce_invariants, reduce_type, Count, InvariantFactors, Ratio, SimilarityType,
};

/// The formula behind a computed value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    /// Splitting subspaces exist only when the leading `m(d-1)` invariant factors are 1.
    ExistenceInvariants,
    /// Splitting subspaces exist only when every partition has at most `m` parts.
    ExistenceType,
    /// `d = 1`: the whole space is the only candidate.
    TrivialDegree,
    /// `σ` for `I = (g, …, g)`.
    EqualFactors,
    /// `σ` for a type with `Σ dᵢ λᵢ,ₘ = d`.
    EqualFactorsType,
    /// `σ = c(I) / c(Ĩ)` when `deg p₁ = d - 1`.
    CentralizerRatio,
    /// The type form of the centralizer ratio, written out explicitly.
    CentralizerRatioType,
    /// `σ = c(I) μ(m, m, d; I) / γ_q(m)`.
    SigmaFromMu,
    /// `μ = 1` once stripping `p₁` leaves degree 0.
    FullReduction,
    /// `μ(n, k, 1; I)` via the Gaussian binomial and `γ_q(δ) / c(I)`.
    DegreeOne,
    /// `μ` of the all-ones tuple.
    Unimodular,
    /// `μ` for a single column.
    SingleColumn,
    /// Coprime tuples of monic polynomials.
    CoprimeTuples,
    /// `κ = γ_q(m) σ / q^{m² d}`.
    KrylovSigma,
    /// Centralizer order from the primary decomposition.
    CentralizerFormula,
    /// Brute-force enumeration.
    Oracle,
}

impl Rule {
    pub const ALL: [Rule; 16] = [
        Rule::ExistenceInvariants,
        Rule::ExistenceType,
        Rule::TrivialDegree,
        Rule::EqualFactors,
        Rule::EqualFactorsType,
        Rule::CentralizerRatio,
        Rule::CentralizerRatioType,
        Rule::SigmaFromMu,
        Rule::FullReduction,
        Rule::DegreeOne,
        Rule::Unimodular,
        Rule::SingleColumn,
        Rule::CoprimeTuples,
        Rule::KrylovSigma,
        Rule::CentralizerFormula,
        Rule::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rule::ExistenceInvariants => "existence-invariants",
            Rule::ExistenceType => "existence-type",
            Rule::TrivialDegree => "trivial-degree",
            Rule::EqualFactors => "equal-factors",
            Rule::EqualFactorsType => "equal-factors-type",
            Rule::CentralizerRatio => "centralizer-ratio",
            Rule::CentralizerRatioType => "centralizer-ratio-type",
            Rule::SigmaFromMu => "sigma-from-mu",
            Rule::FullReduction => "full-reduction",
            Rule::DegreeOne => "degree-one",
            Rule::Unimodular => "unimodular",
            Rule::SingleColumn => "single-column",
            Rule::CoprimeTuples => "coprime-tuples",
            Rule::KrylovSigma => "krylov-sigma",
            Rule::CentralizerFormula => "centralizer-formula",
            Rule::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A closed-form value, or the residual case no formula covers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CountResult {
    Value { value: Count, rule: Rule },
    NotCovered { residual: String },
}

impl CountResult {
    fn value(value: Count, rule: Rule) -> Self {
        CountResult::Value { value, rule }
    }

    pub fn as_value(&self) -> Option<&Count> {
        match self {
            CountResult::Value { value, .. } => Some(value),
            CountResult::NotCovered { .. } => None,
        }
    }

    pub fn rule(&self) -> Option<Rule> {
        match self {
            CountResult::Value { rule, .. } => Some(*rule),
            CountResult::NotCovered { .. } => None,
        }
    }
}

/// A probability in `[0, 1]` with its provenance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KappaResult {
    Value { value: Ratio, rule: Rule },
    NotCovered { residual: String },
}

fn check_mu_dims(n: usize, k: usize) -> Result<()> {
    if k == 0 || k > n {
        return Err(Error::DimensionMismatch(format!("need 1 <= k <= n, got n={n}, k={k}")));
    }
    Ok(())
}

/// `q^{nk(d-1)} Π_{i=1}^k (q^n - q^i)`, with value 1 at `d = 0`.
pub fn unimodular_count(n: usize, k: usize, d: usize, q: u32) -> Count {
    if d == 0 {
        return Count::one();
    }
    let qn = qpow(q, n as u64);
    let prod: Count = (1..=k)
        .map(|i| {
            let qi = qpow(q, i as u64);
            if qi > qn {
                Count::zero()
            } else {
                &qn - qi
            }
        })
        .product();
    qpow(q, (n * k * (d - 1)) as u64) * prod
}

/// `μ(n, 1, d; (p))` with `δ = deg p < d`: `q^{n(d-δ)} (1 - q^{1-n})`.
fn single_column(n: usize, d_resid: usize, q: u32) -> Result<Count> {
    let v = count_to_ratio(&qpow(q, (n * d_resid) as u64)) * (Ratio::one() - qpow_ratio(q, 1 - n as i64));
    ratio_to_count(&v, "single-column count")
}

/// `[k δ]_q γ_q(δ) / c(I) Π_{i=δ+1}^k (q^n - q^i)`.
fn degree_one(n: usize, k: usize, inv: &InvariantFactors, f: &Field) -> Result<Count> {
    let q = f.q();
    let delta = inv.degree();
    if delta > k {
        return Ok(Count::zero());
    }
    let c = centralizer_order(inv, f)?;
    let qn = qpow(q, n as u64);
    let tail: Count = (delta + 1..=k).map(|i| &qn - qpow(q, i as u64).min(qn.clone())).product();
    let num = q_binomial(k, delta, q) * gamma(q, delta) * tail;
    let v = Ratio::new(BigInt::from(num), BigInt::from(c));
    ratio_to_count(&v, "degree-one count")
}

/// `μ_q(n, k, d; I)` where a formula applies.
pub fn mu_closed(n: usize, k: usize, d: usize, inv: &InvariantFactors, f: &Field) -> Result<CountResult> {
    check_mu_dims(n, k)?;
    let inv = inv.to_length(k)?;
    if inv.degree() > k * d {
        return Err(Error::ImpossibleInvariants(format!("deg {inv} = {} exceeds kd = {}", inv.degree(), k * d)));
    }
    let (reduced, d1) = reduce_invariants(&inv, f)?;
    let dr = d - d1;
    if dr == 0 {
        return Ok(CountResult::value(Count::one(), Rule::FullReduction));
    }
    let mut candidates: Vec<(Count, Rule)> = Vec::new();
    if k == 1 {
        candidates.push((single_column(n, dr, f.q())?, Rule::SingleColumn));
    }
    if reduced.is_all_ones() {
        candidates.push((unimodular_count(n, k, dr, f.q()), Rule::Unimodular));
    }
    if dr == 1 {
        candidates.push((degree_one(n, k, &reduced, f)?, Rule::DegreeOne));
    }
    let Some((value, rule)) = candidates.first().cloned() else {
        return Ok(CountResult::NotCovered { residual: format!("mu(n={n}, k={k}, d={dr}; {reduced})") });
    };
    debug_assert!(
        candidates.iter().all(|(v, _)| *v == value),
        "formulas disagree for mu(n={n}, k={k}, d={d}; {inv}): {candidates:?}"
    );
    Ok(CountResult::value(value, rule))
}

/// Brings an `m`- or `md`-tuple to its canonical `md` entries.
pub fn normalize_sigma_input(m: usize, d: usize, inv: &InvariantFactors) -> Result<InvariantFactors> {
    if m == 0 || d == 0 {
        return Err(Error::DimensionMismatch(format!("need m, d >= 1, got m={m}, d={d}")));
    }
    if inv.degree() != m * d {
        return Err(Error::SizeMismatch(format!("deg {inv} = {} but md = {}", inv.degree(), m * d)));
    }
    inv.to_length(m * d)
}

/// Whether an operator with invariant factors `I` has an `m`-dimensional
/// splitting subspace of degree `d`.
pub fn exists_splitting(m: usize, d: usize, inv: &InvariantFactors) -> Result<bool> {
    let full = normalize_sigma_input(m, d, inv)?;
    Ok(full.factors()[..m * (d - 1)].iter().all(|p| p.is_one()))
}

/// Type-level existence criterion.
pub fn exists_splitting_type(m: usize, d: usize, tau: &SimilarityType) -> Result<bool> {
    check_type_size(m, d, tau)?;
    Ok(tau.blocks().iter().all(|(_, l)| l.len() <= m))
}

fn check_type_size(m: usize, d: usize, tau: &SimilarityType) -> Result<()> {
    if m == 0 || d == 0 {
        return Err(Error::DimensionMismatch(format!("need m, d >= 1, got m={m}, d={d}")));
    }
    if tau.size() != m * d {
        return Err(Error::SizeMismatch(format!("type {tau} has size {} but md = {}", tau.size(), m * d)));
    }
    Ok(())
}

/// `q^{m² d} / γ_q(m) · Π_i (q^{-dᵢ})_m` over the irreducible-factor degrees `dᵢ`.
fn equal_factors_value(m: usize, d: usize, degrees: &[usize], q: u32) -> Result<Count> {
    let mut v = Ratio::new(BigInt::from(qpow(q, (m * m * d) as u64)), BigInt::from(gamma(q, m)));
    for &di in degrees {
        v *= q_pochhammer(q, di, m);
    }
    ratio_to_count(&v, "equal-factors count")
}

/// `σ(m, d; I)` where a formula applies.
pub fn sigma_closed(m: usize, d: usize, inv: &InvariantFactors, f: &Field) -> Result<CountResult> {
    let full = normalize_sigma_input(m, d, inv)?;
    if !exists_splitting(m, d, &full)? {
        return Ok(CountResult::value(Count::zero(), Rule::ExistenceInvariants));
    }
    if d == 1 {
        return Ok(CountResult::value(Count::one(), Rule::TrivialDegree));
    }
    let tail = full.to_length(m)?;
    let p1 = &tail.factors()[0];
    if p1.deg() == d {
        let degrees: Vec<usize> = factor(p1, f)?.iter().map(|(phi, _)| phi.deg()).collect();
        return Ok(CountResult::value(equal_factors_value(m, d, &degrees, f.q())?, Rule::EqualFactors));
    }
    if p1.deg() + 1 == d {
        let (reduced, _) = reduce_invariants(&tail, f)?;
        let v = Ratio::new(BigInt::from(centralizer_order(&full, f)?), BigInt::from(centralizer_order(&reduced, f)?));
        return Ok(CountResult::value(ratio_to_count(&v, "centralizer ratio")?, Rule::CentralizerRatio));
    }
    match mu_closed(m, m, d, &tail, f)? {
        CountResult::Value { value, .. } => {
            let v = Ratio::new(BigInt::from(centralizer_order(&full, f)? * value), BigInt::from(gamma(f.q(), m)));
            Ok(CountResult::value(ratio_to_count(&v, "sigma from mu")?, Rule::SigmaFromMu))
        }
        CountResult::NotCovered { residual } => {
            Ok(CountResult::NotCovered { residual: format!("sigma(m={m}, d={d}; {full}) needs {residual}") })
        }
    }
}

/// `σ(m, d; τ)` where a formula applies.
///
/// Partitions with fewer than `m` parts read as having trailing zero parts.
/// In the `Σ dᵢ λᵢ,ₘ = d - 1` case, `mᵢ` counts the parts of `λᵢ` equal to
/// `λᵢ,ₘ` when that part is positive, and is 0 when `λᵢ,ₘ = 0`.
pub fn sigma_type_closed(m: usize, d: usize, tau: &SimilarityType, q: u32) -> Result<CountResult> {
    if !exists_splitting_type(m, d, tau)? {
        return Ok(CountResult::value(Count::zero(), Rule::ExistenceType));
    }
    if d == 1 {
        return Ok(CountResult::value(Count::one(), Rule::TrivialDegree));
    }
    let s: usize = tau.blocks().iter().map(|(di, l)| di * l.part(m) as usize).sum();
    if s == d {
        let degrees: Vec<usize> = tau.blocks().iter().map(|(di, _)| *di).collect();
        return Ok(CountResult::value(equal_factors_value(m, d, &degrees, q)?, Rule::EqualFactorsType));
    }
    if s + 1 == d {
        let mut v = count_to_ratio(&qpow(q, (m * m * (d - 1)) as u64));
        for (di, l) in tau.blocks() {
            let last = l.part(m);
            let mi = if last == 0 { 0 } else { l.multiplicity(last) };
            v *= q_pochhammer(q, *di, mi);
        }
        let value = ratio_to_count(&v, "type centralizer ratio")?;
        debug_assert_eq!(
            count_to_ratio(&value),
            Ratio::new(
                BigInt::from(centralizer_order_type(tau, q)?),
                BigInt::from(centralizer_order_type(&reduce_type(tau, m)?, q)?)
            ),
            "explicit form disagrees with c(tau)/c(reduced tau) for {tau}"
        );
        return Ok(CountResult::value(value, Rule::CentralizerRatioType));
    }
    Ok(CountResult::NotCovered { residual: format!("sigma(m={m}, d={d}; {tau}) with sum of d_i*lambda_(i,m) = {s}") })
}

/// `γ_q(m) σ / q^{m² d}`.
pub fn kappa_from_sigma(sigma: &Count, m: usize, d: usize, q: u32) -> Ratio {
    Ratio::new(BigInt::from(gamma(q, m) * sigma), BigInt::from(qpow(q, (m * m * d) as u64)))
}

fn kappa_of(sigma: CountResult, m: usize, d: usize, q: u32) -> KappaResult {
    match sigma {
        CountResult::Value { value, .. } => {
            KappaResult::Value { value: kappa_from_sigma(&value, m, d, q), rule: Rule::KrylovSigma }
        }
        CountResult::NotCovered { residual } => KappaResult::NotCovered { residual },
    }
}

/// `κ_{m,d}(T)` for an operator with invariant factors `I`.
pub fn kappa(m: usize, d: usize, inv: &InvariantFactors, f: &Field) -> Result<KappaResult> {
    Ok(kappa_of(sigma_closed(m, d, inv, f)?, m, d, f.q()))
}

/// `κ_{m,d}(T)` for an operator of type `τ`.
pub fn kappa_type(m: usize, d: usize, tau: &SimilarityType, q: u32) -> Result<KappaResult> {
    Ok(kappa_of(sigma_type_closed(m, d, tau, q)?, m, d, q))
}

/// `q^{nd} - q^{n(d-1)+1}`.
pub fn coprime_tuple_count(n: usize, d: usize, q: u32) -> Result<Count> {
    if n < 2 || d == 0 {
        return Err(Error::DimensionMismatch(format!("need n >= 2 and d >= 1, got n={n}, d={d}")));
    }
    Ok(qpow(q, (n * d) as u64) - qpow(q, (n * (d - 1) + 1) as u64))
}
