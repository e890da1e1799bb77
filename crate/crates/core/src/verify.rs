//! Sweeps that compare closed forms with the oracles and check structural
//! identities over a grid of small parameters.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Field, FqMatrix, Poly};
use crate::error::{Error, Result};
use crate::formulas::{
    coprime_tuple_count, exists_splitting, kappa_from_sigma, mu_closed, sigma_closed, sigma_type_closed,
    unimodular_count, CountResult,
};
use crate::oracle::{
    centralizer_brute, coprime_tuple_brute, enumerate_subspaces, is_anti_invariant, kappa_brute, mu_brute,
    operator_from_invariants, random_invertible, sigma_brute, Histogram, DEFAULT_BUDGET,
};
use crate::polymat::{
    block_companion, invariant_factors, invariant_factors_from_divisors, smith_diagonal, smith_normal_form,
    verify_witnesses, DegreeShaped, PolyMatrix,
};
use crate::simclass::{
    centralizer_order, centralizer_order_type, enumerate_classes, gamma, invariants_to_primary, qpow,
    reduce_invariants, type_of, Count, InvariantFactors, Ratio, SimilarityType,
};

/// Names of the available suites, in run order.
pub const SUITES: [&str; 17] = [
    "sigma-mu-identity",
    "sigma-closed",
    "existence",
    "kappa",
    "type-invariance",
    "conjugation-invariance",
    "mu-closed",
    "unimodular",
    "reduction",
    "histogram-total",
    "centralizer",
    "class-sizes",
    "coprime",
    "snf-witness",
    "determinantal-divisors",
    "snf-equivalence",
    "block-companion",
];

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    /// Field orders to sweep.
    pub fields: Vec<u32>,
    /// Largest ambient dimension `md` (and largest `N` for centralizers).
    pub max_md: usize,
    /// Oracle budget per enumeration.
    pub budget: u64,
    /// Matrix-space size above which polynomial-matrix suites sample instead of enumerating.
    pub exhaustive_limit: u64,
    /// Number of samples drawn when sampling.
    pub samples: usize,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            fields: vec![2],
            max_md: 4,
            budget: DEFAULT_BUDGET,
            exhaustive_limit: 1 << 16,
            samples: 1000,
            seed: 0x5eed,
        }
    }
}

/// One failed comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub case: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, Default)]
pub struct SuiteReport {
    pub name: String,
    pub checks: u64,
    pub mismatches: Vec<Mismatch>,
    pub skipped: Vec<String>,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        SuiteReport { name: name.to_string(), ..Default::default() }
    }

    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    fn check<T: PartialEq + fmt::Display>(&mut self, case: impl FnOnce() -> String, expected: T, actual: T) {
        self.checks += 1;
        if expected != actual {
            self.mismatches.push(Mismatch { case: case(), expected: expected.to_string(), actual: actual.to_string() });
        }
    }

    /// Records a refused oracle call and passes any other error through.
    fn skip_on_budget<T>(&mut self, case: &str, r: Result<T>) -> Result<Option<T>> {
        match r {
            Ok(v) => Ok(Some(v)),
            Err(Error::BudgetExceeded { needed, budget }) => {
                self.skipped.push(format!("{case}: needs {needed} > budget {budget}"));
                Ok(None)
            }
            Err(e) => Err(e),
        }
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} {}: {} checks", self.name, self.checks)?;
        if !self.mismatches.is_empty() {
            write!(f, ", {} mismatches", self.mismatches.len())?;
        }
        if !self.skipped.is_empty() {
            write!(f, ", {} skipped", self.skipped.len())?;
        }
        for m in &self.mismatches {
            write!(f, "\n  mismatch {}: expected {}, got {}", m.case, m.expected, m.actual)?;
        }
        for s in &self.skipped {
            write!(f, "\n  skipped {s}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub suites: Vec<SuiteReport>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteReport::passed)
    }

    pub fn checks(&self) -> u64 {
        self.suites.iter().map(|s| s.checks).sum()
    }

    pub fn mismatches(&self) -> usize {
        self.suites.iter().map(|s| s.mismatches.len()).sum()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.suites {
            writeln!(f, "{s}")?;
        }
        write!(f, "{} checks, {} mismatches", self.checks(), self.mismatches())
    }
}

/// Runs every suite.
pub fn run(cfg: &VerifyConfig) -> Result<Report> {
    run_suites(&SUITES, cfg)
}

/// Runs the named suites in the given order.
pub fn run_suites(names: &[&str], cfg: &VerifyConfig) -> Result<Report> {
    let mut report = Report::default();
    for name in names {
        report.suites.push(run_suite(name, cfg)?);
    }
    Ok(report)
}

/// Runs one suite over every configured field.
pub fn run_suite(name: &str, cfg: &VerifyConfig) -> Result<SuiteReport> {
    let mut suite = SuiteReport::new(name);
    for &q in &cfg.fields {
        let f = Field::with_order(q)?;
        let ctx = Ctx { f: &f, cfg };
        match name {
            "sigma-mu-identity" => ctx.sigma_mu_identity(&mut suite)?,
            "sigma-closed" => ctx.sigma_closed(&mut suite)?,
            "existence" => ctx.existence(&mut suite)?,
            "kappa" => ctx.kappa(&mut suite)?,
            "type-invariance" => ctx.type_invariance(&mut suite)?,
            "conjugation-invariance" => ctx.conjugation_invariance(&mut suite)?,
            "mu-closed" => ctx.mu_closed(&mut suite)?,
            "unimodular" => ctx.unimodular(&mut suite)?,
            "reduction" => ctx.reduction(&mut suite)?,
            "histogram-total" => ctx.histogram_total(&mut suite)?,
            "centralizer" => ctx.centralizer(&mut suite)?,
            "class-sizes" => ctx.class_sizes(&mut suite)?,
            "coprime" => ctx.coprime(&mut suite)?,
            "snf-witness" => ctx.snf_witness(&mut suite)?,
            "determinantal-divisors" => ctx.determinantal_divisors(&mut suite)?,
            "snf-equivalence" => ctx.snf_equivalence(&mut suite)?,
            "block-companion" => ctx.block_companion(&mut suite)?,
            other => return Err(Error::Parse(format!("unknown suite {other:?}; known: {}", SUITES.join(", ")))),
        }
    }
    Ok(suite)
}

/// `(m, d)` with `md ≤ max_md`.
fn md_grid(max_md: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for m in 1..=max_md {
        for d in 1..=max_md / m {
            out.push((m, d));
        }
    }
    out
}

/// `(n, k, d)` for the polynomial-matrix histograms.
/// `(n, k, d)` for a space of matrix polynomials.
type Shape = (usize, usize, usize);

const MU_GRID: [Shape; 13] = [
    (1, 1, 1),
    (1, 1, 2),
    (1, 1, 3),
    (2, 1, 1),
    (2, 1, 2),
    (2, 1, 3),
    (2, 2, 1),
    (2, 2, 2),
    (3, 1, 1),
    (3, 1, 2),
    (3, 2, 1),
    (3, 2, 2),
    (3, 3, 1),
];

/// `(n, k, d)` for the Smith-form suites: `k ≤ n ≤ 3`, `d ≤ 2`.
fn snf_grid() -> Vec<Shape> {
    let mut out = Vec::new();
    for n in 1..=3 {
        for k in 1..=n {
            for d in 1..=2 {
                out.push((n, k, d));
            }
        }
    }
    out
}

struct Ctx<'a> {
    f: &'a Field,
    cfg: &'a VerifyConfig,
}

impl Ctx<'_> {
    fn q(&self) -> u32 {
        self.f.q()
    }

    fn tag(&self) -> String {
        format!("q={}", self.q())
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.cfg.seed ^ (self.q() as u64) << 32 ^ salt)
    }

    /// Every class of degree `md` with a representative and its brute-force `σ`.
    fn sigma_table(
        &self,
        suite: &mut SuiteReport,
        m: usize,
        d: usize,
    ) -> Result<Option<Vec<(InvariantFactors, FqMatrix, Count)>>> {
        let mut rows = Vec::new();
        for inv in enumerate_classes(m * d, self.f) {
            let a = operator_from_invariants(&inv, self.f)?;
            let case = format!("{} sigma_brute m={m} d={d}", self.tag());
            let Some(s) = suite.skip_on_budget(&case, sigma_brute(m, d, &a, self.f, self.cfg.budget))? else {
                return Ok(None);
            };
            rows.push((inv, a, s));
        }
        Ok(Some(rows))
    }

    fn sigma_mu_identity(&self, suite: &mut SuiteReport) -> Result<()> {
        for (m, d) in md_grid(self.cfg.max_md) {
            let case = format!("{} mu_brute n=k={m} d={d}", self.tag());
            let Some(hist) = suite.skip_on_budget(&case, mu_brute(m, m, d, self.f, self.cfg.budget))? else {
                continue;
            };
            let Some(table) = self.sigma_table(suite, m, d)? else { continue };
            let gm = gamma(self.q(), m);
            for (inv, _, sigma) in table {
                let mu = inv.to_length(m).ok().and_then(|t| hist.get(&t).copied()).unwrap_or(0);
                let c = centralizer_order(&inv, self.f)?;
                suite.check(|| format!("{} m={m} d={d} I=({inv})", self.tag()), c * Count::from(mu), sigma * &gm);
            }
        }
        Ok(())
    }

    fn sigma_closed(&self, suite: &mut SuiteReport) -> Result<()> {
        for (m, d) in md_grid(self.cfg.max_md) {
            let Some(table) = self.sigma_table(suite, m, d)? else { continue };
            for (inv, _, sigma) in table {
                if let CountResult::Value { value, rule } = sigma_closed(m, d, &inv, self.f)? {
                    suite.check(|| format!("{} m={m} d={d} I=({inv}) rule={rule}", self.tag()), sigma, value);
                }
            }
        }
        Ok(())
    }

    fn existence(&self, suite: &mut SuiteReport) -> Result<()> {
        for (m, d) in md_grid(self.cfg.max_md) {
            let Some(table) = self.sigma_table(suite, m, d)? else { continue };
            for (inv, a, sigma) in table {
                let case = || format!("{} m={m} d={d} I=({inv})", self.tag());
                let claimed = exists_splitting(m, d, &inv)?;
                suite.check(case, !sigma.is_zero(), claimed);
                let anti = enumerate_subspaces(m * d, m, self.f).any(|w| is_anti_invariant(&a, &w, d - 1, self.f));
                suite.check(|| format!("{} anti-invariant", case()), claimed, anti);
            }
        }
        Ok(())
    }

    fn kappa(&self, suite: &mut SuiteReport) -> Result<()> {
        for (m, d) in md_grid(self.cfg.max_md) {
            let Some(table) = self.sigma_table(suite, m, d)? else { continue };
            for (inv, a, sigma) in table {
                let case = format!("{} kappa_brute m={m} d={d} I=({inv})", self.tag());
                let Some(k) = suite.skip_on_budget(&case, kappa_brute(m, d, &a, self.f, self.cfg.budget))? else {
                    break;
                };
                suite.check(|| case.clone(), kappa_from_sigma(&sigma, m, d, self.q()), k.clone());
                suite.check(
                    || format!("{case} in [0,1]"),
                    true,
                    k >= Ratio::zero() && k <= Ratio::from_integer(1.into()),
                );
            }
        }
        Ok(())
    }

    fn type_invariance(&self, suite: &mut SuiteReport) -> Result<()> {
        for (m, d) in md_grid(self.cfg.max_md) {
            let Some(table) = self.sigma_table(suite, m, d)? else { continue };
            let mut by_type: BTreeMap<SimilarityType, (String, Count)> = BTreeMap::new();
            for (inv, _, sigma) in table {
                let tau = type_of(&invariants_to_primary(&inv.centralizer_normal_form(), self.f)?);
                if let Some((first, value)) = by_type.get(&tau) {
                    suite.check(
                        || format!("{} m={m} d={d} type {tau}: ({first}) vs ({inv})", self.tag()),
                        value.clone(),
                        sigma.clone(),
                    );
                } else {
                    by_type.insert(tau.clone(), (inv.to_string(), sigma.clone()));
                }
                if let CountResult::Value { value, rule } = sigma_type_closed(m, d, &tau, self.q())? {
                    suite.check(|| format!("{} m={m} d={d} type {tau} rule={rule}", self.tag()), sigma, value);
                }
            }
        }
        Ok(())
    }

    fn conjugation_invariance(&self, suite: &mut SuiteReport) -> Result<()> {
        let mut rng = self.rng(1);
        for (m, d) in md_grid(self.cfg.max_md) {
            let Some(table) = self.sigma_table(suite, m, d)? else { continue };
            for (inv, a, sigma) in table {
                let s = random_invertible(m * d, self.f, &mut rng);
                let s_inv = s.inverse(self.f).expect("invertible");
                let b = s.mul(&a, self.f)?.mul(&s_inv, self.f)?;
                let conj = sigma_brute(m, d, &b, self.f, self.cfg.budget)?;
                suite.check(|| format!("{} m={m} d={d} I=({inv}) S={:?}", self.tag(), s.to_rows()), sigma, conj);
            }
        }
        Ok(())
    }

    fn histograms(&self, suite: &mut SuiteReport) -> Result<Vec<(Shape, Histogram)>> {
        let mut out = Vec::new();
        for (n, k, d) in MU_GRID {
            let case = format!("{} mu_brute n={n} k={k} d={d}", self.tag());
            if let Some(h) = suite.skip_on_budget(&case, mu_brute(n, k, d, self.f, self.cfg.budget))? {
                out.push(((n, k, d), h));
            }
        }
        Ok(out)
    }

    fn mu_closed(&self, suite: &mut SuiteReport) -> Result<()> {
        for ((n, k, d), hist) in self.histograms(suite)? {
            for (inv, &count) in &hist {
                if let CountResult::Value { value, rule } = mu_closed(n, k, d, inv, self.f)? {
                    suite.check(
                        || format!("{} n={n} k={k} d={d} I=({inv}) rule={rule}", self.tag()),
                        Count::from(count),
                        value,
                    );
                }
            }
        }
        Ok(())
    }

    fn unimodular(&self, suite: &mut SuiteReport) -> Result<()> {
        for ((n, k, d), hist) in self.histograms(suite)? {
            let ones = InvariantFactors::ones(k);
            let brute = hist.get(&ones).copied().unwrap_or(0);
            suite.check(
                || format!("{} n={n} k={k} d={d}", self.tag()),
                Count::from(brute),
                unimodular_count(n, k, d, self.q()),
            );
        }
        Ok(())
    }

    fn reduction(&self, suite: &mut SuiteReport) -> Result<()> {
        for n in 1..=2 {
            for k in 1..=n {
                let mut hists = Vec::new();
                for d in 0..=2 {
                    let case = format!("{} mu_brute n={n} k={k} d={d}", self.tag());
                    hists.push(suite.skip_on_budget(&case, mu_brute(n, k, d, self.f, self.cfg.budget))?);
                }
                for d in 1..=2 {
                    let Some(h) = &hists[d] else { continue };
                    for (inv, &count) in h {
                        let (reduced, d1) = reduce_invariants(inv, self.f)?;
                        let Some(lower) = &hists[d - d1] else { continue };
                        let other = lower.get(&reduced).copied().unwrap_or(0);
                        suite.check(
                            || format!("{} n={n} k={k} d={d} I=({inv}) -> d={} ({reduced})", self.tag(), d - d1),
                            count,
                            other,
                        );
                    }
                }
            }
        }
        Ok(())
    }

    fn histogram_total(&self, suite: &mut SuiteReport) -> Result<()> {
        for ((n, k, d), hist) in self.histograms(suite)? {
            let total: u64 = hist.values().sum();
            suite.check(
                || format!("{} n={n} k={k} d={d} total", self.tag()),
                qpow(self.q(), (n * k * d) as u64),
                Count::from(total),
            );
            for inv in hist.keys() {
                suite.check(
                    || format!("{} n={n} k={k} d={d} I=({inv}) degree bound", self.tag()),
                    true,
                    inv.degree() <= k * d && inv.len() == k,
                );
            }
        }
        Ok(())
    }

    fn centralizer(&self, suite: &mut SuiteReport) -> Result<()> {
        for n in 1..=self.cfg.max_md.min(3) {
            for inv in enumerate_classes(n, self.f) {
                let a = operator_from_invariants(&inv, self.f)?;
                let case = format!("{} N={n} I=({inv})", self.tag());
                let Some(brute) = suite.skip_on_budget(&case, centralizer_brute(&a, self.f, self.cfg.budget))? else {
                    continue;
                };
                let closed = centralizer_order(&inv, self.f)?;
                suite.check(|| case.clone(), brute, closed.clone());
                let tau = type_of(&invariants_to_primary(&inv, self.f)?);
                suite.check(|| format!("{case} by type"), closed, centralizer_order_type(&tau, self.q())?);
            }
        }
        Ok(())
    }

    fn class_sizes(&self, suite: &mut SuiteReport) -> Result<()> {
        for n in 1..=self.cfg.max_md {
            let g = gamma(self.q(), n);
            let mut total = Ratio::zero();
            for inv in enumerate_classes(n, self.f) {
                let c = centralizer_order(&inv, self.f)?;
                suite.check(|| format!("{} N={n} I=({inv}) c divides gamma", self.tag()), true, (&g % &c).is_zero());
                total += Ratio::new(BigInt::from(g.clone()), BigInt::from(c));
            }
            suite.check(
                || format!("{} N={n} sum of class sizes", self.tag()),
                Ratio::from_integer(BigInt::from(qpow(self.q(), (n * n) as u64))),
                total,
            );
        }
        Ok(())
    }

    fn coprime(&self, suite: &mut SuiteReport) -> Result<()> {
        for n in 2..=3 {
            for d in 1..=2 {
                let case = format!("{} n={n} d={d}", self.tag());
                let Some(brute) = suite.skip_on_budget(&case, coprime_tuple_brute(n, d, self.f, self.cfg.budget))?
                else {
                    continue;
                };
                suite.check(|| case.clone(), brute, coprime_tuple_count(n, d, self.q())?);
            }
        }
        Ok(())
    }

    /// Ranks to visit in `M_q(n, k, d)`: all of them, or seeded samples.
    fn ranks(&self, n: usize, k: usize, d: usize, salt: u64) -> Vec<u64> {
        let total = (self.q() as u128).pow((n * k * d) as u32);
        if total <= self.cfg.exhaustive_limit as u128 {
            return (0..total as u64).collect();
        }
        let mut rng = self.rng(salt ^ ((n * 100 + k * 10 + d) as u64));
        let hi = total.min(u64::MAX as u128) as u64;
        (0..self.cfg.samples).map(|_| rng.gen_range(0..hi)).collect()
    }

    fn snf_witness(&self, suite: &mut SuiteReport) -> Result<()> {
        for (n, k, d) in snf_grid() {
            for rank in self.ranks(n, k, d, 2) {
                let p = DegreeShaped::from_rank(rank, n, k, d, self.q()).into_matrix();
                let snf = smith_normal_form(&p, self.f, true);
                suite.check(|| format!("{} P={p}", self.tag()), true, verify_witnesses(&p, &snf, self.f)?);
            }
        }
        Ok(())
    }

    fn determinantal_divisors(&self, suite: &mut SuiteReport) -> Result<()> {
        for (n, k, d) in snf_grid() {
            for rank in self.ranks(n, k, d, 3) {
                let p = DegreeShaped::from_rank(rank, n, k, d, self.q()).into_matrix();
                let by_minors = invariant_factors_from_divisors(&p, self.f)?;
                suite.check(|| format!("{} P={p}", self.tag()), join(&by_minors), join(&smith_diagonal(&p, self.f)));
            }
        }
        Ok(())
    }

    fn snf_equivalence(&self, suite: &mut SuiteReport) -> Result<()> {
        let mut rng = self.rng(4);
        for (n, k, d) in snf_grid() {
            for rank in self.ranks(n, k, d, 5).into_iter().take(self.cfg.samples) {
                let p = DegreeShaped::from_rank(rank, n, k, d, self.q()).into_matrix();
                let u = random_unimodular(n, self.f, &mut rng);
                let v = random_unimodular(k, self.f, &mut rng);
                let moved = u.mul(&p, self.f)?.mul(&v, self.f)?;
                suite.check(
                    || format!("{} P={p} U={u} V={v}", self.tag()),
                    invariant_factors(&p, self.f)?.to_string(),
                    invariant_factors(&moved, self.f)?.to_string(),
                );
            }
        }
        Ok(())
    }

    fn block_companion(&self, suite: &mut SuiteReport) -> Result<()> {
        for m in 1..=2 {
            for d in 1..=2 {
                for rank in self.ranks(m, m, d, 6) {
                    let p = DegreeShaped::from_rank(rank, m, m, d, self.q());
                    let a = block_companion(&p.coefficients(), self.f)?;
                    let lhs = invariant_factors(&PolyMatrix::char_matrix(&a, self.f)?, self.f)?;
                    let rhs = invariant_factors(p.matrix(), self.f)?.to_length(m * d)?;
                    suite.check(|| format!("{} P={}", self.tag(), p.matrix()), rhs.to_string(), lhs.to_string());
                }
            }
        }
        Ok(())
    }
}

fn join(polys: &[Poly]) -> String {
    polys.iter().map(Poly::to_string).collect::<Vec<_>>().join(",")
}

/// A product of random elementary operations: row additions with polynomial
/// multipliers of degree ≤ 1, swaps and unit scalings.
pub fn random_unimodular<R: Rng + ?Sized>(n: usize, f: &Field, rng: &mut R) -> PolyMatrix {
    let mut u = PolyMatrix::identity(n);
    for _ in 0..3 * n {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        let mut e = PolyMatrix::identity(n);
        match rng.gen_range(0..3) {
            0 if i != j => {
                let c = Poly::from_coeffs(vec![rng.gen_range(0..f.q()), rng.gen_range(0..f.q())]);
                e.set(i, j, c);
            }
            1 if i != j => {
                e.set(i, i, Poly::zero());
                e.set(j, j, Poly::zero());
                e.set(i, j, Poly::one());
                e.set(j, i, Poly::one());
            }
            _ => e.set(i, i, Poly::constant(rng.gen_range(1..f.q()))),
        }
        u = e.mul(&u, f).expect("square");
    }
    u
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        assert_eq!(md_grid(4), vec![(1, 1), (1, 2), (1, 3), (1, 4), (2, 1), (2, 2), (3, 1), (4, 1)]);
        assert_eq!(snf_grid().len(), 12);
    }

    #[test]
    fn unimodular_generator_is_unimodular() {
        let f = Field::prime(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for n in 1..=3 {
            let u = random_unimodular(n, &f, &mut rng);
            let det = u.det(&f).unwrap();
            assert!(det.is_constant() && !det.is_zero());
        }
    }

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(run_suite("nope", &VerifyConfig::default()).is_err());
    }

    #[test]
    fn small_sweep_passes() {
        let cfg = VerifyConfig { max_md: 2, samples: 20, exhaustive_limit: 256, ..Default::default() };
        let report = run(&cfg).unwrap();
        assert!(report.passed(), "{report}");
        assert!(report.checks() > 0);
    }
}
