//! Values fixed in advance by hand or by exhaustive enumeration; both the
//! oracles and the closed forms must reproduce them.

use num_bigint::BigUint;
use num_rational::BigRational;
use splitcount::algebra::{Field, FqMatrix};
use splitcount::formulas::{
    coprime_tuple_count, exists_splitting, exists_splitting_type, kappa, mu_closed, sigma_closed, sigma_type_closed,
    CountResult, KappaResult, Rule,
};
use splitcount::oracle::{
    centralizer_brute, coprime_tuple_brute, enumerate_subspaces, kappa_brute, mu_brute, operator_from_invariants,
    operator_from_primary, sigma_brute, DEFAULT_BUDGET,
};
use splitcount::simclass::{
    centralizer_order, enumerate_types, is_realizable, realize_type, reduce_type, InvariantFactors, Partition,
    SimilarityType,
};

fn inv(s: &str, f: &Field) -> InvariantFactors {
    InvariantFactors::parse(s, f).unwrap()
}

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

type HistogramCase = ((usize, usize, usize), &'static [(&'static str, u64)]);

fn closed_value(r: CountResult) -> Option<u64> {
    r.as_value().map(|v| u64::try_from(v.clone()).unwrap())
}

#[test]
fn mu_histograms_over_f2() {
    let f = Field::prime(2).unwrap();
    let cases: [HistogramCase; 4] = [
        ((1, 1, 1), &[("x", 1), ("x+1", 1)]),
        ((2, 1, 1), &[("1", 2), ("x", 1), ("x+1", 1)]),
        ((2, 2, 1), &[("1,x^2", 3), ("1,x^2+1", 3), ("1,x^2+x", 6), ("1,x^2+x+1", 2), ("x,x", 1), ("x+1,x+1", 1)]),
        (
            (3, 2, 1),
            &[
                ("1,1", 24),
                ("1,x", 12),
                ("1,x+1", 12),
                ("1,x^2", 3),
                ("1,x^2+1", 3),
                ("1,x^2+x", 6),
                ("1,x^2+x+1", 2),
                ("x,x", 1),
                ("x+1,x+1", 1),
            ],
        ),
    ];
    for ((n, k, d), expected) in cases {
        let hist = mu_brute(n, k, d, &f, DEFAULT_BUDGET).unwrap();
        let got: Vec<(String, u64)> = hist.iter().map(|(i, c)| (i.to_string(), *c)).collect();
        let want: Vec<(String, u64)> = expected.iter().map(|(i, c)| (i.to_string(), *c)).collect();
        assert_eq!(got, want, "n={n} k={k} d={d}");
        for (i, c) in expected {
            let closed = mu_closed(n, k, d, &inv(i, &f), &f).unwrap();
            assert_eq!(closed_value(closed), Some(*c), "closed n={n} k={k} d={d} I={i}");
        }
    }
}

#[test]
fn mu_named_examples() {
    let f = Field::prime(2).unwrap();
    let r = mu_closed(2, 1, 1, &inv("1", &f), &f).unwrap();
    assert_eq!(r, CountResult::Value { value: big(2), rule: Rule::SingleColumn });
    assert_eq!(closed_value(mu_closed(2, 2, 1, &inv("1,x^2+x", &f), &f).unwrap()), Some(6));
    assert_eq!(closed_value(mu_closed(2, 1, 2, &inv("x", &f), &f).unwrap()), Some(2));
    let h = mu_brute(2, 1, 2, &f, DEFAULT_BUDGET).unwrap();
    assert_eq!(h.get(&inv("x", &f)), Some(&2));
}

/// `σ(2, 2; τ)` over F_2 for every realizable type of size 4, by enumeration.
const SIGMA_CENSUS_Q2_M2_D2: [(&str, u64); 18] = [
    ("{(1,[1]),(1,[1]),(2,[1])}", 12),
    ("{(1,[1]),(1,[1,1,1])}", 0),
    ("{(1,[1]),(1,[2,1])}", 8),
    ("{(1,[1]),(1,[3])}", 12),
    ("{(1,[1]),(3,[1])}", 14),
    ("{(1,[1,1]),(1,[1,1])}", 6),
    ("{(1,[1,1]),(1,[2])}", 6),
    ("{(1,[1,1]),(2,[1])}", 6),
    ("{(1,[1,1,1,1])}", 0),
    ("{(1,[2]),(1,[2])}", 14),
    ("{(1,[2]),(2,[1])}", 18),
    ("{(1,[2,1,1])}", 0),
    ("{(1,[2,2])}", 16),
    ("{(1,[3,1])}", 8),
    ("{(1,[4])}", 16),
    ("{(2,[1,1])}", 30),
    ("{(2,[2])}", 22),
    ("{(4,[1])}", 20),
];

#[test]
fn sigma_census_matches_oracle_and_closed_forms() {
    let f = Field::prime(2).unwrap();
    let realizable: Vec<SimilarityType> = enumerate_types(4).into_iter().filter(|t| is_realizable(t, 2)).collect();
    assert_eq!(realizable.len(), SIGMA_CENSUS_Q2_M2_D2.len());
    let mut covered = 0;
    for (text, want) in SIGMA_CENSUS_Q2_M2_D2 {
        let tau = SimilarityType::parse(text).unwrap();
        assert!(realizable.contains(&tau), "{text}");
        let a = operator_from_primary(&realize_type(&tau, &f).unwrap(), &f).unwrap();
        assert_eq!(sigma_brute(2, 2, &a, &f, DEFAULT_BUDGET).unwrap(), big(want), "oracle {text}");
        if let Some(v) = closed_value(sigma_type_closed(2, 2, &tau, 2).unwrap()) {
            assert_eq!(v, want, "closed {text}");
            covered += 1;
        }
        assert_eq!(exists_splitting_type(2, 2, &tau).unwrap(), want > 0);
    }
    assert_eq!(covered, 10);
}

#[test]
fn explicit_type_formula_reads_missing_parts_as_multiplicity_zero() {
    let tau = SimilarityType::parse("{(1,[1]),(1,[2,1])}").unwrap();
    let r = sigma_type_closed(2, 2, &tau, 2).unwrap();
    assert_eq!(r, CountResult::Value { value: big(8), rule: Rule::CentralizerRatioType });
}

#[test]
fn sigma_named_examples() {
    let f = Field::prime(2).unwrap();
    let cases = [("x^2+x+1", 3u64), ("1,x^2", 2), ("x,x", 0)];
    for (i, want) in cases {
        let i = inv(i, &f);
        assert_eq!(closed_value(sigma_closed(1, 2, &i, &f).unwrap()), Some(want));
        let a = operator_from_invariants(&i.to_length(2).unwrap(), &f).unwrap();
        assert_eq!(sigma_brute(1, 2, &a, &f, DEFAULT_BUDGET).unwrap(), big(want));
    }
    assert_eq!(sigma_brute(1, 2, &FqMatrix::zeros(2, 2), &f, DEFAULT_BUDGET).unwrap(), big(0));
    let t = |s: &str| SimilarityType::parse(s).unwrap();
    assert_eq!(closed_value(sigma_type_closed(1, 2, &t("{(2,[1])}"), 2).unwrap()), Some(3));
    assert_eq!(closed_value(sigma_type_closed(1, 2, &t("{(1,[2])}"), 2).unwrap()), Some(2));
    assert_eq!(closed_value(sigma_type_closed(1, 2, &t("{(1,[1,1])}"), 2).unwrap()), Some(0));
}

#[test]
fn kappa_named_examples() {
    let f = Field::prime(2).unwrap();
    let frac = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    let i = inv("x^2+x+1", &f);
    let KappaResult::Value { value, .. } = kappa(1, 2, &i, &f).unwrap() else { panic!() };
    assert_eq!(value, frac(3, 4));
    let a = operator_from_invariants(&i, &f).unwrap();
    assert_eq!(kappa_brute(1, 2, &a, &f, DEFAULT_BUDGET).unwrap(), frac(3, 4));
    let z = FqMatrix::zeros(4, 4);
    assert_eq!(kappa_brute(2, 2, &z, &f, DEFAULT_BUDGET).unwrap(), frac(0, 1));
    assert_eq!(kappa_brute(1, 1, &FqMatrix::zeros(1, 1), &f, DEFAULT_BUDGET).unwrap(), frac(1, 2));
}

#[test]
fn existence_examples() {
    let f = Field::prime(2).unwrap();
    assert!(exists_splitting(1, 2, &inv("1,x^2", &f)).unwrap());
    assert!(!exists_splitting(1, 2, &inv("x,x", &f)).unwrap());
    let three = SimilarityType::parse("{(1,[1,1,1])}").unwrap();
    assert!(exists_splitting_type(2, 2, &three).is_err());
}

#[test]
fn centralizers() {
    let f2 = Field::prime(2).unwrap();
    let c = |rows: Vec<Vec<u32>>| centralizer_brute(&FqMatrix::from_rows(rows).unwrap(), &f2, DEFAULT_BUDGET).unwrap();
    assert_eq!(c(vec![vec![1, 0], vec![0, 1]]), big(6));
    assert_eq!(c(vec![vec![0, 0], vec![0, 1]]), big(1));
    assert_eq!(c(vec![vec![0, 1], vec![0, 0]]), big(2));

    let f3 = Field::prime(3).unwrap();
    let by_class = [("1,x^2", 6u64), ("1,x^2+1", 8), ("1,x^2+2", 4), ("x,x", 48), ("x+2,x+2", 48)];
    for (i, want) in by_class {
        assert_eq!(centralizer_order(&inv(i, &f3), &f3).unwrap(), big(want), "{i}");
    }
}

#[test]
fn coprime_pairs() {
    let f2 = Field::prime(2).unwrap();
    let f3 = Field::prime(3).unwrap();
    assert_eq!(coprime_tuple_count(2, 1, 2).unwrap(), big(2));
    assert_eq!(coprime_tuple_brute(2, 1, &f2, DEFAULT_BUDGET).unwrap(), big(2));
    assert_eq!(coprime_tuple_count(2, 1, 3).unwrap(), big(6));
    assert_eq!(coprime_tuple_brute(2, 1, &f3, DEFAULT_BUDGET).unwrap(), big(6));
    // Probability form 1 - q^{1-n} for n = 2, q = 2, over d = 1..4.
    for d in 1..=4usize {
        let count = coprime_tuple_count(2, d, 2).unwrap();
        assert_eq!(count * 2u32, BigUint::from(1u32) << (2 * d));
    }
}

#[test]
fn subspace_counts() {
    let f = Field::prime(2).unwrap();
    assert_eq!(enumerate_subspaces(2, 1, &f).count(), 3);
    assert_eq!(enumerate_subspaces(4, 2, &f).count(), 35);
    assert_eq!(enumerate_subspaces(5, 0, &f).count(), 1);
}

#[test]
fn young_diagram_reduction() {
    let tau = SimilarityType::new(vec![(1, Partition::new(vec![6, 5, 5, 4, 2]).unwrap())]).unwrap();
    let reduced = reduce_type(&tau, 5).unwrap();
    assert_eq!(reduced.blocks()[0].1, Partition::new(vec![4, 3, 3, 2]).unwrap());
}

#[test]
fn unimodular_and_square_cases() {
    let f = Field::prime(2).unwrap();
    for (n, k, d, want) in [(2, 1, 1, 2u64), (2, 1, 2, 8), (3, 1, 1, 6), (3, 2, 1, 24)] {
        let hist = mu_brute(n, k, d, &f, DEFAULT_BUDGET).unwrap();
        let ones = InvariantFactors::ones(k);
        assert_eq!(hist.get(&ones).copied().unwrap_or(0), want, "brute n={n} k={k} d={d}");
        assert_eq!(closed_value(mu_closed(n, k, d, &ones, &f).unwrap()), Some(want));
    }
    for n in 1..=3 {
        assert_eq!(closed_value(mu_closed(n, n, 1, &InvariantFactors::ones(n), &f).unwrap()), Some(0));
    }
}
