use std::fmt;

use serde_json::{json, Value};
use splitcount::algebra::{Field, FqMatrix, Poly};
use splitcount::formulas::{
    coprime_tuple_count, exists_splitting, exists_splitting_type, kappa, kappa_type, mu_closed, normalize_sigma_input,
    sigma_closed, sigma_type_closed, CountResult, KappaResult, Rule,
};
use splitcount::oracle::{
    centralizer_brute, coprime_tuple_brute, kappa_brute, mu_brute, operator_from_invariants, operator_from_primary,
    sigma_brute,
};
use splitcount::polymat::{invariant_factors, smith_normal_form, PolyMatrix};
use splitcount::simclass::{
    centralizer_order, centralizer_order_type, enumerate_classes, enumerate_types, invariants_to_primary,
    is_realizable, primary_to_invariants, realize_type, type_of, InvariantFactors, SimilarityType,
};
use splitcount::verify::{run_suites, Report, VerifyConfig, SUITES};
use splitcount::Error;

use crate::output::{csv_line, render_table, render_value, Row};
use crate::{ClassArgs, Cli, Command, FieldArgs, Method, OutputFormat, TableCommand};

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    NotCovered(String),
    Mismatch(String),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::BudgetExceeded { .. }) => 3,
            CliError::Core(Error::Internal(_)) | CliError::Mismatch(_) => 1,
            CliError::Core(_) | CliError::Io(_) => 2,
            CliError::NotCovered(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::NotCovered(r) => write!(f, "no closed form covers the residual case {r}"),
            CliError::Mismatch(r) => write!(f, "{r}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn field(args: &FieldArgs) -> CliResult<Field> {
    let spec = match &args.modulus {
        Some(m) => format!("q={};modulus={m}", args.q),
        None => args.q.clone(),
    };
    Ok(Field::parse(&spec)?)
}

enum Class {
    Invariants(InvariantFactors),
    Type(SimilarityType),
}

fn class(args: &ClassArgs, f: &Field) -> CliResult<Class> {
    match (&args.invariants, &args.type_) {
        (Some(i), _) => Ok(Class::Invariants(InvariantFactors::parse(i, f)?)),
        (None, Some(t)) => Ok(Class::Type(SimilarityType::parse(t)?)),
        (None, None) => Err(Error::Parse("give --invariants or --type".into()).into()),
    }
}

/// A representative operator with `N = md`.
fn representative(m: usize, d: usize, class: &Class, f: &Field) -> CliResult<FqMatrix> {
    match class {
        Class::Invariants(inv) => Ok(operator_from_invariants(&normalize_sigma_input(m, d, inv)?, f)?),
        Class::Type(tau) => {
            if tau.size() != m * d {
                return Err(
                    Error::SizeMismatch(format!("type {tau} has size {} but md = {}", tau.size(), m * d)).into()
                );
            }
            Ok(operator_from_primary(&realize_type(tau, f)?, f)?)
        }
    }
}

fn base_row(f: &Field) -> Row {
    Row { q: f.q(), field: f.to_string(), ..Default::default() }
}

fn class_row(f: &Field, class: &Class) -> Row {
    let mut row = base_row(f);
    match class {
        Class::Invariants(inv) => row.invariants = Some(inv.to_string()),
        Class::Type(tau) => row.ty = Some(tau.to_string()),
    }
    row
}

/// Closed form, oracle, or closed with oracle fallback.
fn resolve<T: ToString>(
    method: Method,
    closed: impl FnOnce() -> CliResult<std::result::Result<(T, Rule), String>>,
    oracle: impl FnOnce() -> CliResult<T>,
) -> CliResult<(String, String)> {
    if method != Method::Oracle {
        match closed()? {
            Ok((v, rule)) => return Ok((v.to_string(), rule.to_string())),
            Err(residual) if method == Method::Closed => return Err(CliError::NotCovered(residual)),
            Err(_) => {}
        }
    }
    Ok((oracle()?.to_string(), Rule::Oracle.to_string()))
}

fn from_count(r: CountResult) -> std::result::Result<(num_bigint::BigUint, Rule), String> {
    match r {
        CountResult::Value { value, rule } => Ok((value, rule)),
        CountResult::NotCovered { residual } => Err(residual),
    }
}

pub fn run(cli: &Cli) -> CliResult<String> {
    let fmt = cli.output;
    let budget = cli.budget;
    match &cli.command {
        Command::Snf { field: fa, matrix, file, witnesses } => {
            let f = field(fa)?;
            let text = match (matrix, file) {
                (Some(m), _) => m.clone(),
                (None, Some(path)) => read_matrix_file(path)?,
                (None, None) => return Err(Error::Parse("give --matrix or --file".into()).into()),
            };
            let p = PolyMatrix::parse(&text, &f)?;
            Ok(render_snf(&p, &f, *witnesses, fmt))
        }
        Command::Mu { field: fa, n, k, d, invariants, method } => {
            let f = field(fa)?;
            let inv = InvariantFactors::parse(invariants, &f)?;
            let (n, k, d) = (*n, *k, *d);
            let (value, rule) = resolve(
                *method,
                || Ok(from_count(mu_closed(n, k, d, &inv, &f)?)),
                || {
                    let key = inv.to_length(k)?;
                    if key.degree() > k * d {
                        return Err(Error::ImpossibleInvariants(format!("deg {key} exceeds kd = {}", k * d)).into());
                    }
                    Ok(num_bigint::BigUint::from(mu_brute(n, k, d, &f, budget)?.get(&key).copied().unwrap_or(0)))
                },
            )?;
            let row = Row {
                n: Some(n),
                k: Some(k),
                d: Some(d),
                invariants: Some(inv.to_string()),
                value,
                rule,
                ..base_row(&f)
            };
            Ok(render_value("mu", &row, fmt))
        }
        Command::Sigma { field: fa, m, d, class: ca, method } => {
            let f = field(fa)?;
            let c = class(ca, &f)?;
            let (m, d) = (*m, *d);
            let (value, rule) = resolve(
                *method,
                || {
                    Ok(from_count(match &c {
                        Class::Invariants(inv) => sigma_closed(m, d, inv, &f)?,
                        Class::Type(tau) => sigma_type_closed(m, d, tau, f.q())?,
                    }))
                },
                || Ok(sigma_brute(m, d, &representative(m, d, &c, &f)?, &f, budget)?),
            )?;
            let row = Row { m: Some(m), d: Some(d), value, rule, ..class_row(&f, &c) };
            Ok(render_value("sigma", &row, fmt))
        }
        Command::Kappa { field: fa, m, d, class: ca, method } => {
            let f = field(fa)?;
            let c = class(ca, &f)?;
            let (m, d) = (*m, *d);
            let (value, rule) = resolve(
                *method,
                || {
                    let r = match &c {
                        Class::Invariants(inv) => kappa(m, d, inv, &f)?,
                        Class::Type(tau) => kappa_type(m, d, tau, f.q())?,
                    };
                    Ok(match r {
                        KappaResult::Value { value, rule } => Ok((value, rule)),
                        KappaResult::NotCovered { residual } => Err(residual),
                    })
                },
                || Ok(kappa_brute(m, d, &representative(m, d, &c, &f)?, &f, budget)?),
            )?;
            let row = Row { m: Some(m), d: Some(d), value, rule, ..class_row(&f, &c) };
            Ok(render_value("kappa", &row, fmt))
        }
        Command::Exists { field: fa, m, d, class: ca, method } => {
            let f = field(fa)?;
            let c = class(ca, &f)?;
            let (m, d) = (*m, *d);
            let (value, rule) = resolve(
                *method,
                || {
                    Ok(Ok(match &c {
                        Class::Invariants(inv) => (exists_splitting(m, d, inv)?, Rule::ExistenceInvariants),
                        Class::Type(tau) => (exists_splitting_type(m, d, tau)?, Rule::ExistenceType),
                    }))
                },
                || Ok(sigma_brute(m, d, &representative(m, d, &c, &f)?, &f, budget)? > 0u32.into()),
            )?;
            let row = Row { m: Some(m), d: Some(d), value, rule, ..class_row(&f, &c) };
            Ok(render_value("exists", &row, fmt))
        }
        Command::Centralizer { field: fa, invariants, type_, matrix, method } => {
            let f = field(fa)?;
            let mut row = base_row(&f);
            let (value, rule) = if let Some(text) = matrix {
                let a = FqMatrix::parse(text, &f)?;
                if !a.is_square() {
                    return Err(Error::DimensionMismatch(format!("{}x{} is not square", a.rows(), a.cols())).into());
                }
                let inv = invariant_factors(&PolyMatrix::char_matrix(&a, &f)?, &f)?;
                row.n = Some(a.rows());
                row.invariants = Some(inv.to_string());
                resolve(
                    *method,
                    || Ok(Ok((centralizer_order(&inv, &f)?, Rule::CentralizerFormula))),
                    || Ok(centralizer_brute(&a, &f, budget)?),
                )?
            } else if let Some(text) = type_ {
                let tau = SimilarityType::parse(text)?;
                row.n = Some(tau.size());
                row.ty = Some(tau.to_string());
                resolve(
                    *method,
                    || Ok(Ok((centralizer_order_type(&tau, f.q())?, Rule::CentralizerFormula))),
                    || Ok(centralizer_brute(&operator_from_primary(&realize_type(&tau, &f)?, &f)?, &f, budget)?),
                )?
            } else if let Some(text) = invariants {
                let inv = InvariantFactors::parse(text, &f)?;
                row.n = Some(inv.degree());
                row.invariants = Some(inv.to_string());
                resolve(
                    *method,
                    || Ok(Ok((centralizer_order(&inv, &f)?, Rule::CentralizerFormula))),
                    || Ok(centralizer_brute(&operator_from_invariants(&inv, &f)?, &f, budget)?),
                )?
            } else {
                return Err(Error::Parse("give --invariants, --type or --matrix".into()).into());
            };
            row.value = value;
            row.rule = rule;
            Ok(render_value("centralizer", &row, fmt))
        }
        Command::Coprime { field: fa, n, d, method } => {
            let f = field(fa)?;
            let (n, d) = (*n, *d);
            let (value, rule) = resolve(
                *method,
                || Ok(Ok((coprime_tuple_count(n, d, f.q())?, Rule::CoprimeTuples))),
                || {
                    coprime_tuple_count(n, d, f.q())?;
                    Ok(coprime_tuple_brute(n, d, &f, budget)?)
                },
            )?;
            let row = Row { n: Some(n), d: Some(d), value, rule, ..base_row(&f) };
            Ok(render_value("coprime", &row, fmt))
        }
        Command::Table(t) => run_table(t, budget, fmt),
        Command::Verify { q, max_md, suite, samples, exhaustive_limit, list } => {
            if *list {
                return Ok(SUITES.iter().map(|s| format!("{s}\n")).collect());
            }
            let cfg = VerifyConfig {
                fields: q.clone(),
                max_md: *max_md,
                budget,
                exhaustive_limit: *exhaustive_limit,
                samples: *samples,
                seed: cli.seed,
            };
            let names: Vec<&str> =
                if suite.is_empty() { SUITES.to_vec() } else { suite.iter().map(String::as_str).collect() };
            let report = run_suites(&names, &cfg)?;
            let text = render_report(&report, fmt);
            if report.passed() {
                Ok(text)
            } else {
                Err(CliError::Mismatch(text))
            }
        }
    }
}

fn run_table(t: &TableCommand, budget: u64, fmt: OutputFormat) -> CliResult<String> {
    match t {
        TableCommand::Mu { field: fa, n, k, d, method } => {
            let f = field(fa)?;
            let (n, k, d) = (*n, *k, *d);
            let hist = mu_brute(n, k, d, &f, budget)?;
            let mut rows = Vec::new();
            for (inv, count) in &hist {
                let (value, rule) = match (method, from_count(mu_closed(n, k, d, inv, &f)?)) {
                    (Method::Oracle, _) | (Method::Auto, Err(_)) => (count.to_string(), Rule::Oracle.to_string()),
                    (_, Ok((v, rule))) => (v.to_string(), rule.to_string()),
                    (Method::Closed, Err(_)) => (String::new(), "not-covered".to_string()),
                };
                rows.push(Row {
                    n: Some(n),
                    k: Some(k),
                    d: Some(d),
                    invariants: Some(inv.to_string()),
                    value,
                    rule,
                    ..base_row(&f)
                });
            }
            Ok(render_table("table-mu", &rows, fmt))
        }
        TableCommand::Sigma { field: fa, m, d, method } => {
            let f = field(fa)?;
            let (m, d) = (*m, *d);
            if m == 0 || d == 0 {
                return Err(Error::DimensionMismatch(format!("need m, d >= 1, got m={m}, d={d}")).into());
            }
            let mut rows = Vec::new();
            for tau in enumerate_types(m * d).into_iter().filter(|t| is_realizable(t, f.q())) {
                let pd = realize_type(&tau, &f)?;
                let c = Class::Type(tau.clone());
                let (value, rule) = match resolve(
                    *method,
                    || Ok(from_count(sigma_type_closed(m, d, &tau, f.q())?)),
                    || Ok(sigma_brute(m, d, &operator_from_primary(&pd, &f)?, &f, budget)?),
                ) {
                    Ok(v) => v,
                    Err(CliError::NotCovered(_)) => (String::new(), "not-covered".to_string()),
                    Err(e) => return Err(e),
                };
                let inv = primary_to_invariants(&pd, &f)?;
                rows.push(Row {
                    m: Some(m),
                    d: Some(d),
                    invariants: Some(inv.to_string()),
                    value,
                    rule,
                    ..class_row(&f, &c)
                });
            }
            Ok(render_table("table-sigma", &rows, fmt))
        }
        TableCommand::Centralizer { field: fa, n, method } => {
            let f = field(fa)?;
            let mut rows = Vec::new();
            for inv in enumerate_classes(*n, &f) {
                let tau = type_of(&invariants_to_primary(&inv, &f)?);
                let (value, rule) = resolve(
                    *method,
                    || Ok(Ok((centralizer_order(&inv, &f)?, Rule::CentralizerFormula))),
                    || Ok(centralizer_brute(&operator_from_invariants(&inv, &f)?, &f, budget)?),
                )?;
                rows.push(Row {
                    n: Some(*n),
                    invariants: Some(inv.to_string()),
                    ty: Some(tau.to_string()),
                    value,
                    rule,
                    ..base_row(&f)
                });
            }
            Ok(render_table("table-centralizer", &rows, fmt))
        }
    }
}

fn read_matrix_file(path: &std::path::Path) -> CliResult<String> {
    let text = std::fs::read_to_string(path).map_err(CliError::Io)?;
    let rows: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
    Ok(rows.join(";"))
}

fn codes(p: &Poly) -> Value {
    json!(p.coeffs())
}

fn matrix_codes(m: &PolyMatrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| Value::Array(r.iter().map(codes).collect())).collect())
}

fn render_snf(p: &PolyMatrix, f: &Field, witnesses: bool, fmt: OutputFormat) -> String {
    let snf = smith_normal_form(p, f, witnesses);
    let diag: Vec<String> = snf.diagonal.iter().map(Poly::to_string).collect();
    match fmt {
        OutputFormat::Text => {
            let mut out = format!("diag: {}\n", diag.join(","));
            if let (Some(a), Some(b)) = (&snf.left, &snf.right) {
                out.push_str(&format!("A: {a}\nB: {b}\n"));
            }
            out
        }
        OutputFormat::Json => {
            let v = json!({
                "field": f.to_string(),
                "diag": snf.diagonal.iter().map(codes).collect::<Vec<_>>(),
                "diag_text": diag.join(","),
                "A": snf.left.as_ref().map(matrix_codes),
                "B": snf.right.as_ref().map(matrix_codes),
            });
            format!("{v}\n")
        }
        OutputFormat::Csv => {
            let mut out = csv_line(&["index", "diag"]);
            for (i, d) in diag.iter().enumerate() {
                out.push_str(&csv_line(&[(i + 1).to_string(), d.clone()]));
            }
            out
        }
    }
}

fn render_report(report: &Report, fmt: OutputFormat) -> String {
    match fmt {
        OutputFormat::Text => format!("{report}\n"),
        OutputFormat::Json => {
            let suites: Vec<Value> = report
                .suites
                .iter()
                .map(|s| {
                    json!({
                        "name": s.name,
                        "checks": s.checks,
                        "passed": s.passed(),
                        "mismatches": s.mismatches.iter().map(|m| json!({
                            "case": m.case, "expected": m.expected, "actual": m.actual,
                        })).collect::<Vec<_>>(),
                        "skipped": s.skipped,
                    })
                })
                .collect();
            format!("{}\n", json!({ "passed": report.passed(), "checks": report.checks(), "suites": suites }))
        }
        OutputFormat::Csv => {
            let mut out = csv_line(&["suite", "checks", "mismatches", "skipped"]);
            for s in &report.suites {
                out.push_str(&csv_line(&[
                    s.name.clone(),
                    s.checks.to_string(),
                    s.mismatches.len().to_string(),
                    s.skipped.len().to_string(),
                ]));
            }
            out
        }
    }
}
