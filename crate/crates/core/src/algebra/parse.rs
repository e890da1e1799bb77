//! Text grammar for polynomials: terms `c*x^k`, `x^k`, `c*x`, `x`, `c` joined
//! by `+`, with coefficients written as element codes (`3*x^2+2*x+1` over F_4).

use crate::algebra::field::Field;
use crate::algebra::poly::Poly;
use crate::error::{Error, Result};

/// Parses a polynomial whose coefficient codes must lie below `f.q()`.
pub fn parse_poly(text: &str, f: &Field) -> Result<Poly> {
    parse_poly_with_bound(text, f.q())
}

/// Parses a polynomial whose coefficient codes must lie below `bound`.
pub fn parse_poly_with_bound(text: &str, bound: u32) -> Result<Poly> {
    let text: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if text.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut coeffs: Vec<u32> = Vec::new();
    let mut seen: Vec<usize> = Vec::new();
    for term in text.split('+') {
        let (c, k) = parse_term(term)?;
        if c >= bound {
            return Err(Error::Parse(format!("coefficient code {c} is not below {bound}")));
        }
        if seen.contains(&k) {
            return Err(Error::Parse(format!("repeated term of degree {k} in {text:?}")));
        }
        seen.push(k);
        if coeffs.len() <= k {
            coeffs.resize(k + 1, 0);
        }
        coeffs[k] = c;
    }
    Ok(Poly::from_coeffs(coeffs))
}

fn parse_code(s: &str) -> Result<u32> {
    s.parse::<u32>().map_err(|_| Error::Parse(format!("bad coefficient {s:?}")))
}

fn parse_term(term: &str) -> Result<(u32, usize)> {
    if term.is_empty() {
        return Err(Error::Parse("empty term".into()));
    }
    let (coef, mono) = match term.split_once('*') {
        Some((c, m)) => (parse_code(c)?, Some(m)),
        None if term.starts_with('x') => (1, Some(term)),
        None => (parse_code(term)?, None),
    };
    let Some(mono) = mono else {
        return Ok((coef, 0));
    };
    let rest = mono.strip_prefix('x').ok_or_else(|| Error::Parse(format!("bad term {term:?}")))?;
    let k = if rest.is_empty() {
        1
    } else {
        let e = rest.strip_prefix('^').ok_or_else(|| Error::Parse(format!("bad term {term:?}")))?;
        e.parse::<usize>().map_err(|_| Error::Parse(format!("bad exponent in {term:?}")))?
    };
    Ok((coef, k))
}

/// Renders in the same grammar, highest degree first; zero renders as `0`.
pub fn poly_to_string(p: &Poly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut terms = Vec::new();
    for (k, &c) in p.coeffs().iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let term = match (k, c) {
            (0, c) => c.to_string(),
            (1, 1) => "x".to_string(),
            (1, c) => format!("{c}*x"),
            (k, 1) => format!("x^{k}"),
            (k, c) => format!("{c}*x^{k}"),
        };
        terms.push(term);
    }
    terms.join("+")
}

/// Parses a comma-separated list of polynomials, e.g. `"x,x^2+x"`.
pub fn parse_poly_list(text: &str, f: &Field) -> Result<Vec<Poly>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(|s| parse_poly(s, f)).collect()
}
