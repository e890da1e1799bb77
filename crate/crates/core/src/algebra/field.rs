//! The finite field F_q, q = p^e.
//!
//! Elements are integer codes in `[0, q)`. For an extension field the code
//! `Σ aᵢ pⁱ` stands for the residue `Σ aᵢ tⁱ` modulo the defining polynomial,
//! where `t` is the class of the indeterminate.

use std::fmt;
use std::sync::Arc;

use crate::algebra::factor::{enumerate_monic, is_irreducible};
use crate::algebra::parse::{parse_poly_with_bound, poly_to_string};
use crate::algebra::poly::Poly;
use crate::error::{Error, Result};

/// Largest field order accepted.
pub const MAX_ORDER: u32 = 1 << 16;

/// Fields up to this order get a full addition table.
const ADD_TABLE_MAX: u32 = 256;

/// A finite field together with its arithmetic tables.
#[derive(Clone)]
pub struct Field {
    p: u32,
    e: u32,
    q: u32,
    /// Ascending coefficients over F_p; empty for prime fields.
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    add_table: Option<Vec<u32>>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.modulus == other.modulus
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({self})")
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e == 1 {
            write!(f, "q={}", self.q)
        } else {
            let m = Poly::from_coeffs(self.modulus.clone());
            write!(f, "q={};modulus={}", self.q, poly_to_string(&m))
        }
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` as `p^e`, or `None` if it is not a prime power.
fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1 && is_prime(p)).then_some((p, e))
}

impl Field {
    /// The prime field F_p.
    pub fn prime(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if p > MAX_ORDER {
            return Err(Error::InvalidField(format!("q = {p} exceeds {MAX_ORDER}")));
        }
        let mut field = Field { p, e: 1, q: p, modulus: Vec::new(), exp: Vec::new(), log: Vec::new(), add_table: None };
        field.build_tables();
        Ok(field)
    }

    /// F_{p^e} defined by `modulus` (ascending F_p coefficients, monic, degree e).
    pub fn extension(p: u32, modulus: Vec<u32>) -> Result<Self> {
        let base = Field::prime(p)?;
        let m = Poly::from_coeffs(modulus);
        let e = m
            .degree()
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::InvalidField("modulus must have degree at least one".into()))? as u32;
        if m.coeffs().iter().any(|&c| c >= p) {
            return Err(Error::InvalidField(format!("modulus coefficients must be below {p}")));
        }
        if !m.is_monic() {
            return Err(Error::InvalidField("modulus must be monic".into()));
        }
        if (p as u64).pow(e) > MAX_ORDER as u64 {
            return Err(Error::InvalidField(format!("q = {p}^{e} exceeds {MAX_ORDER}")));
        }
        if !is_irreducible(&m, &base) {
            return Err(Error::InvalidField(format!("modulus {} is reducible over F_{p}", poly_to_string(&m))));
        }
        if e == 1 {
            return Ok(base);
        }
        let mut field = Field {
            p,
            e,
            q: p.pow(e),
            modulus: m.coeffs().to_vec(),
            exp: Vec::new(),
            log: Vec::new(),
            add_table: None,
        };
        field.build_tables();
        Ok(field)
    }

    /// F_q with the lexicographically first monic irreducible modulus.
    pub fn with_order(q: u32) -> Result<Self> {
        let (p, e) = prime_power(q).ok_or_else(|| Error::InvalidField(format!("{q} is not a prime power")))?;
        if q > MAX_ORDER {
            return Err(Error::InvalidField(format!("q = {q} exceeds {MAX_ORDER}")));
        }
        if e == 1 {
            return Field::prime(p);
        }
        let base = Field::prime(p)?;
        let modulus = enumerate_monic(e as usize, &base)
            .find(|f| is_irreducible(f, &base))
            .ok_or_else(|| Error::Internal(format!("no irreducible of degree {e} over F_{p}")))?;
        Field::extension(p, modulus.coeffs().to_vec())
    }

    /// Parses `"q=7"`, `"q=9;modulus=x^2+1"` or a bare order `"9"`.
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if let Ok(q) = spec.parse::<u32>() {
            return Field::with_order(q);
        }
        let mut order = None;
        let mut modulus = None;
        for part in spec.split(';').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value in field spec, got {part:?}")))?;
            match key.trim() {
                "q" => {
                    order = Some(
                        value.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad field order {value:?}")))?,
                    )
                }
                "modulus" => modulus = Some(value.trim().to_string()),
                other => return Err(Error::Parse(format!("unknown field spec key {other:?}"))),
            }
        }
        let q = order.ok_or_else(|| Error::Parse("field spec is missing q=".into()))?;
        match modulus {
            None => Field::with_order(q),
            Some(text) => {
                let (p, e) = prime_power(q).ok_or_else(|| Error::InvalidField(format!("{q} is not a prime power")))?;
                let m = parse_poly_with_bound(&text, p)?;
                if m.degree() != Some(e as usize) {
                    return Err(Error::InvalidField(format!("modulus must have degree {e}")));
                }
                Field::extension(p, m.coeffs().to_vec())
            }
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn is_prime_field(&self) -> bool {
        self.e == 1
    }

    /// Ascending F_p coefficients of the defining polynomial (empty for prime fields).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    fn digits(&self, mut a: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.e as usize);
        for _ in 0..self.e {
            out.push(a % self.p);
            a /= self.p;
        }
        out
    }

    fn undigits(&self, digits: &[u32]) -> u32 {
        digits.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    fn add_digits(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let (mut out, mut place) = (0, 1);
        for _ in 0..self.e {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    /// Residue multiplication without tables.
    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let (da, db) = (self.digits(a), self.digits(b));
        let p = self.p as u64;
        let e = self.e as usize;
        let mut prod = vec![0u64; 2 * e];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for k in (e..2 * e).rev() {
            let c = prod[k];
            if c != 0 {
                for (i, &m) in self.modulus[..e].iter().enumerate() {
                    prod[k - e + i] = (prod[k - e + i] + (p - c) * m as u64) % p;
                }
                prod[k] = 0;
            }
        }
        let digits: Vec<u32> = prod[..e].iter().map(|&c| c as u32).collect();
        self.undigits(&digits)
    }

    fn build_tables(&mut self) {
        let q = self.q;
        if self.e > 1 {
            let order = q - 1;
            let generator = (2..q)
                .find(|&g| {
                    let mut x = 1;
                    for k in 1..=order {
                        x = self.slow_mul(x, g);
                        if x == 1 {
                            return k == order;
                        }
                    }
                    false
                })
                .expect("multiplicative group of a finite field is cyclic");
            self.exp = vec![0; order as usize];
            self.log = vec![0; q as usize];
            let mut x = 1;
            for k in 0..order {
                self.exp[k as usize] = x;
                self.log[x as usize] = k;
                x = self.slow_mul(x, generator);
            }
        }
        if q <= ADD_TABLE_MAX && self.e > 1 && self.p != 2 {
            let mut table = vec![0; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    table[(a * q + b) as usize] = self.add_digits(a, b);
                }
            }
            self.add_table = Some(table);
        }
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.e == 1 {
            let s = a + b;
            if s >= self.p {
                s - self.p
            } else {
                s
            }
        } else if let Some(t) = &self.add_table {
            t[(a * self.q + b) as usize]
        } else {
            self.add_digits(a, b)
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if self.e == 1 {
            if a == 0 {
                0
            } else {
                self.p - a
            }
        } else if self.p == 2 {
            a
        } else {
            let digits: Vec<u32> = self.digits(a).into_iter().map(|d| (self.p - d) % self.p).collect();
            self.undigits(&digits)
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if self.e == 1 {
            ((a as u64 * b as u64) % self.p as u64) as u32
        } else if a == 0 || b == 0 {
            0
        } else {
            let k = (self.log[a as usize] + self.log[b as usize]) % (self.q - 1);
            self.exp[k as usize]
        }
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        if self.e == 1 {
            Ok(self.pow(a, (self.p - 2) as u64))
        } else {
            let k = (self.q - 1 - self.log[a as usize]) % (self.q - 1);
            Ok(self.exp[k as usize])
        }
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: u32, mut n: u64) -> u32 {
        let (mut base, mut acc) = (a, 1);
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    /// The p-th root, i.e. `a^(q/p)`.
    pub fn pth_root(&self, a: u32) -> u32 {
        self.pow(a, (self.q / self.p) as u64)
    }

    /// Checked conversion of a code into this field.
    pub fn element(self: &Arc<Self>, code: u32) -> Result<FieldElement> {
        if code >= self.q {
            return Err(Error::Parse(format!("element code {code} is not below q = {}", self.q)));
        }
        Ok(FieldElement { field: Arc::clone(self), code })
    }
}

/// A field element bound to its field, with checked arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElement {
    field: Arc<Field>,
    code: u32,
}

/// Binary and unary operations accepted by [`field_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
    /// Inverse of the first operand; the second is ignored.
    Inv,
    /// First operand raised to the given power; the second is ignored.
    Pow(u64),
}

impl FieldElement {
    pub fn code(&self) -> u32 {
        self.code
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.field, &other.field) || self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn with(&self, code: u32) -> Self {
        FieldElement { field: Arc::clone(&self.field), code }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.with(self.field.add(self.code, other.code)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.with(self.field.sub(self.code, other.code)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.with(self.field.mul(self.code, other.code)))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.with(self.field.div(self.code, other.code)?))
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(self.with(self.field.inv(self.code)?))
    }

    pub fn pow(&self, n: u64) -> Self {
        self.with(self.field.pow(self.code, n))
    }
}

/// Applies `op` to `a` and `b`, checking that both live in the same field.
pub fn field_arith(a: &FieldElement, b: &FieldElement, op: FieldOp) -> Result<FieldElement> {
    a.same_field(b)?;
    match op {
        FieldOp::Add => a.add(b),
        FieldOp::Sub => a.sub(b),
        FieldOp::Mul => a.mul(b),
        FieldOp::Div => a.div(b),
        FieldOp::Inv => a.inv(),
        FieldOp::Pow(n) => Ok(a.pow(n)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn char_two_addition() {
        let f = Arc::new(Field::prime(2).unwrap());
        let one = f.element(1).unwrap();
        assert_eq!(field_arith(&one, &one, FieldOp::Add).unwrap().code(), 0);
    }

    #[test]
    fn f4_generator_squared() {
        let f = Arc::new(Field::with_order(4).unwrap());
        assert_eq!(f.modulus(), &[1, 1, 1]);
        let t = f.element(2).unwrap();
        assert_eq!(t.mul(&t).unwrap().code(), 3);
    }

    #[test]
    fn f3_inverse_of_two() {
        let f = Arc::new(Field::prime(3).unwrap());
        let two = f.element(2).unwrap();
        assert_eq!(two.inv().unwrap().code(), 2);
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let f = Arc::new(Field::prime(5).unwrap());
        let (a, z) = (f.element(3).unwrap(), f.element(0).unwrap());
        assert_eq!(a.div(&z), Err(Error::DivisionByZero));
        assert_eq!(z.inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn mixed_fields_are_rejected() {
        let f2 = Arc::new(Field::prime(2).unwrap());
        let f3 = Arc::new(Field::prime(3).unwrap());
        let a = f2.element(1).unwrap();
        let b = f3.element(1).unwrap();
        assert_eq!(field_arith(&a, &b, FieldOp::Mul), Err(Error::FieldMismatch));
    }

    #[test]
    fn construction_checks() {
        assert!(Field::prime(4).is_err());
        assert!(Field::with_order(6).is_err());
        assert!(Field::with_order(1 << 17).is_err());
        // x^2 + 1 = (x+1)^2 over F_2
        assert!(Field::extension(2, vec![1, 0, 1]).is_err());
        assert!(Field::extension(3, vec![1, 0, 1]).is_ok());
    }

    #[test]
    fn parse_field_specs() {
        let f9 = Field::parse("q=9;modulus=x^2+1").unwrap();
        assert_eq!((f9.p(), f9.e(), f9.q()), (3, 2, 9));
        assert_eq!(f9.to_string(), "q=9;modulus=x^2+1");
        assert_eq!(Field::parse("q=7").unwrap().q(), 7);
        assert_eq!(Field::parse("9").unwrap(), f9);
        assert!(Field::parse("q=9;modulus=x^2+2*x+1").is_err());
        assert!(Field::parse("q=9;modulus=x^3+x+1").is_err());
        assert!(Field::parse("modulus=x").is_err());
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for q in [2, 3, 4, 5, 8, 9, 16, 25, 27] {
            let f = Field::with_order(q).unwrap();
            for a in 0..q {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in 0..q {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.mul(a, b), f.slow_mul_checked(a, b));
                    for c in [0, 1, q - 1] {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
            // Fermat: a^q = a
            for a in 0..q {
                assert_eq!(f.pow(a, q as u64), a);
            }
        }
    }

    impl Field {
        fn slow_mul_checked(&self, a: u32, b: u32) -> u32 {
            if self.e == 1 {
                (a * b) % self.p
            } else {
                self.slow_mul(a, b)
            }
        }
    }
}
