//! Exact arithmetic in the real quadratic field ℚ(√2).
//!
//! A [`Quad`] is `rat + coef2·√2` with both parts arbitrary-precision
//! rationals. Since √2 is irrational the representation is unique, so
//! structural equality is numeric equality.
//!
//! The textual form of a component is
//!
//! ```text
//! component := term (('+' | '-') term)?
//! term      := rational 'r2'? | 'r2'
//! rational  := '-'? integer ('/' positive-integer)?
//! ```
//!
//! where a bare `r2` means `1·√2`. [`Quad`]'s `Display` emits the canonical
//! token (`0`, `-3/2`, `1r2`, `-1r2`, `1+1r2`, `1/2-3r2`), which
//! [`Quad::from_str`](std::str::FromStr) reads back.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// `rat + coef2·√2` with rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Quad {
    rat: BigRational,
    coef2: BigRational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
}

/// Why a component token was rejected. `offset` is the byte offset inside
/// the token where the problem was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuadParseError {
    #[error("irrational `{found}` lies outside Q(sqrt 2); only `r2` is supported")]
    Irrational { found: String, offset: usize },
    #[error("malformed number: {reason}")]
    Malformed { reason: &'static str, offset: usize },
}

impl QuadParseError {
    pub fn offset(&self) -> usize {
        match self {
            QuadParseError::Irrational { offset, .. } | QuadParseError::Malformed { offset, .. } => *offset,
        }
    }
}

/// The four field operations, for callers that select one at run time.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Applies `op` to `a` and `b` exactly.
pub fn quad_arith(a: &Quad, b: &Quad, op: ArithOp) -> Result<Quad, ArithError> {
    match op {
        ArithOp::Add => Ok(a + b),
        ArithOp::Sub => Ok(a - b),
        ArithOp::Mul => Ok(a * b),
        ArithOp::Div => a.checked_div(b),
    }
}

impl Quad {
    pub fn new(rat: BigRational, coef2: BigRational) -> Self {
        Quad { rat, coef2 }
    }

    /// `num/den + num2/den2 · √2` from machine integers. Panics on a zero
    /// denominator.
    pub fn from_ratios(num: i64, den: i64, num2: i64, den2: i64) -> Self {
        Quad { rat: BigRational::new(num.into(), den.into()), coef2: BigRational::new(num2.into(), den2.into()) }
    }

    /// `a + b√2` with integer parts.
    pub fn from_ints(a: i64, b: i64) -> Self {
        Quad { rat: BigRational::from_integer(a.into()), coef2: BigRational::from_integer(b.into()) }
    }

    pub fn integer(a: i64) -> Self {
        Self::from_ints(a, 0)
    }

    pub fn sqrt2() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn zero() -> Self {
        Quad::default()
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rat
    }

    pub fn sqrt2_part(&self) -> &BigRational {
        &self.coef2
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.coef2.is_zero()
    }

    /// `a - b√2`.
    pub fn conjugate(&self) -> Quad {
        Quad { rat: self.rat.clone(), coef2: -self.coef2.clone() }
    }

    /// Field norm `a² - 2b²`; zero only for zero.
    pub fn norm(&self) -> BigRational {
        let two = BigRational::from_integer(BigInt::from(2));
        &self.rat * &self.rat - two * &self.coef2 * &self.coef2
    }

    pub fn inverse(&self) -> Result<Quad, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let n = self.norm();
        let c = self.conjugate();
        Ok(Quad { rat: c.rat / &n, coef2: c.coef2 / n })
    }

    pub fn checked_div(&self, rhs: &Quad) -> Result<Quad, ArithError> {
        Ok(self * &rhs.inverse()?)
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.rat.to_f64().unwrap_or(f64::NAN);
        let b = self.coef2.to_f64().unwrap_or(f64::NAN);
        a + b * std::f64::consts::SQRT_2
    }
}

impl<'a> Add<&'a Quad> for &'a Quad {
    type Output = Quad;
    fn add(self, rhs: &'a Quad) -> Quad {
        Quad { rat: &self.rat + &rhs.rat, coef2: &self.coef2 + &rhs.coef2 }
    }
}

impl<'a> Sub<&'a Quad> for &'a Quad {
    type Output = Quad;
    fn sub(self, rhs: &'a Quad) -> Quad {
        Quad { rat: &self.rat - &rhs.rat, coef2: &self.coef2 - &rhs.coef2 }
    }
}

impl<'a> Mul<&'a Quad> for &'a Quad {
    type Output = Quad;
    fn mul(self, rhs: &'a Quad) -> Quad {
        // (a + b√2)(c + d√2) = (ac + 2bd) + (ad + bc)√2
        let two = BigRational::from_integer(BigInt::from(2));
        Quad {
            rat: &self.rat * &rhs.rat + two * &self.coef2 * &rhs.coef2,
            coef2: &self.rat * &rhs.coef2 + &self.coef2 * &rhs.rat,
        }
    }
}

impl Neg for &Quad {
    type Output = Quad;
    fn neg(self) -> Quad {
        Quad { rat: -self.rat.clone(), coef2: -self.coef2.clone() }
    }
}

impl Neg for Quad {
    type Output = Quad;
    fn neg(self) -> Quad {
        Quad { rat: -self.rat, coef2: -self.coef2 }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Quad> for Quad {
            type Output = Quad;
            fn $m(self, rhs: Quad) -> Quad { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Quad> for Quad {
            type Output = Quad;
            fn $m(self, rhs: &'a Quad) -> Quad { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl From<i64> for Quad {
    fn from(v: i64) -> Self {
        Quad::integer(v)
    }
}

impl fmt::Display for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.rat.is_zero(), self.coef2.is_zero()) {
            (true, true) => f.write_str("0"),
            (false, true) => write!(f, "{}", self.rat),
            (true, false) => write!(f, "{}r2", self.coef2),
            (false, false) => {
                let sign = if self.coef2.is_negative() { '-' } else { '+' };
                write!(f, "{}{}{}r2", self.rat, sign, self.coef2.abs())
            }
        }
    }
}

impl serde::Serialize for Quad {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl FromStr for Quad {
    type Err = QuadParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(err) = find_foreign_irrational(s) {
            return Err(err);
        }
        let mut cur = Cursor { src: s.as_bytes(), pos: 0 };
        let first = cur.term()?;
        if cur.at_end() {
            return Ok(first);
        }
        let negate = match cur.peek() {
            Some(b'+') => false,
            Some(b'-') => true,
            _ => return Err(cur.malformed("unexpected character")),
        };
        cur.pos += 1;
        let second = cur.term()?;
        if !cur.at_end() {
            return Err(cur.malformed("trailing characters after second term"));
        }
        Ok(if negate { first - second } else { first + second })
    }
}

/// Spots things like `r3`, `sqrt5` or `√7` so they get a dedicated error.
fn find_foreign_irrational(s: &str) -> Option<QuadParseError> {
    if let Some(i) = s.find('√') {
        return Some(QuadParseError::Irrational { found: s[i..].to_string(), offset: i });
    }
    if let Some(i) = s.find("sqrt") {
        return Some(QuadParseError::Irrational { found: s[i..].to_string(), offset: i });
    }
    let bytes = s.as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        if b != b'r' {
            continue;
        }
        let digits: String = s[i + 1..].chars().take_while(|c| c.is_ascii_digit()).collect();
        if !digits.is_empty() && digits != "2" {
            return Some(QuadParseError::Irrational { found: format!("r{digits}"), offset: i });
        }
    }
    None
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn malformed(&self, reason: &'static str) -> QuadParseError {
        QuadParseError::Malformed { reason, offset: self.pos }
    }

    fn eat_r2(&mut self) -> bool {
        if self.src[self.pos..].starts_with(b"r2") {
            self.pos += 2;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<BigInt, QuadParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(QuadParseError::Malformed { reason: "expected digits", offset: start });
        }
        // ASCII digits only, so both conversions succeed.
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("decimal digits"))
    }

    fn term(&mut self) -> Result<Quad, QuadParseError> {
        if self.eat_r2() {
            return Ok(Quad::sqrt2());
        }
        let negative = self.peek() == Some(b'-');
        if negative {
            self.pos += 1;
        }
        let mut num = self.digits()?;
        if negative {
            num = -num;
        }
        let mut den = BigInt::one();
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let at = self.pos;
            den = self.digits()?;
            if den.is_zero() {
                return Err(QuadParseError::Malformed { reason: "zero denominator", offset: at });
            }
        }
        let value = BigRational::new(num, den);
        if self.eat_r2() {
            Ok(Quad { rat: BigRational::zero(), coef2: value })
        } else {
            Ok(Quad { rat: value, coef2: BigRational::zero() })
        }
    }
}
