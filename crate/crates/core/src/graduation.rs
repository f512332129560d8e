//! The class of admissible counts and graduations.
//!
//! An [`MValue`] is either an exact non-negative integer or a symbolic term
//! built from `w` (the size of the naturals) with `2^x`, `+` and `*`.
//! Constructors keep terms in normal form: finite children are folded,
//! `0` is the only zero and `1` the only multiplicative identity. Nothing
//! beyond that is simplified, so `w + w` stays `(w+w)`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest finite exponent `n` for which `2^n` is materialized.
pub const DEFAULT_EXPONENT_BOUND: u64 = 1_000_000;

/// Outcome of comparing two values that may not be comparable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Comparison {
    Less,
    Equal,
    Greater,
    Incomparable,
}

impl Comparison {
    pub fn reverse(self) -> Self {
        match self {
            Comparison::Less => Comparison::Greater,
            Comparison::Greater => Comparison::Less,
            c => c,
        }
    }

    pub fn is_le(self) -> bool {
        matches!(self, Comparison::Less | Comparison::Equal)
    }
}

impl From<Ordering> for Comparison {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Less => Comparison::Less,
            Ordering::Equal => Comparison::Equal,
            Ordering::Greater => Comparison::Greater,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MValue {
    Finite(BigUint),
    Omega,
    Pow2(Box<MValue>),
    Sum(Box<MValue>, Box<MValue>),
    Prod(Box<MValue>, Box<MValue>),
}

impl MValue {
    pub fn zero() -> Self {
        MValue::Finite(BigUint::zero())
    }

    pub fn one() -> Self {
        MValue::Finite(BigUint::one())
    }

    pub fn finite(n: impl Into<BigUint>) -> Self {
        MValue::Finite(n.into())
    }

    /// `k`-fold power tower over `w`: `tower(0) = w`, `tower(1) = 2^w`, ...
    pub fn tower(k: usize) -> Self {
        (0..k).fold(MValue::Omega, |acc, _| MValue::Pow2(Box::new(acc)))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, MValue::Finite(_))
    }

    pub fn as_finite(&self) -> Option<&BigUint> {
        match self {
            MValue::Finite(n) => Some(n),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, MValue::Finite(n) if n.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, MValue::Finite(n) if n.is_one())
    }

    pub fn add(&self, other: &MValue) -> MValue {
        match (self, other) {
            (MValue::Finite(a), MValue::Finite(b)) => MValue::Finite(a + b),
            (a, b) if a.is_zero() => b.clone(),
            (a, b) if b.is_zero() => a.clone(),
            (a, b @ MValue::Finite(_)) => MValue::Sum(Box::new(b.clone()), Box::new(a.clone())),
            (a, b) => MValue::Sum(Box::new(a.clone()), Box::new(b.clone())),
        }
    }

    /// Partial subtraction: both operands finite and `other <= self`.
    pub fn checked_sub(&self, other: &MValue) -> Result<MValue> {
        match (self, other) {
            (MValue::Finite(a), MValue::Finite(b)) => {
                if b > a {
                    Err(Error::Underflow {
                        minuend: a.to_string(),
                        subtrahend: b.to_string(),
                    })
                } else {
                    Ok(MValue::Finite(a - b))
                }
            }
            _ => Err(Error::SymbolicUnsupported("subtraction")),
        }
    }

    pub fn mul(&self, other: &MValue) -> MValue {
        match (self, other) {
            (MValue::Finite(a), MValue::Finite(b)) => MValue::Finite(a * b),
            (a, _) | (_, a) if a.is_zero() => MValue::zero(),
            (a, b) if a.is_one() => b.clone(),
            (a, b) if b.is_one() => a.clone(),
            (a, b @ MValue::Finite(_)) => MValue::Prod(Box::new(b.clone()), Box::new(a.clone())),
            (a, b) => MValue::Prod(Box::new(a.clone()), Box::new(b.clone())),
        }
    }

    pub fn pow2(&self) -> Result<MValue> {
        self.pow2_bounded(DEFAULT_EXPONENT_BOUND)
    }

    pub fn pow2_bounded(&self, bound: u64) -> Result<MValue> {
        match self {
            MValue::Finite(n) => match n.to_u64() {
                Some(e) if e <= bound => Ok(MValue::Finite(BigUint::one() << e)),
                _ => Err(Error::ExponentTooLarge {
                    exponent: n.to_string(),
                    bound,
                }),
            },
            x => Ok(MValue::Pow2(Box::new(x.clone()))),
        }
    }

    /// Rebuilds an arbitrary term bottom-up through the normalizing
    /// constructors. Finite exponents past the bound stay symbolic.
    pub fn normalize(&self) -> MValue {
        match self {
            MValue::Finite(_) | MValue::Omega => self.clone(),
            MValue::Pow2(x) => {
                let x = x.normalize();
                x.pow2().unwrap_or_else(|_| MValue::Pow2(Box::new(x)))
            }
            MValue::Sum(a, b) => a.normalize().add(&b.normalize()),
            MValue::Prod(a, b) => a.normalize().mul(&b.normalize()),
        }
    }

    /// Height of a pure power tower over `w`, if this is one.
    pub fn tower_height(&self) -> Option<usize> {
        match self {
            MValue::Omega => Some(0),
            MValue::Pow2(x) => x.tower_height().map(|h| h + 1),
            _ => None,
        }
    }

    /// Exponent of a symbolic `2^n` with finite `n` (a finite value too
    /// large to materialize).
    fn big_power(&self) -> Option<&BigUint> {
        match self {
            MValue::Pow2(x) => x.as_finite(),
            _ => None,
        }
    }

    /// Finite values are totally ordered, every finite value is below `w`,
    /// and towers are ordered by height. Anything else is incomparable
    /// unless structurally equal.
    pub fn compare(&self, other: &MValue) -> Comparison {
        if self == other {
            return Comparison::Equal;
        }
        match (self, other) {
            (MValue::Finite(a), MValue::Finite(b)) => a.cmp(b).into(),
            (MValue::Finite(a), b) if b.big_power().is_some() => {
                cmp_with_power_of_two(a, b.big_power().unwrap()).into()
            }
            (a, MValue::Finite(_)) if a.big_power().is_some() => other.compare(self).reverse(),
            (a, b) if a.big_power().is_some() && b.big_power().is_some() => {
                a.big_power().unwrap().cmp(b.big_power().unwrap()).into()
            }
            (a, b) => {
                let finite_like = |x: &MValue| x.is_finite() || x.big_power().is_some();
                match (a.tower_height(), b.tower_height()) {
                    (Some(x), Some(y)) => x.cmp(&y).into(),
                    (None, Some(_)) if finite_like(a) => Comparison::Less,
                    (Some(_), None) if finite_like(b) => Comparison::Greater,
                    _ => Comparison::Incomparable,
                }
            }
        }
    }

    fn is_atom(&self) -> bool {
        matches!(self, MValue::Finite(_) | MValue::Omega)
    }
}

// a vs 2^e for a finite e
fn cmp_with_power_of_two(a: &BigUint, e: &BigUint) -> Ordering {
    if a.is_zero() {
        return Ordering::Less;
    }
    // 2^(bits-1) <= a < 2^bits
    let bits = BigUint::from(a.bits());
    let floor_log = &bits - 1u32;
    match floor_log.cmp(e) {
        Ordering::Less => Ordering::Less,
        Ordering::Greater => Ordering::Greater,
        Ordering::Equal => {
            if a.count_ones() == 1 {
                Ordering::Equal
            } else {
                Ordering::Greater
            }
        }
    }
}

impl From<u64> for MValue {
    fn from(n: u64) -> Self {
        MValue::Finite(BigUint::from(n))
    }
}

impl From<BigUint> for MValue {
    fn from(n: BigUint) -> Self {
        MValue::Finite(n)
    }
}

impl fmt::Display for MValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MValue::Finite(n) => write!(f, "{n}"),
            MValue::Omega => f.write_str("w"),
            MValue::Pow2(x) if x.is_atom() => write!(f, "2^{x}"),
            MValue::Pow2(x) if matches!(**x, MValue::Pow2(_)) => write!(f, "2^({x})"),
            // sums and products already carry their own parentheses
            MValue::Pow2(x) => write!(f, "2^{x}"),
            MValue::Sum(a, b) => write!(f, "({a}+{b})"),
            MValue::Prod(a, b) => write!(f, "({a}*{b})"),
        }
    }
}

impl Serialize for MValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for MValue {
    type Err = Error;

    /// Parses the canonical rendering: decimal digits, `w`, `2^x`, `2^(x)`,
    /// `a+b`, `a*b` and parentheses. The result is normalized.
    fn from_str(s: &str) -> Result<Self> {
        let mut p = TermParser {
            src: s.as_bytes(),
            pos: 0,
        };
        let v = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(v.normalize())
    }
}

struct TermParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl TermParser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Algebra {
            pos: self.pos,
            source: Box::new(Error::parse(1, msg)),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", c as char)))
        }
    }

    fn expr(&mut self) -> Result<MValue> {
        let mut acc = self.term()?;
        while self.peek() == Some(b'+') {
            self.pos += 1;
            let rhs = self.term()?;
            acc = MValue::Sum(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MValue> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let rhs = self.factor()?;
            acc = MValue::Prod(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MValue> {
        let atom = self.atom()?;
        if self.peek() == Some(b'^') {
            if atom != MValue::from(2u64) {
                return Err(self.error("only base 2 may be exponentiated"));
            }
            self.pos += 1;
            let exponent = self.atom()?;
            return Ok(MValue::Pow2(Box::new(exponent)));
        }
        Ok(atom)
    }

    fn atom(&mut self) -> Result<MValue> {
        match self.peek() {
            Some(b'w') => {
                self.pos += 1;
                Ok(MValue::Omega)
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                Ok(MValue::Finite(digits.parse().unwrap()))
            }
            _ => Err(self.error("expected a digit, `w` or `(`")),
        }
    }
}
