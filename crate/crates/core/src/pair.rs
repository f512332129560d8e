//! Size pairs `(r, N(r))`: a scale together with the count observed at it.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graduation::{Comparison, MValue, DEFAULT_EXPONENT_BOUND};

/// The radius of a measurement.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scale {
    /// Exact positive rational, always in lowest terms.
    Rational(BigRational),
    /// The symbolic limit `r -> 0`, rendered `0+`.
    LimitZero,
}

impl Scale {
    pub fn rational(r: BigRational) -> Result<Self> {
        if !r.is_positive() {
            return Err(Error::InvalidScale(format!("{r} is not positive")));
        }
        Ok(Scale::Rational(r))
    }

    pub fn ratio(numer: u64, denom: u64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::InvalidScale("zero denominator".into()));
        }
        Scale::rational(BigRational::new(numer.into(), denom.into()))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scale::Rational(r) => Some(r),
            Scale::LimitZero => None,
        }
    }

    fn require_rational(&self) -> Result<&BigRational> {
        self.as_rational().ok_or(Error::LimitScaleUnsupported)
    }
}

impl fmt::Display for Scale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scale::Rational(r) => write!(f, "{r}"),
            Scale::LimitZero => f.write_str("0+"),
        }
    }
}

impl FromStr for Scale {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0+" {
            return Ok(Scale::LimitZero);
        }
        Scale::rational(parse_rational(s).map_err(|e| Error::InvalidScale(e.to_string()))?)
    }
}

/// Parses `p/q`, integers, and decimal literals (with optional exponent)
/// into exact rationals.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::parse(1, format!("not a rational literal: {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(p, q));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty()
        || !int_part
            .bytes()
            .chain(frac_part.bytes())
            .all(|b| b.is_ascii_digit())
    {
        return Err(bad());
    }
    let numer: BigInt = format!("{int_part}{frac_part}0")
        .parse()
        .map_err(|_| bad())?;
    let numer = numer / 10;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let value = if scale >= 0 {
        BigRational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(if negative { -value } else { value })
}

/// Natural logarithm of an arbitrarily large integer.
pub(crate) fn ln_biguint(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    (n >> shift).to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}

/// `ln(1/r)` for a positive rational `r`.
pub(crate) fn ln_inverse(r: &BigRational) -> f64 {
    ln_biguint(r.denom().magnitude()) - ln_biguint(r.numer().magnitude())
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SizePair {
    pub scale: Scale,
    pub count: MValue,
}

impl SizePair {
    pub fn new(scale: Scale, count: impl Into<MValue>) -> Self {
        SizePair {
            scale,
            count: count.into(),
        }
    }

    /// `(r, 0)`, the unique zero at scale `r`.
    pub fn zero(scale: Scale) -> Self {
        SizePair::new(scale, MValue::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.count.is_zero()
    }

    fn same_scale(&self, other: &SizePair) -> Result<()> {
        if self.scale == other.scale {
            Ok(())
        } else {
            Err(Error::ScaleMismatch {
                left: self.scale.to_string(),
                right: other.scale.to_string(),
            })
        }
    }

    pub fn add(&self, other: &SizePair) -> Result<SizePair> {
        self.same_scale(other)?;
        Ok(SizePair::new(
            self.scale.clone(),
            self.count.add(&other.count),
        ))
    }

    /// `(r, N_x - N_y)`, defined when `N_y <= N_x`.
    pub fn sub(&self, other: &SizePair) -> Result<SizePair> {
        self.same_scale(other)?;
        Ok(SizePair::new(
            self.scale.clone(),
            self.count.checked_sub(&other.count)?,
        ))
    }

    /// `(r * r, N_x * N_y)`.
    pub fn mul(&self, other: &SizePair) -> Result<SizePair> {
        self.same_scale(other)?;
        let r = self.scale.require_rational()?;
        Ok(SizePair::new(
            Scale::Rational(r * r),
            self.count.mul(&other.count),
        ))
    }

    /// Scalar action `c . (r, N) = (r, N^c)`, restricted to exact integer
    /// results and excluded for `N = 1`.
    pub fn scalar(&self, c: &BigRational) -> Result<SizePair> {
        let n = self
            .count
            .as_finite()
            .ok_or(Error::SymbolicUnsupported("scalar action"))?;
        if n.is_one() {
            return Err(Error::UnitCountExcluded);
        }
        let not_integer = || Error::NonIntegerPower {
            base: n.to_string(),
            exponent: c.to_string(),
        };
        if c.is_negative() {
            return Err(not_integer());
        }
        let p = c.numer().magnitude();
        if n.is_zero() {
            let v = if p.is_zero() {
                MValue::one()
            } else {
                MValue::zero()
            };
            return Ok(SizePair::new(self.scale.clone(), v));
        }
        let q = c.denom().magnitude().to_u32().ok_or_else(not_integer)?;
        let root = n.nth_root(q);
        if num_traits::pow(root.clone(), q as usize) != *n {
            return Err(not_integer());
        }
        let p = p
            .to_u64()
            .filter(|p| p.saturating_mul(root.bits() - 1) <= DEFAULT_EXPONENT_BOUND);
        let p = p.ok_or_else(|| Error::ExponentTooLarge {
            exponent: c.to_string(),
            bound: DEFAULT_EXPONENT_BOUND,
        })?;
        Ok(SizePair::new(
            self.scale.clone(),
            MValue::Finite(root.pow(p as u32)),
        ))
    }

    /// `(r, |N_x - N_y|)`.
    pub fn distance(&self, other: &SizePair) -> Result<SizePair> {
        self.same_scale(other)?;
        match (self.count.as_finite(), other.count.as_finite()) {
            (Some(a), Some(b)) => {
                let d = if a >= b { a - b } else { b - a };
                Ok(SizePair::new(self.scale.clone(), MValue::Finite(d)))
            }
            _ => Err(Error::SymbolicUnsupported("distance")),
        }
    }

    /// `ln N / ln(1/r)` for `r < 1` and finite `N >= 2`.
    pub fn dimension(&self) -> Result<f64> {
        let r = self.scale.require_rational()?;
        if *r >= BigRational::one() {
            return Err(Error::ScaleNotSubUnit(r.to_string()));
        }
        let n = match self.count.as_finite() {
            Some(n) if n > &BigUint::one() => n,
            _ => return Err(Error::DegenerateCount(self.count.to_string())),
        };
        Ok(ln_biguint(n) / ln_inverse(r))
    }

    /// Pairs at the same scale are ordered by count; pairs at different
    /// scales are incomparable.
    pub fn compare(&self, other: &SizePair) -> Comparison {
        if self.scale != other.scale {
            return Comparison::Incomparable;
        }
        self.count.compare(&other.count)
    }

    /// A pair strictly between `self` and `other`, when their finite counts
    /// differ by at least two.
    pub fn between(&self, other: &SizePair) -> Option<SizePair> {
        if self.scale != other.scale {
            return None;
        }
        let (a, b) = (self.count.as_finite()?, other.count.as_finite()?);
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        if hi - lo < BigUint::from(2u32) {
            return None;
        }
        Some(SizePair::new(self.scale.clone(), MValue::Finite(lo + 1u32)))
    }
}

impl fmt::Display for SizePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.scale, self.count)
    }
}

impl Serialize for SizePair {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SizePair", 3)?;
        st.serialize_field("scale", &self.scale.to_string())?;
        st.serialize_field("count", &self.count)?;
        st.serialize_field("pair", &self.to_string())?;
        st.end()
    }
}

impl FromStr for SizePair {
    type Err = Error;

    /// Parses `(p/q,N)` or `(0+,N)`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::parse(1, format!("not a pair: {s:?}")))?;
        let (scale, count) = inner
            .split_once(',')
            .ok_or_else(|| Error::parse(1, format!("not a pair: {s:?}")))?;
        Ok(SizePair::new(scale.parse()?, count.parse::<MValue>()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64, d: u64, count: u64) -> SizePair {
        SizePair::new(Scale::ratio(n, d).unwrap(), count)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn scale_validation() {
        assert!(Scale::ratio(0, 1).is_err());
        assert!(Scale::rational(q(-1, 2)).is_err());
        assert_eq!(Scale::ratio(2, 4).unwrap().to_string(), "1/2");
        assert_eq!("0+".parse::<Scale>().unwrap(), Scale::LimitZero);
        assert_eq!(
            "0.25".parse::<Scale>().unwrap(),
            Scale::ratio(1, 4).unwrap()
        );
    }

    #[test]
    fn rational_literals() {
        assert_eq!(parse_rational("3/4").unwrap(), q(3, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), q(-3, 2));
        assert_eq!(parse_rational("0.125").unwrap(), q(1, 8));
        assert_eq!(parse_rational("1e-3").unwrap(), q(1, 1000));
        assert_eq!(parse_rational("2.5E2").unwrap(), q(250, 1));
        assert_eq!(parse_rational(".5").unwrap(), q(1, 2));
        assert_eq!(parse_rational("7").unwrap(), q(7, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational(".").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn add_examples() {
        assert_eq!(p(1, 2, 3).add(&p(1, 2, 4)).unwrap(), p(1, 2, 7));
        assert_eq!(p(1, 3, 0).add(&p(1, 3, 5)).unwrap(), p(1, 3, 5));
        assert!(matches!(
            p(1, 2, 3).add(&p(1, 3, 4)),
            Err(Error::ScaleMismatch { .. })
        ));
    }

    #[test]
    fn sub_examples() {
        assert_eq!(p(1, 2, 7).sub(&p(1, 2, 4)).unwrap(), p(1, 2, 3));
        assert!(p(1, 2, 4).sub(&p(1, 2, 4)).unwrap().is_zero());
        assert!(matches!(
            p(1, 2, 4).sub(&p(1, 2, 7)),
            Err(Error::Underflow { .. })
        ));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(p(1, 2, 2).mul(&p(1, 2, 2)).unwrap(), p(1, 4, 4));
        assert_eq!(p(1, 3, 1).mul(&p(1, 3, 5)).unwrap(), p(1, 9, 5));
        assert_eq!(p(1, 2, 0).mul(&p(1, 2, 9)).unwrap(), p(1, 4, 0));
        let lim = SizePair::new(Scale::LimitZero, 2u64);
        assert_eq!(lim.mul(&lim), Err(Error::LimitScaleUnsupported));
    }

    #[test]
    fn scalar_examples() {
        assert_eq!(p(1, 2, 3).scalar(&q(2, 1)).unwrap(), p(1, 2, 9));
        assert_eq!(p(1, 3, 1).scalar(&q(3, 1)), Err(Error::UnitCountExcluded));
        // 4^2 = 16, so the square root is exact
        assert_eq!(p(1, 4, 16).scalar(&q(1, 2)).unwrap(), p(1, 4, 4));
        assert!(matches!(
            p(1, 4, 15).scalar(&q(1, 2)),
            Err(Error::NonIntegerPower { .. })
        ));
        assert!(matches!(
            p(1, 4, 15).scalar(&q(-1, 1)),
            Err(Error::NonIntegerPower { .. })
        ));
        assert_eq!(p(1, 4, 8).scalar(&q(2, 3)).unwrap(), p(1, 4, 4));
        assert_eq!(p(1, 4, 0).scalar(&q(3, 1)).unwrap(), p(1, 4, 0));
    }

    #[test]
    fn distance_examples() {
        assert_eq!(p(1, 2, 7).distance(&p(1, 2, 7)).unwrap(), p(1, 2, 0));
        assert_eq!(p(1, 2, 3).distance(&p(1, 2, 8)).unwrap(), p(1, 2, 5));
        assert_eq!(p(1, 2, 8).distance(&p(1, 2, 3)).unwrap(), p(1, 2, 5));
    }

    #[test]
    fn dimension_examples() {
        let cantor = p(1, 27, 8).dimension().unwrap();
        assert!((cantor - 2f64.ln() / 3f64.ln()).abs() < 1e-15);
        assert!((cantor - 0.630929).abs() < 1e-6);
        assert!((p(1, 10, 10).dimension().unwrap() - 1.0).abs() < 1e-15);
        assert!((p(1, 4, 16).dimension().unwrap() - 2.0).abs() < 1e-15);
        assert!(matches!(
            p(1, 4, 1).dimension(),
            Err(Error::DegenerateCount(_))
        ));
        assert!(matches!(
            p(1, 4, 0).dimension(),
            Err(Error::DegenerateCount(_))
        ));
        assert!(matches!(
            p(1, 1, 5).dimension(),
            Err(Error::ScaleNotSubUnit(_))
        ));
        assert_eq!(
            SizePair::new(Scale::LimitZero, 5u64).dimension(),
            Err(Error::LimitScaleUnsupported)
        );
    }

    #[test]
    fn dimension_of_huge_counts() {
        let n = BigUint::one() << 5000u32;
        let pair = SizePair::new(Scale::ratio(1, 2).unwrap(), MValue::Finite(n));
        assert!((pair.dimension().unwrap() - 5000.0).abs() < 1e-9);
    }

    #[test]
    fn compare_examples() {
        assert_eq!(p(1, 2, 1).compare(&p(1, 2, 0)), Comparison::Greater);
        assert_eq!(p(1, 2, 5).compare(&p(1, 2, 5)), Comparison::Equal);
        assert_eq!(p(1, 2, 5).compare(&p(1, 3, 5)), Comparison::Incomparable);
    }

    #[test]
    fn density_witness() {
        let mid = p(1, 2, 3).between(&p(1, 2, 7)).unwrap();
        assert_eq!(mid.compare(&p(1, 2, 3)), Comparison::Greater);
        assert_eq!(mid.compare(&p(1, 2, 7)), Comparison::Less);
        assert!(p(1, 2, 3).between(&p(1, 2, 4)).is_none());
    }

    #[test]
    fn text_form() {
        assert_eq!(p(1, 2, 7).to_string(), "(1/2,7)");
        assert_eq!(
            SizePair::new(Scale::LimitZero, MValue::Omega).to_string(),
            "(0+,w)"
        );
        assert_eq!("(1/2, 7)".parse::<SizePair>().unwrap(), p(1, 2, 7));
        assert_eq!(
            "(0+,2^w)".parse::<SizePair>().unwrap(),
            SizePair::new(Scale::LimitZero, MValue::tower(1))
        );
        assert!("1/2,7".parse::<SizePair>().is_err());
    }
}
