//! Sizes of infinite sets and the continuum-hypothesis rewriting.
//!
//! Everything here that depends on CH or GCH is hypothesis-conditional: the
//! identification `2^w = 1/r` is applied only inside [`ch_equation`] and
//! [`ch_rewrite`], never in the global normal form of [`MValue`].

use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;
use serde::{Serialize, Serializer};

use crate::cover::sizes_equal;
use crate::error::{Error, Result};
use crate::graduation::MValue;
use crate::pair::{Scale, SizePair};
use crate::set::SetModel;

#[derive(Debug, Clone, PartialEq)]
pub enum SymbolicDim {
    RealVal(f64),
    /// `numerator / denominator`; the denominator is never zero.
    MRatio(MValue, MValue),
    /// `ln(x) / ln(1/r)` with `r` left symbolic.
    LogRatio(MValue),
}

impl SymbolicDim {
    pub fn ratio(numerator: MValue, denominator: MValue) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::InvalidGraduation("zero denominator".into()));
        }
        Ok(SymbolicDim::MRatio(numerator, denominator))
    }
}

impl fmt::Display for SymbolicDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymbolicDim::RealVal(v) => write!(f, "{v}"),
            SymbolicDim::MRatio(a, b) => write!(f, "{a}/{b}"),
            SymbolicDim::LogRatio(x) => write!(f, "ln {x}/ln(1/r)"),
        }
    }
}

impl Serialize for SymbolicDim {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A size measured by covering a set with a named cover.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverSize {
    pub cover: String,
    pub count: MValue,
    /// Number of elements, when the set is finite.
    #[serde(
        skip_serializing_if = "Option::is_none",
        serialize_with = "opt_decimal"
    )]
    pub graduation1_count: Option<BigUint>,
}

impl fmt::Display for CoverSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.cover, self.count)
    }
}

fn opt_decimal<S: Serializer>(v: &Option<BigUint>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(n) => s.collect_str(n),
        None => s.serialize_none(),
    }
}

fn describe(s: &SetModel) -> String {
    match s {
        SetModel::Naturals => "N".into(),
        SetModel::Points(p) => {
            let pts: Vec<String> = p
                .points()
                .iter()
                .map(|x| match x.0.as_slice() {
                    [c] => c.to_string(),
                    _ => x.to_string(),
                })
                .collect();
            format!("{{{}}}", pts.join(","))
        }
        SetModel::Box(_) => "box".into(),
        SetModel::Fractal(f) => format!("fractal(1/{}, {} maps)", f.ratio(), f.branching()),
    }
}

/// The set covering itself once: `(S, 1)`.
pub fn cardinality_of(s: &SetModel) -> CoverSize {
    CoverSize {
        cover: describe(s),
        count: MValue::one(),
        graduation1_count: s.as_points().map(|p| BigUint::from(p.len())),
    }
}

/// `(U, 1)` for a set known only by name, such as an unmeasurable set.
pub fn cardinality_of_named(name: &str) -> CoverSize {
    CoverSize {
        cover: name.into(),
        count: MValue::one(),
        graduation1_count: None,
    }
}

/// `(r, w)`.
pub fn size_of_naturals(r: Scale) -> SizePair {
    SizePair::new(r, MValue::Omega)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChEquation {
    pub statement: String,
    pub corollary: String,
    pub pair: SizePair,
    pub dimension: SymbolicDim,
    pub hypothesis_conditional: bool,
}

/// `(r, 2^w) = (r, 1/r) = 1` and its corollary `w * (r, 2) = 1`.
pub fn ch_equation(r: &Scale) -> Result<ChEquation> {
    if let Some(q) = r.as_rational() {
        if *q >= BigRational::one() {
            return Err(Error::ScaleNotSubUnit(q.to_string()));
        }
    }
    let pair = SizePair::new(r.clone(), MValue::tower(1));
    Ok(ChEquation {
        statement: format!("({r}, {}) = ({r}, 1/r) = 1", pair.count),
        corollary: "w * (r, 2) = 1".into(),
        pair,
        dimension: SymbolicDim::RealVal(1.0),
        hypothesis_conditional: true,
    })
}

/// A rewrite of the dimension of `(r, count)` under CH, with its steps.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Rewrite {
    pub steps: String,
    pub dimension: SymbolicDim,
}

/// Dimension of `(r, x)` for a symbolic count under CH:
/// `(r, 2^x) = x * (r, 2)` and `(r, 2) = 1/w`, so `(r, 2^x) = x/w`, which
/// is `1` when `x = w`. A bare `w` stays `ln w/ln(1/r)`.
pub fn ch_rewrite(count: &MValue) -> Result<Rewrite> {
    match count {
        MValue::Omega => Ok(Rewrite {
            steps: "(r, w) = ln w/ln(1/r)".into(),
            dimension: SymbolicDim::LogRatio(MValue::Omega),
        }),
        MValue::Pow2(x) if **x == MValue::Omega => Ok(Rewrite {
            steps: "(r, 2^w) = w * (r, 2) = 1".into(),
            dimension: SymbolicDim::RealVal(1.0),
        }),
        MValue::Pow2(x) if !x.is_finite() => {
            let dim = SymbolicDim::ratio((**x).clone(), MValue::Omega)?;
            Ok(Rewrite {
                steps: format!("(r, {count}) = {x} * (r, 2) = {dim}"),
                dimension: dim,
            })
        }
        other => Err(Error::UnsupportedModel {
            op: "ch_rewrite",
            model: other.to_string(),
        }),
    }
}

/// Dimensions of `w, 2^w, 2^(2^w), ...` under GCH.
pub fn gch_dimension_sequence(n: usize) -> Vec<SymbolicDim> {
    (0..n)
        .map(|k| {
            ch_rewrite(&MValue::tower(k))
                .expect("towers rewrite")
                .dimension
        })
        .collect()
}

/// `ln ceil(1/r) / ln(1/r)`: the dimension of `[0, 1]` measured at `r`,
/// which tends to 1 as `r -> 0`.
pub fn ch_consistency(r: &BigRational) -> Result<f64> {
    let n = (BigRational::one() / r).ceil().to_integer();
    let n = n
        .to_biguint()
        .ok_or_else(|| Error::InvalidScale(r.to_string()))?;
    let pair = SizePair::new(Scale::rational(r.clone())?, MValue::Finite(n));
    pair.dimension()
}

/// Graduation-1 identity implies equal cardinality for finite sets; the
/// naturals equal only themselves.
pub fn equal_cardinality(s1: &SetModel, s2: &SetModel) -> Result<bool> {
    sizes_equal(s1, s2).map_err(|_| Error::UnsupportedModel {
        op: "equal_cardinality",
        model: format!("{} vs {}", s1.kind(), s2.kind()),
    })
}

/// Largest exponent used by [`ch_consistency_series`].
pub const CONSISTENCY_MAX_K: u32 = 12;

/// `ch_consistency` at `r = 10^-k` for `k = 1..=max_k`.
pub fn ch_consistency_series(max_k: u32) -> Result<Vec<f64>> {
    (1..=max_k)
        .map(|k| {
            let denom = num_traits::pow(BigUint::from(10u32), k as usize);
            ch_consistency(&BigRational::new(1.into(), denom.into()))
        })
        .collect()
}
