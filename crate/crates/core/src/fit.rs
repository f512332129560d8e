//! Least-squares fit of `ln N` against `ln(1/r)`.

use num_bigint::BigUint;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graduation::MValue;
use crate::pair::{ln_biguint, ln_inverse, Scale, SizePair};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitSample {
    pub scale: String,
    pub count: String,
    pub ln_inv_scale: f64,
    /// Absent for an empty cover.
    pub ln_count: Option<f64>,
    /// `ln N / ln(1/r)`; absent when undefined for this sample.
    pub dimension: Option<f64>,
    pub used: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DimensionFit {
    pub samples: Vec<FitSample>,
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

/// Samples with `N >= 2` enter the fit; the rest are reported but skipped.
pub fn fit_dimension(samples: &[(BigRational, BigUint)]) -> Result<DimensionFit> {
    let two = BigUint::from(2u32);
    let rows: Vec<FitSample> = samples
        .iter()
        .map(|(r, n)| {
            let pair = SizePair::new(Scale::Rational(r.clone()), MValue::Finite(n.clone()));
            FitSample {
                scale: r.to_string(),
                count: n.to_string(),
                ln_inv_scale: ln_inverse(r),
                ln_count: (n != &BigUint::default()).then(|| ln_biguint(n)),
                dimension: pair.dimension().ok(),
                used: n >= &two,
            }
        })
        .collect();
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|s| s.used)
        .filter_map(|s| Some((s.ln_inv_scale, s.ln_count?)))
        .collect();
    let (slope, intercept, r_squared) = least_squares(&pts)?;
    Ok(DimensionFit {
        samples: rows,
        slope,
        intercept,
        r_squared,
    })
}

/// Ordinary least squares `y = a x + b`; returns `(a, b, R^2)`.
pub fn least_squares(pts: &[(f64, f64)]) -> Result<(f64, f64, f64)> {
    let n = pts.len();
    if n < 2 {
        return Err(Error::InsufficientSamples(n));
    }
    let nf = n as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / nf;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / nf;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = pts.iter().map(|p| (p.1 - my).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::InsufficientSamples(1));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = pts
        .iter()
        .map(|p| (p.1 - slope * p.0 - intercept).powi(2))
        .sum();
    let r_squared = if syy == 0.0 {
        1.0
    } else {
        (1.0 - ss_res / syy).clamp(0.0, 1.0)
    };
    Ok((slope, intercept, r_squared))
}
