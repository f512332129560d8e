//! Run configuration and the JSON reports behind each `setsize` subcommand.
//!
//! Every report carries `version` (see [`SCHEMA_VERSION`]) and `command`.
//! Reports contain no maps with unstable ordering, timestamps or paths
//! beyond those given on input, so a fixed configuration always serializes
//! to the same bytes.

use std::path::PathBuf;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::{self, Value};
use crate::cardinal::{
    ch_equation, ch_rewrite, gch_dimension_sequence, ChEquation, Rewrite, SymbolicDim,
};
use crate::cover::{apply_graduation, grid_cover_with_workers, sizes_equal};
use crate::error::{Error, Result};
use crate::fit::{fit_dimension, DimensionFit};
use crate::graduation::MValue;
use crate::pair::{parse_rational, Scale, SizePair};
use crate::properties::{run_suite, GridCounter, PropertyReport, SuiteConfig};
use crate::sampling;
use crate::set::{IfsFractal, ModelSummary, PointSet, SetModel};

pub const SCHEMA_VERSION: u32 = 1;

/// Geometric scale sweep `r_j = r0 * s^j`, `j = 0..k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sweep {
    pub start: BigRational,
    pub factor: BigRational,
    pub steps: u32,
}

impl Sweep {
    pub fn new(start: BigRational, factor: BigRational, steps: u32) -> Result<Self> {
        if !start.is_positive() {
            return Err(Error::Config(format!(
                "sweep start {start} must be positive"
            )));
        }
        if !factor.is_positive() || factor >= BigRational::one() {
            return Err(Error::Config(format!(
                "sweep factor {factor} must lie in (0,1)"
            )));
        }
        if steps == 0 {
            return Err(Error::Config("sweep needs at least one step".into()));
        }
        Ok(Sweep {
            start,
            factor,
            steps,
        })
    }

    pub fn scales(&self) -> Vec<BigRational> {
        let mut r = self.start.clone();
        let mut out = Vec::with_capacity(self.steps as usize);
        for _ in 0..self.steps {
            out.push(r.clone());
            r *= &self.factor;
        }
        out
    }
}

/// Parses `r0:s:k`.
impl FromStr for Sweep {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let [r0, f, k] = parts.as_slice() else {
            return Err(Error::Config(format!("sweep `{s}` is not r0:s:k")));
        };
        let steps = k.trim().parse().map_err(|_| {
            Error::Config(format!("sweep step count `{k}` is not a positive integer"))
        })?;
        Sweep::new(parse_rational(r0)?, parse_rational(f)?, steps)
    }
}

/// Where a set comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum Input {
    Csv(PathBuf),
    Preset(String),
    /// `n` seeded uniform samples of the unit cube.
    Uniform {
        n: usize,
        dim: usize,
    },
    Model {
        label: String,
        model: SetModel,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub inputs: Vec<Input>,
    pub scales: Vec<BigRational>,
    pub sweep: Option<Sweep>,
    pub graduation: MValue,
    pub seed: u64,
    pub workers: usize,
    pub trials: usize,
    pub delimiter: u8,
    pub header: bool,
    /// Length of the infinity sequence.
    pub n: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            inputs: Vec::new(),
            scales: Vec::new(),
            sweep: None,
            graduation: MValue::one(),
            seed: 42,
            workers: 1,
            trials: 1000,
            delimiter: b',',
            header: false,
            n: 4,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        match self.graduation.as_finite() {
            Some(g) if !g.is_zero() => {}
            _ => return Err(Error::InvalidGraduation(self.graduation.to_string())),
        }
        if let Some(r) = self.scales.iter().find(|r| !r.is_positive()) {
            return Err(Error::InvalidScale(format!("{r} is not positive")));
        }
        if self.workers == 0 {
            return Err(Error::Config("workers must be at least 1".into()));
        }
        Ok(())
    }

    /// Explicit scales followed by the sweep.
    pub fn scale_list(&self) -> Result<Vec<BigRational>> {
        let mut out = self.scales.clone();
        if let Some(s) = &self.sweep {
            out.extend(s.scales());
        }
        if out.is_empty() {
            return Err(Error::Config(
                "no scale given; use --scale or --sweep".into(),
            ));
        }
        Ok(out)
    }

    fn load(&self, index: usize) -> Result<(String, SetModel)> {
        let input = self
            .inputs
            .get(index)
            .ok_or_else(|| Error::Config(format!("input {} missing", index + 1)))?;
        Ok(match input {
            Input::Csv(p) => (
                p.display().to_string(),
                PointSet::read_csv_path(p, self.delimiter, self.header)?.into(),
            ),
            Input::Preset(name) => (format!("preset:{name}"), IfsFractal::preset(name)?.into()),
            Input::Uniform { n, dim } => {
                let mut rng = sampling::rng(self.seed.wrapping_add(index as u64));
                (
                    format!("uniform:{n}x{dim}"),
                    sampling::uniform_unit_cube(&mut rng, *n, *dim)?.into(),
                )
            }
            Input::Model { label, model } => (label.clone(), model.clone()),
        })
    }

    fn load_exact(&self, want: usize) -> Result<Vec<(String, SetModel)>> {
        if self.inputs.len() != want {
            return Err(Error::Config(format!(
                "expected {want} input(s), got {}",
                self.inputs.len()
            )));
        }
        (0..want).map(|i| self.load(i)).collect()
    }
}

fn grid_count(s: &SetModel, r: &BigRational, workers: usize) -> Result<MValue> {
    Ok(grid_cover_with_workers(s, r, workers)?.count())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Measurement {
    pub scale: String,
    pub count: MValue,
    pub count_graduation1: MValue,
    pub pair: String,
    /// `ln N / ln(1/r)` of the reported pair, when defined.
    pub dimension: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasuredInput {
    pub source: String,
    pub model: ModelSummary,
    pub measurements: Vec<Measurement>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasureReport {
    pub version: u32,
    pub command: &'static str,
    pub graduation: MValue,
    pub inputs: Vec<MeasuredInput>,
}

pub fn cmd_measure(cfg: &RunConfig) -> Result<MeasureReport> {
    cfg.validate()?;
    let scales = cfg.scale_list()?;
    if cfg.inputs.is_empty() {
        return Err(Error::Config("measure needs at least one input".into()));
    }
    let mut inputs = Vec::with_capacity(cfg.inputs.len());
    for i in 0..cfg.inputs.len() {
        let (source, model) = cfg.load(i)?;
        let measurements = scales
            .iter()
            .map(|r| {
                let n1 = grid_count(&model, r, cfg.workers)?;
                let n = apply_graduation(&n1, &cfg.graduation)?;
                let pair = SizePair::new(Scale::rational(r.clone())?, n.clone());
                Ok(Measurement {
                    scale: r.to_string(),
                    dimension: pair.dimension().ok(),
                    pair: pair.to_string(),
                    count: n,
                    count_graduation1: n1,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        inputs.push(MeasuredInput {
            source,
            model: model.describe(),
            measurements,
        });
    }
    Ok(MeasureReport {
        version: SCHEMA_VERSION,
        command: "measure",
        graduation: cfg.graduation.clone(),
        inputs,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DimReport {
    pub version: u32,
    pub command: &'static str,
    pub source: String,
    pub model: ModelSummary,
    /// Similarity dimension `ln b / ln m` of a fractal preset.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference: Option<f64>,
    pub fit: DimensionFit,
}

pub fn cmd_dim(cfg: &RunConfig) -> Result<DimReport> {
    cfg.validate()?;
    let scales = cfg.scale_list()?;
    let (source, model) = cfg.load_exact(1)?.remove(0);
    let samples = scales
        .iter()
        .map(|r| {
            let n = grid_count(&model, r, cfg.workers)?;
            let n = n
                .as_finite()
                .cloned()
                .ok_or(Error::SymbolicUnsupported("dimension fit"))?;
            Ok((r.clone(), n))
        })
        .collect::<Result<Vec<(BigRational, BigUint)>>>()?;
    let reference = match &model {
        SetModel::Fractal(f) => Some(f.similarity_dimension()),
        _ => None,
    };
    Ok(DimReport {
        version: SCHEMA_VERSION,
        command: "dim",
        source,
        model: model.describe(),
        reference,
        fit: fit_dimension(&samples)?,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparedInput {
    pub source: String,
    pub model: ModelSummary,
    pub count_graduation1: String,
}

/// Grid counts of both sets at one scale; reported, not judged.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScaleCounts {
    pub scale: String,
    pub counts: [MValue; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompareReport {
    pub version: u32,
    pub command: &'static str,
    pub inputs: [ComparedInput; 2],
    pub equal: bool,
    pub per_scale: Vec<ScaleCounts>,
}

pub fn cmd_compare(cfg: &RunConfig) -> Result<CompareReport> {
    cfg.validate()?;
    let loaded = cfg.load_exact(2)?;
    let (a, b) = (&loaded[0].1, &loaded[1].1);
    let equal = sizes_equal(a, b)?;
    let per_scale = cfg
        .scales
        .iter()
        .chain(
            cfg.sweep
                .iter()
                .flat_map(|s| s.scales())
                .collect::<Vec<_>>()
                .iter(),
        )
        .map(|r| {
            Ok(ScaleCounts {
                scale: r.to_string(),
                counts: [
                    grid_count(a, r, cfg.workers)?,
                    grid_count(b, r, cfg.workers)?,
                ],
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let summarize = |(source, model): &(String, SetModel)| ComparedInput {
        source: source.clone(),
        model: model.describe(),
        count_graduation1: match model.as_points() {
            Some(p) => p.len().to_string(),
            None => "w".into(),
        },
    };
    Ok(CompareReport {
        version: SCHEMA_VERSION,
        command: "compare",
        inputs: [summarize(&loaded[0]), summarize(&loaded[1])],
        equal,
        per_scale,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlgebraReport {
    pub version: u32,
    pub command: &'static str,
    pub expr: String,
    pub kind: &'static str,
    pub text: String,
    pub value: Value,
}

pub fn cmd_algebra(expr: &str) -> Result<AlgebraReport> {
    let value = algebra::evaluate(expr)?;
    Ok(AlgebraReport {
        version: SCHEMA_VERSION,
        command: "algebra",
        expr: expr.into(),
        kind: value.kind(),
        text: value.to_string(),
        value,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InfinityReport {
    pub version: u32,
    pub command: &'static str,
    pub n: usize,
    pub sequence: Vec<SymbolicDim>,
    pub rewrites: Vec<Rewrite>,
    pub ch: ChEquation,
}

pub fn cmd_infinity(cfg: &RunConfig) -> Result<InfinityReport> {
    if cfg.n == 0 {
        return Err(Error::Config("n must be at least 1".into()));
    }
    let rewrites = (0..cfg.n)
        .map(|k| ch_rewrite(&MValue::tower(k)))
        .collect::<Result<Vec<_>>>()?;
    Ok(InfinityReport {
        version: SCHEMA_VERSION,
        command: "infinity",
        n: cfg.n,
        sequence: gch_dimension_sequence(cfg.n),
        rewrites,
        ch: ch_equation(&Scale::LimitZero)?,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub version: u32,
    pub command: &'static str,
    pub seed: u64,
    pub trials: usize,
    pub passed: bool,
    pub reports: Vec<PropertyReport>,
}

pub fn cmd_check(cfg: &RunConfig) -> Result<CheckReport> {
    let suite = SuiteConfig {
        seed: cfg.seed,
        trials: cfg.trials,
    };
    let reports = run_suite(&suite, &GridCounter)?;
    Ok(CheckReport {
        version: SCHEMA_VERSION,
        command: "check",
        seed: cfg.seed,
        trials: cfg.trials,
        passed: reports.iter().all(PropertyReport::passed),
        reports,
    })
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(report: &T) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn points(v: &[i64]) -> Input {
        Input::Model {
            label: "pts".into(),
            model: PointSet::from_integers(v).unwrap().into(),
        }
    }

    #[test]
    fn sweep_parsing() {
        let s: Sweep = "1/3:1/3:3".parse().unwrap();
        assert_eq!(s.scales(), vec![q(1, 3), q(1, 9), q(1, 27)]);
        assert!("1:1:3".parse::<Sweep>().is_err());
        assert!("1:0.5:0".parse::<Sweep>().is_err());
        assert!("0:0.5:2".parse::<Sweep>().is_err());
        assert!("1:0.5".parse::<Sweep>().is_err());
    }

    #[test]
    fn measure_applies_ceiling_rule() {
        let mut cfg = RunConfig {
            inputs: vec![points(&[0, 5, 10])],
            scales: vec![q(1, 2)],
            ..RunConfig::default()
        };
        let rep = cmd_measure(&cfg).unwrap();
        assert_eq!(rep.inputs[0].measurements[0].count, MValue::from(3));
        cfg.graduation = MValue::from(2);
        let rep = cmd_measure(&cfg).unwrap();
        assert_eq!(rep.inputs[0].measurements[0].count, MValue::from(2));
        assert_eq!(
            rep.inputs[0].measurements[0].count_graduation1,
            MValue::from(3)
        );
        cfg.graduation = MValue::zero();
        assert!(cmd_measure(&cfg).is_err());
    }

    #[test]
    fn measure_cantor_preset() {
        let cfg = RunConfig {
            inputs: vec![Input::Preset("cantor".into())],
            scales: vec![q(1, 81)],
            ..RunConfig::default()
        };
        let rep = cmd_measure(&cfg).unwrap();
        assert_eq!(rep.inputs[0].measurements[0].pair, "(1/81,16)");
    }

    #[test]
    fn dim_on_presets() {
        let cfg = RunConfig {
            inputs: vec![Input::Preset("sierpinski".into())],
            sweep: Some("1/2:1/2:12".parse().unwrap()),
            ..RunConfig::default()
        };
        let rep = cmd_dim(&cfg).unwrap();
        assert!((rep.fit.slope - 3f64.ln() / 2f64.ln()).abs() < 1e-9);
        assert!((rep.fit.r_squared - 1.0).abs() < 1e-12);
        assert_eq!(rep.fit.samples.len(), 12);
    }

    #[test]
    fn dim_needs_usable_scales() {
        let cfg = RunConfig {
            inputs: vec![points(&[0, 1])],
            scales: vec![q(10, 1)],
            ..RunConfig::default()
        };
        assert_eq!(cmd_dim(&cfg).unwrap_err(), Error::InsufficientSamples(0));
    }

    #[test]
    fn compare_reports_counts() {
        let mut cfg = RunConfig {
            inputs: vec![points(&[0, 1, 2]), points(&[0, 10, 20])],
            scales: vec![q(5, 1)],
            ..RunConfig::default()
        };
        let rep = cmd_compare(&cfg).unwrap();
        assert!(rep.equal);
        assert_eq!(rep.per_scale[0].counts, [MValue::from(1), MValue::from(3)]);
        cfg.inputs[1] = points(&[0, 10]);
        assert!(!cmd_compare(&cfg).unwrap().equal);
        cfg.inputs.pop();
        assert!(cmd_compare(&cfg).is_err());
    }

    #[test]
    fn algebra_and_infinity() {
        assert_eq!(cmd_algebra("(1/2,3)+(1/2,4)").unwrap().text, "(1/2,7)");
        let rep = cmd_infinity(&RunConfig::default()).unwrap();
        let seq: Vec<String> = rep.sequence.iter().map(ToString::to_string).collect();
        assert_eq!(seq, ["ln w/ln(1/r)", "1", "2^w/w", "2^(2^w)/w"]);
        assert_eq!(rep.ch.corollary, "w * (r, 2) = 1");
        let two = RunConfig {
            n: 2,
            ..RunConfig::default()
        };
        assert_eq!(cmd_infinity(&two).unwrap().sequence.len(), 2);
        let zero = RunConfig {
            n: 0,
            ..RunConfig::default()
        };
        assert!(cmd_infinity(&zero).is_err());
    }

    #[test]
    fn check_single_trial() {
        let cfg = RunConfig {
            trials: 1,
            ..RunConfig::default()
        };
        let rep = cmd_check(&cfg).unwrap();
        assert!(rep.passed);
        assert!(rep.reports.iter().all(|r| r.trials >= 1));
    }

    #[test]
    fn json_is_stable() {
        let cfg = RunConfig {
            inputs: vec![Input::Uniform { n: 200, dim: 2 }],
            sweep: Some("1/2:1/2:4".parse().unwrap()),
            seed: 9,
            workers: 3,
            ..RunConfig::default()
        };
        let a = to_json(&cmd_measure(&cfg).unwrap());
        let b = to_json(
            &cmd_measure(&RunConfig {
                workers: 1,
                ..cfg.clone()
            })
            .unwrap(),
        );
        assert_eq!(a, b);
        assert!(a.contains("\"version\": 1"));
    }
}
