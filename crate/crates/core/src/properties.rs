//! Executable checks that the cover count behaves as an outer measure, and
//! as an additive measure at graduation 1.
//!
//! Each checker works against a [`SizeFunction`], so the same harness can
//! exercise deliberately broken counters in tests. [`run_suite`] draws
//! instances from seeded generators; every failure records the seed of the
//! trial that produced it.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cover::grid_cover;
use crate::error::{Error, Result};
use crate::set::{AxisBox, IfsFractal, Point, PointSet, SetModel};

pub trait SizeFunction: Sync {
    /// Number of occupied cells at scale `r`.
    fn grid_count(&self, s: &SetModel, r: &BigRational) -> Result<BigUint>;
    /// Size at graduation 1: one unit per element.
    fn unit_count(&self, s: &PointSet) -> BigUint;
}

/// The canonical grid counter.
#[derive(Debug, Clone, Copy, Default)]
pub struct GridCounter;

impl SizeFunction for GridCounter {
    fn grid_count(&self, s: &SetModel, r: &BigRational) -> Result<BigUint> {
        let c = grid_cover(s, r)?;
        Ok(c.cells().expect("grid cover").len())
    }

    fn unit_count(&self, s: &PointSet) -> BigUint {
        BigUint::from(s.len())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trial: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scale: Option<String>,
    pub sets: Vec<String>,
    pub counts: Vec<String>,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub property: String,
    pub trials: usize,
    pub failures: Vec<Failure>,
}

impl PropertyReport {
    fn new(property: &str) -> Self {
        PropertyReport {
            property: property.into(),
            trials: 0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn merge(&mut self, other: PropertyReport, trial: usize, seed: u64) {
        self.trials += other.trials;
        self.failures
            .extend(other.failures.into_iter().map(|mut f| {
                f.trial = Some(trial);
                f.seed = Some(seed);
                f
            }));
    }
}

fn render(s: &SetModel) -> String {
    match s {
        SetModel::Points(p) => {
            let pts: Vec<String> = p.points().iter().map(ToString::to_string).collect();
            format!("{{{}}}", pts.join(" "))
        }
        other => format!("{:?}", other.describe()),
    }
}

fn failure(
    scale: Option<&BigRational>,
    sets: &[&SetModel],
    counts: &[&BigUint],
    msg: String,
) -> Failure {
    Failure {
        trial: None,
        seed: None,
        scale: scale.map(ToString::to_string),
        sets: sets.iter().map(|s| render(s)).collect(),
        counts: counts.iter().map(ToString::to_string).collect(),
        message: msg,
    }
}

fn points<'a>(s: &'a SetModel, op: &'static str) -> Result<&'a PointSet> {
    s.as_points().ok_or_else(|| Error::UnsupportedModel {
        op,
        model: s.kind().into(),
    })
}

fn union_all(dim: usize, parts: &[&PointSet]) -> Result<PointSet> {
    if let Some(p) = parts.iter().find(|p| p.dim() != dim) {
        return Err(Error::DimensionMismatch(dim, p.dim()));
    }
    let all: BTreeSet<Point> = parts
        .iter()
        .flat_map(|p| p.points().iter().cloned())
        .collect();
    PointSet::new(dim, all.into_iter().collect())
}

pub fn check_nonnegativity(s: &SetModel, r: &BigRational) -> Result<PropertyReport> {
    check_nonnegativity_with(&GridCounter, s, r)
}

/// `mu(empty) = 0`, and a non-empty set has a positive count.
pub fn check_nonnegativity_with(
    f: &dyn SizeFunction,
    s: &SetModel,
    r: &BigRational,
) -> Result<PropertyReport> {
    let mut report = PropertyReport::new("nonnegativity");
    report.trials = 1;
    let empty = SetModel::Points(PointSet::empty(s.dim()));
    let n_empty = f.grid_count(&empty, r)?;
    if !n_empty.is_zero() {
        report.failures.push(failure(
            Some(r),
            &[&empty],
            &[&n_empty],
            "empty set has non-zero size".into(),
        ));
    }
    let n = f.grid_count(s, r)?;
    let non_empty = s.as_points().is_none_or(|p| !p.is_empty());
    if non_empty && n.is_zero() {
        report.failures.push(failure(
            Some(r),
            &[s],
            &[&n],
            "non-empty set has zero size".into(),
        ));
    }
    Ok(report)
}

pub fn check_monotonicity(a: &SetModel, b: &SetModel, r: &BigRational) -> Result<PropertyReport> {
    check_monotonicity_with(&GridCounter, a, b, r)
}

/// `a ⊆ b` implies `N_a(r) <= N_b(r)`.
pub fn check_monotonicity_with(
    f: &dyn SizeFunction,
    a: &SetModel,
    b: &SetModel,
    r: &BigRational,
) -> Result<PropertyReport> {
    let (pa, pb) = (
        points(a, "check_monotonicity")?,
        points(b, "check_monotonicity")?,
    );
    if !(pa.is_empty() || pa.is_subset(pb)) {
        return Err(Error::NotASubset);
    }
    let mut report = PropertyReport::new("monotonicity");
    report.trials = 1;
    let (na, nb) = (f.grid_count(a, r)?, f.grid_count(b, r)?);
    if na > nb {
        report.failures.push(failure(
            Some(r),
            &[a, b],
            &[&na, &nb],
            "subset measures larger".into(),
        ));
    }
    Ok(report)
}

pub fn check_subadditivity(parts: &[SetModel], r: &BigRational) -> Result<PropertyReport> {
    check_subadditivity_with(&GridCounter, parts, r)
}

/// `N_union(r) <= sum of N_i(r)`.
pub fn check_subadditivity_with(
    f: &dyn SizeFunction,
    parts: &[SetModel],
    r: &BigRational,
) -> Result<PropertyReport> {
    let mut report = PropertyReport::new("subadditivity");
    report.trials = 1;
    let sets = parts
        .iter()
        .map(|p| points(p, "check_subadditivity"))
        .collect::<Result<Vec<_>>>()?;
    let Some(first) = sets.first() else {
        return Ok(report);
    };
    let union = SetModel::Points(union_all(first.dim(), &sets)?);
    let n_union = f.grid_count(&union, r)?;
    let mut total = BigUint::zero();
    for p in parts {
        total += f.grid_count(p, r)?;
    }
    if n_union > total {
        report.failures.push(failure(
            Some(r),
            &parts.iter().collect::<Vec<_>>(),
            &[&n_union, &total],
            "union measures more than the sum of its parts".into(),
        ));
    }
    Ok(report)
}

pub fn check_additivity_graduation1(parts: &[SetModel]) -> Result<PropertyReport> {
    check_additivity_graduation1_with(&GridCounter, parts)
}

/// At graduation 1, pairwise-disjoint parts add exactly.
pub fn check_additivity_graduation1_with(
    f: &dyn SizeFunction,
    parts: &[SetModel],
) -> Result<PropertyReport> {
    let mut report = PropertyReport::new("additivity_graduation1");
    report.trials = 1;
    let sets = parts
        .iter()
        .map(|p| points(p, "check_additivity_graduation1"))
        .collect::<Result<Vec<_>>>()?;
    let Some(first) = sets.first() else {
        return Ok(report);
    };
    let total_points: usize = sets.iter().map(|s| s.len()).sum();
    let union = union_all(first.dim(), &sets)?;
    if union.len() != total_points {
        return Err(Error::NotDisjoint);
    }
    let lhs = f.unit_count(&union);
    let rhs: BigUint = sets.iter().map(|s| f.unit_count(s)).sum();
    if lhs != rhs {
        report.failures.push(failure(
            None,
            &parts.iter().collect::<Vec<_>>(),
            &[&lhs, &rhs],
            "disjoint union is not the sum of its parts".into(),
        ));
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub trials: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 42,
            trials: 1000,
        }
    }
}

// splitmix64 finalizer, so neighbouring trials get unrelated streams
fn trial_seed(seed: u64, property: u64, trial: u64) -> u64 {
    let mut z = seed
        .wrapping_add(property.wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add(trial.wrapping_mul(0xBF58_476D_1CE4_E5B9));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Random instance generators used by [`run_suite`].
pub mod generators {
    use super::*;

    /// Scale `p/q` with `p, q` in `1..=8`.
    pub fn scale(rng: &mut impl Rng) -> BigRational {
        BigRational::new(
            rng.gen_range(1..=8i64).into(),
            rng.gen_range(1..=8i64).into(),
        )
    }

    fn coordinate(rng: &mut impl Rng) -> BigRational {
        BigRational::new(
            rng.gen_range(-40..=40i64).into(),
            rng.gen_range(1..=4i64).into(),
        )
    }

    /// Up to `max_points` distinct points with coordinates `a/b`,
    /// `|a| <= 40`, `b <= 4`.
    pub fn point_set(rng: &mut impl Rng, dim: usize, max_points: usize) -> PointSet {
        let n = rng.gen_range(0..=max_points);
        let pts: BTreeSet<Point> = (0..n)
            .map(|_| Point((0..dim).map(|_| coordinate(rng)).collect()))
            .collect();
        PointSet::new(dim, pts.into_iter().collect()).unwrap()
    }

    pub fn subset(rng: &mut impl Rng, s: &PointSet) -> PointSet {
        let pts = s
            .points()
            .iter()
            .filter(|_| rng.gen_bool(0.5))
            .cloned()
            .collect();
        PointSet::new(s.dim(), pts).unwrap()
    }

    /// A set model together with a scale its grid cover accepts.
    pub fn measurable(rng: &mut impl Rng) -> (SetModel, BigRational) {
        match rng.gen_range(0..10) {
            0 => {
                let k = rng.gen_range(0..=8u32);
                (
                    IfsFractal::cantor().into(),
                    BigRational::new(1.into(), 3i64.pow(k).into()),
                )
            }
            1 => {
                let k = rng.gen_range(0..=8u32);
                (
                    IfsFractal::sierpinski().into(),
                    BigRational::new(1.into(), (1i64 << k).into()),
                )
            }
            2 => {
                let dim = rng.gen_range(1..=3);
                let lo: Vec<BigRational> = (0..dim).map(|_| coordinate(rng)).collect();
                let hi = lo
                    .iter()
                    .map(|a| a + BigRational::new(rng.gen_range(1..=20i64).into(), 3.into()))
                    .collect();
                (AxisBox::new(lo, hi).unwrap().into(), scale(rng))
            }
            _ => {
                let dim = rng.gen_range(1..=3);
                (point_set(rng, dim, 40).into(), scale(rng))
            }
        }
    }

    /// Possibly overlapping parts drawn from one shared pool.
    pub fn overlapping_family(rng: &mut impl Rng, max_parts: usize) -> Vec<SetModel> {
        let dim = rng.gen_range(1..=2);
        let pool = point_set(rng, dim, 60);
        let parts = rng.gen_range(1..=max_parts);
        (0..parts).map(|_| subset(rng, &pool).into()).collect()
    }

    /// Pairwise-disjoint parts: at most `max_parts` parts of at most
    /// `max_points` points each, with duplicates rejected across the family.
    pub fn disjoint_family(
        rng: &mut impl Rng,
        max_parts: usize,
        max_points: usize,
    ) -> Vec<SetModel> {
        let mut seen: HashSet<(i64, i64)> = HashSet::new();
        let parts = rng.gen_range(1..=max_parts);
        (0..parts)
            .map(|_| {
                let n = rng.gen_range(0..=max_points);
                let mut pts = Vec::with_capacity(n);
                while pts.len() < n {
                    let xy = (
                        rng.gen_range(-10_000..10_000i64),
                        rng.gen_range(-10_000..10_000i64),
                    );
                    if seen.insert(xy) {
                        pts.push(Point::from_integers(&[xy.0, xy.1]));
                    }
                }
                PointSet::new(2, pts).unwrap().into()
            })
            .collect()
    }
}

/// Runs the four checkers on `trials` generated instances each.
pub fn run_suite(cfg: &SuiteConfig, f: &dyn SizeFunction) -> Result<Vec<PropertyReport>> {
    let mut reports = vec![
        PropertyReport::new("nonnegativity"),
        PropertyReport::new("monotonicity"),
        PropertyReport::new("subadditivity"),
        PropertyReport::new("additivity_graduation1"),
    ];
    for trial in 0..cfg.trials {
        let t = trial as u64;

        let seed = trial_seed(cfg.seed, 0, t);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (s, r) = generators::measurable(&mut rng);
        reports[0].merge(check_nonnegativity_with(f, &s, &r)?, trial, seed);

        let seed = trial_seed(cfg.seed, 1, t);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dim = rng.gen_range(1..=3);
        let b = generators::point_set(&mut rng, dim, 60);
        let a = generators::subset(&mut rng, &b);
        let r = generators::scale(&mut rng);
        reports[1].merge(
            check_monotonicity_with(f, &a.into(), &b.into(), &r)?,
            trial,
            seed,
        );

        let seed = trial_seed(cfg.seed, 2, t);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let parts = generators::overlapping_family(&mut rng, 8);
        let r = generators::scale(&mut rng);
        reports[2].merge(check_subadditivity_with(f, &parts, &r)?, trial, seed);

        let seed = trial_seed(cfg.seed, 3, t);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let parts = generators::disjoint_family(&mut rng, 50, 100);
        reports[3].merge(check_additivity_graduation1_with(f, &parts)?, trial, seed);
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn ints(v: &[i64]) -> SetModel {
        PointSet::from_integers(v).unwrap().into()
    }

    #[test]
    fn nonnegativity_examples() {
        let empty = SetModel::Points(PointSet::empty(1));
        assert!(check_nonnegativity(&empty, &q(1, 2)).unwrap().passed());
        assert_eq!(
            GridCounter.grid_count(&empty, &q(1, 2)).unwrap(),
            BigUint::zero()
        );
        assert!(check_nonnegativity(&ints(&[0]), &q(1, 2)).unwrap().passed());
        assert_eq!(
            GridCounter.grid_count(&ints(&[0]), &q(1, 2)).unwrap(),
            BigUint::from(1u32)
        );
        let cantor: SetModel = IfsFractal::cantor().into();
        assert!(check_nonnegativity(&cantor, &q(1, 9)).unwrap().passed());
        assert_eq!(
            GridCounter.grid_count(&cantor, &q(1, 9)).unwrap(),
            BigUint::from(4u32)
        );
    }

    #[test]
    fn monotonicity_examples() {
        let rep = check_monotonicity(&ints(&[0]), &ints(&[0, 5]), &q(1, 1)).unwrap();
        assert!(rep.passed());
        let empty = SetModel::Points(PointSet::empty(1));
        assert!(check_monotonicity(&empty, &ints(&[3, 4]), &q(7, 2))
            .unwrap()
            .passed());
        assert_eq!(
            check_monotonicity(&ints(&[1]), &ints(&[0, 5]), &q(1, 1)),
            Err(Error::NotASubset)
        );
    }

    #[test]
    fn subadditivity_examples() {
        let r = q(1, 2);
        let parts = [ints(&[0, 1]), ints(&[1, 2])];
        assert!(check_subadditivity(&parts, &r).unwrap().passed());
        let union = ints(&[0, 1, 2]);
        assert_eq!(
            GridCounter.grid_count(&union, &r).unwrap(),
            BigUint::from(3u32)
        );
        let sum: BigUint = parts
            .iter()
            .map(|p| GridCounter.grid_count(p, &r).unwrap())
            .sum();
        assert_eq!(sum, BigUint::from(4u32));

        let far = [ints(&[0, 10]), ints(&[20, 30])];
        assert!(check_subadditivity(&far, &r).unwrap().passed());
        let n = GridCounter.grid_count(&ints(&[0, 10, 20, 30]), &r).unwrap();
        assert_eq!(n, BigUint::from(4u32));
    }

    #[test]
    fn additivity_examples() {
        let parts = [ints(&[0]), ints(&[1]), ints(&[2])];
        assert!(check_additivity_graduation1(&parts).unwrap().passed());
        assert!(check_additivity_graduation1(&[ints(&[4, 5])])
            .unwrap()
            .passed());
        assert_eq!(
            check_additivity_graduation1(&[ints(&[0, 1]), ints(&[1])]),
            Err(Error::NotDisjoint)
        );
    }

    #[test]
    fn checkers_reject_non_point_models() {
        let cantor: SetModel = IfsFractal::cantor().into();
        assert!(check_monotonicity(&cantor, &cantor, &q(1, 3)).is_err());
        assert!(check_subadditivity(std::slice::from_ref(&cantor), &q(1, 3)).is_err());
        assert!(check_additivity_graduation1(&[cantor]).is_err());
    }

    #[test]
    fn single_trial_suite() {
        let reports = run_suite(&SuiteConfig { seed: 7, trials: 1 }, &GridCounter).unwrap();
        assert_eq!(reports.len(), 4);
        assert!(reports.iter().all(|r| r.trials == 1 && r.passed()));
    }

    #[test]
    fn disjoint_generator_is_disjoint() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let parts = generators::disjoint_family(&mut rng, 50, 100);
            assert!(parts.len() <= 50);
            let sets: Vec<&PointSet> = parts.iter().map(|p| p.as_points().unwrap()).collect();
            assert!(sets.iter().all(|s| s.len() <= 100));
            let total: usize = sets.iter().map(|s| s.len()).sum();
            assert_eq!(union_all(2, &sets).unwrap().len(), total);
        }
    }
}
