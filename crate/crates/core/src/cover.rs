//! Covers and their counts.
//!
//! A grid cover at scale `r` is the set of half-open boxes
//! `prod [k_i r, (k_i + 1) r)` that meet the measured set, identified by
//! their integer index vectors `k`. Every box at one scale is a translate of
//! every other, so a grid cover yields a size pair `(r, N)`. The empty set is
//! an implicit member of every cover and is never counted.
//!
//! Self-similar fractals are covered by their level-`k` construction cells
//! at `r = m^-k`; those cells are grid boxes, and their number is exactly
//! `b^k` without enumerating them.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graduation::MValue;
use crate::pair::{Scale, SizePair};
use crate::set::{is_translation, AxisBox, IfsFractal, Point, PointSet, SetModel};

pub type CellIndex = Vec<BigInt>;

/// Largest cover that [`sizes_equivalent_at`] will materialize.
pub const MATERIALIZE_LIMIT: u64 = 10_000_000;

/// Occupied grid cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cells {
    Sparse(BTreeSet<CellIndex>),
    /// Every index with `lo <= k < hi` componentwise.
    Range {
        lo: CellIndex,
        hi: CellIndex,
    },
    /// Level-`level` construction cells of a fractal.
    Ifs {
        fractal: IfsFractal,
        level: u32,
    },
}

impl Cells {
    pub fn len(&self) -> BigUint {
        match self {
            Cells::Sparse(s) => BigUint::from(s.len()),
            Cells::Range { lo, hi } => lo
                .iter()
                .zip(hi)
                .map(|(a, b)| (b - a).to_biguint().unwrap_or_default())
                .product(),
            Cells::Ifs { fractal, level } => BigUint::from(fractal.branching()).pow(*level),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len().is_zero()
    }

    pub fn contains(&self, idx: &[BigInt]) -> bool {
        match self {
            Cells::Sparse(s) => s.contains(idx),
            Cells::Range { lo, hi } => {
                idx.len() == lo.len() && (0..lo.len()).all(|i| lo[i] <= idx[i] && idx[i] < hi[i])
            }
            Cells::Ifs { fractal, level } => ifs_contains(fractal, *level, idx),
        }
    }

    pub fn iter(&self) -> Box<dyn Iterator<Item = CellIndex> + '_> {
        match self {
            Cells::Sparse(s) => Box::new(s.iter().cloned()),
            Cells::Range { lo, hi } => Box::new(RangeIter::new(lo.clone(), hi.clone())),
            Cells::Ifs { fractal, level } => Box::new(IfsIter::new(fractal, *level)),
        }
    }

    pub fn is_subset(&self, other: &Cells) -> bool {
        if self == other {
            return true;
        }
        if let (Cells::Range { lo: a, hi: b }, Cells::Range { lo: c, hi: d }) = (self, other) {
            if self.is_empty() {
                return true;
            }
            return (0..a.len()).all(|i| c[i] <= a[i] && b[i] <= d[i]);
        }
        self.iter().all(|k| other.contains(&k))
    }

    fn materialize(&self) -> Result<BTreeSet<CellIndex>> {
        let n = self.len();
        if n > BigUint::from(MATERIALIZE_LIMIT) {
            return Err(Error::CoverTooLarge(n.to_string()));
        }
        Ok(match self {
            Cells::Sparse(s) => s.clone(),
            other => other.iter().collect(),
        })
    }
}

fn ifs_contains(f: &IfsFractal, level: u32, idx: &[BigInt]) -> bool {
    if idx.len() != f.dim() {
        return false;
    }
    let m = BigInt::from(f.ratio());
    let side = num_traits::pow(m.clone(), level as usize);
    if idx.iter().any(|k| k.is_negative() || k >= &side) {
        return false;
    }
    let mut rest: Vec<BigInt> = idx.to_vec();
    for _ in 0..level {
        let mut digit = Vec::with_capacity(rest.len());
        for k in rest.iter_mut() {
            let (q, r) = k.div_rem(&m);
            digit.push(r.to_u32().unwrap());
            *k = q;
        }
        if f.offsets().binary_search(&digit).is_err() {
            return false;
        }
    }
    true
}

struct RangeIter {
    lo: CellIndex,
    hi: CellIndex,
    next: Option<CellIndex>,
}

impl RangeIter {
    fn new(lo: CellIndex, hi: CellIndex) -> Self {
        let empty = lo.iter().zip(&hi).any(|(a, b)| a >= b);
        let next = (!empty).then(|| lo.clone());
        RangeIter { lo, hi, next }
    }
}

impl Iterator for RangeIter {
    type Item = CellIndex;

    fn next(&mut self) -> Option<CellIndex> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        for i in (0..succ.len()).rev() {
            succ[i] += 1;
            if succ[i] < self.hi[i] {
                self.next = Some(succ);
                break;
            }
            succ[i] = self.lo[i].clone();
        }
        Some(current)
    }
}

/// Enumerates construction cells by counting in base `b` over `level` digits.
struct IfsIter<'a> {
    fractal: &'a IfsFractal,
    digits: Option<Vec<usize>>,
}

impl<'a> IfsIter<'a> {
    fn new(fractal: &'a IfsFractal, level: u32) -> Self {
        IfsIter {
            fractal,
            digits: Some(vec![0; level as usize]),
        }
    }
}

impl Iterator for IfsIter<'_> {
    type Item = CellIndex;

    fn next(&mut self) -> Option<CellIndex> {
        let digits = self.digits.as_mut()?;
        let m = BigInt::from(self.fractal.ratio());
        let mut idx = vec![BigInt::zero(); self.fractal.dim()];
        for &d in digits.iter() {
            let offset = &self.fractal.offsets()[d];
            for (k, &o) in idx.iter_mut().zip(offset) {
                *k = &*k * &m + o;
            }
        }
        let b = self.fractal.branching();
        let mut i = digits.len();
        loop {
            if i == 0 {
                self.digits = None;
                break;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < b {
                break;
            }
            digits[i] = 0;
        }
        Some(idx)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Elements {
    Grid(Cells),
    /// Explicit member sets, deduplicated and sorted by insertion order.
    Sets(Vec<SetModel>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cover {
    scale: Option<BigRational>,
    dim: usize,
    elements: Elements,
}

impl Cover {
    pub fn grid(scale: BigRational, dim: usize, cells: Cells) -> Self {
        Cover {
            scale: Some(scale),
            dim,
            elements: Elements::Grid(cells),
        }
    }

    /// A cover by arbitrary point sets and boxes. Each member must meet
    /// `covered` and together they must contain it; empty members are the
    /// implicit empty set and are dropped.
    pub fn explicit(covered: &PointSet, members: Vec<SetModel>) -> Result<Self> {
        let mut kept: Vec<SetModel> = Vec::new();
        for m in members {
            let meets = match &m {
                SetModel::Points(s) if s.is_empty() => continue,
                SetModel::Points(s) => covered.points().iter().any(|p| s.contains(p)),
                SetModel::Box(b) => covered.points().iter().any(|p| b.contains(p)),
                other => {
                    return Err(Error::UnsupportedModel {
                        op: "explicit cover",
                        model: other.kind().into(),
                    })
                }
            };
            if !meets {
                return Err(Error::InvalidModel(
                    "cover member misses the covered set".into(),
                ));
            }
            if !kept.contains(&m) {
                kept.push(m);
            }
        }
        let contained = |p: &Point| {
            kept.iter().any(|m| match m {
                SetModel::Points(s) => s.contains(p),
                SetModel::Box(b) => b.contains(p),
                _ => false,
            })
        };
        if !covered.points().iter().all(contained) {
            return Err(Error::InvalidModel("cover does not contain the set".into()));
        }
        Ok(Cover {
            scale: None,
            dim: covered.dim(),
            elements: Elements::Sets(kept),
        })
    }

    pub fn scale(&self) -> Option<&BigRational> {
        self.scale.as_ref()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn elements(&self) -> &Elements {
        &self.elements
    }

    pub fn cells(&self) -> Option<&Cells> {
        match &self.elements {
            Elements::Grid(c) => Some(c),
            Elements::Sets(_) => None,
        }
    }

    /// The empty set is always a member.
    pub fn contains_empty(&self) -> bool {
        true
    }

    /// Number of non-empty members.
    pub fn count(&self) -> MValue {
        match &self.elements {
            Elements::Grid(c) => MValue::Finite(c.len()),
            Elements::Sets(s) => MValue::from(s.len() as u64),
        }
    }
}

/// Free-standing form of [`Cover::count`].
pub fn count(c: &Cover) -> MValue {
    c.count()
}

// floor((a/b) / (p/q)) = floor(a q / (b p))
fn cell_of(x: &BigRational, r: &BigRational) -> BigInt {
    (x.numer() * r.denom()).div_floor(&(x.denom() * r.numer()))
}

fn ceil_of(x: &BigRational, r: &BigRational) -> BigInt {
    (x.numer() * r.denom()).div_ceil(&(x.denom() * r.numer()))
}

fn point_cells(points: &[Point], r: &BigRational) -> BTreeSet<CellIndex> {
    points
        .iter()
        .map(|p| p.0.iter().map(|x| cell_of(x, r)).collect())
        .collect()
}

/// `k` with `r = m^-k`, if any.
fn ifs_level(f: &IfsFractal, r: &BigRational) -> Option<u32> {
    if !r.numer().is_one() {
        return None;
    }
    let m = BigInt::from(f.ratio());
    let mut d = r.denom().clone();
    let mut k = 0;
    while !d.is_one() {
        let (q, rem) = d.div_rem(&m);
        if !rem.is_zero() {
            return None;
        }
        d = q;
        k += 1;
    }
    Some(k)
}

fn check_scale(r: &BigRational) -> Result<()> {
    if r.is_positive() {
        Ok(())
    } else {
        Err(Error::InvalidScale(format!("{r} is not positive")))
    }
}

pub fn grid_cover(s: &SetModel, r: &BigRational) -> Result<Cover> {
    grid_cover_with_workers(s, r, 1)
}

/// Grid cover; point hashing is split across `workers` threads and the
/// partial cell sets are merged by union.
pub fn grid_cover_with_workers(s: &SetModel, r: &BigRational, workers: usize) -> Result<Cover> {
    check_scale(r)?;
    let cells = match s {
        SetModel::Points(ps) => {
            let pts = ps.points();
            let workers = workers.clamp(1, pts.len().max(1));
            if workers == 1 {
                Cells::Sparse(point_cells(pts, r))
            } else {
                let chunk = pts.len().div_ceil(workers);
                let partials: Vec<BTreeSet<CellIndex>> = std::thread::scope(|scope| {
                    let handles: Vec<_> = pts
                        .chunks(chunk)
                        .map(|c| scope.spawn(move || point_cells(c, r)))
                        .collect();
                    handles.into_iter().map(|h| h.join().unwrap()).collect()
                });
                let mut merged = BTreeSet::new();
                for p in partials {
                    merged.extend(p);
                }
                Cells::Sparse(merged)
            }
        }
        SetModel::Box(b) => box_cells(b, r),
        SetModel::Fractal(f) => {
            let level = ifs_level(f, r).ok_or_else(|| Error::ScaleNotAligned {
                scale: r.to_string(),
                ratio: f.ratio(),
            })?;
            Cells::Ifs {
                fractal: f.clone(),
                level,
            }
        }
        SetModel::Naturals => {
            return Err(Error::UnsupportedModel {
                op: "grid_cover",
                model: s.kind().into(),
            })
        }
    };
    Ok(Cover::grid(r.clone(), s.dim(), cells))
}

// box k meets [a, b) iff k r < b and (k + 1) r > a
fn box_cells(b: &AxisBox, r: &BigRational) -> Cells {
    Cells::Range {
        lo: b.lo().iter().map(|a| cell_of(a, r)).collect(),
        hi: b.hi().iter().map(|c| ceil_of(c, r)).collect(),
    }
}

/// `(r, N(r))` from the grid cover at `r`.
pub fn measure_size(s: &SetModel, r: &BigRational) -> Result<SizePair> {
    let c = grid_cover(s, r)?;
    Ok(SizePair::new(Scale::rational(r.clone())?, c.count()))
}

/// Measurement with a coarser graduation `g`: the count becomes
/// `ceil(N / g)`, which keeps the result integral.
pub fn apply_graduation(count: &MValue, g: &MValue) -> Result<MValue> {
    let g = match g.as_finite() {
        Some(g) if !g.is_zero() => g,
        _ => return Err(Error::InvalidGraduation(g.to_string())),
    };
    match count.as_finite() {
        Some(n) => Ok(MValue::Finite(n.div_ceil(g))),
        None => Err(Error::SymbolicUnsupported("graduation")),
    }
}

pub fn measure_size_graduated(s: &SetModel, r: &BigRational, g: &MValue) -> Result<SizePair> {
    let pair = measure_size(s, r)?;
    Ok(SizePair::new(pair.scale, apply_graduation(&pair.count, g)?))
}

/// Each member of `c1 \ c2` has a translate in `c2 \ c1`, and vice versa.
pub fn covers_equivalent(c1: &Cover, c2: &Cover) -> Result<bool> {
    match (&c1.elements, &c2.elements) {
        (Elements::Grid(a), Elements::Grid(b)) => {
            if c1.scale != c2.scale {
                return Err(Error::ScaleMismatch {
                    left: fmt_scale(&c1.scale),
                    right: fmt_scale(&c2.scale),
                });
            }
            if c1.dim != c2.dim {
                return Ok(a.is_empty() && b.is_empty());
            }
            // equal boxes at one scale are all translates of each other
            let left_rest = !a.is_subset(b);
            let right_rest = !b.is_subset(a);
            Ok(left_rest == right_rest)
        }
        (Elements::Sets(a), Elements::Sets(b)) => {
            let only_a: Vec<&SetModel> = a.iter().filter(|m| !b.contains(m)).collect();
            let only_b: Vec<&SetModel> = b.iter().filter(|m| !a.contains(m)).collect();
            let matched = |from: &[&SetModel], to: &[&SetModel]| -> Result<bool> {
                for x in from {
                    let mut found = false;
                    for y in to {
                        if x.dim() == y.dim() && is_translation(x, y)?.is_some() {
                            found = true;
                            break;
                        }
                    }
                    if !found {
                        return Ok(false);
                    }
                }
                Ok(true)
            };
            Ok(matched(&only_a, &only_b)? && matched(&only_b, &only_a)?)
        }
        _ => Err(Error::UnsupportedModel {
            op: "covers_equivalent",
            model: "mixed grid and explicit covers".into(),
        }),
    }
}

fn fmt_scale(s: &Option<BigRational>) -> String {
    s.as_ref()
        .map_or_else(|| "explicit".into(), |r| r.to_string())
}

fn min_corner(cells: &BTreeSet<CellIndex>) -> Option<CellIndex> {
    let mut it = cells.iter();
    let first = it.next()?.clone();
    Some(it.fold(first, |acc, k| {
        acc.into_iter()
            .zip(k)
            .map(|(a, b)| a.min(b.clone()))
            .collect()
    }))
}

/// Whether the grid cover of `s2` at `r`, moved so that its bounding corner
/// meets that of `s1`'s cover, is the same cell set.
pub fn sizes_equivalent_at(s1: &SetModel, s2: &SetModel, r: &BigRational) -> Result<bool> {
    let c1 = grid_cover(s1, r)?;
    let c2 = grid_cover(s2, r)?;
    let (a, b) = (c1.cells().unwrap(), c2.cells().unwrap());
    let (n1, n2) = (a.len(), b.len());
    if n1 != n2 {
        return Ok(false);
    }
    if n1.is_zero() {
        return Ok(true);
    }
    if c1.dim != c2.dim {
        return Ok(false);
    }
    if let (Cells::Range { lo: l1, hi: h1 }, Cells::Range { lo: l2, hi: h2 }) = (a, b) {
        return Ok((0..l1.len()).all(|i| &h1[i] - &l1[i] == &h2[i] - &l2[i]));
    }
    let (a, b) = (a.materialize()?, b.materialize()?);
    let (ca, cb) = (min_corner(&a).unwrap(), min_corner(&b).unwrap());
    let shift: Vec<BigInt> = ca.iter().zip(&cb).map(|(x, y)| x - y).collect();
    Ok(b.iter().all(|k| {
        let moved: CellIndex = k.iter().zip(&shift).map(|(x, e)| x + e).collect();
        a.contains(&moved)
    }))
}

/// Size equality at graduation 1: every singleton is a translate of every
/// other, so finite sets are equal in size exactly when their point counts
/// agree.
pub fn sizes_equal(s1: &SetModel, s2: &SetModel) -> Result<bool> {
    match (s1, s2) {
        (SetModel::Points(a), SetModel::Points(b)) => Ok(a.len() == b.len()),
        (SetModel::Naturals, SetModel::Naturals) => Ok(true),
        (SetModel::Naturals, SetModel::Points(_)) | (SetModel::Points(_), SetModel::Naturals) => {
            Ok(false)
        }
        (SetModel::Points(_) | SetModel::Naturals, other) | (other, _) => {
            Err(Error::UnsupportedModel {
                op: "sizes_equal",
                model: other.kind().into(),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::set::AxisBox;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn ints(v: &[i64]) -> SetModel {
        PointSet::from_integers(v).unwrap().into()
    }

    fn idx(v: &[i64]) -> CellIndex {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn cell_set(c: &Cover) -> BTreeSet<CellIndex> {
        c.cells().unwrap().iter().collect()
    }

    #[test]
    fn cantor_first_level() {
        let c = grid_cover(&IfsFractal::cantor().into(), &q(1, 3)).unwrap();
        assert_eq!(cell_set(&c), BTreeSet::from([idx(&[0]), idx(&[2])]));
        assert_eq!(c.count(), MValue::from(2u64));
    }

    #[test]
    fn points_fall_in_half_open_cells() {
        let s: SetModel = PointSet::new(1, vec![Point(vec![q(1, 10)]), Point(vec![q(9, 10)])])
            .unwrap()
            .into();
        let c = grid_cover(&s, &q(1, 2)).unwrap();
        assert_eq!(cell_set(&c), BTreeSet::from([idx(&[0]), idx(&[1])]));
        // a point on a boundary belongs to the upper cell
        let c = grid_cover(&ints(&[1]), &q(1, 2)).unwrap();
        assert_eq!(cell_set(&c), BTreeSet::from([idx(&[2])]));
        let c = grid_cover(&ints(&[-1]), &q(2, 3)).unwrap();
        assert_eq!(cell_set(&c), BTreeSet::from([idx(&[-2])]));
    }

    #[test]
    fn unit_interval_range() {
        let c = grid_cover(&AxisBox::unit(1).into(), &q(1, 10)).unwrap();
        assert_eq!(c.count(), MValue::from(10u64));
        let b: SetModel = AxisBox::new(vec![q(1, 4)], vec![q(3, 4)]).unwrap().into();
        // cells [0,1/3) [1/3,2/3) [2/3,1) all meet [1/4, 3/4)
        assert_eq!(
            grid_cover(&b, &q(1, 3)).unwrap().count(),
            MValue::from(3u64)
        );
        assert_eq!(
            grid_cover(&b, &q(1, 4)).unwrap().count(),
            MValue::from(2u64)
        );
    }

    #[test]
    fn count_examples() {
        let empty = SetModel::Points(PointSet::empty(1));
        assert_eq!(
            count(&grid_cover(&empty, &q(1, 2)).unwrap()),
            MValue::zero()
        );
        assert_eq!(
            count(&grid_cover(&ints(&[0]), &q(1, 2)).unwrap()),
            MValue::one()
        );
        assert_eq!(
            count(&grid_cover(&IfsFractal::cantor().into(), &q(1, 27)).unwrap()),
            MValue::from(8u64)
        );
    }

    #[test]
    fn measure_examples() {
        let pair = measure_size(&ints(&[0, 1, 2]), &q(1, 2)).unwrap();
        assert_eq!(pair.to_string(), "(1/2,3)");
        let pair = measure_size(&IfsFractal::cantor().into(), &q(1, 243)).unwrap();
        assert_eq!(pair.to_string(), "(1/243,32)");
        let pair = measure_size(&AxisBox::unit(2).into(), &q(1, 4)).unwrap();
        assert_eq!(pair.to_string(), "(1/4,16)");
    }

    #[test]
    fn scale_errors() {
        assert!(matches!(
            grid_cover(&IfsFractal::cantor().into(), &q(1, 2)),
            Err(Error::ScaleNotAligned { ratio: 3, .. })
        ));
        assert!(matches!(
            grid_cover(&IfsFractal::cantor().into(), &q(2, 9)),
            Err(Error::ScaleNotAligned { .. })
        ));
        assert_eq!(
            grid_cover(&IfsFractal::cantor().into(), &q(1, 1))
                .unwrap()
                .count(),
            MValue::one()
        );
        assert!(matches!(
            grid_cover(&ints(&[0]), &q(0, 1)),
            Err(Error::InvalidScale(_))
        ));
        assert!(matches!(
            grid_cover(&SetModel::Naturals, &q(1, 2)),
            Err(Error::UnsupportedModel { .. })
        ));
    }

    #[test]
    fn ifs_membership_matches_enumeration() {
        let f = IfsFractal::sierpinski();
        for level in 0..=4 {
            let cells = Cells::Ifs {
                fractal: f.clone(),
                level,
            };
            let listed: BTreeSet<CellIndex> = cells.iter().collect();
            assert_eq!(BigUint::from(listed.len()), cells.len());
            let side = 1i64 << level;
            for x in 0..side {
                for y in 0..side {
                    let k = idx(&[x, y]);
                    assert_eq!(cells.contains(&k), listed.contains(&k));
                }
            }
            assert!(!cells.contains(&idx(&[-1, 0])));
            assert!(!cells.contains(&idx(&[side, 0])));
        }
    }

    #[test]
    fn graduation_ceiling() {
        let three = MValue::from(3u64);
        assert_eq!(
            apply_graduation(&three, &MValue::from(2u64)).unwrap(),
            MValue::from(2u64)
        );
        assert_eq!(apply_graduation(&three, &MValue::one()).unwrap(), three);
        assert_eq!(
            apply_graduation(&three, &MValue::from(5u64)).unwrap(),
            MValue::one()
        );
        assert_eq!(
            apply_graduation(&MValue::zero(), &MValue::from(5u64)).unwrap(),
            MValue::zero()
        );
        assert!(apply_graduation(&three, &MValue::zero()).is_err());
        assert!(apply_graduation(&three, &MValue::Omega).is_err());
        let g = measure_size_graduated(&ints(&[0, 1, 2]), &q(1, 2), &MValue::from(2u64)).unwrap();
        assert_eq!(g.count, MValue::from(2u64));
    }

    #[test]
    fn cover_equivalence_examples() {
        let r = q(1, 1);
        let c = grid_cover(&ints(&[0, 1]), &r).unwrap();
        assert!(covers_equivalent(&c, &c).unwrap());
        let box0 = grid_cover(&ints(&[0]), &r).unwrap();
        let box5 = grid_cover(&ints(&[5]), &r).unwrap();
        assert!(covers_equivalent(&box0, &box5).unwrap());
        let both = grid_cover(&ints(&[0, 1]), &r).unwrap();
        assert!(!covers_equivalent(&both, &box0).unwrap());
        assert!(!covers_equivalent(&box0, &both).unwrap());
        let other_scale = grid_cover(&ints(&[0]), &q(1, 2)).unwrap();
        assert!(matches!(
            covers_equivalent(&box0, &other_scale),
            Err(Error::ScaleMismatch { .. })
        ));
    }

    #[test]
    fn explicit_covers() {
        let one = PointSet::from_integers(&[1]).unwrap();
        let two = PointSet::from_integers(&[2]).unwrap();
        let c1 =
            Cover::explicit(&one, vec![one.clone().into(), PointSet::empty(1).into()]).unwrap();
        let c2 = Cover::explicit(&two, vec![two.clone().into()]).unwrap();
        assert_eq!(c1.count(), MValue::one());
        assert!(c1.contains_empty());
        // the cover of {1} is, up to translation, a cover of {2}
        assert!(covers_equivalent(&c1, &c2).unwrap());

        let pair = PointSet::from_integers(&[0, 1]).unwrap();
        let halves = Cover::explicit(&pair, vec![ints(&[0]), ints(&[1])]).unwrap();
        let whole = Cover::explicit(&pair, vec![pair.clone().into()]).unwrap();
        assert!(!covers_equivalent(&halves, &whole).unwrap());
        assert_eq!(halves.count(), MValue::from(2u64));

        assert!(Cover::explicit(&pair, vec![ints(&[0])]).is_err());
        assert!(Cover::explicit(&pair, vec![pair.clone().into(), ints(&[7])]).is_err());
        let unit: SetModel = AxisBox::unit(1).into();
        let zero = PointSet::from_integers(&[0]).unwrap();
        assert_eq!(
            Cover::explicit(&zero, vec![unit]).unwrap().count(),
            MValue::one()
        );
        let grid = grid_cover(&ints(&[0]), &q(1, 1)).unwrap();
        assert!(covers_equivalent(&grid, &c1).is_err());
    }

    #[test]
    fn size_equivalence_examples() {
        let n: Vec<i64> = (0..=10).collect();
        let two_n: Vec<i64> = n.iter().map(|x| 2 * x).collect();
        assert!(!sizes_equivalent_at(&ints(&n), &ints(&two_n), &q(1, 1)).unwrap());
        assert!(sizes_equivalent_at(&ints(&n), &ints(&two_n), &q(25, 1)).unwrap());
        assert!(sizes_equivalent_at(&ints(&[0]), &ints(&[0, 1]), &q(3, 1)).unwrap());
        assert!(!sizes_equivalent_at(&ints(&[0]), &ints(&[0, 1]), &q(1, 2)).unwrap());
        for s in [
            ints(&[3, 9, 4]),
            IfsFractal::cantor().into(),
            AxisBox::unit(2).into(),
        ] {
            assert!(sizes_equivalent_at(&s, &s, &q(1, 9)).unwrap());
        }
        // translated copies are equivalent at every scale
        assert!(sizes_equivalent_at(&ints(&[0, 2, 3]), &ints(&[10, 12, 13]), &q(1, 3)).unwrap());
        let b1: SetModel = AxisBox::new(vec![q(0, 1)], vec![q(1, 1)]).unwrap().into();
        let b2: SetModel = AxisBox::new(vec![q(5, 1)], vec![q(6, 1)]).unwrap().into();
        assert!(sizes_equivalent_at(&b1, &b2, &q(1, 4)).unwrap());
    }

    #[test]
    fn size_equality_examples() {
        assert!(sizes_equal(&ints(&[0, 1, 2]), &ints(&[10, 20, 30])).unwrap());
        assert!(!sizes_equal(&ints(&[0, 1]), &ints(&[0, 1, 2])).unwrap());
        assert!(sizes_equal(&SetModel::Naturals, &SetModel::Naturals).unwrap());
        assert!(!sizes_equal(&SetModel::Naturals, &ints(&[1])).unwrap());
        assert!(sizes_equal(&AxisBox::unit(1).into(), &ints(&[1])).is_err());
        assert!(sizes_equal(&ints(&[1]), &IfsFractal::cantor().into()).is_err());
    }

    #[test]
    fn workers_agree_with_single_thread() {
        let pts: Vec<i64> = (0..1000).map(|i| (i * 7919) % 10007).collect();
        let s = ints(&pts);
        let one = grid_cover(&s, &q(13, 1)).unwrap();
        for w in [2, 3, 8, 5000] {
            assert_eq!(grid_cover_with_workers(&s, &q(13, 1), w).unwrap(), one);
        }
    }
}
