//! Measured sets: finite point clouds, boxes, grid-aligned self-similar
//! fractals and the symbolic naturals.

use std::collections::BTreeSet;
use std::fmt;
use std::io::Read;
use std::path::Path;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::pair::parse_rational;

/// A point with exact rational coordinates. Ordered lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point(pub Vec<BigRational>);

impl Point {
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn from_integers(coords: &[i64]) -> Self {
        Point(
            coords
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    fn shifted(&self, offset: &[BigRational]) -> Point {
        Point(self.0.iter().zip(offset).map(|(a, e)| a + e).collect())
    }

    /// Chebyshev (max-coordinate) distance.
    pub fn chebyshev(&self, other: &Point) -> BigRational {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).abs())
            .max()
            .unwrap_or_else(BigRational::zero)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// A finite set of distinct points in a fixed ambient dimension.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PointSet {
    dim: usize,
    points: Vec<Point>,
}

impl PointSet {
    /// Builds a set, rejecting duplicates and mixed dimensions.
    pub fn new(dim: usize, points: Vec<Point>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidModel("ambient dimension must be >= 1".into()));
        }
        if let Some(p) = points.iter().find(|p| p.dim() != dim) {
            return Err(Error::DimensionMismatch(dim, p.dim()));
        }
        let mut points = points;
        points.sort();
        if let Some(w) = points.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidModel(format!("duplicate point {}", w[0])));
        }
        Ok(PointSet { dim, points })
    }

    pub fn empty(dim: usize) -> Self {
        PointSet {
            dim: dim.max(1),
            points: Vec::new(),
        }
    }

    /// One-dimensional set from integer values.
    pub fn from_integers(values: &[i64]) -> Result<Self> {
        PointSet::new(
            1,
            values.iter().map(|&v| Point::from_integers(&[v])).collect(),
        )
    }

    /// Builds a set from integer coordinate tuples of dimension `dim`.
    pub fn from_integer_points(dim: usize, points: &[Vec<i64>]) -> Result<Self> {
        PointSet::new(
            dim,
            points.iter().map(|p| Point::from_integers(p)).collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Points in lexicographic order.
    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.points.binary_search(p).is_ok()
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.dim == other.dim && self.points.iter().all(|p| other.contains(p))
    }

    pub fn is_disjoint(&self, other: &PointSet) -> bool {
        self.points.iter().all(|p| !other.contains(p))
    }

    pub fn translate(&self, t: &Translation) -> Result<PointSet> {
        if t.offset.len() != self.dim {
            return Err(Error::DimensionMismatch(self.dim, t.offset.len()));
        }
        // translation preserves lexicographic order
        Ok(PointSet {
            dim: self.dim,
            points: self.points.iter().map(|p| p.shifted(&t.offset)).collect(),
        })
    }

    /// Set union of sets with equal dimension; shared points kept once.
    pub fn union(&self, other: &PointSet) -> Result<PointSet> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        let merged: BTreeSet<Point> = self.points.iter().chain(&other.points).cloned().collect();
        Ok(PointSet {
            dim: self.dim,
            points: merged.into_iter().collect(),
        })
    }

    /// Linear image under `matrix` (rows = output coordinates). Fails if two
    /// points collide, since the image would have fewer points.
    pub fn project(&self, matrix: &[Vec<BigRational>]) -> Result<PointSet> {
        if let Some(row) = matrix.iter().find(|row| row.len() != self.dim) {
            return Err(Error::DimensionMismatch(self.dim, row.len()));
        }
        let image: Vec<Point> = self
            .points
            .iter()
            .map(|p| {
                Point(
                    matrix
                        .iter()
                        .map(|row| row.iter().zip(&p.0).map(|(m, x)| m * x).sum())
                        .collect(),
                )
            })
            .collect();
        PointSet::new(matrix.len(), image).map_err(|e| match e {
            Error::InvalidModel(_) => Error::ProjectionCollision,
            e => e,
        })
    }

    /// Reads one point per CSV row. Cells hold integers, decimals or `p/q`.
    pub fn read_csv<R: Read>(reader: R, delimiter: u8, has_header: bool) -> Result<PointSet> {
        let mut rdr = csv::ReaderBuilder::new()
            .delimiter(delimiter)
            .has_headers(has_header)
            .flexible(true)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let mut points = Vec::new();
        let mut seen = BTreeSet::new();
        let mut dim = None;
        for record in rdr.records() {
            let record = record.map_err(|e| {
                let line = e.position().map_or(0, |p| p.line() as usize);
                Error::parse(line, e.to_string())
            })?;
            let line = record.position().map_or(0, |p| p.line() as usize);
            if record.iter().all(|c| c.is_empty()) {
                continue;
            }
            let coords = record
                .iter()
                .map(|cell| {
                    parse_rational(cell)
                        .map_err(|_| Error::parse(line, format!("bad coordinate {cell:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            match dim {
                None => dim = Some(coords.len()),
                Some(d) if d != coords.len() => {
                    return Err(Error::parse(
                        line,
                        format!("expected {d} coordinates, found {}", coords.len()),
                    ))
                }
                _ => {}
            }
            let p = Point(coords);
            if !seen.insert(p.clone()) {
                return Err(Error::parse(line, format!("duplicate point {p}")));
            }
            points.push(p);
        }
        let dim = dim.ok_or_else(|| Error::parse(0, "no points"))?;
        PointSet::new(dim, points)
    }

    pub fn read_csv_path(path: &Path, delimiter: u8, has_header: bool) -> Result<PointSet> {
        let file = std::fs::File::open(path)?;
        PointSet::read_csv(std::io::BufReader::new(file), delimiter, has_header)
    }
}

/// Axis-aligned product of half-open intervals `[lo_i, hi_i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AxisBox {
    lo: Vec<BigRational>,
    hi: Vec<BigRational>,
}

impl AxisBox {
    pub fn new(lo: Vec<BigRational>, hi: Vec<BigRational>) -> Result<Self> {
        if lo.is_empty() || lo.len() != hi.len() {
            return Err(Error::DimensionMismatch(lo.len(), hi.len()));
        }
        if lo.iter().zip(&hi).any(|(a, b)| a >= b) {
            return Err(Error::InvalidModel(
                "box is degenerate along an axis".into(),
            ));
        }
        Ok(AxisBox { lo, hi })
    }

    /// `[0, 1)^dim`.
    pub fn unit(dim: usize) -> Self {
        AxisBox {
            lo: vec![BigRational::zero(); dim],
            hi: vec![BigRational::from_integer(1.into()); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self) -> &[BigRational] {
        &self.lo
    }

    pub fn hi(&self) -> &[BigRational] {
        &self.hi
    }

    pub fn contains(&self, p: &Point) -> bool {
        p.dim() == self.dim()
            && (0..self.dim()).all(|i| self.lo[i] <= p.0[i] && p.0[i] < self.hi[i])
    }
}

/// Self-similar attractor of the maps `x -> (x + o) / m` for each offset
/// `o` in `{0..m-1}^dim`. Lives in `[0,1]^dim`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IfsFractal {
    ratio: u32,
    dim: usize,
    offsets: Vec<Vec<u32>>,
}

impl IfsFractal {
    pub fn new(ratio: u32, dim: usize, offsets: Vec<Vec<u32>>) -> Result<Self> {
        if ratio < 2 {
            return Err(Error::InvalidModel(
                "contraction ratio must be 1/m with m >= 2".into(),
            ));
        }
        if dim == 0 || offsets.is_empty() {
            return Err(Error::InvalidModel(
                "need dim >= 1 and at least one map".into(),
            ));
        }
        if offsets
            .iter()
            .any(|o| o.len() != dim || o.iter().any(|&c| c >= ratio))
        {
            return Err(Error::InvalidModel(format!(
                "offsets must lie in {{0..{}}}^{dim}",
                ratio - 1
            )));
        }
        let mut sorted = offsets.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != offsets.len() {
            return Err(Error::InvalidModel("offsets must be distinct".into()));
        }
        Ok(IfsFractal {
            ratio,
            dim,
            offsets: sorted,
        })
    }

    /// Middle-thirds Cantor set.
    pub fn cantor() -> Self {
        IfsFractal::new(3, 1, vec![vec![0], vec![2]]).unwrap()
    }

    /// Sierpinski triangle on the unit right triangle.
    pub fn sierpinski() -> Self {
        IfsFractal::new(2, 2, vec![vec![0, 0], vec![1, 0], vec![0, 1]]).unwrap()
    }

    pub fn preset(name: &str) -> Result<Self> {
        match name {
            "cantor" => Ok(IfsFractal::cantor()),
            "sierpinski" => Ok(IfsFractal::sierpinski()),
            other => Err(Error::Config(format!("unknown preset {other:?}"))),
        }
    }

    pub fn ratio(&self) -> u32 {
        self.ratio
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn offsets(&self) -> &[Vec<u32>] {
        &self.offsets
    }

    pub fn branching(&self) -> usize {
        self.offsets.len()
    }

    /// Similarity dimension `ln b / ln m`.
    pub fn similarity_dimension(&self) -> f64 {
        (self.branching() as f64).ln() / (self.ratio as f64).ln()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SetModel {
    Points(PointSet),
    Box(AxisBox),
    Fractal(IfsFractal),
    Naturals,
}

impl SetModel {
    /// Ambient dimension; the naturals count as one-dimensional.
    pub fn dim(&self) -> usize {
        match self {
            SetModel::Points(s) => s.dim(),
            SetModel::Box(b) => b.dim(),
            SetModel::Fractal(f) => f.dim(),
            SetModel::Naturals => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            SetModel::Points(_) => "points",
            SetModel::Box(_) => "box",
            SetModel::Fractal(_) => "fractal",
            SetModel::Naturals => "naturals",
        }
    }

    pub fn describe(&self) -> ModelSummary {
        let (points, detail) = match self {
            SetModel::Points(s) => (Some(s.len()), None),
            SetModel::Box(b) => (
                None,
                Some(
                    b.lo()
                        .iter()
                        .zip(b.hi())
                        .map(|(a, c)| format!("[{a},{c})"))
                        .collect::<Vec<_>>()
                        .join("x"),
                ),
            ),
            SetModel::Fractal(f) => (
                None,
                Some(format!("ratio 1/{}, {} maps", f.ratio(), f.branching())),
            ),
            SetModel::Naturals => (None, None),
        };
        ModelSummary {
            kind: self.kind(),
            dim: self.dim(),
            points,
            detail,
        }
    }

    pub fn as_points(&self) -> Option<&PointSet> {
        match self {
            SetModel::Points(s) => Some(s),
            _ => None,
        }
    }

    fn points_or(&self, op: &'static str) -> Result<&PointSet> {
        self.as_points().ok_or_else(|| Error::UnsupportedModel {
            op,
            model: self.kind().into(),
        })
    }
}

impl From<PointSet> for SetModel {
    fn from(s: PointSet) -> Self {
        SetModel::Points(s)
    }
}

impl From<AxisBox> for SetModel {
    fn from(b: AxisBox) -> Self {
        SetModel::Box(b)
    }
}

impl From<IfsFractal> for SetModel {
    fn from(f: IfsFractal) -> Self {
        SetModel::Fractal(f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModelSummary {
    pub kind: &'static str,
    pub dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// A constant shift `x -> x + offset`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Translation {
    pub offset: Vec<BigRational>,
}

impl Translation {
    pub fn zero(dim: usize) -> Self {
        Translation {
            offset: vec![BigRational::zero(); dim],
        }
    }

    pub fn negate(&self) -> Translation {
        Translation {
            offset: self.offset.iter().map(|c| -c).collect(),
        }
    }
}

fn diff(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    a.iter().zip(b).map(|(x, y)| y - x).collect()
}

/// The offset `e` with `a + e = b`, if one exists.
pub fn is_translation(a: &SetModel, b: &SetModel) -> Result<Option<Translation>> {
    let unsupported = |m: &SetModel| Error::UnsupportedModel {
        op: "is_translation",
        model: m.kind().into(),
    };
    for m in [a, b] {
        if matches!(m, SetModel::Fractal(_) | SetModel::Naturals) {
            return Err(unsupported(m));
        }
    }
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(a.dim(), b.dim()));
    }
    match (a, b) {
        (SetModel::Points(a), SetModel::Points(b)) => {
            if a.len() != b.len() {
                return Ok(None);
            }
            let mut pairs = a.points().iter().zip(b.points());
            let Some((first_a, first_b)) = pairs.next() else {
                return Ok(Some(Translation::zero(a.dim())));
            };
            let offset = diff(&first_a.0, &first_b.0);
            let constant = pairs.all(|(x, y)| diff(&x.0, &y.0) == offset);
            Ok(constant.then_some(Translation { offset }))
        }
        (SetModel::Box(a), SetModel::Box(b)) => {
            let offset = diff(a.lo(), b.lo());
            Ok((diff(a.hi(), b.hi()) == offset).then_some(Translation { offset }))
        }
        _ => Ok(None),
    }
}

/// Union of two disjoint point sets.
pub fn union_disjoint(a: &SetModel, b: &SetModel) -> Result<SetModel> {
    let (a, b) = (
        a.points_or("union_disjoint")?,
        b.points_or("union_disjoint")?,
    );
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(a.dim(), b.dim()));
    }
    if !a.is_disjoint(b) {
        return Err(Error::NotDisjoint);
    }
    Ok(SetModel::Points(a.union(b)?))
}

/// `a x b` with coordinates concatenated.
pub fn cartesian_product(a: &SetModel, b: &SetModel) -> Result<SetModel> {
    let (a, b) = (
        a.points_or("cartesian_product")?,
        b.points_or("cartesian_product")?,
    );
    let points = a
        .points()
        .iter()
        .flat_map(|p| {
            b.points().iter().map(move |q| {
                let mut coords = p.0.clone();
                coords.extend(q.0.iter().cloned());
                Point(coords)
            })
        })
        .collect();
    Ok(SetModel::Points(PointSet::new(a.dim() + b.dim(), points)?))
}

/// Smallest Chebyshev distance between two distinct points.
pub fn min_gap(a: &SetModel) -> Result<BigRational> {
    let s = a.points_or("min_gap")?;
    if s.len() < 2 {
        return Err(Error::TooFewPoints);
    }
    // points are sorted by first coordinate, so the sweep can stop once the
    // first-axis gap alone reaches the best distance found
    let pts = s.points();
    let mut best: Option<BigRational> = None;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let lead = &pts[j].0[0] - &pts[i].0[0];
            if best.as_ref().is_some_and(|b| &lead >= b) {
                break;
            }
            let d = pts[i].chebyshev(&pts[j]);
            if best.as_ref().is_none_or(|b| &d < b) {
                best = Some(d);
            }
        }
    }
    Ok(best.unwrap())
}
