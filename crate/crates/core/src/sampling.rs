//! Seeded point-cloud generators.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::set::{Point, PointSet};

/// Denominator of uniform samples: coordinates are `u / 2^40`.
pub const UNIFORM_BITS: u32 = 40;

const PROJECTION_ATTEMPTS: usize = 64;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n` distinct points of `[0,1)^dim` on the `2^-40` lattice.
pub fn uniform_unit_cube(rng: &mut impl Rng, n: usize, dim: usize) -> Result<PointSet> {
    let denom = BigInt::from(1u64 << UNIFORM_BITS);
    let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
    while seen.len() < n {
        seen.insert(
            (0..dim)
                .map(|_| rng.gen_range(0..1u64 << UNIFORM_BITS))
                .collect(),
        );
    }
    let pts = seen
        .into_iter()
        .map(|c| {
            Point(
                c.into_iter()
                    .map(|u| BigRational::new(u.into(), denom.clone()))
                    .collect(),
            )
        })
        .collect();
    PointSet::new(dim, pts)
}

/// `n` distinct integer points with coordinates in `-extent..=extent`.
pub fn lattice_cloud(rng: &mut impl Rng, n: usize, dim: usize, extent: i64) -> Result<PointSet> {
    let side = (2 * extent + 1) as f64;
    if side.powi(dim as i32) < n as f64 {
        return Err(Error::Config(format!(
            "{n} points do not fit in a lattice of extent {extent}"
        )));
    }
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    while seen.len() < n {
        seen.insert((0..dim).map(|_| rng.gen_range(-extent..=extent)).collect());
    }
    let pts = seen.into_iter().map(|c| Point::from_integers(&c)).collect();
    PointSet::new(dim, pts)
}

/// A `target x dim` integer matrix with entries in `-3..=3`.
pub fn random_matrix(rng: &mut impl Rng, target: usize, dim: usize) -> Vec<Vec<BigRational>> {
    (0..target)
        .map(|_| {
            (0..dim)
                .map(|_| BigRational::from_integer(rng.gen_range(-3..=3i64).into()))
                .collect()
        })
        .collect()
}

/// Projects `s` to `target` dimensions with a random linear map, redrawing
/// the map until no two points collide.
pub fn random_projection(
    rng: &mut impl Rng,
    s: &PointSet,
    target: usize,
) -> Result<(Vec<Vec<BigRational>>, PointSet)> {
    for _ in 0..PROJECTION_ATTEMPTS {
        let m = random_matrix(rng, target, s.dim());
        match s.project(&m) {
            Ok(p) => return Ok((m, p)),
            Err(Error::ProjectionCollision) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::ProjectionCollision)
}
