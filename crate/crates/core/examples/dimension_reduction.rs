//! A point cloud and its collision-free projection to fewer dimensions
//! have the same size at graduation 1, while grid counts may differ.

use num_rational::BigRational;
use setsize::cover::{measure_size, sizes_equal};
use setsize::sampling::{lattice_cloud, random_projection, rng};
use setsize::SetModel;

fn main() -> setsize::Result<()> {
    let mut g = rng(2024);
    let cloud = lattice_cloud(&mut g, 500, 5, 1000)?;
    let (matrix, projected) = random_projection(&mut g, &cloud, 2)?;
    println!(
        "projection rows: {:?}",
        matrix
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>())
            .collect::<Vec<_>>()
    );

    let a: SetModel = cloud.into();
    let b: SetModel = projected.into();
    println!("graduation-1 sizes equal: {}", sizes_equal(&a, &b)?);

    let r = BigRational::new(100.into(), 1.into());
    println!(
        "at r = {r}: d=5 {}  d=2 {}",
        measure_size(&a, &r)?,
        measure_size(&b, &r)?
    );
    Ok(())
}
