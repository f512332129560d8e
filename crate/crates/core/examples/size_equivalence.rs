//! Size equivalence at one scale versus equality at graduation 1.

use num_rational::BigRational;
use setsize::cover::{grid_cover, sizes_equal, sizes_equivalent_at};
use setsize::set::is_translation;
use setsize::{PointSet, SetModel};

fn ints(v: &[i64]) -> SetModel {
    PointSet::from_integers(v).unwrap().into()
}

fn main() -> setsize::Result<()> {
    let r = BigRational::from_integer(1.into());
    let a = ints(&[0, 1, 2]);
    let shifted = ints(&[10, 11, 12]);
    let spread = ints(&[0, 2, 4]);

    println!(
        "translation a -> shifted: {:?}",
        is_translation(&a, &shifted)?.map(|t| t
            .offset
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>())
    );
    for (name, b) in [("shifted", &shifted), ("spread", &spread)] {
        println!(
            "a vs {name}: covers {} / {}, equivalent at r=1: {}, equal at graduation 1: {}",
            grid_cover(&a, &r)?.count(),
            grid_cover(b, &r)?.count(),
            sizes_equivalent_at(&a, b, &r)?,
            sizes_equal(&a, b)?,
        );
    }
    Ok(())
}
