//! Arithmetic on counts: finite values, w and towers of 2^x.

use setsize::{Comparison, MValue};

fn main() -> setsize::Result<()> {
    let w = MValue::Omega;
    let two_w = w.pow2()?;
    let tower = two_w.pow2()?;

    println!("w + 0       = {}", w.add(&MValue::zero()));
    println!("w * 1       = {}", w.mul(&MValue::one()));
    println!("w + w       = {}", w.add(&w));
    println!(
        "2^3 + 5     = {}",
        MValue::from(3).pow2()?.add(&MValue::from(5))
    );
    println!(
        "7 - 4       = {}",
        MValue::from(7).checked_sub(&MValue::from(4))?
    );
    println!(
        "4 - 7       = {}",
        MValue::from(4).checked_sub(&MValue::from(7)).unwrap_err()
    );

    for (a, b) in [
        (&MValue::from(1_000_000), &w),
        (&w, &two_w),
        (&tower, &two_w),
    ] {
        println!("cmp({a}, {b}) = {:?}", a.compare(b));
    }
    let sum = w.add(&MValue::one());
    assert_eq!(sum.compare(&two_w), Comparison::Incomparable);
    println!("cmp({sum}, {two_w}) = Incomparable");

    let parsed: MValue = "2^(2^w)".parse()?;
    assert_eq!(parsed, tower);
    println!("parsed tower height: {:?}", parsed.tower_height());
    Ok(())
}
