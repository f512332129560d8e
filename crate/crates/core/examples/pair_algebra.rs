//! The size-pair calculus and the expression evaluator behind `setsize algebra`.

use num_rational::BigRational;
use setsize::algebra::evaluate;
use setsize::{Scale, SizePair};

fn main() -> setsize::Result<()> {
    let half = Scale::ratio(1, 2)?;
    let x = SizePair::new(half.clone(), 3u64);
    let y = SizePair::new(half.clone(), 8u64);

    println!("{x} + {y} = {}", x.add(&y)?);
    println!("{y} - {x} = {}", y.sub(&x)?);
    println!("dist({x}, {y}) = {}", x.distance(&y)?);
    println!("{x} * {x} = {}", x.mul(&x)?);
    println!(
        "3 . {x} = {}",
        x.scalar(&BigRational::from_integer(3.into()))?
    );
    println!("dim {y} = {:.6}", y.dimension()?);
    println!("cmp({x}, {y}) = {:?}", x.compare(&y));
    if let Some(mid) = x.between(&y) {
        println!("between: {mid}");
    }

    for expr in [
        "(1/2,3)+(1/2,4)",
        "dim((1/27,8))",
        "dist((1/2,3),(1/2,8))",
        "(1/4,16)^1/2",
        "cmp((1/2,5),(1/3,5))",
        "(1/2,3)+(1/3,4)",
    ] {
        match evaluate(expr) {
            Ok(v) => println!("{expr:<24} => {v}"),
            Err(e) => println!("{expr:<24} => error {e}"),
        }
    }
    Ok(())
}
