//! Exact box counts of the Cantor set and Sierpinski triangle, and the
//! log-log fit of their dimensions.

use num_rational::BigRational;
use setsize::cover::measure_size;
use setsize::fit::fit_dimension;
use setsize::{IfsFractal, SetModel};

fn sweep(f: IfsFractal, levels: u32) -> setsize::Result<()> {
    let m = f.ratio();
    let reference = f.similarity_dimension();
    let model: SetModel = f.into();
    let mut samples = Vec::new();
    for k in 1..=levels {
        let r = BigRational::new(
            1.into(),
            num_traits::pow(num_bigint::BigInt::from(m), k as usize),
        );
        let pair = measure_size(&model, &r)?;
        println!("  {pair}");
        samples.push((r, pair.count.as_finite().unwrap().clone()));
    }
    let fit = fit_dimension(&samples)?;
    println!(
        "  slope {:.10}  reference {:.10}  R^2 {}",
        fit.slope, reference, fit.r_squared
    );
    Ok(())
}

fn main() -> setsize::Result<()> {
    println!("cantor");
    sweep(IfsFractal::cantor(), 20)?;
    println!("sierpinski");
    sweep(IfsFractal::sierpinski(), 20)
}
