//! Box-counting dimension of sampled data: uniform points of the unit
//! interval and of the unit square.

use setsize::report::{cmd_dim, Input, RunConfig};

fn main() -> setsize::Result<()> {
    for (n, dim) in [(100_000, 1), (100_000, 2)] {
        let cfg = RunConfig {
            inputs: vec![Input::Uniform { n, dim }],
            sweep: Some("1/16:1/2:5".parse()?),
            workers: 4,
            seed: 7,
            ..RunConfig::default()
        };
        let rep = cmd_dim(&cfg)?;
        println!("{n} samples in [0,1)^{dim}");
        for s in &rep.fit.samples {
            println!("  r = {:<6} N = {}", s.scale, s.count);
        }
        println!("  slope {:.4}  R^2 {:.6}", rep.fit.slope, rep.fit.r_squared);
    }
    Ok(())
}
