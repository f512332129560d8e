//! The cover count as an outer measure: the seeded property suite, and a
//! broken counter that it catches.

use num_bigint::BigUint;
use num_rational::BigRational;
use setsize::properties::{run_suite, GridCounter, SizeFunction, SuiteConfig};
use setsize::{PointSet, SetModel};

/// Counts one extra cell for every non-empty set.
struct Inflated;

impl SizeFunction for Inflated {
    fn grid_count(&self, s: &SetModel, r: &BigRational) -> setsize::Result<BigUint> {
        GridCounter.grid_count(s, r)
    }

    fn unit_count(&self, s: &PointSet) -> BigUint {
        let n = BigUint::from(s.len());
        if s.is_empty() {
            n
        } else {
            n + 1u32
        }
    }
}

fn main() -> setsize::Result<()> {
    let cfg = SuiteConfig {
        seed: 42,
        trials: 200,
    };
    for (name, f) in [
        ("grid", &GridCounter as &dyn SizeFunction),
        ("inflated", &Inflated),
    ] {
        println!("{name} counter");
        for rep in run_suite(&cfg, f)? {
            println!(
                "  {:<24} trials {:<5} failures {}",
                rep.property,
                rep.trials,
                rep.failures.len()
            );
        }
    }
    Ok(())
}
