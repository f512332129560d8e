//! Symbolic sizes of infinite sets under CH and GCH.

use setsize::cardinal::{
    cardinality_of, cardinality_of_named, ch_consistency_series, ch_equation, ch_rewrite,
    gch_dimension_sequence, size_of_naturals,
};
use setsize::{MValue, Scale, SetModel};

fn main() -> setsize::Result<()> {
    println!("{}", cardinality_of(&SetModel::Naturals));
    println!("{}", cardinality_of_named("U"));
    println!("{}", size_of_naturals(Scale::LimitZero));

    let ch = ch_equation(&Scale::LimitZero)?;
    println!("{}\n{}", ch.statement, ch.corollary);

    for k in 0..4 {
        println!("{}", ch_rewrite(&MValue::tower(k))?.steps);
    }
    let seq: Vec<String> = gch_dimension_sequence(5)
        .iter()
        .map(ToString::to_string)
        .collect();
    println!("{seq:?}");

    // dim [0,1] at r = 10^-k tends to 1
    for (k, d) in ch_consistency_series(6)?.iter().enumerate() {
        println!("r = 1e-{}: {d:.9}", k + 1);
    }
    Ok(())
}
