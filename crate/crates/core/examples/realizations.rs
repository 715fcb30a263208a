//! Geometric realizations of cube sequences, written as JSON and checked for acyclicity.

use dihom::exactla::Field;
use dihom::homology::acyclicity_check;
use dihom::precubical::{realization, PrecubicalSet};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let r = realization(&[1, 2, 2])?;
    println!("{} has cells {:?}", r.set.name(), r.set.counts());
    println!("from {} to {}", r.set.vertex_name(r.start), r.set.vertex_name(r.end));

    let text = r.set.to_json();
    let back = PrecubicalSet::from_json(&text)?;
    println!("JSON round trip keeps cell counts: {}", back.counts() == r.set.counts());

    for seq in [vec![2], vec![1, 2], vec![2, 2], vec![3, 1]] {
        let v = acyclicity_check(&seq, Field::Rational)?;
        println!("{seq:?}: acyclic {}", v.acyclic);
    }
    Ok(())
}
