//! Why no cubical comparison map is the identity in degree 0 for K ⊗ K.

use dihom::exactla::Field;
use dihom::ez::degree_zero_obstruction;
use dihom::precubical::directed_segment;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let k = directed_segment();
    let r = degree_zero_obstruction(&k, &k, Field::Rational)?;
    println!("degree 0: {} cube chains, {} pure tensors", r.chains_degree0, r.tensors_degree0);
    println!("degree 1: {} cube chain", r.chains_degree1);
    Ok(())
}
