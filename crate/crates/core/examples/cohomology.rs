//! The dual cochain complex and its dimensions over a prime field.

use dihom::cubechain::build_complex;
use dihom::exactla::Field;
use dihom::homology::{cochain_dual, homology_table};
use dihom::precubical::directed_sphere;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let field = Field::prime(7)?;
    let s2 = directed_sphere(2)?;
    let cx = build_complex(&s2, 2, field)?;
    let h = homology_table(&cx.complex)?;
    let dual = cochain_dual(&cx.complex);
    println!("codifferential squares to zero: {}", dual.check_squares_zero()?);
    for (s, e) in h.pairs() {
        let co: Vec<usize> = (0..=2).map(|i| dual.cohomology_dim(i, s, e)).collect::<Result<_, _>>()?;
        let ho: Vec<usize> = (0..=2).map(|i| h.dim(i, s, e)).collect();
        println!("({},{}) H^* {:?}  H_* {:?}", s2.vertex_name(s), s2.vertex_name(e), co, ho);
    }
    Ok(())
}
