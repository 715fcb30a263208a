//! Homology read as a left module over A ⊗ Bᵒᵖ, with the path-algebra actions spelled out.

use dihom::cubechain::build_complex;
use dihom::exactla::Field;
use dihom::homology::homology_table;
use dihom::precubical::directed_disc;
use dihom::scalars::{path_algebra, smash};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let d2 = directed_disc(2)?;
    let paths = path_algebra(&d2)?;
    println!("path algebra of {} has dimension {}", d2.name(), paths.total_dim());

    let cx = build_complex(&d2, 1, Field::Rational)?;
    let h0 = homology_table(&cx.complex)?.module(0).clone();
    let m = smash(&h0);
    println!("H0 has total dimension {}", m.total_dim());
    println!("associativity of the A ⊗ Bᵒᵖ action: {}", m.check_associativity()?);

    let (s, e) = (d2.vertex("00")?, d2.vertex("10")?);
    let q = m.underlying().quiver();
    for b in 0..q.arc_count() {
        if q.arc(b).0 == e {
            let act = m.act(&[], &[b], s, e)?;
            println!("right action of {} on block (00,10):\n{act}", q.arc_name(b));
        }
    }
    Ok(())
}
