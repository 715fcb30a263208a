//! Homology tables of directed discs and spheres, pair by pair.

use dihom::cubechain::build_complex;
use dihom::exactla::Field;
use dihom::homology::homology_table;
use dihom::precubical::{directed_disc, directed_sphere, PrecubicalSet};

fn show(x: &PrecubicalSet, max: usize) -> Result<(), dihom::Error> {
    let cx = build_complex(x, max, Field::Rational)?;
    let h = homology_table(&cx.complex)?;
    println!("{} (cells per dimension {:?})", x.name(), x.counts());
    for (s, e) in h.pairs() {
        let dims: Vec<String> = (0..=max).map(|i| format!("H{i}: {}", h.dim(i, s, e))).collect();
        println!("  ({},{}) {}", x.vertex_name(s), x.vertex_name(e), dims.join(", "));
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    show(&directed_disc(2)?, 1)?;
    show(&directed_sphere(1)?, 1)?;
    show(&directed_sphere(2)?, 2)?;
    Ok(())
}
