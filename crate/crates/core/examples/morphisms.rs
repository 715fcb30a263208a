//! Build a set by hand, validate it, and list the precubical morphisms into a square.

use dihom::precubical::{all_morphisms, directed_disc, validate, PrecubicalSet};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = PrecubicalSet::builder("P")
        .vertices(&["0", "1", "2"])
        .edge("x", "0", "1")
        .edge("y", "1", "2")
        .build()?;
    println!("violations: {:?}", validate(&path));

    let d2 = directed_disc(2)?;
    for f in all_morphisms(&path, &d2) {
        let image: Vec<&str> = (0..path.count(0)).map(|v| d2.vertex_name(f.apply_vertex(v))).collect();
        println!("vertices go to {image:?}");
    }
    Ok(())
}
