//! Comparison maps between C(X ⊗ Y) and C(X) ⊗ C(Y), and the Künneth dimension identity.

use dihom::exactla::Field;
use dihom::ez::{ez_verify, kunneth_check};
use dihom::precubical::{directed_disc, directed_segment, directed_sphere};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let k = directed_segment();
    let s1 = directed_sphere(1)?;
    let d2 = directed_disc(2)?;

    for (x, y) in [(&k, &k), (&s1, &s1), (&d2, &k)] {
        let r = ez_verify(x, y, 2, Field::Rational)?;
        println!(
            "{} x {}: chain maps {}/{}, alpha.beta = id {}, beta.alpha = id {}, inverse on homology {}",
            x.name(),
            y.name(),
            r.alpha_chain_map,
            r.beta_chain_map,
            r.alpha_beta_identity,
            r.beta_alpha_identity,
            r.homology_inverse
        );
    }

    let r = kunneth_check(&s1, &s1, 2, Field::Rational)?;
    if let Some(entry) = r.at(1, "(00,00)", "(11,11)") {
        println!("H1 of S1 x S1 at the extremes: {} (factors give {})", entry.product, entry.factors);
    }
    println!("identity holds everywhere: {}", r.holds());
    Ok(())
}
