//! Cover the domino by its two squares, check the cover, and print the Mayer–Vietoris sequence.

use dihom::exactla::Field;
use dihom::exactseq::{good_cover_check, mayer_vietoris};
use dihom::precubical::{domino, SubsetSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let x = domino();
    let (left, _) = SubsetSpec::closure_of(&x, &["aa"])?;
    let (right, _) = SubsetSpec::closure_of(&x, &["ba"])?;

    let cover = good_cover_check(&x, &left, &right, 1, Field::Rational)?;
    for (pair, ok) in &cover.pairs {
        println!("{pair}: {}", if *ok { "relative pair" } else { "rejected" });
    }
    println!("good cover: {}", cover.good);

    let mv = mayer_vietoris(&x, &left, &right, 1, Field::Rational)?;
    for seq in &mv.sequences {
        let dims: Vec<String> = seq.nodes.iter().map(|n| n.dim.to_string()).collect();
        println!("({},{}) {}", seq.src, seq.dst, dims.join(" -> "));
    }
    println!("exact: {}", mv.exact());
    Ok(())
}
