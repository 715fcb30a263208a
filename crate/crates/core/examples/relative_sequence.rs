//! The relative pair (D², S¹): verdict, relative homology and the long exact sequence.

use dihom::exactla::Field;
use dihom::exactseq::{check_relative_pair, les_relative};
use dihom::precubical::{directed_disc, SubsetSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let d2 = directed_disc(2)?;
    let (circle, completed) = SubsetSpec::closure_of(&d2, &["0a", "1a", "a0", "a1"])?;
    println!("face closure needed: {completed}");

    let verdict = check_relative_pair(&d2, &circle, 1, Field::Rational)?;
    println!("contiguous {}, monic {}, accepted {}", verdict.contiguous, verdict.monic, verdict.accepted);

    let les = les_relative(&d2, &circle, 1, Field::Rational)?;
    let seq = les.at("00", "11").expect("extreme pair");
    for node in &seq.nodes {
        println!("  {:<14} dim {}  exact {}", node.label, node.dim, node.exact || !node.checked);
    }
    println!("whole sequence exact: {}", les.exact());
    Ok(())
}
