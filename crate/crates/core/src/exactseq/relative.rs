use serde::Serialize;

use crate::cubechain::build_complex;
use crate::error::Error;
use crate::exactla::Field;
use crate::graded::Quiver;
use crate::homology::homology_table;
use crate::precubical::{sub, CellRef, PrecubicalSet, SubsetSpec};
use crate::scalars::{extend_presented, extend_subcomplex, present_chains, present_module, AlgebraMorphism};

/// A block where the presented extension and the subspace extension differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonicityEntry {
    pub degree: usize,
    pub src: String,
    pub dst: String,
    pub presented: usize,
    pub subspace: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelativePairReport {
    /// Every maximal path meets the edges of `Y` in one contiguous block.
    pub contiguous: bool,
    /// Vertices of a maximal path violating contiguity.
    pub offending_path: Option<Vec<String>>,
    /// The canonical map from the extension into `C(X)` is injective in every block.
    pub monic: bool,
    pub monic_failures: Vec<MonicityEntry>,
    pub accepted: bool,
}

fn contiguous(q: &Quiver, y: &SubsetSpec) -> Option<Vec<String>> {
    for (start, path) in q.maximal_paths() {
        let marks: Vec<bool> = path.iter().map(|&a| y.contains(CellRef::new(1, a))).collect();
        let first = marks.iter().position(|&m| m);
        let last = marks.iter().rposition(|&m| m);
        if let (Some(f), Some(l)) = (first, last) {
            if marks[f..=l].iter().any(|&m| !m) {
                let mut names = vec![q.vertex_name(start).to_string()];
                names.extend(path.iter().map(|&a| q.vertex_name(q.arc(a).1).to_string()));
                return Some(names);
            }
        }
    }
    None
}

/// Checks that `(X, Y)` is a relative pair: the path criterion on maximal paths, and
/// monicity by comparing the presented extension of `C(Y)` with its image in `C(X)`.
pub fn check_relative_pair(
    x: &PrecubicalSet,
    y: &SubsetSpec,
    max_degree: usize,
    field: Field,
) -> Result<RelativePairReport, Error> {
    x.require_acyclic()?;
    let (ys, inc) = sub(x, y, "Y")?;
    let q = Quiver::of(x);
    let offending_path = contiguous(&q, y);
    let cx = build_complex(x, max_degree, field)?;
    let cy = build_complex(&ys, max_degree, field)?;
    let ext = extend_subcomplex(&inc, &cx)?;
    let f = AlgebraMorphism::from_morphism(&inc);
    let mut monic_failures = Vec::new();
    for i in 0..=max_degree {
        let dims = extend_presented(&present_chains(&cy, i)?, &f)?.dims()?;
        for (&(s, e), &presented) in &dims {
            let subspace = ext.complex.dim(i, s, e);
            if presented != subspace {
                monic_failures.push(MonicityEntry {
                    degree: i,
                    src: q.vertex_name(s).to_string(),
                    dst: q.vertex_name(e).to_string(),
                    presented,
                    subspace,
                });
            }
        }
    }
    let contiguous = offending_path.is_none();
    let monic = monic_failures.is_empty();
    Ok(RelativePairReport { contiguous, offending_path, monic, monic_failures, accepted: contiguous && monic })
}

/// Compares `H(ᵡC(Y))` with the extension of `H(Y)` computed from a presentation,
/// degree by degree. Returns the blocks where they differ.
pub fn extended_homology_check(
    x: &PrecubicalSet,
    y: &SubsetSpec,
    max_degree: usize,
    field: Field,
) -> Result<Vec<MonicityEntry>, Error> {
    let (ys, inc) = sub(x, y, "Y")?;
    let cx = build_complex(x, max_degree, field)?;
    let cy = build_complex(&ys, max_degree, field)?;
    let ext = extend_subcomplex(&inc, &cx)?;
    let h_ext = homology_table(&ext.complex)?;
    let h_y = homology_table(&cy.complex)?;
    let f = AlgebraMorphism::from_morphism(&inc);
    let q = cx.complex.quiver();
    let mut out = Vec::new();
    for i in 0..=max_degree {
        let dims = extend_presented(&present_module(h_y.module(i)), &f)?.dims()?;
        for (&(s, e), &presented) in &dims {
            let subspace = h_ext.dim(i, s, e);
            if presented != subspace {
                out.push(MonicityEntry {
                    degree: i,
                    src: q.vertex_name(s).to_string(),
                    dst: q.vertex_name(e).to_string(),
                    presented,
                    subspace,
                });
            }
        }
    }
    Ok(out)
}
