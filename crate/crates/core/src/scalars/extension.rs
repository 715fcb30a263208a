use std::collections::{BTreeMap, HashSet};

use crate::cubechain::{CubeChain, CubeComplex};
use crate::error::Error;
use crate::exactla::Matrix;
use crate::graded::{ChainMap, PairComplex};
use crate::precubical::{CellRef, PcMorphism, PrecubicalSet};

/// The extension of `C(Y)` along `Y ⊆ X`, realized inside `C(X)`.
#[derive(Clone, Debug)]
pub struct Extension {
    pub complex: PairComplex,
    /// Coordinate inclusion into `C(X)`.
    pub inclusion: ChainMap,
    selected: BTreeMap<(usize, usize), Vec<Vec<usize>>>,
}

impl Extension {
    /// Positions, in the basis of `C_i(X)(s, e)`, of the chains in the extension.
    pub fn selected(&self, i: usize, s: usize, e: usize) -> &[usize] {
        self.selected.get(&(s, e)).and_then(|v| v.get(i)).map_or(&[], |v| v.as_slice())
    }
}

/// Whether `c` factors as `p · d · q` with `p`, `q` edge paths of `X` and `d` a
/// (possibly empty) chain of `Y`.
pub fn is_decomposable(x: &PrecubicalSet, c: &CubeChain, in_y: &dyn Fn(CellRef) -> bool) -> bool {
    let heavy: Vec<usize> = (0..c.cubes.len()).filter(|&k| c.cubes[k].dim >= 2).collect();
    match (heavy.first(), heavy.last()) {
        (Some(&f), Some(&l)) => c.cubes[f..=l].iter().all(|&k| in_y(k)),
        _ => {
            let mut at = c.src;
            if in_y(CellRef::vertex(at)) {
                return true;
            }
            for &k in &c.cubes {
                at = x.final_vertex(k);
                if in_y(CellRef::vertex(at)) {
                    return true;
                }
            }
            false
        }
    }
}

fn submatrix(m: &Matrix, rows: &[usize], cols: &[usize]) -> Matrix {
    m.select_rows(rows).select_columns(cols)
}

/// Restricts `m` to the selected rows and columns, checking nothing leaves the selection.
fn restricted(m: &Matrix, rows: &[usize], cols: &[usize], what: &str) -> Result<Matrix, Error> {
    let keep: HashSet<usize> = rows.iter().copied().collect();
    for &c in cols {
        for r in 0..m.rows() {
            if !keep.contains(&r) && !m.get(r, c)?.is_zero() {
                return Err(Error::Assertion(format!("extension is not closed under {what}")));
            }
        }
    }
    Ok(submatrix(m, rows, cols))
}

/// The span in `C(X)` of chains `p · d · q` with `d` in `Y`, as a sub-bimodule complex.
pub fn extend_subcomplex(inc: &PcMorphism, cx: &CubeComplex) -> Result<Extension, Error> {
    if !inc.is_inclusion() {
        return Err(Error::NotInclusion);
    }
    if inc.target() != &cx.set {
        return Err(Error::Precubical(crate::precubical::PrecubicalError::EndpointMismatch));
    }
    let y = inc.source();
    let image: HashSet<CellRef> = y.all_cells().map(|c| inc.apply(c)).collect();
    let in_y = |c: CellRef| image.contains(&c);
    let c = &cx.complex;
    let top = c.top();
    let mut selected = BTreeMap::new();
    for (s, e) in c.pairs() {
        let per_degree: Vec<Vec<usize>> = (0..=top)
            .map(|i| {
                cx.basis(i, s, e)
                    .iter()
                    .enumerate()
                    .filter(|(_, ch)| is_decomposable(&cx.set, ch, &in_y))
                    .map(|(k, _)| k)
                    .collect()
            })
            .collect();
        selected.insert((s, e), per_degree);
    }
    let sel = |i: usize, s: usize, e: usize| -> &[usize] {
        selected.get(&(s, e)).map_or(&[], |v: &Vec<Vec<usize>>| v[i].as_slice())
    };
    let mut out = PairComplex::new(c.field(), c.shared_quiver(), c.max_degree());
    for (s, e) in c.pairs() {
        let dims = (0..=top).map(|i| sel(i, s, e).len()).collect();
        let mut diffs = Vec::with_capacity(top);
        for i in 1..=top {
            diffs.push(restricted(&c.differential(i, s, e), sel(i - 1, s, e), sel(i, s, e), "the boundary")?);
        }
        out.insert_from_diffs(s, e, dims, diffs);
    }
    let q = c.quiver();
    for a in 0..q.arc_count() {
        let (u, v) = q.arc(a);
        for w in 0..q.vertex_count() {
            for i in 0..=top {
                if c.block(v, w).is_some() {
                    let m = restricted(&c.left_action(a, i, w), sel(i, u, w), sel(i, v, w), "the left action")?;
                    out.set_left(a, i, v, w, m);
                }
                if c.block(w, u).is_some() {
                    let m = restricted(&c.right_action(a, i, w), sel(i, w, v), sel(i, w, u), "the right action")?;
                    out.set_right(a, i, w, u, m);
                }
            }
        }
    }
    let mut inclusion = ChainMap::new((0..q.vertex_count()).collect());
    for (s, e) in c.pairs() {
        for i in 0..=top {
            let picks = sel(i, s, e);
            let mut m = Matrix::zeros(c.field(), c.dim(i, s, e), picks.len());
            for (col, &row) in picks.iter().enumerate() {
                m.set(row, col, c.field().one())?;
            }
            inclusion.set(i, s, e, m);
        }
    }
    Ok(Extension { complex: out, inclusion, selected })
}
