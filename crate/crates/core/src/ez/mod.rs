//! Tensor products of chain complexes and the Eilenberg–Zilber comparison.
//!
//! `α : C(X ⊗ Y) -> C(X) ⊗ C(Y)` kills chains containing a cube with both factors of
//! positive dimension and separates the others into their `X` and `Y` parts, with
//! the Koszul sign of the reordering. `β` goes back by the trivial shuffle.

mod tensor;

use std::sync::Arc;

use serde::Serialize;

use crate::cubechain::{build_complex, project_shuffle, CubeChain, CubeComplex};
use crate::error::Error;
use crate::exactla::{Field, Matrix};
use crate::graded::{ChainMap, PairComplex};
use crate::homology::{homology_table, induced_on_homology, HomologyMap, HomologyTable};
use crate::precubical::{CellRef, PrecubicalSet, TensorProduct};

pub use tensor::{tensor_complex, TensorComplex};

/// The separated factors of a chain with no mixed cube, with the sign of moving every
/// `X` cube in front of the `Y` cubes. `None` for a chain with a mixed cube.
pub fn separate(tp: &TensorProduct, c: &CubeChain) -> Result<Option<(i64, CubeChain, CubeChain)>, Error> {
    let (cx, cy) = project_shuffle(tp, c)?;
    let mut sign = 1;
    let mut y_degree = 0;
    for &cube in &c.cubes {
        let (u, v) = tp.factor(cube);
        match (u.dim, v.dim) {
            (0, d) => y_degree += d - 1,
            (d, 0) => {
                if (d - 1) * y_degree % 2 == 1 {
                    sign = -sign;
                }
            }
            _ => return Ok(None),
        }
    }
    Ok(Some((sign, cx, cy)))
}

/// Separation of a 0-chain into its `X` and `Y` edge sequences.
pub fn ez_f0(tp: &TensorProduct, c: &CubeChain) -> Result<(CubeChain, CubeChain), Error> {
    if c.dimension() != 0 {
        return Err(Error::WrongDimension { expected: 0, found: c.dimension() });
    }
    let (_, cx, cy) = separate(tp, c)?.expect("0-chains have no mixed cube");
    Ok((cx, cy))
}

/// Separation of a 1-chain: `None` when its square is a product of two edges.
pub fn ez_f1(tp: &TensorProduct, c: &CubeChain) -> Result<Option<(CubeChain, CubeChain)>, Error> {
    if c.dimension() != 1 {
        return Err(Error::WrongDimension { expected: 1, found: c.dimension() });
    }
    Ok(separate(tp, c)?.map(|(_, cx, cy)| (cx, cy)))
}

/// The trivial shuffle: the cubes of `cx` at the start of `cy`, then those of `cy` at
/// the end of `cx`.
pub fn trivial_shuffle(tp: &TensorProduct, cx: &CubeChain, cy: &CubeChain) -> CubeChain {
    let mut cubes: Vec<CellRef> = cx
        .cubes
        .iter()
        .map(|&u| tp.cell(u, CellRef::vertex(cy.src)).expect("product cell"))
        .collect();
    cubes.extend(cy.cubes.iter().map(|&v| tp.cell(CellRef::vertex(cx.dst), v).expect("product cell")));
    CubeChain { cubes, src: tp.vertex(cx.src, cy.src), dst: tp.vertex(cx.dst, cy.dst) }
}

/// The trivial shuffle of two 0-chains.
pub fn ez_g0(tp: &TensorProduct, cx: &CubeChain, cy: &CubeChain) -> Result<CubeChain, Error> {
    for c in [cx, cy] {
        if c.dimension() != 0 {
            return Err(Error::WrongDimension { expected: 0, found: c.dimension() });
        }
    }
    Ok(trivial_shuffle(tp, cx, cy))
}

/// Exchanges the steps at `k` and `k + 1` of a 0-chain when one is an `X` edge and the
/// other a `Y` edge.
pub fn swap(tp: &TensorProduct, c: &CubeChain, k: usize) -> Result<CubeChain, Error> {
    if c.dimension() != 0 {
        return Err(Error::WrongDimension { expected: 0, found: c.dimension() });
    }
    if k + 1 >= c.cubes.len() {
        return Err(Error::BadSwap(k));
    }
    let (u1, v1) = tp.factor(c.cubes[k]);
    let (u2, v2) = tp.factor(c.cubes[k + 1]);
    let set = &tp.set;
    let start = set.initial_vertex(c.cubes[k]);
    let (sx, sy) = tp.vertex_pair(start);
    let (first, second) = match ((u1.dim, v1.dim), (u2.dim, v2.dim)) {
        // (e, v') then (v, e'): take e' first, at the X start
        ((1, 0), (0, 1)) => {
            let a = tp.cell(CellRef::vertex(sx), v2).ok_or(Error::BadSwap(k))?;
            let (_, ey) = tp.vertex_pair(set.final_vertex(a));
            (a, tp.cell(u1, CellRef::vertex(ey)).ok_or(Error::BadSwap(k))?)
        }
        ((0, 1), (1, 0)) => {
            let a = tp.cell(u2, CellRef::vertex(sy)).ok_or(Error::BadSwap(k))?;
            let (ex, _) = tp.vertex_pair(set.final_vertex(a));
            (a, tp.cell(CellRef::vertex(ex), v1).ok_or(Error::BadSwap(k))?)
        }
        _ => return Err(Error::BadSwap(k)),
    };
    let mut cubes = c.cubes.clone();
    cubes[k] = first;
    cubes[k + 1] = second;
    Ok(CubeChain { cubes, src: c.src, dst: c.dst })
}

/// `α` as a chain map `C(X ⊗ Y) -> C(X) ⊗ C(Y)`.
pub fn ez_alpha(tp: &TensorProduct, cxy: &CubeComplex, t: &TensorComplex) -> Result<ChainMap, Error> {
    let field = cxy.field();
    let c = &cxy.complex;
    let mut out = ChainMap::new((0..c.quiver().vertex_count()).collect());
    for (s, e) in c.pairs() {
        for n in 0..=c.top().min(t.complex.top()) {
            let basis = cxy.basis(n, s, e);
            let mut m = Matrix::zeros(field, t.complex.dim(n, s, e), basis.len());
            for (col, ch) in basis.iter().enumerate() {
                if let Some((sign, a, b)) = separate(tp, ch)? {
                    let row = t.position_of(&a, &b)?;
                    m.set(row, col, field.from_i64(sign))?;
                }
            }
            out.set(n, s, e, m);
        }
    }
    Ok(out)
}

/// `β` as a chain map `C(X) ⊗ C(Y) -> C(X ⊗ Y)`.
pub fn ez_beta(tp: &TensorProduct, cxy: &CubeComplex, t: &TensorComplex) -> Result<ChainMap, Error> {
    let field = cxy.field();
    let c = &t.complex;
    let mut out = ChainMap::new((0..c.quiver().vertex_count()).collect());
    for (s, e) in c.pairs() {
        for n in 0..=c.top().min(cxy.complex.top()) {
            let terms = t.terms(n, s, e);
            let mut m = Matrix::zeros(field, cxy.complex.dim(n, s, e), terms.len());
            for (col, (a, b)) in terms.iter().enumerate() {
                let ch = trivial_shuffle(tp, a, b);
                let row = cxy.position(&ch).ok_or_else(|| Error::Assertion("trivial shuffle not in basis".into()))?;
                m.set(row, col, field.one())?;
            }
            out.set(n, s, e, m);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct EzReport {
    pub alpha_chain_map: bool,
    pub beta_chain_map: bool,
    /// `α β = id` on the nose.
    pub alpha_beta_identity: bool,
    /// `β α = id` on the nose; false in general.
    pub beta_alpha_identity: bool,
    /// The induced maps on homology are mutually inverse.
    pub homology_inverse: bool,
    /// `α` commutes with every edge action already on chains.
    pub alpha_equivariant: bool,
    /// `β̄` commutes with every edge action on homology.
    pub beta_bar_equivariant: bool,
}

impl EzReport {
    pub fn passed(&self) -> bool {
        self.alpha_chain_map
            && self.beta_chain_map
            && self.alpha_beta_identity
            && self.homology_inverse
            && self.alpha_equivariant
            && self.beta_bar_equivariant
    }
}

fn composite_is_identity(f: &ChainMap, g: &ChainMap, a: &PairComplex, b: &PairComplex) -> Result<bool, Error> {
    for (s, e) in a.pairs() {
        for n in 0..=a.top().min(b.top()) {
            let m = g.get(n, s, e, b, a).mul(&f.get(n, s, e, a, b))?;
            if m != Matrix::identity(a.field(), a.dim(n, s, e)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn homology_inverse(f: &HomologyMap, g: &HomologyMap, ha: &HomologyTable) -> Result<bool, Error> {
    for ((i, s, e), m) in f.iter() {
        let Some(back) = g.get(i, s, e) else { return Ok(false) };
        if back.mul(m)? != Matrix::identity(ha.field(), ha.dim(i, s, e)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `f` intertwines the edge actions of `src` and `dst` in every degree.
fn chain_equivariant(f: &ChainMap, src: &PairComplex, dst: &PairComplex) -> Result<bool, Error> {
    let q = src.quiver();
    let top = src.top().min(dst.top());
    for a in 0..q.arc_count() {
        let (u, v) = q.arc(a);
        for w in 0..q.vertex_count() {
            for n in 0..=top {
                if src.block(v, w).is_some() {
                    let lhs = f.get(n, u, w, src, dst).mul(&src.left_action(a, n, w))?;
                    let rhs = dst.left_action(a, n, w).mul(&f.get(n, v, w, src, dst))?;
                    if lhs != rhs {
                        return Ok(false);
                    }
                }
                if src.block(w, u).is_some() {
                    let lhs = f.get(n, w, v, src, dst).mul(&src.right_action(a, n, w))?;
                    let rhs = dst.right_action(a, n, w).mul(&f.get(n, w, u, src, dst))?;
                    if lhs != rhs {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

fn homology_equivariant(f: &HomologyMap, hs: &HomologyTable, hd: &HomologyTable) -> Result<bool, Error> {
    let q = hs.quiver();
    let field = hs.field();
    let get = |i: usize, s: usize, e: usize| {
        f.get(i, s, e).cloned().unwrap_or_else(|| Matrix::zeros(field, hd.dim(i, s, e), hs.dim(i, s, e)))
    };
    let pairs = hs.pairs();
    let has = |s: usize, e: usize| pairs.binary_search(&(s, e)).is_ok();
    for a in 0..q.arc_count() {
        let (u, v) = q.arc(a);
        for w in 0..q.vertex_count() {
            for i in 0..=hs.max_degree().min(hd.max_degree()) {
                if has(v, w) {
                    let lhs = get(i, u, w).mul(&hs.left_action(a, i, w))?;
                    let rhs = hd.left_action(a, i, w).mul(&get(i, v, w))?;
                    if lhs != rhs {
                        return Ok(false);
                    }
                }
                if has(w, u) {
                    let lhs = get(i, w, v).mul(&hs.right_action(a, i, w))?;
                    let rhs = hd.right_action(a, i, w).mul(&get(i, w, u))?;
                    if lhs != rhs {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// All the comparison data for a pair of sets, built through degree `max_degree`.
pub struct EzData {
    pub tp: TensorProduct,
    pub cx: CubeComplex,
    pub cy: CubeComplex,
    pub cxy: CubeComplex,
    pub t: TensorComplex,
    pub alpha: ChainMap,
    pub beta: ChainMap,
}

impl EzData {
    pub fn new(x: &PrecubicalSet, y: &PrecubicalSet, max_degree: usize, field: Field) -> Result<Self, Error> {
        let tp = TensorProduct::new(x, y);
        let cx = build_complex(x, max_degree, field)?;
        let cy = build_complex(y, max_degree, field)?;
        let cxy = build_complex(&tp.set, max_degree, field)?;
        let t = tensor_complex(&tp, Arc::new(cx.clone()), Arc::new(cy.clone()), cxy.complex.shared_quiver())?;
        let alpha = ez_alpha(&tp, &cxy, &t)?;
        let beta = ez_beta(&tp, &cxy, &t)?;
        Ok(EzData { tp, cx, cy, cxy, t, alpha, beta })
    }
}

/// Checks that `α`, `β` are chain maps, `α β = id`, the induced maps are inverse on
/// homology, `α` is equivariant on chains and `β̄` on homology.
pub fn ez_verify(x: &PrecubicalSet, y: &PrecubicalSet, max_degree: usize, field: Field) -> Result<EzReport, Error> {
    let d = EzData::new(x, y, max_degree, field)?;
    let (c, t) = (&d.cxy.complex, &d.t.complex);
    let alpha_chain_map = d.alpha.check_chain_map(c, t, "alpha").is_ok();
    let beta_chain_map = d.beta.check_chain_map(t, c, "beta").is_ok();
    let alpha_beta_identity = composite_is_identity(&d.beta, &d.alpha, t, c)?;
    let beta_alpha_identity = composite_is_identity(&d.alpha, &d.beta, c, t)?;
    let hc = homology_table(c)?;
    let ht = homology_table(t)?;
    let (homology_inverse, beta_bar_equivariant) = if alpha_chain_map && beta_chain_map {
        let a_bar = induced_on_homology(&d.alpha, c, t, &hc, &ht)?;
        let b_bar = induced_on_homology(&d.beta, t, c, &ht, &hc)?;
        (
            homology_inverse(&a_bar, &b_bar, &hc)? && homology_inverse(&b_bar, &a_bar, &ht)?,
            homology_equivariant(&b_bar, &ht, &hc)?,
        )
    } else {
        (false, false)
    };
    let alpha_equivariant = chain_equivariant(&d.alpha, c, t)?;
    Ok(EzReport {
        alpha_chain_map,
        beta_chain_map,
        alpha_beta_identity,
        beta_alpha_identity,
        homology_inverse,
        alpha_equivariant,
        beta_bar_equivariant,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct KunnethEntry {
    pub degree: usize,
    pub src: String,
    pub dst: String,
    pub product: usize,
    pub factors: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct KunnethReport {
    pub entries: Vec<KunnethEntry>,
    /// Over a field the torsion term vanishes identically; it is not computed.
    pub tor: usize,
}

impl KunnethReport {
    pub fn holds(&self) -> bool {
        self.entries.iter().all(|e| e.product == e.factors)
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &KunnethEntry> {
        self.entries.iter().filter(|e| e.product != e.factors)
    }

    pub fn at(&self, degree: usize, src: &str, dst: &str) -> Option<&KunnethEntry> {
        self.entries.iter().find(|e| e.degree == degree && e.src == src && e.dst == dst)
    }
}

/// Compares `dim H_i(X ⊗ Y)` with `Σ_{j+k=i} dim H_j(X) · dim H_k(Y)` at every pair.
pub fn kunneth_check(x: &PrecubicalSet, y: &PrecubicalSet, max_degree: usize, field: Field) -> Result<KunnethReport, Error> {
    let tp = TensorProduct::new(x, y);
    let hx = homology_table(&build_complex(x, max_degree, field)?.complex)?;
    let hy = homology_table(&build_complex(y, max_degree, field)?.complex)?;
    let cxy = build_complex(&tp.set, max_degree, field)?;
    let hxy = homology_table(&cxy.complex)?;
    let q = cxy.complex.quiver();
    let mut entries = Vec::new();
    for (s, e) in hxy.pairs() {
        let ((sx, sy), (ex, ey)) = (tp.vertex_pair(s), tp.vertex_pair(e));
        for i in 0..=max_degree {
            let factors = (0..=i).map(|j| hx.dim(j, sx, ex) * hy.dim(i - j, sy, ey)).sum();
            entries.push(KunnethEntry {
                degree: i,
                src: q.vertex_name(s).to_string(),
                dst: q.vertex_name(e).to_string(),
                product: hxy.dim(i, s, e),
                factors,
            });
        }
    }
    Ok(KunnethReport { entries, tor: 0 })
}

#[derive(Clone, Debug, Serialize)]
pub struct ObstructionReport {
    /// Total dimension of `C_0(X ⊗ Y)` over all pairs.
    pub chains_degree0: usize,
    /// Total dimension of `(C(X) ⊗ C(Y))_0`.
    pub tensors_degree0: usize,
    /// Total dimension of `C_1(X ⊗ Y)`.
    pub chains_degree1: usize,
    /// The degree-0 modules have different sizes, so no equivalence can be the
    /// identity in degree 0.
    pub differs: bool,
}

/// Counts behind the failure of an equivariant chain-level Eilenberg–Zilber equivalence.
pub fn degree_zero_obstruction(x: &PrecubicalSet, y: &PrecubicalSet, field: Field) -> Result<ObstructionReport, Error> {
    let tp = TensorProduct::new(x, y);
    let total = |c: &PairComplex, i: usize| c.pairs().map(|(s, e)| c.dim(i, s, e)).sum::<usize>();
    let cx = build_complex(x, 0, field)?;
    let cy = build_complex(y, 0, field)?;
    let cxy = build_complex(&tp.set, 1, field)?;
    let chains_degree0 = total(&cxy.complex, 0);
    let tensors_degree0 = total(&cx.complex, 0) * total(&cy.complex, 0);
    Ok(ObstructionReport {
        chains_degree0,
        tensors_degree0,
        chains_degree1: total(&cxy.complex, 1),
        differs: chains_degree0 != tensors_degree0,
    })
}

#[cfg(test)]
mod tests;
