//! Path algebras and change of scalars.
//!
//! Bimodules are handled in three forms: pair complexes (chain level), pair modules
//! (one graded piece, e.g. a homology group), and presentations by generators and
//! relations, which are the only form in which extension and horizontal
//! composition can be computed without assuming anything about the input.

mod extension;
mod presented;
mod smash;

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::Error;
use crate::exactla::Matrix;
use crate::graded::{PairComplex, PairModule, Quiver};
use crate::homology::HomologyTable;
use crate::precubical::{PcMorphism, PrecubicalSet, TensorProduct};

pub use extension::{extend_subcomplex, is_decomposable, Extension};
pub use presented::{
    direct_sum, extend_presented, hcompose, present_chains, present_module, unit_presentation, Generator,
    PresentedBimodule, Relation, Term,
};
pub use smash::{smash, SmashModule};

/// All directed paths of a quiver, per vertex pair.
#[derive(Clone, Debug)]
pub struct PathAlgebraIndex {
    quiver: Arc<Quiver>,
    paths: BTreeMap<(usize, usize), Vec<Vec<usize>>>,
}

impl PathAlgebraIndex {
    pub fn new(quiver: Arc<Quiver>) -> Self {
        let paths = quiver.reachable_pairs().into_iter().map(|(s, e)| ((s, e), quiver.paths(s, e))).collect();
        PathAlgebraIndex { quiver, paths }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    /// Paths from `s` to `e`; the trivial path is the empty arc list.
    pub fn paths(&self, s: usize, e: usize) -> &[Vec<usize>] {
        self.paths.get(&(s, e)).map_or(&[], |v| v.as_slice())
    }

    /// `dim R(s, e)`.
    pub fn dim(&self, s: usize, e: usize) -> usize {
        self.paths(s, e).len()
    }

    pub fn total_dim(&self) -> usize {
        self.paths.values().map(Vec::len).sum()
    }

    /// Position of `p` among the paths from `s` to `e`.
    pub fn index_of(&self, s: usize, e: usize, p: &[usize]) -> Option<usize> {
        self.paths(s, e).iter().position(|q| q == p)
    }

    /// Concatenation, `None` when the endpoints do not meet.
    pub fn concat(&self, p: (usize, &[usize], usize), q: (usize, &[usize], usize)) -> Option<(usize, Vec<usize>, usize)> {
        if p.2 != q.0 {
            return None;
        }
        let mut out = p.1.to_vec();
        out.extend_from_slice(q.1);
        Some((p.0, out, q.2))
    }
}

/// `R(X)`. Fails on a directed cycle.
pub fn path_algebra(x: &PrecubicalSet) -> Result<PathAlgebraIndex, Error> {
    x.require_acyclic()?;
    Ok(PathAlgebraIndex::new(Arc::new(Quiver::of(x))))
}

/// A morphism of path algebras sending vertices to vertices and arcs to paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraMorphism {
    source: Arc<Quiver>,
    target: Arc<Quiver>,
    vertex_map: Vec<usize>,
    arc_map: Vec<Vec<usize>>,
}

impl AlgebraMorphism {
    /// Checks that each arc goes to a nonempty path between the images of its endpoints.
    pub fn new(
        source: Arc<Quiver>,
        target: Arc<Quiver>,
        vertex_map: Vec<usize>,
        arc_map: Vec<Vec<usize>>,
    ) -> Result<Self, Error> {
        if vertex_map.len() != source.vertex_count() || arc_map.len() != source.arc_count() {
            return Err(Error::AlgebraMismatch);
        }
        for (a, p) in arc_map.iter().enumerate() {
            if p.is_empty() {
                return Err(Error::AlgebraMismatch);
            }
            let (u, v) = source.arc(a);
            let mut at = vertex_map[u];
            for &b in p {
                let (x, y) = target.arc(b);
                if x != at {
                    return Err(Error::AlgebraMismatch);
                }
                at = y;
            }
            if at != vertex_map[v] {
                return Err(Error::AlgebraMismatch);
            }
        }
        Ok(AlgebraMorphism { source, target, vertex_map, arc_map })
    }

    pub fn identity(q: Arc<Quiver>) -> Self {
        let vertex_map = (0..q.vertex_count()).collect();
        let arc_map = (0..q.arc_count()).map(|a| vec![a]).collect();
        AlgebraMorphism { source: q.clone(), target: q, vertex_map, arc_map }
    }

    /// `R(f)` for a morphism of precubical sets.
    pub fn from_morphism(f: &PcMorphism) -> Self {
        let source = Arc::new(Quiver::of(f.source()));
        let target = Arc::new(Quiver::of(f.target()));
        let vertex_map = f.maps()[0].clone();
        let arc_map = f.maps().get(1).map_or(vec![], |m| m.iter().map(|&b| vec![b]).collect());
        AlgebraMorphism { source, target, vertex_map, arc_map }
    }

    pub fn source(&self) -> &Quiver {
        &self.source
    }

    pub fn target(&self) -> &Quiver {
        &self.target
    }

    pub fn vertex(&self, v: usize) -> usize {
        self.vertex_map[v]
    }

    /// Image of a path; the trivial path at `v` goes to the trivial path at `f(v)`.
    pub fn apply(&self, p: &[usize]) -> Vec<usize> {
        p.iter().flat_map(|&a| self.arc_map[a].iter().copied()).collect()
    }
}

fn path_action_left(c: &PairComplex, p: &[usize], i: usize, s: usize, e: usize) -> Result<Matrix, Error> {
    let mut m = Matrix::identity(c.field(), c.dim(i, s, e));
    for &a in p.iter().rev() {
        m = c.left_action(a, i, e).mul(&m)?;
    }
    Ok(m)
}

fn path_action_right(c: &PairComplex, p: &[usize], i: usize, s: usize, e: usize) -> Result<Matrix, Error> {
    let mut m = Matrix::identity(c.field(), c.dim(i, s, e));
    for &b in p {
        m = c.right_action(b, i, s).mul(&m)?;
    }
    Ok(m)
}

/// Restriction of scalars: block `(s, e)` of the result is block `(f(s), f(e))` of `c`,
/// and an arc acts through its image path.
pub fn restrict(c: &PairComplex, f: &AlgebraMorphism) -> Result<PairComplex, Error> {
    if *f.target != *c.quiver() {
        return Err(Error::AlgebraMismatch);
    }
    let q = f.source.clone();
    let mut out = PairComplex::new(c.field(), q.clone(), c.max_degree());
    let n = q.vertex_count();
    for s in 0..n {
        for e in 0..n {
            let (fs, fe) = (f.vertex(s), f.vertex(e));
            if let Some(b) = c.block(fs, fe) {
                out.insert_block(s, e, b.dims.clone(), b.diffs.clone());
            }
        }
    }
    for a in 0..q.arc_count() {
        let (u, v) = q.arc(a);
        let img = &f.arc_map[a];
        for w in 0..n {
            let (fu, fv, fw) = (f.vertex(u), f.vertex(v), f.vertex(w));
            for i in 0..=c.top() {
                out.set_left(a, i, v, w, path_action_left(c, img, i, fv, fw)?);
                out.set_right(a, i, w, u, path_action_right(c, img, i, fw, fu)?);
            }
        }
    }
    Ok(out)
}

/// Restriction of one graded piece.
pub fn restrict_module(m: &PairModule, f: &AlgebraMorphism) -> Result<PairModule, Error> {
    if *f.target != *m.quiver() {
        return Err(Error::AlgebraMismatch);
    }
    let q = f.source.clone();
    let n = q.vertex_count();
    let mut out = PairModule::new(m.field(), q.clone());
    for s in 0..n {
        for e in 0..n {
            let (fs, fe) = (f.vertex(s), f.vertex(e));
            if m.pairs().any(|p| p == (fs, fe)) {
                out.set_dim(s, e, m.dim(fs, fe));
            }
        }
    }
    for a in 0..q.arc_count() {
        let (u, v) = q.arc(a);
        let img = &f.arc_map[a];
        for w in 0..n {
            let (fu, fv, fw) = (f.vertex(u), f.vertex(v), f.vertex(w));
            out.set_left(a, w, m.left_path_action(img, fv, fw)?);
            out.set_right(a, w, m.right_path_action(img, fw, fu)?);
        }
    }
    Ok(out)
}

/// Restriction of every degree of a homology table.
pub fn restrict_table(h: &HomologyTable, f: &AlgebraMorphism) -> Result<Vec<PairModule>, Error> {
    (0..=h.max_degree()).map(|i| restrict_module(h.module(i), f)).collect()
}

/// `h : R(X ⊗ Y) -> R(X) ⊗ R(Y)`. A basis element of the target is a pair of paths,
/// so a path of `X ⊗ Y` goes to the pair of its `X`-steps and `Y`-steps.
#[derive(Clone, Debug)]
pub struct HMorphism {
    x_arcs: Vec<Option<usize>>,
    y_arcs: Vec<Option<usize>>,
    vertex_pairs: Vec<(usize, usize)>,
}

/// A path of `R(X) ⊗ R(Y)`: start vertices, `X` arcs, `Y` arcs.
pub type PathPair = ((usize, usize), Vec<usize>, Vec<usize>);

impl HMorphism {
    /// Image of a path of `X ⊗ Y` starting at product vertex `start`.
    pub fn apply(&self, start: usize, p: &[usize]) -> PathPair {
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for &a in p {
            match (self.x_arcs[a], self.y_arcs[a]) {
                (Some(u), None) => xs.push(u),
                (None, Some(v)) => ys.push(v),
                _ => unreachable!("an edge of a tensor product has exactly one edge factor"),
            }
        }
        (self.vertex_pairs[start], xs, ys)
    }

    /// The generator `(u, v)`: `Some((true, u))` for an `X` edge at a `Y` vertex.
    pub fn generator(&self, a: usize) -> (bool, usize) {
        match (self.x_arcs[a], self.y_arcs[a]) {
            (Some(u), None) => (true, u),
            (None, Some(v)) => (false, v),
            _ => unreachable!("an edge of a tensor product has exactly one edge factor"),
        }
    }

    pub fn vertex_pair(&self, v: usize) -> (usize, usize) {
        self.vertex_pairs[v]
    }
}

pub fn h_morphism(tp: &TensorProduct) -> HMorphism {
    let mut x_arcs = Vec::new();
    let mut y_arcs = Vec::new();
    for e in 0..tp.set.count(1) {
        let (u, v) = tp.factor(crate::precubical::CellRef::new(1, e));
        if u.dim == 1 {
            x_arcs.push(Some(u.idx));
            y_arcs.push(None);
        } else {
            x_arcs.push(None);
            y_arcs.push(Some(v.idx));
        }
    }
    let vertex_pairs = (0..tp.set.count(0)).map(|v| tp.vertex_pair(v)).collect();
    HMorphism { x_arcs, y_arcs, vertex_pairs }
}
