//! Homology and cohomology of pair-graded complexes.
//!
//! A homology class is kept as a cycle representative; two cycles give the same
//! class when their difference lies in the boundary subspace. Each block stores a
//! projection matrix that sends a cycle to its class coordinates, which is all the
//! exact-sequence and Eilenberg–Zilber code needs.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::cubechain::{build_complex, morphism_chain_map, CubeComplex};
use crate::error::Error;
use crate::exactla::{Field, Matrix, Scalar, Subspace, Vector};
use crate::graded::{ChainMap, PairComplex, PairModule, Quiver};
use crate::precubical::{realization, PcMorphism};

/// `ker ∂_i / im ∂_{i+1}` for one block.
#[derive(Clone, Debug)]
pub struct HomologyBlock {
    cycles: Subspace,
    boundaries: Subspace,
    reps: Vec<Vector>,
    projection: Matrix,
}

impl HomologyBlock {
    /// From `d_out : C_i -> C_{i-1}` and `d_in : C_{i+1} -> C_i`.
    pub fn compute(d_out: &Matrix, d_in: &Matrix) -> Result<Self, Error> {
        let field = d_out.field();
        let n = d_out.cols();
        let cycles = Subspace::kernel(d_out);
        let boundaries = Subspace::image(d_in);
        let mut spanning: Vec<Vector> = boundaries.basis().to_vec();
        let mut reps = Vec::new();
        for z in cycles.basis() {
            let m = Matrix::from_columns(field, n, &spanning)?;
            if m.solve(z)?.is_none() {
                spanning.push(z.clone());
                reps.push(z.clone());
            }
        }
        let full = Matrix::from_columns(field, n, &spanning)?;
        let inv = full.left_inverse().expect("cycle basis is independent");
        let keep: Vec<usize> = (boundaries.dim()..spanning.len()).collect();
        let projection = inv.select_rows(&keep);
        Ok(HomologyBlock { cycles, boundaries, reps, projection })
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn reps(&self) -> &[Vector] {
        &self.reps
    }

    /// Columns are the cycle representatives.
    pub fn reps_matrix(&self) -> Matrix {
        Matrix::from_columns(self.cycles.field(), self.cycles.ambient_dim(), &self.reps)
            .expect("representatives have ambient length")
    }

    pub fn cycles(&self) -> &Subspace {
        &self.cycles
    }

    pub fn boundaries(&self) -> &Subspace {
        &self.boundaries
    }

    /// Sends a cycle to its class coordinates; only meaningful on cycles.
    pub fn projection(&self) -> &Matrix {
        &self.projection
    }

    pub fn is_boundary(&self, v: &[Scalar]) -> Result<bool, Error> {
        Ok(self.boundaries.contains(v)?)
    }

    /// Class coordinates of a cycle.
    pub fn class_of(&self, v: &[Scalar]) -> Result<Vector, Error> {
        if !self.cycles.contains(v)? {
            return Err(Error::Assertion("vector is not a cycle".into()));
        }
        Ok(self.projection.mul_vec(v)?)
    }

    /// `P · f · R`: the map on classes induced by `f` from `src` to `self`.
    pub fn induced_from(&self, f: &Matrix, src: &HomologyBlock) -> Result<Matrix, Error> {
        Ok(self.projection.mul(f)?.mul(&src.reps_matrix())?)
    }

    /// Whether `f` carries cycles of `src` to cycles here and boundaries to boundaries.
    pub fn respects(&self, f: &Matrix, src: &HomologyBlock) -> Result<bool, Error> {
        Ok(self.cycles.contains_subspace(&src.cycles.map(f)?)?
            && self.boundaries.contains_subspace(&src.boundaries.map(f)?)?)
    }
}

/// Homology of a pair complex in degrees `0..=max_degree`, with the induced edge actions.
#[derive(Clone, Debug)]
pub struct HomologyTable {
    field: Field,
    quiver: Arc<Quiver>,
    max_degree: usize,
    blocks: BTreeMap<(usize, usize, usize), HomologyBlock>,
    modules: Vec<PairModule>,
}

impl HomologyTable {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn block(&self, i: usize, s: usize, e: usize) -> Option<&HomologyBlock> {
        self.blocks.get(&(i, s, e))
    }

    pub fn dim(&self, i: usize, s: usize, e: usize) -> usize {
        self.block(i, s, e).map_or(0, HomologyBlock::dim)
    }

    /// The degree-`i` homology bimodule.
    pub fn module(&self, i: usize) -> &PairModule {
        &self.modules[i]
    }

    /// Left action of `a : s' -> s` on `H_i(s, e)`.
    pub fn left_action(&self, a: usize, i: usize, e: usize) -> Matrix {
        self.modules[i].left_action(a, e)
    }

    /// Right action of `b : e -> e'` on `H_i(s, e)`.
    pub fn right_action(&self, b: usize, i: usize, s: usize) -> Matrix {
        self.modules[i].right_action(b, s)
    }

    /// Pairs with a stored block.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<(usize, usize)> = self.blocks.keys().map(|&(_, s, e)| (s, e)).collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

fn block_of(cx: &PairComplex, i: usize, s: usize, e: usize) -> Result<HomologyBlock, Error> {
    HomologyBlock::compute(&cx.differential(i, s, e), &cx.differential(i + 1, s, e))
}

/// Dimension and cycle representatives of `H_i(s, e)`.
pub fn homology(cx: &PairComplex, i: usize, s: usize, e: usize) -> Result<(usize, Vec<Vector>), Error> {
    if i > cx.max_degree() {
        return Err(Error::DegreeOutOfRange { degree: i, max: cx.max_degree() });
    }
    let n = cx.quiver().vertex_count();
    if s >= n || e >= n {
        return Err(Error::UnknownVertex(format!("#{}", s.max(e))));
    }
    let b = block_of(cx, i, s, e)?;
    Ok((b.dim(), b.reps))
}

/// The full homology table. Fails if some edge action does not descend to homology.
pub fn homology_table(cx: &PairComplex) -> Result<HomologyTable, Error> {
    let q = cx.shared_quiver();
    let mut blocks = BTreeMap::new();
    for (s, e) in cx.pairs() {
        for i in 0..=cx.max_degree() {
            blocks.insert((i, s, e), block_of(cx, i, s, e)?);
        }
    }
    let mut modules = Vec::with_capacity(cx.max_degree() + 1);
    for i in 0..=cx.max_degree() {
        let mut m = PairModule::new(cx.field(), q.clone());
        for (s, e) in cx.pairs() {
            m.set_dim(s, e, blocks[&(i, s, e)].dim());
        }
        // a nonzero action matrix implies both blocks are stored
        for a in 0..q.arc_count() {
            let (u, v) = q.arc(a);
            for w in 0..q.vertex_count() {
                for (act, from, to, left) in [
                    (cx.left_action(a, i, w), (v, w), (u, w), true),
                    (cx.right_action(a, i, w), (w, u), (w, v), false),
                ] {
                    if act.is_zero() {
                        continue;
                    }
                    let src = &blocks[&(i, from.0, from.1)];
                    let dst: &HomologyBlock = &blocks[&(i, to.0, to.1)];
                    if !dst.respects(&act, src)? {
                        return Err(Error::IllDefinedAction(q.arc_name(a).to_string()));
                    }
                    let induced = dst.induced_from(&act, src)?;
                    if left {
                        m.set_left(a, w, induced);
                    } else {
                        m.set_right(a, w, induced);
                    }
                }
            }
        }
        modules.push(m);
    }
    Ok(HomologyTable { field: cx.field(), quiver: q, max_degree: cx.max_degree(), blocks, modules })
}

/// A map on homology, one matrix per degree and source pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyMap {
    pub vertex_map: Vec<usize>,
    mats: BTreeMap<(usize, usize, usize), Matrix>,
}

impl HomologyMap {
    /// The matrix `H_i(s, e) -> H_i(f(s), f(e))`, if the source block exists.
    pub fn get(&self, i: usize, s: usize, e: usize) -> Option<&Matrix> {
        self.mats.get(&(i, s, e))
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize, usize), &Matrix)> {
        self.mats.iter().map(|(&k, m)| (k, m))
    }

    /// Whether every block is invertible.
    pub fn is_isomorphism(&self) -> bool {
        self.mats.values().all(|m| m.rows() == m.cols() && m.rank() == m.cols())
    }
}

/// Map on homology induced by a chain map `f : src -> dst`.
pub fn induced_on_homology(
    f: &ChainMap,
    src: &PairComplex,
    dst: &PairComplex,
    hs: &HomologyTable,
    hd: &HomologyTable,
) -> Result<HomologyMap, Error> {
    let mut mats = BTreeMap::new();
    let max = hs.max_degree().min(hd.max_degree());
    for (s, e) in src.pairs() {
        let (fs, fe) = (f.vertex_map[s], f.vertex_map[e]);
        for i in 0..=max {
            let a = hs.block(i, s, e).expect("table covers complex");
            let fm = f.get(i, s, e, src, dst);
            let m = match hd.block(i, fs, fe) {
                Some(b) => b.induced_from(&fm, a)?,
                None => Matrix::zeros(src.field(), 0, a.dim()),
            };
            mats.insert((i, s, e), m);
        }
    }
    Ok(HomologyMap { vertex_map: f.vertex_map.clone(), mats })
}

/// Map on homology induced by a morphism of precubical sets.
pub fn induced_map(
    f: &PcMorphism,
    cx: &CubeComplex,
    cy: &CubeComplex,
    hx: &HomologyTable,
    hy: &HomologyTable,
) -> Result<HomologyMap, Error> {
    let g = morphism_chain_map(f, cx, cy)?;
    g.check_chain_map(&cx.complex, &cy.complex, "cube-wise image")?;
    induced_on_homology(&g, &cx.complex, &cy.complex, hx, hy)
}

/// The dual complex: `δ^i = (∂_{i+1})^T : C^i -> C^{i+1}`.
#[derive(Clone, Debug)]
pub struct CochainTable {
    source: PairComplex,
    codiffs: BTreeMap<(usize, usize), Vec<Matrix>>,
}

impl CochainTable {
    pub fn max_degree(&self) -> usize {
        self.source.max_degree()
    }

    /// `δ^i` at `(s, e)` for `i < top`.
    pub fn codifferential(&self, i: usize, s: usize, e: usize) -> Matrix {
        match self.codiffs.get(&(s, e)).and_then(|v| v.get(i)) {
            Some(m) => m.clone(),
            None => self.source.differential(i + 1, s, e).transpose(),
        }
    }

    pub fn check_squares_zero(&self) -> Result<bool, Error> {
        for v in self.codiffs.values() {
            for w in v.windows(2) {
                if !w[1].mul(&w[0])?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `dim H^i(s, e)`.
    pub fn cohomology_dim(&self, i: usize, s: usize, e: usize) -> Result<usize, Error> {
        if i > self.max_degree() {
            return Err(Error::DegreeOutOfRange { degree: i, max: self.max_degree() });
        }
        let out = self.codifferential(i, s, e);
        let kernel = self.source.dim(i, s, e) - out.rank();
        let incoming = if i == 0 { 0 } else { self.codifferential(i - 1, s, e).rank() };
        Ok(kernel - incoming)
    }

    /// Transposed left action of `a : s' -> s`: `C^i(s', e) -> C^i(s, e)`.
    /// Precomposition with prepending is a right action of the opposite algebra.
    pub fn coaction_left(&self, a: usize, i: usize, e: usize) -> Matrix {
        self.source.left_action(a, i, e).transpose()
    }

    /// Transposed right action of `b : e -> e'`: `C^i(s, e') -> C^i(s, e)`.
    pub fn coaction_right(&self, b: usize, i: usize, s: usize) -> Matrix {
        self.source.right_action(b, i, s).transpose()
    }
}

pub fn cochain_dual(cx: &PairComplex) -> CochainTable {
    let mut codiffs = BTreeMap::new();
    for (s, e) in cx.pairs() {
        let v = (0..cx.top()).map(|i| cx.differential(i + 1, s, e).transpose()).collect();
        codiffs.insert((s, e), v);
    }
    CochainTable { source: cx.clone(), codiffs }
}

/// Outcome of checking that a realization has the homology of a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AcyclicityVerdict {
    pub sequence: Vec<usize>,
    pub h0: usize,
    /// `dim H_i(start, end)` for `1 <= i <= dim`.
    pub higher: Vec<usize>,
    pub acyclic: bool,
}

/// Builds the realization of `seq` and checks `H_0 = 1` and `H_i = 0` for `1 <= i <= dim`
/// between its endpoints.
pub fn acyclicity_check(seq: &[usize], field: Field) -> Result<AcyclicityVerdict, Error> {
    let r = realization(seq)?;
    let d = r.dimension();
    let cx = build_complex(&r.set, d.max(1), field)?;
    let h0 = homology(&cx.complex, 0, r.start, r.end)?.0;
    let higher = (1..=d)
        .map(|i| homology(&cx.complex, i, r.start, r.end).map(|h| h.0))
        .collect::<Result<Vec<_>, _>>()?;
    let acyclic = h0 == 1 && higher.iter().all(|&h| h == 0);
    Ok(AcyclicityVerdict { sequence: seq.to_vec(), h0, higher, acyclic })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precubical::{directed_disc, directed_segment, directed_sphere, point, sub, SubsetSpec};

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn disc_and_sphere_degree_zero() {
        let d2 = build_complex(&directed_disc(2).unwrap(), 2, q()).unwrap();
        let s1 = build_complex(&directed_sphere(1).unwrap(), 2, q()).unwrap();
        let (s, e) = (d2.vertex("00").unwrap(), d2.vertex("11").unwrap());
        assert_eq!(homology(&d2.complex, 0, s, e).unwrap().0, 1);
        assert_eq!(homology(&s1.complex, 0, s, e).unwrap().0, 2);
        assert_eq!(homology(&d2.complex, 1, s, e).unwrap().0, 0);
        assert_eq!(homology(&s1.complex, 1, s, e).unwrap().0, 0);
        assert!(homology(&d2.complex, 3, s, e).is_err());
    }

    #[test]
    fn square_left_action_has_rank_one() {
        let d2 = build_complex(&directed_disc(2).unwrap(), 1, q()).unwrap();
        let h = homology_table(&d2.complex).unwrap();
        let a = d2.set.lookup("0a").unwrap().idx;
        let e = d2.vertex("11").unwrap();
        let m = h.left_action(a, 0, e);
        assert_eq!(m.shape(), (1, 1));
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn segment_action_is_iso() {
        let k = build_complex(&directed_segment(), 1, q()).unwrap();
        let h = homology_table(&k.complex).unwrap();
        assert_eq!(h.dim(0, 0, 1), 1);
        let m = h.left_action(0, 0, 1);
        assert_eq!(m.shape(), (1, 1));
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn two_edge_path_action_composes() {
        let d2 = build_complex(&directed_disc(2).unwrap(), 1, q()).unwrap();
        let h = homology_table(&d2.complex).unwrap();
        let c = &d2.complex;
        let (e, mid, s) = (d2.vertex("11").unwrap(), d2.vertex("01").unwrap(), d2.vertex("00").unwrap());
        let a0 = d2.set.lookup("0a").unwrap().idx;
        let a1 = d2.set.lookup("a1").unwrap().idx;
        assert_eq!(c.quiver().arc(a0), (s, mid));
        let chain = c.left_action(a0, 0, e).mul(&c.left_action(a1, 0, e)).unwrap();
        let hom = h.left_action(a0, 0, e).mul(&h.left_action(a1, 0, e)).unwrap();
        let src = h.block(0, e, e).unwrap();
        let dst = h.block(0, s, e).unwrap();
        assert_eq!(dst.induced_from(&chain, src).unwrap(), hom);
        assert_eq!(h.module(0).left_path_action(&[], e, e).unwrap(), Matrix::identity(q(), 1));
    }

    #[test]
    fn inclusion_of_sphere_in_disc() {
        let d2 = directed_disc(2).unwrap();
        let spec = SubsetSpec::closure_of(&d2, &["0a", "1a", "a0", "a1"]).unwrap().0;
        let (s1, inc) = sub(&d2, &spec, "S1").unwrap();
        let cx = build_complex(&s1, 1, q()).unwrap();
        let cy = build_complex(&d2, 1, q()).unwrap();
        let hx = homology_table(&cx.complex).unwrap();
        let hy = homology_table(&cy.complex).unwrap();
        let f = induced_map(&inc, &cx, &cy, &hx, &hy).unwrap();
        let (s, e) = (cx.vertex("00").unwrap(), cx.vertex("11").unwrap());
        let m = f.get(0, s, e).unwrap();
        assert_eq!(m.shape(), (1, 2));
        assert_eq!(m.rank(), 1);

        let id = PcMorphism::identity(&d2);
        let g = induced_map(&id, &cy, &cy, &hy, &hy).unwrap();
        for ((i, s, e), m) in g.iter() {
            assert_eq!(*m, Matrix::identity(q(), hy.dim(i, s, e)));
        }
    }

    #[test]
    fn cohomology_matches_homology() {
        for x in [directed_disc(2).unwrap(), directed_sphere(1).unwrap(), point()] {
            let cx = build_complex(&x, 2, q()).unwrap();
            let co = cochain_dual(&cx.complex);
            assert!(co.check_squares_zero().unwrap());
            for (s, e) in cx.complex.pairs() {
                for i in 0..=2 {
                    assert_eq!(
                        co.cohomology_dim(i, s, e).unwrap(),
                        homology(&cx.complex, i, s, e).unwrap().0
                    );
                }
            }
        }
    }

    #[test]
    fn realizations_are_acyclic() {
        for seq in [vec![1, 2, 2], vec![2], vec![], vec![3, 1]] {
            let v = acyclicity_check(&seq, q()).unwrap();
            assert!(v.acyclic, "{seq:?}: {v:?}");
        }
    }
}
