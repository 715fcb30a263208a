//! Complexes of bimodules over the path algebra of a finite acyclic quiver.
//!
//! A bimodule over path algebras splits into blocks indexed by a pair of vertices
//! `(s, e)`; an edge `a : s' -> s` acts on the left as a linear map from the `(s, e)`
//! block to the `(s', e)` block, and an edge `b : e -> e'` acts on the right from
//! `(s, e)` to `(s, e')`. Everything here stores those blocks and action matrices
//! explicitly.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::error::Error;
use crate::exactla::{Field, Matrix};
use crate::precubical::PrecubicalSet;

/// Vertices and arcs of a finite acyclic digraph, with a reachability table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arcs: Vec<(usize, usize)>,
    arc_names: Vec<String>,
    reach: Vec<Vec<bool>>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arcs: Vec<(String, usize, usize)>) -> Self {
        let n = vertices.len();
        let arc_names = arcs.iter().map(|a| a.0.clone()).collect();
        let arcs: Vec<(usize, usize)> = arcs.iter().map(|a| (a.1, a.2)).collect();
        let mut reach = vec![vec![false; n]; n];
        for (v, row) in reach.iter_mut().enumerate() {
            row[v] = true;
            let mut stack = vec![v];
            while let Some(u) = stack.pop() {
                for &(a, b) in &arcs {
                    if a == u && !row[b] {
                        row[b] = true;
                        stack.push(b);
                    }
                }
            }
        }
        Quiver { vertices, arcs, arc_names, reach }
    }

    /// The 1-skeleton of `x`.
    pub fn of(x: &PrecubicalSet) -> Self {
        let arcs = x
            .arcs()
            .into_iter()
            .enumerate()
            .map(|(i, (s, t))| (x.cells(1)[i].clone(), s, t))
            .collect();
        Quiver::new(x.cells(0).to_vec(), arcs)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex(&self, name: &str) -> Result<usize, Error> {
        self.vertices
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arc(&self, a: usize) -> (usize, usize) {
        self.arcs[a]
    }

    pub fn arc_name(&self, a: usize) -> &str {
        &self.arc_names[a]
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    /// Whether a directed path (possibly trivial) runs from `s` to `e`.
    pub fn reaches(&self, s: usize, e: usize) -> bool {
        self.reach[s][e]
    }

    /// All pairs `(s, e)` with `e` reachable from `s`, in lexicographic order.
    pub fn reachable_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.vertex_count();
        (0..n)
            .flat_map(|s| (0..n).map(move |e| (s, e)))
            .filter(|&(s, e)| self.reach[s][e])
            .collect()
    }

    /// Every directed path from `s` to `e` as a sequence of arcs; the trivial path is empty.
    pub fn paths(&self, s: usize, e: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.walk(s, e, &mut cur, &mut out);
        out
    }

    fn walk(&self, at: usize, e: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !self.reach[at][e] {
            return;
        }
        if at == e {
            out.push(cur.clone());
        }
        for (a, &(u, v)) in self.arcs.iter().enumerate() {
            if u == at {
                cur.push(a);
                self.walk(v, e, cur, out);
                cur.pop();
            }
        }
    }

    /// Paths that cannot be extended at either end. An isolated vertex gives a trivial path.
    pub fn maximal_paths(&self) -> Vec<(usize, Vec<usize>)> {
        let n = self.vertex_count();
        let mut has_in = vec![false; n];
        let mut has_out = vec![false; n];
        for &(u, v) in &self.arcs {
            has_out[u] = true;
            has_in[v] = true;
        }
        let mut out = Vec::new();
        for s in (0..n).filter(|&s| !has_in[s]) {
            for e in (0..n).filter(|&e| !has_out[e]) {
                for p in self.paths(s, e) {
                    out.push((s, p));
                }
            }
        }
        out
    }
}

/// One vertex-pair block: dimensions per degree and the differentials
/// `diffs[i] : C_i -> C_{i-1}` (with `diffs[0]` the `0 x dims[0]` matrix).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub dims: Vec<usize>,
    pub diffs: Vec<Matrix>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct ActionKey {
    arc: usize,
    degree: usize,
    src: usize,
    dst: usize,
}

/// A chain complex of bimodules over the path algebra of a quiver, stored in
/// degrees `0..=max_degree + 1` so that homology is available through `max_degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairComplex {
    field: Field,
    quiver: Arc<Quiver>,
    max_degree: usize,
    blocks: BTreeMap<(usize, usize), Block>,
    left: HashMap<ActionKey, Matrix>,
    right: HashMap<ActionKey, Matrix>,
}

impl PairComplex {
    pub fn new(field: Field, quiver: Arc<Quiver>, max_degree: usize) -> Self {
        PairComplex {
            field,
            quiver,
            max_degree,
            blocks: BTreeMap::new(),
            left: HashMap::new(),
            right: HashMap::new(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn shared_quiver(&self) -> Arc<Quiver> {
        self.quiver.clone()
    }

    /// Highest degree whose homology is determined.
    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Highest stored degree.
    pub fn top(&self) -> usize {
        self.max_degree + 1
    }

    /// Installs a block; `diffs[0]` is the `0 x dims[0]` matrix.
    pub fn insert_block(&mut self, s: usize, e: usize, dims: Vec<usize>, diffs: Vec<Matrix>) {
        let top = self.top();
        assert_eq!(dims.len(), top + 1, "block needs a dimension per stored degree");
        assert_eq!(diffs.len(), top + 1, "block needs a differential per stored degree");
        for i in 1..=top {
            assert_eq!(diffs[i].shape(), (dims[i - 1], dims[i]), "differential shape in degree {i}");
        }
        assert_eq!(diffs[0].shape(), (0, dims[0]));
        self.blocks.insert((s, e), Block { dims, diffs });
    }

    /// Installs a block from differentials in degrees `1..=top`.
    pub fn insert_from_diffs(&mut self, s: usize, e: usize, dims: Vec<usize>, higher: Vec<Matrix>) {
        let mut diffs = vec![Matrix::zeros(self.field, 0, dims[0])];
        diffs.extend(higher);
        self.insert_block(s, e, dims, diffs);
    }

    pub fn block(&self, s: usize, e: usize) -> Option<&Block> {
        self.blocks.get(&(s, e))
    }

    /// Pairs that carry a stored block.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.blocks.keys().copied()
    }

    pub fn dim(&self, i: usize, s: usize, e: usize) -> usize {
        self.blocks.get(&(s, e)).and_then(|b| b.dims.get(i).copied()).unwrap_or(0)
    }

    pub fn dims(&self, s: usize, e: usize) -> Vec<usize> {
        (0..=self.top()).map(|i| self.dim(i, s, e)).collect()
    }

    /// `∂_i : C_i(s, e) -> C_{i-1}(s, e)`; degree `top + 1` gives the zero map.
    pub fn differential(&self, i: usize, s: usize, e: usize) -> Matrix {
        match self.blocks.get(&(s, e)).and_then(|b| b.diffs.get(i)) {
            Some(m) => m.clone(),
            None => Matrix::zeros(self.field, if i == 0 { 0 } else { self.dim(i - 1, s, e) }, self.dim(i, s, e)),
        }
    }

    /// Sets the left action of arc `a : s' -> s` from `C_i(s, e)` to `C_i(s', e)`.
    pub fn set_left(&mut self, a: usize, i: usize, s: usize, e: usize, m: Matrix) {
        let (u, v) = self.quiver.arc(a);
        assert_eq!(v, s, "left action needs the arc to end at the source vertex");
        assert_eq!(m.shape(), (self.dim(i, u, e), self.dim(i, s, e)), "left action shape");
        if !m.is_zero() {
            self.left.insert(ActionKey { arc: a, degree: i, src: s, dst: e }, m);
        }
    }

    /// Sets the right action of arc `b : e -> e'` from `C_i(s, e)` to `C_i(s, e')`.
    pub fn set_right(&mut self, b: usize, i: usize, s: usize, e: usize, m: Matrix) {
        let (u, v) = self.quiver.arc(b);
        assert_eq!(u, e, "right action needs the arc to start at the target vertex");
        assert_eq!(m.shape(), (self.dim(i, s, v), self.dim(i, s, e)), "right action shape");
        if !m.is_zero() {
            self.right.insert(ActionKey { arc: b, degree: i, src: s, dst: e }, m);
        }
    }

    /// Left action of `a : s' -> s` in degree `i`, as a matrix `C_i(s, e) -> C_i(s', e)`.
    pub fn left_action(&self, a: usize, i: usize, e: usize) -> Matrix {
        let (u, s) = self.quiver.arc(a);
        self.left
            .get(&ActionKey { arc: a, degree: i, src: s, dst: e })
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.field, self.dim(i, u, e), self.dim(i, s, e)))
    }

    /// Right action of `b : e -> e'` in degree `i`, as a matrix `C_i(s, e) -> C_i(s, e')`.
    pub fn right_action(&self, b: usize, i: usize, s: usize) -> Matrix {
        let (e, v) = self.quiver.arc(b);
        self.right
            .get(&ActionKey { arc: b, degree: i, src: s, dst: e })
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.field, self.dim(i, s, v), self.dim(i, s, e)))
    }

    /// Checks `∂∂ = 0` in every block.
    pub fn check_squares_zero(&self) -> Result<(), Error> {
        for (&(s, e), b) in &self.blocks {
            for i in 2..b.diffs.len() {
                if !b.diffs[i - 1].mul(&b.diffs[i])?.is_zero() {
                    return Err(Error::BoundaryNotNilpotent {
                        degree: i,
                        src: self.quiver.vertex_name(s).to_string(),
                        dst: self.quiver.vertex_name(e).to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    /// Checks that every edge acts by a chain map.
    pub fn check_actions(&self) -> Result<(), Error> {
        let q = &self.quiver;
        for a in 0..q.arc_count() {
            let (u, v) = q.arc(a);
            for e in 0..q.vertex_count() {
                for i in 1..=self.top() {
                    let lhs = self.differential(i, u, e).mul(&self.left_action(a, i, e))?;
                    let rhs = self.left_action(a, i - 1, e).mul(&self.differential(i, v, e))?;
                    if lhs != rhs {
                        return Err(Error::NotAChainMap(format!("left action of '{}'", q.arc_name(a))));
                    }
                }
            }
            for s in 0..q.vertex_count() {
                for i in 1..=self.top() {
                    let lhs = self.differential(i, s, v).mul(&self.right_action(a, i, s))?;
                    let rhs = self.right_action(a, i - 1, s).mul(&self.differential(i, s, u))?;
                    if lhs != rhs {
                        return Err(Error::NotAChainMap(format!("right action of '{}'", q.arc_name(a))));
                    }
                }
            }
        }
        Ok(())
    }

    /// `Σ_i (-1)^i dim C_i(s, e)` over the degrees `0..=top`.
    pub fn euler_characteristic(&self, s: usize, e: usize) -> i64 {
        self.dims(s, e)
            .iter()
            .enumerate()
            .map(|(i, &d)| if i % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }
}

/// A degree-preserving map between two pair complexes, covering a vertex map
/// between their quivers: block `(s, e)` goes to `(f(s), f(e))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub vertex_map: Vec<usize>,
    mats: HashMap<(usize, usize, usize), Matrix>,
}

impl ChainMap {
    pub fn new(vertex_map: Vec<usize>) -> Self {
        ChainMap { vertex_map, mats: HashMap::new() }
    }

    pub fn identity_on(c: &PairComplex) -> Self {
        let mut f = ChainMap::new((0..c.quiver().vertex_count()).collect());
        for (s, e) in c.pairs() {
            for i in 0..=c.top() {
                f.set(i, s, e, Matrix::identity(c.field(), c.dim(i, s, e)));
            }
        }
        f
    }

    pub fn set(&mut self, i: usize, s: usize, e: usize, m: Matrix) {
        self.mats.insert((i, s, e), m);
    }

    /// The block of the map in degree `i` at source pair `(s, e)`, zero when unset.
    pub fn get(&self, i: usize, s: usize, e: usize, src: &PairComplex, dst: &PairComplex) -> Matrix {
        let (fs, fe) = (self.vertex_map[s], self.vertex_map[e]);
        self.mats
            .get(&(i, s, e))
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(src.field(), dst.dim(i, fs, fe), src.dim(i, s, e)))
    }

    /// `g ∘ f`.
    pub fn then(&self, g: &ChainMap, a: &PairComplex, b: &PairComplex, c: &PairComplex) -> Result<ChainMap, Error> {
        let vm = self.vertex_map.iter().map(|&v| g.vertex_map[v]).collect();
        let mut out = ChainMap::new(vm);
        for (s, e) in a.pairs() {
            for i in 0..=a.top() {
                let f = self.get(i, s, e, a, b);
                let gm = g.get(i, self.vertex_map[s], self.vertex_map[e], b, c);
                out.set(i, s, e, gm.mul(&f)?);
            }
        }
        Ok(out)
    }

    /// Checks `∂ f = f ∂` in every block of the source.
    pub fn check_chain_map(&self, src: &PairComplex, dst: &PairComplex, label: &str) -> Result<(), Error> {
        for (s, e) in src.pairs() {
            let (fs, fe) = (self.vertex_map[s], self.vertex_map[e]);
            for i in 1..=src.top().min(dst.top()) {
                let lhs = dst.differential(i, fs, fe).mul(&self.get(i, s, e, src, dst))?;
                let rhs = self.get(i - 1, s, e, src, dst).mul(&src.differential(i, s, e))?;
                if lhs != rhs {
                    return Err(Error::NotAChainMap(format!(
                        "{label} in degree {i} at ({}, {})",
                        src.quiver().vertex_name(s),
                        src.quiver().vertex_name(e)
                    )));
                }
            }
        }
        Ok(())
    }
}

/// A single graded piece of a bimodule: block dimensions and edge actions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairModule {
    field: Field,
    quiver: Arc<Quiver>,
    dims: BTreeMap<(usize, usize), usize>,
    left: HashMap<(usize, usize), Matrix>,
    right: HashMap<(usize, usize), Matrix>,
}

impl PairModule {
    pub fn new(field: Field, quiver: Arc<Quiver>) -> Self {
        PairModule { field, quiver, dims: BTreeMap::new(), left: HashMap::new(), right: HashMap::new() }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn shared_quiver(&self) -> Arc<Quiver> {
        self.quiver.clone()
    }

    pub fn set_dim(&mut self, s: usize, e: usize, d: usize) {
        self.dims.insert((s, e), d);
    }

    pub fn dim(&self, s: usize, e: usize) -> usize {
        self.dims.get(&(s, e)).copied().unwrap_or(0)
    }

    /// Pairs with a recorded (possibly zero) dimension.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.dims.keys().copied()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    /// Sets the left action of `a : s' -> s` on the `(s, e)` block.
    pub fn set_left(&mut self, a: usize, e: usize, m: Matrix) {
        let (u, s) = self.quiver.arc(a);
        assert_eq!(m.shape(), (self.dim(u, e), self.dim(s, e)), "left action shape");
        self.left.insert((a, e), m);
    }

    /// Sets the right action of `b : e -> e'` on the `(s, e)` block.
    pub fn set_right(&mut self, b: usize, s: usize, m: Matrix) {
        let (e, v) = self.quiver.arc(b);
        assert_eq!(m.shape(), (self.dim(s, v), self.dim(s, e)), "right action shape");
        self.right.insert((b, s), m);
    }

    pub fn left_action(&self, a: usize, e: usize) -> Matrix {
        let (u, s) = self.quiver.arc(a);
        self.left
            .get(&(a, e))
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.field, self.dim(u, e), self.dim(s, e)))
    }

    pub fn right_action(&self, b: usize, s: usize) -> Matrix {
        let (e, v) = self.quiver.arc(b);
        self.right
            .get(&(b, s))
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.field, self.dim(s, v), self.dim(s, e)))
    }

    /// Action of the path `p` (arcs in order, from `s'` to `s`) on the `(s, e)` block.
    pub fn left_path_action(&self, p: &[usize], s: usize, e: usize) -> Result<Matrix, Error> {
        let mut m = Matrix::identity(self.field, self.dim(s, e));
        for &a in p.iter().rev() {
            m = self.left_action(a, e).mul(&m)?;
        }
        Ok(m)
    }

    /// Action of the path `p` (arcs in order, from `e` to `e'`) on the `(s, e)` block.
    pub fn right_path_action(&self, p: &[usize], s: usize, e: usize) -> Result<Matrix, Error> {
        let mut m = Matrix::identity(self.field, self.dim(s, e));
        for &b in p {
            m = self.right_action(b, s).mul(&m)?;
        }
        Ok(m)
    }

    /// Whether left and right edge actions commute on every block.
    pub fn check_bimodule(&self) -> Result<bool, Error> {
        let q = &self.quiver;
        for a in 0..q.arc_count() {
            for b in 0..q.arc_count() {
                let (u, s) = q.arc(a);
                let (e, _) = q.arc(b);
                let lr = self.left_action(a, q.arc(b).1).mul(&self.right_action(b, s))?;
                let rl = self.right_action(b, u).mul(&self.left_action(a, e))?;
                if lr != rl {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

impl PairComplex {
    /// The degree-`i` chain bimodule.
    pub fn module(&self, i: usize) -> PairModule {
        let mut m = PairModule::new(self.field, self.quiver.clone());
        for (s, e) in self.pairs() {
            m.set_dim(s, e, self.dim(i, s, e));
        }
        let n = self.quiver.vertex_count();
        for a in 0..self.quiver.arc_count() {
            for v in 0..n {
                m.set_left(a, v, self.left_action(a, i, v));
                m.set_right(a, v, self.right_action(a, i, v));
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precubical::{directed_disc, directed_sphere};

    #[test]
    fn square_quiver_paths() {
        let q = Quiver::of(&directed_disc(2).unwrap());
        let s = q.vertex("00").unwrap();
        let e = q.vertex("11").unwrap();
        assert_eq!(q.paths(s, e).len(), 2);
        assert_eq!(q.paths(s, s), vec![Vec::<usize>::new()]);
        assert!(q.paths(e, s).is_empty());
        assert_eq!(q.reachable_pairs().len(), 9);
        assert_eq!(q.maximal_paths().len(), 2);
    }

    #[test]
    fn sphere_and_disc_share_quiver() {
        assert_eq!(Quiver::of(&directed_disc(2).unwrap()), Quiver::of(&directed_sphere(1).unwrap()));
    }

    #[test]
    fn isolated_vertex_is_a_maximal_path() {
        let q = Quiver::new(vec!["v".into()], vec![]);
        assert_eq!(q.maximal_paths(), vec![(0, vec![])]);
    }

    #[test]
    fn missing_blocks_read_as_zero() {
        let q = Arc::new(Quiver::new(vec!["v".into()], vec![]));
        let c = PairComplex::new(Field::Rational, q, 1);
        assert_eq!(c.dim(0, 0, 0), 0);
        assert_eq!(c.differential(1, 0, 0).shape(), (0, 0));
        assert!(c.check_squares_zero().is_ok());
    }
}
