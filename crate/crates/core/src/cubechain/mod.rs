//! Cube chains and the chain complex they span.
//!
//! A cube chain from `s` to `e` is a sequence of cubes of positive dimension, each
//! glued final vertex to initial vertex. Its dimension is `Σ (n_k - 1)`, so edges
//! contribute nothing and degree 0 is spanned by edge paths (the empty chain at a
//! vertex included). The boundary splits one cube `c_k` at a time:
//!
//! ```text
//! ∂c = Σ_{k : n_k ≥ 2} ε_k Σ_{∅ ≠ A ⊊ {1..n_k}} (-1)^{|A|} sgn(A) (.., d⁰_{Ā} c_k, d¹_A c_k, ..)
//! ```
//!
//! with `ε_k = (-1)^{Σ_{j<k} (n_j - 1)}` and `sgn(A)` the sign of the shuffle that
//! lists `A` before its complement. `d⁰_{Ā}` keeps the coordinates in `A`, so the
//! first piece has dimension `|A|` and the second `n_k - |A|`.

mod shuffle;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::Error;
use crate::exactla::{Field, Matrix, Vector};
use crate::graded::{ChainMap, PairComplex, Quiver};
use crate::precubical::{CellRef, PcMorphism, PrecubicalSet};

pub use shuffle::{enumerate_shuffles, project_shuffle};

/// A cube chain. Cubes have dimension at least 1; the empty chain sits at `src = dst`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CubeChain {
    pub cubes: Vec<CellRef>,
    pub src: usize,
    pub dst: usize,
}

impl Ord for CubeChain {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.cubes.len(), &self.cubes, self.src, self.dst).cmp(&(
            other.cubes.len(),
            &other.cubes,
            other.src,
            other.dst,
        ))
    }
}

impl PartialOrd for CubeChain {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl CubeChain {
    pub fn empty(v: usize) -> Self {
        CubeChain { cubes: vec![], src: v, dst: v }
    }

    /// Checks the gluing condition.
    pub fn new(x: &PrecubicalSet, cubes: Vec<CellRef>) -> Option<Self> {
        let first = *cubes.first()?;
        if cubes.iter().any(|c| c.dim == 0) {
            return None;
        }
        for w in cubes.windows(2) {
            if x.final_vertex(w[0]) != x.initial_vertex(w[1]) {
                return None;
            }
        }
        let src = x.initial_vertex(first);
        let dst = x.final_vertex(*cubes.last().expect("nonempty"));
        Some(CubeChain { cubes, src, dst })
    }

    /// Looks cubes up by name.
    pub fn from_names(x: &PrecubicalSet, names: &[&str]) -> Option<Self> {
        let cubes = names.iter().map(|n| x.lookup(n)).collect::<Option<Vec<_>>>()?;
        CubeChain::new(x, cubes)
    }

    pub fn dimension(&self) -> usize {
        self.cubes.iter().map(|c| c.dim - 1).sum()
    }

    pub fn type_seq(&self) -> Vec<usize> {
        self.cubes.iter().map(|c| c.dim).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.cubes.is_empty()
    }

    /// Prepends the edge `a`, which must end at `src`.
    pub fn prepend_edge(&self, a: usize, from: usize) -> CubeChain {
        let mut cubes = Vec::with_capacity(self.cubes.len() + 1);
        cubes.push(CellRef::new(1, a));
        cubes.extend_from_slice(&self.cubes);
        CubeChain { cubes, src: from, dst: self.dst }
    }

    /// Appends the edge `b`, which must start at `dst`.
    pub fn append_edge(&self, b: usize, to: usize) -> CubeChain {
        let mut cubes = self.cubes.clone();
        cubes.push(CellRef::new(1, b));
        CubeChain { cubes, src: self.src, dst: to }
    }

    /// `self` followed by `other`, when `self.dst == other.src`.
    pub fn concat(&self, other: &CubeChain) -> Option<CubeChain> {
        if self.dst != other.src {
            return None;
        }
        let mut cubes = self.cubes.clone();
        cubes.extend_from_slice(&other.cubes);
        Some(CubeChain { cubes, src: self.src, dst: other.dst })
    }

    pub fn display<'a>(&'a self, x: &'a PrecubicalSet) -> ChainDisplay<'a> {
        ChainDisplay { chain: self, set: x }
    }
}

pub struct ChainDisplay<'a> {
    chain: &'a CubeChain,
    set: &'a PrecubicalSet,
}

impl fmt::Display for ChainDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.chain.is_empty() {
            return write!(f, "[]@{}", self.set.vertex_name(self.chain.src));
        }
        let names: Vec<&str> = self.chain.cubes.iter().map(|&c| self.set.cell_name(c)).collect();
        write!(f, "[{}]", names.join(", "))
    }
}

/// An integer combination of cube chains; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormalSum {
    terms: BTreeMap<CubeChain, i64>,
}

impl FormalSum {
    pub fn new() -> Self {
        FormalSum::default()
    }

    pub fn single(c: CubeChain) -> Self {
        let mut s = FormalSum::new();
        s.add(c, 1);
        s
    }

    pub fn add(&mut self, c: CubeChain, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let slot = self.terms.entry(c.clone()).or_insert(0);
        *slot += coeff;
        if *slot == 0 {
            self.terms.remove(&c);
        }
    }

    pub fn add_sum(&mut self, other: &FormalSum, scale: i64) {
        for (c, &k) in &other.terms {
            self.add(c.clone(), k * scale);
        }
    }

    pub fn coeff(&self, c: &CubeChain) -> i64 {
        self.terms.get(c).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CubeChain, i64)> {
        self.terms.iter().map(|(c, &k)| (c, k))
    }
}

/// Sign of the shuffle listing the coordinates in `mask` (ascending) before the rest.
fn shuffle_sign(n: usize, mask: u32) -> i64 {
    let mut inversions = 0;
    for a in 0..n {
        if mask >> a & 1 == 1 {
            inversions += (0..a).filter(|&b| mask >> b & 1 == 0).count();
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

fn boundary_terms(x: &PrecubicalSet, c: &CubeChain) -> FormalSum {
    let mut out = FormalSum::new();
    let mut prefix = 0usize;
    for (k, &cube) in c.cubes.iter().enumerate() {
        let n = cube.dim;
        if n >= 2 {
            let eps = if prefix % 2 == 0 { 1 } else { -1 };
            for mask in 1..(1u32 << n) - 1 {
                let a: Vec<usize> = (1..=n).filter(|&i| mask >> (i - 1) & 1 == 1).collect();
                let abar: Vec<usize> = (1..=n).filter(|&i| mask >> (i - 1) & 1 == 0).collect();
                let parity = if a.len() % 2 == 0 { 1 } else { -1 };
                let sign = eps * parity * shuffle_sign(n, mask);
                let lo = x.iterated_face(cube, &abar, false);
                let hi = x.iterated_face(cube, &a, true);
                let mut cubes = Vec::with_capacity(c.cubes.len() + 1);
                cubes.extend_from_slice(&c.cubes[..k]);
                cubes.push(lo);
                cubes.push(hi);
                cubes.extend_from_slice(&c.cubes[k + 1..]);
                out.add(CubeChain { cubes, src: c.src, dst: c.dst }, sign);
            }
        }
        prefix += n - 1;
    }
    out
}

/// `∂c`, a combination of chains of one dimension less with the same endpoints.
pub fn boundary(x: &PrecubicalSet, c: &CubeChain) -> Result<FormalSum, Error> {
    if c.dimension() == 0 {
        return Err(Error::ZeroDimensionalBoundary);
    }
    Ok(boundary_terms(x, c))
}

/// `∂` extended linearly; zero on 0-dimensional chains.
pub fn boundary_of_sum(x: &PrecubicalSet, z: &FormalSum) -> FormalSum {
    let mut out = FormalSum::new();
    for (c, k) in z.iter() {
        out.add_sum(&boundary_terms(x, c), k);
    }
    out
}

struct Walker {
    out_cubes: Vec<Vec<CellRef>>,
    final_of: HashMap<CellRef, usize>,
    max_dim: usize,
}

impl Walker {
    fn new(x: &PrecubicalSet, max_dim: usize) -> Self {
        let mut out_cubes = vec![Vec::new(); x.count(0)];
        let mut final_of = HashMap::new();
        for c in x.all_cells().filter(|c| c.dim >= 1 && c.dim <= max_dim + 1) {
            out_cubes[x.initial_vertex(c)].push(c);
            final_of.insert(c, x.final_vertex(c));
        }
        Walker { out_cubes, final_of, max_dim }
    }

    fn from(&self, s: usize, sink: &mut dyn FnMut(CubeChain)) {
        let mut cur = Vec::new();
        self.step(s, s, 0, &mut cur, sink);
    }

    fn step(&self, s: usize, at: usize, dim: usize, cur: &mut Vec<CellRef>, sink: &mut dyn FnMut(CubeChain)) {
        sink(CubeChain { cubes: cur.clone(), src: s, dst: at });
        for &c in &self.out_cubes[at] {
            let d = dim + c.dim - 1;
            if d <= self.max_dim {
                cur.push(c);
                self.step(s, self.final_of[&c], d, cur, sink);
                cur.pop();
            }
        }
    }
}

/// All cube chains of dimension `i` from `s` to `e`, in the chain order.
pub fn enumerate_chains(x: &PrecubicalSet, i: usize, s: usize, e: usize) -> Result<Vec<CubeChain>, Error> {
    x.require_acyclic()?;
    let w = Walker::new(x, i);
    let mut out = Vec::new();
    w.from(s, &mut |c| {
        if c.dst == e && c.dimension() == i {
            out.push(c);
        }
    });
    out.sort();
    Ok(out)
}

/// The cube chain complex of a finite acyclic precubical set, with its chain bases.
#[derive(Clone, Debug)]
pub struct CubeComplex {
    pub set: PrecubicalSet,
    pub complex: PairComplex,
    bases: BTreeMap<(usize, usize), Vec<Vec<CubeChain>>>,
    index: HashMap<CubeChain, usize>,
}

impl CubeComplex {
    pub fn field(&self) -> Field {
        self.complex.field()
    }

    pub fn max_degree(&self) -> usize {
        self.complex.max_degree()
    }

    pub fn vertex(&self, name: &str) -> Result<usize, Error> {
        self.complex.quiver().vertex(name)
    }

    pub fn dims(&self, s: usize, e: usize) -> Vec<usize> {
        self.complex.dims(s, e)
    }

    /// Basis chains in degree `i` at `(s, e)`.
    pub fn basis(&self, i: usize, s: usize, e: usize) -> &[CubeChain] {
        self.bases.get(&(s, e)).and_then(|b| b.get(i)).map_or(&[], |v| v.as_slice())
    }

    /// Position of `c` in its block basis.
    pub fn position(&self, c: &CubeChain) -> Option<usize> {
        self.index.get(c).copied()
    }

    /// Coordinates of a homogeneous sum in the basis of degree `i` at `(s, e)`.
    pub fn vector(&self, z: &FormalSum, i: usize, s: usize, e: usize) -> Result<Vector, Error> {
        let f = self.field();
        let mut v = vec![f.zero(); self.complex.dim(i, s, e)];
        for (c, k) in z.iter() {
            if c.src != s || c.dst != e || c.dimension() != i {
                return Err(Error::WrongDimension { expected: i, found: c.dimension() });
            }
            let p = self.position(c).ok_or(Error::DegreeOutOfRange { degree: i, max: self.complex.top() })?;
            v[p] = &v[p] + &f.from_i64(k);
        }
        Ok(v)
    }

    /// The formal sum with the given coordinates; coefficients must be integers.
    pub fn sum(&self, v: &[crate::exactla::Scalar], i: usize, s: usize, e: usize) -> FormalSum {
        let mut z = FormalSum::new();
        for (c, k) in self.basis(i, s, e).iter().zip(v) {
            z.add(c.clone(), k.to_i64().expect("integral coefficient"));
        }
        z
    }
}

/// The complex in degrees `0..=max_i + 1`, so homology is determined through `max_i`.
/// Fails if `x` has a directed cycle or if `∂∂ ≠ 0` anywhere.
pub fn build_complex(x: &PrecubicalSet, max_i: usize, field: Field) -> Result<CubeComplex, Error> {
    x.require_acyclic()?;
    let top = max_i + 1;
    let quiver = Arc::new(Quiver::of(x));
    let walker = Walker::new(x, top);
    let mut bases: BTreeMap<(usize, usize), Vec<Vec<CubeChain>>> = BTreeMap::new();
    for s in 0..x.count(0) {
        walker.from(s, &mut |c| {
            let slot = bases.entry((s, c.dst)).or_insert_with(|| vec![Vec::new(); top + 1]);
            let d = c.dimension();
            slot[d].push(c);
        });
    }
    let mut index = HashMap::new();
    for b in bases.values_mut() {
        for deg in b.iter_mut() {
            deg.sort();
            for (p, c) in deg.iter().enumerate() {
                index.insert(c.clone(), p);
            }
        }
    }
    let mut complex = PairComplex::new(field, quiver.clone(), max_i);
    for (&(s, e), b) in &bases {
        let dims: Vec<usize> = b.iter().map(Vec::len).collect();
        let mut diffs = Vec::with_capacity(top);
        for i in 1..=top {
            let mut m = Matrix::zeros(field, dims[i - 1], dims[i]);
            for (col, c) in b[i].iter().enumerate() {
                for (t, k) in boundary_terms(x, c).iter() {
                    m.add_at(index[t], col, &field.from_i64(k))?;
                }
            }
            diffs.push(m);
        }
        complex.insert_from_diffs(s, e, dims, diffs);
    }
    complex.check_squares_zero()?;
    for a in 0..quiver.arc_count() {
        let (u, v) = quiver.arc(a);
        for (&(s, e), b) in &bases {
            for (i, chains) in b.iter().enumerate() {
                if s == v {
                    let mut m = Matrix::zeros(field, complex.dim(i, u, e), chains.len());
                    for (col, c) in chains.iter().enumerate() {
                        m.set(index[&c.prepend_edge(a, u)], col, field.one())?;
                    }
                    complex.set_left(a, i, s, e, m);
                }
                if e == u {
                    let mut m = Matrix::zeros(field, complex.dim(i, s, v), chains.len());
                    for (col, c) in chains.iter().enumerate() {
                        m.set(index[&c.append_edge(a, v)], col, field.one())?;
                    }
                    complex.set_right(a, i, s, e, m);
                }
            }
        }
    }
    Ok(CubeComplex { set: x.clone(), complex, bases, index })
}

/// The chain map of a morphism: each cube of a chain is replaced by its image.
pub fn morphism_chain_map(f: &PcMorphism, cx: &CubeComplex, cy: &CubeComplex) -> Result<ChainMap, Error> {
    if f.source() != &cx.set || f.target() != &cy.set {
        return Err(Error::Precubical(crate::precubical::PrecubicalError::EndpointMismatch));
    }
    let field = cx.field();
    let mut g = ChainMap::new(f.maps()[0].clone());
    for (s, e) in cx.complex.pairs() {
        let (fs, fe) = (f.apply_vertex(s), f.apply_vertex(e));
        for i in 0..=cx.complex.top().min(cy.complex.top()) {
            let basis = cx.basis(i, s, e);
            let mut m = Matrix::zeros(field, cy.complex.dim(i, fs, fe), basis.len());
            for (col, c) in basis.iter().enumerate() {
                let img = CubeChain { cubes: c.cubes.iter().map(|&k| f.apply(k)).collect(), src: fs, dst: fe };
                let row = cy.position(&img).expect("image chain is in the target complex");
                m.set(row, col, field.one())?;
            }
            g.set(i, s, e, m);
        }
    }
    Ok(g)
}
