//! Finite precubical sets, their morphisms and the standard constructions
//! (cubes, wedges of cubes, tensor products, directed discs and spheres).

mod build;
mod json;
mod morphism;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

pub use build::{
    directed_disc, directed_segment, directed_sphere, domino, point, realization, standard_cube, tensor,
    Realization, TensorProduct,
};
pub use morphism::{all_morphisms, compose, PcMorphism};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PrecubicalError {
    #[error("duplicate cell id '{0}'")]
    DuplicateCell(String),
    #[error("unknown cell id '{0}'")]
    UnknownCell(String),
    #[error("cell '{cell}' of dimension {dim} lists face '{face}' of dimension {face_dim}")]
    FaceDimension { cell: String, dim: usize, face: String, face_dim: usize },
    #[error("cell '{cell}' of dimension {dim} needs {dim} lower and upper faces, got {lower} and {upper}")]
    FaceArity { cell: String, dim: usize, lower: usize, upper: usize },
    #[error("cell '{0}' has no face entry")]
    MissingFaces(String),
    #[error("cell dimensions must be consecutive from 0, missing {0}")]
    NonConsecutiveDims(usize),
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("subset is not face-closed: '{cell}' is selected but its face '{face}' is not")]
    NotFaceClosed { cell: String, face: String },
    #[error("morphism endpoints do not match")]
    EndpointMismatch,
    #[error("morphism does not commute with faces at '{0}'")]
    NotCubical(String),
    #[error("morphism is not injective on vertices ('{0}' and '{1}' collide)")]
    NotInjectiveOnVertices(String, String),
    #[error("morphism cell map has the wrong shape")]
    MorphismShape,
    #[error("realization entries must be at least 1, got {0}")]
    BadSequenceEntry(usize),
    #[error("directed discs and spheres need n >= 1")]
    BadDimension,
    #[error("precubical set has a directed cycle through {0:?}")]
    Cyclic(Vec<String>),
}

/// Position of a cell: its dimension and index within that dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellRef {
    pub dim: usize,
    pub idx: usize,
}

impl CellRef {
    pub fn new(dim: usize, idx: usize) -> Self {
        CellRef { dim, idx }
    }

    pub fn vertex(idx: usize) -> Self {
        CellRef { dim: 0, idx }
    }
}

/// Lower (`d_i^0`) and upper (`d_i^1`) faces of a cell, position `i - 1` holding `d_i`.
/// Entries index cells of the next dimension down.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Faces {
    pub lower: Vec<usize>,
    pub upper: Vec<usize>,
}

impl Faces {
    pub fn get(&self, i: usize, sign: bool) -> usize {
        if sign {
            self.upper[i]
        } else {
            self.lower[i]
        }
    }
}

/// A finite precubical set with named cells.
///
/// Invariants enforced on construction: unique names, face lists of the right
/// arity pointing at cells one dimension down. The precubical identities and
/// acyclicity are checked by [`validate`], not on construction.
#[derive(Clone, Debug)]
pub struct PrecubicalSet {
    name: String,
    cells: Vec<Vec<String>>,
    faces: Vec<Vec<Faces>>,
    index: HashMap<String, CellRef>,
}

impl PartialEq for PrecubicalSet {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.cells == other.cells && self.faces == other.faces
    }
}

impl Eq for PrecubicalSet {}

/// Incremental constructor for hand-written sets.
#[derive(Debug, Default)]
pub struct Builder {
    name: String,
    cells: Vec<(String, Vec<String>, Vec<String>)>,
}

impl Builder {
    pub fn vertex(mut self, name: &str) -> Self {
        self.cells.push((name.to_string(), Vec::new(), Vec::new()));
        self
    }

    pub fn vertices(mut self, names: &[&str]) -> Self {
        for n in names {
            self = self.vertex(n);
        }
        self
    }

    /// Adds a cell of dimension `lower.len()`.
    pub fn cell(mut self, name: &str, lower: &[&str], upper: &[&str]) -> Self {
        self.cells.push((
            name.to_string(),
            lower.iter().map(|s| s.to_string()).collect(),
            upper.iter().map(|s| s.to_string()).collect(),
        ));
        self
    }

    /// Adds an edge `src -> dst`.
    pub fn edge(self, name: &str, src: &str, dst: &str) -> Self {
        self.cell(name, &[src], &[dst])
    }

    pub fn build(self) -> Result<PrecubicalSet, PrecubicalError> {
        let mut by_dim: Vec<Vec<(String, Vec<String>, Vec<String>)>> = Vec::new();
        for (name, lower, upper) in self.cells {
            if lower.len() != upper.len() {
                return Err(PrecubicalError::FaceArity {
                    cell: name,
                    dim: lower.len().max(upper.len()),
                    lower: lower.len(),
                    upper: upper.len(),
                });
            }
            let d = lower.len();
            if by_dim.len() <= d {
                by_dim.resize_with(d + 1, Vec::new);
            }
            by_dim[d].push((name, lower, upper));
        }
        PrecubicalSet::from_named(self.name, by_dim)
    }
}

impl PrecubicalSet {
    pub fn builder(name: &str) -> Builder {
        Builder { name: name.to_string(), cells: Vec::new() }
    }

    /// Assembles a set from per-dimension `(name, lower faces, upper faces)` lists.
    pub(crate) fn from_named(
        name: String,
        by_dim: Vec<Vec<(String, Vec<String>, Vec<String>)>>,
    ) -> Result<Self, PrecubicalError> {
        if let Some(d) = by_dim.iter().position(Vec::is_empty) {
            if by_dim[d..].iter().any(|v| !v.is_empty()) {
                return Err(PrecubicalError::NonConsecutiveDims(d));
            }
        }
        let by_dim: Vec<_> = by_dim.into_iter().take_while(|v| !v.is_empty()).collect();
        let mut index = HashMap::new();
        let mut cells = Vec::with_capacity(by_dim.len());
        for (d, list) in by_dim.iter().enumerate() {
            let mut names = Vec::with_capacity(list.len());
            for (i, (n, _, _)) in list.iter().enumerate() {
                if index.insert(n.clone(), CellRef::new(d, i)).is_some() {
                    return Err(PrecubicalError::DuplicateCell(n.clone()));
                }
                names.push(n.clone());
            }
            cells.push(names);
        }
        let mut faces = Vec::with_capacity(by_dim.len());
        for (d, list) in by_dim.iter().enumerate() {
            let mut fs = Vec::with_capacity(list.len());
            for (n, lower, upper) in list {
                if lower.len() != d || upper.len() != d {
                    return Err(PrecubicalError::FaceArity {
                        cell: n.clone(),
                        dim: d,
                        lower: lower.len(),
                        upper: upper.len(),
                    });
                }
                let resolve = |f: &String| -> Result<usize, PrecubicalError> {
                    let r = index.get(f).ok_or_else(|| PrecubicalError::UnknownCell(f.clone()))?;
                    if r.dim + 1 != d {
                        return Err(PrecubicalError::FaceDimension {
                            cell: n.clone(),
                            dim: d,
                            face: f.clone(),
                            face_dim: r.dim,
                        });
                    }
                    Ok(r.idx)
                };
                fs.push(Faces {
                    lower: lower.iter().map(resolve).collect::<Result<_, _>>()?,
                    upper: upper.iter().map(resolve).collect::<Result<_, _>>()?,
                });
            }
            faces.push(fs);
        }
        Ok(PrecubicalSet { name, cells, faces, index })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    /// Highest dimension with a cell; `None` for the empty set.
    pub fn dim(&self) -> Option<usize> {
        self.cells.len().checked_sub(1)
    }

    pub fn count(&self, dim: usize) -> usize {
        self.cells.get(dim).map_or(0, Vec::len)
    }

    /// Cell counts per dimension.
    pub fn counts(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    pub fn total_cells(&self) -> usize {
        self.cells.iter().map(Vec::len).sum()
    }

    pub fn cells(&self, dim: usize) -> &[String] {
        self.cells.get(dim).map_or(&[], Vec::as_slice)
    }

    pub fn cell_name(&self, c: CellRef) -> &str {
        &self.cells[c.dim][c.idx]
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.cells[0][v]
    }

    pub fn lookup(&self, name: &str) -> Option<CellRef> {
        self.index.get(name).copied()
    }

    pub fn vertex(&self, name: &str) -> Result<usize, PrecubicalError> {
        match self.lookup(name) {
            Some(CellRef { dim: 0, idx }) => Ok(idx),
            _ => Err(PrecubicalError::UnknownCell(name.to_string())),
        }
    }

    pub fn faces(&self, c: CellRef) -> &Faces {
        &self.faces[c.dim][c.idx]
    }

    /// `d_i^sign` with `i` 1-based, as in the usual notation.
    pub fn face(&self, c: CellRef, i: usize, sign: bool) -> CellRef {
        CellRef::new(c.dim - 1, self.faces(c).get(i - 1, sign))
    }

    /// Iterated face over the coordinates `coords` (1-based), applied in decreasing order
    /// so earlier coordinates keep their positions.
    pub fn iterated_face(&self, c: CellRef, coords: &[usize], sign: bool) -> CellRef {
        let mut sorted = coords.to_vec();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        sorted.iter().fold(c, |acc, &i| self.face(acc, i, sign))
    }

    /// Initial vertex: every coordinate set to 0.
    pub fn initial_vertex(&self, c: CellRef) -> usize {
        let mut cur = c;
        while cur.dim > 0 {
            cur = self.face(cur, cur.dim, false);
        }
        cur.idx
    }

    /// Final vertex: every coordinate set to 1.
    pub fn final_vertex(&self, c: CellRef) -> usize {
        let mut cur = c;
        while cur.dim > 0 {
            cur = self.face(cur, cur.dim, true);
        }
        cur.idx
    }

    pub fn all_cells(&self) -> impl Iterator<Item = CellRef> + '_ {
        self.cells
            .iter()
            .enumerate()
            .flat_map(|(d, v)| (0..v.len()).map(move |i| CellRef::new(d, i)))
    }

    /// Edges as `(source vertex, target vertex)`, indexed like the 1-cells.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        (0..self.count(1))
            .map(|e| {
                let f = &self.faces[1][e];
                (f.lower[0], f.upper[0])
            })
            .collect()
    }

    /// Vertices in topological order of the vertex-edge digraph, or a directed cycle.
    pub fn topological_order(&self) -> Result<Vec<usize>, Vec<usize>> {
        let n = self.count(0);
        let arcs = self.arcs();
        let mut indeg = vec![0usize; n];
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(s, t) in &arcs {
            indeg[t] += 1;
            out[s].push(t);
        }
        let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).rev().collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop() {
            order.push(v);
            for &t in out[v].iter().rev() {
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    ready.push(t);
                }
            }
        }
        if order.len() == n {
            return Ok(order);
        }
        // every leftover vertex has a leftover predecessor; walk backwards until a repeat
        let left: BTreeSet<usize> = (0..n).filter(|&v| indeg[v] > 0).collect();
        let mut pred = vec![usize::MAX; n];
        for &(s, t) in &arcs {
            if left.contains(&s) && left.contains(&t) {
                pred[t] = s;
            }
        }
        let mut seen = vec![false; n];
        let mut cur = *left.iter().next().expect("leftover vertices exist");
        let mut walk = Vec::new();
        while !seen[cur] {
            seen[cur] = true;
            walk.push(cur);
            cur = pred[cur];
        }
        let start = walk.iter().position(|&v| v == cur).expect("walk revisits");
        let mut cycle: Vec<usize> = walk[start..].to_vec();
        cycle.reverse();
        Err(cycle)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_ok()
    }

    /// Errors with the cycle when the vertex-edge digraph is not acyclic.
    pub fn require_acyclic(&self) -> Result<(), PrecubicalError> {
        self.topological_order().map(|_| ()).map_err(|cyc| {
            PrecubicalError::Cyclic(cyc.iter().map(|&v| self.vertex_name(v).to_string()).collect())
        })
    }

    pub fn from_json(text: &str) -> Result<Self, PrecubicalError> {
        json::from_json(text)
    }

    pub fn to_json(&self) -> String {
        json::to_json(self)
    }
}

impl fmt::Display for PrecubicalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let counts: Vec<String> = self.counts().iter().map(usize::to_string).collect();
        write!(f, "{} [{}]", self.name, counts.join("/"))
    }
}

/// A single failed check reported by [`validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `d_i^eps d_j^eta (cell) != d_{j-1}^eta d_i^eps (cell)` for `i < j`.
    Identity {
        cell: String,
        i: usize,
        j: usize,
        eps: bool,
        eta: bool,
        left: String,
        right: String,
    },
    /// A directed cycle in the vertex-edge digraph, listed in traversal order.
    Cycle(Vec<String>),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Identity { cell, i, j, eps, eta, left, right } => write!(
                f,
                "cell {cell}: d_{i}^{} d_{j}^{} = {left} but d_{}^{} d_{i}^{} = {right}",
                *eps as u8,
                *eta as u8,
                j - 1,
                *eta as u8,
                *eps as u8
            ),
            Violation::Cycle(vs) => write!(f, "directed cycle {}", vs.join(" -> ")),
        }
    }
}

/// Checks the precubical identities on every cell and acyclicity of the 1-skeleton.
/// An empty result means the set is a valid object of the working category.
pub fn validate(x: &PrecubicalSet) -> Vec<Violation> {
    let mut out = Vec::new();
    for d in 2..x.cells.len() {
        for idx in 0..x.count(d) {
            let c = CellRef::new(d, idx);
            for j in 2..=d {
                for i in 1..j {
                    for eps in [false, true] {
                        for eta in [false, true] {
                            let left = x.face(x.face(c, j, eta), i, eps);
                            let right = x.face(x.face(c, i, eps), j - 1, eta);
                            if left != right {
                                out.push(Violation::Identity {
                                    cell: x.cell_name(c).to_string(),
                                    i,
                                    j,
                                    eps,
                                    eta,
                                    left: x.cell_name(left).to_string(),
                                    right: x.cell_name(right).to_string(),
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    if let Err(cycle) = x.topological_order() {
        out.push(Violation::Cycle(cycle.iter().map(|&v| x.vertex_name(v).to_string()).collect()));
    }
    out
}

/// A face-closed selection of cells of a parent set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetSpec {
    selected: BTreeSet<CellRef>,
}

impl SubsetSpec {
    /// Selection by cell names; unknown names are errors, face-closure is checked.
    pub fn new(parent: &PrecubicalSet, names: &[&str]) -> Result<Self, PrecubicalError> {
        let refs = Self::resolve(parent, names)?;
        let spec = SubsetSpec { selected: refs };
        spec.check_closed(parent)?;
        Ok(spec)
    }

    /// Selection by names, completed to its face closure. The flag reports whether
    /// any cell had to be added.
    pub fn closure_of(parent: &PrecubicalSet, names: &[&str]) -> Result<(Self, bool), PrecubicalError> {
        let start = Self::resolve(parent, names)?;
        let mut selected = start.clone();
        let mut stack: Vec<CellRef> = start.iter().copied().collect();
        while let Some(c) = stack.pop() {
            if c.dim == 0 {
                continue;
            }
            let f = parent.faces(c);
            for &g in f.lower.iter().chain(&f.upper) {
                let r = CellRef::new(c.dim - 1, g);
                if selected.insert(r) {
                    stack.push(r);
                }
            }
        }
        let grew = selected.len() != start.len();
        Ok((SubsetSpec { selected }, grew))
    }

    pub fn from_refs(parent: &PrecubicalSet, refs: BTreeSet<CellRef>) -> Result<Self, PrecubicalError> {
        let spec = SubsetSpec { selected: refs };
        spec.check_closed(parent)?;
        Ok(spec)
    }

    /// Every cell of `parent`.
    pub fn all(parent: &PrecubicalSet) -> Self {
        SubsetSpec { selected: parent.all_cells().collect() }
    }

    fn resolve(parent: &PrecubicalSet, names: &[&str]) -> Result<BTreeSet<CellRef>, PrecubicalError> {
        names
            .iter()
            .map(|n| parent.lookup(n).ok_or_else(|| PrecubicalError::UnknownCell(n.to_string())))
            .collect()
    }

    fn check_closed(&self, parent: &PrecubicalSet) -> Result<(), PrecubicalError> {
        for &c in &self.selected {
            if c.dim == 0 {
                continue;
            }
            let f = parent.faces(c);
            for &g in f.lower.iter().chain(&f.upper) {
                let r = CellRef::new(c.dim - 1, g);
                if !self.selected.contains(&r) {
                    return Err(PrecubicalError::NotFaceClosed {
                        cell: parent.cell_name(c).to_string(),
                        face: parent.cell_name(r).to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn contains(&self, c: CellRef) -> bool {
        self.selected.contains(&c)
    }

    pub fn cells(&self) -> &BTreeSet<CellRef> {
        &self.selected
    }

    pub fn len(&self) -> usize {
        self.selected.len()
    }

    pub fn is_empty(&self) -> bool {
        self.selected.is_empty()
    }

    pub fn union(&self, other: &SubsetSpec) -> SubsetSpec {
        SubsetSpec { selected: self.selected.union(&other.selected).copied().collect() }
    }

    pub fn intersection(&self, other: &SubsetSpec) -> SubsetSpec {
        SubsetSpec { selected: self.selected.intersection(&other.selected).copied().collect() }
    }

    pub fn is_subset(&self, other: &SubsetSpec) -> bool {
        self.selected.is_subset(&other.selected)
    }

    pub fn names<'a>(&self, parent: &'a PrecubicalSet) -> Vec<&'a str> {
        self.selected.iter().map(|&c| parent.cell_name(c)).collect()
    }
}

/// The sub-precubical set selected by `spec`, with its inclusion into `parent`.
/// Cells keep their names and relative order.
pub fn sub(
    parent: &PrecubicalSet,
    spec: &SubsetSpec,
    name: &str,
) -> Result<(PrecubicalSet, PcMorphism), PrecubicalError> {
    spec.check_closed(parent)?;
    let dims = parent.cells.len();
    let mut by_dim = vec![Vec::new(); dims];
    let mut maps = vec![Vec::new(); dims];
    for &c in &spec.selected {
        let f = parent.faces(c);
        let lower = f.lower.iter().map(|&g| parent.cells[c.dim - 1][g].clone()).collect();
        let upper = f.upper.iter().map(|&g| parent.cells[c.dim - 1][g].clone()).collect();
        by_dim[c.dim].push((parent.cell_name(c).to_string(), lower, upper));
        maps[c.dim].push(c.idx);
    }
    let keep = by_dim.iter().take_while(|v| !v.is_empty()).count();
    by_dim.truncate(keep);
    maps.truncate(keep);
    let y = PrecubicalSet::from_named(name.to_string(), by_dim)?;
    let inc = PcMorphism::new(y.clone(), parent.clone(), maps)?;
    Ok((y, inc))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn segment_validates() {
        let k = directed_segment();
        assert!(validate(&k).is_empty());
        assert_eq!(k.counts(), vec![2, 1]);
    }

    #[test]
    fn self_loop_is_a_cycle() {
        let k = PrecubicalSet::builder("loop").vertices(&["0", "1"]).edge("a", "0", "0").build().unwrap();
        let v = validate(&k);
        assert_eq!(v, vec![Violation::Cycle(vec!["0".to_string()])]);
        assert!(k.require_acyclic().is_err());
    }

    #[test]
    fn longer_cycle_is_reported_in_order() {
        let x = PrecubicalSet::builder("tri")
            .vertices(&["u", "v", "w"])
            .edge("a", "u", "v")
            .edge("b", "v", "w")
            .edge("c", "w", "u")
            .build()
            .unwrap();
        match validate(&x).as_slice() {
            [Violation::Cycle(c)] => {
                assert_eq!(c.len(), 3);
                let pos = c.iter().position(|s| s == "u").unwrap();
                assert_eq!(c[(pos + 1) % 3], "v");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn broken_square_violates_identity() {
        // faces of the square chosen so that d_1^0 d_2^1 != d_1^1 d_1^0
        let x = PrecubicalSet::builder("bad")
            .vertices(&["00", "10", "01", "11"])
            .edge("l", "00", "01")
            .edge("r", "10", "11")
            .edge("b", "00", "10")
            .edge("t", "01", "11")
            .cell("s", &["l", "b"], &["r", "b"])
            .build()
            .unwrap();
        let v = validate(&x);
        assert!(v.iter().any(|e| matches!(e, Violation::Identity { cell, .. } if cell == "s")));
        assert!(!v.iter().any(|e| matches!(e, Violation::Cycle(_))));
    }

    #[test]
    fn construction_errors() {
        let dup = PrecubicalSet::builder("d").vertex("0").vertex("0").build();
        assert_eq!(dup.unwrap_err(), PrecubicalError::DuplicateCell("0".into()));
        let unknown = PrecubicalSet::builder("u").vertex("0").edge("a", "0", "9").build();
        assert_eq!(unknown.unwrap_err(), PrecubicalError::UnknownCell("9".into()));
        let wrong = PrecubicalSet::builder("w")
            .vertices(&["0", "1"])
            .edge("a", "0", "1")
            .cell("s", &["a", "0"], &["a", "a"])
            .build();
        assert!(matches!(wrong, Err(PrecubicalError::FaceDimension { .. })));
        let gap = PrecubicalSet::from_named(
            "g".into(),
            vec![vec![("0".into(), vec![], vec![])], vec![]],
        );
        assert!(gap.is_ok());
        let gap = PrecubicalSet::from_named(
            "g".into(),
            vec![
                vec![("0".into(), vec![], vec![])],
                vec![],
                vec![("s".into(), vec!["x".into(), "y".into()], vec!["x".into(), "y".into()])],
            ],
        );
        assert_eq!(gap.unwrap_err(), PrecubicalError::NonConsecutiveDims(1));
    }

    #[test]
    fn subsets() {
        let d2 = directed_disc(2).unwrap();
        let all_but_square: Vec<&str> = d2.cells(0).iter().chain(d2.cells(1)).map(String::as_str).collect();
        let spec = SubsetSpec::new(&d2, &all_but_square).unwrap();
        let (s1, inc) = sub(&d2, &spec, "S1").unwrap();
        assert_eq!(s1.counts(), vec![4, 4]);
        assert!(inc.is_inclusion());

        let v = SubsetSpec::new(&d2, &["00"]).unwrap();
        let (pt, _) = sub(&d2, &v, "pt").unwrap();
        assert_eq!(pt.counts(), vec![1]);

        assert!(matches!(SubsetSpec::new(&d2, &["aa"]), Err(PrecubicalError::NotFaceClosed { .. })));
        let (closed, grew) = SubsetSpec::closure_of(&d2, &["aa"]).unwrap();
        assert!(grew);
        assert_eq!(closed.len(), 9);
    }
}
