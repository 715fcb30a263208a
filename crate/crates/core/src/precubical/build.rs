use std::collections::HashMap;

use super::{sub, CellRef, PcMorphism, PrecubicalError, PrecubicalSet, SubsetSpec};

type NamedCells = Vec<Vec<(String, Vec<String>, Vec<String>)>>;

/// The standard `n`-cube `C^n`.
///
/// Cells are words over `{0, 1, a}` of length `n`; the dimension is the number of
/// `a`s and `d_i^eps` replaces the `i`-th `a` by `eps`. The 0-cube is the point `*`.
pub fn standard_cube(n: usize) -> PrecubicalSet {
    if n == 0 {
        return point();
    }
    let mut by_dim: NamedCells = vec![Vec::new(); n + 1];
    for word in words(n) {
        let free: Vec<usize> = word.iter().enumerate().filter(|(_, &c)| c == b'a').map(|(i, _)| i).collect();
        let face = |k: usize, eps: u8| {
            let mut w = word.clone();
            w[free[k]] = eps;
            String::from_utf8(w).expect("ascii")
        };
        let lower = (0..free.len()).map(|k| face(k, b'0')).collect();
        let upper = (0..free.len()).map(|k| face(k, b'1')).collect();
        by_dim[free.len()].push((String::from_utf8(word).expect("ascii"), lower, upper));
    }
    PrecubicalSet::from_named(format!("C^{n}"), by_dim).expect("standard cube is well formed")
}

// all words of length n over 0 < 1 < a, in lexicographic order
fn words(n: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                [b'0', b'1', b'a'].into_iter().map(move |c| {
                    let mut v = w.clone();
                    v.push(c);
                    v
                })
            })
            .collect();
    }
    out
}

/// The one-vertex set `*`.
pub fn point() -> PrecubicalSet {
    PrecubicalSet::from_named("point".into(), vec![vec![("*".into(), vec![], vec![])]])
        .expect("point is well formed")
}

/// The directed segment `K`: vertices `0`, `1` and the edge `a : 0 -> 1`.
pub fn directed_segment() -> PrecubicalSet {
    standard_cube(1).with_name("K")
}

/// The tensor product together with the cell pairing it was built from.
///
/// `(X (x) Y)_n` is the disjoint union over `p + q = n` of `X_p x Y_q`, listed by
/// increasing `p`, then `X` index, then `Y` index. A cell `(x, y)` of dimensions
/// `(p, q)` has `d_i(x, y) = (d_i x, y)` for `i <= p` and `(x, d_{i-p} y)` otherwise.
#[derive(Clone, Debug)]
pub struct TensorProduct {
    pub set: PrecubicalSet,
    factors: Vec<Vec<(CellRef, CellRef)>>,
    lookup: HashMap<(CellRef, CellRef), CellRef>,
}

impl TensorProduct {
    pub fn new(x: &PrecubicalSet, y: &PrecubicalSet) -> Self {
        let (xd, yd) = match (x.dim(), y.dim()) {
            (Some(a), Some(b)) => (a, b),
            _ => {
                let empty = PrecubicalSet::from_named(format!("{}x{}", x.name(), y.name()), vec![])
                    .expect("empty set");
                return TensorProduct { set: empty, factors: vec![], lookup: HashMap::new() };
            }
        };
        let mut pairs: Vec<Vec<(CellRef, CellRef)>> = vec![Vec::new(); xd + yd + 1];
        for (n, slot) in pairs.iter_mut().enumerate() {
            for p in 0..=n.min(xd) {
                let q = n - p;
                if q > yd {
                    continue;
                }
                for i in 0..x.count(p) {
                    for j in 0..y.count(q) {
                        slot.push((CellRef::new(p, i), CellRef::new(q, j)));
                    }
                }
            }
        }
        let name_of = |a: CellRef, b: CellRef| format!("({},{})", x.cell_name(a), y.cell_name(b));
        let by_dim: NamedCells = pairs
            .iter()
            .map(|slot| {
                slot.iter()
                    .map(|&(a, b)| {
                        let p = a.dim;
                        let mut lower = Vec::new();
                        let mut upper = Vec::new();
                        for i in 1..=p {
                            lower.push(name_of(x.face(a, i, false), b));
                            upper.push(name_of(x.face(a, i, true), b));
                        }
                        for i in 1..=b.dim {
                            lower.push(name_of(a, y.face(b, i, false)));
                            upper.push(name_of(a, y.face(b, i, true)));
                        }
                        (name_of(a, b), lower, upper)
                    })
                    .collect()
            })
            .collect();
        let set = PrecubicalSet::from_named(format!("{}x{}", x.name(), y.name()), by_dim)
            .expect("tensor of well-formed sets is well formed");
        let mut lookup = HashMap::new();
        for (n, slot) in pairs.iter().enumerate() {
            for (idx, &pr) in slot.iter().enumerate() {
                lookup.insert(pr, CellRef::new(n, idx));
            }
        }
        TensorProduct { set, factors: pairs, lookup }
    }

    /// The `(X cell, Y cell)` pair of a product cell.
    pub fn factor(&self, c: CellRef) -> (CellRef, CellRef) {
        self.factors[c.dim][c.idx]
    }

    pub fn cell(&self, a: CellRef, b: CellRef) -> Option<CellRef> {
        self.lookup.get(&(a, b)).copied()
    }

    pub fn vertex_pair(&self, v: usize) -> (usize, usize) {
        let (a, b) = self.factor(CellRef::vertex(v));
        (a.idx, b.idx)
    }

    pub fn vertex(&self, x: usize, y: usize) -> usize {
        self.cell(CellRef::vertex(x), CellRef::vertex(y)).expect("vertex pair exists").idx
    }
}

/// `X (x) Y`, with cells named `(x,y)`.
pub fn tensor(x: &PrecubicalSet, y: &PrecubicalSet) -> PrecubicalSet {
    TensorProduct::new(x, y).set
}

/// The directed disc `D^n = K^(x)n`. Tensor cell names are flattened into words
/// over `{0, 1, a}`, e.g. `(a,0)` becomes `a0`, and sorted, which makes `D^n`
/// literally equal to the standard cube.
pub fn directed_disc(n: usize) -> Result<PrecubicalSet, PrecubicalError> {
    if n < 1 {
        return Err(PrecubicalError::BadDimension);
    }
    let k = directed_segment();
    let mut d = k.clone();
    for _ in 1..n {
        d = flatten_names(&tensor(&d, &k));
    }
    Ok(d.with_name(&format!("D^{n}")))
}

fn flatten_names(x: &PrecubicalSet) -> PrecubicalSet {
    let flat = |s: &str| s.chars().filter(|c| !matches!(c, '(' | ')' | ',')).collect::<String>();
    let by_dim = (0..x.dim().map_or(0, |d| d + 1))
        .map(|d| {
            (0..x.count(d))
                .map(|i| {
                    let c = CellRef::new(d, i);
                    let f = x.faces(c);
                    let names = |v: &Vec<usize>| {
                        v.iter().map(|&g| flat(x.cell_name(CellRef::new(d - 1, g)))).collect()
                    };
                    (flat(x.cell_name(c)), names(&f.lower), names(&f.upper))
                })
                .collect::<Vec<(String, Vec<String>, Vec<String>)>>()
        })
        .map(|mut v| {
            v.sort_by(|a, b| a.0.cmp(&b.0));
            v
        })
        .collect();
    PrecubicalSet::from_named(x.name().to_string(), by_dim).expect("renaming preserves structure")
}

/// The hollow cube `S^(n-1)`: `D^n` without its top cell.
pub fn directed_sphere(n_minus_1: usize) -> Result<PrecubicalSet, PrecubicalError> {
    let n = n_minus_1 + 1;
    let d = directed_disc(n)?;
    let keep = d.all_cells().filter(|c| c.dim < n).collect();
    let spec = SubsetSpec::from_refs(&d, keep)?;
    let (s, _) = sub(&d, &spec, &format!("S^{n_minus_1}"))?;
    Ok(s)
}

/// A wedge of standard cubes with its distinguished endpoints.
#[derive(Clone, Debug)]
pub struct Realization {
    pub set: PrecubicalSet,
    pub sequence: Vec<usize>,
    /// Initial vertex of the first cube.
    pub start: usize,
    /// Final vertex of the last cube.
    pub end: usize,
    /// The top cell of each block, in order.
    pub blocks: Vec<CellRef>,
}

impl Realization {
    /// `sum n_k - l`.
    pub fn dimension(&self) -> usize {
        self.sequence.iter().map(|n| n - 1).sum()
    }

    /// Inclusion of the realization into `X` sending block `k`'s top cell to `cubes[k]`,
    /// when that assignment extends to a morphism.
    pub fn map_into(
        &self,
        target: &PrecubicalSet,
        cubes: &[CellRef],
    ) -> Result<PcMorphism, PrecubicalError> {
        if cubes.len() != self.blocks.len() {
            return Err(PrecubicalError::MorphismShape);
        }
        let dims = self.set.dim().map_or(0, |d| d + 1);
        let mut maps: Vec<Vec<Option<usize>>> = (0..dims).map(|d| vec![None; self.set.count(d)]).collect();
        let mut stack: Vec<(CellRef, CellRef)> = self.blocks.iter().copied().zip(cubes.iter().copied()).collect();
        if self.blocks.is_empty() {
            return Err(PrecubicalError::MorphismShape);
        }
        while let Some((src, dst)) = stack.pop() {
            if src.dim != dst.dim {
                return Err(PrecubicalError::NotCubical(self.set.cell_name(src).to_string()));
            }
            match maps[src.dim][src.idx] {
                Some(prev) if prev != dst.idx => {
                    return Err(PrecubicalError::NotCubical(self.set.cell_name(src).to_string()))
                }
                Some(_) => continue,
                None => maps[src.dim][src.idx] = Some(dst.idx),
            }
            for i in 1..=src.dim {
                for sign in [false, true] {
                    stack.push((self.set.face(src, i, sign), target.face(dst, i, sign)));
                }
            }
        }
        let maps = maps
            .into_iter()
            .map(|v| v.into_iter().collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()
            .ok_or(PrecubicalError::MorphismShape)?;
        PcMorphism::new(self.set.clone(), target.clone(), maps)
    }
}

/// Realization of a sequence `(n_1, ..., n_l)`: cubes `C^{n_k}` glued final vertex
/// to initial vertex. Cells are named `k.word` with `k` the 1-based block; a glued
/// vertex takes the name from the later block (`k+1.00..0`). The empty sequence
/// gives the point.
pub fn realization(seq: &[usize]) -> Result<Realization, PrecubicalError> {
    if let Some(&bad) = seq.iter().find(|&&n| n < 1) {
        return Err(PrecubicalError::BadSequenceEntry(bad));
    }
    let label = seq.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
    if seq.is_empty() {
        let set = point().with_name("|()|");
        return Ok(Realization { set, sequence: vec![], start: 0, end: 0, blocks: vec![] });
    }
    let l = seq.len();
    let top = *seq.iter().max().expect("nonempty");
    let mut by_dim: NamedCells = vec![Vec::new(); top + 1];
    let rename = |k: usize, w: &str| -> String {
        // the final vertex of block k is the initial vertex of block k+1
        if k < l && !w.is_empty() && w.bytes().all(|b| b == b'1') {
            format!("{}.{}", k + 1, "0".repeat(seq[k]))
        } else {
            format!("{k}.{w}")
        }
    };
    for (k0, &n) in seq.iter().enumerate() {
        let k = k0 + 1;
        let cube = standard_cube(n);
        for c in cube.all_cells() {
            let w = cube.cell_name(c);
            if c.dim == 0 && k < l && w.bytes().all(|b| b == b'1') {
                continue;
            }
            let f = cube.faces(c);
            let names = |v: &Vec<usize>| -> Vec<String> {
                v.iter().map(|&g| rename(k, cube.cell_name(CellRef::new(c.dim - 1, g)))).collect()
            };
            let (lower, upper) = if c.dim == 0 { (vec![], vec![]) } else { (names(&f.lower), names(&f.upper)) };
            by_dim[c.dim].push((rename(k, w), lower, upper));
        }
    }
    let set = PrecubicalSet::from_named(format!("|{label}|"), by_dim)?;
    let start = set.vertex(&format!("1.{}", "0".repeat(seq[0])))?;
    let end = set.vertex(&format!("{l}.{}", "1".repeat(seq[l - 1])))?;
    let blocks = seq
        .iter()
        .enumerate()
        .map(|(k0, &n)| set.lookup(&format!("{}.{}", k0 + 1, "a".repeat(n))).expect("block cell"))
        .collect();
    Ok(Realization { set, sequence: seq.to_vec(), start, end, blocks })
}

/// Two squares side by side sharing the edge `1a`: the left square `aa` spans
/// `00 -> 11` and the right square `ba` spans `10 -> 21`.
pub fn domino() -> PrecubicalSet {
    PrecubicalSet::builder("domino")
        .vertices(&["00", "01", "10", "11", "20", "21"])
        .edge("0a", "00", "01")
        .edge("1a", "10", "11")
        .edge("2a", "20", "21")
        .edge("a0", "00", "10")
        .edge("a1", "01", "11")
        .edge("b0", "10", "20")
        .edge("b1", "11", "21")
        .cell("aa", &["0a", "a0"], &["1a", "a1"])
        .cell("ba", &["1a", "b0"], &["2a", "b1"])
        .build()
        .expect("domino is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precubical::validate;

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn domino_is_valid() {
        let d = domino();
        assert!(validate(&d).is_empty());
        assert_eq!(d.counts(), vec![6, 7, 2]);
    }

    #[test]
    fn cube_counts() {
        assert_eq!(standard_cube(0).counts(), vec![1]);
        assert_eq!(standard_cube(2).counts(), vec![4, 4, 1]);
        assert_eq!(standard_cube(3).counts(), vec![8, 12, 6, 1]);
        for n in 0..=4 {
            let c = standard_cube(n);
            for k in 0..=n {
                assert_eq!(c.count(k), binom(n, k) << (n - k));
            }
            assert!(validate(&c).is_empty());
        }
    }

    #[test]
    fn cube_faces_are_hyperplane_projections() {
        let c = standard_cube(3);
        let x = c.lookup("a1a").unwrap();
        assert_eq!(c.cell_name(c.face(x, 1, false)), "01a");
        assert_eq!(c.cell_name(c.face(x, 2, true)), "a11");
        assert_eq!(c.vertex_name(c.initial_vertex(x)), "010");
        assert_eq!(c.vertex_name(c.final_vertex(x)), "111");
    }

    #[test]
    fn tensor_of_segments_is_the_square() {
        let k = directed_segment();
        let kk = tensor(&k, &k);
        assert_eq!(kk.counts(), vec![4, 4, 1]);
        let mut edges: Vec<&str> = kk.cells(1).iter().map(String::as_str).collect();
        edges.sort();
        assert_eq!(edges, vec!["(0,a)", "(1,a)", "(a,0)", "(a,1)"]);
        assert_eq!(kk.cells(2), &["(a,a)".to_string()]);
        assert!(validate(&kk).is_empty());
        let sq = kk.lookup("(a,a)").unwrap();
        assert_eq!(kk.cell_name(kk.face(sq, 1, false)), "(0,a)");
        assert_eq!(kk.cell_name(kk.face(sq, 2, false)), "(a,0)");
    }

    #[test]
    fn tensor_units_and_counts() {
        let k = directed_segment();
        assert_eq!(tensor(&point(), &k).counts(), k.counts());
        let k3 = tensor(&k, &tensor(&k, &k));
        assert_eq!(k3.counts(), standard_cube(3).counts());
    }

    #[test]
    fn discs_and_spheres() {
        let d2 = directed_disc(2).unwrap();
        assert_eq!(d2.counts(), vec![4, 4, 1]);
        let s1 = directed_sphere(1).unwrap();
        assert_eq!(s1.counts(), vec![4, 4]);
        let s2 = directed_sphere(2).unwrap();
        assert_eq!(s2.counts(), vec![8, 12, 6]);
        assert!(validate(&s2).is_empty());
        for n in 1..=4 {
            let d = directed_disc(n).unwrap();
            let c = standard_cube(n);
            assert_eq!(d.counts(), c.counts());
            // literally the standard cube up to the set name
            assert_eq!(d.with_name("x"), c.with_name("x"));
        }
        assert!(directed_disc(0).is_err());
    }

    #[test]
    fn realization_of_122() {
        let r = realization(&[1, 2, 2]).unwrap();
        assert_eq!(r.set.counts(), vec![8, 9, 2]);
        assert_eq!(r.dimension(), 2);
        assert!(validate(&r.set).is_empty());
        assert_eq!(r.set.vertex_name(r.start), "1.0");
        assert_eq!(r.set.vertex_name(r.end), "3.11");
        assert_eq!(r.blocks.len(), 3);
    }

    #[test]
    fn realization_edge_cases() {
        let e = realization(&[]).unwrap();
        assert_eq!(e.set.counts(), vec![1]);
        assert_eq!(e.start, e.end);
        let single = realization(&[3]).unwrap();
        assert_eq!(single.set.counts(), standard_cube(3).counts());
        assert_eq!(realization(&[1, 0]).unwrap_err(), PrecubicalError::BadSequenceEntry(0));
    }
}
