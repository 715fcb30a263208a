use std::sync::Arc;

use super::{CellRef, PrecubicalError, PrecubicalSet};

/// A morphism of precubical sets that is injective on vertices.
#[derive(Clone, Debug)]
pub struct PcMorphism {
    source: Arc<PrecubicalSet>,
    target: Arc<PrecubicalSet>,
    maps: Vec<Vec<usize>>,
}

impl PcMorphism {
    /// Checks the cell maps commute with every face map and are injective on vertices.
    pub fn new(
        source: PrecubicalSet,
        target: PrecubicalSet,
        maps: Vec<Vec<usize>>,
    ) -> Result<Self, PrecubicalError> {
        Self::from_shared(Arc::new(source), Arc::new(target), maps)
    }

    pub fn from_shared(
        source: Arc<PrecubicalSet>,
        target: Arc<PrecubicalSet>,
        maps: Vec<Vec<usize>>,
    ) -> Result<Self, PrecubicalError> {
        let dims = source.dim().map_or(0, |d| d + 1);
        if maps.len() != dims {
            return Err(PrecubicalError::MorphismShape);
        }
        for (d, m) in maps.iter().enumerate() {
            if m.len() != source.count(d) || m.iter().any(|&t| t >= target.count(d)) {
                return Err(PrecubicalError::MorphismShape);
            }
        }
        for c in source.all_cells().filter(|c| c.dim > 0) {
            let img = CellRef::new(c.dim, maps[c.dim][c.idx]);
            for i in 1..=c.dim {
                for sign in [false, true] {
                    let lhs = maps[c.dim - 1][source.face(c, i, sign).idx];
                    if lhs != target.face(img, i, sign).idx {
                        return Err(PrecubicalError::NotCubical(source.cell_name(c).to_string()));
                    }
                }
            }
        }
        if let Some(m0) = maps.first() {
            let mut seen = vec![usize::MAX; target.count(0)];
            for (v, &t) in m0.iter().enumerate() {
                if seen[t] != usize::MAX {
                    return Err(PrecubicalError::NotInjectiveOnVertices(
                        source.vertex_name(seen[t]).to_string(),
                        source.vertex_name(v).to_string(),
                    ));
                }
                seen[t] = v;
            }
        }
        Ok(PcMorphism { source, target, maps })
    }

    pub fn identity(x: &PrecubicalSet) -> Self {
        let shared = Arc::new(x.clone());
        let maps = (0..x.dim().map_or(0, |d| d + 1)).map(|d| (0..x.count(d)).collect()).collect();
        PcMorphism { source: shared.clone(), target: shared, maps }
    }

    pub fn source(&self) -> &PrecubicalSet {
        &self.source
    }

    pub fn target(&self) -> &PrecubicalSet {
        &self.target
    }

    pub fn apply(&self, c: CellRef) -> CellRef {
        CellRef::new(c.dim, self.maps[c.dim][c.idx])
    }

    pub fn apply_vertex(&self, v: usize) -> usize {
        self.maps[0][v]
    }

    pub fn maps(&self) -> &[Vec<usize>] {
        &self.maps
    }

    /// Injective on all cells and name-preserving, as produced by [`super::sub`].
    pub fn is_inclusion(&self) -> bool {
        self.source
            .all_cells()
            .all(|c| self.source.cell_name(c) == self.target.cell_name(self.apply(c)))
    }
}

impl PartialEq for PcMorphism {
    fn eq(&self, other: &Self) -> bool {
        *self.source == *other.source && *self.target == *other.target && self.maps == other.maps
    }
}

/// `f . g`: first `g`, then `f`.
pub fn compose(f: &PcMorphism, g: &PcMorphism) -> Result<PcMorphism, PrecubicalError> {
    if !(Arc::ptr_eq(&g.target, &f.source) || *g.target == *f.source) {
        return Err(PrecubicalError::EndpointMismatch);
    }
    let maps = g
        .maps
        .iter()
        .enumerate()
        .map(|(d, m)| m.iter().map(|&c| f.maps[d][c]).collect())
        .collect();
    PcMorphism::from_shared(g.source.clone(), f.target.clone(), maps)
}

/// Every morphism `source -> target`, by exhaustive search. Cells are assigned from
/// the top dimension down, each choice fixing all of its iterated faces.
pub fn all_morphisms(source: &PrecubicalSet, target: &PrecubicalSet) -> Vec<PcMorphism> {
    let dims = source.dim().map_or(0, |d| d + 1);
    let mut order: Vec<CellRef> = source.all_cells().collect();
    order.sort_by(|a, b| b.dim.cmp(&a.dim).then(a.idx.cmp(&b.idx)));
    let empty: Vec<Vec<Option<usize>>> = (0..dims).map(|d| vec![None; source.count(d)]).collect();
    let (source, target) = (Arc::new(source.clone()), Arc::new(target.clone()));
    let mut out = Vec::new();
    search(&source, &target, &order, 0, empty, &mut out);
    out
}

// assigns `c -> t` and all faces; false on a clash
fn assign(x: &PrecubicalSet, y: &PrecubicalSet, maps: &mut [Vec<Option<usize>>], c: CellRef, t: CellRef) -> bool {
    let mut stack = vec![(c, t)];
    while let Some((c, t)) = stack.pop() {
        match maps[c.dim][c.idx] {
            Some(prev) if prev != t.idx => return false,
            Some(_) => continue,
            None => maps[c.dim][c.idx] = Some(t.idx),
        }
        for i in 1..=c.dim {
            for sign in [false, true] {
                stack.push((x.face(c, i, sign), y.face(t, i, sign)));
            }
        }
    }
    true
}

fn search(
    x: &Arc<PrecubicalSet>,
    y: &Arc<PrecubicalSet>,
    order: &[CellRef],
    k: usize,
    maps: Vec<Vec<Option<usize>>>,
    out: &mut Vec<PcMorphism>,
) {
    let Some(&c) = order.get(k) else {
        let maps = maps.into_iter().map(|v| v.into_iter().map(|t| t.expect("assigned")).collect()).collect();
        if let Ok(f) = PcMorphism::from_shared(x.clone(), y.clone(), maps) {
            out.push(f);
        }
        return;
    };
    if maps[c.dim][c.idx].is_some() {
        return search(x, y, order, k + 1, maps, out);
    }
    if c.dim == 0 {
        let used: Vec<usize> = maps[0].iter().flatten().copied().collect();
        for t in (0..y.count(0)).filter(|t| !used.contains(t)) {
            let mut next = maps.clone();
            next[0][c.idx] = Some(t);
            search(x, y, order, k + 1, next, out);
        }
        return;
    }
    for t in 0..y.count(c.dim) {
        let mut next = maps.clone();
        if assign(x, y, &mut next, c, CellRef::new(c.dim, t)) {
            search(x, y, order, k + 1, next, out);
        }
    }
}
