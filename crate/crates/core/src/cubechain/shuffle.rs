use super::CubeChain;
use crate::error::Error;
use crate::precubical::{CellRef, TensorProduct};


/// Splits a chain of `X ⊗ Y` into the chains of its `X` and `Y` components of
/// positive dimension.
pub fn project_shuffle(tp: &TensorProduct, c: &CubeChain) -> Result<(CubeChain, CubeChain), Error> {
    if c.src >= tp.set.count(0) || c.dst >= tp.set.count(0) {
        return Err(Error::NotATensorChain(format!("vertex out of range in {c:?}")));
    }
    let (sx, sy) = tp.vertex_pair(c.src);
    let (ex, ey) = tp.vertex_pair(c.dst);
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for &cube in &c.cubes {
        if cube.dim >= tp.set.counts().len() || cube.idx >= tp.set.count(cube.dim) {
            return Err(Error::NotATensorChain(format!("unknown cube {cube:?}")));
        }
        let (u, v) = tp.factor(cube);
        if u.dim >= 1 {
            xs.push(u);
        }
        if v.dim >= 1 {
            ys.push(v);
        }
    }
    Ok((
        CubeChain { cubes: xs, src: sx, dst: ex },
        CubeChain { cubes: ys, src: sy, dst: ey },
    ))
}

/// All chains of `X ⊗ Y` of dimension `target_dim` that project onto `(cx, cy)`.
pub fn enumerate_shuffles(tp: &TensorProduct, cx: &CubeChain, cy: &CubeChain, target_dim: usize) -> Vec<CubeChain> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    let start = tp.vertex(cx.src, cy.src);
    let end = tp.vertex(cx.dst, cy.dst);
    let mut sink = |cubes| out.push(CubeChain { cubes, src: start, dst: end });
    let walk = Interleave { tp, cx, cy, target: target_dim };
    walk.step(0, 0, start, 0, &mut cur, &mut sink);
    out.sort();
    out
}

struct Interleave<'a> {
    tp: &'a TensorProduct,
    cx: &'a CubeChain,
    cy: &'a CubeChain,
    target: usize,
}

impl Interleave<'_> {
    /// `at` is the current product vertex; `i`, `j` count the factor cubes used so far.
    fn step(&self, i: usize, j: usize, at: usize, dim: usize, cur: &mut Vec<CellRef>, sink: &mut dyn FnMut(Vec<CellRef>)) {
        if dim > self.target {
            return;
        }
        let (nx, ny) = (self.cx.cubes.len(), self.cy.cubes.len());
        if i == nx && j == ny {
            if dim == self.target {
                sink(cur.clone());
            }
            return;
        }
        let (vx, vy) = self.tp.vertex_pair(at);
        let mut take = |u: CellRef, v: CellRef, di: usize, dj: usize, cur: &mut Vec<CellRef>| {
            let c = self.tp.cell(u, v).expect("product cell exists");
            cur.push(c);
            self.step(i + di, j + dj, self.tp.set.final_vertex(c), dim + c.dim - 1, cur, sink);
            cur.pop();
        };
        if i < nx {
            take(self.cx.cubes[i], CellRef::vertex(vy), 1, 0, cur);
        }
        if j < ny {
            take(CellRef::vertex(vx), self.cy.cubes[j], 0, 1, cur);
        }
        if i < nx && j < ny {
            take(self.cx.cubes[i], self.cy.cubes[j], 1, 1, cur);
        }
    }
}
