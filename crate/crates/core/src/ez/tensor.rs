use std::collections::HashMap;
use std::sync::Arc;

use crate::cubechain::{CubeChain, CubeComplex};
use crate::error::Error;
use crate::exactla::Matrix;
use crate::graded::{PairComplex, Quiver};
use crate::precubical::TensorProduct;

/// `C(X) ⊗ C(Y)` over the quiver of `X ⊗ Y`. Block `((sx, sy), (ex, ey))` in degree `n`
/// is `⊕_{j+k=n} C_j(X)(sx, ex) ⊗ C_k(Y)(sy, ey)`, ordered by `j`, then the `X` basis,
/// then the `Y` basis.
#[derive(Clone, Debug)]
pub struct TensorComplex {
    pub complex: PairComplex,
    cx: Arc<CubeComplex>,
    cy: Arc<CubeComplex>,
    pairs: Vec<(usize, usize)>,
    vertex_of: HashMap<(usize, usize), usize>,
}

impl TensorComplex {
    fn split(&self, s: usize, e: usize) -> ((usize, usize), (usize, usize)) {
        let ((sx, sy), (ex, ey)) = (self.pairs[s], self.pairs[e]);
        ((sx, ex), (sy, ey))
    }

    fn offset(&self, n: usize, j: usize, x: (usize, usize), y: (usize, usize)) -> usize {
        (0..j).map(|j2| self.cx.complex.dim(j2, x.0, x.1) * self.cy.complex.dim(n - j2, y.0, y.1)).sum()
    }

    /// Position of `a ⊗ b` in its block.
    pub fn position_of(&self, a: &CubeChain, b: &CubeChain) -> Result<usize, Error> {
        let missing = || Error::NotATensorChain("factor is not a basis chain".into());
        let ia = self.cx.position(a).ok_or_else(missing)?;
        let ib = self.cy.position(b).ok_or_else(missing)?;
        let (j, k) = (a.dimension(), b.dimension());
        let x = (a.src, a.dst);
        let y = (b.src, b.dst);
        Ok(self.offset(j + k, j, x, y) + ia * self.cy.complex.dim(k, y.0, y.1) + ib)
    }

    /// The pure tensors spanning degree `n` at `(s, e)`, in basis order.
    pub fn terms(&self, n: usize, s: usize, e: usize) -> Vec<(CubeChain, CubeChain)> {
        let (x, y) = self.split(s, e);
        let mut out = Vec::new();
        for j in 0..=n {
            for a in self.cx.basis(j, x.0, x.1) {
                for b in self.cy.basis(n - j, y.0, y.1) {
                    out.push((a.clone(), b.clone()));
                }
            }
        }
        out
    }

    /// The product vertex of a pair of factor vertices.
    pub fn vertex(&self, x: usize, y: usize) -> Option<usize> {
        self.vertex_of.get(&(x, y)).copied()
    }
}

/// Builds `C(X) ⊗ C(Y)` with the Koszul differential and the edge actions pulled back
/// along `h`: an edge `(u, y)` acts by `u` on the `X` factor, `(x, v)` by `v` on `Y`.
pub fn tensor_complex(
    tp: &TensorProduct,
    cx: Arc<CubeComplex>,
    cy: Arc<CubeComplex>,
    quiver: Arc<Quiver>,
) -> Result<TensorComplex, Error> {
    let field = cx.field();
    let max = cx.max_degree().min(cy.max_degree());
    let top = max + 1;
    let n_vertices = tp.set.count(0);
    let pairs: Vec<(usize, usize)> = (0..n_vertices).map(|v| tp.vertex_pair(v)).collect();
    let vertex_of = pairs.iter().enumerate().map(|(v, &p)| (p, v)).collect();
    let mut out = TensorComplex { complex: PairComplex::new(field, quiver.clone(), max), cx, cy, pairs, vertex_of };
    let (x, y) = (&out.cx.complex, &out.cy.complex);
    let mut blocks = Vec::new();
    for s in 0..n_vertices {
        for e in 0..n_vertices {
            let (bx, by) = out.split(s, e);
            if x.block(bx.0, bx.1).is_none() || y.block(by.0, by.1).is_none() {
                continue;
            }
            let dim = |n: usize| (0..=n).map(|j| x.dim(j, bx.0, bx.1) * y.dim(n - j, by.0, by.1)).sum::<usize>();
            let dims: Vec<usize> = (0..=top).map(dim).collect();
            let mut diffs = Vec::with_capacity(top);
            for n in 1..=top {
                let mut m = Matrix::zeros(field, dims[n - 1], dims[n]);
                for j in 0..=n {
                    let k = n - j;
                    let (a, b) = (x.dim(j, bx.0, bx.1), y.dim(k, by.0, by.1));
                    let col = out.offset(n, j, bx, by);
                    if j >= 1 {
                        let part = x.differential(j, bx.0, bx.1).kron(&Matrix::identity(field, b));
                        m.add_block(out.offset(n - 1, j - 1, bx, by), col, &part)?;
                    }
                    if k >= 1 {
                        let mut part = Matrix::identity(field, a).kron(&y.differential(k, by.0, by.1));
                        if j % 2 == 1 {
                            part = part.scale(&-&field.one());
                        }
                        m.add_block(out.offset(n - 1, j, bx, by), col, &part)?;
                    }
                }
                diffs.push(m);
            }
            blocks.push((s, e, dims, diffs));
        }
    }
    for (s, e, dims, diffs) in blocks {
        out.complex.insert_from_diffs(s, e, dims, diffs);
    }
    out.complex.check_squares_zero()?;
    let mut actions = Vec::new();
    for arc in 0..quiver.arc_count() {
        let (u, v) = quiver.arc(arc);
        let edge = tp.factor(crate::precubical::CellRef::new(1, arc));
        let on_x = edge.0.dim == 1;
        for w in 0..n_vertices {
            for n in 0..=top {
                if out.complex.block(v, w).is_some() {
                    let (bx, by) = out.split(v, w);
                    let m = out.graded(n, u, w, v, w, |j| {
                        if on_x {
                            x.left_action(edge.0.idx, j, bx.1).kron(&Matrix::identity(field, y.dim(n - j, by.0, by.1)))
                        } else {
                            Matrix::identity(field, x.dim(j, bx.0, bx.1)).kron(&y.left_action(edge.1.idx, n - j, by.1))
                        }
                    })?;
                    actions.push((true, arc, n, v, w, m));
                }
                if out.complex.block(w, u).is_some() {
                    let (bx, by) = out.split(w, u);
                    let m = out.graded(n, w, v, w, u, |j| {
                        if on_x {
                            x.right_action(edge.0.idx, j, bx.0).kron(&Matrix::identity(field, y.dim(n - j, by.0, by.1)))
                        } else {
                            Matrix::identity(field, x.dim(j, bx.0, bx.1)).kron(&y.right_action(edge.1.idx, n - j, by.0))
                        }
                    })?;
                    actions.push((false, arc, n, w, u, m));
                }
            }
        }
    }
    for (left, arc, n, s, e, m) in actions {
        if left {
            out.complex.set_left(arc, n, s, e, m);
        } else {
            out.complex.set_right(arc, n, s, e, m);
        }
    }
    out.complex.check_actions()?;
    Ok(out)
}

impl TensorComplex {
    /// Assembles a degree-`n` map from block `(s, e)` to `(s2, e2)` out of its
    /// components `j -> j`.
    fn graded(
        &self,
        n: usize,
        s2: usize,
        e2: usize,
        s: usize,
        e: usize,
        part: impl Fn(usize) -> Matrix,
    ) -> Result<Matrix, Error> {
        let (bx, by) = self.split(s, e);
        let (bx2, by2) = self.split(s2, e2);
        let mut m = Matrix::zeros(self.cx.field(), self.complex.dim(n, s2, e2), self.complex.dim(n, s, e));
        for j in 0..=n {
            m.add_block(self.offset(n, j, bx2, by2), self.offset(n, j, bx, by), &part(j))?;
        }
        Ok(m)
    }
}
