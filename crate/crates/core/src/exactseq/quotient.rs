use std::collections::HashMap;

use crate::cubechain::CubeComplex;
use crate::error::Error;
use crate::exactla::{Matrix, QuotientData, Subspace};
use crate::graded::{ChainMap, PairComplex};
use crate::scalars::Extension;

/// `B / A` for a subcomplex `A` of `B`, with the projection and a linear section.
#[derive(Clone, Debug)]
pub struct QuotientComplex {
    pub complex: PairComplex,
    /// `B -> B / A`.
    pub projection: ChainMap,
    subs: HashMap<(usize, usize, usize), Subspace>,
    sections: HashMap<(usize, usize, usize), Matrix>,
}

impl QuotientComplex {
    /// The subcomplex being divided out, in degree `i` at `(s, e)`.
    pub fn sub(&self, i: usize, s: usize, e: usize) -> Option<&Subspace> {
        self.subs.get(&(i, s, e))
    }

    /// `B / A -> B`, a right inverse of the projection (not a chain map).
    pub fn section(&self, i: usize, s: usize, e: usize) -> Option<&Matrix> {
        self.sections.get(&(i, s, e))
    }

    /// The map `B / A -> B' / A'` induced by `phi : B -> B'` over the identity of vertices.
    pub fn induced(
        &self,
        phi: &ChainMap,
        b: &PairComplex,
        b2: &PairComplex,
        target: &QuotientComplex,
    ) -> Result<ChainMap, Error> {
        let mut out = ChainMap::new(phi.vertex_map.clone());
        for (s, e) in b.pairs() {
            let (fs, fe) = (phi.vertex_map[s], phi.vertex_map[e]);
            for i in 0..=b.top() {
                let m = phi.get(i, s, e, b, b2);
                let (Some(src), Some(dst)) = (self.subs.get(&(i, s, e)), target.subs.get(&(i, fs, fe))) else {
                    continue;
                };
                if !dst.contains_subspace(&src.map(&m)?)? {
                    return Err(Error::Assertion("map does not carry subcomplex into subcomplex".into()));
                }
                let q = target.projection.get(i, fs, fe, b2, &target.complex);
                out.set(i, s, e, q.mul(&m)?.mul(&self.sections[&(i, s, e)])?);
            }
        }
        Ok(out)
    }
}

/// Cokernel of an injective chain map `f : A -> B`.
pub fn cokernel(f: &ChainMap, a: &PairComplex, b: &PairComplex) -> Result<QuotientComplex, Error> {
    let field = b.field();
    let top = b.top();
    let mut subs: HashMap<(usize, usize, usize), Subspace> = HashMap::new();
    for (s, e) in b.pairs() {
        for i in 0..=top {
            subs.insert((i, s, e), Subspace::zero(field, b.dim(i, s, e)));
        }
    }
    for (s, e) in a.pairs() {
        let (fs, fe) = (f.vertex_map[s], f.vertex_map[e]);
        for i in 0..=top.min(a.top()) {
            let img = Subspace::image(&f.get(i, s, e, a, b));
            let slot = subs.get_mut(&(i, fs, fe)).ok_or(Error::NotInclusion)?;
            *slot = slot.join(&img)?;
        }
    }
    let mut quotients = HashMap::new();
    for (&k, sub) in &subs {
        quotients.insert(k, QuotientData::new(sub.ambient_dim(), sub)?);
    }
    let mut out = PairComplex::new(field, b.shared_quiver(), b.max_degree());
    let mut projection = ChainMap::new((0..b.quiver().vertex_count()).collect());
    let mut sections = HashMap::new();
    for (s, e) in b.pairs() {
        let dims = (0..=top).map(|i| quotients[&(i, s, e)].map.rows()).collect();
        let mut diffs = Vec::with_capacity(top);
        for i in 1..=top {
            let d = quotients[&(i - 1, s, e)].map.mul(&b.differential(i, s, e))?;
            diffs.push(d.mul(&quotients[&(i, s, e)].section())?);
        }
        out.insert_from_diffs(s, e, dims, diffs);
        for i in 0..=top {
            let q = &quotients[&(i, s, e)];
            projection.set(i, s, e, q.map.clone());
            sections.insert((i, s, e), q.section());
        }
    }
    let q = b.quiver();
    for arc in 0..q.arc_count() {
        let (u, v) = q.arc(arc);
        for w in 0..q.vertex_count() {
            for i in 0..=top {
                if let (Some(src), Some(dst)) = (quotients.get(&(i, v, w)), quotients.get(&(i, u, w))) {
                    out.set_left(arc, i, v, w, dst.map.mul(&b.left_action(arc, i, w))?.mul(&src.section())?);
                }
                if let (Some(src), Some(dst)) = (quotients.get(&(i, w, u)), quotients.get(&(i, w, v))) {
                    out.set_right(arc, i, w, u, dst.map.mul(&b.right_action(arc, i, w))?.mul(&src.section())?);
                }
            }
        }
    }
    out.check_squares_zero()?;
    Ok(QuotientComplex { complex: out, projection, subs, sections })
}

/// `C(X, Y) = C(X) / ᵡC(Y)`.
pub fn relative_complex(cx: &CubeComplex, ext: &Extension) -> Result<QuotientComplex, Error> {
    cokernel(&ext.inclusion, &ext.complex, &cx.complex)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubechain::build_complex;
    use crate::exactla::Field;
    use crate::homology::homology_table;
    use crate::precubical::{directed_disc, sub, SubsetSpec};
    use crate::scalars::extend_subcomplex;

    fn pair(names: &[&str]) -> (CubeComplex, Extension) {
        let d2 = directed_disc(2).unwrap();
        let cx = build_complex(&d2, 1, Field::Rational).unwrap();
        let spec = SubsetSpec::closure_of(&d2, names).unwrap().0;
        let (_, inc) = sub(&d2, &spec, "Y").unwrap();
        let ext = extend_subcomplex(&inc, &cx).unwrap();
        (cx, ext)
    }

    #[test]
    fn square_relative_to_its_boundary() {
        let (cx, ext) = pair(&["0a", "1a", "a0", "a1"]);
        let rel = relative_complex(&cx, &ext).unwrap();
        let (s, e) = (cx.vertex("00").unwrap(), cx.vertex("11").unwrap());
        assert_eq!(rel.complex.dims(s, e)[..2], [0, 1]);
        let h = homology_table(&rel.complex).unwrap();
        assert_eq!((h.dim(0, s, e), h.dim(1, s, e)), (0, 1));
        rel.projection.check_chain_map(&cx.complex, &rel.complex, "projection").unwrap();
        rel.complex.check_actions().unwrap();
    }

    #[test]
    fn whole_and_far_vertex() {
        let (cx, ext) = pair(&["aa"]);
        let rel = relative_complex(&cx, &ext).unwrap();
        assert!(rel.complex.pairs().all(|(s, e)| rel.complex.dims(s, e).iter().all(|&d| d == 0)));

        let (cx, ext) = pair(&["00"]);
        let rel = relative_complex(&cx, &ext).unwrap();
        let (s, e) = (cx.vertex("10").unwrap(), cx.vertex("11").unwrap());
        assert_eq!(rel.complex.dims(s, e), cx.complex.dims(s, e));
    }
}
