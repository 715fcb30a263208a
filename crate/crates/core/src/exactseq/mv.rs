use serde::Serialize;

use super::les::ShortExact;
use super::{check_relative_pair, cokernel, connecting_map, verify_exact, ExactSequenceReport, PairSequence, QuotientComplex};
use crate::cubechain::{build_complex, CubeComplex};
use crate::error::Error;
use crate::exactla::{Field, Matrix};
use crate::graded::{ChainMap, PairComplex};
use crate::homology::{homology_table, induced_on_homology, HomologyMap, HomologyTable};
use crate::precubical::{sub, PrecubicalSet, SubsetSpec};
use crate::scalars::{extend_subcomplex, Extension};

#[derive(Clone, Debug, Serialize)]
pub struct GoodCoverReport {
    /// Verdicts for `(X, X1)`, `(X, X2)`, `(X1, X1∩X2)`, `(X2, X1∩X2)`.
    pub pairs: Vec<(String, bool)>,
    /// Blocks `(degree, src, dst)` where excision fails to be an isomorphism.
    pub excision_failures: Vec<(usize, String, String)>,
    pub good: bool,
}

/// Everything built for a cover `X = X1 ∪ X2`; all extensions are taken along the
/// inclusion into `X`.
pub struct CoverData {
    pub cx: CubeComplex,
    pub ext1: Extension,
    pub ext2: Extension,
    pub ext12: Extension,
    /// `ᵡC(X1) / ᵡC(X1∩X2)`.
    pub q1: QuotientComplex,
    /// `C(X) / ᵡC(X2)`.
    pub q2: QuotientComplex,
    /// The canonical map `q1 -> q2`.
    pub excision: ChainMap,
}

/// The inclusion `E -> F` of two extensions inside the same `C(X)`.
fn between(e: &Extension, f: &Extension, cx: &PairComplex) -> Result<ChainMap, Error> {
    let mut out = ChainMap::new(e.inclusion.vertex_map.clone());
    for (s, t) in e.complex.pairs() {
        for i in 0..=cx.top() {
            let ie = e.inclusion.get(i, s, t, &e.complex, cx);
            let fi = f.inclusion.get(i, s, t, &f.complex, cx);
            let inv = fi.left_inverse().ok_or_else(|| Error::Assertion("extension inclusion is not injective".into()))?;
            let m = inv.mul(&ie)?;
            if fi.mul(&m)? != ie {
                return Err(Error::Assertion("extensions are not nested".into()));
            }
            out.set(i, s, t, m);
        }
    }
    Ok(out)
}

impl CoverData {
    /// Builds the cover data; fails unless every cell of `X` lies in `X1` or `X2`.
    pub fn new(x: &PrecubicalSet, x1: &SubsetSpec, x2: &SubsetSpec, max_degree: usize, field: Field) -> Result<Self, Error> {
        let union = x1.union(x2);
        if let Some(c) = x.all_cells().find(|&c| !union.contains(c)) {
            return Err(Error::NotACover(x.cell_name(c).to_string()));
        }
        let cx = build_complex(x, max_degree, field)?;
        let ext_of = |spec: &SubsetSpec, name: &str| -> Result<Extension, Error> {
            let (_, inc) = sub(x, spec, name)?;
            extend_subcomplex(&inc, &cx)
        };
        let ext1 = ext_of(x1, "X1")?;
        let ext2 = ext_of(x2, "X2")?;
        let ext12 = ext_of(&x1.intersection(x2), "X12")?;
        let c = &cx.complex;
        let j12 = between(&ext12, &ext1, c)?;
        let q1 = cokernel(&j12, &ext12.complex, &ext1.complex)?;
        let q2 = cokernel(&ext2.inclusion, &ext2.complex, c)?;
        let excision = q1.induced(&ext1.inclusion, &ext1.complex, c, &q2)?;
        excision.check_chain_map(&q1.complex, &q2.complex, "excision map")?;
        Ok(CoverData { cx, ext1, ext2, ext12, q1, q2, excision })
    }

    fn excision_on_homology(&self, h1: &HomologyTable, h2: &HomologyTable) -> Result<HomologyMap, Error> {
        induced_on_homology(&self.excision, &self.q1.complex, &self.q2.complex, h1, h2)
    }
}

/// Checks the four relative pairs of the cover and that `H(ᵡX1, ᵡX12) -> H(X, X2)` is an
/// isomorphism in degrees `0..=max_degree`.
pub fn good_cover_check(
    x: &PrecubicalSet,
    x1: &SubsetSpec,
    x2: &SubsetSpec,
    max_degree: usize,
    field: Field,
) -> Result<GoodCoverReport, Error> {
    let data = CoverData::new(x, x1, x2, max_degree, field)?;
    let x12 = x1.intersection(x2);
    let (s1, _) = sub(x, x1, "X1")?;
    let (s2, _) = sub(x, x2, "X2")?;
    let inside = |parent: &PrecubicalSet| SubsetSpec::new(parent, &x12.names(x));
    let pairs = vec![
        ("(X, X1)".to_string(), check_relative_pair(x, x1, max_degree, field)?.accepted),
        ("(X, X2)".to_string(), check_relative_pair(x, x2, max_degree, field)?.accepted),
        ("(X1, X12)".to_string(), check_relative_pair(&s1, &inside(&s1)?, max_degree, field)?.accepted),
        ("(X2, X12)".to_string(), check_relative_pair(&s2, &inside(&s2)?, max_degree, field)?.accepted),
    ];
    let h1 = homology_table(&data.q1.complex)?;
    let h2 = homology_table(&data.q2.complex)?;
    let map = data.excision_on_homology(&h1, &h2)?;
    let q = data.cx.complex.quiver();
    let excision_failures: Vec<(usize, String, String)> = map
        .iter()
        .filter(|(_, m)| m.rows() != m.cols() || m.rank() != m.cols())
        .map(|((i, s, e), _)| (i, q.vertex_name(s).to_string(), q.vertex_name(e).to_string()))
        .collect();
    let good = pairs.iter().all(|p| p.1) && excision_failures.is_empty();
    Ok(GoodCoverReport { pairs, excision_failures, good })
}

fn block_map(h_dst: &HomologyTable, h_src: &HomologyTable, m: &Matrix, i: usize, s: usize, e: usize) -> Result<Matrix, Error> {
    match (h_dst.block(i, s, e), h_src.block(i, s, e)) {
        (Some(d), Some(src)) => d.induced_from(m, src),
        _ => Ok(Matrix::zeros(m.field(), h_dst.dim(i, s, e), h_src.dim(i, s, e))),
    }
}

fn vstack(top: &Matrix, bottom: &Matrix) -> Result<Matrix, Error> {
    Ok(top.transpose().hstack(&bottom.transpose())?.transpose())
}

/// The Mayer–Vietoris sequence of a good cover through degree `max_degree`, assembled
/// from the long exact sequences of `(ᵡX1, ᵡX12)` and `(X, ᵡX2)` and the excision
/// isomorphism between their relative terms.
pub fn mayer_vietoris(
    x: &PrecubicalSet,
    x1: &SubsetSpec,
    x2: &SubsetSpec,
    max_degree: usize,
    field: Field,
) -> Result<ExactSequenceReport, Error> {
    let data = CoverData::new(x, x1, x2, max_degree + 1, field)?;
    let c = &data.cx.complex;
    let (e1, e2, e12) = (&data.ext1.complex, &data.ext2.complex, &data.ext12.complex);
    let i12 = between(&data.ext12, &data.ext1, c)?;
    let a12 = between(&data.ext12, &data.ext2, c)?;
    let ses1 = ShortExact { a: e12, b: e1, c: &data.q1.complex, f: &i12, g: &data.q1.projection };
    ses1.verify()?;
    let h = |p: &PairComplex| homology_table(p);
    let (h12, h1, h2, hx, hq1, hq2) = (h(e12)?, h(e1)?, h(e2)?, h(c)?, h(&data.q1.complex)?, h(&data.q2.complex)?);
    let gamma = data.excision_on_homology(&hq1, &hq2)?;
    let m = hx.max_degree();
    let q = c.quiver();
    let mut sequences = Vec::new();
    for (s, e) in c.pairs() {
        let mut labels = Vec::new();
        let mut maps = Vec::new();
        for n in (0..=m).rev() {
            labels.push(format!("H{n}(ext X12)"));
            labels.push(format!("H{n}(ext X1)+H{n}(ext X2)"));
            labels.push(format!("H{n}(X)"));
            let inc = block_map(&h1, &h12, &i12.get(n, s, e, e12, e1), n, s, e)?;
            let alpha = block_map(&h2, &h12, &a12.get(n, s, e, e12, e2), n, s, e)?;
            maps.push(vstack(&inc, &alpha)?);
            let beta = block_map(&hx, &h1, &data.ext1.inclusion.get(n, s, e, e1, c), n, s, e)?;
            let inc2 = block_map(&hx, &h2, &data.ext2.inclusion.get(n, s, e, e2, c), n, s, e)?;
            maps.push(beta.hstack(&inc2.scale(&-&field.one()))?);
            let delta = if n == 0 {
                Matrix::zeros(field, 0, hx.dim(0, s, e))
            } else {
                let j2 = block_map(&hq2, &hx, &data.q2.projection.get(n, s, e, c, &data.q2.complex), n, s, e)?;
                let g = gamma.get(n, s, e).cloned().unwrap_or_else(|| Matrix::zeros(field, 0, 0));
                let g_inv = g.inverse().ok_or_else(|| Error::Assertion("excision is not an isomorphism".into()))?;
                connecting_map(&ses1, &h12, &hq1, n, s, e)?.mul(&g_inv)?.mul(&j2)?
            };
            maps.push(delta);
        }
        labels.push("0".into());
        let seq = verify_exact(&labels, &maps)?.unchecked(0);
        sequences.push(PairSequence { src: q.vertex_name(s).into(), dst: q.vertex_name(e).into(), ..seq });
    }
    Ok(ExactSequenceReport { sequences })
}
