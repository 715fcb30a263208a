use super::{cokernel, verify_exact, ExactSequenceReport, PairSequence};
use crate::cubechain::build_complex;
use crate::error::Error;
use crate::exactla::{Field, Matrix, Vector};
use crate::graded::{ChainMap, PairComplex};
use crate::homology::{homology_table, HomologyTable};
use crate::precubical::{sub, PrecubicalSet, SubsetSpec};
use crate::scalars::extend_subcomplex;

/// `0 -> A -f-> B -g-> C -> 0` over one quiver.
#[derive(Clone, Copy, Debug)]
pub struct ShortExact<'a> {
    pub a: &'a PairComplex,
    pub b: &'a PairComplex,
    pub c: &'a PairComplex,
    pub f: &'a ChainMap,
    pub g: &'a ChainMap,
}

impl ShortExact<'_> {
    /// Checks identity vertex maps, `g f = 0`, `f` injective, `g` surjective and
    /// `rank f + rank g = dim B` in every block.
    pub fn verify(&self) -> Result<(), Error> {
        let id: Vec<usize> = (0..self.b.quiver().vertex_count()).collect();
        if self.f.vertex_map != id || self.g.vertex_map != id {
            return Err(Error::NotShortExact("maps move vertices".into()));
        }
        let q = self.b.quiver();
        for (s, e) in self.b.pairs() {
            for i in 0..=self.b.top() {
                let f = self.f.get(i, s, e, self.a, self.b);
                let g = self.g.get(i, s, e, self.b, self.c);
                let at = || format!("degree {i} at ({}, {})", q.vertex_name(s), q.vertex_name(e));
                if !g.mul(&f)?.is_zero() {
                    return Err(Error::NotShortExact(format!("g f is nonzero in {}", at())));
                }
                let (rf, rg) = (f.rank(), g.rank());
                if rf != f.cols() || rg != g.rows() || rf + rg != f.rows() {
                    return Err(Error::NotShortExact(at()));
                }
            }
        }
        self.f.check_chain_map(self.a, self.b, "first map")?;
        self.g.check_chain_map(self.b, self.c, "second map")
    }
}

fn lift_class(
    ses: &ShortExact,
    ha: &HomologyTable,
    bvec: Vector,
    i: usize,
    s: usize,
    e: usize,
) -> Result<Vector, Error> {
    let db = ses.b.differential(i, s, e).mul_vec(&bvec)?;
    let f = ses.f.get(i - 1, s, e, ses.a, ses.b);
    let a = f.solve(&db)?.ok_or_else(|| Error::Assertion("boundary of a lift is not in A".into()))?;
    ha.block(i - 1, s, e).map_or(Ok(vec![]), |blk| blk.class_of(&a))
}

/// `∂_* : H_i(C)(s, e) -> H_{i-1}(A)(s, e)`, by lifting a cycle to `B`, taking its boundary
/// and pulling back to `A`. A second lift differing by an element of `f(A)` must give the
/// same classes.
pub fn connecting_map(
    ses: &ShortExact,
    ha: &HomologyTable,
    hc: &HomologyTable,
    i: usize,
    s: usize,
    e: usize,
) -> Result<Matrix, Error> {
    let field = ses.b.field();
    let Some(cblock) = hc.block(i, s, e) else {
        return Ok(Matrix::zeros(field, if i == 0 { 0 } else { ha.dim(i - 1, s, e) }, 0));
    };
    if i == 0 {
        return Ok(Matrix::zeros(field, 0, cblock.dim()));
    }
    let g = ses.g.get(i, s, e, ses.b, ses.c);
    let f = ses.f.get(i, s, e, ses.a, ses.b);
    let rows = ha.dim(i - 1, s, e);
    let mut cols = Vec::with_capacity(cblock.dim());
    for z in cblock.reps() {
        let lift = g.solve(z)?.ok_or_else(|| Error::NotShortExact("second map is not surjective".into()))?;
        let class = lift_class(ses, ha, lift.clone(), i, s, e)?;
        if f.cols() > 0 {
            let shift = f.column(f.cols() - 1);
            let other: Vector = lift.iter().zip(&shift).map(|(x, y)| x + y).collect();
            if lift_class(ses, ha, other, i, s, e)? != class {
                return Err(Error::Assertion("connecting map depends on the lift".into()));
            }
        }
        cols.push(class);
    }
    Ok(Matrix::from_columns(field, rows, &cols)?)
}

fn induced(hd: &HomologyTable, hs: &HomologyTable, m: &Matrix, i: usize, s: usize, e: usize) -> Result<Matrix, Error> {
    match (hd.block(i, s, e), hs.block(i, s, e)) {
        (Some(d), Some(src)) => d.induced_from(m, src),
        _ => Ok(Matrix::zeros(m.field(), hd.dim(i, s, e), hs.dim(i, s, e))),
    }
}

/// The long exact sequence of `ses`, from `H_m(A)` down to `H_0(C) -> 0`, where `m`
/// is the top degree of the tables. The head is unchecked: its incoming map comes
/// from degree `m + 1`.
pub fn les_from_ses(
    ses: &ShortExact,
    ha: &HomologyTable,
    hb: &HomologyTable,
    hc: &HomologyTable,
    names: [&str; 3],
) -> Result<ExactSequenceReport, Error> {
    ses.verify()?;
    let m = ha.max_degree().min(hb.max_degree()).min(hc.max_degree());
    let q = ses.b.quiver();
    let mut sequences = Vec::new();
    for (s, e) in ses.b.pairs() {
        let mut labels = Vec::new();
        let mut maps = Vec::new();
        for n in (0..=m).rev() {
            labels.extend(names.iter().map(|x| format!("H{n}({x})")));
            maps.push(induced(hb, ha, &ses.f.get(n, s, e, ses.a, ses.b), n, s, e)?);
            maps.push(induced(hc, hb, &ses.g.get(n, s, e, ses.b, ses.c), n, s, e)?);
            maps.push(connecting_map(ses, ha, hc, n, s, e)?);
        }
        labels.push("0".into());
        let seq = verify_exact(&labels, &maps)?.unchecked(0);
        sequences.push(PairSequence { src: q.vertex_name(s).into(), dst: q.vertex_name(e).into(), ..seq });
    }
    Ok(ExactSequenceReport { sequences })
}

/// The long exact sequence of the relative pair `(X, Y)` through degree `max_degree`.
/// Complexes are built one degree higher so that every reported node is checked.
pub fn les_relative(
    x: &PrecubicalSet,
    y: &SubsetSpec,
    max_degree: usize,
    field: Field,
) -> Result<ExactSequenceReport, Error> {
    let (_, inc) = sub(x, y, "Y")?;
    let cx = build_complex(x, max_degree + 1, field)?;
    let ext = extend_subcomplex(&inc, &cx)?;
    let rel = cokernel(&ext.inclusion, &ext.complex, &cx.complex)?;
    let ses = ShortExact {
        a: &ext.complex,
        b: &cx.complex,
        c: &rel.complex,
        f: &ext.inclusion,
        g: &rel.projection,
    };
    let (ha, hb, hc) = (homology_table(&ext.complex)?, homology_table(&cx.complex)?, homology_table(&rel.complex)?);
    les_from_ses(&ses, &ha, &hb, &hc, ["ext Y", "X", "X,Y"])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precubical::{directed_disc, domino};

    fn circle(d2: &PrecubicalSet) -> SubsetSpec {
        SubsetSpec::closure_of(d2, &["0a", "1a", "a0", "a1"]).unwrap().0
    }

    #[test]
    fn square_relative_to_circle() {
        let d2 = directed_disc(2).unwrap();
        let r = les_relative(&d2, &circle(&d2), 1, Field::Rational).unwrap();
        assert!(r.exact(), "{:?}", r.first_failure());
        let seq = r.at("00", "11").unwrap();
        // H2 terms, then H1(ext Y) H1(X) H1(X,Y) H0(ext Y) H0(X) H0(X,Y) 0
        assert_eq!(seq.dims()[3..], [0, 0, 1, 2, 1, 0, 0]);
    }

    #[test]
    fn connecting_map_is_injective_on_the_square() {
        let d2 = directed_disc(2).unwrap();
        let (_, inc) = sub(&d2, &circle(&d2), "S1").unwrap();
        let cx = build_complex(&d2, 1, Field::Rational).unwrap();
        let ext = extend_subcomplex(&inc, &cx).unwrap();
        let rel = cokernel(&ext.inclusion, &ext.complex, &cx.complex).unwrap();
        let ses = ShortExact { a: &ext.complex, b: &cx.complex, c: &rel.complex, f: &ext.inclusion, g: &rel.projection };
        let ha = homology_table(&ext.complex).unwrap();
        let hc = homology_table(&rel.complex).unwrap();
        let (s, e) = (cx.vertex("00").unwrap(), cx.vertex("11").unwrap());
        let d = connecting_map(&ses, &ha, &hc, 1, s, e).unwrap();
        assert_eq!(d.shape(), (2, 1));
        assert_eq!(d.rank(), 1);
    }

    #[test]
    fn pair_with_itself_and_domino() {
        let d2 = directed_disc(2).unwrap();
        let r = les_relative(&d2, &SubsetSpec::all(&d2), 1, Field::Rational).unwrap();
        assert!(r.exact());
        for seq in &r.sequences {
            for k in (2..seq.nodes.len() - 1).step_by(3) {
                assert_eq!(seq.nodes[k].dim, 0);
            }
        }
        let dom = domino();
        let spec = SubsetSpec::closure_of(&dom, &["ba"]).unwrap().0;
        assert!(les_relative(&dom, &spec, 1, Field::Rational).unwrap().exact());
    }

    #[test]
    fn zero_subcomplex_gives_zero_connecting_map() {
        let d2 = directed_disc(2).unwrap();
        let cx = build_complex(&d2, 1, Field::Rational).unwrap();
        let zero = PairComplex::new(Field::Rational, cx.complex.shared_quiver(), 1);
        let f = ChainMap::new((0..4).collect());
        let g = ChainMap::identity_on(&cx.complex);
        let ses = ShortExact { a: &zero, b: &cx.complex, c: &cx.complex, f: &f, g: &g };
        let ha = homology_table(&zero).unwrap();
        let hc = homology_table(&cx.complex).unwrap();
        for (s, e) in cx.complex.pairs() {
            assert!(connecting_map(&ses, &ha, &hc, 1, s, e).unwrap().is_zero());
        }
    }
}
