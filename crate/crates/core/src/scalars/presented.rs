use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::{AlgebraMorphism, PathAlgebraIndex};
use crate::cubechain::CubeComplex;
use crate::error::Error;
use crate::exactla::{Field, Matrix, QuotientData, Scalar, Subspace};
use crate::graded::{PairModule, Quiver};

/// A generator sitting in block `(src, dst)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub src: usize,
    pub dst: usize,
}

/// The free-module element `left · g · right`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    pub left: Vec<usize>,
    pub gen: usize,
    pub right: Vec<usize>,
}

impl Term {
    pub fn bare(gen: usize) -> Self {
        Term { left: vec![], gen, right: vec![] }
    }
}

/// A homogeneous relation in block `(src, dst)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub src: usize,
    pub dst: usize,
    pub terms: Vec<(Term, Scalar)>,
}

/// A bimodule over the path algebra of a quiver, given by generators and relations.
#[derive(Clone, Debug)]
pub struct PresentedBimodule {
    field: Field,
    quiver: Arc<Quiver>,
    generators: Vec<Generator>,
    relations: Vec<Relation>,
}

type FreeIndex = HashMap<(Vec<usize>, usize, Vec<usize>), usize>;

struct ResolvedBlock {
    index: FreeIndex,
    quotient: QuotientData,
}

impl PresentedBimodule {
    pub fn new(field: Field, quiver: Arc<Quiver>) -> Self {
        PresentedBimodule { field, quiver, generators: vec![], relations: vec![] }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn add_generator(&mut self, name: &str, src: usize, dst: usize) -> usize {
        self.generators.push(Generator { name: name.to_string(), src, dst });
        self.generators.len() - 1
    }

    /// Endpoints of a term, when its paths fit its generator.
    fn term_ends(&self, t: &Term) -> Option<(usize, usize)> {
        let g = self.generators.get(t.gen)?;
        let q = &self.quiver;
        let mut at = g.src;
        for &a in t.left.iter().rev() {
            let (u, v) = q.arc(a);
            if v != at {
                return None;
            }
            at = u;
        }
        let start = at;
        at = g.dst;
        for &b in &t.right {
            let (u, v) = q.arc(b);
            if u != at {
                return None;
            }
            at = v;
        }
        Some((start, at))
    }

    /// Adds a relation; every term must lie in block `(src, dst)`.
    pub fn add_relation(&mut self, src: usize, dst: usize, terms: Vec<(Term, Scalar)>) -> Result<(), Error> {
        for (t, k) in &terms {
            if self.term_ends(t) != Some((src, dst)) {
                return Err(Error::Assertion(format!("relation term {t:?} is not in the stated block")));
            }
            if !self.field.owns(k) {
                return Err(Error::AlgebraMismatch);
            }
        }
        self.relations.push(Relation { src, dst, terms });
        Ok(())
    }

    fn free_index(&self, paths: &PathAlgebraIndex, s: usize, e: usize) -> FreeIndex {
        let mut index = HashMap::new();
        for (gi, g) in self.generators.iter().enumerate() {
            for p in paths.paths(s, g.src) {
                for q in paths.paths(g.dst, e) {
                    let n = index.len();
                    index.insert((p.clone(), gi, q.clone()), n);
                }
            }
        }
        index
    }

    fn resolve_blocks(&self) -> Result<BTreeMap<(usize, usize), ResolvedBlock>, Error> {
        let paths = PathAlgebraIndex::new(self.quiver.clone());
        let mut out = BTreeMap::new();
        for (s, e) in self.quiver.reachable_pairs() {
            let index = self.free_index(&paths, s, e);
            let n = index.len();
            let mut vectors = Vec::new();
            for r in &self.relations {
                for p in paths.paths(s, r.src) {
                    for q in paths.paths(r.dst, e) {
                        let mut v = vec![self.field.zero(); n];
                        for (t, k) in &r.terms {
                            let key = ([p.as_slice(), &t.left].concat(), t.gen, [t.right.as_slice(), q].concat());
                            let at = index[&key];
                            v[at] = &v[at] + k;
                        }
                        vectors.push(v);
                    }
                }
            }
            let rel = Subspace::span(self.field, n, &vectors)?;
            let quotient = QuotientData::new(n, &rel)?;
            out.insert((s, e), ResolvedBlock { index, quotient });
        }
        Ok(out)
    }

    /// Block dimensions and edge actions after reducing by the relations.
    pub fn resolve(&self) -> Result<PairModule, Error> {
        let blocks = self.resolve_blocks()?;
        let q = &self.quiver;
        let mut m = PairModule::new(self.field, self.quiver.clone());
        for (&(s, e), b) in &blocks {
            m.set_dim(s, e, b.quotient.map.rows());
        }
        for a in 0..q.arc_count() {
            let (u, v) = q.arc(a);
            for w in 0..q.vertex_count() {
                if let (Some(src), Some(dst)) = (blocks.get(&(v, w)), blocks.get(&(u, w))) {
                    let free = self.free_map(src, dst, |(p, g, r)| ([&[a], p.as_slice()].concat(), *g, r.clone()))?;
                    m.set_left(a, w, dst.quotient.map.mul(&free)?.mul(&src.quotient.section())?);
                }
                if let (Some(src), Some(dst)) = (blocks.get(&(w, u)), blocks.get(&(w, v))) {
                    let free = self.free_map(src, dst, |(p, g, r)| (p.clone(), *g, [r.as_slice(), &[a]].concat()))?;
                    m.set_right(a, w, dst.quotient.map.mul(&free)?.mul(&src.quotient.section())?);
                }
            }
        }
        Ok(m)
    }

    fn free_map(
        &self,
        src: &ResolvedBlock,
        dst: &ResolvedBlock,
        act: impl Fn(&(Vec<usize>, usize, Vec<usize>)) -> (Vec<usize>, usize, Vec<usize>),
    ) -> Result<Matrix, Error> {
        let mut f = Matrix::zeros(self.field, dst.index.len(), src.index.len());
        for (key, &col) in &src.index {
            f.set(dst.index[&act(key)], col, self.field.one())?;
        }
        Ok(f)
    }

    /// Block dimensions after reduction.
    pub fn dims(&self) -> Result<BTreeMap<(usize, usize), usize>, Error> {
        Ok(self.resolve_blocks()?.into_iter().map(|(k, b)| (k, b.quotient.map.rows())).collect())
    }
}

/// The unit bimodule `U`: one generator `1_v` per vertex and `y · 1_w = 1_u · y` per arc.
pub fn unit_presentation(field: Field, quiver: Arc<Quiver>) -> PresentedBimodule {
    let mut m = PresentedBimodule::new(field, quiver.clone());
    for v in 0..quiver.vertex_count() {
        m.add_generator(&format!("1_{}", quiver.vertex_name(v)), v, v);
    }
    for y in 0..quiver.arc_count() {
        let (u, w) = quiver.arc(y);
        let terms = vec![
            (Term { left: vec![y], gen: w, right: vec![] }, field.one()),
            (Term { left: vec![], gen: u, right: vec![y] }, -&field.one()),
        ];
        m.add_relation(u, w, terms).expect("unit relation is homogeneous");
    }
    m
}

/// `C_i` of a cube complex. Degree 0 is the unit bimodule; in positive degree a chain
/// factors uniquely as edges, then a core starting and ending with a cube of dimension
/// at least 2, then edges, so `C_i` is free on its core chains.
pub fn present_chains(cx: &CubeComplex, i: usize) -> Result<PresentedBimodule, Error> {
    let c = &cx.complex;
    if i > c.top() {
        return Err(Error::DegreeOutOfRange { degree: i, max: c.top() });
    }
    if i == 0 {
        return Ok(unit_presentation(c.field(), c.shared_quiver()));
    }
    let mut m = PresentedBimodule::new(c.field(), c.shared_quiver());
    for (s, e) in c.pairs() {
        for ch in cx.basis(i, s, e) {
            let core = ch.cubes.first().is_some_and(|k| k.dim >= 2) && ch.cubes.last().is_some_and(|k| k.dim >= 2);
            if core {
                m.add_generator(&ch.display(&cx.set).to_string(), s, e);
            }
        }
    }
    Ok(m)
}

/// Presentation of a module by all of its basis vectors, with the action table as relations.
pub fn present_module(module: &PairModule) -> PresentedBimodule {
    let field = module.field();
    let q = module.shared_quiver();
    let mut m = PresentedBimodule::new(field, q.clone());
    let mut gens: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (s, e) in module.pairs() {
        let ids = (0..module.dim(s, e))
            .map(|k| m.add_generator(&format!("{}:{}#{k}", q.vertex_name(s), q.vertex_name(e)), s, e))
            .collect();
        gens.insert((s, e), ids);
    }
    let empty = Vec::new();
    let ids = |s: usize, e: usize| gens.get(&(s, e)).unwrap_or(&empty).clone();
    for a in 0..q.arc_count() {
        let (u, v) = q.arc(a);
        for w in 0..q.vertex_count() {
            let left = module.left_action(a, w);
            for (k, &g) in ids(v, w).iter().enumerate() {
                let mut terms = vec![(Term { left: vec![a], gen: g, right: vec![] }, field.one())];
                for (j, &h) in ids(u, w).iter().enumerate() {
                    let c = left.get(j, k).expect("action shape");
                    if !c.is_zero() {
                        terms.push((Term::bare(h), -c));
                    }
                }
                m.add_relation(u, w, terms).expect("action relation is homogeneous");
            }
            let right = module.right_action(a, w);
            for (k, &g) in ids(w, u).iter().enumerate() {
                let mut terms = vec![(Term { left: vec![], gen: g, right: vec![a] }, field.one())];
                for (j, &h) in ids(w, v).iter().enumerate() {
                    let c = right.get(j, k).expect("action shape");
                    if !c.is_zero() {
                        terms.push((Term::bare(h), -c));
                    }
                }
                m.add_relation(w, v, terms).expect("action relation is homogeneous");
            }
        }
    }
    m
}

/// Extension of scalars along `f`: the same generators and relations, read through `f`.
pub fn extend_presented(m: &PresentedBimodule, f: &AlgebraMorphism) -> Result<PresentedBimodule, Error> {
    if *f.source() != *m.quiver {
        return Err(Error::AlgebraMismatch);
    }
    let mut out = PresentedBimodule::new(m.field, f.target.clone());
    for g in &m.generators {
        out.add_generator(&g.name, f.vertex(g.src), f.vertex(g.dst));
    }
    for r in &m.relations {
        let terms = r
            .terms
            .iter()
            .map(|(t, k)| (Term { left: f.apply(&t.left), gen: t.gen, right: f.apply(&t.right) }, k.clone()))
            .collect();
        out.add_relation(f.vertex(r.src), f.vertex(r.dst), terms)?;
    }
    Ok(out)
}

/// `M ⊙ N = M ⊗_B N`. Generators are `g ⊙ w ⊙ h` with `w` a path from the end of `g`
/// to the start of `h`; relations of either factor are translated by the other's generators.
pub fn hcompose(m: &PresentedBimodule, n: &PresentedBimodule) -> Result<PresentedBimodule, Error> {
    if *m.quiver != *n.quiver || m.field != n.field {
        return Err(Error::AlgebraMismatch);
    }
    let paths = PathAlgebraIndex::new(m.quiver.clone());
    let mut out = PresentedBimodule::new(m.field, m.quiver.clone());
    let mut index: HashMap<(usize, Vec<usize>, usize), usize> = HashMap::new();
    for (gi, g) in m.generators.iter().enumerate() {
        for (hi, h) in n.generators.iter().enumerate() {
            for w in paths.paths(g.dst, h.src) {
                let name = format!("{}*{}", g.name, h.name);
                let id = out.add_generator(&name, g.src, h.dst);
                index.insert((gi, w.clone(), hi), id);
            }
        }
    }
    for r in &m.relations {
        for (hi, h) in n.generators.iter().enumerate() {
            for w in paths.paths(r.dst, h.src) {
                let terms = r
                    .terms
                    .iter()
                    .map(|(t, k)| {
                        let mid = [t.right.as_slice(), w].concat();
                        (Term { left: t.left.clone(), gen: index[&(t.gen, mid, hi)], right: vec![] }, k.clone())
                    })
                    .collect();
                out.add_relation(r.src, h.dst, terms)?;
            }
        }
    }
    for r in &n.relations {
        for (gi, g) in m.generators.iter().enumerate() {
            for w in paths.paths(g.dst, r.src) {
                let terms = r
                    .terms
                    .iter()
                    .map(|(t, k)| {
                        let mid = [w.as_slice(), &t.left].concat();
                        (Term { left: vec![], gen: index[&(gi, mid, t.gen)], right: t.right.clone() }, k.clone())
                    })
                    .collect();
                out.add_relation(g.src, r.dst, terms)?;
            }
        }
    }
    Ok(out)
}

/// `M ⊕ N`.
pub fn direct_sum(m: &PresentedBimodule, n: &PresentedBimodule) -> Result<PresentedBimodule, Error> {
    if *m.quiver != *n.quiver || m.field != n.field {
        return Err(Error::AlgebraMismatch);
    }
    let mut out = m.clone();
    let shift = m.generators.len();
    out.generators.extend(n.generators.iter().cloned());
    for r in &n.relations {
        let terms = r
            .terms
            .iter()
            .map(|(t, k)| (Term { left: t.left.clone(), gen: t.gen + shift, right: t.right.clone() }, k.clone()))
            .collect();
        out.relations.push(Relation { src: r.src, dst: r.dst, terms });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubechain::build_complex;
    use crate::homology::homology_table;
    use crate::precubical::{directed_disc, directed_segment, directed_sphere, sub, SubsetSpec};
    use crate::scalars::extend_subcomplex;

    fn q() -> Field {
        Field::Rational
    }

    fn free_rank_one(quiver: Arc<Quiver>, a: usize, b: usize) -> PresentedBimodule {
        let mut m = PresentedBimodule::new(q(), quiver);
        m.add_generator("g", a, b);
        m
    }

    #[test]
    fn unit_has_path_counts() {
        let x = directed_disc(2).unwrap();
        let quiver = Arc::new(Quiver::of(&x));
        let u = unit_presentation(q(), quiver.clone()).resolve().unwrap();
        for (s, e) in quiver.reachable_pairs() {
            assert_eq!(u.dim(s, e), quiver.paths(s, e).len());
        }
        assert!(u.check_bimodule().unwrap());
    }

    #[test]
    fn free_extension_over_same_algebra() {
        let x = directed_disc(2).unwrap();
        let quiver = Arc::new(Quiver::of(&x));
        let (a, b) = (quiver.vertex("01").unwrap(), quiver.vertex("01").unwrap());
        let m = free_rank_one(quiver.clone(), a, b);
        let id = AlgebraMorphism::identity(quiver.clone());
        let dims = extend_presented(&m, &id).unwrap().dims().unwrap();
        for (&(s, e), &d) in &dims {
            assert_eq!(d, quiver.paths(s, a).len() * quiver.paths(b, e).len());
        }
        let zero = PresentedBimodule::new(q(), quiver.clone());
        assert!(extend_presented(&zero, &id).unwrap().dims().unwrap().values().all(|&d| d == 0));
    }

    #[test]
    fn chains_of_circle_extend_like_the_subspace() {
        let d2 = directed_disc(2).unwrap();
        let spec = SubsetSpec::closure_of(&d2, &["0a", "1a", "a0", "a1"]).unwrap().0;
        let (s1, inc) = sub(&d2, &spec, "S1").unwrap();
        let cy = build_complex(&s1, 1, q()).unwrap();
        let cx = build_complex(&d2, 1, q()).unwrap();
        let sub_ext = extend_subcomplex(&inc, &cx).unwrap();
        let f = AlgebraMorphism::from_morphism(&inc);
        for i in 0..=2 {
            let dims = extend_presented(&present_chains(&cy, i).unwrap(), &f).unwrap().dims().unwrap();
            for (&(s, e), &d) in &dims {
                assert_eq!(d, sub_ext.complex.dim(i, s, e), "degree {i} at ({s}, {e})");
            }
        }
    }

    #[test]
    fn chain_presentations_resolve_to_chain_groups() {
        let d2 = directed_disc(2).unwrap();
        let cx = build_complex(&d2, 2, q()).unwrap();
        for i in 0..=2 {
            let m = present_chains(&cx, i).unwrap().resolve().unwrap();
            for (s, e) in cx.complex.pairs() {
                assert_eq!(m.dim(s, e), cx.complex.dim(i, s, e));
            }
        }
    }

    #[test]
    fn module_presentation_round_trips() {
        let s1 = directed_sphere(1).unwrap();
        let cx = build_complex(&s1, 1, q()).unwrap();
        let h = homology_table(&cx.complex).unwrap();
        let back = present_module(h.module(0)).resolve().unwrap();
        for (s, e) in h.pairs() {
            assert_eq!(back.dim(s, e), h.dim(0, s, e));
        }
    }

    #[test]
    fn horizontal_composition_laws() {
        let x = directed_segment();
        let quiver = Arc::new(Quiver::of(&x));
        let u = unit_presentation(q(), quiver.clone());
        let m = free_rank_one(quiver.clone(), 0, 1);
        let dims_m = m.dims().unwrap();
        assert_eq!(hcompose(&u, &m).unwrap().dims().unwrap(), dims_m);
        assert_eq!(hcompose(&m, &u).unwrap().dims().unwrap(), dims_m);
        let zero = PresentedBimodule::new(q(), quiver.clone());
        assert!(hcompose(&m, &zero).unwrap().dims().unwrap().values().all(|&d| d == 0));
        let mm = direct_sum(&m, &m).unwrap();
        let n = unit_presentation(q(), quiver.clone());
        let single = hcompose(&m, &n).unwrap().dims().unwrap();
        let double = hcompose(&mm, &n).unwrap().dims().unwrap();
        for (k, d) in single {
            assert_eq!(double[&k], 2 * d);
        }
        let other = Arc::new(Quiver::of(&directed_disc(2).unwrap()));
        assert!(matches!(hcompose(&m, &unit_presentation(q(), other)), Err(Error::AlgebraMismatch)));
    }
}
