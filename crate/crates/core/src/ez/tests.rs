use super::*;
use crate::precubical::{directed_segment, directed_sphere, point, standard_cube};

fn k() -> PrecubicalSet {
    directed_segment()
}

fn chain(tp: &TensorProduct, names: &[&str]) -> CubeChain {
    CubeChain::from_names(&tp.set, names).unwrap()
}

fn factor_chain(x: &PrecubicalSet, names: &[&str]) -> CubeChain {
    CubeChain::from_names(x, names).unwrap()
}

/// Two parallel edges `x, y : 1 -> 2`.
fn parallel_circle() -> PrecubicalSet {
    PrecubicalSet::builder("S1p").vertices(&["1", "2"]).edge("x", "1", "2").edge("y", "1", "2").build().unwrap()
}

#[test]
fn tensor_degree_zero_is_smaller() {
    let r = degree_zero_obstruction(&k(), &k(), Field::Rational).unwrap();
    assert_eq!(r.tensors_degree0, 9);
    assert_eq!(r.chains_degree0, 10);
    assert!(r.differs);
}

#[test]
fn separation_and_shuffle_in_degree_zero() {
    let (x, y) = (k(), k());
    let tp = TensorProduct::new(&x, &y);
    let c = chain(&tp, &["(a,0)", "(1,a)"]);
    let (a, b) = ez_f0(&tp, &c).unwrap();
    assert_eq!(a, factor_chain(&x, &["a"]));
    assert_eq!(b, factor_chain(&y, &["a"]));
    assert_eq!(ez_g0(&tp, &a, &b).unwrap(), c);
    let other = chain(&tp, &["(0,a)", "(a,1)"]);
    assert_eq!(ez_f0(&tp, &other).unwrap(), (a.clone(), b.clone()));
    assert_eq!(ez_g0(&tp, &a, &b).unwrap(), c);
    let sq = chain(&tp, &["(a,a)"]);
    assert_eq!(ez_f1(&tp, &sq).unwrap(), None);
}

#[test]
fn swaps() {
    let (x, y) = (k(), k());
    let tp = TensorProduct::new(&x, &y);
    let c = chain(&tp, &["(a,0)", "(1,a)"]);
    let d = swap(&tp, &c, 0).unwrap();
    assert_eq!(d, chain(&tp, &["(0,a)", "(a,1)"]));
    assert_eq!(swap(&tp, &d, 0).unwrap(), c);
    assert!(swap(&tp, &c, 1).is_err());
    // the difference of the two paths around the square is the boundary of (a,a)
    let cxy = build_complex(&tp.set, 1, Field::Rational).unwrap();
    let (s, e) = (c.src, c.dst);
    let mut v = vec![Field::Rational.zero(); cxy.complex.dim(0, s, e)];
    v[cxy.position(&c).unwrap()] = Field::Rational.one();
    v[cxy.position(&d).unwrap()] = -&Field::Rational.one();
    let d1 = cxy.complex.differential(1, s, e);
    assert!(d1.solve(&v).unwrap().is_some());
}

#[test]
fn alpha_kills_the_square() {
    let (x, y) = (k(), k());
    let d = EzData::new(&x, &y, 1, Field::Rational).unwrap();
    let sq = chain(&d.tp, &["(a,a)"]);
    let (s, e) = (sq.src, sq.dst);
    let a = d.alpha.get(1, s, e, &d.cxy.complex, &d.t.complex);
    let col = d.cxy.position(&sq).unwrap();
    assert!(a.column(col).iter().all(|v| v.is_zero()));
}

#[test]
fn comparison_maps_on_small_sets() {
    let (x, y) = (k(), k());
    let r = ez_verify(&x, &y, 1, Field::Rational).unwrap();
    assert!(r.passed(), "{r:?}");
    assert!(!r.beta_alpha_identity);
    let s1 = directed_sphere(1).unwrap();
    let r = ez_verify(&s1, &s1, 2, Field::Rational).unwrap();
    assert!(r.passed(), "{r:?}");
    let r = ez_verify(&point(), &standard_cube(2), 2, Field::Rational).unwrap();
    assert!(r.passed() && r.beta_alpha_identity, "{r:?}");
}

#[test]
fn kunneth_on_circles_and_discs() {
    let s1 = directed_sphere(1).unwrap();
    assert!(kunneth_check(&s1, &s1, 2, Field::Rational).unwrap().holds());
    assert!(kunneth_check(&k(), &k(), 1, Field::Rational).unwrap().holds());
    let p = parallel_circle();
    let r = kunneth_check(&p, &p, 2, Field::Rational).unwrap();
    assert!(r.holds());
    assert!(r.entries.iter().filter(|e| e.degree == 1).all(|e| e.product == 0));
    let r = kunneth_check(&s1, &s1, 2, Field::Rational).unwrap();
    assert!(r.entries.iter().filter(|e| e.degree == 1).all(|e| e.product == 0));
}

#[test]
fn alpha_is_natural_along_the_inclusion() {
    use crate::precubical::{sub, SubsetSpec};
    let d2 = standard_cube(2);
    let keep = SubsetSpec::closure_of(&d2, &["0a", "1a", "a0", "a1"]).unwrap().0;
    let (s1, inc) = sub(&d2, &keep, "S1").unwrap();
    let big = EzData::new(&d2, &d2, 1, Field::Rational).unwrap();
    let small = EzData::new(&s1, &s1, 1, Field::Rational).unwrap();
    let vmap = |v: usize| {
        let (a, b) = small.tp.vertex_pair(v);
        big.tp.vertex(inc.apply_vertex(a), inc.apply_vertex(b))
    };
    // push each basis chain of the small product forward and compare both routes
    for (s, e) in small.cxy.complex.pairs() {
        let (s2, e2) = (vmap(s), vmap(e));
        for n in 0..=1 {
            let a_small = small.alpha.get(n, s, e, &small.cxy.complex, &small.t.complex);
            let a_big = big.alpha.get(n, s2, e2, &big.cxy.complex, &big.t.complex);
            for (col, ch) in small.cxy.basis(n, s, e).iter().enumerate() {
                let cubes = ch
                    .cubes
                    .iter()
                    .map(|&c| {
                        let (u, v) = small.tp.factor(c);
                        big.tp.cell(inc.apply(u), inc.apply(v)).unwrap()
                    })
                    .collect();
                let image = CubeChain { cubes, src: s2, dst: e2 };
                let via_big = a_big.column(big.cxy.position(&image).unwrap());
                let small_col = a_small.column(col);
                let mut expected = vec![Field::Rational.zero(); via_big.len()];
                for ((p, q), coeff) in small.t.terms(n, s, e).iter().zip(&small_col) {
                    if coeff.is_zero() {
                        continue;
                    }
                    let pc = |c: &CubeChain| CubeChain {
                        cubes: c.cubes.iter().map(|&g| inc.apply(g)).collect(),
                        src: inc.apply_vertex(c.src),
                        dst: inc.apply_vertex(c.dst),
                    };
                    let row = big.t.position_of(&pc(p), &pc(q)).unwrap();
                    expected[row] = coeff.clone();
                }
                assert_eq!(via_big, expected);
            }
        }
    }
}

#[test]
fn tensor_complex_blocks() {
    let (x, y) = (k(), k());
    let d = EzData::new(&x, &y, 1, Field::Rational).unwrap();
    let s = d.t.vertex(0, 0).unwrap();
    let e = d.t.vertex(1, 1).unwrap();
    assert_eq!(d.t.complex.dims(s, e), vec![1, 0, 0]);
    assert_eq!(d.cxy.complex.dims(s, e), vec![2, 1, 0]);
    assert_eq!(d.t.terms(0, s, e).len(), 1);
}
