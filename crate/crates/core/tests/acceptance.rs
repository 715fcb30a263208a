//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use dihom::cubechain::{boundary_of_sum, build_complex, enumerate_chains, CubeChain, FormalSum};
use dihom::exactla::Field;
use dihom::exactseq::{check_relative_pair, good_cover_check, les_relative, mayer_vietoris, relative_complex};
use dihom::ez::{degree_zero_obstruction, ez_f0, ez_verify, kunneth_check, swap};
use dihom::homology::homology_table;
use dihom::precubical::{
    all_morphisms, directed_disc, directed_segment, directed_sphere, domino, realization, sub, PrecubicalSet,
    SubsetSpec, TensorProduct,
};
use dihom::scalars::{
    extend_presented, extend_subcomplex, present_chains, present_module, AlgebraMorphism,
};
use num_rational::BigRational;
use num_traits::Zero;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, budget: Duration) -> Result<String, String> {
    let t = start.elapsed();
    ensure(t < budget, format!("took {t:.2?}, budget {budget:?}"))?;
    Ok(format!("{t:.2?}"))
}

fn degree_cap(x: &PrecubicalSet) -> usize {
    x.dim().unwrap_or(0).max(1)
}

fn circle_in(d2: &PrecubicalSet) -> SubsetSpec {
    SubsetSpec::closure_of(d2, &["0a", "1a", "a0", "a1"]).unwrap().0
}

fn structural() -> Check {
    let start = Instant::now();
    let corpus = common::corpus();
    ensure(corpus.len() >= 20, format!("corpus has only {} sets", corpus.len()))?;
    let mut chains = 0usize;
    for x in &corpus {
        let cx = build_complex(x, degree_cap(x), Field::Rational)
            .map_err(|e| format!("{}: {e} (exit 3)", x.name()))?;
        for (s, e) in cx.complex.pairs() {
            for i in 2..=cx.complex.top() {
                for c in cx.basis(i, s, e) {
                    let dd = boundary_of_sum(x, &boundary_of_sum(x, &FormalSum::single(c.clone())));
                    ensure(dd.is_zero(), format!("{}: boundary squared nonzero on a chain (exit 3)", x.name()))?;
                    chains += 1;
                }
            }
        }
    }
    let t = within(start, Duration::from_secs(10))?;
    Ok(format!("{} sets, {chains} chains of degree >= 2 checked, {t}", corpus.len()))
}

fn example_values() -> Check {
    let start = Instant::now();
    let d2 = directed_disc(2).unwrap();
    let circle = circle_in(&d2);
    let (s1, inc) = sub(&d2, &circle, "S1").unwrap();
    let f = Field::Rational;
    let cx = build_complex(&d2, 1, f).unwrap();
    let cs = build_complex(&s1, 1, f).unwrap();
    let (s, e) = (cx.vertex("00").unwrap(), cx.vertex("11").unwrap());
    let (ss, se) = (cs.vertex("00").unwrap(), cs.vertex("11").unwrap());
    let hx = homology_table(&cx.complex).unwrap();
    let hs = homology_table(&cs.complex).unwrap();
    let ext = extend_subcomplex(&inc, &cx).unwrap();
    let hr = homology_table(&relative_complex(&cx, &ext).unwrap().complex).unwrap();
    let got = [hx.dim(0, s, e), hs.dim(0, ss, se), hr.dim(0, s, e), hr.dim(1, s, e)];
    ensure(got == [1, 2, 0, 1], format!("H0(D2), H0(S1), H0(D2,S1), H1(D2,S1) = {got:?}"))?;
    let les = les_relative(&d2, &circle, 1, f).unwrap();
    ensure(les.exact(), format!("sequence not exact: {:?}", les.first_failure()))?;
    let seq = les.at("00", "11").unwrap();
    let alt: i64 = seq.dims().iter().enumerate().map(|(k, &d)| if k % 2 == 0 { d as i64 } else { -(d as i64) }).sum();
    ensure(alt == 0, format!("alternating sum {alt}"))?;
    let t = within(start, Duration::from_secs(1))?;
    Ok(format!("dims {got:?}, sequence exact, alternating sum 0, {t}"))
}

fn degree_one_convention() -> Check {
    let d2 = directed_disc(2).unwrap();
    let s1 = directed_sphere(1).unwrap();
    let mut got = Vec::new();
    for x in [&d2, &s1] {
        let (s, e) = (x.vertex("00").unwrap(), x.vertex("11").unwrap());
        let oracle = common::oracle_homology(x, 1, s, e);
        let cx = build_complex(x, 1, Field::Rational).unwrap();
        let lib = homology_table(&cx.complex).unwrap().dim(1, s, e);
        ensure(oracle == lib, format!("{}: library {lib}, oracle {oracle}", x.name()))?;
        got.push(lib);
    }
    ensure(got == [0, 0], format!("H1 at (00,11) = {got:?}"))?;
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d2.json");
    std::fs::write(&path, d2.to_json()).unwrap();
    let out = dihom::cli::run(["dihom", "homology", path.to_str().unwrap(), "--pair", "00,11"]);
    ensure(out.stdout.contains("unshifted"), "report lacks the convention note")?;
    Ok("H1(D2)(00,11) = H1(S1)(00,11) = 0, matching direct rank computation; note printed".into())
}

fn nonzero(m: BTreeMap<(usize, usize), usize>) -> BTreeMap<(usize, usize), usize> {
    m.into_iter().filter(|&(_, d)| d > 0).collect()
}

fn composition() -> Check {
    let f = Field::Rational;
    let mut triples = 0;
    let mut composed = 0;
    let mut exceptions = Vec::new();
    let sets: Vec<PrecubicalSet> = common::corpus().into_iter().filter(|x| x.total_cells() > 2).collect();
    for (k, x) in sets.iter().enumerate() {
        let max = degree_cap(x).min(2);
        for y in common::random_subsets(x, 2, 100 + k as u64) {
            let (ys, inc_yx) = sub(x, &y, "Y").unwrap();
            for z_in_y in common::random_subsets(&ys, 2, 200 + k as u64) {
                triples += 1;
                let z = SubsetSpec::new(x, &z_in_y.names(&ys)).unwrap();
                let xy = check_relative_pair(x, &y, max, f).unwrap().accepted;
                let yz = check_relative_pair(&ys, &z_in_y, max, f).unwrap().accepted;
                if !(xy && yz) {
                    continue;
                }
                composed += 1;
                let label = format!("{} / {:?} / {:?}", x.name(), y.names(x), z.names(x));
                if !check_relative_pair(x, &z, max, f).unwrap().accepted {
                    exceptions.push(format!("{label}: composite rejected"));
                    continue;
                }
                let (zs, inc_zx) = sub(x, &z, "Z").unwrap();
                let (_, inc_zy) = sub(&ys, &z_in_y, "Z").unwrap();
                let cy = build_complex(&ys, max, f).unwrap();
                let cz = build_complex(&zs, max, f).unwrap();
                let ext_zy = extend_subcomplex(&inc_zy, &cy).unwrap();
                let (f_yx, f_zx) = (AlgebraMorphism::from_morphism(&inc_yx), AlgebraMorphism::from_morphism(&inc_zx));
                for i in 0..=max {
                    let one = extend_presented(&present_chains(&cz, i).unwrap(), &f_zx).unwrap().dims().unwrap();
                    let two = extend_presented(&present_module(&ext_zy.complex.module(i)), &f_yx)
                        .unwrap()
                        .dims()
                        .unwrap();
                    if nonzero(one) != nonzero(two) {
                        exceptions.push(format!("{label}: degree {i} extension dims differ"));
                    }
                }
            }
        }
    }
    ensure(composed > 0, "no triple had both pairs accepted")?;
    ensure(exceptions.is_empty(), exceptions.join("; "))?;
    Ok(format!("{triples} nested triples, {composed} with both pairs accepted, 0 exceptions"))
}

fn domino_halves() -> (PrecubicalSet, SubsetSpec, SubsetSpec) {
    let d = domino();
    let x1 = SubsetSpec::closure_of(&d, &["aa"]).unwrap().0;
    let x2 = SubsetSpec::closure_of(&d, &["ba"]).unwrap().0;
    (d, x1, x2)
}

fn mayer_vietoris_domino() -> Check {
    let start = Instant::now();
    let (d, x1, x2) = domino_halves();
    let cover = good_cover_check(&d, &x1, &x2, 2, Field::Rational).unwrap();
    ensure(cover.good, format!("cover rejected: {cover:?}"))?;
    let seq = mayer_vietoris(&d, &x1, &x2, 2, Field::Rational).unwrap();
    ensure(seq.exact(), format!("not exact: {:?}", seq.first_failure()))?;
    let nodes: usize = seq.sequences.iter().map(|s| s.nodes.len()).sum();
    let t = within(start, Duration::from_secs(5))?;
    Ok(format!("good cover, {} pairs, {nodes} nodes exact, {t}", seq.sequences.len()))
}

fn eilenberg_zilber() -> Check {
    let start = Instant::now();
    let k = directed_segment();
    let s1 = directed_sphere(1).unwrap();
    let d2 = directed_disc(2).unwrap();
    for (x, y) in [(&k, &k), (&s1, &s1), (&d2, &k)] {
        let r = ez_verify(x, y, 2, Field::Rational).unwrap();
        ensure(r.passed(), format!("{} x {}: {r:?}", x.name(), y.name()))?;
    }
    let t = within(start, Duration::from_secs(10))?;
    Ok(format!("(K,K), (S1,S1), (D2,K) through degree 2, {t}"))
}

fn kunneth() -> Check {
    let f = Field::Rational;
    let s1 = directed_sphere(1).unwrap();
    let tp = TensorProduct::new(&s1, &s1);
    let (s, e) = (tp.vertex(s1.vertex("00").unwrap(), s1.vertex("00").unwrap()), tp.vertex(s1.vertex("11").unwrap(), s1.vertex("11").unwrap()));
    let h1 = common::oracle_homology(&tp.set, 1, s, e);
    let lib = homology_table(&build_complex(&tp.set, 1, f).unwrap().complex).unwrap().dim(1, s, e);
    ensure(h1 == 0 && lib == 0, format!("H1(S1 x S1) at extremes: oracle {h1}, library {lib}"))?;
    let k = directed_segment();
    for n in 1..=3 {
        let d = directed_disc(n).unwrap();
        let (s, e) = (d.vertex(&"0".repeat(n)).unwrap(), d.vertex(&"1".repeat(n)).unwrap());
        let dims: Vec<usize> = (0..=2).map(|i| common::oracle_homology(&d, i, s, e)).collect();
        let lib = homology_table(&build_complex(&d, 2, f).unwrap().complex).unwrap();
        let lib_dims: Vec<usize> = (0..=2).map(|i| lib.dim(i, s, e)).collect();
        ensure(dims == [1, 0, 0] && lib_dims == dims, format!("D{n}: oracle {dims:?}, library {lib_dims:?}"))?;
    }
    let d2 = directed_disc(2).unwrap();
    for (x, y) in [(&s1, &s1), (&k, &k), (&d2, &k), (&common::parallel_circle(), &common::parallel_circle())] {
        let r = kunneth_check(x, y, 2, f).unwrap();
        ensure(r.holds(), format!("{} x {}: {:?}", x.name(), y.name(), r.mismatches().next()))?;
    }
    Ok("H1(S1 x S1) = 0 at extremes; D1..D3 extremes (1,0,0); identity holds at every pair".into())
}

fn obstruction() -> Check {
    let k = directed_segment();
    let r = degree_zero_obstruction(&k, &k, Field::Rational).unwrap();
    ensure(r.tensors_degree0 == 9, format!("pure tensors {}", r.tensors_degree0))?;
    ensure(r.chains_degree0 != r.tensors_degree0, "degree-0 sizes agree")?;
    ensure(r.chains_degree1 == 1, format!("degree-1 chains {}", r.chains_degree1))?;
    Ok(format!(
        "{} cube chains vs {} pure tensors in degree 0; {} chain in degree 1",
        r.chains_degree0, r.tensors_degree0, r.chains_degree1
    ))
}

fn chains_of_type(x: &PrecubicalSet, seq: &[usize]) -> Vec<CubeChain> {
    let dim: usize = seq.iter().map(|n| n - 1).sum();
    let mut out = Vec::new();
    for s in 0..x.count(0) {
        for e in 0..x.count(0) {
            out.extend(enumerate_chains(x, dim, s, e).unwrap().into_iter().filter(|c| c.type_seq() == seq));
        }
    }
    out
}

fn lemma_suite() -> Check {
    let mut seqs = common::small_sequences();
    seqs.extend(common::random_sequences(3, 3, 5));
    for seq in &seqs {
        let r = realization(seq).unwrap();
        let chains = enumerate_chains(&r.set, r.dimension(), r.start, r.end).unwrap();
        ensure(chains.len() == 1, format!("{seq:?}: {} top chains", chains.len()))?;
        ensure(chains[0].type_seq() == *seq, format!("{seq:?}: chain of type {:?}", chains[0].type_seq()))?;
    }
    let targets = [
        directed_disc(2).unwrap(),
        directed_sphere(1).unwrap(),
        directed_disc(3).unwrap(),
        domino(),
        common::parallel_circle(),
    ];
    let mut pairs = 0;
    for x in &targets {
        ensure(x.total_cells() <= 30, format!("{} too large", x.name()))?;
        for seq in &seqs {
            let r = realization(seq).unwrap();
            let maps = all_morphisms(&r.set, x);
            let chains = chains_of_type(x, seq);
            ensure(
                maps.len() == chains.len(),
                format!("{} <- {seq:?}: {} morphisms, {} chains", x.name(), maps.len(), chains.len()),
            )?;
            let mut images: Vec<CubeChain> = maps
                .iter()
                .map(|m| CubeChain::new(x, r.blocks.iter().map(|&b| m.apply(b)).collect()).expect("image is a chain"))
                .collect();
            images.sort();
            images.dedup();
            ensure(images.len() == chains.len(), format!("{} <- {seq:?}: images not distinct", x.name()))?;
            pairs += 1;
        }
    }
    let mut swaps = 0;
    for x in [directed_segment(), directed_sphere(1).unwrap()] {
        let tp = TensorProduct::new(&x, &x);
        let cxy = build_complex(&tp.set, 1, Field::Rational).unwrap();
        for (s, e) in cxy.complex.pairs() {
            let d1 = common::boundary_matrix(&tp.set, 1, s, e).2;
            let base_rank = common::rank(d1.clone());
            for c in cxy.basis(0, s, e) {
                for k in 0..c.cubes.len().saturating_sub(1) {
                    let Ok(d) = swap(&tp, c, k) else { continue };
                    ensure(ez_f0(&tp, &d).unwrap() == ez_f0(&tp, c).unwrap(), "swap changed the separation")?;
                    let basis = enumerate_chains(&tp.set, 0, s, e).unwrap();
                    let mut aug = d1.clone();
                    let mut col = vec![BigRational::zero(); basis.len()];
                    col[basis.iter().position(|b| b == c).unwrap()] += common::one();
                    col[basis.iter().position(|b| b == &d).unwrap()] -= common::one();
                    if aug.is_empty() {
                        aug = col.iter().map(|_| vec![]).collect();
                    }
                    for (row, v) in aug.iter_mut().zip(col) {
                        row.push(v);
                    }
                    ensure(common::rank(aug) == base_rank, "swap difference is not a boundary")?;
                    swaps += 1;
                }
            }
        }
    }
    Ok(format!(
        "{} realizations unique; {pairs} (target, type) bijections; {swaps} swaps are boundaries with equal separation",
        seqs.len()
    ))
}

fn cross_field() -> Check {
    let p = Field::prime(1009).unwrap();
    let corpus = common::corpus();
    let mut entries = 0;
    for x in &corpus {
        let max = degree_cap(x);
        let cq = build_complex(x, max, Field::Rational).unwrap();
        let cp = build_complex(x, max, p).unwrap();
        let (hq, hp) = (homology_table(&cq.complex).unwrap(), homology_table(&cp.complex).unwrap());
        for (s, e) in cq.complex.pairs() {
            ensure(cq.dims(s, e) == cp.dims(s, e), format!("{}: chain dims differ", x.name()))?;
            for i in 0..=max {
                ensure(hq.dim(i, s, e) == hp.dim(i, s, e), format!("{}: H{i} differs", x.name()))?;
                entries += 1;
            }
        }
    }
    Ok(format!("{} sets, {entries} homology dimensions equal over Q and F_1009", corpus.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("structural suite", structural),
        ("square and circle values", example_values),
        ("degree-1 convention", degree_one_convention),
        ("relative-pair composition", composition),
        ("Mayer-Vietoris on the domino", mayer_vietoris_domino),
        ("Eilenberg-Zilber comparison", eilenberg_zilber),
        ("Kunneth", kunneth),
        ("degree-0 obstruction", obstruction),
        ("cube chain lemmas", lemma_suite),
        ("cross-field determinism", cross_field),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let result = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        match result {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", k + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
