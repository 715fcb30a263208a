#![allow(dead_code)]

use std::collections::BTreeSet;

use dihom::cubechain::{boundary, enumerate_chains, CubeChain};
use dihom::precubical::{
    directed_disc, directed_segment, directed_sphere, domino, point, realization, tensor, PrecubicalSet, SubsetSpec,
};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Two parallel edges `x, y : 1 -> 2`.
pub fn parallel_circle() -> PrecubicalSet {
    PrecubicalSet::builder("S1p").vertices(&["1", "2"]).edge("x", "1", "2").edge("y", "1", "2").build().unwrap()
}

/// Sequences `(n_1, ..., n_l)` with `1 <= l <= 3` and `sum (n_k - 1) <= 2`.
pub fn small_sequences() -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = vec![vec![]];
    while let Some(seq) = stack.pop() {
        if !seq.is_empty() {
            out.push(seq.clone());
        }
        if seq.len() == 3 {
            continue;
        }
        let used: usize = seq.iter().map(|n| n - 1).sum();
        for n in 1..=3 {
            if used + n - 1 <= 2 {
                let mut next = seq.clone();
                next.push(n);
                stack.push(next);
            }
        }
    }
    out.sort();
    out
}

/// Seeded random sequences of cube sizes with `sum (n_k - 1) = dim`.
pub fn random_sequences(dim: usize, count: usize, seed: u64) -> Vec<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut seq = Vec::new();
            let mut left = dim;
            while left > 0 || seq.is_empty() {
                let n = rng.gen_range(1..=left + 1);
                seq.push(n);
                left -= n - 1;
                if seq.len() > 4 {
                    seq.push(left + 1);
                    break;
                }
            }
            seq
        })
        .collect()
}

/// Face-closed subsets of `x`: closures of random cell selections, seeded.
pub fn random_subsets(x: &PrecubicalSet, count: usize, seed: u64) -> Vec<SubsetSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cells: Vec<_> = x.all_cells().collect();
    let mut out = Vec::new();
    while out.len() < count {
        let pick: BTreeSet<_> = cells.iter().copied().filter(|_| rng.gen_bool(0.3)).collect();
        if pick.is_empty() {
            continue;
        }
        let names: Vec<&str> = pick.iter().map(|&c| x.cell_name(c)).collect();
        out.push(SubsetSpec::closure_of(x, &names).unwrap().0);
    }
    out
}

/// The structural corpus: discs, spheres, all small realizations, random realizations of
/// dimension 3, ten random face-closed
/// subsets of `D^3`, and a few hand-made sets.
pub fn corpus() -> Vec<PrecubicalSet> {
    let mut out = vec![point(), directed_segment(), domino(), parallel_circle()];
    for n in 1..=3 {
        out.push(directed_disc(n).unwrap());
        out.push(directed_sphere(n - 1).unwrap());
    }
    out.push(tensor(&directed_segment(), &directed_segment()));
    for seq in small_sequences() {
        out.push(realization(&seq).unwrap().set);
    }
    for seq in random_sequences(3, 3, 5) {
        out.push(realization(&seq).unwrap().set);
    }
    let d3 = directed_disc(3).unwrap();
    for (k, spec) in random_subsets(&d3, 10, 7).into_iter().enumerate() {
        let (s, _) = dihom::precubical::sub(&d3, &spec, &format!("D3-sub{k}")).unwrap();
        out.push(s);
    }
    out
}

/// Rank of a rational matrix by plain Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &pivot;
                for j in c..ncols {
                    let d = &f * &rows[r][j];
                    rows[i][j] -= d;
                }
            }
        }
        r += 1;
    }
    r
}

/// The matrix of `∂_i` at `(s, e)` built from chain enumeration and boundary sums.
pub fn boundary_matrix(x: &PrecubicalSet, i: usize, s: usize, e: usize) -> (usize, usize, Vec<Vec<BigRational>>) {
    let cols: Vec<CubeChain> = enumerate_chains(x, i, s, e).unwrap();
    let rows: Vec<CubeChain> = if i == 0 { vec![] } else { enumerate_chains(x, i - 1, s, e).unwrap() };
    let mut m = vec![vec![BigRational::zero(); cols.len()]; rows.len()];
    if i > 0 {
        for (j, c) in cols.iter().enumerate() {
            for (d, k) in boundary(x, c).unwrap().iter() {
                let r = rows.iter().position(|x| x == d).expect("boundary term is a chain");
                m[r][j] += BigRational::from_integer(k.into());
            }
        }
    }
    (rows.len(), cols.len(), m)
}

/// `dim H_i(s, e)` by direct rank computation.
pub fn oracle_homology(x: &PrecubicalSet, i: usize, s: usize, e: usize) -> usize {
    let (_, n, d_out) = boundary_matrix(x, i, s, e);
    let (_, _, d_in) = boundary_matrix(x, i + 1, s, e);
    n - rank(d_out) - rank(d_in)
}

pub fn one() -> BigRational {
    BigRational::one()
}
