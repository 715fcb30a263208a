use super::PathAlgebraIndex;
use crate::error::Error;
use crate::exactla::Matrix;
use crate::graded::PairModule;

/// A bimodule read as a left module over `A ⊗ B^op`: the idempotent `(s, e)` picks out
/// block `(s, e)`, and `a ⊗ b^op` acts by `m ↦ a · m · b`.
#[derive(Clone, Debug)]
pub struct SmashModule {
    module: PairModule,
    paths: PathAlgebraIndex,
}

pub fn smash(m: &PairModule) -> SmashModule {
    SmashModule { module: m.clone(), paths: PathAlgebraIndex::new(m.shared_quiver()) }
}

impl SmashModule {
    pub fn underlying(&self) -> &PairModule {
        &self.module
    }

    pub fn dim(&self, s: usize, e: usize) -> usize {
        self.module.dim(s, e)
    }

    pub fn total_dim(&self) -> usize {
        self.module.total_dim()
    }

    /// `a ⊗ b^op` on block `(s, e)`, with `a` a path into `s` and `b` a path out of `e`.
    pub fn act(&self, a: &[usize], b: &[usize], s: usize, e: usize) -> Result<Matrix, Error> {
        let q = self.module.quiver();
        let e2 = b.last().map_or(e, |&x| q.arc(x).1);
        let right = self.module.right_path_action(b, s, e)?;
        self.module.left_path_action(a, s, e2)?.mul(&right).map_err(Into::into)
    }

    /// Checks `(a' ⊗ b'^op)(a ⊗ b^op) = a'a ⊗ (bb')^op` for all composable paths.
    pub fn check_associativity(&self) -> Result<bool, Error> {
        let q = self.module.quiver();
        let n = q.vertex_count();
        for (s, e) in self.module.pairs() {
            for s1 in 0..n {
                for e1 in 0..n {
                    for a in self.paths.paths(s1, s) {
                        for b in self.paths.paths(e, e1) {
                            let first = self.act(a, b, s, e)?;
                            for s2 in 0..n {
                                for e2 in 0..n {
                                    for a2 in self.paths.paths(s2, s1) {
                                        for b2 in self.paths.paths(e1, e2) {
                                            let two = self.act(a2, b2, s1, e1)?.mul(&first)?;
                                            let one = self.act(&[a2.as_slice(), a].concat(), &[b.as_slice(), b2].concat(), s, e)?;
                                            if two != one {
                                                return Ok(false);
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubechain::build_complex;
    use crate::exactla::Field;
    use crate::graded::Quiver;
    use crate::homology::homology_table;
    use crate::precubical::{directed_disc, directed_segment};
    use crate::scalars::unit_presentation;
    use std::sync::Arc;

    #[test]
    fn unit_of_segment_has_three_dimensions() {
        let quiver = Arc::new(Quiver::of(&directed_segment()));
        let u = unit_presentation(Field::Rational, quiver).resolve().unwrap();
        let sm = smash(&u);
        assert_eq!(sm.total_dim(), 3);
        assert!(sm.check_associativity().unwrap());
    }

    #[test]
    fn smash_of_chains_acts_on_both_sides() {
        let d2 = directed_disc(2).unwrap();
        let cx = build_complex(&d2, 1, Field::Rational).unwrap();
        let m = homology_table(&cx.complex).unwrap().module(0).clone();
        let sm = smash(&m);
        assert_eq!(sm.total_dim(), m.total_dim());
        assert!(sm.check_associativity().unwrap());
        let q = m.quiver();
        let (s, e) = (q.vertex("00").unwrap(), q.vertex("10").unwrap());
        let a = q.arcs().iter().position(|&(u, v)| (u, v) == (s, e)).unwrap();
        let b = q.arcs().iter().position(|&(u, _)| u == e).unwrap();
        let both = sm.act(&[a], &[b], e, e).unwrap();
        let t = q.arc(b).1;
        let split = m.left_action(a, t).mul(&m.right_action(b, e)).unwrap();
        assert_eq!(both, split);
    }
}
