//! Relative pairs, quotient complexes, long exact sequences and Mayer–Vietoris.
//!
//! Every sequence is assembled per vertex pair and then checked node by node:
//! a node is exact when the rank of the incoming map equals the nullity of the
//! outgoing one and the two compose to zero.

mod les;
mod mv;
mod quotient;
mod relative;

use serde::Serialize;

use crate::error::Error;
use crate::exactla::{LinAlgError, Matrix};

pub use les::{connecting_map, les_from_ses, les_relative, ShortExact};
pub use mv::{good_cover_check, mayer_vietoris, CoverData, GoodCoverReport};
pub use quotient::{cokernel, relative_complex, QuotientComplex};
pub use relative::{check_relative_pair, extended_homology_check, MonicityEntry, RelativePairReport};

#[derive(Clone, Debug, Serialize)]
pub struct SeqNode {
    pub label: String,
    pub dim: usize,
    pub rank_in: usize,
    pub kernel_out: usize,
    pub exact: bool,
    /// False for a node whose incoming map lies outside the computed range.
    pub checked: bool,
}

/// One sequence `V_0 -> V_1 -> ... -> V_n` at a fixed vertex pair.
#[derive(Clone, Debug, Serialize)]
pub struct PairSequence {
    pub src: String,
    pub dst: String,
    pub nodes: Vec<SeqNode>,
    #[serde(skip)]
    pub maps: Vec<Matrix>,
}

impl PairSequence {
    pub fn exact(&self) -> bool {
        self.nodes.iter().all(|n| n.exact || !n.checked)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.nodes.iter().map(|n| n.dim).collect()
    }

    /// Marks node `k` as outside the verified range.
    pub fn unchecked(mut self, k: usize) -> Self {
        self.nodes[k].checked = false;
        self
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ExactSequenceReport {
    pub sequences: Vec<PairSequence>,
}

impl ExactSequenceReport {
    pub fn exact(&self) -> bool {
        self.sequences.iter().all(PairSequence::exact)
    }

    pub fn at(&self, src: &str, dst: &str) -> Option<&PairSequence> {
        self.sequences.iter().find(|p| p.src == src && p.dst == dst)
    }

    /// The first inexact node, as `(src, dst, label)`.
    pub fn first_failure(&self) -> Option<(&str, &str, &str)> {
        self.sequences.iter().find_map(|p| {
            p.nodes.iter().find(|n| n.checked && !n.exact).map(|n| (p.src.as_str(), p.dst.as_str(), n.label.as_str()))
        })
    }
}

/// Checks `im = ker` at every node of `maps[k] : V_k -> V_{k+1}`. The first node has
/// no incoming map and the last no outgoing one.
pub fn verify_exact(labels: &[String], maps: &[Matrix]) -> Result<PairSequence, Error> {
    if maps.is_empty() || labels.len() != maps.len() + 1 {
        return Err(LinAlgError::DimensionMismatch { expected: maps.len() + 1, found: labels.len() }.into());
    }
    for w in maps.windows(2) {
        if w[0].rows() != w[1].cols() {
            return Err(LinAlgError::DimensionMismatch { expected: w[0].rows(), found: w[1].cols() }.into());
        }
    }
    let mut nodes = Vec::with_capacity(labels.len());
    for (k, label) in labels.iter().enumerate() {
        let dim = if k < maps.len() { maps[k].cols() } else { maps[k - 1].rows() };
        let rank_in = if k == 0 { 0 } else { maps[k - 1].rank() };
        let kernel_out = if k == maps.len() { dim } else { dim - maps[k].rank() };
        let composite_zero = k == 0 || k == maps.len() || maps[k].mul(&maps[k - 1])?.is_zero();
        nodes.push(SeqNode {
            label: label.clone(),
            dim,
            rank_in,
            kernel_out,
            exact: composite_zero && rank_in == kernel_out,
            checked: true,
        });
    }
    Ok(PairSequence { src: String::new(), dst: String::new(), nodes, maps: maps.to_vec() })
}
