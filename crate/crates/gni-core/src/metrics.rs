//! Graph recovery metrics over unordered vertex pairs, oracle selection and
//! Pearson correlation.

use crate::error::{Error, Result};
use crate::glasso::CandidatePath;
use crate::graph::AdjacencyGraph;

/// Edge confusion counts over unordered pairs, diagonal excluded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConfusionCounts {
    pub true_pos: usize,
    pub false_pos: usize,
    pub false_neg: usize,
    pub true_neg: usize,
}

pub fn edge_confusion(
    estimated: &AdjacencyGraph,
    truth: &AdjacencyGraph,
) -> Result<ConfusionCounts> {
    if estimated.p() != truth.p() {
        return Err(Error::DimensionMismatch(format!(
            "estimated graph has p={} but truth has p={}",
            estimated.p(),
            truth.p()
        )));
    }
    let p = truth.p();
    let mut counts = ConfusionCounts {
        true_pos: 0,
        false_pos: 0,
        false_neg: 0,
        true_neg: 0,
    };
    for k in 0..p {
        for l in (k + 1)..p {
            match (estimated.has_edge(k, l), truth.has_edge(k, l)) {
                (true, true) => counts.true_pos += 1,
                (true, false) => counts.false_pos += 1,
                (false, true) => counts.false_neg += 1,
                (false, false) => counts.true_neg += 1,
            }
        }
    }
    Ok(counts)
}

/// Precision, recall, F1 and structural Hamming distance. Ratios with a
/// zero denominator are 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Metrics {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub shd: usize,
}

pub fn metrics(counts: &ConfusionCounts) -> Metrics {
    let ratio = |num: usize, den: usize| if den == 0 { 0.0 } else { num as f64 / den as f64 };
    let precision = ratio(counts.true_pos, counts.true_pos + counts.false_pos);
    let recall = ratio(counts.true_pos, counts.true_pos + counts.false_neg);
    let f1 = if precision + recall > 0.0 {
        2.0 * precision * recall / (precision + recall)
    } else {
        0.0
    };
    Metrics {
        precision,
        recall,
        f1,
        shd: counts.false_pos + counts.false_neg,
    }
}

/// Candidate with the highest F1 against the known truth; ties toward the
/// sparser (earlier) candidate.
pub fn oracle_select(path: &CandidatePath, truth: &AdjacencyGraph) -> Result<usize> {
    if path.is_empty() {
        return Err(Error::EmptyPath);
    }
    let mut best = 0;
    let mut best_f1 = f64::NEG_INFINITY;
    for (i, adjacency) in path.adjacencies.iter().enumerate() {
        let f1 = metrics(&edge_confusion(adjacency, truth)?).f1;
        if f1 > best_f1 {
            best_f1 = f1;
            best = i;
        }
    }
    Ok(best)
}

pub fn pearson_correlation(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() {
        return Err(Error::DimensionMismatch(format!(
            "correlation inputs have lengths {} and {}",
            xs.len(),
            ys.len()
        )));
    }
    if xs.len() < 3 {
        return Err(Error::InvalidArgument(
            "correlation needs at least 3 points".into(),
        ));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    let mut sxy = 0.0;
    for (x, y) in xs.iter().zip(ys.iter()) {
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
        sxy += (x - mx) * (y - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::ZeroVariance("pearson correlation".into()));
    }
    Ok((sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0))
}
