//! Binary adjacency graphs over variables and their neighborhood weights.

use crate::error::{Error, Result};

/// Symmetric binary p x p adjacency matrix with zero diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyGraph {
    p: usize,
    entries: Vec<bool>, // row-major p*p
}

impl AdjacencyGraph {
    pub fn empty(p: usize) -> Result<Self> {
        if p < 1 {
            return Err(Error::InvalidArgument("graph needs at least one vertex".into()));
        }
        Ok(Self {
            p,
            entries: vec![false; p * p],
        })
    }

    pub fn complete(p: usize) -> Result<Self> {
        let mut g = Self::empty(p)?;
        for k in 0..p {
            for l in (k + 1)..p {
                g.set_edge(k, l, true)?;
            }
        }
        Ok(g)
    }

    /// Builds a graph from a row-major 0/1 matrix, validating symmetry and
    /// the zero diagonal.
    pub fn from_entries(p: usize, entries: &[u8]) -> Result<Self> {
        if entries.len() != p * p {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries for p={}, got {}",
                p * p,
                p,
                entries.len()
            )));
        }
        let mut g = Self::empty(p)?;
        for k in 0..p {
            for l in 0..p {
                let v = entries[k * p + l];
                if v > 1 {
                    return Err(Error::InvalidArgument(format!(
                        "adjacency entry ({k},{l}) = {v}, expected 0 or 1"
                    )));
                }
                if k == l && v != 0 {
                    return Err(Error::InvalidArgument(format!(
                        "adjacency diagonal entry ({k},{k}) must be 0"
                    )));
                }
                if entries[k * p + l] != entries[l * p + k] {
                    return Err(Error::InvalidArgument(format!(
                        "adjacency matrix not symmetric at ({k},{l})"
                    )));
                }
                g.entries[k * p + l] = v == 1;
            }
        }
        Ok(g)
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn has_edge(&self, k: usize, l: usize) -> bool {
        k != l && self.entries[k * self.p + l]
    }

    pub fn set_edge(&mut self, k: usize, l: usize, present: bool) -> Result<()> {
        if k >= self.p || l >= self.p {
            return Err(Error::IndexOutOfRange {
                index: k.max(l),
                len: self.p,
            });
        }
        if k == l {
            return Err(Error::InvalidArgument("self-loops are not allowed".into()));
        }
        self.entries[k * self.p + l] = present;
        self.entries[l * self.p + k] = present;
        Ok(())
    }

    pub fn edge_count(&self) -> usize {
        let mut count = 0;
        for k in 0..self.p {
            for l in (k + 1)..self.p {
                if self.entries[k * self.p + l] {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn degree(&self, w: usize) -> usize {
        self.entries[w * self.p..(w + 1) * self.p]
            .iter()
            .filter(|&&e| e)
            .count()
    }

    /// Vertices adjacent to `w`, in increasing index order.
    pub fn neighbors(&self, w: usize) -> Result<Vec<usize>> {
        if w >= self.p {
            return Err(Error::IndexOutOfRange {
                index: w,
                len: self.p,
            });
        }
        Ok(self.entries[w * self.p..(w + 1) * self.p]
            .iter()
            .enumerate()
            .filter_map(|(l, &e)| e.then_some(l))
            .collect())
    }

    /// Row-major 0/1 bytes, the inverse of [`AdjacencyGraph::from_entries`].
    pub fn to_entries(&self) -> Vec<u8> {
        self.entries.iter().map(|&e| u8::from(e)).collect()
    }

    /// Relabels vertices: vertex k of the result is vertex perm[k] of self.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.p {
            return Err(Error::DimensionMismatch(
                "permutation length differs from vertex count".into(),
            ));
        }
        let mut g = Self::empty(self.p)?;
        for k in 0..self.p {
            for l in (k + 1)..self.p {
                if self.has_edge(perm[k], perm[l]) {
                    g.set_edge(k, l, true)?;
                }
            }
        }
        Ok(g)
    }
}

/// Per-vertex prediction weights: 1/degree for connected vertices, 1 for
/// isolated ones.
#[derive(Debug, Clone, PartialEq)]
pub struct NeighborWeights {
    d: Vec<f64>,
}

impl NeighborWeights {
    pub fn values(&self) -> &[f64] {
        &self.d
    }
}

pub fn neighbor_weights(graph: &AdjacencyGraph) -> NeighborWeights {
    let d = (0..graph.p())
        .map(|w| {
            let deg = graph.degree(w);
            if deg == 0 {
                1.0
            } else {
                1.0 / deg as f64
            }
        })
        .collect();
    NeighborWeights { d }
}
