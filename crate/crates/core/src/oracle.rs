//! Exact minimum Eulerian extension for small graphs by brute force.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, Vertex};

/// Largest vertex count accepted by [`min_extension_exact`].
pub const ORACLE_MAX_N: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("exact search is limited to n <= {ORACLE_MAX_N} (got n = {0}); use the extension engine instead")]
    TooLarge(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleAnswer {
    pub extendable: bool,
    pub min_edges: Option<usize>,
    pub witness: Option<Vec<(Vertex, Vertex)>>,
    /// Largest subset size that was searched.
    pub cap: usize,
}

struct Search<'a> {
    g: &'a Graph,
    edges: Vec<(Vertex, Vertex)>,
    masks: Vec<u16>,
    target: u16,
    chosen: Vec<usize>,
}

impl Search<'_> {
    /// Depth-first over `k`-subsets in lexicographic order, tracking the
    /// parity mask of the chosen edges.
    fn subsets(&mut self, start: usize, k: usize, parity: u16) -> bool {
        if k == 0 {
            return parity == self.target && self.connected_with_chosen();
        }
        for i in start..=self.edges.len() - k {
            self.chosen.push(i);
            if self.subsets(i + 1, k - 1, parity ^ self.masks[i]) {
                return true;
            }
            self.chosen.pop();
        }
        false
    }

    fn connected_with_chosen(&self) -> bool {
        let mut h = self.g.clone();
        for &i in &self.chosen {
            let (u, v) = self.edges[i];
            h.add_edge(u, v).expect("complement edge");
        }
        h.is_connected()
    }
}

/// Smallest set of complement edges whose addition leaves `g` connected
/// with all degrees even. Subsets are tried by increasing size from `t(G)`
/// up to `cap` (default `3 t(G)`), lexicographically within a size.
pub fn min_extension_exact(g: &Graph, cap: Option<usize>) -> Result<OracleAnswer, OracleError> {
    let n = g.n();
    if n > ORACLE_MAX_N {
        return Err(OracleError::TooLarge(n));
    }
    let t = g.t_value();
    let edges: Vec<_> = g.complement_edges().collect();
    let cap = cap.unwrap_or(3 * t).min(edges.len());
    let target = g.odd_vertices().iter().fold(0u16, |acc, &v| acc | 1 << v);
    let masks = edges.iter().map(|&(u, v)| (1u16 << u) | (1u16 << v)).collect();
    let mut search = Search { g, edges, masks, target, chosen: Vec::new() };
    for k in t..=cap {
        if search.subsets(0, k, 0) {
            let witness: Vec<_> = search.chosen.iter().map(|&i| search.edges[i]).collect();
            return Ok(OracleAnswer { extendable: true, min_edges: Some(k), witness: Some(witness), cap });
        }
    }
    Ok(OracleAnswer { extendable: false, min_edges: None, witness: None, cap })
}
