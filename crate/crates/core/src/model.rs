//! Independent-edge random graph models and their average edge statistics.

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("probability {value} at ({u}, {v}) is outside [0, 1]")]
    OutOfRange { u: Vertex, v: Vertex, value: f64 },
    #[error("matrix is not symmetric at ({u}, {v}): {forward} vs {backward}")]
    Asymmetric { u: Vertex, v: Vertex, forward: f64, backward: f64 },
    #[error("matrix must be {n} x {n}, got a row of length {len}")]
    Shape { n: usize, len: usize },
    #[error("example family needs 0 < b < a < 1, got a = {a}, b = {b}")]
    FamilyConstants { a: f64, b: f64 },
    #[error("example family needs n >= {min}, got {n}")]
    TooFewVertices { n: usize, min: usize },
    #[error("probability {0} is outside [0, 1]")]
    BadProbability(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ModelKind {
    Homogeneous { p: f64 },
    ExampleFamily { a: f64, b: f64 },
    Explicit,
}

/// Smallest `n` accepted by [`EdgeProbabilityModel::example_family`].
pub const EXAMPLE_FAMILY_MIN_N: usize = 16;

/// Symmetric edge-probability matrix `p(u, v)` over `0..n`; the diagonal is
/// unused.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeProbabilityModel {
    n: usize,
    kind: ModelKind,
    // Row-major n x n, only populated for `Explicit`.
    matrix: Vec<f64>,
    block: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum FamilyClass {
    One,
    Zero,
    A,
    B,
}

/// Per-vertex and global average edge probabilities of a model.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlphaStats {
    pub alpha_low: f64,
    pub alpha_up: f64,
    pub alpha_e: f64,
    #[serde(skip)]
    pub per_vertex_avg: Vec<f64>,
}

fn check_probability(p: f64) -> Result<(), ModelError> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(ModelError::BadProbability(p))
    }
}

/// `floor(n / ln n)`, the block size of the example family.
pub fn family_block_size(n: usize) -> usize {
    (n as f64 / (n as f64).ln()).floor() as usize
}

impl EdgeProbabilityModel {
    pub fn homogeneous(n: usize, p: f64) -> Result<Self, ModelError> {
        check_probability(p)?;
        Ok(Self { n, kind: ModelKind::Homogeneous { p }, matrix: Vec::new(), block: 0 })
    }

    /// The two-constant family with a dense block, an empty block, a
    /// Hamiltonian cycle and one vertex of elevated average probability.
    ///
    /// With `k = floor(n / ln n)` and 0-based vertices, rules in priority
    /// order: edges at vertex `n - 1` get `a`; cycle edges `(i, i + 1)` and
    /// pairs inside `0..k` get 1; pairs inside `k..2k` get 0; all else `b`.
    pub fn example_family(n: usize, a: f64, b: f64) -> Result<Self, ModelError> {
        if !(0.0 < b && b < a && a < 1.0) {
            return Err(ModelError::FamilyConstants { a, b });
        }
        if n < EXAMPLE_FAMILY_MIN_N {
            return Err(ModelError::TooFewVertices { n, min: EXAMPLE_FAMILY_MIN_N });
        }
        Ok(Self { n, kind: ModelKind::ExampleFamily { a, b }, matrix: Vec::new(), block: family_block_size(n) })
    }

    /// Full square matrix; must be symmetric off the diagonal.
    pub fn explicit(rows: Vec<Vec<f64>>) -> Result<Self, ModelError> {
        let n = rows.len();
        let mut matrix = vec![0.0; n * n];
        for (u, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(ModelError::Shape { n, len: row.len() });
            }
            for (v, &value) in row.iter().enumerate() {
                if u != v && !(0.0..=1.0).contains(&value) {
                    return Err(ModelError::OutOfRange { u, v, value });
                }
                matrix[u * n + v] = value;
            }
        }
        for u in 0..n {
            for v in u + 1..n {
                let (forward, backward) = (matrix[u * n + v], matrix[v * n + u]);
                if forward != backward {
                    return Err(ModelError::Asymmetric { u, v, forward, backward });
                }
            }
        }
        Ok(Self { n, kind: ModelKind::Explicit, matrix, block: 0 })
    }

    /// Strictly lower-triangular rows: row `i` (for `i = 1..n`) holds
    /// `p(i, 0) .. p(i, i - 1)`.
    pub fn from_lower_triangular(n: usize, rows: &[Vec<f64>]) -> Result<Self, ModelError> {
        let mut full = vec![vec![0.0; n]; n];
        let expected = n.saturating_sub(1);
        if rows.len() != expected {
            return Err(ModelError::Shape { n: expected, len: rows.len() });
        }
        for (i, row) in rows.iter().enumerate() {
            let u = i + 1;
            if row.len() != u {
                return Err(ModelError::Shape { n: u, len: row.len() });
            }
            for (v, &value) in row.iter().enumerate() {
                full[u][v] = value;
                full[v][u] = value;
            }
        }
        Self::explicit(full)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> &ModelKind {
        &self.kind
    }

    fn family_class(&self, u: Vertex, v: Vertex) -> FamilyClass {
        let (u, v) = (u.min(v), u.max(v));
        let k = self.block;
        if v == self.n - 1 {
            FamilyClass::A
        } else if v == u + 1 || v < k {
            FamilyClass::One
        } else if k <= u && v < 2 * k {
            FamilyClass::Zero
        } else {
            FamilyClass::B
        }
    }

    /// Edge probability for `u != v`.
    pub fn p(&self, u: Vertex, v: Vertex) -> f64 {
        debug_assert!(u != v && u < self.n && v < self.n);
        match self.kind {
            ModelKind::Homogeneous { p } => p,
            ModelKind::Explicit => self.matrix[u * self.n + v],
            ModelKind::ExampleFamily { a, b } => match self.family_class(u, v) {
                FamilyClass::One => 1.0,
                FamilyClass::Zero => 0.0,
                FamilyClass::A => a,
                FamilyClass::B => b,
            },
        }
    }

    /// Draws one graph: for each pair `u < v` in lexicographic order, one
    /// uniform `x` in `[0, 1)` and the edge is kept iff `x < p(u, v)`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Graph {
        let mut g = Graph::new(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                let x: f64 = rng.random();
                if x < self.p(u, v) {
                    g.add_edge(u, v).expect("fresh pair");
                }
            }
        }
        g
    }

    /// Average edge statistics. Requires `n >= 2`.
    ///
    /// Averages are accumulated as `sum(count / total * value)` over
    /// distinct probability values, so a vertex whose incident
    /// probabilities all equal `p` averages to exactly `p`.
    pub fn alpha_stats(&self) -> AlphaStats {
        let n = self.n;
        assert!(n >= 2, "alpha statistics need at least two vertices");
        let deg_total = (n - 1) as f64;
        let pairs = (n * (n - 1) / 2) as f64;
        let (per_vertex_avg, alpha_e) = match self.kind {
            ModelKind::Homogeneous { p } => (vec![p; n], p),
            ModelKind::Explicit => {
                let mut per_vertex = vec![0.0; n];
                let mut total = 0.0;
                for u in 0..n {
                    let row = &self.matrix[u * n..(u + 1) * n];
                    let sum: f64 = row.iter().enumerate().filter(|&(v, _)| v != u).map(|(_, &p)| p).sum();
                    per_vertex[u] = sum / deg_total;
                    total += row[u + 1..].iter().sum::<f64>();
                }
                (per_vertex, total / pairs)
            }
            ModelKind::ExampleFamily { a, b } => {
                let values = [1.0, 0.0, a, b];
                let mut global = [0usize; 4];
                let per_vertex = (0..n)
                    .map(|w| {
                        let counts = self.family_counts(w);
                        for (g, c) in global.iter_mut().zip(counts) {
                            *g += c;
                        }
                        weighted_mean(&counts, &values, deg_total)
                    })
                    .collect();
                // each pair was counted from both ends
                let global = global.map(|c| c / 2);
                (per_vertex, weighted_mean(&global, &values, pairs))
            }
        };
        let alpha_low = per_vertex_avg.iter().copied().fold(f64::INFINITY, f64::min);
        let alpha_up = per_vertex_avg.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        AlphaStats { alpha_low, alpha_up, alpha_e, per_vertex_avg }
    }

    /// Closed-form counts of incident pairs of vertex `w` per class, in the
    /// order (one, zero, a, b).
    fn family_counts(&self, w: Vertex) -> [usize; 4] {
        let (n, k) = (self.n, self.block);
        let last = n - 1;
        if w == last {
            return [0, 0, n - 1, 0];
        }
        let has_prev = w >= 1;
        let has_next = w + 1 < last;
        let (ones, zeros) = if w < k {
            // block mates, plus the cycle step leaving the block
            (k - 1 + usize::from(w + 1 == k && has_next), 0)
        } else if w < 2 * k {
            let cycle = usize::from(has_prev) + usize::from(has_next);
            let cycle_in_block = usize::from(w > k) + usize::from(w + 1 < 2 * k && has_next);
            (cycle, k - 1 - cycle_in_block)
        } else {
            (usize::from(has_prev) + usize::from(has_next), 0)
        };
        let a_count = 1;
        [ones, zeros, a_count, n - 1 - ones - zeros - a_count]
    }
}

fn weighted_mean(counts: &[usize; 4], values: &[f64; 4], total: f64) -> f64 {
    counts.iter().zip(values).filter(|(&c, _)| c > 0).map(|(&c, &v)| c as f64 / total * v).sum()
}
