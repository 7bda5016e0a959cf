//! Simple undirected graphs over vertices `0..n` with bitset adjacency.
//!
//! Complement queries never materialize the complement graph: a vertex `z`
//! is a complement neighbour of `u` iff `z != u` and bit `z` of `adj[u]` is
//! clear.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;
use thiserror::Error;

pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("edge ({0}, {1}) already present")]
    EdgeExists(Vertex, Vertex),
    #[error("vertices of a pair must be distinct, got {0} twice")]
    SameVertex(Vertex),
}

/// Why a graph has no Eulerian circuit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NotEulerian {
    #[error("{} vertices have odd degree", .0.len())]
    OddVertices(Vec<Vertex>),
    #[error("edges are spread over more than one component")]
    Disconnected,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<FixedBitSet>,
    degrees: Vec<usize>,
    m: usize,
}

/// A closed walk using every edge of its host graph exactly once.
/// `vertices.first() == vertices.last()`; a graph without edges yields a
/// single-vertex walk (or an empty one when `n == 0`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerCircuit {
    pub vertices: Vec<Vertex>,
}

impl EulerCircuit {
    pub fn edge_count(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Self { adj: (0..n).map(|_| FixedBitSet::with_capacity(n)).collect(), degrees: vec![0; n], m: 0 }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.insert_unchecked(u, v);
            }
        }
        g
    }

    /// Builds a graph from a list of pairs. Duplicates (in either
    /// orientation) collapse to a single edge.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Self::new(n);
        for (u, v) in edges {
            g.check_pair(u, v)?;
            if !g.has_edge(u, v) {
                g.insert_unchecked(u, v);
            }
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    /// Degree of `v`. Panics if `v >= n`, like slice indexing.
    pub fn degree(&self, v: Vertex) -> usize {
        self.degrees[v]
    }

    pub fn checked_degree(&self, v: Vertex) -> Result<usize, GraphError> {
        self.check_vertex(v)?;
        Ok(self.degrees[v])
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn max_degree(&self) -> usize {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && v < self.n() && self.adj[u].contains(v)
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adj[v].ones()
    }

    /// Raw adjacency row of `v`.
    pub fn adjacency(&self, v: Vertex) -> &FixedBitSet {
        &self.adj[v]
    }

    /// Vertices `z != v` with `(v, z)` absent, in ascending order.
    pub fn complement_neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adj[v].zeroes().filter(move |&z| z != v)
    }

    pub fn complement_degree(&self, v: Vertex) -> usize {
        self.n() - 1 - self.degrees[v]
    }

    /// Adds the edge `(u, v)`, which must be a complement edge.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        self.check_pair(u, v)?;
        if self.has_edge(u, v) {
            return Err(GraphError::EdgeExists(u.min(v), u.max(v)));
        }
        self.insert_unchecked(u, v);
        Ok(())
    }

    fn insert_unchecked(&mut self, u: Vertex, v: Vertex) {
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        self.degrees[u] += 1;
        self.degrees[v] += 1;
        self.m += 1;
    }

    fn check_vertex(&self, v: Vertex) -> Result<(), GraphError> {
        if v >= self.n() {
            return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n() });
        }
        Ok(())
    }

    fn check_pair(&self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        Ok(())
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        (0..self.n()).flat_map(move |u| self.adj[u].ones().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// Complement edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn complement_edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        (0..self.n()).flat_map(move |u| self.adj[u].zeroes().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn odd_vertices(&self) -> Vec<Vertex> {
        (0..self.n()).filter(|&v| self.degrees[v] % 2 == 1).collect()
    }

    /// Half the number of odd-degree vertices.
    pub fn t_value(&self) -> usize {
        self.degrees.iter().filter(|&&d| d % 2 == 1).count() / 2
    }

    pub fn is_connected(&self) -> bool {
        if self.n() == 0 {
            return true;
        }
        self.reachable_from(0).count_ones(..) == self.n()
    }

    fn reachable_from(&self, start: Vertex) -> FixedBitSet {
        let mut seen = FixedBitSet::with_capacity(self.n());
        let mut queue = VecDeque::from([start]);
        seen.insert(start);
        while let Some(u) = queue.pop_front() {
            for w in self.adj[u].ones() {
                if !seen.put(w) {
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// Connectivity restricted to vertices of positive degree.
    pub fn is_connected_ignoring_isolated(&self) -> bool {
        let Some(start) = (0..self.n()).find(|&v| self.degrees[v] > 0) else {
            return true;
        };
        let seen = self.reachable_from(start);
        (0..self.n()).all(|v| self.degrees[v] == 0 || seen.contains(v))
    }

    /// Vertices adjacent to neither `u` nor `v`, excluding `u` and `v`.
    pub fn common_non_neighbors(&self, u: Vertex, v: Vertex) -> Result<Vec<Vertex>, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SameVertex(u));
        }
        let mut covered = self.adj[u].clone();
        covered.union_with(&self.adj[v]);
        covered.insert(u);
        covered.insert(v);
        Ok(covered.zeroes().collect())
    }

    /// `|common_non_neighbors(u, v)|` without allocating. Requires `u != v`.
    pub fn common_non_neighbor_count(&self, u: Vertex, v: Vertex) -> usize {
        debug_assert_ne!(u, v);
        let union = self.adj[u].union_count(&self.adj[v]);
        let extra = usize::from(!self.adj[v].contains(u)) * 2;
        self.n() - union - extra
    }

    /// Hierholzer extraction, always following the lowest-numbered unused
    /// edge. Isolated vertices do not count against connectivity.
    pub fn eulerian_circuit(&self) -> Result<EulerCircuit, NotEulerian> {
        let odd = self.odd_vertices();
        if !odd.is_empty() {
            return Err(NotEulerian::OddVertices(odd));
        }
        if !self.is_connected_ignoring_isolated() {
            return Err(NotEulerian::Disconnected);
        }
        let Some(start) = (0..self.n()).find(|&v| self.degrees[v] > 0) else {
            return Ok(EulerCircuit { vertices: if self.n() == 0 { vec![] } else { vec![0] } });
        };

        let mut remaining = self.adj.clone();
        let mut stack = vec![start];
        let mut circuit = Vec::with_capacity(self.m + 1);
        while let Some(&top) = stack.last() {
            match remaining[top].minimum() {
                Some(next) => {
                    remaining[top].remove(next);
                    remaining[next].remove(top);
                    stack.push(next);
                }
                None => circuit.push(stack.pop().expect("stack is non-empty")),
            }
        }
        circuit.reverse();
        debug_assert_eq!(circuit.len(), self.m + 1);
        Ok(EulerCircuit { vertices: circuit })
    }

    /// Checks that `circuit` is a closed walk using each edge of `self`
    /// exactly once.
    pub fn is_euler_circuit(&self, circuit: &EulerCircuit) -> bool {
        let walk = &circuit.vertices;
        if self.m == 0 {
            return walk.len() <= 1;
        }
        if walk.len() != self.m + 1 || walk.first() != walk.last() {
            return false;
        }
        let mut used = Graph::new(self.n());
        walk.windows(2).all(|w| self.has_edge(w[0], w[1]) && used.add_edge(w[0], w[1]).is_ok())
    }
}
