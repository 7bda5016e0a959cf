//! Linear Eulerian extension of a connected graph.
//!
//! The odd-degree vertices are repaired in three phases, each adding only
//! complement edges:
//!
//! 1. **pairing**: greedily join non-adjacent odd vertices by a single edge
//!    until the unmatched odd vertices form a clique;
//! 2. **two-path**: join two clique vertices through a common complement
//!    neighbour `z` outside the clique (`z` gains degree 2);
//! 3. **three-path**: for each remaining pair `(u, v)`, add a path
//!    `u - y - z - v` whose three edges are all absent, first by uniform
//!    random sampling of `(y, z)` and then by an exhaustive scan.
//!
//! Each resolved pair costs at most 3 edges, so a successful run adds at
//! most `3 t(G)` edges.

use fixedbitset::FixedBitSet;
use rand::Rng;
use serde::Serialize;

use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase {
    Pairing,
    TwoPath,
    ThreePath,
}

impl Phase {
    pub fn as_str(self) -> &'static str {
        match self {
            Phase::Pairing => "pairing",
            Phase::TwoPath => "two_path",
            Phase::ThreePath => "three_path",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AddedEdge {
    pub u: Vertex,
    pub v: Vertex,
    pub phase: Phase,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FailureReason {
    DisconnectedInput,
    /// No complement path `u - y - z - v` exists for this pair.
    NoThreePath {
        u: Vertex,
        v: Vertex,
    },
    /// Some odd vertex is already adjacent to every other vertex, so no
    /// extension exists at all.
    NotExtendable {
        saturated: Vertex,
    },
}

impl FailureReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            FailureReason::DisconnectedInput => "disconnected_input",
            FailureReason::NoThreePath { .. } => "no_three_path",
            FailureReason::NotExtendable { .. } => "not_extendable",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExtensionPolicy {
    /// Random `(y, z)` draws per three-path pair before the exhaustive
    /// scan; `None` means `64 * ceil(ln n)`.
    pub max_random_attempts: Option<usize>,
}

impl Default for ExtensionPolicy {
    fn default() -> Self {
        Self { max_random_attempts: None }
    }
}

impl ExtensionPolicy {
    pub fn attempts_for(&self, n: usize) -> usize {
        self.max_random_attempts.unwrap_or_else(|| 64 * (n.max(2) as f64).ln().ceil() as usize)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtensionResult {
    pub added_edges: Vec<AddedEdge>,
    /// `t(G)` of the input graph.
    pub t_input: usize,
    pub success: bool,
    pub failure_reason: Option<FailureReason>,
    /// Random draws spent in phase 3.
    pub attempts_phase3: usize,
    /// Pairs left for phase 3 after the first two phases.
    pub residual_pairs: usize,
}

impl ExtensionResult {
    pub fn edges_added(&self) -> usize {
        self.added_edges.len()
    }

    pub fn phase_count(&self, phase: Phase) -> usize {
        self.added_edges.iter().filter(|e| e.phase == phase).count()
    }

    pub fn within_budget(&self) -> bool {
        self.added_edges.len() <= 3 * self.t_input
    }

    /// `g` plus the added edges.
    pub fn apply(&self, g: &Graph) -> Result<Graph, crate::graph::GraphError> {
        let mut h = g.clone();
        for e in &self.added_edges {
            h.add_edge(e.u, e.v)?;
        }
        Ok(h)
    }

    fn failure(t_input: usize, reason: FailureReason) -> Self {
        Self {
            added_edges: Vec::new(),
            t_input,
            success: false,
            failure_reason: Some(reason),
            attempts_phase3: 0,
            residual_pairs: 0,
        }
    }
}

/// Mutable working graph plus the edge log of a run.
#[derive(Debug, Clone)]
pub struct Augmentation {
    pub graph: Graph,
    pub added: Vec<AddedEdge>,
}

impl Augmentation {
    pub fn new(graph: Graph) -> Self {
        Self { graph, added: Vec::new() }
    }

    fn add(&mut self, u: Vertex, v: Vertex, phase: Phase) {
        self.graph.add_edge(u, v).expect("extension only adds complement edges");
        self.added.push(AddedEdge { u: u.min(v), v: u.max(v), phase });
    }
}

/// Phase 1. Scans `odd` in ascending order and joins each unmatched vertex
/// to the smallest later unmatched vertex it is not adjacent to. Returns
/// the unmatched vertices, which are pairwise adjacent.
pub fn phase_pairing(aug: &mut Augmentation, odd: &[Vertex]) -> Vec<Vertex> {
    let mut odd = odd.to_vec();
    odd.sort_unstable();
    let mut matched = vec![false; odd.len()];
    let mut residual = Vec::new();
    for i in 0..odd.len() {
        if matched[i] {
            continue;
        }
        let x = odd[i];
        let partner = (i + 1..odd.len()).find(|&j| !matched[j] && !aug.graph.has_edge(x, odd[j]));
        match partner {
            Some(j) => {
                matched[i] = true;
                matched[j] = true;
                aug.add(x, odd[j], Phase::Pairing);
            }
            None => residual.push(x),
        }
    }
    residual
}

/// Phase 2. While two unmatched clique vertices share a complement
/// neighbour outside the clique, join them through it (lexicographically
/// smallest pair, then smallest `z`). Returns the unmatched vertices.
pub fn phase_clique_reduction(aug: &mut Augmentation, clique: &[Vertex]) -> Vec<Vertex> {
    let n = aug.graph.n();
    let mut remaining = clique.to_vec();
    remaining.sort_unstable();
    let mut excluded = FixedBitSet::with_capacity(n);
    for &a in &remaining {
        excluded.insert(a);
    }
    let mut covered = FixedBitSet::with_capacity(n);
    'search: loop {
        for i in 0..remaining.len() {
            for j in i + 1..remaining.len() {
                let (a, b) = (remaining[i], remaining[j]);
                covered.clone_from(aug.graph.adjacency(a));
                covered.union_with(aug.graph.adjacency(b));
                covered.union_with(&excluded);
                if let Some(z) = covered.zeroes().next() {
                    aug.add(a, z, Phase::TwoPath);
                    aug.add(z, b, Phase::TwoPath);
                    remaining.remove(j);
                    remaining.remove(i);
                    continue 'search;
                }
            }
        }
        break;
    }
    remaining
}

fn three_path_ok(g: &Graph, u: Vertex, y: Vertex, z: Vertex, v: Vertex) -> bool {
    y != z && y != u && y != v && z != u && z != v && !g.has_edge(u, y) && !g.has_edge(y, z) && !g.has_edge(z, v)
}

/// Finds `(y, z)` such that `u - y - z - v` uses only complement edges of
/// `g`. Tries `attempts` uniform draws (both orientations per draw) before
/// an exhaustive scan in ascending `(y, z)` order. Returns the path and
/// the number of random draws consumed.
pub fn find_three_path<R: Rng + ?Sized>(
    g: &Graph,
    u: Vertex,
    v: Vertex,
    attempts: usize,
    rng: &mut R,
) -> (Option<(Vertex, Vertex)>, usize) {
    let n = g.n();
    for draw in 1..=attempts {
        let y = rng.random_range(0..n);
        let z = rng.random_range(0..n);
        if three_path_ok(g, u, y, z, v) {
            return (Some((y, z)), draw);
        }
        if three_path_ok(g, u, z, y, v) {
            return (Some((z, y)), draw);
        }
    }
    for y in g.complement_neighbors(u) {
        if y == v {
            continue;
        }
        for z in g.complement_neighbors(v) {
            if three_path_ok(g, u, y, z, v) {
                return (Some((y, z)), attempts);
            }
        }
    }
    (None, attempts)
}

/// Phase 3. Resolves consecutive pairs of `remaining` by complement
/// 3-paths. On failure returns the offending pair.
pub fn phase_three_paths<R: Rng + ?Sized>(
    aug: &mut Augmentation,
    remaining: &[Vertex],
    policy: &ExtensionPolicy,
    rng: &mut R,
) -> Result<usize, (Vertex, Vertex, usize)> {
    let attempts = policy.attempts_for(aug.graph.n());
    let mut spent = 0;
    for pair in remaining.chunks(2) {
        let &[u, v] = pair else {
            unreachable!("odd vertices come in pairs");
        };
        let (found, used) = find_three_path(&aug.graph, u, v, attempts, rng);
        spent += used;
        let Some((y, z)) = found else {
            return Err((u, v, spent));
        };
        aug.add(u, y, Phase::ThreePath);
        aug.add(y, z, Phase::ThreePath);
        aug.add(z, v, Phase::ThreePath);
    }
    Ok(spent)
}

/// Extends a connected graph to an Eulerian supergraph by adding complement
/// edges. The input is not modified.
pub fn extend<R: Rng + ?Sized>(g: &Graph, policy: &ExtensionPolicy, rng: &mut R) -> ExtensionResult {
    let t_input = g.t_value();
    if !g.is_connected() {
        return ExtensionResult::failure(t_input, FailureReason::DisconnectedInput);
    }
    let odd = g.odd_vertices();
    if let Some(&saturated) = odd.iter().find(|&&v| g.complement_degree(v) == 0) {
        return ExtensionResult::failure(t_input, FailureReason::NotExtendable { saturated });
    }

    let mut aug = Augmentation::new(g.clone());
    let clique = phase_pairing(&mut aug, &odd);
    let remaining = phase_clique_reduction(&mut aug, &clique);
    let residual_pairs = remaining.len() / 2;
    let (success, failure_reason, attempts_phase3) = match phase_three_paths(&mut aug, &remaining, policy, rng) {
        Ok(spent) => (true, None, spent),
        Err((u, v, spent)) => (false, Some(FailureReason::NoThreePath { u, v }), spent),
    };
    ExtensionResult { added_edges: aug.added, t_input, success, failure_reason, attempts_phase3, residual_pairs }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Violation {
    NotSuccessful,
    EdgeAlreadyPresent { u: Vertex, v: Vertex },
    InvalidEdge { u: Vertex, v: Vertex },
    OddVertexRemains { v: Vertex },
    Disconnected,
    NoEulerCircuit,
    OverBudget { added: usize, budget: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub violations: Vec<Violation>,
}

impl Verification {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Independent re-check of an extension: added edges are new, the union is
/// connected and even, an Euler circuit can be extracted and validated, and
/// the budget `3 t(G)` is respected.
pub fn verify_extension(g: &Graph, r: &ExtensionResult) -> Verification {
    let mut violations = Vec::new();
    if !r.success {
        violations.push(Violation::NotSuccessful);
    }
    let mut h = g.clone();
    for e in &r.added_edges {
        if g.has_edge(e.u, e.v) {
            violations.push(Violation::EdgeAlreadyPresent { u: e.u, v: e.v });
        } else if h.add_edge(e.u, e.v).is_err() {
            violations.push(Violation::InvalidEdge { u: e.u, v: e.v });
        }
    }
    violations.extend(h.odd_vertices().into_iter().map(|v| Violation::OddVertexRemains { v }));
    if !h.is_connected() {
        violations.push(Violation::Disconnected);
    }
    match h.eulerian_circuit() {
        Ok(c) if h.is_euler_circuit(&c) => {}
        _ => violations.push(Violation::NoEulerCircuit),
    }
    let budget = 3 * g.t_value();
    if r.added_edges.len() > budget {
        violations.push(Violation::OverBudget { added: r.added_edges.len(), budget });
    }
    Verification { violations }
}
