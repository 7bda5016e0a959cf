//! Closed-form quantities from the concentration analysis, and exact
//! evaluation of the corresponding events on concrete graphs.
//!
//! All logarithms are natural.

use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;
use crate::model::AlphaStats;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundsError {
    #[error("beta must lie in (0, 1/2), got {0}")]
    Beta(f64),
    #[error("gamma must lie in (0, 1/2 - beta) = (0, {limit}), got {gamma}")]
    Gamma { gamma: f64, limit: f64 },
    #[error("deviation fraction must lie in (0, 1/2], got {0}")]
    Epsilon(f64),
    #[error("mean must be positive, got {0}")]
    Mean(f64),
    #[error("zeta interval ({lo}, {hi}) is empty")]
    EmptyZeta { lo: f64, hi: f64 },
    #[error("need n >= 2, got {0}")]
    TooSmall(usize),
}

/// Exponents of the sufficient condition plus the derived deviation scale.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundParams {
    pub n: usize,
    pub beta: f64,
    pub gamma: f64,
    pub zeta: f64,
    /// `n^(-zeta)`
    pub epsilon: f64,
}

fn validate_exponents(beta: f64, gamma: f64) -> Result<(), BoundsError> {
    if !(beta > 0.0 && beta < 0.5) {
        return Err(BoundsError::Beta(beta));
    }
    let limit = 0.5 - beta;
    if !(gamma > 0.0 && gamma < limit) {
        return Err(BoundsError::Gamma { gamma, limit });
    }
    Ok(())
}

impl BoundParams {
    /// Picks `zeta` at the midpoint of `(gamma + beta/2, (1 - beta)/2)`.
    pub fn with_midpoint(n: usize, beta: f64, gamma: f64) -> Result<Self, BoundsError> {
        validate_exponents(beta, gamma)?;
        let (lo, hi) = Self::zeta_interval(beta, gamma);
        if lo >= hi {
            return Err(BoundsError::EmptyZeta { lo, hi });
        }
        Self::with_zeta(n, beta, gamma, 0.5 * (lo + hi))
    }

    pub fn with_zeta(n: usize, beta: f64, gamma: f64, zeta: f64) -> Result<Self, BoundsError> {
        validate_exponents(beta, gamma)?;
        if n < 2 {
            return Err(BoundsError::TooSmall(n));
        }
        let (lo, hi) = Self::zeta_interval(beta, gamma);
        if !(zeta > lo && zeta < hi) {
            return Err(BoundsError::EmptyZeta { lo, hi });
        }
        Ok(Self { n, beta, gamma, zeta, epsilon: (n as f64).powf(-zeta) })
    }

    pub fn zeta_interval(beta: f64, gamma: f64) -> (f64, f64) {
        (gamma + beta / 2.0, (1.0 - beta) / 2.0)
    }
}

/// Same as [`BoundParams::with_midpoint`].
pub fn default_params(n: usize, beta: f64, gamma: f64) -> Result<BoundParams, BoundsError> {
    BoundParams::with_midpoint(n, beta, gamma)
}

/// Two-sided multiplicative Chernoff bound for a sum of independent
/// Bernoulli variables with mean `mu`:
/// `P(|T - mu| >= eps * mu) <= exp(-eps^2 * mu / 4)`, valid for
/// `0 < eps <= 1/2`.
pub fn chernoff_tail(mu: f64, eps: f64) -> Result<f64, BoundsError> {
    if !(eps > 0.0 && eps <= 0.5) {
        return Err(BoundsError::Epsilon(eps));
    }
    if !(mu > 0.0) {
        return Err(BoundsError::Mean(mu));
    }
    Ok((-eps * eps * mu / 4.0).exp())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConditionReport {
    pub holds: bool,
    /// Smaller of the two slacks; negative iff the condition fails.
    pub margin: f64,
    /// `alpha_low - n^(-beta)`
    pub lower_slack: f64,
    /// `max(1/2, 1 - sqrt(alpha_e / 2)) - n^(-gamma) - alpha_up`
    pub upper_slack: f64,
    pub upper_limit: f64,
}

/// Evaluates the sufficient condition
/// `n^-beta <= alpha_low <= alpha_up <= max(1/2, 1 - sqrt(alpha_e/2)) - n^-gamma`.
pub fn check_condition(stats: &AlphaStats, n: usize, beta: f64, gamma: f64) -> Result<ConditionReport, BoundsError> {
    validate_exponents(beta, gamma)?;
    let nf = n as f64;
    let lower_slack = stats.alpha_low - nf.powf(-beta);
    let upper_limit = f64::max(0.5, 1.0 - (stats.alpha_e / 2.0).sqrt()) - nf.powf(-gamma);
    let upper_slack = upper_limit - stats.alpha_up;
    let margin = lower_slack.min(upper_slack);
    Ok(ConditionReport {
        holds: lower_slack >= 0.0 && upper_slack >= 0.0 && stats.alpha_low <= stats.alpha_up,
        margin,
        lower_slack,
        upper_slack,
        upper_limit,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GoodEvent {
    /// `Δ(G) <= alpha_up (1 + eps) (n - 1)`
    pub deg_ok: bool,
    /// `m(G) <= alpha_e (1 + eps) C(n, 2)`
    pub edge_ok: bool,
}

impl GoodEvent {
    pub fn holds(&self) -> bool {
        self.deg_ok && self.edge_ok
    }
}

pub fn e_good_check(g: &Graph, stats: &AlphaStats, params: &BoundParams) -> GoodEvent {
    let n = g.n() as f64;
    let scale = 1.0 + params.epsilon;
    GoodEvent {
        deg_ok: g.max_degree() as f64 <= stats.alpha_up * scale * (n - 1.0),
        edge_ok: g.edge_count() as f64 <= stats.alpha_e * scale * (n * (n - 1.0) / 2.0),
    }
}

/// `(ln n)^3 / 2`, the common-non-neighbour threshold.
pub fn e_all_threshold(n: usize) -> f64 {
    (n as f64).ln().powi(3) / 2.0
}

/// Smallest common-non-neighbour count over all pairs, `None` when `n < 2`.
pub fn min_common_non_neighbors(g: &Graph) -> Option<usize> {
    let n = g.n();
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).map(|(u, v)| g.common_non_neighbor_count(u, v)).min()
}

/// Whether every pair of distinct vertices has at least `(ln n)^3 / 2`
/// common non-neighbours.
pub fn e_all_check(g: &Graph) -> bool {
    let threshold = e_all_threshold(g.n());
    min_common_non_neighbors(g).is_none_or(|y| y as f64 >= threshold)
}

/// Union bound on `P(Δ(G) > alpha_up (1+eps)(n-1))` in the proof's regime.
pub fn degree_violation_bound(n: usize) -> f64 {
    let nf = n as f64;
    nf * (-(nf.ln().powi(2))).exp()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StepBound {
    /// `2 (1 - alpha_up (1 + eps))^2`
    pub p_i: f64,
    /// `9/n + alpha_e (1 + eps)`
    pub q_i: f64,
    pub diff: f64,
    /// `t * ln(diff)`; `NaN` when `diff <= 0` and `t > 0`.
    pub product_log: f64,
    /// `sqrt(2) n^-(gamma + beta/2) - 1/n - 2 n^-zeta`
    pub analytic_floor: f64,
}

pub fn step_success_bound(stats: &AlphaStats, params: &BoundParams, t: usize) -> StepBound {
    let n = params.n as f64;
    let eps = params.epsilon;
    let p_i = 2.0 * (1.0 - stats.alpha_up * (1.0 + eps)).powi(2);
    let q_i = 9.0 / n + stats.alpha_e * (1.0 + eps);
    let diff = p_i - q_i;
    let product_log = if t == 0 {
        0.0
    } else if diff > 0.0 {
        t as f64 * diff.ln()
    } else {
        f64::NAN
    };
    let analytic_floor = 2f64.sqrt() * n.powf(-(params.gamma + params.beta / 2.0)) - 1.0 / n - 2.0 * eps;
    StepBound { p_i, q_i, diff, product_log, analytic_floor }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::EdgeProbabilityModel;

    fn stats(low: f64, up: f64, e: f64) -> AlphaStats {
        AlphaStats { alpha_low: low, alpha_up: up, alpha_e: e, per_vertex_avg: vec![] }
    }

    #[test]
    fn chernoff_values() {
        let v = chernoff_tail(100.0, 0.5).unwrap();
        assert!((v / (-6.25f64).exp() - 1.0).abs() < 1e-12);
        assert!(chernoff_tail(1e-9, 1e-3).unwrap() > 1.0 - 1e-12);
        assert!(chernoff_tail(10.0, 0.6).is_err());
        assert!(chernoff_tail(10.0, 0.0).is_err());
        assert!(chernoff_tail(0.0, 0.3).is_err());
    }

    #[test]
    fn chernoff_at_log_scale_decreases_in_n() {
        let tail = |n: f64| {
            let l = n.ln();
            chernoff_tail(16.0 * l * l, 1.0 / l.sqrt()).unwrap()
        };
        let vals = [tail(1e2), tail(1e3), tail(1e4)];
        assert!(vals[0] > vals[1] && vals[1] > vals[2], "{vals:?}");
    }

    #[test]
    fn params_midpoint() {
        let p = default_params(1000, 0.2, 0.1).unwrap();
        assert!((p.zeta - 0.3).abs() < 1e-15);
        assert_eq!(p.epsilon, 1000f64.powf(-p.zeta));
        let q = default_params(1000, 0.1, 0.05).unwrap();
        assert!((q.zeta - 0.275).abs() < 1e-15);
        assert!(matches!(default_params(1000, 0.4, 0.2), Err(BoundsError::Gamma { .. })));
        assert!(matches!(default_params(1000, 0.5, 0.01), Err(BoundsError::Beta(_))));
    }

    #[test]
    fn condition_examples() {
        // limiting family statistics at large n
        let n = 1_000_000;
        let ok = check_condition(&stats(0.2, 0.4, 0.2), n, 0.2, 0.1).unwrap();
        assert!(ok.holds, "{ok:?}");
        let bad = check_condition(&stats(0.2, 0.9, 0.2), n, 0.2, 0.1).unwrap();
        assert!(!bad.holds && bad.upper_slack < 0.0);
        let half = check_condition(&stats(0.5, 0.5, 0.5), n, 0.2, 0.1).unwrap();
        assert!(!half.holds);
        assert!((half.upper_slack + (n as f64).powf(-0.1)).abs() < 1e-12);
        assert!(check_condition(&stats(0.2, 0.4, 0.2), n, 0.3, 0.3).is_err());
    }

    #[test]
    fn family_condition_at_large_n() {
        let n = 1_000_000;
        let s = EdgeProbabilityModel::example_family(n, 0.4, 0.2).unwrap().alpha_stats();
        assert!(check_condition(&s, n, 0.2, 0.1).unwrap().holds);
    }

    #[test]
    fn good_event_examples() {
        let params = default_params(20, 0.2, 0.1).unwrap();
        let full = Graph::complete(20);
        let ev = e_good_check(&full, &stats(1.0, 1.0, 1.0), &params);
        assert!(ev.holds());
        let ev = e_good_check(&Graph::new(20), &stats(0.5, 0.5, 0.5), &params);
        assert!(ev.holds());
        let ev = e_good_check(&full, &stats(0.1, 0.1, 0.1), &params);
        assert!(!ev.deg_ok && !ev.edge_ok);
    }

    #[test]
    fn all_event_examples() {
        // (ln 100)^3 / 2 ≈ 48.8 <= 98
        assert!(e_all_check(&Graph::new(100)));
        assert!(!e_all_check(&Graph::complete(100)));
        assert_eq!(min_common_non_neighbors(&Graph::new(100)), Some(98));
    }

    #[test]
    fn step_bound_examples() {
        let params = BoundParams { n: 1000, beta: 0.2, gamma: 0.1, zeta: 0.3, epsilon: 0.0 };
        let b = step_success_bound(&stats(0.2, 0.4, 0.2), &params, 10);
        assert!((b.p_i - 0.72).abs() < 1e-12);
        assert!((b.q_i - (0.009 + 0.2)).abs() < 1e-12);
        assert!((b.diff - (0.52 - 0.009)).abs() < 1e-12);
        assert!((b.product_log - 10.0 * b.diff.ln()).abs() < 1e-12);

        let params = default_params(1000, 0.2, 0.1).unwrap();
        let sat = step_success_bound(&stats(1.0, 1.0, 0.3), &params, 5);
        assert!(sat.p_i < 0.1 && sat.diff < 0.0 && sat.product_log.is_nan());
    }
}
