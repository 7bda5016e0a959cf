//! Inhomogeneous random graphs and linear Eulerian extensions.
//!
//! A graph sampled from an [`EdgeProbabilityModel`] is made Eulerian by
//! [`extend`], which adds at most `3 t(G)` complement edges where `t(G)` is
//! half the number of odd-degree vertices. [`min_extension_exact`] gives the
//! true minimum on small graphs, [`bounds`] evaluates the concentration
//! estimates behind the construction, and [`experiment`] runs seeded Monte
//! Carlo trials. Vertices are 0-based throughout.

pub mod bounds;
pub mod experiment;
pub mod extension;
pub mod graph;
pub mod io;
pub mod model;
pub mod oracle;

pub use bounds::{
    check_condition, chernoff_tail, default_params, e_all_check, e_good_check, step_success_bound, BoundParams,
    BoundsError, ConditionReport, GoodEvent, StepBound,
};
pub use experiment::{
    odd_fraction_probe, run_trials, summarize, trial_seed, ExperimentConfig, ExperimentError, ExperimentOutput,
    RecordFormat, Summary, TrialRecord,
};
pub use extension::{
    extend, verify_extension, AddedEdge, ExtensionPolicy, ExtensionResult, FailureReason, Phase, Verification,
    Violation,
};
pub use graph::{EulerCircuit, Graph, GraphError, NotEulerian, Vertex};
pub use io::{ModelSpec, ParseError};
pub use model::{AlphaStats, EdgeProbabilityModel, ModelError, ModelKind};
pub use oracle::{min_extension_exact, OracleAnswer, OracleError};
