//! Seeded Monte Carlo trials over a random graph model.
//!
//! Trial `i` draws all of its randomness from a ChaCha8 stream seeded with
//! [`trial_seed`]`(base_seed, i)`: first the graph (pairs `u < v` in
//! lexicographic order, one uniform each), then the phase-3 draws of the
//! extension engine. Trials run in parallel and are collected in index
//! order, so output depends only on the configuration.

use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{Map, Number, Value};
use thiserror::Error;

use crate::bounds::{default_params, e_all_check, e_good_check, BoundParams, BoundsError};
use crate::extension::{extend, verify_extension, ExtensionPolicy, Phase};
use crate::model::{AlphaStats, EdgeProbabilityModel, ModelError};
use crate::oracle::{min_extension_exact, ORACLE_MAX_N};

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("trials must be at least 1")]
    NoTrials,
    #[error("model needs at least 2 vertices, got {0}")]
    TooFewVertices(usize),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("cannot summarize an empty record list")]
    EmptyRecords,
    #[error("unknown output format `{0}` (expected csv or jsonl)")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// SplitMix64 finalizer.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// `splitmix64(base_seed ^ splitmix64(trial_index))`
pub fn trial_seed(base_seed: u64, trial_index: u64) -> u64 {
    splitmix64(base_seed ^ splitmix64(trial_index))
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub model: EdgeProbabilityModel,
    pub trials: usize,
    pub base_seed: u64,
    pub beta: f64,
    pub gamma: f64,
    pub policy: ExtensionPolicy,
    /// Run the exact oracle on every trial; `None` enables it iff
    /// `n <= 12`.
    pub oracle: Option<bool>,
    /// Store measured wall time; otherwise `wall_time` is 0 so output
    /// files are reproducible byte for byte.
    pub record_timing: bool,
}

impl ExperimentConfig {
    pub fn new(model: EdgeProbabilityModel, trials: usize, base_seed: u64) -> Self {
        Self {
            model,
            trials,
            base_seed,
            beta: 0.2,
            gamma: 0.1,
            policy: ExtensionPolicy::default(),
            oracle: None,
            record_timing: false,
        }
    }

    pub fn oracle_enabled(&self) -> bool {
        self.model.n() <= ORACLE_MAX_N && self.oracle.unwrap_or(true)
    }

    pub fn validate(&self) -> Result<BoundParams, ExperimentError> {
        if self.trials == 0 {
            return Err(ExperimentError::NoTrials);
        }
        if self.model.n() < 2 {
            return Err(ExperimentError::TooFewVertices(self.model.n()));
        }
        Ok(default_params(self.model.n(), self.beta, self.gamma)?)
    }
}

/// One observation. Field order here is the column order of the output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRecord {
    pub trial_index: usize,
    pub seed: u64,
    pub n: usize,
    pub m_sampled: usize,
    pub delta_sampled: usize,
    pub t_value: usize,
    pub connected: bool,
    pub e_good_deg: bool,
    pub e_good_edge: bool,
    pub e_all: bool,
    pub engine_success: bool,
    /// Empty on success.
    pub failure_reason: String,
    /// Edges the engine added (on failure, those added before it gave up).
    pub edges_added: usize,
    pub pairing_edges: usize,
    pub two_path_edges: usize,
    pub three_path_edges: usize,
    /// `engine_success && edges_added <= 3 t_value`
    pub within_3t: bool,
    /// The successful extension passed the independent verifier.
    pub verified: bool,
    pub oracle_min: Option<usize>,
    /// Seconds; 0 unless timing is recorded.
    pub wall_time: f64,
}

pub const RECORD_FIELDS: [&str; 20] = [
    "trial_index",
    "seed",
    "n",
    "m_sampled",
    "delta_sampled",
    "t_value",
    "connected",
    "e_good_deg",
    "e_good_edge",
    "e_all",
    "engine_success",
    "failure_reason",
    "edges_added",
    "pairing_edges",
    "two_path_edges",
    "three_path_edges",
    "within_3t",
    "verified",
    "oracle_min",
    "wall_time",
];

/// Formats with 9 significant digits, trimming trailing zeros.
pub fn format_sig9(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let s = format!("{x:.8e}");
    let (mantissa, exp) = s.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..9).contains(&exp) {
        let decimals = (8 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!("{}e{}", trim_zeros(mantissa.to_string()), exp)
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

impl TrialRecord {
    fn values(&self) -> [Value; 20] {
        let int = |x: usize| Value::from(x as u64);
        [
            int(self.trial_index),
            Value::from(self.seed),
            int(self.n),
            int(self.m_sampled),
            int(self.delta_sampled),
            int(self.t_value),
            Value::Bool(self.connected),
            Value::Bool(self.e_good_deg),
            Value::Bool(self.e_good_edge),
            Value::Bool(self.e_all),
            Value::Bool(self.engine_success),
            Value::String(self.failure_reason.clone()),
            int(self.edges_added),
            int(self.pairing_edges),
            int(self.two_path_edges),
            int(self.three_path_edges),
            Value::Bool(self.within_3t),
            Value::Bool(self.verified),
            self.oracle_min.map_or(Value::Null, int),
            format_sig9(self.wall_time)
                .parse::<f64>()
                .ok()
                .and_then(Number::from_f64)
                .map_or(Value::Null, Value::Number),
        ]
    }

    pub fn csv_row(&self) -> Vec<String> {
        self.values()
            .into_iter()
            .map(|v| match v {
                Value::Bool(b) => u8::from(b).to_string(),
                Value::Null => String::new(),
                Value::String(s) => s,
                Value::Number(num) => match num.as_u64() {
                    Some(i) => i.to_string(),
                    None => format_sig9(num.as_f64().unwrap_or(f64::NAN)),
                },
                other => other.to_string(),
            })
            .collect()
    }

    pub fn json_object(&self) -> Value {
        let map: Map<String, Value> = RECORD_FIELDS.iter().map(|k| k.to_string()).zip(self.values()).collect();
        Value::Object(map)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecordFormat {
    Csv,
    Jsonl,
}

impl FromStr for RecordFormat {
    type Err = ExperimentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Self::Csv),
            "jsonl" => Ok(Self::Jsonl),
            other => Err(ExperimentError::Format(other.to_string())),
        }
    }
}

pub fn write_records<W: Write>(records: &[TrialRecord], format: RecordFormat, out: W) -> Result<(), ExperimentError> {
    match format {
        RecordFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(RECORD_FIELDS)?;
            for r in records {
                w.write_record(r.csv_row())?;
            }
            w.flush()?;
        }
        RecordFormat::Jsonl => {
            let mut out = out;
            for r in records {
                serde_json::to_writer(&mut out, &r.json_object()).map_err(std::io::Error::from)?;
                out.write_all(b"\n")?;
            }
            out.flush()?;
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeanSd {
    pub mean: f64,
    /// Sample standard deviation (0 for a single record).
    pub sd: f64,
}

impl MeanSd {
    fn of(values: impl Iterator<Item = f64> + Clone) -> Self {
        let count = values.clone().count() as f64;
        let mean = values.clone().sum::<f64>() / count;
        let sd =
            if count > 1.0 { (values.map(|x| (x - mean).powi(2)).sum::<f64>() / (count - 1.0)).sqrt() } else { 0.0 };
        Self { mean, sd }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub trials: usize,
    pub success_fraction: f64,
    pub within_3t_fraction: f64,
    pub verified_fraction: f64,
    pub connected_fraction: f64,
    pub e_good_deg_fraction: f64,
    pub e_good_edge_fraction: f64,
    pub e_good_fraction: f64,
    pub e_all_fraction: f64,
    pub t: MeanSd,
    pub edges_added: MeanSd,
    pub delta: MeanSd,
    pub m: MeanSd,
}

pub fn summarize(records: &[TrialRecord]) -> Result<Summary, ExperimentError> {
    if records.is_empty() {
        return Err(ExperimentError::EmptyRecords);
    }
    let total = records.len() as f64;
    let frac = |f: fn(&TrialRecord) -> bool| records.iter().filter(|r| f(r)).count() as f64 / total;
    let stat = |f: fn(&TrialRecord) -> usize| MeanSd::of(records.iter().map(move |r| f(r) as f64));
    Ok(Summary {
        trials: records.len(),
        success_fraction: frac(|r| r.engine_success),
        within_3t_fraction: frac(|r| r.within_3t),
        verified_fraction: frac(|r| r.verified),
        connected_fraction: frac(|r| r.connected),
        e_good_deg_fraction: frac(|r| r.e_good_deg),
        e_good_edge_fraction: frac(|r| r.e_good_edge),
        e_good_fraction: frac(|r| r.e_good_deg && r.e_good_edge),
        e_all_fraction: frac(|r| r.e_all),
        t: stat(|r| r.t_value),
        edges_added: stat(|r| r.edges_added),
        delta: stat(|r| r.delta_sampled),
        m: stat(|r| r.m_sampled),
    })
}

#[derive(Debug, Clone)]
pub struct ExperimentOutput {
    pub stats: AlphaStats,
    pub params: BoundParams,
    pub records: Vec<TrialRecord>,
    pub summary: Summary,
}

/// Runs one trial with its own derived seed.
pub fn run_trial(
    config: &ExperimentConfig,
    stats: &AlphaStats,
    params: &BoundParams,
    trial_index: usize,
) -> TrialRecord {
    let start = Instant::now();
    let seed = trial_seed(config.base_seed, trial_index as u64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = config.model.sample(&mut rng);
    let good = e_good_check(&g, stats, params);
    let result = extend(&g, &config.policy, &mut rng);
    let verified = result.success && verify_extension(&g, &result).ok();
    let oracle_min =
        if config.oracle_enabled() { min_extension_exact(&g, None).ok().and_then(|a| a.min_edges) } else { None };
    let wall_time = if config.record_timing { start.elapsed().as_secs_f64() } else { 0.0 };
    TrialRecord {
        trial_index,
        seed,
        n: g.n(),
        m_sampled: g.edge_count(),
        delta_sampled: g.max_degree(),
        t_value: g.t_value(),
        connected: g.is_connected(),
        e_good_deg: good.deg_ok,
        e_good_edge: good.edge_ok,
        e_all: e_all_check(&g),
        engine_success: result.success,
        failure_reason: result.failure_reason.map(|f| f.as_str().to_string()).unwrap_or_default(),
        edges_added: result.edges_added(),
        pairing_edges: result.phase_count(Phase::Pairing),
        two_path_edges: result.phase_count(Phase::TwoPath),
        three_path_edges: result.phase_count(Phase::ThreePath),
        within_3t: result.success && result.within_budget(),
        verified,
        oracle_min,
        wall_time,
    }
}

pub fn run_trials(config: &ExperimentConfig) -> Result<ExperimentOutput, ExperimentError> {
    let params = config.validate()?;
    let stats = config.model.alpha_stats();
    let records: Vec<TrialRecord> =
        (0..config.trials).into_par_iter().map(|i| run_trial(config, &stats, &params, i)).collect();
    let summary = summarize(&records)?;
    Ok(ExperimentOutput { stats, params, records, summary })
}

/// Mean fraction of odd-degree vertices over `trials` homogeneous samples.
pub fn odd_fraction_probe(n: usize, p: f64, trials: usize, seed: u64) -> Result<f64, ExperimentError> {
    if trials == 0 {
        return Err(ExperimentError::NoTrials);
    }
    let model = EdgeProbabilityModel::homogeneous(n, p)?;
    let total: f64 = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, i as u64));
            let g = model.sample(&mut rng);
            g.odd_vertices().len() as f64 / n as f64
        })
        .collect::<Vec<_>>()
        .into_iter()
        .sum(); // in index order
    Ok(total / trials as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(success: bool, t: usize, edges: usize) -> TrialRecord {
        TrialRecord {
            trial_index: 0,
            seed: 1,
            n: 10,
            m_sampled: 12,
            delta_sampled: 4,
            t_value: t,
            connected: true,
            e_good_deg: true,
            e_good_edge: true,
            e_all: false,
            engine_success: success,
            failure_reason: if success { String::new() } else { "no_three_path".into() },
            edges_added: edges,
            pairing_edges: edges,
            two_path_edges: 0,
            three_path_edges: 0,
            within_3t: success && edges <= 3 * t,
            verified: success,
            oracle_min: None,
            wall_time: 0.0,
        }
    }

    #[test]
    fn seeds_differ_per_trial() {
        assert_ne!(trial_seed(1, 0), trial_seed(1, 1));
        assert_ne!(trial_seed(1, 0), trial_seed(2, 0));
        assert_eq!(trial_seed(5, 9), trial_seed(5, 9));
    }

    #[test]
    fn sig9_formatting() {
        assert_eq!(format_sig9(0.0), "0");
        assert_eq!(format_sig9(1.5), "1.5");
        assert_eq!(format_sig9(0.123456789123), "0.123456789");
        assert_eq!(format_sig9(123456789.4), "123456789");
        assert_eq!(format_sig9(1.0e-7), "1e-7");
        assert_eq!(format_sig9(2.0 / 3.0), "0.666666667");
    }

    #[test]
    fn summaries() {
        let same = vec![record(true, 2, 3); 10];
        assert_eq!(summarize(&same).unwrap().success_fraction, 1.0);

        let mixed: Vec<_> = (0..10).map(|i| record(i < 3, 2, 2)).collect();
        assert!((summarize(&mixed).unwrap().success_fraction - 0.3).abs() < 1e-15);

        let zero = vec![record(true, 0, 0); 4];
        assert_eq!(summarize(&zero).unwrap().edges_added.mean, 0.0);

        assert!(matches!(summarize(&[]), Err(ExperimentError::EmptyRecords)));
    }

    #[test]
    fn csv_and_jsonl_share_keys() {
        let r = record(false, 1, 1);
        assert_eq!(r.csv_row().len(), RECORD_FIELDS.len());
        let obj = r.json_object();
        let keys: Vec<_> = obj.as_object().unwrap().keys().cloned().collect();
        assert_eq!(keys, RECORD_FIELDS);
        assert_eq!(r.csv_row()[6], "1");
        assert_eq!(r.csv_row()[18], "");
        assert_eq!(obj["oracle_min"], Value::Null);

        let mut buf = Vec::new();
        write_records(&[r.clone(), r], RecordFormat::Csv, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().next().unwrap(), RECORD_FIELDS.join(","));
        assert_eq!(text.lines().count(), 3);
    }

    #[test]
    fn trivial_experiments() {
        let empty = ExperimentConfig::new(EdgeProbabilityModel::homogeneous(100, 0.0).unwrap(), 10, 3);
        let out = run_trials(&empty).unwrap();
        assert_eq!(out.summary.success_fraction, 0.0);
        assert!(out.records.iter().all(|r| r.failure_reason == "disconnected_input"));

        let tri = ExperimentConfig::new(EdgeProbabilityModel::homogeneous(3, 1.0).unwrap(), 5, 3);
        let out = run_trials(&tri).unwrap();
        assert!(out.records.iter().all(|r| r.engine_success && r.t_value == 0 && r.edges_added == 0));
        assert!(out.records.iter().all(|r| r.oracle_min == Some(0)));
    }

    #[test]
    fn config_validation() {
        let mut cfg = ExperimentConfig::new(EdgeProbabilityModel::homogeneous(10, 0.5).unwrap(), 0, 1);
        assert!(matches!(cfg.validate(), Err(ExperimentError::NoTrials)));
        cfg.trials = 1;
        cfg.beta = 0.45;
        assert!(matches!(cfg.validate(), Err(ExperimentError::Bounds(_))));
    }

    #[test]
    fn odd_fraction_parity_extremes() {
        // complete graph degrees are n - 1
        assert_eq!(odd_fraction_probe(7, 1.0, 3, 0).unwrap(), 0.0);
        assert_eq!(odd_fraction_probe(4, 1.0, 3, 0).unwrap(), 1.0);
    }
}
