//! `eulext`: sample random graphs, extend them to Eulerian graphs, and run
//! seeded experiments.
//!
//! Exit codes: 0 on completion, 2 for invalid configuration, 3 for I/O
//! failures.

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use eulext_core::bounds::{check_condition, default_params, step_success_bound};
use eulext_core::experiment::{run_trials, write_records, ExperimentConfig, RecordFormat};
use eulext_core::io::{format_edge_list, read_edge_list, read_model_spec, ModelSpec, ParseError};
use eulext_core::{extend, min_extension_exact, verify_extension, EdgeProbabilityModel, ExtensionPolicy, Phase};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

#[derive(Parser)]
#[command(name = "eulext", version, about = "Linear Eulerian extensions of inhomogeneous random graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw one graph from a model and print it as an edge list.
    Sample {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Extend a graph to an Eulerian supergraph.
    Extend {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        max_attempts: Option<usize>,
        /// Where to write the extended graph.
        #[arg(long)]
        out: PathBuf,
    },
    /// Exact minimum extension by exhaustive search (n <= 12).
    Oracle {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Evaluate model statistics, the sufficient condition and step bounds.
    Bounds {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 0.2)]
        beta: f64,
        #[arg(long, default_value_t = 0.1)]
        gamma: f64,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        t: usize,
    },
    /// Run seeded Monte Carlo trials and write one record per trial.
    Experiment {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.2)]
        beta: f64,
        #[arg(long, default_value_t = 0.1)]
        gamma: f64,
        #[arg(long)]
        max_attempts: Option<usize>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Record per-trial wall time (output is then not reproducible).
        #[arg(long)]
        timing: bool,
        /// Skip the exact oracle even when n <= 12.
        #[arg(long)]
        no_oracle: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Jsonl,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelType {
    Homogeneous,
    ExampleFamily,
    Matrix,
}

/// A model spec file, or the same keys given as flags.
#[derive(Args)]
struct ModelArgs {
    #[arg(long, conflicts_with = "model_type")]
    model: Option<PathBuf>,
    #[arg(long)]
    model_type: Option<ModelType>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    a: Option<f64>,
    #[arg(long)]
    b: Option<f64>,
    #[arg(long)]
    matrix_file: Option<PathBuf>,
}

enum CliError {
    Config(String),
    Io(String),
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        match e {
            ParseError::Io { .. } => CliError::Io(e.to_string()),
            other => CliError::Config(other.to_string()),
        }
    }
}

fn config_err(e: impl std::fmt::Display) -> CliError {
    CliError::Config(e.to_string())
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |e| CliError::Io(format!("{}: {e}", path.display()))
}

impl ModelArgs {
    fn spec(&self) -> Result<ModelSpec, CliError> {
        if let Some(path) = &self.model {
            return Ok(read_model_spec(path)?);
        }
        let missing = |key: &str| CliError::Config(format!("--{key} is required for this model type"));
        match self.model_type.ok_or_else(|| config_err("either --model or --model-type is required"))? {
            ModelType::Homogeneous => Ok(ModelSpec::Homogeneous { n: None, p: self.p.ok_or_else(|| missing("p"))? }),
            ModelType::ExampleFamily => Ok(ModelSpec::ExampleFamily {
                n: None,
                a: self.a.ok_or_else(|| missing("a"))?,
                b: self.b.ok_or_else(|| missing("b"))?,
            }),
            ModelType::Matrix => {
                let path = self.matrix_file.as_ref().ok_or_else(|| missing("matrix-file"))?;
                let text = fs::read_to_string(path).map_err(io_err(path))?;
                Ok(ModelSpec::Matrix { n: None, rows: eulext_core::io::parse_matrix_rows(&text)? })
            }
        }
    }

    fn build(&self, n: Option<usize>) -> Result<EdgeProbabilityModel, CliError> {
        Ok(self.spec()?.build(n)?)
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(io_err(path))
}

fn print_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Sample { model, n, seed, out } => {
            let model = model.build(n)?;
            let g = model.sample(&mut ChaCha8Rng::seed_from_u64(seed));
            let text = format_edge_list(&g);
            match out {
                Some(path) => write_file(&path, &text)?,
                None => print!("{text}"),
            }
        }
        Command::Extend { graph, seed, max_attempts, out } => {
            let g = read_edge_list(&graph)?;
            let policy = ExtensionPolicy { max_random_attempts: max_attempts };
            let result = extend(&g, &policy, &mut ChaCha8Rng::seed_from_u64(seed));
            let verified = result.success && verify_extension(&g, &result).ok();
            if result.success {
                let h = result.apply(&g).expect("engine adds complement edges only");
                write_file(&out, &format_edge_list(&h))?;
            }
            print_json(&json!({
                "n": g.n(),
                "t": result.t_input,
                "success": result.success,
                "failure_reason": result.failure_reason,
                "edges_added": result.edges_added(),
                "pairing_edges": result.phase_count(Phase::Pairing),
                "two_path_edges": result.phase_count(Phase::TwoPath),
                "three_path_edges": result.phase_count(Phase::ThreePath),
                "budget": 3 * result.t_input,
                "attempts_phase3": result.attempts_phase3,
                "verified": verified,
                "added_edges": result.added_edges,
            }));
        }
        Command::Oracle { graph, cap } => {
            let g = read_edge_list(&graph)?;
            let answer = min_extension_exact(&g, cap).map_err(config_err)?;
            print_json(&json!({ "n": g.n(), "t": g.t_value(), "answer": answer }));
        }
        Command::Bounds { model, beta, gamma, n, t } => {
            let model = model.build(n)?;
            let n = model.n();
            let stats = model.alpha_stats();
            let condition = check_condition(&stats, n, beta, gamma).map_err(config_err)?;
            let params = default_params(n, beta, gamma).map_err(config_err)?;
            let step = step_success_bound(&stats, &params, t);
            print_json(&json!({
                "model": model.kind(),
                "n": n,
                "stats": stats,
                "condition": condition,
                "params": params,
                "step_bound": step,
            }));
        }
        Command::Experiment { model, n, trials, seed, beta, gamma, max_attempts, out, format, timing, no_oracle } => {
            let mut config = ExperimentConfig::new(model.build(n)?, trials, seed);
            config.beta = beta;
            config.gamma = gamma;
            config.policy.max_random_attempts = max_attempts;
            config.record_timing = timing;
            if no_oracle {
                config.oracle = Some(false);
            }
            config.validate().map_err(config_err)?;
            let output = run_trials(&config).map_err(config_err)?;
            let file = File::create(&out).map_err(io_err(&out))?;
            let format = match format {
                Format::Csv => RecordFormat::Csv,
                Format::Jsonl => RecordFormat::Jsonl,
            };
            let mut writer = BufWriter::new(file);
            write_records(&output.records, format, &mut writer).map_err(|e| CliError::Io(e.to_string()))?;
            writer.flush().map_err(io_err(&out))?;
            print_json(&json!({
                "model": config.model.kind(),
                "n": config.model.n(),
                "stats": output.stats,
                "params": output.params,
                "summary": output.summary,
            }));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
