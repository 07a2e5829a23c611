//! Scenario runner behind the `infoflow` binary.
//!
//! A scenario is a JSON envelope naming a task and carrying its payload:
//!
//! ```json
//! {"schema": 1, "task": "bayes", "payload": {"hypotheses": ["h", "not-h"], "prior": [0.3, 0.7], "likelihoods": [0.9, 0.2]}}
//! ```
//!
//! Every run produces one JSON report and an exit code derived from the error
//! kind, so scripted callers can tell bad input from undefined operations.

use std::path::{Path, PathBuf};

use infoflow::Error;
use serde::Deserialize;
use serde_json::{json, Value};

pub mod output;
pub mod registry;
mod spec;
mod tasks;

/// Version of the scenario envelope understood by this build.
pub const SCHEMA_VERSION: u32 = 1;

/// Sequent width used when `--max-width` is not given.
pub const DEFAULT_MAX_WIDTH: usize = 2;

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Overrides the scenario's own seed.
    pub seed: Option<u64>,
    pub max_width: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    /// The report, reals already rounded to 12 significant digits.
    pub report: Value,
    pub exit_code: i32,
}

impl Outcome {
    pub fn ok(&self) -> bool {
        self.exit_code == 0
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Envelope {
    schema: u32,
    task: String,
    #[serde(default)]
    seed: Option<u64>,
    payload: Value,
}

/// Exit status for an error kind: 2 for unusable input, 3 for operations that
/// are undefined on valid input, 4 for exhausted enumeration budgets.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InvalidInput(_) | Error::PreconditionFailure(_) | Error::AuditIncomplete(_) => 2,
        Error::UndefinedConditioning(_)
        | Error::TotalConflict
        | Error::MissingProbability { .. }
        | Error::UndefinedUpdate { .. }
        | Error::CwaInconsistent { .. } => 3,
        Error::BudgetExceeded(_) => 4,
    }
}

/// Reads and runs a scenario file. Relative paths inside the payload (CSV
/// tables) resolve against the file's directory.
pub fn run_file(path: &Path, opts: &RunOptions) -> Outcome {
    match std::fs::read_to_string(path) {
        Ok(text) => {
            let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
            run_str(&text, &base, opts)
        }
        Err(e) => failure(
            None,
            &Error::InvalidInput(format!("cannot read {}: {e}", path.display())),
        ),
    }
}

pub fn run_str(text: &str, base_dir: &Path, opts: &RunOptions) -> Outcome {
    let env: Envelope = match serde_json::from_str(text) {
        Ok(e) => e,
        Err(e) => return failure(None, &Error::InvalidInput(format!("scenario: {e}"))),
    };
    let task = env.task.clone();
    if env.schema != SCHEMA_VERSION {
        return failure(
            Some(&task),
            &Error::InvalidInput(format!(
                "unsupported schema {}; this build reads schema {SCHEMA_VERSION}",
                env.schema
            )),
        );
    }
    let ctx = tasks::Context {
        seed: opts.seed.or(env.seed),
        max_width: opts.max_width.unwrap_or(DEFAULT_MAX_WIDTH),
        base_dir: PathBuf::from(base_dir),
    };
    match tasks::run(&task, env.payload, &ctx) {
        Ok(result) => {
            let mut report = json!({"schema": SCHEMA_VERSION, "task": task, "status": "ok", "result": result});
            if let Some(s) = ctx.seed {
                report["seed"] = json!(s);
            }
            Outcome {
                report: output::round_reals(report),
                exit_code: 0,
            }
        }
        Err(e) => failure(Some(&task), &e),
    }
}

fn failure(task: Option<&str>, err: &Error) -> Outcome {
    let report = json!({
        "schema": SCHEMA_VERSION,
        "task": task,
        "status": "error",
        "error": {"kind": err.kind(), "message": err.to_string()},
    });
    Outcome {
        report,
        exit_code: exit_code(err),
    }
}
