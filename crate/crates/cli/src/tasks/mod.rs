use std::path::PathBuf;

use infoflow::Result;
use serde::de::DeserializeOwned;
use serde_json::Value;

use crate::spec::invalid;

mod audit;
mod channel;
mod defaults;
mod epistemic;
mod evidence;
mod possibility;
mod probability;
mod retrieval;
mod rough;
mod vagueness;

pub struct Context {
    pub seed: Option<u64>,
    pub max_width: usize,
    pub base_dir: PathBuf,
}

impl Context {
    pub fn require_seed(&self, task: &str) -> Result<u64> {
        self.seed
            .ok_or_else(|| invalid(format!("task `{task}` samples at random and needs a seed (scenario `seed` or --seed)")))
    }
}

fn payload<T: DeserializeOwned>(task: &str, v: Value) -> Result<T> {
    serde_json::from_value(v).map_err(|e| invalid(format!("{task} payload: {e}")))
}

pub fn run(task: &str, p: Value, ctx: &Context) -> Result<Value> {
    match task {
        "bayes" => probability::bayes(payload(task, p)?),
        "bn-joint" => probability::bn_joint(payload(task, p)?),
        "entropy" => probability::entropy(payload(task, p)?),
        "channel" => probability::channel(payload(task, p)?),
        "ds-combine" => evidence::combine(payload(task, p)?),
        "ds-bounds" => evidence::bounds(payload(task, p)?),
        "rough" => rough::run(payload(task, p)?, ctx),
        "possibility" => possibility::possibility(payload(task, p)?),
        "fuse" => possibility::fuse(payload(task, p)?),
        "audit" => audit::run(payload(task, p)?, ctx),
        "kripke-check" => epistemic::check(payload(task, p)?),
        "kripke-update" => epistemic::update(payload(task, p)?),
        "prob-validity" => epistemic::validity(payload(task, p)?, ctx),
        "defaults" => defaults::defaults(payload(task, p)?),
        "mcs" => defaults::mcs(payload(task, p)?),
        "cwa" => defaults::cwa(payload(task, p)?),
        "sorites" => vagueness::sorites(payload(task, p)?),
        "ir" => retrieval::run(payload(task, p)?),
        "infomorphism-check" => channel::run(payload(task, p)?, ctx),
        other => Err(invalid(format!("unknown task `{other}`; `infoflow tasks` lists them"))),
    }
}
