use std::collections::BTreeMap;

use infoflow::epistemic::{probabilistic_validity, product_update, ProbabilisticKripkeModel, UpdateModel};
use infoflow::Result;
use serde::Deserialize;
use serde_json::{json, Value};

use super::Context;
use crate::spec::{formula, formulas, index_in, invalid, probabilistic_model, KripkeSpec, ProbabilitySpec};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbabilityQuery {
    agent: String,
    world: String,
    formula: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Check {
    model: KripkeSpec,
    #[serde(default)]
    probabilities: Option<ProbabilitySpec>,
    formulas: Vec<String>,
    #[serde(default)]
    probability_queries: Vec<ProbabilityQuery>,
}

fn probability_rows(pm: &ProbabilisticKripkeModel, queries: &[ProbabilityQuery]) -> Result<Value> {
    let k = pm.kripke();
    let rows = queries
        .iter()
        .map(|q| {
            let p = pm.probability(k.agent_id(&q.agent)?, k.world_id(&q.world)?, &formula(&q.formula)?)?;
            Ok(json!({"agent": q.agent, "world": q.world, "formula": q.formula, "probability": p}))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Value::Array(rows))
}

fn truth_rows(pm: &ProbabilisticKripkeModel, sources: &[String]) -> Result<Value> {
    let k = pm.kripke();
    let rows = sources
        .iter()
        .map(|src| {
            let f = formula(src)?;
            let mut true_at = Vec::new();
            for (w, name) in k.worlds().iter().enumerate() {
                if pm.satisfies(w, &f)? {
                    true_at.push(name.clone());
                }
            }
            let here = true_at.contains(&k.worlds()[k.designated()]);
            Ok(json!({"formula": src, "true_at": true_at, "at_designated": here}))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Value::Array(rows))
}

pub fn check(p: Check) -> Result<Value> {
    let k = p.model.build()?;
    let pm = match &p.probabilities {
        Some(spec) => probabilistic_model(k, spec)?,
        None => {
            if !p.probability_queries.is_empty() {
                return Err(invalid("probability queries need `probabilities`"));
            }
            probabilistic_model(k, &BTreeMap::new())?
        }
    };
    Ok(json!({
        "designated": pm.kripke().worlds()[pm.kripke().designated()],
        "formulas": truth_rows(&pm, &p.formulas)?,
        "probability_queries": probability_rows(&pm, &p.probability_queries)?,
    }))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UpdateSpec {
    events: Vec<String>,
    #[serde(default)]
    partitions: Option<BTreeMap<String, Vec<Vec<String>>>>,
    #[serde(default)]
    relations: Option<BTreeMap<String, Vec<(String, String)>>>,
    /// Mutually exclusive formulas; `occurrence[k][e]` is the chance of `e` where the k-th holds.
    preconditions: Vec<String>,
    occurrence: Vec<Vec<f64>>,
    /// Per agent: `observation[e][f]` is the chance the agent assigns to `f` when `e` happens.
    observation: BTreeMap<String, Vec<Vec<f64>>>,
    #[serde(default)]
    designated: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Update {
    model: KripkeSpec,
    probabilities: ProbabilitySpec,
    update: UpdateSpec,
    #[serde(default)]
    formulas: Vec<String>,
    #[serde(default)]
    probability_queries: Vec<ProbabilityQuery>,
}

fn known_agents<T>(agents: &[String], map: &BTreeMap<String, T>, what: &str) -> Result<()> {
    match map.keys().find(|a| !agents.contains(a)) {
        Some(a) => Err(invalid(format!("{what} given for unknown agent `{a}`"))),
        None => Ok(()),
    }
}

fn update_model(u: &UpdateSpec, agents: &[String]) -> Result<UpdateModel> {
    let e = |n: &str| index_in(&u.events, n, "event");
    let relations = match (&u.partitions, &u.relations) {
        (Some(parts), None) => {
            known_agents(agents, parts, "event partition")?;
            agents
                .iter()
                .map(|a| {
                    let cells = parts.get(a).ok_or_else(|| invalid(format!("no event partition for `{a}`")))?;
                    let mut pairs = Vec::new();
                    for cell in cells {
                        let ids = cell.iter().map(|x| e(x)).collect::<Result<Vec<_>>>()?;
                        pairs.extend(ids.iter().flat_map(|&i| ids.iter().map(move |&j| (i, j))));
                    }
                    Ok(pairs)
                })
                .collect::<Result<Vec<_>>>()?
        }
        (None, Some(rels)) => {
            known_agents(agents, rels, "event relation")?;
            agents
                .iter()
                .map(|a| {
                    rels.get(a)
                        .ok_or_else(|| invalid(format!("no event relation for `{a}`")))?
                        .iter()
                        .map(|(x, y)| Ok((e(x)?, e(y)?)))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?
        }
        _ => return Err(invalid("the update needs exactly one of `partitions` and `relations`")),
    };
    known_agents(agents, &u.observation, "observation")?;
    let mu = agents
        .iter()
        .map(|a| {
            u.observation
                .get(a)
                .cloned()
                .ok_or_else(|| invalid(format!("no observation probabilities for `{a}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    let designated = match &u.designated {
        Some(d) => e(d)?,
        None => 0,
    };
    UpdateModel::new(
        u.events.clone(),
        agents.to_vec(),
        relations,
        formulas(&u.preconditions)?,
        u.occurrence.clone(),
        mu,
        designated,
    )
}

pub fn update(p: Update) -> Result<Value> {
    let k = p.model.build()?;
    let agents = k.agents().to_vec();
    let pm = probabilistic_model(k, &p.probabilities)?;
    let um = update_model(&p.update, &agents)?;
    let out = product_update(&pm, &um)?;
    let nk = out.kripke();
    let mut mu = Vec::new();
    for (i, agent) in nk.agents().iter().enumerate() {
        for (w, world) in nk.worlds().iter().enumerate() {
            if let Some(d) = out.mu(i, w) {
                let dist: Vec<Value> = d
                    .iter()
                    .map(|&(v, pr)| json!({"world": nk.worlds()[v], "p": pr}))
                    .collect();
                mu.push(json!({"agent": agent, "at": world, "distribution": dist}));
            }
        }
    }
    Ok(json!({
        "worlds": nk.worlds(),
        "designated": nk.worlds()[nk.designated()],
        "probabilities": mu,
        "formulas": truth_rows(&out, &p.formulas)?,
        "probability_queries": probability_rows(&out, &p.probability_queries)?,
    }))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Validity {
    premises: Vec<String>,
    conclusion: String,
    samples: usize,
}

pub fn validity(p: Validity, ctx: &Context) -> Result<Value> {
    let seed = ctx.require_seed("prob-validity")?;
    let r = probabilistic_validity(&formulas(&p.premises)?, &formula(&p.conclusion)?, p.samples, seed)?;
    let cex = r.counterexample.as_ref().map(|c| {
        c.iter()
            .map(|(v, pr)| json!({"valuation": v, "p": pr}))
            .collect::<Vec<_>>()
    });
    Ok(json!({
        "atoms": r.atoms,
        "entailed": r.entailed,
        "sampled_valid": r.sampled_valid,
        "agree": r.agree(),
        "samples": r.samples,
        "counterexample": cex,
    }))
}
