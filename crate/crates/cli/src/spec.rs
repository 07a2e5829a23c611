//! Payload fragments shared by several tasks and their conversion into library values.

use std::collections::BTreeMap;
use std::sync::Arc;

use infoflow::channel::Classification;
use infoflow::epistemic::{KripkeModel, ProbabilisticKripkeModel};
use infoflow::evidence::{Frame, MassFunction};
use infoflow::logic::{parse, Formula};
use infoflow::vagueness::{HeightScenario, Interval, Regimentation};
use infoflow::{Error, Result};
use serde::Deserialize;
use serde_json::{json, Value};

pub fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

pub fn formula(src: &str) -> Result<Formula> {
    parse(src)
}

pub fn formulas(src: &[String]) -> Result<Vec<Formula>> {
    src.iter().map(|s| parse(s)).collect()
}

pub fn index_in(names: &[String], name: &str, what: &str) -> Result<usize> {
    names
        .iter()
        .position(|n| n == name)
        .ok_or_else(|| invalid(format!("unknown {what} `{name}`")))
}

/// `{"set": ["a", "b"], "mass": 0.4}`
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FocalSpec {
    pub set: Vec<String>,
    pub mass: f64,
}

pub fn mass_function(frame: &Frame, focal: &[FocalSpec]) -> Result<MassFunction> {
    let parts: Vec<(Vec<&str>, f64)> = focal
        .iter()
        .map(|f| (f.set.iter().map(String::as_str).collect(), f.mass))
        .collect();
    MassFunction::from_named(frame.clone(), &parts)
}

pub fn mass_json(m: &MassFunction) -> Value {
    Value::Array(
        m.named_focal()
            .into_iter()
            .map(|(set, mass)| json!({"set": set, "mass": mass}))
            .collect(),
    )
}

/// Worlds, agents, accessibility (as partitions or as relations) and valuation.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KripkeSpec {
    pub worlds: Vec<String>,
    pub agents: Vec<String>,
    /// One partition of the worlds per agent; implies S5.
    #[serde(default)]
    pub partitions: Option<BTreeMap<String, Vec<Vec<String>>>>,
    /// `[from, to]` pairs per agent.
    #[serde(default)]
    pub relations: Option<BTreeMap<String, Vec<(String, String)>>>,
    /// Requires every relation to be an equivalence.
    #[serde(default)]
    pub s5: bool,
    #[serde(default)]
    pub valuation: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub designated: Option<String>,
}

/// Per agent, per world: a distribution over worlds.
pub type ProbabilitySpec = BTreeMap<String, BTreeMap<String, BTreeMap<String, f64>>>;

fn per_agent<'a, T>(agents: &[String], map: &'a BTreeMap<String, T>, what: &str) -> Result<Vec<&'a T>> {
    if let Some(k) = map.keys().find(|k| !agents.contains(k)) {
        return Err(invalid(format!("{what} given for unknown agent `{k}`")));
    }
    agents
        .iter()
        .map(|a| map.get(a).ok_or_else(|| invalid(format!("no {what} for agent `{a}`"))))
        .collect()
}

impl KripkeSpec {
    pub fn build(&self) -> Result<KripkeModel> {
        let w = |n: &str| index_in(&self.worlds, n, "world");
        let valuation = self
            .valuation
            .iter()
            .map(|(atom, ws)| Ok((atom.clone(), ws.iter().map(|x| w(x)).collect::<Result<Vec<_>>>()?)))
            .collect::<Result<Vec<_>>>()?;
        let designated = match &self.designated {
            Some(d) => w(d)?,
            None => 0,
        };
        match (&self.partitions, &self.relations) {
            (Some(parts), None) => {
                let partitions = per_agent(&self.agents, parts, "partition")?
                    .into_iter()
                    .map(|cells| {
                        cells
                            .iter()
                            .map(|c| c.iter().map(|x| w(x)).collect::<Result<Vec<_>>>())
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                KripkeModel::from_partitions(
                    self.worlds.clone(),
                    self.agents.clone(),
                    partitions,
                    valuation,
                    designated,
                )
            }
            (None, Some(rels)) => {
                let relations = per_agent(&self.agents, rels, "relation")?
                    .into_iter()
                    .map(|pairs| pairs.iter().map(|(a, b)| Ok((w(a)?, w(b)?))).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                KripkeModel::new(
                    self.worlds.clone(),
                    self.agents.clone(),
                    relations,
                    valuation,
                    designated,
                    self.s5,
                )
            }
            _ => Err(invalid("give exactly one of `partitions` and `relations`")),
        }
    }
}

pub fn probabilistic_model(k: KripkeModel, spec: &ProbabilitySpec) -> Result<ProbabilisticKripkeModel> {
    let worlds = k.worlds().to_vec();
    let mut mu = Vec::new();
    for agent in k.agents() {
        let given = spec.get(agent);
        let mut per = Vec::with_capacity(worlds.len());
        for w in &worlds {
            per.push(match given.and_then(|g| g.get(w)) {
                Some(d) => Some(
                    d.iter()
                        .map(|(v, p)| Ok((index_in(&worlds, v, "world")?, *p)))
                        .collect::<Result<Vec<_>>>()?,
                ),
                None => None,
            });
        }
        if let Some(g) = given {
            if let Some(x) = g.keys().find(|x| !worlds.contains(x)) {
                return Err(invalid(format!("probabilities given at unknown world `{x}`")));
            }
        }
        mu.push(per);
    }
    if let Some(a) = spec.keys().find(|a| !k.agents().contains(a)) {
        return Err(invalid(format!("probabilities given for unknown agent `{a}`")));
    }
    ProbabilisticKripkeModel::new(k, mu)
}

/// Named objects with heights, or an evenly spaced lattice of heights.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HeightsSpec {
    #[serde(default)]
    pub objects: Option<BTreeMap<String, f64>>,
    #[serde(default)]
    pub lattice: Option<LatticeSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeSpec {
    pub from: f64,
    pub to: f64,
    pub step: f64,
}

impl HeightsSpec {
    pub fn build(&self, variables: usize) -> Result<HeightScenario> {
        match (&self.objects, &self.lattice) {
            (Some(o), None) => HeightScenario::new(o.iter().map(|(n, h)| (n.clone(), *h)), variables),
            (None, Some(l)) => HeightScenario::lattice(l.from, l.to, l.step, variables),
            _ => Err(invalid("give exactly one of `objects` and `lattice`")),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegimentationSpec {
    pub label: String,
    pub tolerance: f64,
    pub predicates: Vec<PredicateSpec>,
}

/// A missing `lo` or `hi` is unbounded on that side.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PredicateSpec {
    pub name: String,
    #[serde(default)]
    pub lo: Option<f64>,
    #[serde(default)]
    pub hi: Option<f64>,
    #[serde(default)]
    pub lo_open: bool,
    #[serde(default)]
    pub hi_open: bool,
}

impl RegimentationSpec {
    pub fn build(&self) -> Result<Regimentation> {
        let preds = self
            .predicates
            .iter()
            .map(|p| {
                let iv = Interval::new(
                    p.lo.unwrap_or(f64::NEG_INFINITY),
                    p.hi.unwrap_or(f64::INFINITY),
                    p.lo_open,
                    p.hi_open,
                )?;
                Ok((p.name.clone(), iv))
            })
            .collect::<Result<Vec<_>>>()?;
        Regimentation::new(self.label.clone(), self.tolerance, preds)
    }
}

pub fn regimentations(specs: &[RegimentationSpec]) -> Result<Vec<Regimentation>> {
    specs.iter().map(RegimentationSpec::build).collect()
}

/// Tokens, types and, per token, the types it is of.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassificationSpec {
    pub tokens: Vec<String>,
    pub types: Vec<String>,
    #[serde(default)]
    pub supports: BTreeMap<String, Vec<String>>,
}

impl ClassificationSpec {
    pub fn build(&self) -> Result<Arc<Classification>> {
        let pairs: Vec<(&str, &str)> = self
            .supports
            .iter()
            .flat_map(|(t, tys)| tys.iter().map(move |a| (t.as_str(), a.as_str())))
            .collect();
        Ok(Arc::new(Classification::new(
            self.tokens.clone(),
            self.types.clone(),
            pairs,
        )?))
    }
}
