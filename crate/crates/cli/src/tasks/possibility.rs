use std::collections::BTreeSet;

use infoflow::possibility::{fuse as fuse_all, fuzzy_combine, FusionMode, FuzzyOp, FuzzySet, PossibilityDistribution};
use infoflow::Result;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::spec::invalid;

fn values_json(pi: &PossibilityDistribution) -> Value {
    Value::Array(
        pi.universe()
            .iter()
            .zip(pi.values())
            .map(|(w, v)| json!({"element": w, "degree": v}))
            .collect(),
    )
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FuzzyPair {
    a: Vec<f64>,
    b: Vec<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Possibility {
    universe: Vec<String>,
    pi: Vec<f64>,
    #[serde(default)]
    events: Vec<Vec<String>>,
    #[serde(default)]
    condition_on: Option<Vec<String>>,
    /// Reliability in `[0, 1]`.
    #[serde(default)]
    discount: Option<f64>,
    /// Membership vectors over the universe.
    #[serde(default)]
    fuzzy: Option<FuzzyPair>,
}

pub fn possibility(p: Possibility) -> Result<Value> {
    let pi = PossibilityDistribution::new(p.universe.clone(), p.pi)?;
    let all: BTreeSet<usize> = (0..p.universe.len()).collect();
    let events = p
        .events
        .iter()
        .map(|e| {
            let a = pi.subset(e)?;
            let rest: BTreeSet<usize> = all.difference(&a).copied().collect();
            let poss = pi.possibility_of(&a)?;
            let nec = 1.0 - pi.possibility_of(&rest)?;
            Ok(json!({"event": e, "possibility": poss, "necessity": nec}))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = json!({
        "height": pi.height(),
        "normalized": pi.is_normalized(),
        "events": events,
    });
    if let Some(c) = &p.condition_on {
        out["conditioned"] = values_json(&pi.condition(&pi.subset(c)?)?);
    }
    if let Some(lambda) = p.discount {
        out["discounted"] = values_json(&pi.discount(lambda)?);
    }
    if let Some(f) = p.fuzzy {
        let a = FuzzySet::new(p.universe.clone(), f.a)?;
        let b = FuzzySet::new(p.universe.clone(), f.b)?;
        out["fuzzy"] = json!({
            "intersection": fuzzy_combine(&a, &b, FuzzyOp::Intersection)?.membership(),
            "union": fuzzy_combine(&a, &b, FuzzyOp::Union)?.membership(),
            "complement_a": a.complement().membership(),
        });
    }
    Ok(out)
}

#[derive(Debug, Deserialize, Clone, Copy)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    AndMin,
    AndProduct,
    OrMax,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fuse {
    universe: Vec<String>,
    sources: Vec<Vec<f64>>,
    mode: Mode,
    /// One reliability per source, applied by discounting before fusion.
    #[serde(default)]
    reliabilities: Option<Vec<f64>>,
}

pub fn fuse(p: Fuse) -> Result<Value> {
    let mut sources = p
        .sources
        .into_iter()
        .map(|v| PossibilityDistribution::new(p.universe.clone(), v))
        .collect::<Result<Vec<_>>>()?;
    if let Some(r) = &p.reliabilities {
        if r.len() != sources.len() {
            return Err(invalid("one reliability per source is required"));
        }
        sources = sources.iter().zip(r).map(|(s, &l)| s.discount(l)).collect::<Result<_>>()?;
    }
    let mode = match p.mode {
        Mode::AndMin => FusionMode::AndMin,
        Mode::AndProduct => FusionMode::AndProduct,
        Mode::OrMax => FusionMode::OrMax,
    };
    let fused = fuse_all(&sources, mode)?;
    Ok(json!({
        "fused": values_json(&fused),
        "height": fused.height(),
        "normalized": fused.is_normalized(),
    }))
}
