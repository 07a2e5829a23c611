use std::collections::BTreeMap;

use infoflow::channel::{check_infomorphism, derive_local_logic, pullback_logic, Infomorphism};
use infoflow::vagueness::{build_regimentation_morphism, intensional_logic};
use infoflow::Result;
use serde::Deserialize;
use serde_json::{json, Value};

use super::Context;
use crate::spec::{invalid, regimentations, ClassificationSpec, HeightsSpec, RegimentationSpec};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LogicSpec {
    /// Normal target tokens; all of them when absent.
    #[serde(default)]
    normal: Option<Vec<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Explicit {
    source: ClassificationSpec,
    target: ClassificationSpec,
    /// Source type to target type.
    type_map: BTreeMap<String, String>,
    /// Target token to source token.
    token_map: BTreeMap<String, String>,
    /// Derive the target's logic and pull it back to the source.
    #[serde(default)]
    logic: Option<LogicSpec>,
}

/// The morphism each regimentation induces from the agent classification
/// into the event state space.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegimentationCheck {
    pub heights: HeightsSpec,
    pub variables: usize,
    pub regimentations: Vec<RegimentationSpec>,
    #[serde(default = "one")]
    pub conj_width: usize,
    /// Also derive the intensional logic (meet over the family).
    #[serde(default)]
    pub logic: bool,
}

fn one() -> usize {
    1
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InfomorphismTask {
    #[serde(default)]
    explicit: Option<Explicit>,
    #[serde(default)]
    regimentation: Option<RegimentationCheck>,
}

fn check_json(f: &Infomorphism) -> Value {
    let c = check_infomorphism(f);
    let violations: Vec<Value> = f
        .named_violations(&c)
        .into_iter()
        .map(|(token, typ)| json!({"target_token": token, "source_type": typ}))
        .collect();
    json!({
        "valid": c.is_valid(),
        "violations": violations,
        "source_types": f.source().type_count(),
        "target_tokens": f.target().token_count(),
    })
}

fn explicit(p: Explicit, width: usize) -> Result<Value> {
    let source = p.source.build()?;
    let target = p.target.build()?;
    let f = Infomorphism::from_names(source, target.clone(), p.type_map.iter(), p.token_map.iter())?;
    let mut out = check_json(&f);
    if let Some(l) = p.logic {
        let normal = match &l.normal {
            Some(n) => target.token_ids(n)?,
            None => target.all_tokens(),
        };
        let log = derive_local_logic(target, &normal, width)?;
        let back = pullback_logic(&f, &log)?;
        out["target_logic"] = json!(log.describe());
        out["pulled_back_logic"] = json!(back.describe());
        out["pulled_back_normal"] = json!(back
            .normal_tokens()
            .iter()
            .map(|&t| back.host().token(t).to_string())
            .collect::<Vec<_>>());
    }
    Ok(out)
}

pub fn regimentation(p: &RegimentationCheck, width: usize) -> Result<Value> {
    let sc = p.heights.build(p.variables)?;
    let family = regimentations(&p.regimentations)?;
    let rows = family
        .iter()
        .map(|r| {
            let f = build_regimentation_morphism(&sc, r, p.conj_width)?;
            let mut row = check_json(&f);
            row["regimentation"] = json!(r.label());
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = json!({"morphisms": rows});
    if p.logic {
        let il = intensional_logic(&sc, &family, p.conj_width, width)?;
        out["logic"] = json!({
            "width": width,
            "per_regimentation": family
                .iter()
                .zip(&il.per_regimentation)
                .map(|(r, l)| json!({"regimentation": r.label(), "constraints": l.constraints().len()}))
                .collect::<Vec<_>>(),
            "meet_constraints": il.meet.constraints().len(),
        });
    }
    Ok(out)
}

pub fn run(p: InfomorphismTask, ctx: &Context) -> Result<Value> {
    match (p.explicit, p.regimentation) {
        (Some(e), None) => explicit(e, ctx.max_width),
        (None, Some(r)) => regimentation(&r, ctx.max_width),
        _ => Err(invalid("give exactly one of `explicit` and `regimentation`")),
    }
}
