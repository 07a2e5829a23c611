use infoflow::defaults::{
    closed_world, cons_diff, credulous_entails, default_extensions, entails, is_consistent, mcs_indices, skeptical_entails, verify_extension, DefaultRule, Engine, MonotonicityReport, PropKB,
};
use infoflow::logic::Formula;
use infoflow::Result;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::spec::{formula, formulas};

fn kb(atoms: &Option<Vec<String>>, fs: Vec<Formula>) -> Result<PropKB> {
    match atoms {
        Some(a) => PropKB::new(a.clone(), fs),
        None => PropKB::from_formulas(fs),
    }
}

fn strings(fs: &[Formula]) -> Vec<String> {
    fs.iter().map(ToString::to_string).collect()
}

fn monotonicity_json(r: &MonotonicityReport) -> Value {
    json!({
        "engine": r.engine,
        "lost": strings(&r.lost),
        "gained": strings(&r.gained),
        "monotonic": r.monotonic(),
    })
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleSpec {
    #[serde(default)]
    prerequisites: Vec<String>,
    #[serde(default)]
    blockers: Vec<String>,
    conclusion: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Defaults {
    #[serde(default)]
    atoms: Option<Vec<String>>,
    facts: Vec<String>,
    rules: Vec<RuleSpec>,
    #[serde(default)]
    probes: Vec<String>,
    /// Facts after new information; compared with `facts` under skeptical default consequence.
    #[serde(default)]
    revised_facts: Option<Vec<String>>,
}

pub fn defaults(p: Defaults) -> Result<Value> {
    let rules = p
        .rules
        .iter()
        .map(|r| Ok(DefaultRule::new(formulas(&r.prerequisites)?, formulas(&r.blockers)?, formula(&r.conclusion)?)))
        .collect::<Result<Vec<_>>>()?;
    let facts = kb(&p.atoms, formulas(&p.facts)?)?;
    let exts = default_extensions(&facts, &rules)?;
    let ext_rows = exts
        .iter()
        .map(|e| {
            Ok(json!({
                "applied": e.applied.iter().map(|&i| rules[i].to_string()).collect::<Vec<_>>(),
                "theory": strings(e.theory.formulas()),
                "verified": verify_extension(&facts, &rules, e)?,
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    let probes = formulas(&p.probes)?;
    let skeptical = Engine::SkepticalDefault(rules.clone());
    let credulous = Engine::CredulousDefault(rules);
    let probe_rows = probes
        .iter()
        .map(|f| {
            Ok(json!({
                "formula": f.to_string(),
                "skeptical": skeptical.consequence(&facts, f)?,
                "credulous": credulous.consequence(&facts, f)?,
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = json!({"extensions": ext_rows, "probes": probe_rows});
    if let Some(rev) = &p.revised_facts {
        let after = kb(&p.atoms, formulas(rev)?)?;
        out["revision"] = monotonicity_json(&cons_diff(&skeptical, &facts, &after, &probes)?);
    }
    Ok(out)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Mcs {
    #[serde(default)]
    atoms: Option<Vec<String>>,
    formulas: Vec<String>,
    #[serde(default)]
    probes: Vec<String>,
    /// Formulas appended to the base; consequences before and after are compared.
    #[serde(default)]
    added: Option<Vec<String>>,
}

pub fn mcs(p: Mcs) -> Result<Value> {
    let base = kb(&p.atoms, formulas(&p.formulas)?)?;
    let subsets: Vec<Vec<String>> = mcs_indices(&base)?
        .into_iter()
        .map(|ix| ix.into_iter().map(|i| base.formulas()[i].to_string()).collect())
        .collect();
    let probes = formulas(&p.probes)?;
    let probe_rows = probes
        .iter()
        .map(|f| {
            Ok(json!({
                "formula": f.to_string(),
                "skeptical": skeptical_entails(&base, f)?,
                "credulous": credulous_entails(&base, f)?,
                "classical": entails(&base, f)?,
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = json!({
        "consistent": is_consistent(&base)?,
        "subsets": subsets,
        "probes": probe_rows,
    });
    if let Some(extra) = &p.added {
        let mut all = base.formulas().to_vec();
        all.extend(formulas(extra)?);
        let after = kb(&p.atoms, all)?;
        out["revision"] = monotonicity_json(&cons_diff(&Engine::SkepticalMcs, &base, &after, &probes)?);
    }
    Ok(out)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Cwa {
    #[serde(default)]
    atoms: Option<Vec<String>>,
    formulas: Vec<String>,
    #[serde(default)]
    probes: Vec<String>,
}

pub fn cwa(p: Cwa) -> Result<Value> {
    let base = kb(&p.atoms, formulas(&p.formulas)?)?;
    let closed = closed_world(&base)?;
    let added: Vec<String> = closed.formulas()[base.len()..].iter().map(ToString::to_string).collect();
    let probe_rows = formulas(&p.probes)?
        .iter()
        .map(|f| Ok(json!({"formula": f.to_string(), "entailed": entails(&closed, f)?})))
        .collect::<Result<Vec<_>>>()?;
    Ok(json!({
        "closed": strings(closed.formulas()),
        "assumed": added,
        "probes": probe_rows,
    }))
}
