use infoflow::evidence::{
    belief_plausibility, bounds_from_mapping, conflict, dempster_combine, dubois_prade_combine, ConflictWeight, Frame,
    MultivaluedMapping,
};
use infoflow::probability::DiscreteDistribution;
use infoflow::Result;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::spec::{invalid, mass_function, mass_json, FocalSpec};

#[derive(Debug, Deserialize, Default, Clone, Copy)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    #[default]
    Dempster,
    DuboisPrade,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Combine {
    frame: Vec<String>,
    m1: Vec<FocalSpec>,
    m2: Vec<FocalSpec>,
    #[serde(default)]
    rule: Rule,
}

pub fn combine(p: Combine) -> Result<Value> {
    let frame = Frame::new(p.frame)?;
    let m1 = mass_function(&frame, &p.m1)?;
    let m2 = mass_function(&frame, &p.m2)?;
    let (k, weight) = conflict(&m1, &m2)?;
    let (rule, combined) = match p.rule {
        Rule::Dempster => ("dempster", dempster_combine(&m1, &m2)?),
        Rule::DuboisPrade => ("dubois-prade", dubois_prade_combine(&m1, &m2)?),
    };
    let weight = match weight {
        ConflictWeight::Finite(w) => json!(w),
        ConflictWeight::TotalConflict => json!("infinity"),
    };
    Ok(json!({
        "rule": rule,
        "combined": mass_json(&combined),
        "conflict": k,
        "weight_of_conflict": weight,
    }))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MappingSpec {
    sources: Vec<String>,
    probs: Vec<f64>,
    /// Image in the frame of each source outcome.
    images: Vec<Vec<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Bounds {
    frame: Vec<String>,
    #[serde(default)]
    mass: Option<Vec<FocalSpec>>,
    #[serde(default)]
    mapping: Option<MappingSpec>,
    queries: Vec<Vec<String>>,
}

pub fn bounds(p: Bounds) -> Result<Value> {
    let frame = Frame::new(p.frame)?;
    let (m, mapping) = match (&p.mass, p.mapping) {
        (Some(f), None) => (mass_function(&frame, f)?, None),
        (None, Some(mp)) => {
            let source = DiscreteDistribution::new(mp.sources, mp.probs)?;
            let images = mp.images.iter().map(|s| frame.subset(s)).collect::<Result<Vec<_>>>()?;
            let mm = MultivaluedMapping::new(source, frame.clone(), images)?;
            (mm.induced_mass()?, Some(mm))
        }
        _ => return Err(invalid("give exactly one of `mass` and `mapping`")),
    };
    let rows = p
        .queries
        .iter()
        .map(|q| {
            let a = frame.subset(q)?;
            let iv = belief_plausibility(&m, a)?;
            let mut row = json!({
                "set": q,
                "belief": iv.belief,
                "plausibility": iv.plausibility,
                "ignorance": iv.ignorance,
            });
            if let Some(mm) = &mapping {
                let (lo, hi) = bounds_from_mapping(mm, a)?;
                row["mapping_lower"] = json!(lo);
                row["mapping_upper"] = json!(hi);
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(json!({"mass": mass_json(&m), "queries": rows}))
}
