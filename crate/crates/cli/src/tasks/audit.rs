use infoflow::audit::{
    audit, grid_masses, grid_possibilities, random_masses, random_possibilities, Arity, AuditReport,
    DuboisPradeOperator, InformationItem, PossibilityOperator, TableOperator, WorldSet,
};
use infoflow::evidence::{FocalSet, Frame};
use infoflow::possibility::{FusionMode, PossibilityDistribution};
use infoflow::Result;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use serde_json::{json, Value};

use super::Context;
use crate::spec::{index_in, invalid, mass_function, FocalSpec};

#[derive(Debug, Deserialize, Clone, Copy)]
#[serde(rename_all = "kebab-case")]
pub enum OperatorKind {
    DuboisPrade,
    PossibilityMin,
    PossibilityProduct,
    PossibilityMax,
    Table,
}

/// Exactly one way of producing the audited inputs.
#[derive(Debug, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    /// Every value whose weights are multiples of the step.
    #[serde(default)]
    grid: Option<f64>,
    /// This many random values; needs a seed.
    #[serde(default)]
    random: Option<usize>,
    /// Mass functions (lists of focal sets) or possibility vectors.
    #[serde(default)]
    explicit: Option<Vec<Value>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ItemSpec {
    name: String,
    /// Contour in `[0, 1]` per world; or give support, core and ranking.
    #[serde(default)]
    contour: Option<Vec<f64>>,
    #[serde(default)]
    support: Option<Vec<String>>,
    #[serde(default)]
    core: Option<Vec<String>>,
    #[serde(default)]
    ranking: Option<Vec<u32>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntrySpec {
    inputs: Vec<String>,
    output: String,
}

#[derive(Debug, Deserialize, Clone, Copy)]
#[serde(rename_all = "kebab-case")]
pub enum ArityName {
    Binary,
    NAry,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableSpec {
    #[serde(default = "table_name")]
    name: String,
    arity: ArityName,
    items: Vec<ItemSpec>,
    vacuous: String,
    entries: Vec<EntrySpec>,
}

fn table_name() -> String {
    "table".into()
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Audit {
    operator: OperatorKind,
    worlds: Vec<String>,
    #[serde(default)]
    family: FamilySpec,
    #[serde(default)]
    table: Option<TableSpec>,
}

enum Source {
    Grid(f64),
    Random(usize, u64),
    Explicit(Vec<Value>),
}

fn source(f: FamilySpec, ctx: &Context) -> Result<Source> {
    match (f.grid, f.random, f.explicit) {
        (Some(s), None, None) => Ok(Source::Grid(s)),
        (None, Some(n), None) => Ok(Source::Random(n, ctx.require_seed("audit")?)),
        (None, None, Some(v)) => Ok(Source::Explicit(v)),
        _ => Err(invalid("the family needs exactly one of `grid`, `random` and `explicit`")),
    }
}

fn world_set(worlds: &[String], names: &[String]) -> Result<WorldSet> {
    let mut bits = 0u32;
    for n in names {
        bits |= 1 << index_in(worlds, n, "world")?;
    }
    Ok(FocalSet(bits))
}

fn table_operator(worlds: &[String], t: TableSpec) -> Result<TableOperator> {
    let items = t
        .items
        .into_iter()
        .map(|i| {
            let item = match (i.contour, i.support, i.core, i.ranking) {
                (Some(c), None, None, None) => InformationItem::from_contour(worlds.to_vec(), &c)?,
                (None, Some(s), Some(c), Some(r)) => {
                    InformationItem::new(worlds.to_vec(), world_set(worlds, &s)?, world_set(worlds, &c)?, r)?
                }
                _ => {
                    return Err(invalid(format!(
                        "item `{}` needs either `contour` or `support`, `core` and `ranking`",
                        i.name
                    )))
                }
            };
            Ok((i.name, item))
        })
        .collect::<Result<Vec<_>>>()?;
    let arity = match t.arity {
        ArityName::Binary => Arity::Binary,
        ArityName::NAry => Arity::NAry,
    };
    let entries: Vec<(Vec<String>, String)> = t.entries.into_iter().map(|e| (e.inputs, e.output)).collect();
    TableOperator::new(t.name, arity, items, &t.vacuous, &entries)
}

pub fn run(p: Audit, ctx: &Context) -> Result<Value> {
    if p.table.is_some() && !matches!(p.operator, OperatorKind::Table) {
        return Err(invalid("`table` is only read by the table operator"));
    }
    let report = match p.operator {
        OperatorKind::DuboisPrade => {
            let frame = Frame::new(p.worlds.clone())?;
            let family = match source(p.family, ctx)? {
                Source::Grid(s) => grid_masses(&frame, s)?,
                Source::Random(n, seed) => random_masses(&frame, n, &mut ChaCha8Rng::seed_from_u64(seed)),
                Source::Explicit(v) => v
                    .into_iter()
                    .map(|m| {
                        let focal: Vec<FocalSpec> =
                            serde_json::from_value(m).map_err(|e| invalid(format!("explicit mass: {e}")))?;
                        mass_function(&frame, &focal)
                    })
                    .collect::<Result<_>>()?,
            };
            audit(&DuboisPradeOperator::new(frame), &family)?
        }
        OperatorKind::PossibilityMin | OperatorKind::PossibilityProduct | OperatorKind::PossibilityMax => {
            let mode = match p.operator {
                OperatorKind::PossibilityMin => FusionMode::AndMin,
                OperatorKind::PossibilityProduct => FusionMode::AndProduct,
                _ => FusionMode::OrMax,
            };
            let family = match source(p.family, ctx)? {
                Source::Grid(s) => grid_possibilities(&p.worlds, s)?,
                Source::Random(n, seed) => random_possibilities(&p.worlds, n, &mut ChaCha8Rng::seed_from_u64(seed)),
                Source::Explicit(v) => v
                    .into_iter()
                    .map(|x| {
                        let vals: Vec<f64> =
                            serde_json::from_value(x).map_err(|e| invalid(format!("explicit distribution: {e}")))?;
                        PossibilityDistribution::new(p.worlds.clone(), vals)
                    })
                    .collect::<Result<_>>()?,
            };
            audit(&PossibilityOperator::new(p.worlds.clone(), mode), &family)?
        }
        OperatorKind::Table => {
            let t = p.table.ok_or_else(|| invalid("the table operator needs a `table`"))?;
            let FamilySpec { grid, random, explicit } = p.family;
            if grid.is_some() || random.is_some() {
                return Err(invalid("a table operator is audited on its own items, optionally `explicit` names"));
            }
            let op = table_operator(&p.worlds, t)?;
            let family = match explicit {
                None => (0..op.item_names().len()).collect::<Vec<_>>(),
                Some(v) => v
                    .iter()
                    .map(|x| {
                        let name = x.as_str().ok_or_else(|| invalid("explicit table items are names"))?;
                        op.id_of(name).ok_or_else(|| invalid(format!("unknown item `{name}`")))
                    })
                    .collect::<Result<_>>()?,
            };
            audit(&op, &family)?
        }
    };
    Ok(report_json(&report))
}

pub fn report_json(r: &AuditReport) -> Value {
    let verdicts: Vec<Value> = r
        .verdicts
        .iter()
        .map(|v| {
            let cex = v.counterexample.as_ref().map(|c| {
                let mut o = json!({"inputs": c.inputs, "output": c.output, "detail": c.detail});
                if let Some((ins, out)) = &c.permuted {
                    o["permuted_inputs"] = json!(ins);
                    o["permuted_output"] = json!(out);
                }
                o
            });
            json!({
                "postulate": v.postulate.name(),
                "tested": v.postulate.test_statement(),
                "passed": v.passed,
                "checks": v.checks,
                "violations": v.violations,
                "counterexample": cex,
            })
        })
        .collect();
    json!({
        "operator": r.operator,
        "arity": match r.arity { Arity::Binary => "binary", Arity::NAry => "n-ary" },
        "family_size": r.family_size,
        "tuples": r.tuples,
        "conventions": r.header,
        "verdicts": verdicts,
        "all_passed": r.all_passed(),
    })
}
