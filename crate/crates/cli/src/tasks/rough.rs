use std::collections::BTreeSet;

use infoflow::rough::InformationSystem;
use infoflow::Result;
use serde::Deserialize;
use serde_json::{json, Value};

use super::Context;
use crate::spec::invalid;

/// Header row of attribute names; each row starts with the object id.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableSpec {
    attributes: Vec<String>,
    rows: Vec<Vec<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Rough {
    #[serde(default)]
    table: Option<TableSpec>,
    /// CSV file whose first column holds object ids; relative to the scenario.
    #[serde(default)]
    csv: Option<String>,
    /// Attributes to discern by; all of them when absent.
    #[serde(default)]
    attributes: Option<Vec<String>>,
    target: Vec<String>,
}

fn read_csv(ctx: &Context, path: &str) -> Result<TableSpec> {
    let full = ctx.base_dir.join(path);
    let mut rd = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(&full)
        .map_err(|e| invalid(format!("cannot read {}: {e}", full.display())))?;
    let header = rd.headers().map_err(|e| invalid(format!("{path}: {e}")))?.clone();
    if header.len() < 2 {
        return Err(invalid(format!("{path}: need an object column and at least one attribute")));
    }
    let attributes = header.iter().skip(1).map(str::to_string).collect();
    let rows = rd
        .records()
        .map(|r| {
            r.map(|rec| rec.iter().map(str::to_string).collect())
                .map_err(|e| invalid(format!("{path}: {e}")))
        })
        .collect::<Result<Vec<Vec<String>>>>()?;
    Ok(TableSpec { attributes, rows })
}

fn names(sys: &InformationSystem, set: &BTreeSet<usize>) -> Value {
    json!(sys.object_names(set))
}

pub fn run(p: Rough, ctx: &Context) -> Result<Value> {
    let table = match (p.table, &p.csv) {
        (Some(t), None) => t,
        (None, Some(path)) => read_csv(ctx, path)?,
        _ => return Err(invalid("give exactly one of `table` and `csv`")),
    };
    let mut objects = Vec::with_capacity(table.rows.len());
    let mut values = Vec::with_capacity(table.rows.len());
    for row in table.rows {
        let mut it = row.into_iter();
        objects.push(it.next().ok_or_else(|| invalid("empty table row"))?);
        values.push(it.collect());
    }
    let sys = InformationSystem::new(objects, table.attributes, values)?;
    let chosen = p.attributes.unwrap_or_else(|| sys.attributes().to_vec());
    let b = sys.attribute_ids(&chosen)?;
    let x = sys.object_ids(&p.target)?;
    let classes: Vec<Value> = sys
        .indiscernibility_classes(&b)?
        .into_iter()
        .map(|c| names(&sys, &c.into_iter().collect()))
        .collect();
    let approx = sys.approximate(&b, &x)?;
    Ok(json!({
        "attributes": chosen,
        "classes": classes,
        "lower": names(&sys, &approx.lower),
        "upper": names(&sys, &approx.upper),
        "boundary": names(&sys, &approx.boundary),
        "crisp": approx.is_crisp(),
    }))
}
