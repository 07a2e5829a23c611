use infoflow::vagueness::{sorites_check, SoritesVerdict};
use infoflow::Result;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::spec::{invalid, regimentations, HeightsSpec, RegimentationSpec};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sorites {
    heights: HeightsSpec,
    regimentations: Vec<RegimentationSpec>,
    chain_length: usize,
    /// Also report the verdict for every length from 2 up to this one.
    #[serde(default)]
    scan_to: Option<usize>,
}

pub fn sorites(p: Sorites) -> Result<Value> {
    let family = regimentations(&p.regimentations)?;
    let top = p.chain_length.max(p.scan_to.unwrap_or(0));
    let sc = p.heights.build(top)?;
    let report = sorites_check(&sc, &family, p.chain_length)?;
    let witness = match &report.verdict {
        SoritesVerdict::Derivable => Value::Null,
        SoritesVerdict::NonDerivable(w) => json!({
            "regimentation": w.regimentation,
            "chain": w.chain.iter().map(|&o| sc.objects()[o].clone()).collect::<Vec<_>>(),
            "heights": w.heights,
        }),
    };
    let mut out = json!({
        "low": report.low,
        "high": report.high,
        "chain_length": report.chain_length,
        "derivable": report.derivable(),
        "witness": witness,
        "threshold": report.threshold,
    });
    if let Some(m) = p.scan_to {
        if m < 2 {
            return Err(invalid("`scan_to` must be at least 2"));
        }
        let rows = (2..=m)
            .map(|n| Ok(json!({"n": n, "derivable": sorites_check(&sc, &family, n)?.derivable()})))
            .collect::<Result<Vec<_>>>()?;
        out["scan"] = Value::Array(rows);
    }
    Ok(out)
}
