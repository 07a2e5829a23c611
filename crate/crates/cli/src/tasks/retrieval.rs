use infoflow::channel::Infon;
use infoflow::retrieval::{rank, ConstraintGraph, Corpus, Edge};
use infoflow::Result;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::spec::invalid;

/// Unconditional without `strength`; conditional with a strength in `(0, 1)`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeSpec {
    from: String,
    to: String,
    #[serde(default)]
    strength: Option<f64>,
    #[serde(default)]
    condition: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DocumentSpec {
    id: String,
    #[serde(rename = "type")]
    situation_type: String,
    infons: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuerySpec {
    id: String,
    infons: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Ir {
    types: Vec<String>,
    #[serde(default)]
    edges: Vec<EdgeSpec>,
    documents: Vec<DocumentSpec>,
    queries: Vec<QuerySpec>,
}

fn infons(src: &[String]) -> Result<Vec<Infon>> {
    src.iter().map(|s| s.parse()).collect()
}

pub fn run(p: Ir) -> Result<Value> {
    let mut g = ConstraintGraph::new(p.types)?;
    for e in p.edges {
        let edge = match (e.strength, e.condition) {
            (None, None) => Edge::Unconditional,
            (Some(strength), condition) => Edge::Conditional {
                strength,
                condition: condition.unwrap_or_default(),
            },
            (None, Some(_)) => return Err(invalid(format!("edge {} -> {} has a condition but no strength", e.from, e.to))),
        };
        g.add_edge(&e.from, &e.to, edge)?;
    }
    let mut corpus = Corpus::new();
    for d in &p.documents {
        corpus.add_document(&g, d.id.clone(), d.situation_type.clone(), infons(&d.infons)?)?;
    }
    for q in &p.queries {
        corpus.add_query(q.id.clone(), infons(&q.infons)?)?;
    }
    let rankings = p
        .queries
        .iter()
        .map(|q| {
            let rows: Vec<Value> = rank(&g, &corpus, &q.id)?
                .into_iter()
                .map(|(d, s)| json!({"document": d, "score": s}))
                .collect();
            Ok(json!({"query": q.id, "ranking": rows}))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(json!({"rankings": rankings}))
}
