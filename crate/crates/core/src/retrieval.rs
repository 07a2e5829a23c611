//! Relevance of documents to queries through constraints between situation types.
//!
//! A document is a situation of some declared type supporting a set of
//! infons. It is fully relevant when it supports every query infon; otherwise
//! its relevance is the strongest single constraint from its own type to a type
//! that does hold a supporting document.

use std::collections::{BTreeMap, BTreeSet};

use crate::channel::Infon;
use crate::error::{invalid, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Edge {
    Unconditional,
    /// Holds with strength `a ∈ (0,1)` under an opaque condition label.
    Conditional { strength: f64, condition: String },
}

impl Edge {
    pub fn strength(&self) -> f64 {
        match self {
            Edge::Unconditional => 1.0,
            Edge::Conditional { strength, .. } => *strength,
        }
    }
}

/// Situation types and the constraints `D ⇒ D'` between them.
#[derive(Debug, Clone, Default)]
pub struct ConstraintGraph {
    types: Vec<String>,
    edges: BTreeMap<(usize, usize), Edge>,
}

impl ConstraintGraph {
    pub fn new<S: Into<String>>(types: impl IntoIterator<Item = S>) -> Result<Self> {
        let types: Vec<String> = types.into_iter().map(Into::into).collect();
        let distinct: BTreeSet<&String> = types.iter().collect();
        if distinct.len() != types.len() {
            return Err(invalid("duplicate situation type"));
        }
        Ok(ConstraintGraph {
            types,
            edges: BTreeMap::new(),
        })
    }

    pub fn types(&self) -> &[String] {
        &self.types
    }

    pub fn type_id(&self, name: &str) -> Result<usize> {
        self.types
            .iter()
            .position(|t| t == name)
            .ok_or_else(|| invalid(format!("undeclared situation type `{name}`")))
    }

    /// Adds or replaces the edge `from ⇒ to`.
    pub fn add_edge(&mut self, from: &str, to: &str, edge: Edge) -> Result<()> {
        if let Edge::Conditional { strength, .. } = &edge {
            if !(*strength > 0.0 && *strength < 1.0) {
                return Err(invalid(format!("conditional strength must lie strictly in (0, 1), got {strength}")));
            }
        }
        let key = (self.type_id(from)?, self.type_id(to)?);
        self.edges.insert(key, edge);
        Ok(())
    }

    pub fn edges(&self) -> impl Iterator<Item = (&str, &str, &Edge)> {
        self.edges
            .iter()
            .map(|(&(a, b), e)| (self.types[a].as_str(), self.types[b].as_str(), e))
    }

    /// `δ(D, D')`: 1 for an unconditional edge, its strength for a conditional one, else 0.
    pub fn delta(&self, from: &str, to: &str) -> Result<f64> {
        let key = (self.type_id(from)?, self.type_id(to)?);
        Ok(self.edges.get(&key).map_or(0.0, Edge::strength))
    }
}

/// `δ(D, D')` on a graph.
pub fn delta(g: &ConstraintGraph, from: &str, to: &str) -> Result<f64> {
    g.delta(from, to)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Document {
    pub id: String,
    pub situation_type: String,
    /// Canonical forms of the supported infons.
    pub infons: BTreeSet<String>,
}

/// Documents and queries; infons are compared by canonical form.
#[derive(Debug, Clone, Default)]
pub struct Corpus {
    documents: Vec<Document>,
    queries: BTreeMap<String, BTreeSet<String>>,
}

impl Corpus {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_document(
        &mut self,
        g: &ConstraintGraph,
        id: impl Into<String>,
        situation_type: impl Into<String>,
        infons: impl IntoIterator<Item = Infon>,
    ) -> Result<()> {
        let (id, situation_type) = (id.into(), situation_type.into());
        g.type_id(&situation_type)?;
        if self.documents.iter().any(|d| d.id == id) {
            return Err(invalid(format!("duplicate document `{id}`")));
        }
        self.documents.push(Document {
            id,
            situation_type,
            infons: infons.into_iter().map(|i| i.canonical()).collect(),
        });
        Ok(())
    }

    pub fn add_query(&mut self, id: impl Into<String>, infons: impl IntoIterator<Item = Infon>) -> Result<()> {
        let id = id.into();
        if self.queries.contains_key(&id) {
            return Err(invalid(format!("duplicate query `{id}`")));
        }
        self.queries.insert(id, infons.into_iter().map(|i| i.canonical()).collect());
        Ok(())
    }

    pub fn documents(&self) -> &[Document] {
        &self.documents
    }

    pub fn query_ids(&self) -> impl Iterator<Item = &str> {
        self.queries.keys().map(String::as_str)
    }

    fn document(&self, id: &str) -> Result<&Document> {
        self.documents
            .iter()
            .find(|d| d.id == id)
            .ok_or_else(|| invalid(format!("unknown document `{id}`")))
    }

    fn query(&self, id: &str) -> Result<&BTreeSet<String>> {
        self.queries.get(id).ok_or_else(|| invalid(format!("unknown query `{id}`")))
    }
}

/// Relevance of document `d` to query `q`.
pub fn relevance(g: &ConstraintGraph, corpus: &Corpus, d: &str, q: &str) -> Result<f64> {
    let doc = corpus.document(d)?;
    let query = corpus.query(q)?;
    if query.is_subset(&doc.infons) {
        return Ok(1.0);
    }
    let from = g.type_id(&doc.situation_type)?;
    let mut best = 0.0f64;
    for other in corpus.documents.iter().filter(|o| query.is_subset(&o.infons)) {
        let to = g.type_id(&other.situation_type)?;
        if let Some(e) = g.edges.get(&(from, to)) {
            best = best.max(e.strength());
        }
    }
    Ok(best)
}

/// Every document scored against `q`, highest first; ties by id.
pub fn rank(g: &ConstraintGraph, corpus: &Corpus, q: &str) -> Result<Vec<(String, f64)>> {
    let mut out = corpus
        .documents
        .iter()
        .map(|d| Ok((d.id.clone(), relevance(g, corpus, &d.id, q)?)))
        .collect::<Result<Vec<_>>>()?;
    out.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    Ok(out)
}
