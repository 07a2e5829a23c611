use std::collections::{BTreeSet, HashMap};

use super::Infon;
use crate::bits::BitSet;
use crate::error::{invalid, Result};

/// Tokens, types, and which tokens are of which types.
///
/// Ids are interned at construction; every operation works on indices. The
/// support relation is stored as one token bitset per type (its extension).
/// A classification is immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    tokens: Vec<String>,
    types: Vec<String>,
    token_index: HashMap<String, usize>,
    type_index: HashMap<String, usize>,
    extensions: Vec<BitSet>,
}

fn intern(names: Vec<String>, what: &str) -> Result<(Vec<String>, HashMap<String, usize>)> {
    let mut index = HashMap::with_capacity(names.len());
    for (i, n) in names.iter().enumerate() {
        if index.insert(n.clone(), i).is_some() {
            return Err(invalid(format!("duplicate {what} `{n}`")));
        }
    }
    Ok((names, index))
}

impl Classification {
    /// Builds a classification from named support pairs `(token, type)`.
    ///
    /// The token set must be non-empty; the type set may be empty.
    pub fn new<S, T, P>(
        tokens: impl IntoIterator<Item = S>,
        types: impl IntoIterator<Item = T>,
        supports: impl IntoIterator<Item = (P, P)>,
    ) -> Result<Self>
    where
        S: Into<String>,
        T: Into<String>,
        P: AsRef<str>,
    {
        let mut c = Self::empty(
            tokens.into_iter().map(Into::into).collect(),
            types.into_iter().map(Into::into).collect(),
        )?;
        for (tok, typ) in supports {
            let (tok, typ) = (tok.as_ref(), typ.as_ref());
            let t = c
                .token_id(tok)
                .ok_or_else(|| invalid(format!("support pair uses undeclared token `{tok}`")))?;
            let a = c
                .type_id(typ)
                .ok_or_else(|| invalid(format!("support pair uses undeclared type `{typ}`")))?;
            c.extensions[a].insert(t);
        }
        Ok(c)
    }

    /// Builds a classification whose support relation is given by a predicate on indices.
    pub fn from_fn<S, T>(
        tokens: impl IntoIterator<Item = S>,
        types: impl IntoIterator<Item = T>,
        mut supports: impl FnMut(usize, usize) -> bool,
    ) -> Result<Self>
    where
        S: Into<String>,
        T: Into<String>,
    {
        let mut c = Self::empty(
            tokens.into_iter().map(Into::into).collect(),
            types.into_iter().map(Into::into).collect(),
        )?;
        for a in 0..c.types.len() {
            for t in 0..c.tokens.len() {
                if supports(t, a) {
                    c.extensions[a].insert(t);
                }
            }
        }
        Ok(c)
    }

    /// Each token is a situation; its types are the canonical forms of the infons it supports.
    pub fn from_situations<S: Into<String>>(
        situations: impl IntoIterator<Item = (S, Vec<Infon>)>,
    ) -> Result<Self> {
        let situations: Vec<(String, BTreeSet<String>)> = situations
            .into_iter()
            .map(|(s, infons)| (s.into(), infons.iter().map(Infon::canonical).collect()))
            .collect();
        let types: BTreeSet<String> = situations.iter().flat_map(|(_, t)| t.iter().cloned()).collect();
        let pairs: Vec<(String, String)> = situations
            .iter()
            .flat_map(|(s, ts)| ts.iter().map(move |t| (s.clone(), t.clone())))
            .collect();
        Self::new(situations.iter().map(|(s, _)| s.clone()), types, pairs)
    }

    fn empty(tokens: Vec<String>, types: Vec<String>) -> Result<Self> {
        if tokens.is_empty() {
            return Err(invalid("a classification needs at least one token"));
        }
        let (tokens, token_index) = intern(tokens, "token")?;
        let (types, type_index) = intern(types, "type")?;
        let extensions = vec![BitSet::empty(tokens.len()); types.len()];
        Ok(Classification {
            tokens,
            types,
            token_index,
            type_index,
            extensions,
        })
    }

    pub fn token_count(&self) -> usize {
        self.tokens.len()
    }

    pub fn type_count(&self) -> usize {
        self.types.len()
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn types(&self) -> &[String] {
        &self.types
    }

    pub fn token(&self, t: usize) -> &str {
        &self.tokens[t]
    }

    pub fn type_name(&self, a: usize) -> &str {
        &self.types[a]
    }

    pub fn token_id(&self, name: &str) -> Option<usize> {
        self.token_index.get(name).copied()
    }

    pub fn type_id(&self, name: &str) -> Option<usize> {
        self.type_index.get(name).copied()
    }

    pub fn supports(&self, token: usize, typ: usize) -> bool {
        self.extensions[typ].contains(token)
    }

    /// Tokens of type `typ`.
    pub fn extension(&self, typ: usize) -> &BitSet {
        &self.extensions[typ]
    }

    /// All types of a token: the abstract situation it determines.
    pub fn type_set(&self, token: usize) -> BTreeSet<usize> {
        (0..self.types.len()).filter(|&a| self.supports(token, a)).collect()
    }

    pub fn type_ids<S: AsRef<str>>(&self, names: impl IntoIterator<Item = S>) -> Result<BTreeSet<usize>> {
        names
            .into_iter()
            .map(|n| {
                let n = n.as_ref();
                self.type_id(n).ok_or_else(|| invalid(format!("undeclared type `{n}`")))
            })
            .collect()
    }

    pub fn token_ids<S: AsRef<str>>(&self, names: impl IntoIterator<Item = S>) -> Result<BTreeSet<usize>> {
        names
            .into_iter()
            .map(|n| {
                let n = n.as_ref();
                self.token_id(n).ok_or_else(|| invalid(format!("undeclared token `{n}`")))
            })
            .collect()
    }

    pub fn all_tokens(&self) -> BTreeSet<usize> {
        (0..self.tokens.len()).collect()
    }

    pub(crate) fn check_tokens(&self, tokens: &BTreeSet<usize>) -> Result<()> {
        match tokens.iter().find(|&&t| t >= self.tokens.len()) {
            Some(t) => Err(invalid(format!("token index {t} out of range"))),
            None => Ok(()),
        }
    }

    pub(crate) fn check_types(&self, types: &BTreeSet<usize>) -> Result<()> {
        match types.iter().find(|&&a| a >= self.types.len()) {
            Some(a) => Err(invalid(format!("type index {a} out of range"))),
            None => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_from_pairs_and_predicate() {
        let a = Classification::new(["s1", "s2"], ["red", "round"], [("s1", "red"), ("s2", "round")]).unwrap();
        let b = Classification::from_fn(["s1", "s2"], ["red", "round"], |t, ty| t == ty).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.type_set(1), BTreeSet::from([1]));
        assert!(a.supports(0, 0) && !a.supports(0, 1));
    }

    #[test]
    fn rejects_bad_declarations() {
        assert!(Classification::new(["s"], ["t"], [("s", "u")]).is_err());
        assert!(Classification::new(["s"], ["t"], [("x", "t")]).is_err());
        assert!(Classification::new(["s", "s"], ["t"], Vec::<(&str, &str)>::new()).is_err());
        assert!(Classification::new(Vec::<&str>::new(), ["t"], Vec::<(&str, &str)>::new()).is_err());
        assert!(Classification::new(["s"], Vec::<&str>::new(), Vec::<(&str, &str)>::new()).is_ok());
    }

    #[test]
    fn situations_become_infon_types() {
        let drive = Infon::new("drives", ["bob", "car"]).unwrap();
        let walk = Infon::new("walks", ["ann"]).unwrap();
        let c = Classification::from_situations([
            ("s1", vec![drive.clone()]),
            ("s2", vec![drive.clone(), walk.clone()]),
        ])
        .unwrap();
        assert_eq!(c.type_count(), 2);
        let d = c.type_id(&drive.canonical()).unwrap();
        assert_eq!(c.extension(d).count(), 2);
    }
}
