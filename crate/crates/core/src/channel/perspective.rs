use super::Classification;
use crate::error::{invalid, Result};

/// A classification of situations with `involves` and `precludes` relations on its types.
#[derive(Debug, Clone)]
pub struct Perspective {
    classification: Classification,
    involves: Vec<(usize, usize)>,
    precludes: Vec<(usize, usize)>,
}

pub const FACTICITY: &str = "facticity";
pub const XEROX: &str = "xerox";
pub const LOCAL_PRECLUSION: &str = "local preclusion";
pub const MUTUAL_PRECLUSION: &str = "mutual preclusion";

impl Perspective {
    pub fn new(
        classification: Classification,
        involves: Vec<(usize, usize)>,
        precludes: Vec<(usize, usize)>,
    ) -> Result<Self> {
        let n = classification.type_count();
        if involves.iter().chain(&precludes).any(|&(a, b)| a >= n || b >= n) {
            return Err(invalid("perspective relations must range over declared types"));
        }
        Ok(Perspective {
            classification,
            involves,
            precludes,
        })
    }

    pub fn from_names<S: AsRef<str>>(
        classification: Classification,
        involves: impl IntoIterator<Item = (S, S)>,
        precludes: impl IntoIterator<Item = (S, S)>,
    ) -> Result<Self> {
        let resolve = |pairs: Vec<(S, S)>| -> Result<Vec<(usize, usize)>> {
            pairs
                .iter()
                .map(|(a, b)| {
                    let id = |n: &str| {
                        classification
                            .type_id(n)
                            .ok_or_else(|| invalid(format!("undeclared type `{n}`")))
                    };
                    Ok((id(a.as_ref())?, id(b.as_ref())?))
                })
                .collect()
        };
        let inv = resolve(involves.into_iter().collect())?;
        let pre = resolve(precludes.into_iter().collect())?;
        Perspective::new(classification, inv, pre)
    }

    pub fn classification(&self) -> &Classification {
        &self.classification
    }

    /// Names of the violated conditions, in a fixed order; empty when all hold.
    pub fn check(&self) -> Vec<&'static str> {
        let c = &self.classification;
        let inhabited = |t: usize| !c.extension(t).is_empty();
        let involves = |a: usize, b: usize| self.involves.contains(&(a, b));
        let precludes = |a: usize, b: usize| self.precludes.contains(&(a, b));
        let mut violated = Vec::new();
        if self.involves.iter().any(|&(t, u)| inhabited(t) && !inhabited(u)) {
            violated.push(FACTICITY);
        }
        let transitive = self.involves.iter().all(|&(t, u)| {
            self.involves
                .iter()
                .filter(|&&(u2, _)| u2 == u)
                .all(|&(_, v)| involves(t, v))
        });
        if !transitive {
            violated.push(XEROX);
        }
        if self.precludes.iter().any(|&(t, u)| c.extension(t).intersects(c.extension(u))) {
            violated.push(LOCAL_PRECLUSION);
        }
        if self.precludes.iter().any(|&(t, u)| !precludes(u, t)) {
            violated.push(MUTUAL_PRECLUSION);
        }
        violated
    }
}

/// Convenience form of [`Perspective::check`].
pub fn check_perspective(p: &Perspective) -> Vec<&'static str> {
    p.check()
}
