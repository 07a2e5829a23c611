use std::collections::HashMap;

use super::Formula;
use crate::bits::BitSet;
use crate::error::{invalid, Error, Result};

/// Ordered atom set over which truth tables are built.
///
/// Valuation `v` (an integer in `0..2^n`) makes atom `i` true iff bit `i` of `v` is set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    atoms: Vec<String>,
    index: HashMap<String, usize>,
}

impl Signature {
    /// Builds a signature, rejecting more than `max_atoms` atoms.
    pub fn new<S: Into<String>>(atoms: impl IntoIterator<Item = S>, max_atoms: usize) -> Result<Self> {
        let mut list: Vec<String> = Vec::new();
        let mut index = HashMap::new();
        for a in atoms {
            let a = a.into();
            if !index.contains_key(&a) {
                index.insert(a.clone(), list.len());
                list.push(a);
            }
        }
        if list.len() > max_atoms {
            return Err(Error::BudgetExceeded(format!(
                "{} atoms exceed the truth-table budget of {max_atoms}",
                list.len()
            )));
        }
        Ok(Signature { atoms: list, index })
    }

    /// Signature of all atoms occurring in `formulas`, sorted by name.
    pub fn of_formulas<'a>(formulas: impl IntoIterator<Item = &'a Formula>, max_atoms: usize) -> Result<Self> {
        let mut all = std::collections::BTreeSet::new();
        for f in formulas {
            all.extend(f.atoms());
        }
        Signature::new(all, max_atoms)
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn index_of(&self, atom: &str) -> Option<usize> {
        self.index.get(atom).copied()
    }

    pub fn valuation_count(&self) -> usize {
        1usize << self.atoms.len()
    }

    /// Evaluates a propositional formula under one valuation.
    pub fn eval(&self, formula: &Formula, valuation: usize) -> Result<bool> {
        Ok(match formula {
            Formula::True => true,
            Formula::False => false,
            Formula::Atom(a) => {
                let i = self
                    .index_of(a)
                    .ok_or_else(|| invalid(format!("undeclared atom `{a}`")))?;
                valuation >> i & 1 == 1
            }
            Formula::Not(f) => !self.eval(f, valuation)?,
            Formula::And(a, b) => self.eval(a, valuation)? && self.eval(b, valuation)?,
            Formula::Or(a, b) => self.eval(a, valuation)? || self.eval(b, valuation)?,
            Formula::Implies(a, b) => !self.eval(a, valuation)? || self.eval(b, valuation)?,
            other => return Err(invalid(format!("`{other}` is not propositional"))),
        })
    }

    /// The set of valuations satisfying `formula`.
    pub fn models(&self, formula: &Formula) -> Result<ModelSet> {
        Ok(match formula {
            Formula::True => ModelSet::full(self.valuation_count()),
            Formula::False => ModelSet::empty(self.valuation_count()),
            Formula::Atom(a) => {
                let i = self
                    .index_of(a)
                    .ok_or_else(|| invalid(format!("undeclared atom `{a}`")))?;
                atom_models(self.valuation_count(), i)
            }
            Formula::Not(f) => self.models(f)?.complement(),
            Formula::And(a, b) => self.models(a)?.intersection(&self.models(b)?),
            Formula::Or(a, b) => self.models(a)?.union(&self.models(b)?),
            Formula::Implies(a, b) => self.models(a)?.complement().union(&self.models(b)?),
            other => return Err(invalid(format!("`{other}` is not propositional"))),
        })
    }

    /// Models of the conjunction of `formulas`.
    pub fn models_of_all<'a>(&self, formulas: impl IntoIterator<Item = &'a Formula>) -> Result<ModelSet> {
        let mut acc = ModelSet::full(self.valuation_count());
        for f in formulas {
            acc = acc.intersection(&self.models(f)?);
        }
        Ok(acc)
    }

    /// Literal rendering of a valuation, e.g. `p & !q`.
    pub fn describe(&self, valuation: usize) -> String {
        if self.atoms.is_empty() {
            return "true".into();
        }
        self.atoms
            .iter()
            .enumerate()
            .map(|(i, a)| {
                if valuation >> i & 1 == 1 {
                    a.clone()
                } else {
                    format!("!{a}")
                }
            })
            .collect::<Vec<_>>()
            .join(" & ")
    }
}

/// Set of valuations of a [`Signature`].
pub type ModelSet = BitSet;

fn atom_models(len: usize, bit: usize) -> ModelSet {
    ModelSet::from_indices(len, (0..len).filter(|v| v >> bit & 1 == 1))
}
