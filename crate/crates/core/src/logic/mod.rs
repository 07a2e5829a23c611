//! Formula language shared by the propositional, default and epistemic engines.
//!
//! Surface syntax: atoms (`p`, `bird(tweety)`), `true`, `false`, `!`, `&`, `|`,
//! `->`, `K{a}`, `C{a,b}`, and linear probability constraints such as
//! `1*P{a}[p] - 2*P{a}[q] >= 0`.

mod parse;
mod truth;

use std::collections::BTreeSet;
use std::fmt;

pub use parse::parse;
pub use truth::{ModelSet, Signature};

#[derive(Debug, Clone, PartialEq)]
pub enum Formula {
    True,
    False,
    Atom(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    /// `K{agent} φ`
    Knows(String, Box<Formula>),
    /// `C{group} φ`
    Common(Vec<String>, Box<Formula>),
    Linear(LinearConstraint),
}

/// `Σ coefficient·P{agent}[formula] ≥ bound`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearConstraint {
    pub terms: Vec<ProbabilityTerm>,
    pub bound: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityTerm {
    pub coefficient: f64,
    pub agent: String,
    pub formula: Formula,
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Self {
        Formula::Not(Box::new(self))
    }

    pub fn and(self, other: Formula) -> Self {
        Formula::And(Box::new(self), Box::new(other))
    }

    pub fn or(self, other: Formula) -> Self {
        Formula::Or(Box::new(self), Box::new(other))
    }

    pub fn implies(self, other: Formula) -> Self {
        Formula::Implies(Box::new(self), Box::new(other))
    }

    pub fn knows(agent: impl Into<String>, inner: Formula) -> Self {
        Formula::Knows(agent.into(), Box::new(inner))
    }

    pub fn common<S: Into<String>>(group: impl IntoIterator<Item = S>, inner: Formula) -> Self {
        Formula::Common(group.into_iter().map(Into::into).collect(), Box::new(inner))
    }

    /// Conjunction of all items; `true` when empty.
    pub fn conjunction(items: impl IntoIterator<Item = Formula>) -> Self {
        items
            .into_iter()
            .reduce(|acc, f| acc.and(f))
            .unwrap_or(Formula::True)
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Atom(a) => {
                out.insert(a.clone());
            }
            Formula::Not(f) | Formula::Knows(_, f) | Formula::Common(_, f) => f.collect_atoms(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
            Formula::Linear(lin) => {
                for t in &lin.terms {
                    t.formula.collect_atoms(out);
                }
            }
        }
    }

    /// Agents mentioned by modal operators and probability terms.
    pub fn agents(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_agents(&mut out);
        out
    }

    fn collect_agents(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => {}
            Formula::Not(f) => f.collect_agents(out),
            Formula::Knows(a, f) => {
                out.insert(a.clone());
                f.collect_agents(out);
            }
            Formula::Common(g, f) => {
                out.extend(g.iter().cloned());
                f.collect_agents(out);
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.collect_agents(out);
                b.collect_agents(out);
            }
            Formula::Linear(lin) => {
                for t in &lin.terms {
                    out.insert(t.agent.clone());
                    t.formula.collect_agents(out);
                }
            }
        }
    }

    /// True when the formula uses no modal operator and no probability term.
    pub fn is_propositional(&self) -> bool {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => true,
            Formula::Not(f) => f.is_propositional(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.is_propositional() && b.is_propositional()
            }
            Formula::Knows(..) | Formula::Common(..) | Formula::Linear(_) => false,
        }
    }

    pub fn has_probability_terms(&self) -> bool {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => false,
            Formula::Not(f) | Formula::Knows(_, f) | Formula::Common(_, f) => f.has_probability_terms(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.has_probability_terms() || b.has_probability_terms()
            }
            Formula::Linear(_) => true,
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Implies(..) => 1,
            Formula::Or(..) => 2,
            Formula::And(..) => 3,
            Formula::Linear(_) => 4,
            _ => 5,
        }
    }

    fn fmt_child(&self, child: &Formula, min: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if child.precedence() < min {
            write!(f, "({child})")
        } else {
            write!(f, "{child}")
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::True => write!(f, "true"),
            Formula::False => write!(f, "false"),
            Formula::Atom(a) => write!(f, "{a}"),
            Formula::Not(inner) => {
                write!(f, "!")?;
                self.fmt_child(inner, 5, f)
            }
            Formula::And(a, b) => {
                self.fmt_child(a, 3, f)?;
                write!(f, " & ")?;
                self.fmt_child(b, 4, f)
            }
            Formula::Or(a, b) => {
                self.fmt_child(a, 2, f)?;
                write!(f, " | ")?;
                self.fmt_child(b, 3, f)
            }
            Formula::Implies(a, b) => {
                self.fmt_child(a, 2, f)?;
                write!(f, " -> ")?;
                self.fmt_child(b, 1, f)
            }
            Formula::Knows(a, inner) => {
                write!(f, "K{{{a}}} ")?;
                self.fmt_child(inner, 5, f)
            }
            Formula::Common(g, inner) => {
                write!(f, "C{{{}}} ", g.join(","))?;
                self.fmt_child(inner, 5, f)
            }
            Formula::Linear(lin) => write!(f, "{lin}"),
        }
    }
}

impl fmt::Display for LinearConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            let c = t.coefficient;
            if i == 0 {
                if c < 0.0 {
                    write!(f, "-")?;
                }
            } else if c < 0.0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write!(f, "{}*P{{{}}}[{}]", c.abs(), t.agent, t.formula)?;
        }
        write!(f, " >= {}", self.bound)
    }
}

impl std::str::FromStr for Formula {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}
