use std::collections::BTreeSet;
use std::fmt::Write;
use std::sync::Arc;

use super::Classification;
use crate::bits::BitSet;
use crate::error::{invalid, Result};

/// A constraint `Γ ⊢ Δ` over type indices of some host classification.
///
/// A token satisfies it when it fails some type in `Γ` or has some type in `Δ`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sequent {
    pub antecedents: BTreeSet<usize>,
    pub consequents: BTreeSet<usize>,
}

impl Sequent {
    pub fn new(
        antecedents: impl IntoIterator<Item = usize>,
        consequents: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let s = Sequent {
            antecedents: antecedents.into_iter().collect(),
            consequents: consequents.into_iter().collect(),
        };
        if s.width() == 0 {
            return Err(invalid("a constraint needs at least one type"));
        }
        Ok(s)
    }

    /// Builds a sequent from type names of `host`.
    pub fn named<S: AsRef<str>>(
        host: &Classification,
        antecedents: impl IntoIterator<Item = S>,
        consequents: impl IntoIterator<Item = S>,
    ) -> Result<Self> {
        Sequent::new(host.type_ids(antecedents)?, host.type_ids(consequents)?)
    }

    pub fn width(&self) -> usize {
        self.antecedents.len() + self.consequents.len()
    }

    /// Whether token `t` of `host` satisfies the sequent.
    pub fn satisfied_by(&self, host: &Classification, t: usize) -> bool {
        !self.antecedents.iter().all(|&a| host.supports(t, a))
            || self.consequents.iter().any(|&a| host.supports(t, a))
    }

    /// Renders the sequent with the type names of `host`, e.g. `a, b ⊢ c`.
    pub fn display(&self, host: &Classification) -> String {
        let side = |s: &BTreeSet<usize>| {
            s.iter().map(|&a| host.type_name(a)).collect::<Vec<_>>().join(", ")
        };
        let mut out = side(&self.antecedents);
        if !out.is_empty() {
            out.push(' ');
        }
        out.push('⊢');
        let rhs = side(&self.consequents);
        if !rhs.is_empty() {
            let _ = write!(out, " {rhs}");
        }
        out
    }
}

/// Every token in `normal` that has all types of `gamma` has some type of `delta`.
pub fn sequent_holds(
    host: &Classification,
    normal: &BTreeSet<usize>,
    gamma: &BTreeSet<usize>,
    delta: &BTreeSet<usize>,
) -> Result<bool> {
    host.check_tokens(normal)?;
    host.check_types(gamma)?;
    host.check_types(delta)?;
    let mut witnesses = BitSet::from_indices(host.token_count(), normal.iter().copied());
    for &a in gamma {
        witnesses.intersect_with(host.extension(a));
    }
    for &a in delta {
        witnesses = witnesses.difference(host.extension(a));
    }
    Ok(witnesses.is_empty())
}

/// A classification with constraints and the normal tokens that satisfy them all.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalLogic {
    host: Arc<Classification>,
    constraints: BTreeSet<Sequent>,
    normal: BTreeSet<usize>,
}

impl LocalLogic {
    /// Checks that every normal token satisfies every constraint.
    pub fn new(host: Arc<Classification>, constraints: BTreeSet<Sequent>, normal: BTreeSet<usize>) -> Result<Self> {
        host.check_tokens(&normal)?;
        for s in &constraints {
            host.check_types(&s.antecedents)?;
            host.check_types(&s.consequents)?;
            if s.width() == 0 {
                return Err(invalid("a constraint needs at least one type"));
            }
            if let Some(&t) = normal.iter().find(|&&t| !s.satisfied_by(&host, t)) {
                return Err(invalid(format!(
                    "normal token `{}` violates `{}`",
                    host.token(t),
                    s.display(&host)
                )));
            }
        }
        Ok(LocalLogic {
            host,
            constraints,
            normal,
        })
    }

    pub(crate) fn from_parts_unchecked(
        host: Arc<Classification>,
        constraints: BTreeSet<Sequent>,
        normal: BTreeSet<usize>,
    ) -> Self {
        LocalLogic {
            host,
            constraints,
            normal,
        }
    }

    pub fn host(&self) -> &Arc<Classification> {
        &self.host
    }

    pub fn constraints(&self) -> &BTreeSet<Sequent> {
        &self.constraints
    }

    pub fn normal_tokens(&self) -> &BTreeSet<usize> {
        &self.normal
    }

    pub fn contains(&self, s: &Sequent) -> bool {
        self.constraints.contains(s)
    }

    /// Constraint renderings in canonical order.
    pub fn describe(&self) -> Vec<String> {
        self.constraints.iter().map(|s| s.display(&self.host)).collect()
    }
}

pub(crate) fn same_host(a: &Arc<Classification>, b: &Arc<Classification>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// All sequents of width at most `max_width` that hold on `normal`.
pub fn derive_local_logic(host: Arc<Classification>, normal: &BTreeSet<usize>, max_width: usize) -> Result<LocalLogic> {
    let types: Vec<usize> = (0..host.type_count()).collect();
    derive_local_logic_over(host, normal, &types, max_width)
}

/// As [`derive_local_logic`], with both sides drawn from `types` only.
pub fn derive_local_logic_over(
    host: Arc<Classification>,
    normal: &BTreeSet<usize>,
    types: &[usize],
    max_width: usize,
) -> Result<LocalLogic> {
    if max_width < 1 {
        return Err(invalid("sequent width bound must be at least 1"));
    }
    host.check_tokens(normal)?;
    let mut types = types.to_vec();
    types.sort_unstable();
    types.dedup();
    host.check_types(&types.iter().copied().collect())?;

    let base = BitSet::from_indices(host.token_count(), normal.iter().copied());
    let mut out = BTreeSet::new();
    let mut gamma = Vec::new();
    antecedent_step(&host, &types, max_width, 0, &base, &mut gamma, &mut out);
    Ok(LocalLogic::from_parts_unchecked(host, out, normal.clone()))
}

// Extends Γ one type at a time (in increasing index order), and for each Γ
// enumerates every Δ that fits the remaining width.
fn antecedent_step(
    host: &Classification,
    types: &[usize],
    max_width: usize,
    from: usize,
    witnesses: &BitSet,
    gamma: &mut Vec<usize>,
    out: &mut BTreeSet<Sequent>,
) {
    let mut delta = Vec::new();
    consequent_step(host, types, max_width - gamma.len(), 0, witnesses, gamma, &mut delta, out);
    if gamma.len() == max_width {
        return;
    }
    for i in from..types.len() {
        let w = witnesses.intersection(host.extension(types[i]));
        gamma.push(types[i]);
        antecedent_step(host, types, max_width, i + 1, &w, gamma, out);
        gamma.pop();
    }
}

#[allow(clippy::too_many_arguments)]
fn consequent_step(
    host: &Classification,
    types: &[usize],
    room: usize,
    from: usize,
    remaining: &BitSet,
    gamma: &[usize],
    delta: &mut Vec<usize>,
    out: &mut BTreeSet<Sequent>,
) {
    if remaining.is_empty() && !(gamma.is_empty() && delta.is_empty()) {
        out.insert(Sequent {
            antecedents: gamma.iter().copied().collect(),
            consequents: delta.iter().copied().collect(),
        });
    }
    if delta.len() == room {
        return;
    }
    for i in from..types.len() {
        let r = remaining.difference(host.extension(types[i]));
        delta.push(types[i]);
        consequent_step(host, types, room, i + 1, &r, gamma, delta, out);
        delta.pop();
    }
}

/// Greatest lower bound: shared constraints, and the union of normal tokens.
pub fn meet_logics(logics: &[LocalLogic]) -> Result<LocalLogic> {
    let (first, rest) = logics
        .split_first()
        .ok_or_else(|| invalid("meet of an empty family of logics"))?;
    let mut constraints = first.constraints.clone();
    let mut normal = first.normal.clone();
    for l in rest {
        if !same_host(&first.host, &l.host) {
            return Err(invalid("logics in a meet must share their host classification"));
        }
        constraints.retain(|s| l.constraints.contains(s));
        normal.extend(l.normal.iter().copied());
    }
    Ok(LocalLogic::from_parts_unchecked(first.host.clone(), constraints, normal))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn host() -> Arc<Classification> {
        // alpha ⊆ beta on tokens; gamma is disjoint from alpha.
        Arc::new(
            Classification::new(
                ["t1", "t2", "t3"],
                ["alpha", "beta", "gamma"],
                [("t1", "alpha"), ("t1", "beta"), ("t2", "beta"), ("t3", "gamma")],
            )
            .unwrap(),
        )
    }

    #[test]
    fn sequent_basics() {
        let h = host();
        let all = h.all_tokens();
        let a = BTreeSet::from([0]);
        assert!(sequent_holds(&h, &all, &a, &a).unwrap());
        assert!(!sequent_holds(&h, &all, &a, &BTreeSet::new()).unwrap());
        assert!(sequent_holds(&h, &all, &a, &BTreeSet::from([1])).unwrap());
        assert!(!sequent_holds(&h, &all, &BTreeSet::from([1]), &a).unwrap());
        assert!(sequent_holds(&h, &all, &BTreeSet::from([7]), &a).is_err());
    }

    #[test]
    fn derived_logic_contains_expected_sequents() {
        let h = host();
        let l = derive_local_logic(h.clone(), &h.all_tokens(), 2).unwrap();
        assert!(l.contains(&Sequent::named(&h, ["alpha"], ["beta"]).unwrap()));
        assert!(l.contains(&Sequent::named(&h, ["alpha", "gamma"], []).unwrap()));
        assert!(l.contains(&Sequent::named(&h, [], ["beta", "gamma"]).unwrap()));
        assert!(!l.contains(&Sequent::named(&h, ["beta"], ["alpha"]).unwrap()));
        assert!(LocalLogic::new(h.clone(), l.constraints().clone(), h.all_tokens()).is_ok());
        assert!(derive_local_logic(h, &BTreeSet::new(), 0).is_err());
    }

    #[test]
    fn zero_types_give_no_constraints() {
        let h = Arc::new(Classification::new(["t"], Vec::<&str>::new(), Vec::<(&str, &str)>::new()).unwrap());
        assert!(derive_local_logic(h.clone(), &h.all_tokens(), 3).unwrap().constraints().is_empty());
    }

    #[test]
    fn meet_intersects_constraints() {
        let h = host();
        let l1 = derive_local_logic(h.clone(), &BTreeSet::from([0]), 2).unwrap();
        let l2 = derive_local_logic(h.clone(), &BTreeSet::from([1, 2]), 2).unwrap();
        let m = meet_logics(&[l1.clone(), l2.clone()]).unwrap();
        assert!(m.constraints().iter().all(|s| l1.contains(s) && l2.contains(s)));
        assert_eq!(m.normal_tokens(), &h.all_tokens());
        assert_eq!(meet_logics(&[l1.clone()]).unwrap(), l1);
        assert!(meet_logics(&[]).is_err());
        let other = Arc::new(Classification::new(["x"], ["alpha"], Vec::<(&str, &str)>::new()).unwrap());
        let l3 = derive_local_logic(other.clone(), &other.all_tokens(), 1).unwrap();
        assert!(meet_logics(&[l1, l3]).is_err());
    }

    #[test]
    fn display_uses_type_names() {
        let h = host();
        assert_eq!(Sequent::named(&h, ["alpha", "beta"], ["gamma"]).unwrap().display(&h), "alpha, beta ⊢ gamma");
        assert_eq!(Sequent::named(&h, ["alpha"], []).unwrap().display(&h), "alpha ⊢");
    }
}
