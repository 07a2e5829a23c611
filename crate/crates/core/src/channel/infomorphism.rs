use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use super::local_logic::same_host;
use super::{Classification, LocalLogic, Sequent};
use crate::error::{invalid, Error, Result};

/// Pullbacks enumerating more source sequents than this are refused.
const PULLBACK_BUDGET: usize = 1 << 20;

/// A pair of maps between classifications `A` (source) and `B` (target):
/// types go forward `A → B`, tokens go backward `B → A`.
///
/// Construction only checks that both maps are total and well-typed; whether
/// the pair preserves support is what [`Infomorphism::check`] decides.
#[derive(Debug, Clone, PartialEq)]
pub struct Infomorphism {
    source: Arc<Classification>,
    target: Arc<Classification>,
    type_map: Vec<usize>,
    token_map: Vec<usize>,
}

/// Outcome of checking the support biconditional on every (token, type) pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfomorphismCheck {
    /// Pairs `(b, α)` with `b` a target token and `α` a source type for which
    /// `f∨(b) ⊨ α` and `b ⊨ f^(α)` disagree.
    pub violations: Vec<(usize, usize)>,
}

impl InfomorphismCheck {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl Infomorphism {
    /// `type_map[α]` is the target type of source type `α`; `token_map[b]` the
    /// source token of target token `b`.
    pub fn new(
        source: Arc<Classification>,
        target: Arc<Classification>,
        type_map: Vec<usize>,
        token_map: Vec<usize>,
    ) -> Result<Self> {
        if type_map.len() != source.type_count() {
            return Err(invalid("type map must cover every source type"));
        }
        if token_map.len() != target.token_count() {
            return Err(invalid("token map must cover every target token"));
        }
        if let Some(&a) = type_map.iter().find(|&&a| a >= target.type_count()) {
            return Err(invalid(format!("type map sends to undeclared target type index {a}")));
        }
        if let Some(&t) = token_map.iter().find(|&&t| t >= source.token_count()) {
            return Err(invalid(format!("token map sends to undeclared source token index {t}")));
        }
        Ok(Infomorphism {
            source,
            target,
            type_map,
            token_map,
        })
    }

    /// Builds the maps from name pairs; both maps must be total.
    pub fn from_names<S: AsRef<str>>(
        source: Arc<Classification>,
        target: Arc<Classification>,
        type_pairs: impl IntoIterator<Item = (S, S)>,
        token_pairs: impl IntoIterator<Item = (S, S)>,
    ) -> Result<Self> {
        let type_map = resolve_map(
            type_pairs,
            source.type_count(),
            |n| source.type_id(n),
            |n| target.type_id(n),
            "source type",
            "target type",
            |i| source.type_name(i).to_string(),
        )?;
        let token_map = resolve_map(
            token_pairs,
            target.token_count(),
            |n| target.token_id(n),
            |n| source.token_id(n),
            "target token",
            "source token",
            |i| target.token(i).to_string(),
        )?;
        Infomorphism::new(source, target, type_map, token_map)
    }

    pub fn identity(c: Arc<Classification>) -> Self {
        Infomorphism {
            type_map: (0..c.type_count()).collect(),
            token_map: (0..c.token_count()).collect(),
            source: c.clone(),
            target: c,
        }
    }

    pub fn source(&self) -> &Arc<Classification> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Classification> {
        &self.target
    }

    pub fn map_type(&self, a: usize) -> usize {
        self.type_map[a]
    }

    pub fn map_token(&self, b: usize) -> usize {
        self.token_map[b]
    }

    /// Exhaustive check of `f∨(b) ⊨_A α ⇔ b ⊨_B f^(α)`.
    pub fn check(&self) -> InfomorphismCheck {
        let mut violations = Vec::new();
        for b in 0..self.target.token_count() {
            let a_tok = self.token_map[b];
            for alpha in 0..self.source.type_count() {
                if self.source.supports(a_tok, alpha) != self.target.supports(b, self.type_map[alpha]) {
                    violations.push((b, alpha));
                }
            }
        }
        InfomorphismCheck { violations }
    }

    /// Violations rendered as `(target token, source type)` names.
    pub fn named_violations(&self, check: &InfomorphismCheck) -> Vec<(String, String)> {
        check
            .violations
            .iter()
            .map(|&(b, a)| (self.target.token(b).to_string(), self.source.type_name(a).to_string()))
            .collect()
    }
}

fn resolve_map<S: AsRef<str>>(
    pairs: impl IntoIterator<Item = (S, S)>,
    domain_len: usize,
    domain_id: impl Fn(&str) -> Option<usize>,
    codomain_id: impl Fn(&str) -> Option<usize>,
    domain_what: &str,
    codomain_what: &str,
    domain_name: impl Fn(usize) -> String,
) -> Result<Vec<usize>> {
    let mut map: Vec<Option<usize>> = vec![None; domain_len];
    for (from, to) in pairs {
        let (from, to) = (from.as_ref(), to.as_ref());
        let i = domain_id(from).ok_or_else(|| invalid(format!("undeclared {domain_what} `{from}`")))?;
        let j = codomain_id(to).ok_or_else(|| invalid(format!("undeclared {codomain_what} `{to}`")))?;
        if map[i].replace(j).is_some_and(|prev| prev != j) {
            return Err(invalid(format!("{domain_what} `{from}` is mapped twice")));
        }
    }
    map.into_iter()
        .enumerate()
        .map(|(i, m)| m.ok_or_else(|| invalid(format!("{domain_what} `{}` is not mapped", domain_name(i)))))
        .collect()
}

/// Convenience form of [`Infomorphism::check`].
pub fn check_infomorphism(f: &Infomorphism) -> InfomorphismCheck {
    f.check()
}

/// Pulls a logic on `f.target` back along `f` to its source.
///
/// A source sequent `Γ ⊢ Δ` is kept iff `f^(Γ) ⊢ f^(Δ)` is a constraint of
/// `logic`; the normal tokens are the `f∨`-images of the normal tokens.
pub fn pullback_logic(f: &Infomorphism, logic: &LocalLogic) -> Result<LocalLogic> {
    if !same_host(f.target(), logic.host()) {
        return Err(Error::PreconditionFailure(
            "the logic is not hosted on the infomorphism's target".into(),
        ));
    }
    let check = f.check();
    if !check.is_valid() {
        return Err(Error::PreconditionFailure(format!(
            "not an infomorphism: {} support violations",
            check.violations.len()
        )));
    }
    let mut preimage: HashMap<usize, Vec<usize>> = HashMap::new();
    for alpha in 0..f.source.type_count() {
        preimage.entry(f.type_map[alpha]).or_default().push(alpha);
    }
    let mut constraints = BTreeSet::new();
    for s in logic.constraints() {
        let (Some(gammas), Some(deltas)) = (covers(&s.antecedents, &preimage)?, covers(&s.consequents, &preimage)?)
        else {
            continue;
        };
        if gammas.len().saturating_mul(deltas.len()) > PULLBACK_BUDGET {
            return Err(Error::BudgetExceeded("pullback preimage enumeration".into()));
        }
        for g in &gammas {
            for d in &deltas {
                constraints.insert(Sequent {
                    antecedents: g.clone(),
                    consequents: d.clone(),
                });
            }
        }
    }
    let normal = logic.normal_tokens().iter().map(|&b| f.token_map[b]).collect();
    Ok(LocalLogic::from_parts_unchecked(f.source.clone(), constraints, normal))
}

/// Source type sets whose image is exactly `side`; `None` when some member has no preimage.
fn covers(side: &BTreeSet<usize>, preimage: &HashMap<usize, Vec<usize>>) -> Result<Option<Vec<BTreeSet<usize>>>> {
    let mut acc: Vec<BTreeSet<usize>> = vec![BTreeSet::new()];
    for t in side {
        let Some(pre) = preimage.get(t) else {
            return Ok(None);
        };
        if pre.len() >= 20 {
            return Err(Error::BudgetExceeded("pullback preimage enumeration".into()));
        }
        let mut next = Vec::new();
        for mask in 1u32..(1 << pre.len()) {
            for base in &acc {
                let mut s = base.clone();
                s.extend((0..pre.len()).filter(|i| mask >> i & 1 == 1).map(|i| pre[i]));
                next.push(s);
            }
        }
        if next.len() > PULLBACK_BUDGET {
            return Err(Error::BudgetExceeded("pullback preimage enumeration".into()));
        }
        acc = next;
    }
    Ok(Some(acc))
}

/// A core classification with infomorphism legs from component classifications.
#[derive(Debug, Clone)]
pub struct Channel {
    core: Arc<Classification>,
    legs: Vec<Infomorphism>,
}

impl Channel {
    /// Requires at least two legs, each a valid infomorphism into `core`.
    pub fn new(core: Arc<Classification>, legs: Vec<Infomorphism>) -> Result<Self> {
        if legs.len() < 2 {
            return Err(invalid("a channel needs at least two legs"));
        }
        for (i, leg) in legs.iter().enumerate() {
            if !same_host(leg.target(), &core) {
                return Err(invalid(format!("leg {i} does not target the channel core")));
            }
            let check = leg.check();
            if !check.is_valid() {
                return Err(Error::PreconditionFailure(format!(
                    "leg {i} is not an infomorphism ({} violations)",
                    check.violations.len()
                )));
            }
        }
        Ok(Channel { core, legs })
    }

    pub fn core(&self) -> &Arc<Classification> {
        &self.core
    }

    pub fn legs(&self) -> &[Infomorphism] {
        &self.legs
    }

    /// Tokens of each component connected by core token `c`.
    pub fn connection(&self, c: usize) -> Vec<usize> {
        self.legs.iter().map(|l| l.map_token(c)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::derive_local_logic;

    fn arc(c: Classification) -> Arc<Classification> {
        Arc::new(c)
    }

    #[test]
    fn identity_is_valid() {
        let a = arc(Classification::new(["s", "t"], ["x", "y"], [("s", "x"), ("t", "y")]).unwrap());
        assert!(Infomorphism::identity(a).check().is_valid());
    }

    #[test]
    fn forced_violation_is_reported() {
        let a = arc(Classification::new(["t"], ["alpha"], [("t", "alpha")]).unwrap());
        let b = arc(Classification::new(["u"], ["beta"], Vec::<(&str, &str)>::new()).unwrap());
        let f = Infomorphism::from_names(a, b, [("alpha", "beta")], [("u", "t")]).unwrap();
        let check = f.check();
        assert!(!check.is_valid());
        assert_eq!(f.named_violations(&check), [("u".to_string(), "alpha".to_string())]);
    }

    #[test]
    fn partial_or_undeclared_maps_are_rejected() {
        let a = arc(Classification::new(["t"], ["alpha", "gamma"], [("t", "alpha")]).unwrap());
        let b = arc(Classification::new(["u"], ["beta"], Vec::<(&str, &str)>::new()).unwrap());
        assert!(Infomorphism::from_names(a.clone(), b.clone(), [("alpha", "beta")], [("u", "t")]).is_err());
        assert!(Infomorphism::from_names(a, b, [("alpha", "nope"), ("gamma", "beta")], [("u", "t")]).is_err());
    }

    #[test]
    fn pullback_along_identity_is_unchanged() {
        let a = arc(Classification::new(["s", "t"], ["x", "y"], [("s", "x"), ("s", "y"), ("t", "y")]).unwrap());
        let l = derive_local_logic(a.clone(), &a.all_tokens(), 2).unwrap();
        let p = pullback_logic(&Infomorphism::identity(a.clone()), &l).unwrap();
        assert_eq!(p.constraints(), l.constraints());
        assert_eq!(p.normal_tokens(), l.normal_tokens());
    }

    #[test]
    fn pullback_requires_validity() {
        let a = arc(Classification::new(["t"], ["alpha"], [("t", "alpha")]).unwrap());
        let b = arc(Classification::new(["u"], ["beta"], Vec::<(&str, &str)>::new()).unwrap());
        let f = Infomorphism::from_names(a, b.clone(), [("alpha", "beta")], [("u", "t")]).unwrap();
        let l = derive_local_logic(b.clone(), &b.all_tokens(), 1).unwrap();
        assert!(matches!(pullback_logic(&f, &l), Err(Error::PreconditionFailure(_))));
    }

    #[test]
    fn channel_validates_its_legs() {
        let core = arc(Classification::new(["c1", "c2"], ["k"], [("c1", "k")]).unwrap());
        let left = arc(Classification::new(["l1", "l2"], ["p"], [("l1", "p")]).unwrap());
        let right = arc(Classification::new(["r"], ["q"], [("r", "q")]).unwrap());
        let f = Infomorphism::from_names(left, core.clone(), [("p", "k")], [("c1", "l1"), ("c2", "l2")]).unwrap();
        let g = Infomorphism::from_names(right, core.clone(), [("q", "k")], [("c1", "r"), ("c2", "r")]).unwrap();
        assert!(Channel::new(core.clone(), vec![f.clone()]).is_err());
        assert!(Channel::new(core.clone(), vec![f.clone(), g]).is_err());
        let ch = Channel::new(core.clone(), vec![f.clone(), f]).unwrap();
        assert_eq!(ch.connection(1), [1, 1]);
    }
}
