//! Non-monotonic propositional reasoning: classical consequence, reasoning from
//! maximal consistent subsets, default-rule extensions, and the closed-world
//! assumption.

use std::fmt;

use crate::error::{invalid, Error, Result};
use crate::logic::{Formula, ModelSet, Signature};

pub const MAX_KB_ATOMS: usize = 16;
/// Subset enumeration limit for maximal consistent subsets.
pub const MAX_MCS_FORMULAS: usize = 12;
/// Guess-and-verify limit for default extensions.
pub const MAX_DEFAULT_RULES: usize = 10;

/// A finite set of propositional formulas over declared atoms.
#[derive(Debug, Clone, PartialEq)]
pub struct PropKB {
    atoms: Vec<String>,
    formulas: Vec<Formula>,
}

impl PropKB {
    /// Every atom of `formulas` must be declared.
    pub fn new<S: Into<String>>(atoms: impl IntoIterator<Item = S>, formulas: Vec<Formula>) -> Result<Self> {
        let sig = Signature::new(atoms.into_iter().map(Into::into), MAX_KB_ATOMS)?;
        for f in &formulas {
            if !f.is_propositional() {
                return Err(invalid(format!("`{f}` is not propositional")));
            }
            if let Some(a) = f.atoms().into_iter().find(|a| sig.index_of(a).is_none()) {
                return Err(invalid(format!("atom `{a}` is not declared")));
            }
        }
        Ok(PropKB {
            atoms: sig.atoms().to_vec(),
            formulas,
        })
    }

    /// Declares exactly the atoms occurring in `formulas`, sorted.
    pub fn from_formulas(formulas: Vec<Formula>) -> Result<Self> {
        let atoms: Vec<String> = Signature::of_formulas(&formulas, MAX_KB_ATOMS)?.atoms().to_vec();
        Self::new(atoms, formulas)
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn formulas(&self) -> &[Formula] {
        &self.formulas
    }

    pub fn len(&self) -> usize {
        self.formulas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.formulas.is_empty()
    }

    fn with_formulas(&self, formulas: Vec<Formula>) -> PropKB {
        PropKB {
            atoms: self.atoms.clone(),
            formulas,
        }
    }
}

impl fmt::Display for PropKB {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.formulas.iter().map(|x| x.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Signature covering `atoms` and every atom of `extra`, declared atoms first.
fn signature<'a>(atoms: &[String], extra: impl IntoIterator<Item = &'a Formula>) -> Result<Signature> {
    let mut all: Vec<String> = atoms.to_vec();
    for f in extra {
        if !f.is_propositional() {
            return Err(invalid(format!("`{f}` is not propositional")));
        }
        all.extend(f.atoms());
    }
    Signature::new(all, MAX_KB_ATOMS)
}

pub fn entails(kb: &PropKB, phi: &Formula) -> Result<bool> {
    let sig = signature(&kb.atoms, [phi])?;
    Ok(sig.models_of_all(&kb.formulas)?.is_subset(&sig.models(phi)?))
}

pub fn is_consistent(kb: &PropKB) -> Result<bool> {
    let sig = signature(&kb.atoms, [])?;
    Ok(!sig.models_of_all(&kb.formulas)?.is_empty())
}

/// Entailment, which an inconsistent base grants for every formula.
pub fn inconsistency_explosion(kb: &PropKB, phi: &Formula) -> Result<bool> {
    entails(kb, phi)
}

/// Indices of every ⊆-maximal consistent subset, each sorted, in lexicographic order.
pub fn mcs_indices(kb: &PropKB) -> Result<Vec<Vec<usize>>> {
    let n = kb.formulas.len();
    if n > MAX_MCS_FORMULAS {
        return Err(Error::BudgetExceeded(format!(
            "{n} formulas exceed the subset-enumeration budget of {MAX_MCS_FORMULAS}"
        )));
    }
    let sig = signature(&kb.atoms, [])?;
    let models: Vec<ModelSet> = kb.formulas.iter().map(|f| sig.models(f)).collect::<Result<_>>()?;
    let full = ModelSet::full(sig.valuation_count());
    let consistent: Vec<bool> = (0u32..1 << n)
        .map(|mask| {
            let mut m = full.clone();
            for (i, mi) in models.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    m.intersect_with(mi);
                }
            }
            !m.is_empty()
        })
        .collect();
    let mut out: Vec<Vec<usize>> = (0u32..1 << n)
        .filter(|&mask| consistent[mask as usize])
        .filter(|&mask| (0..n).all(|i| mask >> i & 1 == 1 || !consistent[(mask | 1 << i) as usize]))
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
        .collect();
    out.sort();
    Ok(out)
}

pub fn maximal_consistent_subsets(kb: &PropKB) -> Result<Vec<PropKB>> {
    Ok(mcs_indices(kb)?
        .into_iter()
        .map(|ix| kb.with_formulas(ix.iter().map(|&i| kb.formulas[i].clone()).collect()))
        .collect())
}

/// Entailed by every maximal consistent subset.
pub fn skeptical_entails(kb: &PropKB, phi: &Formula) -> Result<bool> {
    for m in maximal_consistent_subsets(kb)? {
        if !entails(&m, phi)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Entailed by some maximal consistent subset.
pub fn credulous_entails(kb: &PropKB, phi: &Formula) -> Result<bool> {
    for m in maximal_consistent_subsets(kb)? {
        if entails(&m, phi)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `Q₁ … Qₙ : not Q'₁ … not Q'ₘ / P`: conclude `P` from the prerequisites
/// unless some blocker belongs to the extension.
#[derive(Debug, Clone, PartialEq)]
pub struct DefaultRule {
    pub prerequisites: Vec<Formula>,
    pub blockers: Vec<Formula>,
    pub conclusion: Formula,
}

impl DefaultRule {
    pub fn new(prerequisites: Vec<Formula>, blockers: Vec<Formula>, conclusion: Formula) -> Self {
        DefaultRule {
            prerequisites,
            blockers,
            conclusion,
        }
    }

    fn formulas(&self) -> impl Iterator<Item = &Formula> {
        self.prerequisites.iter().chain(&self.blockers).chain([&self.conclusion])
    }
}

impl fmt::Display for DefaultRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[Formula]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
        write!(f, "{} : {} / {}", join(&self.prerequisites), join(&self.blockers), self.conclusion)
    }
}

/// A fixpoint theory: the facts plus the conclusions of the applied rules.
#[derive(Debug, Clone, PartialEq)]
pub struct Extension {
    /// Indices of the applied rules, ascending.
    pub applied: Vec<usize>,
    pub theory: PropKB,
}

struct RuleModels {
    prerequisites: Vec<ModelSet>,
    blockers: Vec<ModelSet>,
    conclusion: ModelSet,
}

fn rule_models(sig: &Signature, rules: &[DefaultRule]) -> Result<Vec<RuleModels>> {
    rules
        .iter()
        .map(|r| {
            Ok(RuleModels {
                prerequisites: r.prerequisites.iter().map(|f| sig.models(f)).collect::<Result<_>>()?,
                blockers: r.blockers.iter().map(|f| sig.models(f)).collect::<Result<_>>()?,
                conclusion: sig.models(&r.conclusion)?,
            })
        })
        .collect()
}

/// All extensions in lexicographic order of applied rules, found by guessing the set of applied rules and keeping a
/// guess exactly when the grounded construction against it rebuilds it.
pub fn default_extensions(facts: &PropKB, rules: &[DefaultRule]) -> Result<Vec<Extension>> {
    if rules.len() > MAX_DEFAULT_RULES {
        return Err(Error::BudgetExceeded(format!(
            "{} rules exceed the guess-and-verify budget of {MAX_DEFAULT_RULES}",
            rules.len()
        )));
    }
    let sig = signature(&facts.atoms, rules.iter().flat_map(DefaultRule::formulas))?;
    let base = sig.models_of_all(&facts.formulas)?;
    let rm = rule_models(&sig, rules)?;
    let mut out = Vec::new();
    for guess in 0u32..1 << rules.len() {
        let mut target = base.clone();
        for (i, r) in rm.iter().enumerate() {
            if guess >> i & 1 == 1 {
                target.intersect_with(&r.conclusion);
            }
        }
        // Grounded construction: apply rules whose prerequisites are already
        // derived and none of whose blockers is in the guessed theory.
        let mut derived = base.clone();
        let mut applied = 0u32;
        loop {
            let next = rm.iter().enumerate().position(|(i, r)| {
                applied >> i & 1 == 0
                    && r.prerequisites.iter().all(|q| derived.is_subset(q))
                    && !r.blockers.iter().any(|b| target.is_subset(b))
            });
            match next {
                Some(i) => {
                    applied |= 1 << i;
                    derived.intersect_with(&rm[i].conclusion);
                }
                None => break,
            }
        }
        if applied == guess {
            let applied: Vec<usize> = (0..rules.len()).filter(|i| guess >> i & 1 == 1).collect();
            let mut formulas = facts.formulas.clone();
            formulas.extend(applied.iter().map(|&i| rules[i].conclusion.clone()));
            out.push(Extension {
                applied,
                theory: PropKB {
                    atoms: sig.atoms().to_vec(),
                    formulas,
                },
            });
        }
    }
    out.sort_by(|a, b| a.applied.cmp(&b.applied));
    Ok(out)
}

/// Re-checks an extension as a fixpoint: the theory is the facts plus the applied
/// conclusions; every applied rule has its prerequisites in the theory and no
/// blocker in it; every other rule is inapplicable.
pub fn verify_extension(facts: &PropKB, rules: &[DefaultRule], ext: &Extension) -> Result<bool> {
    let sig = signature(
        &facts.atoms,
        rules.iter().flat_map(DefaultRule::formulas).chain(&ext.theory.formulas),
    )?;
    let theory = sig.models_of_all(&ext.theory.formulas)?;
    let mut rebuilt = sig.models_of_all(&facts.formulas)?;
    for &i in &ext.applied {
        let r = rules.get(i).ok_or_else(|| invalid(format!("rule index {i} out of range")))?;
        rebuilt.intersect_with(&sig.models(&r.conclusion)?);
    }
    if rebuilt != theory {
        return Ok(false);
    }
    let in_theory = |f: &Formula| -> Result<bool> { Ok(theory.is_subset(&sig.models(f)?)) };
    for (i, r) in rules.iter().enumerate() {
        let mut prereqs = true;
        for q in &r.prerequisites {
            prereqs &= in_theory(q)?;
        }
        let mut blocked = false;
        for b in &r.blockers {
            blocked |= in_theory(b)?;
        }
        let applicable = prereqs && !blocked;
        if applicable != ext.applied.contains(&i) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Consequence relations compared by [`cons_diff`].
#[derive(Debug, Clone, PartialEq)]
pub enum Engine {
    Classical,
    SkepticalMcs,
    CredulousMcs,
    /// In every extension of the base under the rules.
    SkepticalDefault(Vec<DefaultRule>),
    /// In some extension.
    CredulousDefault(Vec<DefaultRule>),
}

impl Engine {
    pub fn name(&self) -> &'static str {
        match self {
            Engine::Classical => "classical",
            Engine::SkepticalMcs => "skeptical-mcs",
            Engine::CredulousMcs => "credulous-mcs",
            Engine::SkepticalDefault(_) => "skeptical-default",
            Engine::CredulousDefault(_) => "credulous-default",
        }
    }

    pub fn consequence(&self, kb: &PropKB, phi: &Formula) -> Result<bool> {
        match self {
            Engine::Classical => entails(kb, phi),
            Engine::SkepticalMcs => skeptical_entails(kb, phi),
            Engine::CredulousMcs => credulous_entails(kb, phi),
            Engine::SkepticalDefault(rules) | Engine::CredulousDefault(rules) => {
                let skeptical = matches!(self, Engine::SkepticalDefault(_));
                let exts = default_extensions(kb, rules)?;
                let mut hits = 0;
                for e in &exts {
                    if entails(&e.theory, phi)? {
                        hits += 1;
                    }
                }
                Ok(if skeptical { hits == exts.len() } else { hits > 0 })
            }
        }
    }
}

/// Probes whose consequence status changes when the base grows from Γ to Γ'.
#[derive(Debug, Clone, PartialEq)]
pub struct MonotonicityReport {
    pub engine: &'static str,
    /// Consequences of Γ that Γ' no longer has.
    pub lost: Vec<Formula>,
    pub gained: Vec<Formula>,
}

impl MonotonicityReport {
    /// Nothing was lost on the probes.
    pub fn monotonic(&self) -> bool {
        self.lost.is_empty()
    }
}

pub fn cons_diff(engine: &Engine, gamma: &PropKB, gamma_prime: &PropKB, probes: &[Formula]) -> Result<MonotonicityReport> {
    if let Some(f) = gamma.formulas.iter().find(|f| !gamma_prime.formulas.contains(f)) {
        return Err(Error::PreconditionFailure(format!(
            "`{f}` belongs to the smaller base but not to the larger one"
        )));
    }
    let mut lost = Vec::new();
    let mut gained = Vec::new();
    for p in probes {
        match (engine.consequence(gamma, p)?, engine.consequence(gamma_prime, p)?) {
            (true, false) => lost.push(p.clone()),
            (false, true) => gained.push(p.clone()),
            _ => {}
        }
    }
    Ok(MonotonicityReport {
        engine: engine.name(),
        lost,
        gained,
    })
}

/// Adds `¬a` for every declared atom the base does not entail.
pub fn closed_world(kb: &PropKB) -> Result<PropKB> {
    if !is_consistent(kb)? {
        return Err(Error::PreconditionFailure("the base is inconsistent".into()));
    }
    let mut negated = Vec::new();
    let mut formulas = kb.formulas.clone();
    for a in &kb.atoms {
        if !entails(kb, &Formula::atom(a.clone()))? {
            negated.push(a.clone());
            formulas.push(Formula::atom(a.clone()).not());
        }
    }
    let closed = kb.with_formulas(formulas);
    if !is_consistent(&closed)? {
        return Err(Error::CwaInconsistent { atoms: negated });
    }
    Ok(closed)
}
