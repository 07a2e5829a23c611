//! Information items and a brute-force audit of fusion operators against eight
//! postulates over an enumerated family of inputs.
//!
//! Every verdict is finite-model evidence: a postulate "passes" when no tuple of
//! the audited family violates it.

mod item;
mod operators;

use std::collections::{HashMap, HashSet};
use std::fmt;

pub use item::{item_from_mass, item_from_possibility, InformationItem, WorldSet};
pub use operators::{
    grid_masses, grid_possibilities, random_masses, random_possibilities, DuboisPradeOperator,
    PossibilityOperator, TableOperator,
};

use crate::error::{invalid, Error, Result};
use crate::evidence::FocalSet;

/// Largest world set the audit accepts.
pub const MAX_AUDIT_WORLDS: usize = 5;
/// Upper bound on the number of input tuples enumerated.
pub const MAX_AUDIT_TUPLES: usize = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Arity {
    /// Defined for exactly two inputs; audited on pairs.
    Binary,
    /// Defined for any number of inputs; audited on pairs and triples.
    NAry,
}

impl Arity {
    fn lengths(self) -> &'static [usize] {
        match self {
            Arity::Binary => &[2],
            Arity::NAry => &[2, 3],
        }
    }
}

/// A fusion rule working on its own kind of value, audited through [`InformationItem`]s.
pub trait FusionOperator {
    type Value: Clone;

    fn name(&self) -> String;
    fn arity(&self) -> Arity;
    /// Combines two or more inputs. A single input is never passed; the audit
    /// treats fusing one input as the identity.
    fn fuse(&self, inputs: &[Self::Value]) -> Result<Self::Value>;
    fn item(&self, value: &Self::Value) -> InformationItem;
    /// The value carrying no information.
    fn vacuous(&self) -> Self::Value;
    fn equivalent(&self, a: &Self::Value, b: &Self::Value) -> bool;
    fn describe(&self, value: &Self::Value) -> String;
    /// For rules that combine crisp granules (focal sets) one combination at a
    /// time: each combination of input granules with positive weight paired
    /// with the granule it produces.
    fn granules(&self, _inputs: &[Self::Value]) -> Option<Vec<(Vec<WorldSet>, WorldSet)>> {
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Postulate {
    Unanimity,
    InformationMonotonicity,
    ConsistencyEnforcement,
    Optimism,
    Fairness,
    VacuousInsensitivity,
    Commutativity,
    MinimalCommitment,
}

impl Postulate {
    pub const ALL: [Postulate; 8] = [
        Postulate::Unanimity,
        Postulate::InformationMonotonicity,
        Postulate::ConsistencyEnforcement,
        Postulate::Optimism,
        Postulate::Fairness,
        Postulate::VacuousInsensitivity,
        Postulate::Commutativity,
        Postulate::MinimalCommitment,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Postulate::Unanimity => "unanimity",
            Postulate::InformationMonotonicity => "information-monotonicity",
            Postulate::ConsistencyEnforcement => "consistency-enforcement",
            Postulate::Optimism => "optimism",
            Postulate::Fairness => "fairness",
            Postulate::VacuousInsensitivity => "vacuous-insensitivity",
            Postulate::Commutativity => "commutativity",
            Postulate::MinimalCommitment => "minimal-commitment",
        }
    }

    /// Exactly what the audit tests, with S the support, C the core and F the output.
    pub fn test_statement(self) -> &'static str {
        match self {
            Postulate::Unanimity => {
                "C(F) contains the intersection of input cores whenever that intersection is non-empty, \
                 and S(F) lies inside the union of input supports"
            }
            Postulate::InformationMonotonicity => {
                "for every sub-family J of the inputs, the support of fusing J contains the \
                 intersection of the supports in J"
            }
            Postulate::ConsistencyEnforcement => "if every input has non-empty support, so does F",
            Postulate::Optimism => {
                "if every input has non-empty support, S(F) contains the intersection of input \
                 supports and meets every input support"
            }
            Postulate::Fairness => {
                "for every input position, deleting that input changes the output on some tuple"
            }
            Postulate::VacuousInsensitivity => "appending the vacuous input leaves the output unchanged",
            Postulate::Commutativity => "every permutation of the inputs gives an equivalent output",
            Postulate::MinimalCommitment => {
                "granular rules: each output granule is the least committed set that keeps the \
                 granule-level unanimity, consistency and conjunctive optimism; other rules: no value \
                 seen in the audit has a strictly larger support with the same core while meeting \
                 unanimity, information monotonicity, consistency enforcement and optimism for the tuple"
            }
        }
    }
}

impl fmt::Display for Postulate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A failing input tuple.
#[derive(Debug, Clone, PartialEq)]
pub struct Counterexample {
    pub inputs: Vec<String>,
    pub output: String,
    pub detail: String,
    /// For commutativity: the permuted inputs and their output.
    pub permuted: Option<(Vec<String>, String)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub postulate: Postulate,
    pub passed: bool,
    pub checks: usize,
    pub violations: usize,
    pub counterexample: Option<Counterexample>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditReport {
    pub operator: String,
    pub arity: Arity,
    pub family_size: usize,
    pub tuples: usize,
    /// Conventions and test statements the verdicts rest on.
    pub header: Vec<String>,
    pub verdicts: Vec<Verdict>,
}

impl AuditReport {
    pub fn verdict(&self, p: Postulate) -> &Verdict {
        self.verdicts.iter().find(|v| v.postulate == p).expect("every postulate is reported")
    }

    pub fn all_passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }
}

struct Tally {
    checks: usize,
    violations: usize,
    counterexample: Option<Counterexample>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            checks: 0,
            violations: 0,
            counterexample: None,
        }
    }

    fn record(&mut self, ok: bool, cx: impl FnOnce() -> Counterexample) {
        self.checks += 1;
        if !ok {
            self.violations += 1;
            if self.counterexample.is_none() {
                self.counterexample = Some(cx());
            }
        }
    }
}

type Cache<V> = HashMap<Vec<usize>, (V, InformationItem)>;

/// Fused output of an index tuple, computed once. One-element tuples are the identity.
fn eval<O: FusionOperator>(
    op: &O,
    values: &[O::Value],
    items: &[InformationItem],
    cache: &mut Cache<O::Value>,
    tuple: &[usize],
) -> Result<(O::Value, InformationItem)> {
    if let [i] = tuple {
        return Ok((values[*i].clone(), items[*i].clone()));
    }
    if let Some(hit) = cache.get(tuple) {
        return Ok(hit.clone());
    }
    let inputs: Vec<O::Value> = tuple.iter().map(|&i| values[i].clone()).collect();
    let out = op.fuse(&inputs)?;
    let it = op.item(&out);
    cache.insert(tuple.to_vec(), (out.clone(), it.clone()));
    Ok((out, it))
}

fn describe_tuple<O: FusionOperator>(op: &O, values: &[O::Value], tuple: &[usize]) -> Vec<String> {
    tuple.iter().map(|&i| op.describe(&values[i])).collect()
}

fn all_tuples(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    out
}

fn permutations(len: usize) -> Vec<Vec<usize>> {
    if len == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(len - 1) {
        for k in 0..len {
            let mut q = p.clone();
            q.insert(k, len - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

fn intersect_all(sets: impl IntoIterator<Item = WorldSet>, full: WorldSet) -> WorldSet {
    sets.into_iter().fold(full, |a, b| a.intersect(b))
}

fn union_all(sets: impl IntoIterator<Item = WorldSet>) -> WorldSet {
    sets.into_iter().fold(WorldSet::EMPTY, |a, b| a.union(b))
}

/// Item-level conditions a candidate output must meet for one tuple of inputs.
fn unanimity_ok(inputs: &[&InformationItem], support: WorldSet, core: WorldSet, full: WorldSet) -> bool {
    let common_core = intersect_all(inputs.iter().map(|i| i.core()), full);
    (common_core.is_empty() || common_core.is_subset(core)) && support.is_subset(union_all(inputs.iter().map(|i| i.support())))
}

fn optimism_ok(inputs: &[&InformationItem], support: WorldSet, full: WorldSet) -> bool {
    if !inputs.iter().all(|i| i.is_consistent()) {
        return true;
    }
    intersect_all(inputs.iter().map(|i| i.support()), full).is_subset(support)
        && inputs.iter().all(|i| i.support().intersects(support))
}

fn consistency_ok(inputs: &[&InformationItem], support: WorldSet) -> bool {
    !inputs.iter().all(|i| i.is_consistent()) || !support.is_empty()
}

/// Granule-level minimal commitment. A set is admissible when it lies inside the
/// union of the granules, is non-empty, and equals their intersection whenever
/// that is non-empty. `out` must be admissible with no admissible strict superset.
fn granule_ok(granules: &[WorldSet], out: WorldSet, full: WorldSet) -> bool {
    let meet = intersect_all(granules.iter().copied(), full);
    let join = union_all(granules.iter().copied());
    let admissible = |s: WorldSet| -> bool {
        let unanimity = (meet.is_empty() || meet.is_subset(s)) && s.is_subset(join);
        let consistent = !s.is_empty();
        let optimistic = meet.is_empty() || s == meet;
        unanimity && consistent && optimistic
    };
    if !admissible(out) {
        return false;
    }
    // No admissible set strictly less committed than `out`.
    !(0..=full.bits())
        .map(FocalSet)
        .any(|s| s != out && out.is_subset(s) && admissible(s))
}

fn sub_families(len: usize) -> Vec<Vec<usize>> {
    (1u32..(1 << len))
        .filter(|m| m.count_ones() >= 2 && (m.count_ones() as usize) < len)
        .map(|m| (0..len).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

/// Audits `op` on every ordered tuple (pairs, plus triples for n-ary rules) drawn from `family`.
pub fn audit<O: FusionOperator>(op: &O, family: &[O::Value]) -> Result<AuditReport> {
    if family.is_empty() {
        return Err(invalid("the audited family is empty"));
    }
    let mut values = family.to_vec();
    values.push(op.vacuous());
    let items: Vec<InformationItem> = values.iter().map(|v| op.item(v)).collect();
    let nworlds = items[0].worlds().len();
    if nworlds > MAX_AUDIT_WORLDS {
        return Err(Error::PreconditionFailure(format!(
            "the audit enumerates at most {MAX_AUDIT_WORLDS} worlds, got {nworlds}"
        )));
    }
    if items.iter().any(|i| i.worlds() != items[0].worlds()) {
        return Err(invalid("all audited values must share one set of worlds"));
    }
    let full = FocalSet((1u32 << nworlds) - 1);
    let n = family.len();
    let lengths = op.arity().lengths();
    let max_len = *lengths.last().expect("non-empty");
    let tuple_count: usize = lengths.iter().map(|&l| n.saturating_pow(l as u32)).sum();
    if tuple_count > MAX_AUDIT_TUPLES {
        return Err(Error::BudgetExceeded(format!(
            "{tuple_count} tuples exceed the audit budget of {MAX_AUDIT_TUPLES}"
        )));
    }
    let vac = n;
    let mut cache: Cache<O::Value> = HashMap::new();
    let tuples: Vec<Vec<usize>> = lengths.iter().flat_map(|&l| all_tuples(n, l)).collect();

    // First pass: every output, and the pool of (support, core) shapes seen.
    let mut pool: HashSet<(WorldSet, WorldSet)> = items[..n].iter().map(|i| (i.support(), i.core())).collect();
    for t in &tuples {
        let (_, it) = eval(op, &values, &items, &mut cache, t)?;
        pool.insert((it.support(), it.core()));
    }
    let mut pool: Vec<(WorldSet, WorldSet)> = pool.into_iter().collect();
    pool.sort();

    let mut tallies: HashMap<Postulate, Tally> = Postulate::ALL.iter().map(|&p| (p, Tally::new())).collect();
    let mut fairness_witness = vec![false; max_len];
    let mut fairness_checks = 0;

    for t in &tuples {
        let (out, fi) = eval(op, &values, &items, &mut cache, t)?;
        let ins: Vec<InformationItem> = t.iter().map(|&i| items[i].clone()).collect();
        let refs: Vec<&InformationItem> = ins.iter().collect();
        let cx = |detail: String| Counterexample {
            inputs: describe_tuple(op, &values, t),
            output: op.describe(&out),
            detail,
            permuted: None,
        };

        tallies.get_mut(&Postulate::Unanimity).unwrap().record(
            unanimity_ok(&refs, fi.support(), fi.core(), full),
            || cx(format!("output {fi}")),
        );
        tallies.get_mut(&Postulate::ConsistencyEnforcement).unwrap().record(
            consistency_ok(&refs, fi.support()),
            || cx("every input is consistent but the output support is empty".into()),
        );
        tallies.get_mut(&Postulate::Optimism).unwrap().record(
            optimism_ok(&refs, fi.support(), full),
            || cx(format!("output {fi}")),
        );

        // Information monotonicity on the whole tuple and on each proper sub-family.
        let mut mono_ok = intersect_all(refs.iter().map(|i| i.support()), full).is_subset(fi.support());
        let mut mono_detail = String::new();
        if !mono_ok {
            mono_detail = format!("output {fi}");
        }
        for sub in sub_families(t.len()) {
            if !mono_ok {
                break;
            }
            let st: Vec<usize> = sub.iter().map(|&k| t[k]).collect();
            let (_, si) = eval(op, &values, &items, &mut cache, &st)?;
            if !intersect_all(st.iter().map(|&i| items[i].support()), full).is_subset(si.support()) {
                mono_ok = false;
                mono_detail = format!("fusing positions {sub:?} gives {si}");
            }
        }
        tallies
            .get_mut(&Postulate::InformationMonotonicity)
            .unwrap()
            .record(mono_ok, || cx(mono_detail.clone()));

        // Commutativity over all orderings.
        let mut witness = None;
        for p in permutations(t.len()).into_iter().skip(1) {
            let pt: Vec<usize> = p.iter().map(|&k| t[k]).collect();
            if pt == *t {
                continue;
            }
            let (pout, _) = eval(op, &values, &items, &mut cache, &pt)?;
            if !op.equivalent(&out, &pout) {
                witness = Some((describe_tuple(op, &values, &pt), op.describe(&pout)));
                break;
            }
        }
        let comm_ok = witness.is_none();
        tallies.get_mut(&Postulate::Commutativity).unwrap().record(comm_ok, || Counterexample {
            permuted: witness.clone(),
            ..cx("a permutation of the inputs changes the output".into())
        });

        // Vacuous insensitivity: append the vacuous value where the arity allows.
        if t.len() < max_len {
            let mut tv = t.clone();
            tv.push(vac);
            let (vout, _) = eval(op, &values, &items, &mut cache, &tv)?;
            tallies.get_mut(&Postulate::VacuousInsensitivity).unwrap().record(
                op.equivalent(&out, &vout),
                || cx(format!("with the vacuous input appended the output is {}", op.describe(&vout))),
            );
        }

        // Fairness: does deleting position k ever matter?
        fairness_checks += 1;
        for k in 0..t.len() {
            if !fairness_witness[k] {
                let mut rest = t.clone();
                rest.remove(k);
                let (rout, _) = eval(op, &values, &items, &mut cache, &rest)?;
                if !op.equivalent(&out, &rout) {
                    fairness_witness[k] = true;
                }
            }
        }

        // Minimal commitment.
        let inputs: Vec<O::Value> = t.iter().map(|&i| values[i].clone()).collect();
        let (mc_ok, mc_detail) = match op.granules(&inputs) {
            Some(gs) => match gs.iter().find(|(g, o)| !granule_ok(g, *o, full)) {
                None => (true, String::new()),
                Some((g, o)) => (
                    false,
                    format!(
                        "granules {:?} produce {{{}}}, which is not the least committed admissible set",
                        g.iter().map(|s| fi.names(*s).join(",")).collect::<Vec<_>>(),
                        fi.names(*o).join(",")
                    ),
                ),
            },
            None => {
                let admissible = |s: WorldSet, c: WorldSet| {
                    unanimity_ok(&refs, s, c, full)
                        && consistency_ok(&refs, s)
                        && optimism_ok(&refs, s, full)
                        && intersect_all(refs.iter().map(|i| i.support()), full).is_subset(s)
                };
                match pool
                    .iter()
                    .find(|&&(s, c)| c == fi.core() && s != fi.support() && fi.support().is_subset(s) && admissible(s, c))
                {
                    None => (true, String::new()),
                    Some(&(s, _)) => (
                        false,
                        format!(
                            "a value with support {{{}}} and the same core is less committed and admissible",
                            fi.names(s).join(", ")
                        ),
                    ),
                }
            }
        };
        tallies
            .get_mut(&Postulate::MinimalCommitment)
            .unwrap()
            .record(mc_ok, || cx(mc_detail.clone()));
    }

    // Binary rules: the vacuous check runs on single inputs, where fusing one input is the identity.
    if max_len == 2 {
        for i in 0..n {
            let (out, _) = eval(op, &values, &items, &mut cache, &[i, vac])?;
            let ok = op.equivalent(&values[i], &out);
            tallies.get_mut(&Postulate::VacuousInsensitivity).unwrap().record(ok, || Counterexample {
                inputs: describe_tuple(op, &values, &[i, vac]),
                output: op.describe(&out),
                detail: "fusing with the vacuous input changed the value".into(),
                permuted: None,
            });
        }
    }

    // With every value equivalent no deletion can show, so there is nothing to witness.
    let distinguishable = (1..n).any(|i| !op.equivalent(&values[0], &values[i]));
    let fair = tallies.get_mut(&Postulate::Fairness).unwrap();
    fair.checks = fairness_checks;
    if !distinguishable {
        fair.checks = 0;
    } else if let Some(k) = fairness_witness.iter().position(|w| !w) {
        fair.violations = 1;
        fair.counterexample = Some(Counterexample {
            inputs: vec![],
            output: String::new(),
            detail: format!("deleting the input at position {k} never changes the output"),
            permuted: None,
        });
    }

    let mut header = vec![
        "support: worlds with positive contour; core: worlds with contour 1; ranks: distinct contour levels, decreasing"
            .to_string(),
        match op.arity() {
            Arity::Binary => "binary-only rule: audited on ordered pairs".to_string(),
            Arity::NAry => "n-ary rule: audited on ordered pairs and triples".to_string(),
        },
    ];
    header.extend(Postulate::ALL.iter().map(|p| format!("{p}: {}", p.test_statement())));
    if !distinguishable {
        header.push("fairness: not tested, the family holds no two distinguishable values".to_string());
    }

    let verdicts = Postulate::ALL
        .iter()
        .map(|&p| {
            let t = tallies.remove(&p).unwrap();
            Verdict {
                postulate: p,
                passed: t.violations == 0,
                checks: t.checks,
                violations: t.violations,
                counterexample: t.counterexample,
            }
        })
        .collect();

    Ok(AuditReport {
        operator: op.name(),
        arity: op.arity(),
        family_size: n,
        tuples: tuples.len(),
        header,
        verdicts,
    })
}
