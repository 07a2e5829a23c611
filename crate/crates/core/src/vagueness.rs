//! Vague height predicates read as classifications.
//!
//! A [`HeightScenario`] fixes objects with heights and a number of variables
//! `X1..Xk`. Tokens are assignments of variables to objects; types are
//! conjunctions of atoms such as `SHORT(X1)`, `TALLER(X1,X2)` and
//! `SAMEHT(X1,X2)`. A [`Regimentation`] gives the unary predicates their
//! meaning through disjoint height intervals and sets the tolerance used by
//! `SAMEHT`.
//!
//! The event state space is regimentation-free: its types are numeric events
//! over height states (`h(X1)∈[150,165]`). Each regimentation induces an
//! infomorphism from the agent classification into it, and the intensional
//! logic is the meet of the logics pulled back along those morphisms.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::channel::{
    derive_local_logic_over, meet_logics, pullback_logic, Classification, Infomorphism, LocalLogic,
};
use crate::error::{invalid, Error, Result};

/// Largest number of assignments enumerated when building classifications.
pub const MAX_ASSIGNMENTS: usize = 16384;

const TALLER: &str = "TALLER";
const SAMEHT: &str = "SAMEHT";

/// Objects with heights (cm) and the number of variables available to formulas.
#[derive(Debug, Clone, PartialEq)]
pub struct HeightScenario {
    objects: Vec<String>,
    heights: Vec<f64>,
    variables: usize,
}

impl HeightScenario {
    pub fn new<S: Into<String>>(objects: impl IntoIterator<Item = (S, f64)>, variables: usize) -> Result<Self> {
        let (objects, heights): (Vec<String>, Vec<f64>) = objects.into_iter().map(|(n, h)| (n.into(), h)).unzip();
        if objects.is_empty() {
            return Err(invalid("a height scenario needs at least one object"));
        }
        if variables == 0 {
            return Err(invalid("a height scenario needs at least one variable"));
        }
        let mut seen = BTreeSet::new();
        for (o, &h) in objects.iter().zip(&heights) {
            if o.is_empty() || o.contains([',', '=', '@']) {
                return Err(invalid(format!("object name `{o}` must be non-empty without `,`, `=` or `@`")));
            }
            if !seen.insert(o.as_str()) {
                return Err(invalid(format!("duplicate object `{o}`")));
            }
            if !(h.is_finite() && h > 0.0) {
                return Err(invalid(format!("height of `{o}` must be a finite positive number, got {h}")));
            }
        }
        Ok(HeightScenario {
            objects,
            heights,
            variables,
        })
    }

    /// One object per lattice point `from, from+step, ..., ≤ to`, named `h<height>`.
    pub fn lattice(from: f64, to: f64, step: f64, variables: usize) -> Result<Self> {
        if !(from.is_finite() && to.is_finite() && step.is_finite() && step > 0.0 && from <= to) {
            return Err(invalid("lattice needs finite from ≤ to and a positive step"));
        }
        let count = ((to - from) / step + 1e-9).floor() as usize + 1;
        if count > 100_000 {
            return Err(Error::BudgetExceeded(format!("lattice of {count} heights")));
        }
        let heights = (0..count).map(|i| from + i as f64 * step);
        Self::new(heights.map(|h| (format!("h{h}"), h)), variables)
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn heights(&self) -> &[f64] {
        &self.heights
    }

    pub fn height(&self, object: usize) -> f64 {
        self.heights[object]
    }

    pub fn variables(&self) -> usize {
        self.variables
    }

    pub fn object_id(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    /// Every total assignment of the variables, in lexicographic order.
    pub fn assignments(&self) -> Result<Vec<Vec<usize>>> {
        let n = self.objects.len();
        let total = (0..self.variables).try_fold(1usize, |acc, _| acc.checked_mul(n));
        match total {
            Some(t) if t <= MAX_ASSIGNMENTS => {}
            _ => {
                return Err(Error::BudgetExceeded(format!(
                    "{n}^{} assignments exceed {MAX_ASSIGNMENTS}",
                    self.variables
                )))
            }
        }
        let mut out = vec![Vec::new()];
        for _ in 0..self.variables {
            out = out
                .into_iter()
                .flat_map(|a| {
                    (0..n).map(move |o| {
                        let mut b = a.clone();
                        b.push(o);
                        b
                    })
                })
                .collect();
        }
        Ok(out)
    }

    /// Token name of an assignment: `X1=a,X2=b`.
    pub fn assignment_name(&self, a: &[usize]) -> String {
        a.iter()
            .enumerate()
            .map(|(v, &o)| format!("X{}={}", v + 1, self.objects[o]))
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn parse_assignment(&self, s: &str) -> Result<Vec<usize>> {
        let mut out = vec![None; self.variables];
        for part in s.split(',') {
            let (var, obj) = part
                .split_once('=')
                .ok_or_else(|| invalid(format!("assignment entry `{part}` is not `X<i>=<object>`")))?;
            let v = self.parse_variable(var.trim())?;
            let o = self
                .object_id(obj.trim())
                .ok_or_else(|| invalid(format!("undeclared object `{}`", obj.trim())))?;
            if out[v].replace(o).is_some() {
                return Err(invalid(format!("variable X{} assigned twice", v + 1)));
            }
        }
        out.into_iter()
            .enumerate()
            .map(|(v, o)| o.ok_or_else(|| invalid(format!("assignment leaves X{} unassigned", v + 1))))
            .collect()
    }

    fn parse_variable(&self, s: &str) -> Result<usize> {
        let n: usize = s
            .strip_prefix('X')
            .and_then(|d| d.parse().ok())
            .ok_or_else(|| invalid(format!("`{s}` is not a variable X<i>")))?;
        if n == 0 || n > self.variables {
            return Err(invalid(format!("undeclared variable `{s}` (have X1..X{})", self.variables)));
        }
        Ok(n - 1)
    }

    fn check_assignment(&self, a: &[usize]) -> Result<()> {
        if a.len() != self.variables || a.iter().any(|&o| o >= self.objects.len()) {
            return Err(invalid("assignment must map every declared variable to a declared object"));
        }
        Ok(())
    }
}

/// Real interval; either end may be open or infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    pub lo_open: bool,
    pub hi_open: bool,
}

impl Interval {
    pub fn new(lo: f64, hi: f64, lo_open: bool, hi_open: bool) -> Result<Self> {
        let empty = lo > hi || (lo == hi && (lo_open || hi_open));
        if lo.is_nan() || hi.is_nan() || empty || lo == f64::INFINITY || hi == f64::NEG_INFINITY {
            return Err(invalid(format!("bad or empty interval ({lo}, {hi})")));
        }
        Ok(Interval {
            lo,
            hi,
            lo_open: lo_open || lo.is_infinite(),
            hi_open: hi_open || hi.is_infinite(),
        })
    }

    pub fn closed(lo: f64, hi: f64) -> Result<Self> {
        Self::new(lo, hi, false, false)
    }

    pub fn contains(&self, x: f64) -> bool {
        let above = if self.lo_open { self.lo < x } else { self.lo <= x };
        let below = if self.hi_open { x < self.hi } else { x <= self.hi };
        above && below
    }

    /// True when every point of `self` lies strictly below every point of `next`.
    fn precedes(&self, next: &Interval) -> bool {
        self.hi < next.lo || (self.hi == next.lo && (self.hi_open || next.lo_open))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let end = |x: f64| if x.is_infinite() { if x > 0.0 { "∞".to_string() } else { "-∞".to_string() } } else { x.to_string() };
        let l = if self.lo_open { '(' } else { '[' };
        let r = if self.hi_open { ')' } else { ']' };
        write!(f, "{l}{},{}{r}", end(self.lo), end(self.hi))
    }
}

/// A tolerance and labelled, disjoint intervals in increasing order.
#[derive(Debug, Clone, PartialEq)]
pub struct Regimentation {
    label: String,
    tolerance: f64,
    predicates: Vec<(String, Interval)>,
}

impl Regimentation {
    /// Consecutive intervals must be disjoint and at most `tolerance` apart.
    pub fn new<S: Into<String>>(
        label: impl Into<String>,
        tolerance: f64,
        predicates: impl IntoIterator<Item = (S, Interval)>,
    ) -> Result<Self> {
        let label = label.into();
        let predicates: Vec<(String, Interval)> = predicates.into_iter().map(|(s, i)| (s.into(), i)).collect();
        if label.is_empty() || label.contains([',', '=', '@']) {
            return Err(invalid(format!("regimentation label `{label}` must be non-empty without `,`, `=` or `@`")));
        }
        if !(tolerance.is_finite() && tolerance >= 0.0) {
            return Err(invalid(format!("tolerance must be finite and non-negative, got {tolerance}")));
        }
        if predicates.is_empty() {
            return Err(invalid("a regimentation needs at least one predicate interval"));
        }
        let mut seen = BTreeSet::new();
        for (name, _) in &predicates {
            let ok = !name.is_empty() && name.chars().all(|c| c.is_ascii_uppercase() || c == '_');
            if !ok || name == TALLER || name == SAMEHT {
                return Err(invalid(format!("predicate name `{name}` must be upper-case and not reserved")));
            }
            if !seen.insert(name.as_str()) {
                return Err(invalid(format!("duplicate predicate `{name}`")));
            }
        }
        for w in predicates.windows(2) {
            let ((p, a), (q, b)) = (&w[0], &w[1]);
            if !a.precedes(b) {
                return Err(invalid(format!("intervals of {p} and {q} overlap or are out of order")));
            }
            if b.lo - a.hi > tolerance {
                return Err(invalid(format!(
                    "gap {} between {p} and {q} exceeds the tolerance {tolerance}",
                    b.lo - a.hi
                )));
            }
        }
        Ok(Regimentation {
            label,
            tolerance,
            predicates,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn predicates(&self) -> &[(String, Interval)] {
        &self.predicates
    }

    pub fn predicate_names(&self) -> Vec<&str> {
        self.predicates.iter().map(|(p, _)| p.as_str()).collect()
    }

    pub fn interval(&self, predicate: &str) -> Option<Interval> {
        self.predicates.iter().find(|(p, _)| p == predicate).map(|&(_, i)| i)
    }

    /// The unary predicate a height falls under, if any.
    pub fn predicate_of(&self, height: f64) -> Option<&str> {
        self.predicates.iter().find(|(_, i)| i.contains(height)).map(|(p, _)| p.as_str())
    }
}

/// An atomic height formula; variables are 0-based.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum HeightAtom {
    Unary(String, usize),
    Taller(usize, usize),
    SameHeight(usize, usize),
}

impl fmt::Display for HeightAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HeightAtom::Unary(p, v) => write!(f, "{p}(X{})", v + 1),
            HeightAtom::Taller(v, w) => write!(f, "{TALLER}(X{},X{})", v + 1, w + 1),
            HeightAtom::SameHeight(v, w) => write!(f, "{SAMEHT}(X{},X{})", v + 1, w + 1),
        }
    }
}

/// A conjunction of atoms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HeightFormula(pub Vec<HeightAtom>);

impl fmt::Display for HeightFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" & "))
    }
}

impl HeightFormula {
    /// Parses `SHORT(X1) & SAMEHT(X1,X2)`; variables are checked against `sc`.
    pub fn parse(sc: &HeightScenario, s: &str) -> Result<Self> {
        let mut atoms = Vec::new();
        for part in s.split('&') {
            let part = part.trim();
            let (name, rest) = part
                .split_once('(')
                .ok_or_else(|| invalid(format!("`{part}` is not an atom P(X..)")))?;
            let args = rest
                .strip_suffix(')')
                .ok_or_else(|| invalid(format!("`{part}` is missing `)`")))?;
            let vars = args
                .split(',')
                .map(|v| sc.parse_variable(v.trim()))
                .collect::<Result<Vec<_>>>()?;
            let atom = match (name.trim(), vars.as_slice()) {
                (TALLER, &[v, w]) => HeightAtom::Taller(v, w),
                (SAMEHT, &[v, w]) => HeightAtom::SameHeight(v, w),
                (TALLER | SAMEHT, _) => return Err(invalid(format!("`{part}` needs two variables"))),
                (p, &[v]) => HeightAtom::Unary(p.to_string(), v),
                _ => return Err(invalid(format!("`{part}` needs one variable"))),
            };
            atoms.push(atom);
        }
        Ok(HeightFormula(atoms))
    }
}

/// Truth of `formula` at assignment `token` under regimentation `r`.
///
/// Heights that fall between intervals satisfy no unary predicate.
pub fn classify(sc: &HeightScenario, r: &Regimentation, token: &[usize], formula: &HeightFormula) -> Result<bool> {
    sc.check_assignment(token)?;
    let h = |v: usize| -> Result<f64> {
        token
            .get(v)
            .map(|&o| sc.height(o))
            .ok_or_else(|| invalid(format!("undeclared variable X{}", v + 1)))
    };
    let mut all = true;
    for atom in &formula.0 {
        let holds = match atom {
            HeightAtom::Unary(p, v) => {
                let i = r
                    .interval(p)
                    .ok_or_else(|| invalid(format!("predicate `{p}` is not declared by `{}`", r.label)))?;
                i.contains(h(*v)?)
            }
            HeightAtom::Taller(v, w) => h(*v)? > h(*w)?,
            HeightAtom::SameHeight(v, w) => (h(*v)? - h(*w)?).abs() <= r.tolerance,
        };
        all &= holds;
    }
    Ok(all)
}

/// [`classify`] on names: `token` as `X1=a,X2=b`, `typ` as a formula.
pub fn classify_named(sc: &HeightScenario, r: &Regimentation, token: &str, typ: &str) -> Result<bool> {
    let a = sc.parse_assignment(token)?;
    let f = HeightFormula::parse(sc, typ)?;
    classify(sc, r, &a, &f)
}

/// Atoms over the scenario's variables, then conjunctions of up to
/// `conj_width` distinct atoms (in atom order).
pub fn formula_universe(sc: &HeightScenario, predicates: &[&str], conj_width: usize) -> Result<Vec<HeightFormula>> {
    if conj_width == 0 {
        return Err(invalid("conjunction width must be at least 1"));
    }
    let k = sc.variables;
    let mut atoms = Vec::new();
    for v in 0..k {
        for p in predicates {
            atoms.push(HeightAtom::Unary(p.to_string(), v));
        }
    }
    for v in 0..k {
        for w in 0..k {
            if v != w {
                atoms.push(HeightAtom::Taller(v, w));
            }
        }
    }
    for v in 0..k {
        for w in v + 1..k {
            atoms.push(HeightAtom::SameHeight(v, w));
        }
    }
    let mut out: Vec<Vec<usize>> = (0..atoms.len()).map(|i| vec![i]).collect();
    let mut frontier = out.clone();
    for _ in 1..conj_width {
        let mut next = Vec::new();
        for c in &frontier {
            for j in c[c.len() - 1] + 1..atoms.len() {
                let mut d = c.clone();
                d.push(j);
                next.push(d);
            }
        }
        if out.len() + next.len() > 2048 {
            return Err(Error::BudgetExceeded("height formula universe exceeds 2048 types".into()));
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    Ok(out
        .into_iter()
        .map(|c| HeightFormula(c.into_iter().map(|i| atoms[i].clone()).collect()))
        .collect())
}

/// A numeric event over the heights of assigned objects.
#[derive(Debug, Clone, PartialEq)]
enum Event {
    Within(usize, Interval),
    Greater(usize, usize),
    Near(usize, usize, f64),
}

impl Event {
    fn holds(&self, h: &[f64]) -> bool {
        match *self {
            Event::Within(v, i) => i.contains(h[v]),
            Event::Greater(v, w) => h[v] > h[w],
            Event::Near(v, w, eps) => (h[v] - h[w]).abs() <= eps,
        }
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Event::Within(v, i) => write!(f, "h(X{})∈{i}", v + 1),
            Event::Greater(v, w) => write!(f, "h(X{})>h(X{})", v + 1, w + 1),
            Event::Near(v, w, e) => write!(f, "|h(X{})-h(X{})|≤{e}", v + 1, w + 1),
        }
    }
}

fn regimented_event(r: &Regimentation, formula: &HeightFormula) -> Result<Vec<Event>> {
    formula
        .0
        .iter()
        .map(|atom| {
            Ok(match atom {
                HeightAtom::Unary(p, v) => Event::Within(
                    *v,
                    r.interval(p)
                        .ok_or_else(|| invalid(format!("predicate `{p}` is not declared by `{}`", r.label)))?,
                ),
                HeightAtom::Taller(v, w) => Event::Greater(*v, *w),
                HeightAtom::SameHeight(v, w) => Event::Near(*v, *w, r.tolerance),
            })
        })
        .collect()
}

fn event_name(ev: &[Event]) -> String {
    ev.iter().map(ToString::to_string).collect::<Vec<_>>().join(" & ")
}

fn check_family(family: &[Regimentation]) -> Result<Vec<String>> {
    let first = family
        .first()
        .ok_or_else(|| invalid("the regimentation family is empty"))?;
    let names: Vec<String> = first.predicate_names().into_iter().map(String::from).collect();
    let mut labels = BTreeSet::new();
    for r in family {
        if r.predicate_names() != names.iter().map(String::as_str).collect::<Vec<_>>() {
            return Err(invalid("regimentations in a family must declare the same predicates in the same order"));
        }
        if !labels.insert(r.label()) {
            return Err(invalid(format!("duplicate regimentation label `{}`", r.label())));
        }
    }
    Ok(names)
}

/// Tokens are assignments; types are the numeric events that the formulas of
/// width ≤ `conj_width` denote under any regimentation of the family.
#[derive(Debug, Clone)]
pub struct EventStateSpace {
    classification: Arc<Classification>,
    assignments: Vec<Vec<usize>>,
}

impl EventStateSpace {
    pub fn build(sc: &HeightScenario, family: &[Regimentation], conj_width: usize) -> Result<Self> {
        let names = check_family(family)?;
        let preds: Vec<&str> = names.iter().map(String::as_str).collect();
        let formulas = formula_universe(sc, &preds, conj_width)?;
        let mut events: Vec<Vec<Event>> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        for r in family {
            for f in &formulas {
                let ev = regimented_event(r, f)?;
                let name = event_name(&ev);
                if !index.contains_key(&name) {
                    index.insert(name, events.len());
                    events.push(ev);
                }
            }
        }
        let assignments = sc.assignments()?;
        let states: Vec<Vec<f64>> = assignments
            .iter()
            .map(|a| a.iter().map(|&o| sc.height(o)).collect())
            .collect();
        let classification = Classification::from_fn(
            assignments.iter().map(|a| sc.assignment_name(a)),
            events.iter().map(|e| event_name(e)),
            |t, e| events[e].iter().all(|ev| ev.holds(&states[t])),
        )?;
        Ok(EventStateSpace {
            classification: Arc::new(classification),
            assignments,
        })
    }

    pub fn classification(&self) -> &Arc<Classification> {
        &self.classification
    }

    pub fn assignments(&self) -> &[Vec<usize>] {
        &self.assignments
    }
}

/// Tokens are regimented assignments `X1=a,X2=b@r`, one copy per
/// regimentation; types are height formulas; support is [`classify`].
#[derive(Debug, Clone)]
pub struct AgentClassification {
    classification: Arc<Classification>,
    formulas: Vec<HeightFormula>,
    labels: Vec<String>,
}

impl AgentClassification {
    pub fn build(sc: &HeightScenario, family: &[Regimentation], conj_width: usize) -> Result<Self> {
        let names = check_family(family)?;
        let preds: Vec<&str> = names.iter().map(String::as_str).collect();
        let formulas = formula_universe(sc, &preds, conj_width)?;
        let assignments = sc.assignments()?;
        let mut tokens = Vec::with_capacity(assignments.len() * family.len());
        let mut truth = Vec::with_capacity(tokens.capacity());
        for r in family {
            for a in &assignments {
                tokens.push(format!("{}@{}", sc.assignment_name(a), r.label()));
                truth.push(
                    formulas
                        .iter()
                        .map(|f| classify(sc, r, a, f))
                        .collect::<Result<Vec<bool>>>()?,
                );
            }
        }
        let classification =
            Classification::from_fn(tokens, formulas.iter().map(ToString::to_string), |t, f| truth[t][f])?;
        Ok(AgentClassification {
            classification: Arc::new(classification),
            formulas,
            labels: family.iter().map(|r| r.label().to_string()).collect(),
        })
    }

    pub fn classification(&self) -> &Arc<Classification> {
        &self.classification
    }

    pub fn formulas(&self) -> &[HeightFormula] {
        &self.formulas
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }
}

/// The morphism `f_r`: each formula goes to the event it denotes under `r`,
/// and each state-space token `b` comes back as the agent token `b@r`.
pub fn regimentation_morphism(
    sc: &HeightScenario,
    agent: &AgentClassification,
    space: &EventStateSpace,
    r: &Regimentation,
) -> Result<Infomorphism> {
    if !agent.labels.iter().any(|l| l == r.label()) {
        return Err(invalid(format!("regimentation `{}` is not part of the agent classification", r.label())));
    }
    let target = space.classification();
    let type_map = agent
        .formulas
        .iter()
        .map(|f| {
            let name = event_name(&regimented_event(r, f)?);
            target
                .type_id(&name)
                .ok_or_else(|| invalid(format!("event `{name}` is missing from the state space")))
        })
        .collect::<Result<Vec<_>>>()?;
    let token_map = space
        .assignments
        .iter()
        .map(|a| {
            let name = format!("{}@{}", sc.assignment_name(a), r.label());
            agent
                .classification
                .token_id(&name)
                .ok_or_else(|| invalid(format!("agent token `{name}` is missing")))
        })
        .collect::<Result<Vec<_>>>()?;
    Infomorphism::new(agent.classification.clone(), target.clone(), type_map, token_map)
}

/// Builds `A_r`, the state space for `{r}` and the morphism between them.
pub fn build_regimentation_morphism(sc: &HeightScenario, r: &Regimentation, conj_width: usize) -> Result<Infomorphism> {
    let family = std::slice::from_ref(r);
    let agent = AgentClassification::build(sc, family, conj_width)?;
    let space = EventStateSpace::build(sc, family, conj_width)?;
    regimentation_morphism(sc, &agent, &space, r)
}

/// The per-regimentation logics and their meet, all hosted on one agent classification.
#[derive(Debug, Clone)]
pub struct IntensionalLogic {
    pub agent: AgentClassification,
    pub space: EventStateSpace,
    pub per_regimentation: Vec<LocalLogic>,
    pub meet: LocalLogic,
}

/// `Log_r` is the pullback along `f_r` of the state-space logic (every token
/// normal, sequents of width ≤ `width`); the result is their meet.
pub fn intensional_logic(
    sc: &HeightScenario,
    family: &[Regimentation],
    conj_width: usize,
    width: usize,
) -> Result<IntensionalLogic> {
    let agent = AgentClassification::build(sc, family, conj_width)?;
    let space = EventStateSpace::build(sc, family, conj_width)?;
    let host = space.classification().clone();
    let every = host.all_tokens();
    let mut per_regimentation = Vec::with_capacity(family.len());
    for r in family {
        let f = regimentation_morphism(sc, &agent, &space, r)?;
        let image: Vec<usize> = (0..agent.formulas.len()).map(|a| f.map_type(a)).collect();
        let log_s = derive_local_logic_over(host.clone(), &every, &image, width)?;
        per_regimentation.push(pullback_logic(&f, &log_s)?);
    }
    let meet = meet_logics(&per_regimentation)?;
    Ok(IntensionalLogic {
        agent,
        space,
        per_regimentation,
        meet,
    })
}

/// Antecedent of the Sorites sequent of length `n`:
/// `LOW(X1), SAMEHT(X1,X2), ..., SAMEHT(X_{n-1},X_n), HIGH(X_n) ⊢` (empty
/// consequent, i.e. `¬HIGH(X_n)`).
pub fn sorites_antecedent(low: &str, high: &str, n: usize) -> Vec<HeightAtom> {
    let mut out = vec![HeightAtom::Unary(low.to_string(), 0)];
    out.extend((1..n).map(|i| HeightAtom::SameHeight(i - 1, i)));
    out.push(HeightAtom::Unary(high.to_string(), n - 1));
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct SoritesWitness {
    pub regimentation: String,
    /// Objects assigned to `X1..XN`.
    pub chain: Vec<usize>,
    pub heights: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SoritesVerdict {
    /// `¬HIGH(X_N)` follows under every regimentation.
    Derivable,
    NonDerivable(SoritesWitness),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SoritesReport {
    pub low: String,
    pub high: String,
    pub chain_length: usize,
    pub verdict: SoritesVerdict,
    /// Smallest chain length at which a witness exists, if any.
    pub threshold: Option<usize>,
}

impl SoritesReport {
    pub fn derivable(&self) -> bool {
        matches!(self.verdict, SoritesVerdict::Derivable)
    }
}

// Shortest chain (as objects) from a LOW object to a HIGH object under `r`
// with consecutive heights within tolerance; breadth-first over objects.
fn shortest_climb(sc: &HeightScenario, r: &Regimentation, low: Interval, high: Interval) -> Option<Vec<usize>> {
    let n = sc.objects.len();
    let mut pred: Vec<Option<usize>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut frontier: Vec<usize> = (0..n).filter(|&o| low.contains(sc.height(o))).collect();
    for &o in &frontier {
        seen[o] = true;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| sc.height(a).total_cmp(&sc.height(b)));
    while !frontier.is_empty() {
        if let Some(&end) = frontier.iter().find(|&&o| high.contains(sc.height(o))) {
            let mut chain = vec![end];
            let mut cur = end;
            while let Some(p) = pred[cur] {
                chain.push(p);
                cur = p;
            }
            chain.reverse();
            return Some(chain);
        }
        let mut next = Vec::new();
        for &a in &frontier {
            let ha = sc.height(a);
            let start = order.partition_point(|&o| sc.height(o) < ha - r.tolerance);
            for &b in &order[start..] {
                if sc.height(b) > ha + r.tolerance {
                    break;
                }
                if !seen[b] {
                    seen[b] = true;
                    pred[b] = Some(a);
                    next.push(b);
                }
            }
        }
        frontier = next;
    }
    None
}

/// Decides whether the Sorites sequent of length `n` holds in the meet of the
/// family's logics, where LOW and HIGH are the first and last predicates.
///
/// A chain may reuse objects, so a witness of length `m` extends to any
/// `n ≥ m` by repeating its last object. Every returned witness is re-checked
/// with [`classify`].
pub fn sorites_check(sc: &HeightScenario, family: &[Regimentation], n: usize) -> Result<SoritesReport> {
    let names = check_family(family)?;
    if n < 2 {
        return Err(invalid("chain length must be at least 2"));
    }
    if n > sc.variables {
        return Err(invalid(format!(
            "chain length {n} exceeds the {} declared variables",
            sc.variables
        )));
    }
    let (low, high) = (names[0].clone(), names[names.len() - 1].clone());
    let mut best: Option<(usize, Vec<usize>)> = None;
    for (i, r) in family.iter().enumerate() {
        let li = r.interval(&low).expect("family checked");
        let hi = r.interval(&high).expect("family checked");
        if let Some(chain) = shortest_climb(sc, r, li, hi) {
            if best.as_ref().map_or(true, |(_, c)| chain.len() < c.len()) {
                best = Some((i, chain));
            }
        }
    }
    let threshold = best.as_ref().map(|(_, c)| c.len().max(2));
    let verdict = match best {
        Some((i, mut chain)) if chain.len() <= n => {
            let last = *chain.last().expect("chains are non-empty");
            chain.resize(n, last);
            let r = &family[i];
            let mut token = chain.clone();
            token.resize(sc.variables, last);
            let antecedent = HeightFormula(sorites_antecedent(&low, &high, n));
            if !classify(sc, r, &token, &antecedent)? {
                return Err(Error::PreconditionFailure("constructed Sorites witness failed re-validation".into()));
            }
            SoritesVerdict::NonDerivable(SoritesWitness {
                regimentation: r.label().to_string(),
                heights: chain.iter().map(|&o| sc.height(o)).collect(),
                chain,
            })
        }
        _ => SoritesVerdict::Derivable,
    };
    Ok(SoritesReport {
        low,
        high,
        chain_length: n,
        verdict,
        threshold,
    })
}
