use std::collections::BTreeMap;

use crate::bits::BitSet;
use crate::error::{check_sums_to_one, check_unit, invalid, Error, Result, TOLERANCE};
use crate::logic::Formula;

/// Worlds, one accessibility relation per agent, a valuation and a designated world.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KripkeModel {
    worlds: Vec<String>,
    agents: Vec<String>,
    /// `access[i][w]`: worlds agent `i` considers possible at `w`.
    access: Vec<Vec<BitSet>>,
    valuation: BTreeMap<String, BitSet>,
    designated: usize,
    s5: bool,
}

fn unique(names: &[String], what: &str) -> Result<()> {
    let mut seen = std::collections::HashSet::new();
    match names.iter().find(|n| !seen.insert(n.as_str())) {
        Some(d) => Err(invalid(format!("duplicate {what} `{d}`"))),
        None => Ok(()),
    }
}

impl KripkeModel {
    /// `relations[i]` lists the pairs `(w, v)` with `v` accessible from `w` for agent `i`.
    /// With `s5` set, every relation must be an equivalence.
    pub fn new(
        worlds: Vec<String>,
        agents: Vec<String>,
        relations: Vec<Vec<(usize, usize)>>,
        valuation: Vec<(String, Vec<usize>)>,
        designated: usize,
        s5: bool,
    ) -> Result<Self> {
        let n = worlds.len();
        if n == 0 {
            return Err(invalid("a model needs at least one world"));
        }
        unique(&worlds, "world")?;
        unique(&agents, "agent")?;
        if relations.len() != agents.len() {
            return Err(invalid("one accessibility relation per agent is required"));
        }
        if designated >= n {
            return Err(invalid("the designated world is out of range"));
        }
        let mut access = Vec::with_capacity(agents.len());
        for pairs in relations {
            let mut succ = vec![BitSet::empty(n); n];
            for (w, v) in pairs {
                if w >= n || v >= n {
                    return Err(invalid(format!("relation pair ({w}, {v}) is out of range")));
                }
                succ[w].insert(v);
            }
            access.push(succ);
        }
        let mut val = BTreeMap::new();
        for (atom, ws) in valuation {
            if let Some(&w) = ws.iter().find(|&&w| w >= n) {
                return Err(invalid(format!("atom `{atom}` is true at unknown world {w}")));
            }
            if val.insert(atom.clone(), BitSet::from_indices(n, ws)).is_some() {
                return Err(invalid(format!("atom `{atom}` is valued twice")));
            }
        }
        let m = KripkeModel {
            worlds,
            agents,
            access,
            valuation: val,
            designated,
            s5,
        };
        if s5 {
            if let Some(i) = (0..m.agents.len()).find(|&i| !m.is_equivalence(i)) {
                return Err(invalid(format!(
                    "the relation of agent `{}` is not an equivalence",
                    m.agents[i]
                )));
            }
        }
        Ok(m)
    }

    /// S5 model from one partition of the worlds per agent.
    pub fn from_partitions(
        worlds: Vec<String>,
        agents: Vec<String>,
        partitions: Vec<Vec<Vec<usize>>>,
        valuation: Vec<(String, Vec<usize>)>,
        designated: usize,
    ) -> Result<Self> {
        let n = worlds.len();
        let mut relations = Vec::new();
        for cells in &partitions {
            let mut seen = vec![false; n];
            let mut pairs = Vec::new();
            for cell in cells {
                for &w in cell {
                    if w >= n || std::mem::replace(&mut seen[w], true) {
                        return Err(invalid("partition cells must be disjoint and within the worlds"));
                    }
                    pairs.extend(cell.iter().map(|&v| (w, v)));
                }
            }
            if seen.iter().any(|s| !s) {
                return Err(invalid("a partition must cover every world"));
            }
            relations.push(pairs);
        }
        Self::new(worlds, agents, relations, valuation, designated, true)
    }

    pub fn worlds(&self) -> &[String] {
        &self.worlds
    }

    pub fn agents(&self) -> &[String] {
        &self.agents
    }

    pub fn atoms(&self) -> impl Iterator<Item = &str> {
        self.valuation.keys().map(String::as_str)
    }

    pub fn designated(&self) -> usize {
        self.designated
    }

    pub fn is_s5(&self) -> bool {
        self.s5
    }

    pub fn world_id(&self, name: &str) -> Result<usize> {
        self.worlds
            .iter()
            .position(|w| w == name)
            .ok_or_else(|| invalid(format!("unknown world `{name}`")))
    }

    pub fn agent_id(&self, name: &str) -> Result<usize> {
        self.agents
            .iter()
            .position(|a| a == name)
            .ok_or_else(|| invalid(format!("unknown agent `{name}`")))
    }

    pub fn accessible(&self, agent: usize, world: usize) -> &BitSet {
        &self.access[agent][world]
    }

    pub fn true_at(&self, atom: &str) -> Option<&BitSet> {
        self.valuation.get(atom)
    }

    pub fn is_equivalence(&self, agent: usize) -> bool {
        let r = &self.access[agent];
        let n = self.worlds.len();
        (0..n).all(|w| r[w].contains(w))
            && (0..n).all(|w| r[w].iter().all(|v| r[v].contains(w)))
            && (0..n).all(|w| r[w].iter().all(|v| r[v].is_subset(&r[w])))
    }

    /// Worlds reachable from `w` in zero or more steps along any relation of `group`.
    pub fn group_reachable(&self, group: &[usize], w: usize) -> BitSet {
        let mut seen = BitSet::empty(self.worlds.len());
        seen.insert(w);
        let mut stack = vec![w];
        while let Some(u) = stack.pop() {
            for &i in group {
                for v in self.access[i][u].iter() {
                    if !seen.contains(v) {
                        seen.insert(v);
                        stack.push(v);
                    }
                }
            }
        }
        seen
    }

    pub fn satisfies(&self, world: usize, formula: &Formula) -> Result<bool> {
        Evaluator { model: self, mu: None }.holds(world, formula)
    }

    /// Worlds where `formula` holds.
    pub fn truth_set(&self, formula: &Formula) -> Result<BitSet> {
        let mut out = BitSet::empty(self.worlds.len());
        for w in 0..self.worlds.len() {
            if self.satisfies(w, formula)? {
                out.insert(w);
            }
        }
        Ok(out)
    }

    pub(crate) fn parts(&self) -> (&Vec<Vec<BitSet>>, &BTreeMap<String, BitSet>) {
        (&self.access, &self.valuation)
    }
}

/// Truth of a formula without probability terms at a world.
pub fn model_check(model: &KripkeModel, world: usize, formula: &Formula) -> Result<bool> {
    if world >= model.worlds.len() {
        return Err(invalid("world index out of range"));
    }
    model.satisfies(world, formula)
}

/// Partial probability assignment: `mu[i][w]` is agent `i`'s distribution at `w`, if any.
pub type ProbabilityAssignment = Vec<Vec<Option<Vec<(usize, f64)>>>>;

/// A Kripke model whose agents also hold (partial) probability assignments.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilisticKripkeModel {
    kripke: KripkeModel,
    mu: ProbabilityAssignment,
}

impl ProbabilisticKripkeModel {
    pub fn new(kripke: KripkeModel, mu: ProbabilityAssignment) -> Result<Self> {
        let n = kripke.worlds.len();
        if mu.len() != kripke.agents.len() || mu.iter().any(|per| per.len() != n) {
            return Err(invalid("the probability assignment must be indexed by agent and world"));
        }
        for (i, per) in mu.iter().enumerate() {
            for (w, dist) in per.iter().enumerate() {
                let Some(dist) = dist else { continue };
                let mut seen = BitSet::empty(n);
                for &(v, p) in dist {
                    if v >= n || seen.contains(v) {
                        return Err(invalid(format!(
                            "agent `{}` at `{}` lists an unknown or repeated world",
                            kripke.agents[i], kripke.worlds[w]
                        )));
                    }
                    seen.insert(v);
                    check_unit(p, "probability")?;
                }
                check_sums_to_one(
                    dist.iter().map(|e| e.1),
                    &format!("the distribution of `{}` at `{}`", kripke.agents[i], kripke.worlds[w]),
                )?;
            }
        }
        Ok(ProbabilisticKripkeModel { kripke, mu })
    }

    pub fn kripke(&self) -> &KripkeModel {
        &self.kripke
    }

    pub fn assignment(&self) -> &ProbabilityAssignment {
        &self.mu
    }

    pub fn mu(&self, agent: usize, world: usize) -> Option<&[(usize, f64)]> {
        self.mu[agent][world].as_deref()
    }

    pub fn satisfies(&self, world: usize, formula: &Formula) -> Result<bool> {
        Evaluator {
            model: &self.kripke,
            mu: Some(&self.mu),
        }
        .holds(world, formula)
    }

    /// `P_agent(formula)` at `world`.
    pub fn probability(&self, agent: usize, world: usize, formula: &Formula) -> Result<f64> {
        Evaluator {
            model: &self.kripke,
            mu: Some(&self.mu),
        }
        .probability(agent, world, formula)
    }
}

pub fn prob_model_check(model: &ProbabilisticKripkeModel, world: usize, formula: &Formula) -> Result<bool> {
    if world >= model.kripke.worlds.len() {
        return Err(invalid("world index out of range"));
    }
    model.satisfies(world, formula)
}

struct Evaluator<'a> {
    model: &'a KripkeModel,
    mu: Option<&'a ProbabilityAssignment>,
}

impl Evaluator<'_> {
    fn holds(&self, w: usize, f: &Formula) -> Result<bool> {
        let m = self.model;
        Ok(match f {
            Formula::True => true,
            Formula::False => false,
            Formula::Atom(a) => m
                .valuation
                .get(a)
                .ok_or_else(|| invalid(format!("unknown atom `{a}`")))?
                .contains(w),
            Formula::Not(g) => !self.holds(w, g)?,
            Formula::And(a, b) => self.holds(w, a)? && self.holds(w, b)?,
            Formula::Or(a, b) => self.holds(w, a)? || self.holds(w, b)?,
            Formula::Implies(a, b) => !self.holds(w, a)? || self.holds(w, b)?,
            Formula::Knows(agent, g) => {
                let i = m.agent_id(agent)?;
                for v in m.access[i][w].iter() {
                    if !self.holds(v, g)? {
                        return Ok(false);
                    }
                }
                true
            }
            Formula::Common(group, g) => {
                let ids = group.iter().map(|a| m.agent_id(a)).collect::<Result<Vec<_>>>()?;
                for v in m.group_reachable(&ids, w).iter() {
                    if !self.holds(v, g)? {
                        return Ok(false);
                    }
                }
                true
            }
            Formula::Linear(lc) => {
                let mut total = 0.0;
                for t in &lc.terms {
                    let i = m.agent_id(&t.agent)?;
                    total += t.coefficient * self.probability(i, w, &t.formula)?;
                }
                total >= lc.bound - TOLERANCE
            }
        })
    }

    fn probability(&self, agent: usize, w: usize, f: &Formula) -> Result<f64> {
        let mu = self
            .mu
            .ok_or_else(|| invalid("probability terms need a probabilistic model"))?;
        let dist = mu[agent][w].as_ref().ok_or_else(|| Error::MissingProbability {
            agent: self.model.agents[agent].clone(),
            world: self.model.worlds[w].clone(),
        })?;
        let mut p = 0.0;
        for &(v, q) in dist {
            if self.holds(v, f)? {
                p += q;
            }
        }
        Ok(p)
    }
}
