use crate::bits::BitSet;
use crate::error::{check_sums_to_one, check_unit, invalid, Error, Result, TOLERANCE};
use crate::logic::{Formula, Signature};

use super::{KripkeModel, ProbabilisticKripkeModel};

/// Atom budget for the truth-table check of precondition inconsistency.
const PRECONDITION_ATOMS: usize = 16;

/// Events with per-agent indistinguishability and observation probabilities,
/// and occurrence probabilities conditional on mutually exclusive preconditions.
#[derive(Debug, Clone, PartialEq)]
pub struct UpdateModel {
    events: Vec<String>,
    agents: Vec<String>,
    /// `access[i][e]`
    access: Vec<Vec<BitSet>>,
    preconditions: Vec<Formula>,
    /// `pre[k][e]`: probability that `e` occurs where precondition `k` holds.
    pre: Vec<Vec<f64>>,
    /// `mu[i][e][f]`: agent `i`'s probability that `f` happens when `e` does.
    mu: Vec<Vec<Vec<f64>>>,
    designated: usize,
}

impl UpdateModel {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        events: Vec<String>,
        agents: Vec<String>,
        relations: Vec<Vec<(usize, usize)>>,
        preconditions: Vec<Formula>,
        pre: Vec<Vec<f64>>,
        mu: Vec<Vec<Vec<f64>>>,
        designated: usize,
    ) -> Result<Self> {
        let n = events.len();
        if n == 0 {
            return Err(invalid("an update model needs at least one event"));
        }
        if designated >= n {
            return Err(invalid("the designated event is out of range"));
        }
        if relations.len() != agents.len() || mu.len() != agents.len() {
            return Err(invalid("relations and observation probabilities are needed for every agent"));
        }
        let mut access = Vec::new();
        for pairs in relations {
            let mut succ = vec![BitSet::empty(n); n];
            for (e, f) in pairs {
                if e >= n || f >= n {
                    return Err(invalid(format!("event pair ({e}, {f}) is out of range")));
                }
                succ[e].insert(f);
            }
            access.push(succ);
        }
        if pre.len() != preconditions.len() {
            return Err(invalid("one occurrence distribution per precondition is required"));
        }
        for row in &pre {
            check_row(row, n, "occurrence probabilities")?;
        }
        for (i, per) in mu.iter().enumerate() {
            if per.len() != n {
                return Err(invalid(format!("agent `{}` needs a distribution for every event", agents[i])));
            }
            for row in per {
                check_row(row, n, "observation probabilities")?;
            }
        }
        let propositional: Vec<&Formula> = preconditions.iter().filter(|f| f.is_propositional()).collect();
        if !propositional.is_empty() {
            let sig = Signature::of_formulas(propositional.iter().copied(), PRECONDITION_ATOMS)?;
            for (a, f) in propositional.iter().enumerate() {
                for g in &propositional[a + 1..] {
                    if sig.models(f)?.intersects(&sig.models(g)?) {
                        return Err(invalid(format!("preconditions `{f}` and `{g}` are not mutually exclusive")));
                    }
                }
            }
        }
        Ok(UpdateModel {
            events,
            agents,
            access,
            preconditions,
            pre,
            mu,
            designated,
        })
    }

    pub fn events(&self) -> &[String] {
        &self.events
    }

    pub fn agents(&self) -> &[String] {
        &self.agents
    }

    pub fn preconditions(&self) -> &[Formula] {
        &self.preconditions
    }

    pub fn designated(&self) -> usize {
        self.designated
    }
}

fn check_row(row: &[f64], n: usize, what: &str) -> Result<()> {
    if row.len() != n {
        return Err(invalid(format!("{what} need one entry per event")));
    }
    for p in row {
        check_unit(*p, what)?;
    }
    check_sums_to_one(row.iter().copied(), what)
}

/// Product of a probabilistic model with an update model.
///
/// Pairs `(w, e)` survive when `e` can occur at `w`. Agent `i`'s new probability at
/// `(w, e)` of `(v, f)` is proportional to `μᵢ(w)(v) · pre(v)(f) · μᵢ(e)(f)`, normalized
/// over the surviving pairs. New worlds are named `w.e`.
pub fn product_update(model: &ProbabilisticKripkeModel, update: &UpdateModel) -> Result<ProbabilisticKripkeModel> {
    let k = model.kripke();
    let agent_map: Vec<usize> = k
        .agents()
        .iter()
        .map(|a| {
            update
                .agents
                .iter()
                .position(|b| b == a)
                .ok_or_else(|| invalid(format!("the update model does not cover agent `{a}`")))
        })
        .collect::<Result<_>>()?;

    // Occurrence probabilities per world through its unique true precondition.
    let nw = k.worlds().len();
    let ne = update.events.len();
    let mut occ = vec![vec![0.0; ne]; nw];
    for (w, row) in occ.iter_mut().enumerate() {
        let mut holding = Vec::new();
        for (i, f) in update.preconditions.iter().enumerate() {
            if model.satisfies(w, f)? {
                holding.push(i);
            }
        }
        match holding.as_slice() {
            [] => {}
            [i] => row.clone_from(&update.pre[*i]),
            _ => {
                return Err(Error::PreconditionFailure(format!(
                    "several preconditions hold at world `{}`",
                    k.worlds()[w]
                )))
            }
        }
    }

    let mut pairs = Vec::new();
    let mut index = vec![vec![None; ne]; nw];
    for w in 0..nw {
        for e in 0..ne {
            if occ[w][e] > 0.0 {
                index[w][e] = Some(pairs.len());
                pairs.push((w, e));
            }
        }
    }
    let designated = index[k.designated()][update.designated].ok_or_else(|| {
        Error::PreconditionFailure(format!(
            "the designated event `{}` cannot occur at the designated world `{}`",
            update.events[update.designated],
            k.worlds()[k.designated()]
        ))
    })?;

    let names: Vec<String> = pairs
        .iter()
        .map(|&(w, e)| format!("{}.{}", k.worlds()[w], update.events[e]))
        .collect();
    let (access, valuation) = k.parts();
    let relations: Vec<Vec<(usize, usize)>> = (0..k.agents().len())
        .map(|i| {
            let ui = agent_map[i];
            let mut rel = Vec::new();
            for (a, &(w, e)) in pairs.iter().enumerate() {
                for (b, &(v, f)) in pairs.iter().enumerate() {
                    if access[i][w].contains(v) && update.access[ui][e].contains(f) {
                        rel.push((a, b));
                    }
                }
            }
            rel
        })
        .collect();
    let val: Vec<(String, Vec<usize>)> = valuation
        .iter()
        .map(|(atom, ws)| {
            let at: Vec<usize> = (0..pairs.len()).filter(|&a| ws.contains(pairs[a].0)).collect();
            (atom.clone(), at)
        })
        .collect();
    let kripke = KripkeModel::new(names, k.agents().to_vec(), relations, val, designated, k.is_s5())?;

    let mut mu = Vec::new();
    for i in 0..k.agents().len() {
        let ui = agent_map[i];
        let mut per = Vec::with_capacity(pairs.len());
        for &(w, e) in &pairs {
            let Some(prior) = model.mu(i, w) else {
                per.push(None);
                continue;
            };
            let mut entries = Vec::new();
            for &(v, p) in prior {
                for f in 0..ne {
                    if let Some(b) = index[v][f] {
                        let num = p * occ[v][f] * update.mu[ui][e][f];
                        if num > 0.0 {
                            entries.push((b, num));
                        }
                    }
                }
            }
            let total: f64 = entries.iter().map(|x| x.1).sum();
            if total <= 0.0 {
                return Err(Error::UndefinedUpdate {
                    world: k.worlds()[w].clone(),
                    event: update.events[e].clone(),
                });
            }
            for x in &mut entries {
                x.1 /= total;
            }
            per.push(Some(entries));
        }
        mu.push(per);
    }
    debug_assert!(mu
        .iter()
        .flatten()
        .flatten()
        .all(|d| (d.iter().map(|x| x.1).sum::<f64>() - 1.0).abs() <= TOLERANCE));
    ProbabilisticKripkeModel::new(kripke, mu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse;

    fn s(v: &[&str]) -> Vec<String> {
        v.iter().map(|x| x.to_string()).collect()
    }

    fn coin() -> ProbabilisticKripkeModel {
        let k = KripkeModel::from_partitions(s(&["H", "T"]), s(&["a"]), vec![vec![vec![0, 1]]], vec![("h".into(), vec![0])], 0)
            .unwrap();
        let d = Some(vec![(0, 0.5), (1, 0.5)]);
        ProbabilisticKripkeModel::new(k, vec![vec![d.clone(), d]]).unwrap()
    }

    #[test]
    fn noisy_observation() {
        let u = UpdateModel::new(
            s(&["see_h", "see_t"]),
            s(&["a"]),
            vec![vec![(0, 0), (1, 1)]],
            vec![parse("h").unwrap(), parse("!h").unwrap()],
            vec![vec![0.9, 0.1], vec![0.1, 0.9]],
            vec![vec![vec![1.0, 0.0], vec![0.0, 1.0]]],
            0,
        )
        .unwrap();
        let m = product_update(&coin(), &u).unwrap();
        assert_eq!(m.kripke().worlds(), &s(&["H.see_h", "H.see_t", "T.see_h", "T.see_t"])[..]);
        let d = m.kripke().designated();
        assert_eq!(m.kripke().worlds()[d], "H.see_h");
        let p = m.probability(0, d, &parse("h").unwrap()).unwrap();
        assert!((p - 0.9).abs() < 1e-12);
    }

    #[test]
    fn identity_update() {
        let u = UpdateModel::new(
            s(&["skip"]),
            s(&["a"]),
            vec![vec![(0, 0)]],
            vec![Formula::True],
            vec![vec![1.0]],
            vec![vec![vec![1.0]]],
            0,
        )
        .unwrap();
        let m = product_update(&coin(), &u).unwrap();
        assert_eq!(m.kripke().worlds().len(), 2);
        assert_eq!(m.mu(0, 0).unwrap(), &[(0, 0.5), (1, 0.5)]);
    }

    #[test]
    fn announcement_and_failures() {
        let announce = |f: &str| {
            UpdateModel::new(
                s(&["say"]),
                s(&["a"]),
                vec![vec![(0, 0)]],
                vec![parse(f).unwrap()],
                vec![vec![1.0]],
                vec![vec![vec![1.0]]],
                0,
            )
            .unwrap()
        };
        let m = product_update(&coin(), &announce("h")).unwrap();
        assert_eq!(m.kripke().worlds(), &s(&["H.say"])[..]);
        assert!(matches!(
            product_update(&coin(), &announce("!h")),
            Err(Error::PreconditionFailure(_))
        ));
        let overlapping = UpdateModel::new(
            s(&["e"]),
            s(&["a"]),
            vec![vec![(0, 0)]],
            vec![parse("h").unwrap(), parse("h | q").unwrap()],
            vec![vec![1.0], vec![1.0]],
            vec![vec![vec![1.0]]],
            0,
        );
        assert!(overlapping.is_err());
    }

    #[test]
    fn zero_normalizer() {
        // The agent is sure of T, but the event can only happen at H.
        let k = KripkeModel::from_partitions(s(&["H", "T"]), s(&["a"]), vec![vec![vec![0, 1]]], vec![("h".into(), vec![0])], 0)
            .unwrap();
        let sure_t = Some(vec![(1, 1.0)]);
        let m = ProbabilisticKripkeModel::new(k, vec![vec![sure_t.clone(), sure_t]]).unwrap();
        let u = UpdateModel::new(
            s(&["say"]),
            s(&["a"]),
            vec![vec![(0, 0)]],
            vec![parse("h").unwrap()],
            vec![vec![1.0]],
            vec![vec![vec![1.0]]],
            0,
        )
        .unwrap();
        assert_eq!(
            product_update(&m, &u).unwrap_err(),
            Error::UndefinedUpdate { world: "H".into(), event: "say".into() }
        );
    }
}
