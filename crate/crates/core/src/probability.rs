//! Finite distributions, Bayes conditioning, Bayesian-network joints,
//! discrete noisy channels and Shannon entropy (in bits).

use std::collections::HashMap;

use crate::error::{check_sums_to_one, check_unit, invalid, Error, Result};

/// Probability vector over named outcomes; sums to one within [`crate::TOLERANCE`].
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteDistribution {
    outcomes: Vec<String>,
    probs: Vec<f64>,
}

impl DiscreteDistribution {
    pub fn new<S: Into<String>>(outcomes: impl IntoIterator<Item = S>, probs: Vec<f64>) -> Result<Self> {
        let outcomes: Vec<String> = outcomes.into_iter().map(Into::into).collect();
        if outcomes.is_empty() {
            return Err(invalid("a distribution needs at least one outcome"));
        }
        if outcomes.len() != probs.len() {
            return Err(invalid(format!(
                "{} outcomes but {} probabilities",
                outcomes.len(),
                probs.len()
            )));
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = outcomes.iter().find(|o| !seen.insert(o.as_str())) {
            return Err(invalid(format!("duplicate outcome `{dup}`")));
        }
        for p in &probs {
            check_unit(*p, "probability")?;
        }
        check_sums_to_one(probs.iter().copied(), "probabilities")?;
        Ok(DiscreteDistribution { outcomes, probs })
    }

    /// Divides non-negative weights by their sum. Only for callers who want renormalization.
    pub fn normalized<S: Into<String>>(outcomes: impl IntoIterator<Item = S>, weights: Vec<f64>) -> Result<Self> {
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(invalid("weights must be finite and non-negative"));
        }
        let total: f64 = weights.iter().sum();
        if total <= 0.0 {
            return Err(Error::UndefinedConditioning("weights sum to zero".into()));
        }
        Self::new(outcomes, weights.iter().map(|w| w / total).collect())
    }

    pub fn uniform<S: Into<String>>(outcomes: impl IntoIterator<Item = S>) -> Result<Self> {
        let outcomes: Vec<String> = outcomes.into_iter().map(Into::into).collect();
        let n = outcomes.len();
        Self::new(outcomes, vec![1.0 / n.max(1) as f64; n])
    }

    pub fn point_mass<S: Into<String>>(outcomes: impl IntoIterator<Item = S>, at: usize) -> Result<Self> {
        let outcomes: Vec<String> = outcomes.into_iter().map(Into::into).collect();
        if at >= outcomes.len() {
            return Err(invalid("point mass index out of range"));
        }
        let probs = (0..outcomes.len()).map(|i| if i == at { 1.0 } else { 0.0 }).collect();
        Self::new(outcomes, probs)
    }

    pub fn outcomes(&self) -> &[String] {
        &self.outcomes
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn index_of(&self, outcome: &str) -> Option<usize> {
        self.outcomes.iter().position(|o| o == outcome)
    }

    pub fn prob(&self, outcome: &str) -> Option<f64> {
        self.index_of(outcome).map(|i| self.probs[i])
    }
}

/// Posterior over a partition `{Eᵢ}` given prior `P(Eᵢ)` and likelihoods `P(A | Eᵢ)`.
pub fn bayes_posterior(prior: &DiscreteDistribution, likelihoods: &[f64]) -> Result<DiscreteDistribution> {
    if likelihoods.len() != prior.len() {
        return Err(invalid(format!(
            "{} likelihoods for {} hypotheses",
            likelihoods.len(),
            prior.len()
        )));
    }
    for l in likelihoods {
        check_unit(*l, "likelihood")?;
    }
    let joint: Vec<f64> = prior.probs.iter().zip(likelihoods).map(|(p, l)| p * l).collect();
    let evidence: f64 = joint.iter().sum();
    if evidence <= 0.0 {
        return Err(Error::UndefinedConditioning("the evidence has prior probability zero".into()));
    }
    DiscreteDistribution::new(prior.outcomes.clone(), joint.iter().map(|j| j / evidence).collect())
}

/// Shannon entropy in bits, with `0·log 0 = 0`.
pub fn entropy(d: &DiscreteDistribution) -> f64 {
    let h: f64 = d.probs.iter().filter(|&&p| p > 0.0).map(|&p| -p * p.log2()).sum();
    // A point mass gives -1·log2(1) = -0.0; report it as a plain zero.
    h.max(0.0)
}

/// Maximum number of values per network node.
pub const MAX_NODE_ARITY: usize = 8;

/// One node of a [`BayesNet`]: its values, parents and conditional table.
#[derive(Debug, Clone, PartialEq)]
pub struct BayesNode {
    pub name: String,
    pub values: Vec<String>,
    /// Indices of earlier nodes.
    pub parents: Vec<usize>,
    /// One row per parent configuration, in mixed radix with the last parent
    /// varying fastest; each row is a distribution over `values`.
    pub cpt: Vec<Vec<f64>>,
}

/// A Bayesian network whose node order is a topological order.
#[derive(Debug, Clone, PartialEq)]
pub struct BayesNet {
    nodes: Vec<BayesNode>,
    index: HashMap<String, usize>,
}

impl BayesNet {
    pub fn new(nodes: Vec<BayesNode>) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, n) in nodes.iter().enumerate() {
            if index.insert(n.name.clone(), i).is_some() {
                return Err(invalid(format!("duplicate node `{}`", n.name)));
            }
            if n.values.is_empty() || n.values.len() > MAX_NODE_ARITY {
                return Err(invalid(format!(
                    "node `{}` must have between 1 and {MAX_NODE_ARITY} values",
                    n.name
                )));
            }
            if let Some(&p) = n.parents.iter().find(|&&p| p >= i) {
                return Err(invalid(format!(
                    "node `{}` lists parent index {p}, which does not precede it",
                    n.name
                )));
            }
            let rows: usize = n.parents.iter().map(|&p| nodes[p].values.len()).product();
            if n.cpt.len() != rows {
                return Err(invalid(format!("node `{}` needs {rows} table rows, got {}", n.name, n.cpt.len())));
            }
            for row in &n.cpt {
                if row.len() != n.values.len() {
                    return Err(invalid(format!("a table row of `{}` has the wrong length", n.name)));
                }
                for p in row {
                    check_unit(*p, "conditional probability")?;
                }
                check_sums_to_one(row.iter().copied(), &format!("each table row of `{}`", n.name))?;
            }
        }
        Ok(BayesNet { nodes, index })
    }

    pub fn nodes(&self) -> &[BayesNode] {
        &self.nodes
    }

    pub fn node_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Joint probability of a full assignment given as value indices in node order.
    pub fn joint(&self, assignment: &[usize]) -> Result<f64> {
        if assignment.len() != self.nodes.len() {
            return Err(invalid("the assignment must give a value for every node"));
        }
        let mut p = 1.0;
        for (i, n) in self.nodes.iter().enumerate() {
            let v = assignment[i];
            if v >= n.values.len() {
                return Err(invalid(format!("value index {v} out of range for `{}`", n.name)));
            }
            let row = n
                .parents
                .iter()
                .fold(0, |acc, &q| acc * self.nodes[q].values.len() + assignment[q]);
            p *= n.cpt[row][v];
        }
        Ok(p)
    }

    /// Joint probability of an assignment given as `node → value` names.
    pub fn joint_by_name<K: AsRef<str>, V: AsRef<str>>(&self, assignment: &[(K, V)]) -> Result<f64> {
        let mut values = vec![None; self.nodes.len()];
        for (k, v) in assignment {
            let (k, v) = (k.as_ref(), v.as_ref());
            let i = self.node_index(k).ok_or_else(|| invalid(format!("unknown node `{k}`")))?;
            let j = self.nodes[i]
                .values
                .iter()
                .position(|x| x == v)
                .ok_or_else(|| invalid(format!("node `{k}` has no value `{v}`")))?;
            values[i] = Some(j);
        }
        let full: Vec<usize> = values
            .iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| invalid(format!("missing value for node `{}`", self.nodes[i].name))))
            .collect::<Result<_>>()?;
        self.joint(&full)
    }

    /// Every full assignment in mixed-radix order (last node fastest).
    pub fn assignments(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        let radices: Vec<usize> = self.nodes.iter().map(|n| n.values.len()).collect();
        let total: usize = radices.iter().product();
        (0..total).map(move |mut k| {
            let mut a = vec![0; radices.len()];
            for i in (0..radices.len()).rev() {
                a[i] = k % radices[i];
                k /= radices[i];
            }
            a
        })
    }
}

/// Free-function form of [`BayesNet::joint_by_name`].
pub fn bn_joint<K: AsRef<str>, V: AsRef<str>>(net: &BayesNet, assignment: &[(K, V)]) -> Result<f64> {
    net.joint_by_name(assignment)
}

/// A memoryless channel given by its transition matrix `p(y | x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteChannel {
    inputs: Vec<String>,
    outputs: Vec<String>,
    matrix: Vec<Vec<f64>>,
}

impl DiscreteChannel {
    /// `matrix[x][y] = p(y | x)`; every row must be a distribution.
    pub fn new<S: Into<String>, T: Into<String>>(
        inputs: impl IntoIterator<Item = S>,
        outputs: impl IntoIterator<Item = T>,
        matrix: Vec<Vec<f64>>,
    ) -> Result<Self> {
        let inputs: Vec<String> = inputs.into_iter().map(Into::into).collect();
        let outputs: Vec<String> = outputs.into_iter().map(Into::into).collect();
        if inputs.is_empty() || outputs.is_empty() {
            return Err(invalid("channel alphabets must be non-empty"));
        }
        if matrix.len() != inputs.len() || matrix.iter().any(|r| r.len() != outputs.len()) {
            return Err(invalid("transition matrix shape does not match the alphabets"));
        }
        for row in &matrix {
            for p in row {
                check_unit(*p, "transition probability")?;
            }
            check_sums_to_one(row.iter().copied(), "each transition row")?;
        }
        Ok(DiscreteChannel {
            inputs,
            outputs,
            matrix,
        })
    }

    /// Binary symmetric channel over `{0, 1}` flipping each symbol with probability `crossover`.
    pub fn binary_symmetric(crossover: f64) -> Result<Self> {
        check_unit(crossover, "crossover probability")?;
        let e = crossover;
        Self::new(["0", "1"], ["0", "1"], vec![vec![1.0 - e, e], vec![e, 1.0 - e]])
    }

    pub fn inputs(&self) -> &[String] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[String] {
        &self.outputs
    }

    pub fn matrix(&self) -> &[Vec<f64>] {
        &self.matrix
    }

    /// Input probabilities reordered to the channel's input alphabet.
    fn aligned(&self, input: &DiscreteDistribution) -> Result<Vec<f64>> {
        if input.len() != self.inputs.len() {
            return Err(invalid("input distribution does not match the channel's input alphabet"));
        }
        self.inputs
            .iter()
            .map(|x| {
                input
                    .prob(x)
                    .ok_or_else(|| invalid(format!("input distribution lacks symbol `{x}`")))
            })
            .collect()
    }

    /// Output distribution `q(y) = Σₓ p(x)·p(y | x)`.
    pub fn output(&self, input: &DiscreteDistribution) -> Result<DiscreteDistribution> {
        let px = self.aligned(input)?;
        let q: Vec<f64> = (0..self.outputs.len())
            .map(|y| px.iter().zip(&self.matrix).map(|(p, row)| p * row[y]).sum())
            .collect();
        DiscreteDistribution::new(self.outputs.clone(), q)
    }

    /// Posterior over inputs after observing output `y`.
    pub fn posterior(&self, input: &DiscreteDistribution, y: &str) -> Result<DiscreteDistribution> {
        let px = self.aligned(input)?;
        let yi = self
            .outputs
            .iter()
            .position(|o| o == y)
            .ok_or_else(|| invalid(format!("unknown output symbol `{y}`")))?;
        let prior = DiscreteDistribution::new(self.inputs.clone(), px)?;
        let likelihoods: Vec<f64> = self.matrix.iter().map(|row| row[yi]).collect();
        bayes_posterior(&prior, &likelihoods).map_err(|e| match e {
            Error::UndefinedConditioning(_) => {
                Error::UndefinedConditioning(format!("output `{y}` has probability zero"))
            }
            other => other,
        })
    }
}

pub fn channel_output(ch: &DiscreteChannel, input: &DiscreteDistribution) -> Result<DiscreteDistribution> {
    ch.output(input)
}

pub fn channel_posterior(ch: &DiscreteChannel, input: &DiscreteDistribution, y: &str) -> Result<DiscreteDistribution> {
    ch.posterior(input, y)
}
