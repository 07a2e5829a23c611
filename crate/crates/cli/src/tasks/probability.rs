use std::collections::BTreeMap;

use infoflow::probability::{
    bayes_posterior, bn_joint as joint_of, channel_output, channel_posterior, entropy as shannon, BayesNet, BayesNode,
    DiscreteChannel, DiscreteDistribution,
};
use infoflow::Result;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::spec::{index_in, invalid};

fn dist_json(d: &DiscreteDistribution) -> Value {
    Value::Array(
        d.outcomes()
            .iter()
            .zip(d.probs())
            .map(|(o, p)| json!({"outcome": o, "p": p}))
            .collect(),
    )
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Bayes {
    hypotheses: Vec<String>,
    prior: Vec<f64>,
    likelihoods: Vec<f64>,
}

pub fn bayes(p: Bayes) -> Result<Value> {
    let prior = DiscreteDistribution::new(p.hypotheses, p.prior)?;
    let post = bayes_posterior(&prior, &p.likelihoods)?;
    let evidence: f64 = prior.probs().iter().zip(&p.likelihoods).map(|(a, b)| a * b).sum();
    Ok(json!({"posterior": dist_json(&post), "evidence": evidence}))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeSpec {
    name: String,
    values: Vec<String>,
    #[serde(default)]
    parents: Vec<String>,
    cpt: Vec<Vec<f64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BnJoint {
    nodes: Vec<NodeSpec>,
    queries: Vec<BTreeMap<String, String>>,
}

pub fn bn_joint(p: BnJoint) -> Result<Value> {
    let names: Vec<String> = p.nodes.iter().map(|n| n.name.clone()).collect();
    let nodes = p
        .nodes
        .into_iter()
        .enumerate()
        .map(|(i, n)| {
            let parents = n
                .parents
                .iter()
                .map(|q| {
                    let j = index_in(&names, q, "node")?;
                    if j >= i {
                        return Err(invalid(format!("parent `{q}` of `{}` must be listed before it", n.name)));
                    }
                    Ok(j)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(BayesNode {
                name: n.name,
                values: n.values,
                parents,
                cpt: n.cpt,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let net = BayesNet::new(nodes)?;
    let mut total = 0.0;
    for a in net.assignments() {
        total += net.joint(&a)?;
    }
    let queries = p
        .queries
        .iter()
        .map(|q| {
            let pairs: Vec<(&String, &String)> = q.iter().collect();
            Ok(json!({"assignment": q, "joint": joint_of(&net, &pairs)?}))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(json!({"queries": queries, "joint_total": total}))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedDistribution {
    name: String,
    outcomes: Vec<String>,
    probs: Vec<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entropy {
    distributions: Vec<NamedDistribution>,
}

pub fn entropy(p: Entropy) -> Result<Value> {
    let rows = p
        .distributions
        .into_iter()
        .map(|d| {
            let dist = DiscreteDistribution::new(d.outcomes, d.probs)?;
            Ok(json!({"name": d.name, "entropy_bits": shannon(&dist)}))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(json!({"entropies": rows}))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelTask {
    #[serde(default)]
    inputs: Option<Vec<String>>,
    #[serde(default)]
    outputs: Option<Vec<String>>,
    /// `matrix[x][y] = p(y | x)`
    #[serde(default)]
    matrix: Option<Vec<Vec<f64>>>,
    /// Crossover probability of a binary symmetric channel over `{0, 1}`.
    #[serde(default)]
    binary_symmetric: Option<f64>,
    prior: Vec<f64>,
    /// An input symbol sent with certainty.
    #[serde(default)]
    sent: Option<String>,
    #[serde(default)]
    observed: Vec<String>,
}

pub fn channel(p: ChannelTask) -> Result<Value> {
    let ch = match (p.binary_symmetric, p.inputs, p.outputs, p.matrix) {
        (Some(e), None, None, None) => DiscreteChannel::binary_symmetric(e)?,
        (None, Some(i), Some(o), Some(m)) => DiscreteChannel::new(i, o, m)?,
        _ => return Err(invalid("give either `binary_symmetric` or all of `inputs`, `outputs` and `matrix`")),
    };
    let prior = DiscreteDistribution::new(ch.inputs().to_vec(), p.prior)?;
    let out = channel_output(&ch, &prior)?;
    let mut result = json!({
        "prior_entropy_bits": shannon(&prior),
        "output": dist_json(&out),
        "output_entropy_bits": shannon(&out),
    });
    if let Some(s) = &p.sent {
        let at = index_in(ch.inputs(), s, "input symbol")?;
        let point = DiscreteDistribution::point_mass(ch.inputs().to_vec(), at)?;
        result["output_given_sent"] = dist_json(&channel_output(&ch, &point)?);
    }
    let posteriors = p
        .observed
        .iter()
        .map(|y| Ok(json!({"observed": y, "posterior": dist_json(&channel_posterior(&ch, &prior, y)?)})))
        .collect::<Result<Vec<_>>>()?;
    result["posteriors"] = Value::Array(posteriors);
    Ok(result)
}
