use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits::BitSet;
use crate::error::{invalid, Error, Result, TOLERANCE};
use crate::logic::{Formula, ModelSet, Signature};

/// Atom budget for truth tables in validity checking.
pub const VALIDITY_MAX_ATOMS: usize = 12;

#[derive(Debug, Clone, PartialEq)]
pub struct ValidityReport {
    pub atoms: Vec<String>,
    /// Classical entailment by truth table.
    pub entailed: bool,
    /// No sampled probability function gave every premise probability 1 and the conclusion less.
    pub sampled_valid: bool,
    pub samples: usize,
    /// A refuting probability function: `(valuation, probability)` pairs with positive probability.
    pub counterexample: Option<Vec<(String, f64)>>,
}

impl ValidityReport {
    pub fn agree(&self) -> bool {
        self.entailed == self.sampled_valid
    }
}

/// Compares truth-table entailment with a search over random probability functions
/// on valuations. Half the samples are supported inside the premises' models.
pub fn probabilistic_validity(gamma: &[Formula], phi: &Formula, samples: usize, seed: u64) -> Result<ValidityReport> {
    if samples == 0 {
        return Err(invalid("at least one sample is required"));
    }
    if let Some(f) = gamma.iter().chain([phi]).find(|f| !f.is_propositional()) {
        return Err(invalid(format!("`{f}` is not propositional")));
    }
    let sig = Signature::of_formulas(gamma.iter().chain([phi]), VALIDITY_MAX_ATOMS).map_err(|e| match e {
        Error::BudgetExceeded(m) => Error::InvalidInput(m),
        other => other,
    })?;
    let premises = sig.models_of_all(gamma)?;
    let conclusion = sig.models(phi)?;
    let entailed = premises.is_subset(&conclusion);

    let n = sig.valuation_count();
    let premise_models: Vec<usize> = premises.iter().collect();
    let all: Vec<usize> = (0..n).collect();
    let gamma_sets: Vec<ModelSet> = gamma.iter().map(|g| sig.models(g)).collect::<Result<_>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counterexample = None;
    for _ in 0..samples {
        let base = if !premise_models.is_empty() && rng.gen_bool(0.5) {
            &premise_models
        } else {
            &all
        };
        let mut support: Vec<usize> = base.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
        if support.is_empty() {
            support.push(base[rng.gen_range(0..base.len())]);
        }
        let weights: Vec<f64> = support.iter().map(|_| -(1.0 - rng.gen::<f64>()).ln() + 1e-12).collect();
        let total: f64 = weights.iter().sum();
        let p: Vec<(usize, f64)> = support.iter().copied().zip(weights.iter().map(|w| w / total)).collect();
        let prob = |set: &BitSet| p.iter().filter(|(v, _)| set.contains(*v)).map(|x| x.1).sum::<f64>();
        if counterexample.is_none()
            && gamma_sets.iter().all(|g| prob(g) >= 1.0 - TOLERANCE)
            && prob(&conclusion) < 1.0 - TOLERANCE
        {
            counterexample = Some(p.iter().map(|&(v, q)| (sig.describe(v), q)).collect());
        }
    }
    Ok(ValidityReport {
        atoms: sig.atoms().to_vec(),
        entailed,
        sampled_valid: counterexample.is_none(),
        samples,
        counterexample,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse;

    fn run(gamma: &[&str], phi: &str) -> ValidityReport {
        let g: Vec<Formula> = gamma.iter().map(|s| parse(s).unwrap()).collect();
        probabilistic_validity(&g, &parse(phi).unwrap(), 1000, 7).unwrap()
    }

    #[test]
    fn examples() {
        let r = run(&["p"], "p | q");
        assert!(r.entailed && r.sampled_valid);
        let r = run(&["p | q"], "p");
        assert!(!r.entailed && !r.sampled_valid);
        let cx = r.counterexample.unwrap();
        assert!(cx.iter().any(|(v, q)| v == "!p & q" && *q > 0.0));
        let r = run(&[], "p | !p");
        assert!(r.entailed && r.sampled_valid && r.agree());
        let r = run(&["p", "!p"], "q");
        assert!(r.entailed && r.sampled_valid);
    }

    #[test]
    fn budget_and_modal_inputs() {
        let big: Vec<Formula> = (0..13).map(|i| Formula::atom(format!("a{i}"))).collect();
        assert!(matches!(
            probabilistic_validity(&big, &Formula::True, 10, 0),
            Err(Error::InvalidInput(_))
        ));
        assert!(probabilistic_validity(&[], &parse("K{a} p").unwrap(), 10, 0).is_err());
    }
}
