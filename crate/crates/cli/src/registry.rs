//! Which library module and model family answers each task.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TaskInfo {
    pub name: &'static str,
    /// Library module the task calls into.
    pub module: &'static str,
    pub model: &'static str,
    pub summary: &'static str,
}

pub const TASKS: [TaskInfo; 19] = [
    TaskInfo {
        name: "bayes",
        module: "probability",
        model: "Bayesian conditioning",
        summary: "posterior over hypotheses from a prior and likelihoods",
    },
    TaskInfo {
        name: "bn-joint",
        module: "probability",
        model: "Bayesian network",
        summary: "joint probability of full assignments",
    },
    TaskInfo {
        name: "entropy",
        module: "probability",
        model: "Shannon information",
        summary: "entropy in bits of discrete distributions",
    },
    TaskInfo {
        name: "channel",
        module: "probability",
        model: "discrete memoryless channel",
        summary: "output distribution and posteriors given observed symbols",
    },
    TaskInfo {
        name: "ds-combine",
        module: "evidence",
        model: "Dempster-Shafer evidence",
        summary: "Dempster or Dubois-Prade combination with conflict and weight of conflict",
    },
    TaskInfo {
        name: "ds-bounds",
        module: "evidence",
        model: "Dempster-Shafer evidence",
        summary: "belief and plausibility from a mass function or a multivalued mapping",
    },
    TaskInfo {
        name: "rough",
        module: "rough",
        model: "rough sets",
        summary: "indiscernibility classes and lower/upper approximations",
    },
    TaskInfo {
        name: "possibility",
        module: "possibility",
        model: "possibility theory",
        summary: "possibility and necessity of events, conditioning, discounting, fuzzy operators",
    },
    TaskInfo {
        name: "fuse",
        module: "possibility",
        model: "possibilistic fusion",
        summary: "pointwise fusion of possibility distributions",
    },
    TaskInfo {
        name: "audit",
        module: "audit",
        model: "fusion postulates",
        summary: "checks a fusion rule against the postulates over a family of inputs",
    },
    TaskInfo {
        name: "kripke-check",
        module: "epistemic",
        model: "multi-agent Kripke models",
        summary: "truth of epistemic and probabilistic formulas at each world",
    },
    TaskInfo {
        name: "kripke-update",
        module: "epistemic",
        model: "probabilistic product update",
        summary: "updates a probabilistic Kripke model with an event model",
    },
    TaskInfo {
        name: "prob-validity",
        module: "epistemic",
        model: "probabilistic validity",
        summary: "sampled probability-preservation check against truth-table entailment",
    },
    TaskInfo {
        name: "defaults",
        module: "defaults",
        model: "default logic",
        summary: "extensions of a default theory and skeptical/credulous consequences",
    },
    TaskInfo {
        name: "mcs",
        module: "defaults",
        model: "maximal consistent subsets",
        summary: "maximal consistent subsets of an inconsistent base and their consequences",
    },
    TaskInfo {
        name: "cwa",
        module: "defaults",
        model: "closed-world assumption",
        summary: "closed-world closure of a propositional base",
    },
    TaskInfo {
        name: "sorites",
        module: "vagueness",
        model: "regimented vague predicates",
        summary: "whether the tolerance chain sequent holds under every regimentation",
    },
    TaskInfo {
        name: "ir",
        module: "retrieval",
        model: "situation-type constraints",
        summary: "relevance ranking of documents for queries",
    },
    TaskInfo {
        name: "infomorphism-check",
        module: "channel",
        model: "classifications and infomorphisms",
        summary: "checks the infomorphism condition and pulls back local logics",
    },
];

pub fn lookup(name: &str) -> Option<&'static TaskInfo> {
    TASKS.iter().find(|t| t.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique() {
        let mut names: Vec<&str> = TASKS.iter().map(|t| t.name).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), TASKS.len());
        assert!(lookup("sorites").is_some());
        assert!(lookup("nope").is_none());
    }
}
