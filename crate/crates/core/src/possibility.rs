//! Fuzzy sets and possibility distributions over finite universes.

use std::collections::BTreeSet;

use crate::error::{check_unit, invalid, Error, Result, TOLERANCE};

fn check_names(names: &[String], what: &str) -> Result<()> {
    let mut seen = std::collections::HashSet::new();
    if let Some(d) = names.iter().find(|n| !seen.insert(n.as_str())) {
        return Err(invalid(format!("duplicate {what} `{d}`")));
    }
    Ok(())
}

/// Membership function over a finite domain.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzySet {
    domain: Vec<String>,
    membership: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FuzzyOp {
    /// Pointwise minimum.
    Intersection,
    /// Pointwise maximum.
    Union,
}

impl FuzzySet {
    pub fn new<S: Into<String>>(domain: impl IntoIterator<Item = S>, membership: Vec<f64>) -> Result<Self> {
        let domain: Vec<String> = domain.into_iter().map(Into::into).collect();
        check_names(&domain, "domain element")?;
        if domain.len() != membership.len() {
            return Err(invalid("one membership degree per domain element is required"));
        }
        for m in &membership {
            check_unit(*m, "membership degree")?;
        }
        Ok(FuzzySet { domain, membership })
    }

    pub fn domain(&self) -> &[String] {
        &self.domain
    }

    pub fn membership(&self) -> &[f64] {
        &self.membership
    }

    fn zip_with(&self, other: &FuzzySet, f: impl Fn(f64, f64) -> f64) -> Result<FuzzySet> {
        if self.domain != other.domain {
            return Err(invalid("fuzzy sets are defined on different domains"));
        }
        Ok(FuzzySet {
            domain: self.domain.clone(),
            membership: self.membership.iter().zip(&other.membership).map(|(a, b)| f(*a, *b)).collect(),
        })
    }

    pub fn intersection(&self, other: &FuzzySet) -> Result<FuzzySet> {
        self.zip_with(other, f64::min)
    }

    pub fn union(&self, other: &FuzzySet) -> Result<FuzzySet> {
        self.zip_with(other, f64::max)
    }

    pub fn complement(&self) -> FuzzySet {
        FuzzySet {
            domain: self.domain.clone(),
            membership: self.membership.iter().map(|m| 1.0 - m).collect(),
        }
    }
}

pub fn fuzzy_combine(a: &FuzzySet, b: &FuzzySet, op: FuzzyOp) -> Result<FuzzySet> {
    match op {
        FuzzyOp::Intersection => a.intersection(b),
        FuzzyOp::Union => a.union(b),
    }
}

pub fn fuzzy_complement(a: &FuzzySet) -> FuzzySet {
    a.complement()
}

/// Degrees of possibility `π(ω)` over a finite universe. May be sub-normalized.
#[derive(Debug, Clone, PartialEq)]
pub struct PossibilityDistribution {
    universe: Vec<String>,
    values: Vec<f64>,
}

/// How [`fuse`] combines sources pointwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FusionMode {
    AndMin,
    AndProduct,
    OrMax,
}

impl FusionMode {
    pub fn apply(self, a: f64, b: f64) -> f64 {
        match self {
            FusionMode::AndMin => a.min(b),
            FusionMode::AndProduct => a * b,
            FusionMode::OrMax => a.max(b),
        }
    }
}

impl PossibilityDistribution {
    pub fn new<S: Into<String>>(universe: impl IntoIterator<Item = S>, values: Vec<f64>) -> Result<Self> {
        let universe: Vec<String> = universe.into_iter().map(Into::into).collect();
        if universe.is_empty() {
            return Err(invalid("the universe must be non-empty"));
        }
        check_names(&universe, "universe element")?;
        if universe.len() != values.len() {
            return Err(invalid("one possibility degree per element is required"));
        }
        for v in &values {
            check_unit(*v, "possibility degree")?;
        }
        Ok(PossibilityDistribution { universe, values })
    }

    /// `π ≡ 1`: nothing is excluded.
    pub fn vacuous<S: Into<String>>(universe: impl IntoIterator<Item = S>) -> Result<Self> {
        let universe: Vec<String> = universe.into_iter().map(Into::into).collect();
        let n = universe.len();
        Self::new(universe, vec![1.0; n])
    }

    pub fn universe(&self) -> &[String] {
        &self.universe
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn height(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }

    /// Some element is fully possible.
    pub fn is_normalized(&self) -> bool {
        (self.height() - 1.0).abs() <= TOLERANCE
    }

    pub fn subset<S: AsRef<str>>(&self, names: &[S]) -> Result<BTreeSet<usize>> {
        names
            .iter()
            .map(|n| {
                let n = n.as_ref();
                self.universe
                    .iter()
                    .position(|u| u == n)
                    .ok_or_else(|| invalid(format!("`{n}` is not in the universe")))
            })
            .collect()
    }

    fn check_subset(&self, a: &BTreeSet<usize>) -> Result<()> {
        match a.iter().find(|&&i| i >= self.values.len()) {
            Some(i) => Err(invalid(format!("element index {i} out of range"))),
            None => Ok(()),
        }
    }

    /// Weakens the distribution according to the source's reliability `λ`.
    pub fn discount(&self, reliability: f64) -> Result<Self> {
        check_unit(reliability, "reliability")?;
        Ok(PossibilityDistribution {
            universe: self.universe.clone(),
            values: self.values.iter().map(|p| p.max(1.0 - reliability)).collect(),
        })
    }

    /// `Π(A)`, the largest degree inside `a`; zero for the empty set.
    pub fn possibility_of(&self, a: &BTreeSet<usize>) -> Result<f64> {
        self.check_subset(a)?;
        Ok(a.iter().map(|&i| self.values[i]).fold(0.0, f64::max))
    }

    /// Qualitative conditioning: the most plausible elements of `a` are raised to 1.
    pub fn condition(&self, a: &BTreeSet<usize>) -> Result<Self> {
        let top = self.possibility_of(a)?;
        if top <= 0.0 {
            return Err(Error::UndefinedConditioning("the conditioning event has possibility zero".into()));
        }
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(i, &p)| match (a.contains(&i), p >= top) {
                (false, _) => 0.0,
                (true, true) => 1.0,
                (true, false) => p,
            })
            .collect();
        Ok(PossibilityDistribution {
            universe: self.universe.clone(),
            values,
        })
    }
}

pub fn discount(pi: &PossibilityDistribution, reliability: f64) -> Result<PossibilityDistribution> {
    pi.discount(reliability)
}

pub fn possibility_of(pi: &PossibilityDistribution, a: &BTreeSet<usize>) -> Result<f64> {
    pi.possibility_of(a)
}

pub fn condition(pi: &PossibilityDistribution, a: &BTreeSet<usize>) -> Result<PossibilityDistribution> {
    pi.condition(a)
}

pub fn fuse(sources: &[PossibilityDistribution], mode: FusionMode) -> Result<PossibilityDistribution> {
    fuse_with(sources, |a, b| mode.apply(a, b))
}

/// Pointwise left fold with a caller-supplied binary operator on `[0, 1]`.
pub fn fuse_with(
    sources: &[PossibilityDistribution],
    op: impl Fn(f64, f64) -> f64,
) -> Result<PossibilityDistribution> {
    let (first, rest) = sources
        .split_first()
        .ok_or_else(|| invalid("fusion needs at least one source"))?;
    let mut values = first.values.clone();
    for s in rest {
        if s.universe != first.universe {
            return Err(invalid("sources are defined on different universes"));
        }
        for (v, x) in values.iter_mut().zip(&s.values) {
            *v = op(*v, *x);
        }
    }
    PossibilityDistribution::new(first.universe.clone(), values)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pi(v: &[f64]) -> PossibilityDistribution {
        let names: Vec<String> = (1..=v.len()).map(|i| format!("w{i}")).collect();
        PossibilityDistribution::new(names, v.to_vec()).unwrap()
    }

    #[test]
    fn fuzzy_operators() {
        let a = FuzzySet::new(["x", "y", "z"], vec![1.0, 0.5, 0.0]).unwrap();
        let b = FuzzySet::new(["x", "y", "z"], vec![0.2, 0.8, 1.0]).unwrap();
        assert_eq!(fuzzy_combine(&a, &b, FuzzyOp::Intersection).unwrap().membership(), &[0.2, 0.5, 0.0]);
        assert_eq!(fuzzy_combine(&a, &b, FuzzyOp::Union).unwrap().membership(), &[1.0, 0.8, 1.0]);
        assert_eq!(a.intersection(&a).unwrap(), a);
        assert_eq!(fuzzy_complement(&fuzzy_complement(&a)), a);
        let c = FuzzySet::new(["x", "y"], vec![0.0, 0.0]).unwrap();
        assert!(a.union(&c).is_err());
        assert!(FuzzySet::new(["x"], vec![1.2]).is_err());
    }

    #[test]
    fn discounting() {
        let p = pi(&[1.0, 0.5, 0.0]);
        assert_eq!(p.discount(1.0).unwrap(), p);
        assert_eq!(p.discount(0.0).unwrap().values(), &[1.0; 3]);
        let d = p.discount(0.7).unwrap();
        assert_eq!(d.values()[..2], [1.0, 0.5]);
        assert!((d.values()[2] - 0.3).abs() < 1e-15);
        assert!(p.discount(1.5).is_err());
    }

    #[test]
    fn possibility_and_conditioning() {
        let p = pi(&[1.0, 0.6, 0.3]);
        let a: BTreeSet<usize> = [1, 2].into();
        assert_eq!(p.possibility_of(&a).unwrap(), 0.6);
        assert_eq!(p.possibility_of(&BTreeSet::new()).unwrap(), 0.0);
        assert_eq!(p.condition(&a).unwrap().values(), &[0.0, 1.0, 0.3]);
        assert_eq!(p.condition(&(0..3).collect()).unwrap(), p);
        let z = pi(&[1.0, 0.0, 0.0]);
        assert!(matches!(z.condition(&a), Err(Error::UndefinedConditioning(_))));
        assert!(!pi(&[0.4, 0.2]).is_normalized());
    }

    #[test]
    fn fusion_modes() {
        let p1 = pi(&[1.0, 0.4]);
        let p2 = pi(&[0.5, 1.0]);
        let both = [p1.clone(), p2];
        assert_eq!(fuse(&both, FusionMode::AndMin).unwrap().values(), &[0.5, 0.4]);
        assert_eq!(fuse(&both, FusionMode::OrMax).unwrap().values(), &[1.0, 1.0]);
        assert_eq!(fuse(&both, FusionMode::AndProduct).unwrap().values(), &[0.5, 0.4]);
        for mode in [FusionMode::AndMin, FusionMode::AndProduct, FusionMode::OrMax] {
            assert_eq!(fuse(std::slice::from_ref(&p1), mode).unwrap(), p1);
        }
        let sq = fuse(&[p1.clone(), p1.clone()], FusionMode::AndProduct).unwrap();
        assert!((sq.values()[1] - 0.16).abs() < 1e-15);
        assert!(fuse(&[], FusionMode::AndMin).is_err());
        assert!(fuse(&[p1, pi(&[1.0])], FusionMode::OrMax).is_err());
    }
}
