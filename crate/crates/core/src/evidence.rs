//! Dempster–Shafer evidence: mass functions over a finite frame, belief and
//! plausibility, Dempster's and Dubois–Prade's combination rules, and lower/upper
//! probabilities induced by a multivalued mapping.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{check_sums_to_one, invalid, Error, Result, TOLERANCE};
use crate::probability::DiscreteDistribution;

/// Largest supported frame.
pub const MAX_FRAME: usize = 20;

/// Subset of a frame, bit `i` standing for element `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FocalSet(pub u32);

impl FocalSet {
    pub const EMPTY: FocalSet = FocalSet(0);

    pub fn singleton(i: usize) -> Self {
        FocalSet(1 << i)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        i < 32 && self.0 >> i & 1 == 1
    }

    pub fn intersect(self, other: FocalSet) -> FocalSet {
        FocalSet(self.0 & other.0)
    }

    pub fn union(self, other: FocalSet) -> FocalSet {
        FocalSet(self.0 | other.0)
    }

    pub fn is_subset(self, other: FocalSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: FocalSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |i| self.0 >> i & 1 == 1)
    }
}

/// Frame of discernment: a finite set of mutually exclusive hypotheses.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Frame {
    elements: Vec<String>,
}

impl Frame {
    pub fn new<S: Into<String>>(elements: impl IntoIterator<Item = S>) -> Result<Self> {
        let elements: Vec<String> = elements.into_iter().map(Into::into).collect();
        if elements.is_empty() {
            return Err(invalid("a frame needs at least one element"));
        }
        if elements.len() > MAX_FRAME {
            return Err(invalid(format!("frames are limited to {MAX_FRAME} elements")));
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(d) = elements.iter().find(|e| !seen.insert(e.as_str())) {
            return Err(invalid(format!("duplicate frame element `{d}`")));
        }
        Ok(Frame { elements })
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn full(&self) -> FocalSet {
        FocalSet(if self.len() == 32 { u32::MAX } else { (1u32 << self.len()) - 1 })
    }

    pub fn index_of(&self, element: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == element)
    }

    /// Subset from element names; unknown names are rejected.
    pub fn subset<S: AsRef<str>>(&self, names: &[S]) -> Result<FocalSet> {
        let mut bits = 0u32;
        for n in names {
            let n = n.as_ref();
            let i = self
                .index_of(n)
                .ok_or_else(|| invalid(format!("`{n}` is not in the frame")))?;
            bits |= 1 << i;
        }
        Ok(FocalSet(bits))
    }

    pub fn check(&self, set: FocalSet) -> Result<()> {
        if set.is_subset(self.full()) {
            Ok(())
        } else {
            Err(invalid(format!("subset {:#b} is not within the frame", set.0)))
        }
    }

    /// Element names of `set`, in frame order.
    pub fn names(&self, set: FocalSet) -> Vec<&str> {
        set.iter()
            .filter(|&i| i < self.len())
            .map(|i| self.elements[i].as_str())
            .collect()
    }

    /// Every subset, the empty set included, in bit order.
    pub fn subsets(&self) -> impl Iterator<Item = FocalSet> {
        (0..=self.full().0).map(FocalSet)
    }
}

/// Basic probability assignment; the empty set never carries mass.
#[derive(Debug, Clone, PartialEq)]
pub struct MassFunction {
    frame: Frame,
    focal: BTreeMap<FocalSet, f64>,
}

impl MassFunction {
    /// Zero masses are dropped and repeated focal sets are summed.
    pub fn new(frame: Frame, masses: impl IntoIterator<Item = (FocalSet, f64)>) -> Result<Self> {
        let mut focal = BTreeMap::new();
        for (set, m) in masses {
            frame.check(set)?;
            if !m.is_finite() || m < 0.0 {
                return Err(invalid(format!("mass {m} must be finite and non-negative")));
            }
            if m == 0.0 {
                continue;
            }
            if set.is_empty() {
                return Err(invalid("the empty set cannot carry mass"));
            }
            *focal.entry(set).or_insert(0.0) += m;
        }
        if focal.values().any(|&m| m > 1.0 + TOLERANCE) {
            return Err(invalid("a focal mass exceeds 1"));
        }
        check_sums_to_one(focal.values().copied(), "masses")?;
        Ok(MassFunction { frame, focal })
    }

    /// Builds from named focal sets.
    pub fn from_named<S: AsRef<str>>(frame: Frame, masses: &[(Vec<S>, f64)]) -> Result<Self> {
        let sets = masses
            .iter()
            .map(|(names, m)| Ok((frame.subset(names)?, *m)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(frame, sets)
    }

    /// Total ignorance: all mass on the frame.
    pub fn vacuous(frame: Frame) -> Self {
        let full = frame.full();
        MassFunction {
            frame,
            focal: BTreeMap::from([(full, 1.0)]),
        }
    }

    /// Mass on singletons only, i.e. an ordinary probability.
    pub fn bayesian(frame: Frame, probs: &[f64]) -> Result<Self> {
        if probs.len() != frame.len() {
            return Err(invalid("one probability per frame element is required"));
        }
        let masses: Vec<_> = probs.iter().enumerate().map(|(i, &p)| (FocalSet::singleton(i), p)).collect();
        Self::new(frame, masses)
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn focal(&self) -> &BTreeMap<FocalSet, f64> {
        &self.focal
    }

    pub fn mass(&self, set: FocalSet) -> f64 {
        self.focal.get(&set).copied().unwrap_or(0.0)
    }

    /// Union of the focal sets.
    pub fn support(&self) -> FocalSet {
        self.focal.keys().fold(FocalSet::EMPTY, |a, &b| a.union(b))
    }

    /// Intersection of the focal sets: the elements of plausibility one.
    pub fn core(&self) -> FocalSet {
        self.focal.keys().fold(self.frame.full(), |a, &b| a.intersect(b))
    }

    /// Contour function `w ↦ Pl({w})`.
    pub fn contour(&self) -> Vec<f64> {
        (0..self.frame.len())
            .map(|i| {
                self.focal
                    .iter()
                    .filter(|(s, _)| s.contains(i))
                    .map(|(_, m)| m)
                    .sum()
            })
            .collect()
    }

    pub fn belief(&self, a: FocalSet) -> f64 {
        self.focal.iter().filter(|(s, _)| s.is_subset(a)).map(|(_, m)| m).sum()
    }

    pub fn plausibility(&self, a: FocalSet) -> f64 {
        self.focal.iter().filter(|(s, _)| s.intersects(a)).map(|(_, m)| m).sum()
    }

    /// `(set names, mass)` pairs with names in frame order.
    pub fn named_focal(&self) -> Vec<(Vec<String>, f64)> {
        self.focal
            .iter()
            .map(|(s, m)| (self.frame.names(*s).into_iter().map(String::from).collect(), *m))
            .collect()
    }

    /// Equal focal sets and masses within `tol`.
    pub fn approx_eq(&self, other: &MassFunction, tol: f64) -> bool {
        self.frame == other.frame
            && self
                .focal
                .keys()
                .chain(other.focal.keys())
                .all(|s| (self.mass(*s) - other.mass(*s)).abs() <= tol)
    }
}

impl fmt::Display for MassFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .named_focal()
            .into_iter()
            .map(|(s, m)| format!("{{{}}}: {m}", s.join(", ")))
            .collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// Belief, plausibility and the gap between them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeliefInterval {
    pub belief: f64,
    pub plausibility: f64,
    pub ignorance: f64,
}

pub fn belief_plausibility(m: &MassFunction, a: FocalSet) -> Result<BeliefInterval> {
    m.frame.check(a)?;
    let belief = m.belief(a);
    let plausibility = m.plausibility(a);
    Ok(BeliefInterval {
        belief,
        plausibility,
        ignorance: plausibility - belief,
    })
}

fn same_frame(m1: &MassFunction, m2: &MassFunction) -> Result<()> {
    if m1.frame == m2.frame {
        Ok(())
    } else {
        Err(invalid("mass functions are defined on different frames"))
    }
}

fn conflict_mass(m1: &MassFunction, m2: &MassFunction) -> f64 {
    let mut e = 0.0;
    for (x, a) in &m1.focal {
        for (y, b) in &m2.focal {
            if !x.intersects(*y) {
                e += a * b;
            }
        }
    }
    e
}

/// Dempster's rule. Fails with [`Error::TotalConflict`] when no focal pair intersects.
///
/// The sources are assumed independent; this cannot be checked.
pub fn dempster_combine(m1: &MassFunction, m2: &MassFunction) -> Result<MassFunction> {
    same_frame(m1, m2)?;
    let mut acc: HashMap<FocalSet, f64> = HashMap::new();
    let mut conflict = 0.0;
    for (x, a) in &m1.focal {
        for (y, b) in &m2.focal {
            let z = x.intersect(*y);
            if z.is_empty() {
                conflict += a * b;
            } else {
                *acc.entry(z).or_insert(0.0) += a * b;
            }
        }
    }
    // Normalizing by 1 - K keeps the vacuous mass an exact identity.
    let norm = 1.0 - conflict;
    if acc.is_empty() || norm <= 0.0 {
        return Err(Error::TotalConflict);
    }
    Ok(MassFunction {
        frame: m1.frame.clone(),
        focal: acc.into_iter().map(|(s, m)| (s, m / norm)).collect(),
    })
}

/// Weight of conflict `−ln(1 − E)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConflictWeight {
    Finite(f64),
    /// `E = 1`: the weight is infinite.
    TotalConflict,
}

impl ConflictWeight {
    pub fn value(self) -> f64 {
        match self {
            ConflictWeight::Finite(w) => w,
            ConflictWeight::TotalConflict => f64::INFINITY,
        }
    }
}

/// Returns the conflict mass `E` and its weight.
pub fn conflict(m1: &MassFunction, m2: &MassFunction) -> Result<(f64, ConflictWeight)> {
    same_frame(m1, m2)?;
    let e = conflict_mass(m1, m2);
    let w = if 1.0 - e <= 0.0 {
        ConflictWeight::TotalConflict
    } else {
        ConflictWeight::Finite(-(1.0 - e).ln())
    };
    Ok((e, w))
}

pub fn conflict_weight(m1: &MassFunction, m2: &MassFunction) -> Result<ConflictWeight> {
    conflict(m1, m2).map(|(_, w)| w)
}

/// Dubois–Prade rule: conflicting products go to the union instead of being discarded.
pub fn dubois_prade_combine(m1: &MassFunction, m2: &MassFunction) -> Result<MassFunction> {
    same_frame(m1, m2)?;
    let mut acc: BTreeMap<FocalSet, f64> = BTreeMap::new();
    for (x, a) in &m1.focal {
        for (y, b) in &m2.focal {
            let z = x.intersect(*y);
            let z = if z.is_empty() { x.union(*y) } else { z };
            *acc.entry(z).or_insert(0.0) += a * b;
        }
    }
    Ok(MassFunction {
        frame: m1.frame.clone(),
        focal: acc,
    })
}

/// Probability on a source space carried to a frame through a set-valued map.
#[derive(Debug, Clone, PartialEq)]
pub struct MultivaluedMapping {
    source: DiscreteDistribution,
    frame: Frame,
    images: Vec<FocalSet>,
}

impl MultivaluedMapping {
    /// `images[i]` is the image of the source's `i`-th outcome.
    pub fn new(source: DiscreteDistribution, frame: Frame, images: Vec<FocalSet>) -> Result<Self> {
        if images.len() != source.len() {
            return Err(invalid("the mapping must give an image for every source outcome"));
        }
        for (i, img) in images.iter().enumerate() {
            frame.check(*img)?;
            if img.is_empty() {
                return Err(invalid(format!("`{}` maps to the empty set", source.outcomes()[i])));
            }
        }
        Ok(MultivaluedMapping { source, frame, images })
    }

    pub fn source(&self) -> &DiscreteDistribution {
        &self.source
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn images(&self) -> &[FocalSet] {
        &self.images
    }

    /// Lower and upper probability of `a`.
    pub fn bounds(&self, a: FocalSet) -> Result<(f64, f64)> {
        self.frame.check(a)?;
        let mut low = 0.0;
        let mut up = 0.0;
        for (img, p) in self.images.iter().zip(self.source.probs()) {
            if img.is_subset(a) {
                low += p;
            }
            if img.intersects(a) {
                up += p;
            }
        }
        Ok((low, up))
    }

    /// `m(B) = P({θ : Γ(θ) = B})`.
    pub fn induced_mass(&self) -> Result<MassFunction> {
        MassFunction::new(
            self.frame.clone(),
            self.images.iter().copied().zip(self.source.probs().iter().copied()),
        )
    }
}

pub fn bounds_from_mapping(mm: &MultivaluedMapping, a: FocalSet) -> Result<(f64, f64)> {
    mm.bounds(a)
}
