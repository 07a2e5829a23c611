use std::fmt;

use crate::error::{invalid, Result, TOLERANCE};
use crate::evidence::{FocalSet, MassFunction};
use crate::possibility::PossibilityDistribution;

/// Set of worlds, bit `i` standing for world `i`.
pub type WorldSet = FocalSet;

/// What a piece of information says about a finite set of worlds: the worlds it
/// does not exclude (support), the worlds it finds fully plausible (core), and a
/// total plausibility ranking where lower ranks are more plausible.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InformationItem {
    worlds: Vec<String>,
    support: WorldSet,
    core: WorldSet,
    ranking: Vec<u32>,
}

impl InformationItem {
    /// Checks that the core lies inside the support and that every world off the
    /// support shares one rank strictly worse than any supported world.
    pub fn new(worlds: Vec<String>, support: WorldSet, core: WorldSet, ranking: Vec<u32>) -> Result<Self> {
        if worlds.is_empty() || worlds.len() > 20 {
            return Err(invalid("an item needs between 1 and 20 worlds"));
        }
        let full = FocalSet((1u32 << worlds.len()) - 1);
        if !support.is_subset(full) || !core.is_subset(full) {
            return Err(invalid("support or core mentions unknown worlds"));
        }
        if !core.is_subset(support) {
            return Err(invalid("the core must lie inside the support"));
        }
        if ranking.len() != worlds.len() {
            return Err(invalid("one rank per world is required"));
        }
        let inside = support.iter().map(|w| ranking[w]).max();
        let outside: Vec<u32> = (0..worlds.len()).filter(|&w| !support.contains(w)).map(|w| ranking[w]).collect();
        if let Some(&o) = outside.first() {
            if outside.iter().any(|&r| r != o) || inside.is_some_and(|i| i >= o) {
                return Err(invalid("worlds off the support must share the worst rank"));
            }
        }
        Ok(InformationItem {
            worlds,
            support,
            core,
            ranking,
        })
    }

    /// Reads an item off a contour function with values in `[0, 1]`: support is
    /// where the contour is positive, core where it equals one, and ranks follow
    /// the distinct contour levels in decreasing order.
    pub fn from_contour(worlds: Vec<String>, contour: &[f64]) -> Result<Self> {
        if contour.len() != worlds.len() {
            return Err(invalid("one contour value per world is required"));
        }
        let mut support = WorldSet::EMPTY;
        let mut core = WorldSet::EMPTY;
        let mut levels: Vec<f64> = Vec::new();
        for (w, &c) in contour.iter().enumerate() {
            if c > TOLERANCE {
                support = support.union(WorldSet::singleton(w));
                if c >= 1.0 - TOLERANCE {
                    core = core.union(WorldSet::singleton(w));
                }
                levels.push(c);
            }
        }
        levels.sort_by(|a, b| b.total_cmp(a));
        levels.dedup_by(|a, b| (*a - *b).abs() <= TOLERANCE);
        let worst = levels.len() as u32;
        let ranking = contour
            .iter()
            .map(|&c| {
                if c > TOLERANCE {
                    levels.iter().position(|l| (l - c).abs() <= TOLERANCE).unwrap_or(0) as u32
                } else {
                    worst
                }
            })
            .collect();
        Self::new(worlds, support, core, ranking)
    }

    /// No world excluded, all equally plausible.
    pub fn vacuous(worlds: Vec<String>) -> Result<Self> {
        let n = worlds.len();
        Self::from_contour(worlds, &vec![1.0; n])
    }

    pub fn worlds(&self) -> &[String] {
        &self.worlds
    }

    pub fn support(&self) -> WorldSet {
        self.support
    }

    pub fn core(&self) -> WorldSet {
        self.core
    }

    pub fn ranking(&self) -> &[u32] {
        &self.ranking
    }

    /// Some world remains possible.
    pub fn is_consistent(&self) -> bool {
        !self.support.is_empty()
    }

    pub fn names(&self, set: WorldSet) -> Vec<&str> {
        set.iter().filter(|&w| w < self.worlds.len()).map(|w| self.worlds[w].as_str()).collect()
    }
}

impl fmt::Display for InformationItem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "support {{{}}}, core {{{}}}, ranks {:?}",
            self.names(self.support).join(", "),
            self.names(self.core).join(", "),
            self.ranking
        )
    }
}

/// Item of a mass function, using the contour `w ↦ Pl({w})`.
pub fn item_from_mass(m: &MassFunction) -> InformationItem {
    InformationItem::from_contour(m.frame().elements().to_vec(), &m.contour())
        .expect("a mass function yields a valid contour")
}

pub fn item_from_possibility(pi: &PossibilityDistribution) -> InformationItem {
    InformationItem::from_contour(pi.universe().to_vec(), pi.values()).expect("a possibility distribution yields a valid contour")
}
