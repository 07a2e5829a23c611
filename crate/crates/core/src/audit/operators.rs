use std::collections::HashMap;

use rand::Rng;

use super::{item_from_mass, item_from_possibility, Arity, FusionOperator, InformationItem, WorldSet};
use crate::error::{invalid, Error, Result};
use crate::evidence::{dubois_prade_combine, FocalSet, Frame, MassFunction};
use crate::possibility::{fuse, FusionMode, PossibilityDistribution};

/// The Dubois–Prade rule on mass functions over one frame.
#[derive(Debug, Clone)]
pub struct DuboisPradeOperator {
    frame: Frame,
}

impl DuboisPradeOperator {
    pub fn new(frame: Frame) -> Self {
        DuboisPradeOperator { frame }
    }
}

impl FusionOperator for DuboisPradeOperator {
    type Value = MassFunction;

    fn name(&self) -> String {
        "dubois-prade".into()
    }

    fn arity(&self) -> Arity {
        Arity::Binary
    }

    fn fuse(&self, inputs: &[MassFunction]) -> Result<MassFunction> {
        match inputs {
            [a, b] => dubois_prade_combine(a, b),
            _ => Err(invalid("the Dubois–Prade rule takes exactly two inputs")),
        }
    }

    fn item(&self, value: &MassFunction) -> InformationItem {
        item_from_mass(value)
    }

    fn vacuous(&self) -> MassFunction {
        MassFunction::vacuous(self.frame.clone())
    }

    fn equivalent(&self, a: &MassFunction, b: &MassFunction) -> bool {
        a.approx_eq(b, crate::TOLERANCE)
    }

    fn describe(&self, value: &MassFunction) -> String {
        value.to_string()
    }

    fn granules(&self, inputs: &[MassFunction]) -> Option<Vec<(Vec<WorldSet>, WorldSet)>> {
        let [a, b] = inputs else { return None };
        let mut out = Vec::new();
        for &x in a.focal().keys() {
            for &y in b.focal().keys() {
                let z = x.intersect(y);
                out.push((vec![x, y], if z.is_empty() { x.union(y) } else { z }));
            }
        }
        Some(out)
    }
}

/// Pointwise possibilistic fusion in one of the built-in modes.
#[derive(Debug, Clone)]
pub struct PossibilityOperator {
    universe: Vec<String>,
    mode: FusionMode,
}

impl PossibilityOperator {
    pub fn new(universe: Vec<String>, mode: FusionMode) -> Self {
        PossibilityOperator { universe, mode }
    }
}

impl FusionOperator for PossibilityOperator {
    type Value = PossibilityDistribution;

    fn name(&self) -> String {
        match self.mode {
            FusionMode::AndMin => "possibility-and-min",
            FusionMode::AndProduct => "possibility-and-product",
            FusionMode::OrMax => "possibility-or-max",
        }
        .into()
    }

    fn arity(&self) -> Arity {
        Arity::NAry
    }

    fn fuse(&self, inputs: &[PossibilityDistribution]) -> Result<PossibilityDistribution> {
        fuse(inputs, self.mode)
    }

    fn item(&self, value: &PossibilityDistribution) -> InformationItem {
        item_from_possibility(value)
    }

    fn vacuous(&self) -> PossibilityDistribution {
        PossibilityDistribution::vacuous(self.universe.clone()).expect("the universe is non-empty")
    }

    fn equivalent(&self, a: &PossibilityDistribution, b: &PossibilityDistribution) -> bool {
        a.universe() == b.universe()
            && a.values().iter().zip(b.values()).all(|(x, y)| (x - y).abs() <= crate::TOLERANCE)
    }

    fn describe(&self, value: &PossibilityDistribution) -> String {
        format!("{:?}", value.values())
    }
}

/// A user-supplied operator given as a finite lookup table over named items.
///
/// Values are indices into the item list. Fusing a tuple with no table entry
/// fails with [`Error::AuditIncomplete`].
#[derive(Debug, Clone)]
pub struct TableOperator {
    name: String,
    arity: Arity,
    names: Vec<String>,
    items: Vec<InformationItem>,
    table: HashMap<Vec<usize>, usize>,
    vacuous: usize,
}

impl TableOperator {
    pub fn new(
        name: impl Into<String>,
        arity: Arity,
        items: Vec<(String, InformationItem)>,
        vacuous: &str,
        entries: &[(Vec<String>, String)],
    ) -> Result<Self> {
        let (names, items): (Vec<String>, Vec<InformationItem>) = items.into_iter().unzip();
        let id = |n: &str| {
            names
                .iter()
                .position(|x| x == n)
                .ok_or_else(|| invalid(format!("unknown item `{n}`")))
        };
        if items.iter().any(|i| i.worlds() != items[0].worlds()) {
            return Err(invalid("all table items must share one set of worlds"));
        }
        let vacuous = id(vacuous)?;
        let mut table = HashMap::new();
        for (ins, out) in entries {
            if ins.len() < 2 {
                return Err(invalid("table entries need at least two inputs"));
            }
            let key = ins.iter().map(|n| id(n)).collect::<Result<Vec<_>>>()?;
            if table.insert(key, id(out)?).is_some() {
                return Err(invalid(format!("duplicate table entry for {ins:?}")));
            }
        }
        Ok(TableOperator {
            name: name.into(),
            arity,
            names,
            items,
            table,
            vacuous,
        })
    }

    pub fn item_names(&self) -> &[String] {
        &self.names
    }

    pub fn id_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

impl FusionOperator for TableOperator {
    type Value = usize;

    fn name(&self) -> String {
        self.name.clone()
    }

    fn arity(&self) -> Arity {
        self.arity
    }

    fn fuse(&self, inputs: &[usize]) -> Result<usize> {
        self.table.get(inputs).copied().ok_or_else(|| {
            let names: Vec<&str> = inputs.iter().map(|&i| self.names[i].as_str()).collect();
            Error::AuditIncomplete(format!("no table entry for ({})", names.join(", ")))
        })
    }

    fn item(&self, value: &usize) -> InformationItem {
        self.items[*value].clone()
    }

    fn vacuous(&self) -> usize {
        self.vacuous
    }

    fn equivalent(&self, a: &usize, b: &usize) -> bool {
        self.items[*a] == self.items[*b]
    }

    fn describe(&self, value: &usize) -> String {
        self.names[*value].clone()
    }
}

/// Every mass function on `frame` whose masses are multiples of `step`.
pub fn grid_masses(frame: &Frame, step: f64) -> Result<Vec<MassFunction>> {
    let units = grid_units(step)?;
    let subsets: Vec<FocalSet> = (1..=frame.full().bits()).map(FocalSet).collect();
    let mut out = Vec::new();
    let mut counts = vec![0usize; subsets.len()];
    compositions(units, 0, &mut counts, &mut |c| {
        let masses = subsets
            .iter()
            .zip(c)
            .filter(|(_, &k)| k > 0)
            .map(|(&s, &k)| (s, k as f64 / units as f64));
        out.push(MassFunction::new(frame.clone(), masses));
    });
    out.into_iter().collect()
}

/// Every possibility distribution on `worlds` with degrees in `{0, step, 2·step, …, 1}`.
pub fn grid_possibilities(worlds: &[String], step: f64) -> Result<Vec<PossibilityDistribution>> {
    let units = grid_units(step)?;
    let n = worlds.len();
    let total = (units + 1).checked_pow(n as u32).ok_or_else(|| invalid("grid too large"))?;
    (0..total)
        .map(|mut k| {
            let mut v = vec![0.0; n];
            for x in v.iter_mut().rev() {
                *x = (k % (units + 1)) as f64 / units as f64;
                k /= units + 1;
            }
            PossibilityDistribution::new(worlds.to_vec(), v)
        })
        .collect()
}

fn grid_units(step: f64) -> Result<usize> {
    let units = (1.0 / step).round();
    if !(step > 0.0 && step <= 1.0) || (units * step - 1.0).abs() > 1e-9 {
        return Err(invalid("the grid step must divide 1"));
    }
    Ok(units as usize)
}

fn compositions(left: usize, at: usize, counts: &mut Vec<usize>, emit: &mut impl FnMut(&[usize])) {
    if at + 1 == counts.len() {
        counts[at] = left;
        emit(counts);
        counts[at] = 0;
        return;
    }
    for k in (0..=left).rev() {
        counts[at] = k;
        compositions(left - k, at + 1, counts, emit);
    }
    counts[at] = 0;
}

/// Random mass functions with one to four focal sets.
pub fn random_masses(frame: &Frame, count: usize, rng: &mut impl Rng) -> Vec<MassFunction> {
    let top = frame.full().bits();
    (0..count)
        .map(|_| {
            let k = rng.gen_range(1..=4usize.min(top as usize));
            let sets: Vec<FocalSet> = (0..k).map(|_| FocalSet(rng.gen_range(1..=top))).collect();
            let weights: Vec<f64> = (0..k).map(|_| rng.gen_range(0.05..1.0)).collect();
            let total: f64 = weights.iter().sum();
            MassFunction::new(frame.clone(), sets.into_iter().zip(weights.iter().map(|w| w / total)))
                .expect("weights are normalized")
        })
        .collect()
}

/// Random possibility distributions; about half are normalized and a quarter of
/// degrees are zero.
pub fn random_possibilities(worlds: &[String], count: usize, rng: &mut impl Rng) -> Vec<PossibilityDistribution> {
    (0..count)
        .map(|_| {
            let mut v: Vec<f64> = worlds
                .iter()
                .map(|_| if rng.gen_bool(0.25) { 0.0 } else { rng.gen_range(0.0..=1.0) })
                .collect();
            if rng.gen_bool(0.5) {
                let i = rng.gen_range(0..v.len());
                v[i] = 1.0;
            }
            PossibilityDistribution::new(worlds.to_vec(), v).expect("degrees lie in [0, 1]")
        })
        .collect()
}
