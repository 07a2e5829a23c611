//! Rough-set approximations over attribute-value tables.

use std::collections::{BTreeSet, HashMap};

use crate::error::{invalid, Result};

/// Objects described by symbolic attribute values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InformationSystem {
    objects: Vec<String>,
    attributes: Vec<String>,
    /// `values[x][a]`
    values: Vec<Vec<String>>,
}

/// Lower and upper approximation of a set of objects, with the boundary between them.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Approximation {
    pub lower: BTreeSet<usize>,
    pub upper: BTreeSet<usize>,
    pub boundary: BTreeSet<usize>,
}

impl Approximation {
    pub fn is_crisp(&self) -> bool {
        self.boundary.is_empty()
    }
}

impl InformationSystem {
    pub fn new<S: Into<String>, T: Into<String>>(
        objects: impl IntoIterator<Item = S>,
        attributes: impl IntoIterator<Item = T>,
        values: Vec<Vec<String>>,
    ) -> Result<Self> {
        let objects: Vec<String> = objects.into_iter().map(Into::into).collect();
        let attributes: Vec<String> = attributes.into_iter().map(Into::into).collect();
        for (what, names) in [("object", &objects), ("attribute", &attributes)] {
            let mut seen = std::collections::HashSet::new();
            if let Some(d) = names.iter().find(|n| !seen.insert(n.as_str())) {
                return Err(invalid(format!("duplicate {what} `{d}`")));
            }
        }
        if values.len() != objects.len() {
            return Err(invalid(format!("{} rows for {} objects", values.len(), objects.len())));
        }
        if let Some((i, _)) = values.iter().enumerate().find(|(_, r)| r.len() != attributes.len()) {
            return Err(invalid(format!(
                "object `{}` does not give a value for every attribute",
                objects[i]
            )));
        }
        Ok(InformationSystem {
            objects,
            attributes,
            values,
        })
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn attributes(&self) -> &[String] {
        &self.attributes
    }

    pub fn value(&self, object: usize, attribute: usize) -> &str {
        &self.values[object][attribute]
    }

    pub fn attribute_ids<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<usize>> {
        names
            .iter()
            .map(|n| {
                let n = n.as_ref();
                self.attributes
                    .iter()
                    .position(|a| a == n)
                    .ok_or_else(|| invalid(format!("unknown attribute `{n}`")))
            })
            .collect()
    }

    pub fn object_ids<S: AsRef<str>>(&self, names: &[S]) -> Result<BTreeSet<usize>> {
        names
            .iter()
            .map(|n| {
                let n = n.as_ref();
                self.objects
                    .iter()
                    .position(|o| o == n)
                    .ok_or_else(|| invalid(format!("unknown object `{n}`")))
            })
            .collect()
    }

    pub fn object_names(&self, set: &BTreeSet<usize>) -> Vec<&str> {
        set.iter().map(|&i| self.objects[i].as_str()).collect()
    }

    /// Classes of objects agreeing on every attribute in `b`, ordered by first member.
    pub fn indiscernibility_classes(&self, b: &[usize]) -> Result<Vec<Vec<usize>>> {
        if b.is_empty() {
            return Err(invalid("the attribute subset must be non-empty"));
        }
        if let Some(&a) = b.iter().find(|&&a| a >= self.attributes.len()) {
            return Err(invalid(format!("attribute index {a} out of range")));
        }
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut by_key: HashMap<Vec<&str>, usize> = HashMap::new();
        for x in 0..self.objects.len() {
            let key: Vec<&str> = b.iter().map(|&a| self.value(x, a)).collect();
            match by_key.get(&key) {
                Some(&c) => classes[c].push(x),
                None => {
                    by_key.insert(key, classes.len());
                    classes.push(vec![x]);
                }
            }
        }
        Ok(classes)
    }

    pub fn approximate(&self, b: &[usize], x: &BTreeSet<usize>) -> Result<Approximation> {
        if let Some(&o) = x.iter().find(|&&o| o >= self.objects.len()) {
            return Err(invalid(format!("object index {o} out of range")));
        }
        let mut out = Approximation::default();
        for class in self.indiscernibility_classes(b)? {
            let inside = class.iter().filter(|o| x.contains(o)).count();
            if inside == class.len() {
                out.lower.extend(&class);
            }
            if inside > 0 {
                out.upper.extend(&class);
            }
        }
        out.boundary = out.upper.difference(&out.lower).copied().collect();
        Ok(out)
    }

    pub fn is_crisp(&self, b: &[usize], x: &BTreeSet<usize>) -> Result<bool> {
        Ok(self.approximate(b, x)?.is_crisp())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn four() -> InformationSystem {
        let vals = ["0", "0", "1", "1"].iter().map(|v| vec![v.to_string()]).collect();
        InformationSystem::new(["1", "2", "3", "4"], ["a"], vals).unwrap()
    }

    #[test]
    fn worked_example() {
        let s = four();
        assert_eq!(s.indiscernibility_classes(&[0]).unwrap(), vec![vec![0, 1], vec![2, 3]]);
        let x = s.object_ids(&["1", "3"]).unwrap();
        let ap = s.approximate(&[0], &x).unwrap();
        assert!(ap.lower.is_empty());
        assert_eq!(ap.upper, (0..4).collect());
        assert_eq!(ap.boundary, ap.upper);
        assert!(!s.is_crisp(&[0], &x).unwrap());
        assert!(s.is_crisp(&[0], &BTreeSet::new()).unwrap());
        assert!(s.is_crisp(&[0], &[0, 1].into()).unwrap());
    }

    #[test]
    fn extreme_partitions() {
        let vals = (0..3).map(|i| vec![i.to_string(), "k".into()]).collect();
        let s = InformationSystem::new(["x", "y", "z"], ["id", "const"], vals).unwrap();
        assert_eq!(s.indiscernibility_classes(&[0]).unwrap().len(), 3);
        assert_eq!(s.indiscernibility_classes(&[1]).unwrap(), vec![vec![0, 1, 2]]);
        let x: BTreeSet<usize> = [1].into();
        let ap = s.approximate(&[0], &x).unwrap();
        assert_eq!((ap.lower.clone(), ap.upper.clone()), (x.clone(), x));
    }

    #[test]
    fn bad_inputs() {
        let s = four();
        assert!(s.indiscernibility_classes(&[]).is_err());
        assert!(s.approximate(&[0], &[9].into()).is_err());
        assert!(s.attribute_ids(&["nope"]).is_err());
        assert!(InformationSystem::new(["a"], ["x", "y"], vec![vec!["1".into()]]).is_err());
    }
}
