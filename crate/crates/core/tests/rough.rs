use std::collections::BTreeSet;

use infoflow::rough::InformationSystem;
use proptest::prelude::*;

/// Up to 12 objects, 1..=4 attributes, values drawn from a 3-symbol alphabet.
fn system() -> impl Strategy<Value = (InformationSystem, BTreeSet<usize>)> {
    (1usize..=12, 1usize..=4).prop_flat_map(|(n, k)| {
        (
            prop::collection::vec(prop::collection::vec(0u8..3, k), n),
            prop::collection::vec(any::<bool>(), n),
        )
            .prop_map(move |(rows, member)| {
                let values = rows
                    .into_iter()
                    .map(|r| r.into_iter().map(|v| format!("v{v}")).collect())
                    .collect();
                let s = InformationSystem::new((0..n).map(|i| format!("o{i}")), (0..k).map(|a| format!("a{a}")), values)
                    .unwrap();
                let x = member.iter().enumerate().filter(|p| *p.1).map(|p| p.0).collect();
                (s, x)
            })
    })
}

// Lower and upper computed straight from pairwise value comparison.
fn oracle(s: &InformationSystem, b: &[usize], x: &BTreeSet<usize>) -> (BTreeSet<usize>, BTreeSet<usize>) {
    let n = s.objects().len();
    let same = |p: usize, q: usize| b.iter().all(|&a| s.value(p, a) == s.value(q, a));
    let class = |p: usize| (0..n).filter(move |&q| same(p, q));
    let lower = (0..n).filter(|&p| class(p).all(|q| x.contains(&q))).collect();
    let upper = (0..n).filter(|&p| class(p).any(|q| x.contains(&q))).collect();
    (lower, upper)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn approximations_bracket_the_set((s, x) in system()) {
        let all: Vec<usize> = (0..s.attributes().len()).collect();
        let u: BTreeSet<usize> = (0..s.objects().len()).collect();
        for k in 1..=all.len() {
            let b = &all[..k];
            let ap = s.approximate(b, &x).unwrap();
            prop_assert!(ap.lower.is_subset(&x) && x.is_subset(&ap.upper));
            prop_assert_eq!(&ap.boundary, &ap.upper.difference(&ap.lower).copied().collect());
            let (lo, up) = oracle(&s, b, &x);
            prop_assert_eq!(&ap.lower, &lo);
            prop_assert_eq!(&ap.upper, &up);
            let comp: BTreeSet<usize> = u.difference(&x).copied().collect();
            let dual = s.approximate(b, &comp).unwrap();
            prop_assert_eq!(&ap.lower, &u.difference(&dual.upper).copied().collect());
        }
    }

    #[test]
    fn more_attributes_approximate_better((s, x) in system()) {
        let all: Vec<usize> = (0..s.attributes().len()).collect();
        for k in 1..all.len() {
            let coarse = s.approximate(&all[..k], &x).unwrap();
            let fine = s.approximate(&all[..k + 1], &x).unwrap();
            prop_assert!(coarse.lower.is_subset(&fine.lower));
            prop_assert!(fine.upper.is_subset(&coarse.upper));
        }
    }

    #[test]
    fn classes_partition_and_unions_are_crisp((s, mask) in system()) {
        let b = vec![0];
        let classes = s.indiscernibility_classes(&b).unwrap();
        let mut seen = BTreeSet::new();
        for c in &classes {
            for &o in c {
                prop_assert!(seen.insert(o));
            }
        }
        prop_assert_eq!(seen.len(), s.objects().len());
        let union: BTreeSet<usize> = classes
            .iter()
            .enumerate()
            .filter(|(i, _)| mask.contains(i))
            .flat_map(|(_, c)| c.iter().copied())
            .collect();
        prop_assert!(s.is_crisp(&b, &union).unwrap());
    }
}

#[test]
fn four_object_example() {
    let values = ["0", "0", "1", "1"].iter().map(|v| vec![v.to_string()]).collect();
    let s = InformationSystem::new(["1", "2", "3", "4"], ["a"], values).unwrap();
    assert_eq!(s.indiscernibility_classes(&[0]).unwrap(), vec![vec![0, 1], vec![2, 3]]);
    let x = s.object_ids(&["1", "3"]).unwrap();
    let ap = s.approximate(&[0], &x).unwrap();
    assert!(ap.lower.is_empty());
    assert_eq!(ap.upper, BTreeSet::from([0, 1, 2, 3]));
    assert_eq!(ap.boundary, ap.upper);
    assert!(!s.is_crisp(&[0], &x).unwrap());
    assert!(s.is_crisp(&[0], &BTreeSet::new()).unwrap());
    assert!(s.approximate(&[], &x).is_err());
}
