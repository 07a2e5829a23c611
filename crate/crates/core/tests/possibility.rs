use std::collections::BTreeSet;

use infoflow::audit::item_from_possibility;
use infoflow::possibility::{fuse, FusionMode, PossibilityDistribution};
use infoflow::Error;
use proptest::prelude::*;

fn distribution() -> impl Strategy<Value = PossibilityDistribution> {
    prop::collection::vec(0.0f64..=1.0, 1..=6).prop_map(|v| {
        let n = v.len();
        PossibilityDistribution::new((0..n).map(|i| format!("w{i}")), v).unwrap()
    })
}

fn subsets(n: usize) -> impl Iterator<Item = BTreeSet<usize>> {
    (0u32..1 << n).map(move |m| (0..n).filter(|i| m >> i & 1 == 1).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn possibility_is_maxitive(pi in distribution()) {
        let n = pi.universe().len();
        for a in subsets(n) {
            for b in subsets(n) {
                let ab: BTreeSet<usize> = a.union(&b).copied().collect();
                let lhs = pi.possibility_of(&ab).unwrap();
                let rhs = pi.possibility_of(&a).unwrap().max(pi.possibility_of(&b).unwrap());
                prop_assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn conditioning_normalizes_on_the_event(pi in distribution(), mask in 1u32..64) {
        let n = pi.universe().len();
        let a: BTreeSet<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        match pi.condition(&a) {
            Ok(c) => {
                prop_assert!((c.possibility_of(&a).unwrap() - 1.0).abs() <= 1e-9);
                for i in (0..n).filter(|i| !a.contains(i)) {
                    prop_assert_eq!(c.values()[i], 0.0);
                }
                prop_assert!(item_from_possibility(&c).support().iter().all(|w| a.contains(&w)));
            }
            Err(Error::UndefinedConditioning(_)) => prop_assert_eq!(pi.possibility_of(&a).unwrap(), 0.0),
            Err(e) => prop_assert!(false, "unexpected {e}"),
        }
    }

    #[test]
    fn discount_is_monotone(pi in distribution(), l1 in 0.0f64..=1.0, l2 in 0.0f64..=1.0) {
        let (lo, hi) = if l1 <= l2 { (l1, l2) } else { (l2, l1) };
        let weak = pi.discount(lo).unwrap();
        let strong = pi.discount(hi).unwrap();
        for i in 0..pi.universe().len() {
            prop_assert!(strong.values()[i] <= weak.values()[i]);
            prop_assert!(pi.values()[i] <= strong.values()[i]);
        }
        prop_assert!(pi.discount(0.0).unwrap().values().iter().all(|&v| v == 1.0));
        prop_assert_eq!(pi.discount(1.0).unwrap(), pi);
    }

    #[test]
    fn fusion_modes_are_ordered(a in distribution(), seed in prop::collection::vec(0.0f64..=1.0, 6)) {
        let n = a.universe().len();
        let b = PossibilityDistribution::new(a.universe().to_vec(), seed[..n].to_vec()).unwrap();
        let prod = fuse(&[a.clone(), b.clone()], FusionMode::AndProduct).unwrap();
        let min = fuse(&[a.clone(), b.clone()], FusionMode::AndMin).unwrap();
        let max = fuse(&[a, b], FusionMode::OrMax).unwrap();
        for i in 0..n {
            prop_assert!(prod.values()[i] <= min.values()[i] && min.values()[i] <= max.values()[i]);
        }
    }
}
