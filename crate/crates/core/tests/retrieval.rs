use infoflow::channel::Infon;
use infoflow::retrieval::{rank, relevance, ConstraintGraph, Corpus, Edge};
use proptest::prelude::*;

const TYPES: [&str; 4] = ["D0", "D1", "D2", "D3"];

fn infon(topic: u8) -> Infon {
    Infon::new("about", [format!("t{topic}")]).unwrap()
}

#[derive(Debug, Clone)]
struct Setup {
    edges: Vec<(usize, usize, Option<f64>)>,
    docs: Vec<(usize, Vec<u8>)>,
    queries: Vec<Vec<u8>>,
}

fn setup() -> impl Strategy<Value = Setup> {
    (
        prop::collection::vec((0usize..4, 0usize..4, prop::option::of(0.05f64..0.95)), 0..8),
        prop::collection::vec((0usize..4, prop::collection::vec(0u8..4, 1..3)), 1..6),
        prop::collection::vec(prop::collection::vec(0u8..4, 1..3), 1..4),
    )
        .prop_map(|(edges, docs, queries)| Setup { edges, docs, queries })
}

fn build(s: &Setup, edges: usize, prefix: &str) -> (ConstraintGraph, Corpus) {
    let mut g = ConstraintGraph::new(TYPES).unwrap();
    for &(a, b, w) in &s.edges[..edges] {
        let e = match w {
            None => Edge::Unconditional,
            Some(strength) => Edge::Conditional { strength, condition: "B".into() },
        };
        g.add_edge(TYPES[a], TYPES[b], e).unwrap();
    }
    let mut c = Corpus::new();
    for (i, (t, topics)) in s.docs.iter().enumerate() {
        c.add_document(&g, format!("{prefix}{i}"), TYPES[*t], topics.iter().map(|&x| infon(x))).unwrap();
    }
    for (i, q) in s.queries.iter().enumerate() {
        c.add_query(format!("q{i}"), q.iter().map(|&x| infon(x))).unwrap();
    }
    (g, c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn scores_are_bounded_and_one_means_support(s in setup()) {
        let (g, c) = build(&s, s.edges.len(), "d");
        for (qi, q) in s.queries.iter().enumerate() {
            for (di, (_, topics)) in s.docs.iter().enumerate() {
                let r = relevance(&g, &c, &format!("d{di}"), &format!("q{qi}")).unwrap();
                prop_assert!((0.0..=1.0).contains(&r));
                let direct = q.iter().all(|x| topics.contains(x));
                if direct {
                    prop_assert_eq!(r, 1.0);
                }
            }
        }
    }

    #[test]
    fn adding_edges_never_lowers_relevance(s in setup()) {
        // Later edges only add or, for repeated pairs, replace; keep the distinct-pair prefix.
        let mut distinct = Vec::new();
        for e in &s.edges {
            if !distinct.iter().any(|d: &(usize, usize, Option<f64>)| d.0 == e.0 && d.1 == e.1) {
                distinct.push(*e);
            }
        }
        let s = Setup { edges: distinct, ..s };
        for k in 0..s.edges.len() {
            let (g1, c1) = build(&s, k, "d");
            let (g2, c2) = build(&s, k + 1, "d");
            for qi in 0..s.queries.len() {
                for di in 0..s.docs.len() {
                    let (d, q) = (format!("d{di}"), format!("q{qi}"));
                    prop_assert!(relevance(&g1, &c1, &d, &q).unwrap() <= relevance(&g2, &c2, &d, &q).unwrap());
                }
            }
        }
    }

    #[test]
    fn renaming_documents_keeps_scores(s in setup()) {
        let (g, a) = build(&s, s.edges.len(), "d");
        let (_, b) = build(&s, s.edges.len(), "renamed_");
        let ra: Vec<f64> = rank(&g, &a, "q0").unwrap().into_iter().map(|x| x.1).collect();
        let rb: Vec<f64> = rank(&g, &b, "q0").unwrap().into_iter().map(|x| x.1).collect();
        prop_assert_eq!(ra, rb);
    }
}

#[test]
fn max_over_two_conditional_edges() {
    let mut g = ConstraintGraph::new(["D", "E", "F"]).unwrap();
    g.add_edge("D", "E", Edge::Conditional { strength: 0.5, condition: "B1".into() }).unwrap();
    g.add_edge("D", "F", Edge::Conditional { strength: 0.8, condition: "B2".into() }).unwrap();
    let mut c = Corpus::new();
    c.add_document(&g, "d", "D", [infon(0)]).unwrap();
    c.add_document(&g, "e", "E", [infon(1)]).unwrap();
    c.add_document(&g, "f", "F", [infon(1)]).unwrap();
    c.add_query("q", [infon(1)]).unwrap();
    assert_eq!(relevance(&g, &c, "d", "q").unwrap(), 0.8);
}
