use dihyp::monoid::{builtin, cayley_ball, relation_distance, Equality, SearchOutcome, WordProblemOracle};
use proptest::prelude::*;

const SPECS: [&str; 5] = ["free(2)", "bicyclic", "polycyclic(2)", "m_i(2)", "example_6"];

fn word(k: usize, max: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..k, 0..=max)
}

fn spec_and_words() -> impl Strategy<Value = (&'static str, Vec<usize>, Vec<usize>)> {
    prop::sample::select(SPECS.to_vec()).prop_flat_map(|s| {
        let k = builtin(s).unwrap().0.alphabet.len();
        (Just(s), word(k, 6), word(k, 6))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn normal_forms_agree_with_relation_search((spec, u, v) in spec_and_words()) {
        let (p, o) = builtin(spec).unwrap();
        let eq = o.equal(&u, &v).unwrap();
        let search = relation_distance(&p, &u, &v, 10, 20_000);
        // a capped search says nothing; a finished one must agree
        match search {
            SearchOutcome::Found(_) => prop_assert!(eq, "{} {} {}", spec, p.display(&u), p.display(&v)),
            SearchOutcome::Exhausted => prop_assert!(!eq, "{} {} {}", spec, p.display(&u), p.display(&v)),
            SearchOutcome::Capped => {}
        }
        let bounded = WordProblemOracle::BoundedSearch { presentation: p.clone(), area_cap: 10, node_cap: 20_000 };
        let answer = bounded.words_equal(&u, &v).unwrap();
        prop_assert!(answer == Equality::Unknown || (answer == Equality::Equal) == eq);
    }

    #[test]
    fn m_i_is_right_cancellative(u in word(4, 5), v in word(4, 5), w in word(4, 3)) {
        let (_, o) = builtin("m_i(1,3)").unwrap();
        let uw: Vec<usize> = u.iter().chain(&w).copied().collect();
        let vw: Vec<usize> = v.iter().chain(&w).copied().collect();
        if o.equal(&uw, &vw).unwrap() {
            prop_assert!(o.equal(&u, &v).unwrap());
        }
    }
}

#[test]
fn equal_short_words_are_found() {
    for spec in ["free(2)", "bicyclic", "m_i(2)", "example_6"] {
        let (p, o) = builtin(spec).unwrap();
        let k = p.alphabet.len();
        let mut words = vec![vec![]];
        for len in 1..=4 {
            let prev: Vec<Vec<usize>> = words.iter().filter(|w: &&Vec<usize>| w.len() == len - 1).cloned().collect();
            for w in prev {
                for g in 0..k {
                    let mut x = w.clone();
                    x.push(g);
                    words.push(x);
                }
            }
        }
        for u in &words {
            for v in &words {
                let eq = o.equal(u, v).unwrap();
                let found = matches!(relation_distance(&p, u, v, 8, 20_000), SearchOutcome::Found(_));
                assert_eq!(eq, found, "{spec} {} {}", p.display(u), p.display(v));
            }
        }
    }
}

#[test]
fn ball_vertices_have_short_words() {
    for spec in SPECS {
        let (_, o) = builtin(spec).unwrap();
        let ball = cayley_ball(&o, 4).unwrap();
        for v in ball.graph.vertices() {
            let w = &ball.words[v];
            assert!(w.len() as u32 == ball.depth[v] && ball.depth[v] <= 4, "{spec}");
            assert_eq!(Some(o.canonical(w).unwrap()), ball.canonical[v]);
        }
        let dm = dihyp::all_pairs_distances(&ball.graph);
        for v in ball.graph.vertices() {
            assert_eq!(dm.get(ball.identity, v).finite(), Some(ball.depth[v]));
        }
    }
}
