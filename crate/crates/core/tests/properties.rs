use proptest::prelude::*;

use elocc::sampling::{from_weights, random_solvable_pair, rng_from_seed};
use elocc::{
    l_set, lemma2_sufficient, majorization_distance, majorizes, nielsen_convertible, p_max_catalytic, p_max_plain,
    prop2_report, search_catalyst, universal_rank_reach, CatalysisPair, Classification, GridSpec, ProbVector,
    ProbVectorF64, Rational, SchmidtVector, SearchOptions,
};

fn vector(dims: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = ProbVector> {
    prop::collection::vec(1u64..60, dims).prop_map(|w| from_weights(&w))
}

fn one() -> Rational {
    Rational::from_integer(1.into())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn tensor_is_commutative_and_normalized(p in vector(1..=5), r in vector(1..=4)) {
        let a = p.tensor(&r);
        prop_assert_eq!(&a, &r.tensor(&p));
        prop_assert_eq!(a.entries().iter().sum::<Rational>(), one());
        prop_assert_eq!(a.dim(), p.dim() * r.dim());
    }

    #[test]
    fn majorization_is_a_preorder(a in vector(1..=5), b in vector(1..=5), c in vector(1..=5)) {
        prop_assert!(majorizes(&a, &a));
        if majorizes(&a, &b) && majorizes(&b, &c) {
            prop_assert!(majorizes(&a, &c));
        }
        // everything majorizes into a product state, and uniform into everything
        prop_assert!(majorizes(&a, &SchmidtVector::product_state(1)));
        prop_assert!(majorizes(&ProbVector::uniform(5), &a));
    }

    #[test]
    fn classification_matches_nielsen(p in vector(1..=6), q in vector(1..=6)) {
        let rep = l_set(&p, &q);
        let forward = matches!(rep.classification, Classification::ComparableForward | Classification::Equal);
        prop_assert_eq!(forward, nielsen_convertible(&p, &q));
        prop_assert_eq!(rep.elements.is_empty(), nielsen_convertible(&p, &q));
    }

    #[test]
    fn lemma_implies_reach(p in vector(3..=7), t_seed in 0usize..100, s_seed in 0usize..100) {
        let n = p.dim();
        let t = 2 + t_seed % (n - 2);
        let s = 1 + s_seed % (n - 1);
        if lemma2_sufficient(&p, t, s).unwrap() {
            prop_assert!(universal_rank_reach(&p, t).unwrap());
        }
    }

    #[test]
    fn probability_distance_identity(p in vector(1..=5), q in vector(1..=5), r in vector(1..=3)) {
        let rep = prop2_report(&p, &q, &r);
        prop_assert!(rep.consistent);
        let pm = p_max_catalytic(&p, &q, &r).p_max;
        // zero exactly when the conversion would raise the Schmidt rank
        let zero = Rational::from_integer(0.into());
        prop_assert!(pm >= zero && pm <= one());
        prop_assert_eq!(pm == zero, q.schmidt_rank() > p.schmidt_rank());
        prop_assert!(majorization_distance(&p, &q, &r).delta >= Rational::from_integer(0.into()));
        prop_assert_eq!(p_max_catalytic(&p, &q, &SchmidtVector::product_state(1)), p_max_plain(&p, &q));
    }

    #[test]
    fn json_round_trip(p in vector(1..=6)) {
        let text = serde_json::to_string(&p).unwrap();
        let back: ProbVector = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 40, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn pruning_never_changes_results(seed in any::<u64>(), d in 4usize..=6) {
        let (p, q) = random_solvable_pair(&mut rng_from_seed(seed), d);
        for grid in [GridSpec::new(2, 40), GridSpec::new(3, 18)] {
            let opts = SearchOptions::default();
            let pruned = search_catalyst(&p, &q, grid, true, usize::MAX, &opts).unwrap();
            let plain = search_catalyst(&p, &q, grid, false, usize::MAX, &opts).unwrap();
            prop_assert_eq!(&pruned.found, &plain.found);
            prop_assert_eq!(pruned.oracle_count + pruned.pruned_count, pruned.candidates);
            prop_assert!(pruned.exhausted && plain.exhausted);
        }
    }
}

#[test]
fn float_instance_agrees_on_the_example() {
    let p = ProbVectorF64::parse_list("0.4,0.35,0.15,0.1").unwrap();
    let q = ProbVectorF64::parse_list("0.5,0.2,0.2,0.1").unwrap();
    let pair = CatalysisPair::new(&p, &q).unwrap();
    assert_eq!(pair.lset().elements, vec![2]);
    let r = ProbVectorF64::parse_list("0.7,0.3").unwrap();
    assert!(pair.rem2(&r).unwrap().accepted);
    assert!(!pair.cor3(&r).unwrap().accepted);
    assert!(!elocc::oracle_catalyzes(&p, &q, &r));
    let dist = majorization_distance(&p, &q, &r);
    assert!((dist.delta - 0.05).abs() < 1e-12);
    assert!((p_max_plain(&p, &q).p_max - 5.0 / 6.0).abs() < 1e-12);

    let p = elocc::ProbVectorF32::parse_list("0.4,0.4,0.1,0.1").unwrap();
    let q = elocc::ProbVectorF32::parse_list("0.5,0.25,0.25,0").unwrap();
    let r = elocc::ProbVectorF32::parse_list("0.6,0.4").unwrap();
    assert!(elocc::oracle_catalyzes(&p, &q, &r));
    assert!(CatalysisPair::new(&p, &q).unwrap().battery(&r, &Default::default()).unwrap().accepted);
}
