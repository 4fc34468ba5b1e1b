mod support;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;
use termbridge::bench::stats;
use termbridge::convert::{host_to_term, term_to_host};
use termbridge::{Engine, HostValue, Term};

use support::{random_ground, random_mixed};

fn ground(seed: u64, depth: u32) -> Term {
    random_ground(&mut StdRng::seed_from_u64(seed), depth)
}

fn leaf() -> impl Strategy<Value = Term> {
    prop_oneof![
        prop::sample::select(vec!["a", "b", "c"]).prop_map(Term::atom),
        (0..3i32).prop_map(Term::integer),
        (0..3usize).prop_map(|i| Term::variable(["X", "Y", "Z"][i], i).unwrap()),
    ]
}

fn small_term() -> impl Strategy<Value = Term> {
    leaf().prop_recursive(3, 16, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 1..3).prop_map(|args| Term::structure("f", args)),
            prop::collection::vec(inner, 0..3).prop_map(|items| Term::list(items, None)),
        ]
    })
}

fn host_value() -> impl Strategy<Value = HostValue> {
    let leaf = prop_oneof![
        Just(HostValue::Null),
        any::<bool>().prop_map(HostValue::Bool),
        "[a-z ]{0,8}".prop_map(HostValue::Text),
        any::<i32>().prop_map(HostValue::Int),
        any::<i64>().prop_map(HostValue::Long),
        any::<f32>().prop_filter("finite", |f| f.is_finite()).prop_map(HostValue::Float),
        any::<f64>().prop_filter("finite", |f| f.is_finite()).prop_map(HostValue::Double),
    ];
    leaf.prop_recursive(2, 12, 4, |inner| {
        prop::collection::vec(inner, 0..4).prop_map(HostValue::Seq)
    })
}

proptest! {
    #[test]
    fn print_then_parse_is_identity(seed in any::<u64>(), depth in 0u32..5) {
        let engine = Engine::new();
        let t = ground(seed, depth);
        let text = engine.format_term(&t);
        prop_assert_eq!(engine.parse_term(&text).unwrap(), t, "{}", text);
    }

    #[test]
    fn order_is_total(a in small_term(), b in small_term(), c in small_term()) {
        prop_assert_eq!(a.cmp(&b), b.cmp(&a).reverse());
        if a <= b && b <= c {
            prop_assert!(a <= c);
        }
        prop_assert_eq!(a.cmp(&b).is_eq(), a == b);
    }

    #[test]
    fn sorting_groups_classes(seed in any::<u64>(), n in 1usize..30) {
        let mut terms = random_mixed(&mut StdRng::seed_from_u64(seed), n);
        terms.sort();
        let classes: Vec<u8> = terms.iter().map(support::order_class).collect();
        prop_assert!(classes.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn unifier_makes_terms_equal(a in small_term(), b in small_term()) {
        prop_assert_eq!(a.unify(&b), b.unify(&a));
        prop_assert_eq!(a.unify_with_occurs_check(&b), b.unify_with_occurs_check(&a));
        if a.unify_with_occurs_check(&b) {
            let mgu = a.unifier(&b).unwrap();
            prop_assert_eq!(mgu.resolve(&a), mgu.resolve(&b));
        }
        prop_assert!(a.unify(&a));
    }

    #[test]
    fn host_values_round_trip(v in host_value()) {
        prop_assert_eq!(term_to_host(&host_to_term(&v)).unwrap(), v);
    }

    #[test]
    fn summary_is_ordered(samples in prop::collection::vec(0.001f64..1000.0, 1..50)) {
        let s = stats::summarize(&samples);
        prop_assert!(s.min <= s.avg + 1e-9 && s.avg <= s.max + 1e-9);
        prop_assert!(s.stdev >= 0.0 && s.error >= 0.0);
        let online = stats::stdev_online(&samples);
        prop_assert!((online - stats::stdev(&samples)).abs() <= 1e-6 * (1.0 + online));
    }
}
