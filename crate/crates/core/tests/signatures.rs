use proptest::prelude::*;
use sigcalc::normalizer::{is_reduced, leq, materialize, normalize, rho, RhoMode};
use sigcalc::{Ordinal, SigTerm, Signature};

fn corpus() -> Vec<Signature> {
    (0..=4).flat_map(|n| Signature::enumerate(n, 2).unwrap()).collect()
}

#[test]
fn json_round_trips_over_the_corpus() {
    for a in corpus() {
        let back = Signature::from_json(&a.to_json()).unwrap();
        assert_eq!(back, a);
        assert_eq!(back.to_json(), a.to_json());
    }
}

#[test]
fn reduced_signatures_are_the_materialized_ones() {
    for a in corpus() {
        let n = normalize(&a);
        assert_eq!(n, materialize(&rho(&a, RhoMode::Sorted)));
        assert!(is_reduced(&n));
        assert!(leq(&a, &n) && leq(&n, &a), "{a}");
    }
}

#[test]
fn leq_is_a_preorder_on_small_signatures() {
    let c: Vec<Signature> = (0..=3).flat_map(|n| Signature::enumerate(n, 2).unwrap()).collect();
    for a in &c {
        assert!(leq(a, a));
        for b in &c {
            for d in &c {
                if leq(a, b) && leq(b, d) {
                    assert!(leq(a, d));
                }
            }
        }
    }
}

fn arb_term() -> impl Strategy<Value = SigTerm> {
    let leaf = prop_oneof![Just(SigTerm::Zero), Just(SigTerm::One)];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| SigTerm::sum(a, b)),
            inner.clone().prop_map(SigTerm::exp),
            inner.prop_map(SigTerm::exp2),
        ]
    })
}

proptest! {
    #[test]
    fn terms_print_and_parse_back(t in arb_term()) {
        let back: SigTerm = t.to_string().parse().unwrap();
        prop_assert_eq!(back.eval().unwrap(), t.eval().unwrap());
    }

    #[test]
    fn ranks_of_sums_add(a in arb_term(), b in arb_term()) {
        let (x, y) = (a.eval().unwrap(), b.eval().unwrap());
        let r: Ordinal = rho(&x.sum(&y), RhoMode::Ordered);
        prop_assert_eq!(r, rho(&x, RhoMode::Ordered).add(&rho(&y, RhoMode::Ordered)));
    }
}
