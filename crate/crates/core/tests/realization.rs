use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use sigcalc::realization::genset::{oscillation, relation, standard_pair};
use sigcalc::realization::{excise, pl_eval, realize, GroupWord, Relation};
use sigcalc::{QGenSet, Rat, Signature};

fn corpus(n: usize, vmax: u32) -> Vec<Signature> {
    (1..=n).flat_map(|k| Signature::enumerate(k, vmax).unwrap()).collect()
}

fn real(a: &Signature) -> QGenSet {
    realize::<Rat>(a).unwrap_or_else(|e| panic!("{a}: {e}"))
}

#[test]
fn inflation_commutes_with_realization() {
    for a in corpus(3, 3) {
        let s = real(&a);
        for m in 0..a.n() {
            let geo = s.set_inflate(m).unwrap().signature_of().unwrap();
            assert_eq!(geo, a.inflate(m).unwrap(), "{a} at {m}");
        }
    }
}

#[test]
fn rotation_commutes_with_realization() {
    for a in corpus(3, 3) {
        let s = real(&a);
        let geo = s.set_rotate().unwrap().signature_of().unwrap();
        assert_eq!(geo, a.rotate(), "{a}");
    }
}

#[test]
fn rotation_lowers_nested_oscillation_by_one() {
    for a in corpus(3, 3) {
        let s = real(&a);
        for j in 0..s.len() {
            for i in 0..j {
                let (f, g) = (s.get(i), s.get(j));
                if relation(f, g) != Relation::Inside {
                    continue;
                }
                let gr = g.rotate().unwrap();
                assert_eq!(oscillation(f, g), oscillation(&gr, f) + 1, "{a} ({i},{j})");
            }
        }
    }
}

#[test]
fn conjugation_bounds_oscillation() {
    for a in corpus(3, 3) {
        let s = real(&a);
        let n = s.len();
        for k in 0..n {
            let h = s.get(k);
            for i in 0..k {
                for j in 0..k {
                    let (f, g) = (s.get(i), s.get(j));
                    if i == j || !standard_pair(f, h) || !standard_pair(g, h) || oscillation(g, h) == 0 {
                        continue;
                    }
                    let gh = g.conj(h.map());
                    let (lo, hi) = if f.hi() < gh.hi() { (f, &gh) } else { (&gh, f) };
                    let o = oscillation(lo, hi);
                    let bound = oscillation(f, h).min(oscillation(g, h) - 1);
                    assert!(o <= bound, "{a}: o({i}, {j}^{k}) = {o} > {bound}");
                }
            }
        }
    }
}

#[test]
fn direct_sums_have_a_free_element_below_the_top() {
    for a in corpus(4, 2) {
        let s = real(&a);
        let top = s.get(s.len() - 1);
        let zero = s.fns()[..s.len() - 1].iter().any(|f| oscillation(f, top) == 0);
        assert_eq!(!s.signature_of().unwrap().is_indecomposable(), zero, "{a}");
    }
}

#[test]
fn rotation_keeps_sets_without_extraneous_bumps() {
    for a in corpus(3, 3) {
        let s = real(&a);
        if excise(&s) != s {
            continue;
        }
        let r = s.set_rotate().unwrap();
        assert_eq!(excise(&r), r, "{a}");
    }
}

#[test]
fn random_words_are_exact() {
    let sets: Vec<QGenSet> = corpus(3, 2).iter().filter(|a| a.n() > 0).map(real).collect();
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..500 {
        let s = &sets[rng.gen_range(0..sets.len())];
        let len = rng.gen_range(0..6);
        let w = GroupWord(
            (0..len)
                .map(|_| {
                    (
                        rng.gen_range(0..s.len()),
                        rng.gen_range(1..=3) * if rng.gen() { 1 } else { -1 },
                    )
                })
                .collect(),
        );
        let there = pl_eval(s, &w).unwrap();
        let back = pl_eval(s, &w.inverse()).unwrap();
        assert!(there.then(&back).is_identity(), "{w}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn json_round_trip_of_realized_pairs(k in 1u32..5) {
        let s = real(&Signature::pair(k));
        let back = QGenSet::from_json(&s.to_json()).unwrap();
        prop_assert_eq!(back, s);
    }
}
