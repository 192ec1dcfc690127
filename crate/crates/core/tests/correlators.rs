use airyqc_core::correlator::{CorrelatorKey, CorrelatorTable};
use airyqc_core::verify::{insertion_independence, selection_rule_check, string_equation_check};
use airyqc_core::Rational;
use proptest::prelude::*;

fn r(p: i64, q: i64) -> Rational {
    Rational::new(p, q)
}

#[test]
fn one_point_closed_form() {
    let t = CorrelatorTable::new();
    let mut expected = Rational::one();
    for g in 1..=5u32 {
        expected = expected * r(1, 24 * g as i64);
        assert_eq!(t.correlator(g, &[3 * g as i64 - 2]).unwrap(), expected, "g = {g}");
    }
}

#[test]
fn known_values() {
    let t = CorrelatorTable::new();
    assert_eq!(t.correlator(0, &[0, 0, 0]).unwrap(), r(1, 1));
    assert_eq!(t.correlator(0, &[1, 0, 0, 0]).unwrap(), r(1, 1));
    assert_eq!(t.correlator(0, &[2, 0, 0, 0, 0]).unwrap(), r(1, 1));
    assert_eq!(t.correlator(0, &[1, 1, 0, 0, 0]).unwrap(), r(2, 1));
    assert_eq!(t.correlator(1, &[1, 1]).unwrap(), r(1, 24));
    assert_eq!(t.correlator(2, &[2, 3]).unwrap(), r(29, 5760));
    assert_eq!(t.correlator(2, &[4, 1]).unwrap(), r(1, 384));
    assert_eq!(t.correlator(2, &[2, 2, 2]).unwrap(), r(7, 240));
    assert_eq!(t.correlator(3, &[7]).unwrap(), r(1, 82944));
}

#[test]
fn off_dimension_and_bad_input() {
    let t = CorrelatorTable::new();
    assert!(t.correlator(0, &[1, 0, 0]).unwrap().is_zero());
    assert!(t.correlator(0, &[5, 0]).is_err());
    assert!(t.correlator(1, &[-1, 2]).is_err());
    assert!(t.correlator(0, &[]).is_err());
}

#[test]
fn insertion_independence_to_twelve() {
    let t = CorrelatorTable::new();
    assert_eq!(insertion_independence(&t, 12).unwrap(), None);
}

#[test]
fn string_equation_and_selection_rule() {
    let t = CorrelatorTable::new();
    assert_eq!(string_equation_check(&t, 6), None);
    assert_eq!(selection_rule_check(&t, 6, 3).unwrap(), None);
}

#[test]
fn parallel_fill_matches_serial() {
    let a = CorrelatorTable::new();
    let b = CorrelatorTable::new();
    a.fill_shell(6, 1).unwrap();
    b.fill_shell(6, 4).unwrap();
    assert_eq!(airyqc_core::cache::to_json(&a), airyqc_core::cache::to_json(&b));
}

// (g, a) with sum a = 3g - 3 + n and 2g - 2 + n > 0
fn stable_key() -> impl Strategy<Value = (u32, Vec<u32>)> {
    (0u32..=3, 1usize..=6)
        .prop_filter("stable", |&(g, n)| 2 * g as i64 - 2 + n as i64 > 0)
        .prop_flat_map(|(g, n)| {
            let total = 3 * g + n as u32 - 3;
            (Just(g), proptest::collection::vec(0..=total, n - 1), Just(total))
        })
        .prop_map(|(g, mut cuts, total)| {
            cuts.sort_unstable();
            let mut a = Vec::with_capacity(cuts.len() + 1);
            let mut prev = 0;
            for c in cuts {
                a.push(c - prev);
                prev = c;
            }
            a.push(total - prev);
            (g, a)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn positive_and_permutation_invariant((g, a) in stable_key(), rot in 0usize..6) {
        let t = CorrelatorTable::new();
        let v = t.value(&CorrelatorKey::new(g, &a).unwrap());
        prop_assert!(v.is_positive());
        let mut b = a.clone();
        let k = rot % b.len();
        b.rotate_left(k);
        let b: Vec<i64> = b.into_iter().map(i64::from).collect();
        prop_assert_eq!(t.correlator(g, &b).unwrap(), v);
    }

    #[test]
    fn dilaton_equation((g, a) in stable_key()) {
        let t = CorrelatorTable::new();
        let mut with = a.clone();
        with.push(1);
        let lhs = t.value(&CorrelatorKey::new(g, &with).unwrap());
        let rhs = t.value(&CorrelatorKey::new(g, &a).unwrap())
            * Rational::from(2 * g as i64 - 2 + a.len() as i64);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn any_insertion_gives_the_value((g, a) in stable_key(), pick in 0usize..6) {
        let t = CorrelatorTable::new();
        let key = CorrelatorKey::new(g, &a).unwrap();
        let j = pick % key.n();
        prop_assert_eq!(t.dvv_with_insertion(&key, j), t.value(&key));
    }
}
