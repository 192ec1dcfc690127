use airyqc_core::correlator::{cells_up_to, correlator_shell, CorrelatorTable};
use airyqc_core::eo::eo_table;
use airyqc_core::poly::omega::{
    big_omega_orbits, big_omega_recursive_table, cal_d_op, d_op, omega_from_big_omega,
    omega_from_correlators, omega_recursive_table, operator_compatibility, tw_from_correlators,
    verify_d_lemma,
};
use airyqc_core::poly::{HalfPowerPoly, Poly};
use airyqc_core::verify::eo_invariants;
use airyqc_core::Rational;
use proptest::prelude::*;

#[test]
fn residue_recursion_matches_correlators() {
    let table = correlator_shell(6);
    let w = eo_table(6, 2).unwrap();
    assert_eq!(eo_invariants(&w), None);
    for (&(g, n), cell) in &w {
        assert_eq!(cell, &tw_from_correlators(g, n, &table).unwrap(), "({g},{n})");
    }
}

#[test]
fn residue_table_is_independent_of_jobs() {
    assert_eq!(eo_table(5, 1).unwrap(), eo_table(5, 3).unwrap());
}

#[test]
fn omega_tables_match_definitions() {
    let table = CorrelatorTable::new();
    let small = omega_recursive_table(6).unwrap();
    let big = big_omega_recursive_table(6).unwrap();
    for (g, n) in cells_up_to(6) {
        assert_eq!(small[&(g, n)], omega_from_correlators(g, n, &table).unwrap(), "omega ({g},{n})");
        let b = &big[&(g, n)];
        assert_eq!(b.to_symmetric().unwrap(), big_omega_orbits(g, n, &table).unwrap(), "Omega ({g},{n})");
        assert_eq!(omega_from_big_omega(b).unwrap(), small[&(g, n)], "bridge ({g},{n})");
    }
}

#[test]
fn homogeneity() {
    let small = omega_recursive_table(6).unwrap();
    for (&(g, n), s) in &small {
        assert_eq!(s.homogeneous_degree(), Some(3 * g as i32 - 3 + 2 * n as i32));
        assert!(s.orbits().all(|(e, _)| e.iter().all(|&k| k >= 1)));
    }
}

#[test]
fn compatibility_to_chi_four() {
    let table = CorrelatorTable::new();
    for (g, n) in cells_up_to(4) {
        assert_eq!(operator_compatibility(g, n, &table).unwrap(), None, "({g},{n})");
    }
}

#[test]
fn d_lemma_to_fifty() {
    assert!((0..=50).all(verify_d_lemma));
}

#[test]
fn cal_d_rejects_integer_exponents() {
    let p = HalfPowerPoly::monomial(vec![2, 1], Rational::one());
    assert!(cal_d_op(&p).is_err());
}

fn small_poly() -> impl Strategy<Value = Poly> {
    proptest::collection::vec((0i32..6, -5i64..=5), 1..5).prop_map(|terms| {
        let mut p = Poly::zero(1);
        for (e, c) in terms {
            p.add_term(vec![e], Rational::from(c));
        }
        p
    })
}

proptest! {
    #[test]
    fn d_op_is_linear(f in small_poly(), g in small_poly(), c in -4i64..=4) {
        let mut sum = f.scale(&Rational::from(c));
        sum.add_assign(&g);
        let mut want = d_op(&f).unwrap().scale(&Rational::from(c));
        want.add_assign(&d_op(&g).unwrap());
        prop_assert_eq!(d_op(&sum).unwrap(), want);
    }

    #[test]
    fn d_op_raises_degree_by_two(m in 0i32..40) {
        let out = d_op(&Poly::monomial(vec![m], Rational::one())).unwrap();
        prop_assert!(out.total_degrees().into_iter().all(|d| d == m + 2));
    }
}
