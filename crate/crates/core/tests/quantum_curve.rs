use airyqc_core::correlator::CorrelatorTable;
use airyqc_core::wkb::{s_coefficient, Branch, WkbForm, WkbSeries};
use airyqc_core::Rational;

fn r(p: i64, q: i64) -> Rational {
    Rational::new(p, q)
}

#[test]
fn first_coefficients() {
    let s = WkbSeries::standard(4, Branch::Plus).unwrap();
    let coeffs: Vec<_> = (2..=4)
        .map(|n| match &s.term(n).form {
            WkbForm::Monomial { coeff, power } => {
                assert_eq!(*power, 3 - 3 * n as i32);
                coeff.clone()
            }
            other => panic!("S_{n} = {other:?}"),
        })
        .collect();
    assert_eq!(coeffs, vec![r(5, 24), r(5, 16), r(1105, 1152)]);
}

#[test]
fn monomial_collapse_to_twelve() {
    let t = CorrelatorTable::new();
    for n in 2..=12 {
        assert!(s_coefficient(n, &t).unwrap().is_positive(), "n = {n}");
    }
}

#[test]
fn branch_covariance() {
    let p = WkbSeries::standard(12, Branch::Plus).unwrap();
    let m = WkbSeries::standard(12, Branch::Minus).unwrap();
    for n in 2..=12 {
        let sign = if n % 2 == 1 { r(1, 1) } else { r(-1, 1) };
        let (a, b) = (p.term(n).w_form().unwrap(), m.term(n).w_form().unwrap());
        assert_eq!(b, a.scale(&sign), "n = {n}");
    }
}

#[test]
fn residuals_vanish_in_all_three_forms() {
    for b in [Branch::Plus, Branch::Minus] {
        let s = WkbSeries::standard(12, b).unwrap();
        assert!(s.verify_low_orders());
        for n in 3..=12 {
            assert!(s.w_order_residual(n).is_zero(), "w, n = {n}, {b}");
            assert!(s.u_order_residual(n).is_zero(), "u, n = {n}, {b}");
            assert!(s.t_recursion_check(n).unwrap(), "t, n = {n}, {b}");
        }
    }
}

#[test]
fn every_coefficient_is_load_bearing() {
    for b in [Branch::Plus, Branch::Minus] {
        let good = WkbSeries::standard(12, b).unwrap();
        for k in 0..=12 {
            let mut s = good.clone();
            s.set_coefficient(k, r(-3, 7));
            let caught = !s.verify_low_orders() || (3..=12).any(|n| !s.w_order_residual(n).is_zero());
            assert!(caught, "S_{k} on branch {b}");
            if k >= 3 {
                assert!(!s.t_recursion_check(k).unwrap(), "t form misses S_{k} on branch {b}");
            }
        }
    }
}

#[test]
fn wrong_base_breaks_order_two() {
    let t = CorrelatorTable::with_base_values(Rational::one(), r(1, 12));
    let s = WkbSeries::compute(4, Branch::Plus, &t).unwrap();
    assert!(!s.verify_low_orders());
}
