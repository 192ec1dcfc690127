//! The polynomial packagings `omega_{g,n}` (powers of `w_i = 1/z_i^2`) and
//! `Omega_{g,n}` (their half-power antiderivatives), the transfer operators
//! `D` and `calD`, and the recursions they satisfy.

use std::collections::BTreeMap;

use super::{HalfPowerPoly, Poly, SparseSymPoly};
use crate::correlator::{cells_up_to, is_stable, partitions, CorrelatorKey, CorrelatorTable};
use crate::error::{Error, Result};
use crate::rational::{odd_double_factorial, shifted_double_factorial, Rational};

/// Per-cell storage keyed by `(g, n)`.
pub type CellMap<T> = BTreeMap<(u32, usize), T>;

fn check_stable(g: u32, n: usize) -> Result<()> {
    if is_stable(g, n) {
        Ok(())
    } else {
        Err(Error::Unstable { g, n })
    }
}

// Sum over the dimension-matching exponent orbits of (g, n).
fn correlator_orbits(
    g: u32,
    n: usize,
    table: &CorrelatorTable,
    mut term: impl FnMut(&[u32], Rational) -> (Vec<i32>, Rational),
) -> Result<SparseSymPoly> {
    check_stable(g, n)?;
    let mut out = SparseSymPoly::zero(n);
    let total = 3 * g as i64 - 3 + n as i64;
    for a in partitions(total as u32, n) {
        let v = table.value(&CorrelatorKey::new(g, &a)?);
        if v.is_zero() {
            continue;
        }
        let (e, c) = term(&a, v);
        out.add_orbit(&e, c);
    }
    Ok(out)
}

/// `omega_{g,n} = sum <tau_a>_g prod (2a_i+1)!! w_i^{a_i+1}`.
pub fn omega_from_correlators(g: u32, n: usize, table: &CorrelatorTable) -> Result<SparseSymPoly> {
    correlator_orbits(g, n, table, |a, v| {
        let c = a.iter().fold(v, |acc, &x| acc * odd_double_factorial(x));
        (a.iter().map(|&x| x as i32 + 1).collect(), c)
    })
}

/// The `1/z^{2a+2}` expansion: same coefficients as [`omega_from_correlators`],
/// keyed by `a` itself.
pub fn tw_from_correlators(g: u32, n: usize, table: &CorrelatorTable) -> Result<SparseSymPoly> {
    correlator_orbits(g, n, table, |a, v| {
        let c = a.iter().fold(v, |acc, &x| acc * odd_double_factorial(x));
        (a.iter().map(|&x| x as i32).collect(), c)
    })
}

/// `Omega_{g,n}` in orbit form, exponents in half-steps `2a_i + 1`.
pub fn big_omega_orbits(g: u32, n: usize, table: &CorrelatorTable) -> Result<SparseSymPoly> {
    correlator_orbits(g, n, table, |a, v| {
        let c = a.iter().fold(v, |acc, &x| acc * shifted_double_factorial(x));
        (a.iter().map(|&x| 2 * x as i32 + 1).collect(), c)
    })
}

/// `Omega_{g,n} = sum <tau_a>_g prod (2a_i-1)!! w_i^{a_i+1/2}`.
pub fn big_omega_from_correlators(
    g: u32,
    n: usize,
    table: &CorrelatorTable,
) -> Result<HalfPowerPoly> {
    Ok(HalfPowerPoly::from_symmetric(&big_omega_orbits(g, n, table)?))
}

// D_{u,v} x^m = uv sum_{j=0}^m (2j+1) u^{m-j} v^j, as (u exp, v exp, coeff).
fn d_monomial(m: i32) -> Vec<(i32, i32, Rational)> {
    (0..=m)
        .map(|j| (m - j + 1, j + 1, Rational::from(2 * j as i64 + 1)))
        .collect()
}

/// Applies `D_{u,v}` to a one-variable polynomial in `x`; the result is a
/// polynomial in `(u, v)`.
pub fn d_op(f: &Poly) -> Result<Poly> {
    if f.nvars() != 1 {
        return Err(Error::InvalidArgument("d_op takes a one-variable polynomial".into()));
    }
    let mut out = Poly::zero(2);
    for (e, c) in f.terms() {
        if e[0] < 0 {
            return Err(Error::InvalidArgument(format!("negative power x^{}", e[0])));
        }
        for (u, v, k) in d_monomial(e[0]) {
            out.add_term(vec![u, v], c * &k);
        }
    }
    Ok(out)
}

/// Checks, as a polynomial identity in `(u, v)`, that the rational-function
/// form of `D_{u,v} x^m` cleared of its `(u - v)^2` denominator equals the
/// closed form:
///
/// `u(u+v) u^m - 3v(u-v) v^m - 2v^2 v^m - 2m v^2 (u-v) v^{m-1}
///   = (u-v)^2 sum_j (2j+1) u^{m-j} v^j`.
pub fn verify_d_lemma(m: u32) -> bool {
    let m = m as i32;
    let u = Poly::var(2, 0);
    let v = Poly::var(2, 1);
    let c = |k: i64| Poly::constant(2, Rational::from(k));
    let pow = |p: &Poly, k: i32| (0..k).fold(c(1), |acc, _| &acc * p);
    let u_minus_v = &u - &v;

    let mut lhs = &(&u * &(&u + &v)) * &pow(&u, m);
    lhs = &lhs - &(&(&c(3) * &v) * &(&u_minus_v * &pow(&v, m)));
    lhs = &lhs - &(&c(2) * &pow(&v, m + 2));
    if m > 0 {
        let t = &(&c(2 * m as i64) * &pow(&v, m + 1)) * &u_minus_v;
        lhs = &lhs - &t;
    }

    let mut closed = Poly::zero(2);
    for j in 0..=m {
        closed.add_term(vec![m - j, j], Rational::from(2 * j as i64 + 1));
    }
    let rhs = &(&u_minus_v * &u_minus_v) * &closed;
    lhs == rhs
}

// Applies D_{w0,wi} to the first slot of `q`, a polynomial in
// (x, w_{[n] minus i}); the output lives in (w0, w1, ..., wn).
fn transfer_d(q: &Poly, n: usize, i: usize) -> Result<Poly> {
    let others: Vec<usize> = (1..=n).filter(|&j| j != i).collect();
    let mut out = Poly::zero(n + 1);
    for (e, c) in q.terms() {
        if e[0] < 0 {
            return Err(Error::Consistency(format!("negative power in D input {e:?}")));
        }
        for (u, v, k) in d_monomial(e[0]) {
            let mut t = vec![0; n + 1];
            t[0] = u;
            t[i] = v;
            for (slot, &target) in others.iter().enumerate() {
                t[target] = e[slot + 1];
            }
            out.add_term(t, c * &k);
        }
    }
    Ok(out)
}

// calD_{u,v} x^{a-1/2} = u v^{1/2} sum_{j=0}^{a+1} u^{a+1-j} v^j, in
// half-steps, for an input exponent of k = 2a - 1 half-steps.
fn cal_d_monomial(k: i32) -> Result<Vec<(i32, i32)>> {
    if k < -1 || k % 2 == 0 {
        return Err(Error::HalfExponent(k));
    }
    let a = (k + 1) / 2;
    Ok((0..=a + 1).map(|j| (2 * (a + 2 - j), 2 * j + 1)).collect())
}

/// Applies `calD_{u,v}` to a one-variable half-power polynomial.
pub fn cal_d_op(f: &HalfPowerPoly) -> Result<HalfPowerPoly> {
    if f.nvars() != 1 {
        return Err(Error::InvalidArgument("cal_d_op takes a one-variable polynomial".into()));
    }
    let mut out = HalfPowerPoly::zero(2);
    for (e, c) in f.terms() {
        for (u, v) in cal_d_monomial(e[0])? {
            out.add_term(vec![u, v], c.clone());
        }
    }
    Ok(out)
}

fn transfer_cal_d(q: &HalfPowerPoly, n: usize, i: usize) -> Result<HalfPowerPoly> {
    let others: Vec<usize> = (1..=n).filter(|&j| j != i).collect();
    let mut out = HalfPowerPoly::zero(n + 1);
    for (e, c) in q.terms() {
        for (u, v) in cal_d_monomial(e[0])? {
            let mut t = vec![0; n + 1];
            t[0] = u;
            t[i] = v;
            for (slot, &target) in others.iter().enumerate() {
                t[target] = e[slot + 1];
            }
            out.add_term(t, c.clone());
        }
    }
    Ok(out)
}

/// Ordered splittings `g1 + g2 = g`, `A1 ⊔ A2 = {1..n}` with both
/// `(g1, |A1|+1)` and `(g2, |A2|+1)` stable.
pub(crate) fn stable_splittings(g: u32, n: usize) -> Vec<(u32, Vec<usize>, u32, Vec<usize>)> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let (a1, a2): (Vec<usize>, Vec<usize>) =
            (1..=n).partition(|&j| mask & (1 << (j - 1)) != 0);
        for g1 in 0..=g {
            let g2 = g - g1;
            if is_stable(g1, a1.len() + 1) && is_stable(g2, a2.len() + 1) {
                out.push((g1, a1.clone(), g2, a2.clone()));
            }
        }
    }
    out
}

// Variable map sending slot 0 to w0 and the remaining slots to `rest`.
fn with_w0(rest: &[usize]) -> Vec<usize> {
    std::iter::once(0).chain(rest.iter().copied()).collect()
}

/// Base cells not reached by the stable recursion.
pub fn omega_seed(g: u32, n: usize) -> Option<SparseSymPoly> {
    let mut s = SparseSymPoly::zero(n);
    match (g, n) {
        (0, 3) => s.add_orbit(&[1, 1, 1], Rational::one()),
        (1, 1) => s.add_orbit(&[2], Rational::new(1, 8)),
        _ => return None,
    }
    Some(s)
}

/// `omega_{g,n+1}(w0, ..., wn)` from lower cells:
///
/// `1/2 w0 omega_{g-1,n+2}(w0, w0, w)
///  + 1/2 w0 sum^s omega_{g1}(w0, w_A1) omega_{g2}(w0, w_A2)
///  + sum_i D_{w0,wi} omega_{g,n}(x, w without wi)`.
///
/// `(0,3)` and `(1,1)` are returned from [`omega_seed`].
pub fn omega_step(g: u32, n: usize, lower: &CellMap<SparseSymPoly>) -> Result<SparseSymPoly> {
    let nv = n + 1;
    check_stable(g, nv)?;
    if let Some(seed) = omega_seed(g, nv) {
        return Ok(seed);
    }
    let get = |g: u32, k: usize| {
        lower
            .get(&(g, k))
            .map(SparseSymPoly::to_poly)
            .ok_or(Error::MissingCell { g, n: k })
    };
    let half = Rational::new(1, 2);
    let rest: Vec<usize> = (1..=n).collect();
    let mut acc = Poly::zero(nv);

    if g >= 1 && is_stable(g - 1, n + 2) {
        let map: Vec<usize> = [0, 0].into_iter().chain(rest.iter().copied()).collect();
        let p = get(g - 1, n + 2)?.embed(nv, &map);
        acc.add_assign(&p.shift(0, 1).scale(&half));
    }

    for (g1, a1, g2, a2) in stable_splittings(g, n) {
        let p1 = get(g1, a1.len() + 1)?.embed(nv, &with_w0(&a1));
        let p2 = get(g2, a2.len() + 1)?.embed(nv, &with_w0(&a2));
        acc.add_assign(&(&p1 * &p2).shift(0, 1).scale(&half));
    }

    if n >= 1 {
        let q = get(g, n)?;
        for i in 1..=n {
            acc.add_assign(&transfer_d(&q, n, i)?);
        }
    }

    SparseSymPoly::from_poly(&acc)
}

/// `omega = 2^n prod w_j^{3/2} d_{w1} ... d_{wn} Omega`.
pub fn omega_from_big_omega(big: &HalfPowerPoly) -> Result<SparseSymPoly> {
    let n = big.nvars();
    let mut p = big.clone();
    for j in 0..n {
        p = p.derivative(j).shift(j, 3);
    }
    let p = p.scale(&Rational::from(1i64 << n));
    SparseSymPoly::from_poly(&p.to_integer_poly()?)
}

pub fn big_omega_seed(g: u32, n: usize) -> Option<HalfPowerPoly> {
    match (g, n) {
        (0, 3) => Some(HalfPowerPoly::monomial(vec![1, 1, 1], Rational::one())),
        (1, 1) => Some(HalfPowerPoly::monomial(vec![3], Rational::new(1, 24))),
        _ => None,
    }
}

/// `d_{w0} Omega_{g,n+1}(w0, ..., wn)` from lower cells:
///
/// `w0^{5/2} d_x d_y Omega_{g-1,n+2}(x, y, w)|_{x=y=w0}
///  + w0^{5/2} sum^s d_{w0} Omega_{g1}(w0, w_A1) d_{w0} Omega_{g2}(w0, w_A2)
///  + w0^{-3/2} sum_i calD_{w0,wi} d_x Omega_{g,n}(x, w without wi)`.
pub fn big_omega_derivative_step(
    g: u32,
    n: usize,
    lower: &CellMap<HalfPowerPoly>,
) -> Result<HalfPowerPoly> {
    let nv = n + 1;
    check_stable(g, nv)?;
    if let Some(seed) = big_omega_seed(g, nv) {
        return Ok(seed.derivative(0));
    }
    let get = |g: u32, k: usize| lower.get(&(g, k)).ok_or(Error::MissingCell { g, n: k });
    let rest: Vec<usize> = (1..=n).collect();
    let mut acc = HalfPowerPoly::zero(nv);

    if g >= 1 && is_stable(g - 1, n + 2) {
        let p = get(g - 1, n + 2)?.derivative(0).derivative(1);
        let map: Vec<usize> = [0, 0].into_iter().chain(rest.iter().copied()).collect();
        acc.add_assign(&p.embed(nv, &map).shift(0, 5));
    }

    for (g1, a1, g2, a2) in stable_splittings(g, n) {
        let p1 = get(g1, a1.len() + 1)?.derivative(0).embed(nv, &with_w0(&a1));
        let p2 = get(g2, a2.len() + 1)?.derivative(0).embed(nv, &with_w0(&a2));
        acc.add_assign(&(&p1 * &p2).shift(0, 5));
    }

    if n >= 1 {
        let dq = get(g, n)?.derivative(0);
        for i in 1..=n {
            acc.add_assign(&transfer_cal_d(&dq, n, i)?.shift(0, -3));
        }
    }
    Ok(acc)
}

/// `Omega_{g,n+1}`: the derivative step integrated in `w0` with zero
/// constant. The result is checked to be symmetric with every exponent of
/// the form `a + 1/2`.
pub fn big_omega_step(g: u32, n: usize, lower: &CellMap<HalfPowerPoly>) -> Result<HalfPowerPoly> {
    let nv = n + 1;
    check_stable(g, nv)?;
    if let Some(seed) = big_omega_seed(g, nv) {
        return Ok(seed);
    }
    let big = big_omega_derivative_step(g, n, lower)?.antiderivative(0)?;
    if let Some((e, _)) = big.terms().find(|(e, _)| e.iter().any(|&k| k < 1 || k % 2 == 0)) {
        return Err(Error::Consistency(format!(
            "Omega_({g},{nv}) term {e:?} is off the a + 1/2 lattice"
        )));
    }
    big.to_symmetric()?;
    Ok(big)
}

/// Checks `D_{w0,wi} omega_{g,n}(x, ...) = 2^{n+1} (w1...wn)^{3/2}
/// d_{w1}...d_{wn} calD_{w0,wi} d_x Omega_{g,n}(x, ...)` for every `i`,
/// with both sides built from the correlator table. Returns the first
/// failing `i`, if any.
pub fn operator_compatibility(g: u32, n: usize, table: &CorrelatorTable) -> Result<Option<usize>> {
    check_stable(g, n)?;
    let small = omega_from_correlators(g, n, table)?.to_poly();
    let dbig = big_omega_from_correlators(g, n, table)?.derivative(0);
    for i in 1..=n {
        let lhs = transfer_d(&small, n, i)?;
        let mut rhs = transfer_cal_d(&dbig, n, i)?;
        for j in 1..=n {
            rhs = rhs.derivative(j).shift(j, 3);
        }
        let rhs = rhs.scale(&Rational::from(1i64 << (n + 1))).to_integer_poly()?;
        if lhs != rhs {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// `omega_{g,n}` for all cells with `2g - 2 + n <= max_chi`, built only
/// through [`omega_step`] from the seeds.
pub fn omega_recursive_table(max_chi: u32) -> Result<CellMap<SparseSymPoly>> {
    let mut map = CellMap::new();
    for (g, n) in cells_up_to(max_chi) {
        let cell = omega_step(g, n - 1, &map)?;
        map.insert((g, n), cell);
    }
    Ok(map)
}

/// `Omega_{g,n}` for all cells with `2g - 2 + n <= max_chi`, built only
/// through [`big_omega_step`] from the seeds.
pub fn big_omega_recursive_table(max_chi: u32) -> Result<CellMap<HalfPowerPoly>> {
    let mut map = CellMap::new();
    for (g, n) in cells_up_to(max_chi) {
        let cell = big_omega_step(g, n - 1, &map)?;
        map.insert((g, n), cell);
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlator::correlator_shell;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q)
    }

    fn sym(n: usize, orbits: &[(&[i32], Rational)]) -> SparseSymPoly {
        let mut s = SparseSymPoly::zero(n);
        for (e, c) in orbits {
            s.add_orbit(e, c.clone());
        }
        s
    }

    #[test]
    fn d_op_closed_forms() {
        let x = |m: i32| Poly::monomial(vec![m], Rational::one());
        let uv = |u: i32, v: i32, c: i64| Poly::monomial(vec![u, v], Rational::from(c));
        assert_eq!(d_op(&x(0)).unwrap(), uv(1, 1, 1));
        assert_eq!(d_op(&x(1)).unwrap(), &uv(2, 1, 1) + &uv(1, 2, 3));
        let want = &(&uv(3, 1, 1) + &uv(2, 2, 3)) + &uv(1, 3, 5);
        assert_eq!(d_op(&x(2)).unwrap(), want);
        assert!(d_op(&x(-1)).is_err());
    }

    #[test]
    fn d_op_degree_and_weight() {
        for m in 0..20 {
            let p = d_op(&Poly::monomial(vec![m], Rational::one())).unwrap();
            assert_eq!(p.total_degrees().into_iter().collect::<Vec<_>>(), vec![m + 2]);
            assert_eq!(p.coefficient_sum(), Rational::from(((m + 1) * (m + 1)) as i64));
        }
    }

    #[test]
    fn d_lemma_small() {
        for m in 0..=5 {
            assert!(verify_d_lemma(m), "m = {m}");
        }
    }

    #[test]
    fn cal_d_closed_forms() {
        let x = |k: i32| HalfPowerPoly::monomial(vec![k], Rational::one());
        let uv = |u: i32, v: i32| HalfPowerPoly::monomial(vec![u, v], Rational::one());
        // a = 0: u v^{1/2} (u + v)
        assert_eq!(cal_d_op(&x(-1)).unwrap(), &uv(4, 1) + &uv(2, 3));
        // a = 1: u v^{1/2} (u^2 + uv + v^2)
        let want = &(&uv(6, 1) + &uv(4, 3)) + &uv(2, 5);
        assert_eq!(cal_d_op(&x(1)).unwrap(), want);
        assert_eq!(cal_d_op(&x(3)).unwrap().len(), 4);
        assert!(matches!(cal_d_op(&x(2)), Err(Error::HalfExponent(2))));
        assert!(matches!(cal_d_op(&x(-3)), Err(Error::HalfExponent(-3))));
    }

    #[test]
    fn omega_tables_from_correlators() {
        let t = correlator_shell(3);
        assert_eq!(
            omega_from_correlators(0, 3, &t).unwrap(),
            sym(3, &[(&[1, 1, 1], r(1, 1))])
        );
        assert_eq!(
            omega_from_correlators(1, 2, &t).unwrap(),
            sym(2, &[(&[3, 1], r(5, 8)), (&[2, 2], r(3, 8))])
        );
        assert_eq!(
            omega_from_correlators(2, 1, &t).unwrap(),
            sym(1, &[(&[5], r(105, 128))])
        );
        assert_eq!(
            omega_from_correlators(0, 4, &t).unwrap(),
            sym(4, &[(&[2, 1, 1, 1], r(3, 1))])
        );
        assert!(matches!(
            omega_from_correlators(0, 2, &t),
            Err(Error::Unstable { g: 0, n: 2 })
        ));
    }

    #[test]
    fn tw_tables_from_correlators() {
        let t = correlator_shell(4);
        assert_eq!(tw_from_correlators(1, 1, &t).unwrap(), sym(1, &[(&[1], r(1, 8))]));
        assert_eq!(
            tw_from_correlators(1, 3, &t).unwrap(),
            sym(
                3,
                &[
                    (&[3, 0, 0], r(35, 8)),
                    (&[2, 1, 0], r(30, 8)),
                    (&[1, 1, 1], r(18, 8))
                ]
            )
        );
        assert_eq!(
            tw_from_correlators(2, 2, &t).unwrap(),
            sym(
                2,
                // The printed table has 3465/128 and 6699/128 on the last two
                // orbits; <tau_4 tau_1>_2 = 1/384 and <tau_3 tau_2>_2 = 29/5760
                // give 945/128 and 1015/128.
                &[
                    (&[5, 0], r(1155, 128)),
                    (&[4, 1], r(945, 128)),
                    (&[3, 2], r(1015, 128))
                ]
            )
        );
    }

    #[test]
    fn omega_worked_steps() {
        let t = correlator_shell(3);
        let mut lower = CellMap::new();
        lower.insert((0, 3), omega_from_correlators(0, 3, &t).unwrap());
        lower.insert((1, 1), omega_from_correlators(1, 1, &t).unwrap());
        assert_eq!(
            omega_step(0, 3, &lower).unwrap(),
            sym(4, &[(&[2, 1, 1, 1], r(3, 1))])
        );
        assert_eq!(
            omega_step(1, 1, &lower).unwrap(),
            sym(2, &[(&[3, 1], r(5, 8)), (&[2, 2], r(3, 8))])
        );
        lower.insert((1, 2), omega_from_correlators(1, 2, &t).unwrap());
        assert_eq!(omega_step(2, 0, &lower).unwrap(), sym(1, &[(&[5], r(105, 128))]));
        assert!(matches!(
            omega_step(2, 1, &lower),
            Err(Error::MissingCell { .. })
        ));
    }

    #[test]
    fn omega_from_big_omega_examples() {
        let t = correlator_shell(2);
        let big03 = HalfPowerPoly::monomial(vec![1, 1, 1], Rational::one());
        assert_eq!(omega_from_big_omega(&big03).unwrap(), omega_from_correlators(0, 3, &t).unwrap());
        let big11 = HalfPowerPoly::monomial(vec![3], r(1, 24));
        assert_eq!(omega_from_big_omega(&big11).unwrap(), sym(1, &[(&[2], r(1, 8))]));
        let big12 = big_omega_from_correlators(1, 2, &t).unwrap();
        assert_eq!(omega_from_big_omega(&big12).unwrap(), omega_from_correlators(1, 2, &t).unwrap());
    }

    #[test]
    fn big_omega_worked_steps() {
        let mut lower = CellMap::new();
        lower.insert((0, 3), big_omega_seed(0, 3).unwrap());
        lower.insert((1, 1), big_omega_seed(1, 1).unwrap());

        // (3/2) w0^{1/2} (w1w2w3)^{1/2} + (1/2) w0^{-1/2} (w1w2w3)^{1/2} (w1+w2+w3)
        let mut want = HalfPowerPoly::monomial(vec![1, 1, 1, 1], r(3, 2));
        for i in 1..=3 {
            let mut e = vec![-1, 1, 1, 1];
            e[i] = 3;
            want.add_term(e, r(1, 2));
        }
        assert_eq!(big_omega_derivative_step(0, 3, &lower).unwrap(), want);

        // (1/16) w0^{-1/2} w1^{1/2} (5 w0^2 + w0 w1 + w1^2)
        let mut want = HalfPowerPoly::monomial(vec![3, 1], r(5, 16));
        want.add_term(vec![1, 3], r(1, 16));
        want.add_term(vec![-1, 5], r(1, 16));
        assert_eq!(big_omega_derivative_step(1, 1, &lower).unwrap(), want);

        // Omega_{0,4} = (w1 w2 w3 w4)^{1/2} (w1 + w2 + w3 + w4)
        let big04 = big_omega_step(0, 3, &lower).unwrap();
        assert_eq!(big04.to_symmetric().unwrap(), {
            let mut s = SparseSymPoly::zero(4);
            s.add_orbit(&[3, 1, 1, 1], Rational::one());
            s
        });
    }

    #[test]
    fn compatibility_small() {
        let t = correlator_shell(3);
        for (g, n) in [(0, 3), (1, 1), (1, 2), (0, 4), (2, 1)] {
            assert_eq!(operator_compatibility(g, n, &t).unwrap(), None, "({g},{n})");
        }
    }

    #[test]
    fn recursive_tables_agree_with_definitions() {
        let t = correlator_shell(4);
        let small = omega_recursive_table(4).unwrap();
        let big = big_omega_recursive_table(4).unwrap();
        for (&(g, n), s) in &small {
            assert_eq!(s, &omega_from_correlators(g, n, &t).unwrap(), "omega ({g},{n})");
            assert_eq!(
                big[&(g, n)].to_symmetric().unwrap(),
                big_omega_orbits(g, n, &t).unwrap(),
                "Omega ({g},{n})"
            );
        }
    }
}
