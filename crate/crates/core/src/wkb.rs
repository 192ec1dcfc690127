//! WKB terms `S_n` of the quantum Airy curve and the order-by-order checks
//! of `(hbar^2/2 d_u^2 - u) Z = 0`, `Z = exp sum hbar^{n-1} S_n`.
//!
//! Coordinates: `u = z^2/2`, `w = 1/z^2 = 1/(2u)`, `t = -(2/3) w^{-3/2}`.
//! A branch `ε = ±` fixes `z = ε (2u)^{1/2}`, so `z^p = ε^p w^{-p/2}`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::correlator::{is_stable, CorrelatorTable};
use crate::error::{Error, Result};
use crate::poly::omega::big_omega_orbits;
use crate::poly::render::{render_poly, ExponentUnit};
use crate::poly::{CellMap, HalfPowerPoly, Poly};
use crate::rational::{factorial, Rational};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(self) -> Rational {
        match self {
            Branch::Plus => Rational::one(),
            Branch::Minus => Rational::from(-1),
        }
    }

    /// `ε^k`.
    pub fn pow(self, k: i32) -> Rational {
        if self == Branch::Minus && k.rem_euclid(2) == 1 {
            Rational::from(-1)
        } else {
            Rational::one()
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Plus => "+",
            Branch::Minus => "-",
        })
    }
}

impl FromStr for Branch {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+" | "plus" => Ok(Branch::Plus),
            "-" | "minus" => Ok(Branch::Minus),
            _ => Err(Error::InvalidArgument(format!("branch must be + or -, got {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WkbForm {
    /// `coeff * z^power`.
    Monomial { coeff: Rational, power: i32 },
    /// `coeff * log z`, up to an additive constant.
    Log { coeff: Rational },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WkbTerm {
    pub n: u32,
    pub branch: Branch,
    pub form: WkbForm,
}

impl WkbTerm {
    /// The term as a one-variable half-power polynomial in `w`. `None` for
    /// the log term.
    pub fn w_form(&self) -> Option<HalfPowerPoly> {
        match &self.form {
            WkbForm::Monomial { coeff, power } => Some(HalfPowerPoly::monomial(
                vec![-power],
                coeff * &self.branch.pow(*power),
            )),
            WkbForm::Log { .. } => None,
        }
    }

    /// The term in `s = 2u`.
    pub fn u_form(&self) -> UExpr {
        match &self.form {
            WkbForm::Monomial { coeff, power } => {
                UExpr::monomial(*power, coeff * &self.branch.pow(*power))
            }
            // log z = (1/2) log s + const
            WkbForm::Log { coeff } => UExpr::log(coeff * &Rational::new(1, 2)),
        }
    }
}

impl fmt::Display for WkbTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.form {
            WkbForm::Monomial { coeff, power } => write!(f, "{coeff} z^{power}"),
            WkbForm::Log { coeff } => write!(f, "{coeff} log z"),
        }
    }
}

/// `log_coeff * log s + sum c_k s^{k/2}` with `s = 2u`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UExpr {
    log: Rational,
    terms: BTreeMap<i32, Rational>,
}

impl UExpr {
    pub fn zero() -> Self {
        UExpr::default()
    }

    /// `c s^{k/2}`.
    pub fn monomial(half_steps: i32, c: Rational) -> Self {
        let mut e = UExpr::zero();
        e.add_term(half_steps, c);
        e
    }

    pub fn log(c: Rational) -> Self {
        UExpr {
            log: c,
            terms: BTreeMap::new(),
        }
    }

    /// `u = s/2`.
    pub fn u() -> Self {
        UExpr::monomial(2, Rational::new(1, 2))
    }

    fn add_term(&mut self, k: i32, c: Rational) {
        let slot = self.terms.entry(k).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.log.is_zero() && self.terms.is_empty()
    }

    pub fn add(&self, other: &UExpr) -> UExpr {
        let mut out = self.clone();
        out.log += &other.log;
        for (&k, c) in &other.terms {
            out.add_term(k, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> UExpr {
        let mut out = UExpr::log(&self.log * c);
        for (&k, x) in &self.terms {
            out.add_term(k, x * c);
        }
        out
    }

    /// Product of two log-free expressions.
    pub fn mul(&self, other: &UExpr) -> UExpr {
        assert!(self.log.is_zero() && other.log.is_zero(), "log term in a product");
        let mut out = UExpr::zero();
        for (&a, x) in &self.terms {
            for (&b, y) in &other.terms {
                out.add_term(a + b, x * y);
            }
        }
        out
    }

    /// `d/du = 2 d/ds`.
    pub fn du(&self) -> UExpr {
        let mut out = UExpr::monomial(-2, &self.log * &Rational::from(2));
        for (&k, c) in &self.terms {
            out.add_term(k - 2, c * &Rational::from(k as i64));
        }
        out
    }
}

impl fmt::Display for UExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        if !self.log.is_zero() {
            parts.push(format!("{} log(2u)", self.log));
        }
        for (&k, c) in self.terms.iter().rev() {
            parts.push(format!("{c} (2u)^{}", ExponentUnit::Half.render(k)));
        }
        f.write_str(&parts.join(" + "))
    }
}

/// Source of diagonal restrictions `Omega_{g,k}(w, ..., w)`.
pub trait OmegaSupplier {
    /// One-variable half-power polynomial in `w`.
    fn omega_diagonal(&self, g: u32, k: usize) -> Result<HalfPowerPoly>;
}

impl OmegaSupplier for CorrelatorTable {
    fn omega_diagonal(&self, g: u32, k: usize) -> Result<HalfPowerPoly> {
        Ok(HalfPowerPoly::from_half_steps(big_omega_orbits(g, k, self)?.diagonal()))
    }
}

impl OmegaSupplier for CellMap<HalfPowerPoly> {
    fn omega_diagonal(&self, g: u32, k: usize) -> Result<HalfPowerPoly> {
        self.get(&(g, k))
            .map(HalfPowerPoly::diagonal)
            .ok_or(Error::MissingCell { g, n: k })
    }
}

/// Coefficient `c_n` with `S_n = c_n z^{3-3n}` for `n >= 2`:
/// `sum_{2g-1+k=n} (1/k!) Omega_{g,k}(w, ..., w)`, which must collapse to
/// `c_n w^{(3n-3)/2}`.
pub fn s_coefficient(n: u32, supplier: &dyn OmegaSupplier) -> Result<Rational> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("S_{n} is not a diagonal sum")));
    }
    let mut sum = HalfPowerPoly::zero(1);
    for g in 0..=n.div_ceil(2) {
        let k = (n + 1 - 2 * g) as usize;
        if k == 0 || !is_stable(g, k) {
            continue;
        }
        let d = supplier.omega_diagonal(g, k)?;
        sum.add_assign(&d.scale(&Rational::from(factorial(k)).recip().unwrap()));
    }
    let want = 3 * n as i32 - 3;
    let terms: Vec<_> = sum.terms().collect();
    match terms.as_slice() {
        [(e, c)] if e[0] == want => Ok((*c).clone()),
        _ => Err(Error::Consistency(format!(
            "diagonal sum for S_{n} is not a single w^{want}/2 monomial: {} terms",
            terms.len()
        ))),
    }
}

/// `S_n` on a branch.
pub fn s_term(n: u32, branch: Branch, supplier: &dyn OmegaSupplier) -> Result<WkbTerm> {
    let form = match n {
        0 => WkbForm::Monomial {
            coeff: Rational::new(1, 3),
            power: 3,
        },
        1 => WkbForm::Log {
            coeff: Rational::new(-1, 2),
        },
        _ => WkbForm::Monomial {
            coeff: s_coefficient(n, supplier)?,
            power: 3 - 3 * n as i32,
        },
    };
    Ok(WkbTerm { n, branch, form })
}

/// `S_0, ..., S_N` on one branch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WkbSeries {
    branch: Branch,
    terms: Vec<WkbTerm>,
}

impl WkbSeries {
    pub fn compute(max_n: u32, branch: Branch, supplier: &dyn OmegaSupplier) -> Result<Self> {
        let terms = (0..=max_n)
            .map(|n| s_term(n, branch, supplier))
            .collect::<Result<_>>()?;
        Ok(WkbSeries { branch, terms })
    }

    /// From the default correlator table.
    pub fn standard(max_n: u32, branch: Branch) -> Result<Self> {
        Self::compute(max_n, branch, &CorrelatorTable::new())
    }

    pub fn branch(&self) -> Branch {
        self.branch
    }

    pub fn max_order(&self) -> u32 {
        self.terms.len() as u32 - 1
    }

    pub fn term(&self, n: u32) -> &WkbTerm {
        &self.terms[n as usize]
    }

    pub fn terms(&self) -> &[WkbTerm] {
        &self.terms
    }

    /// Replaces the coefficient of `S_n` (for mutation tests).
    pub fn set_coefficient(&mut self, n: u32, c: Rational) {
        match &mut self.terms[n as usize].form {
            WkbForm::Monomial { coeff, .. } | WkbForm::Log { coeff } => *coeff = c,
        }
    }

    fn w(&self, n: u32) -> HalfPowerPoly {
        self.term(n).w_form().expect("S_n with n >= 2 is a monomial")
    }

    fn du(&self, n: u32) -> UExpr {
        self.term(n).u_form().du()
    }

    /// Residuals of the orders `hbar^0, hbar^1, hbar^2` in `s = 2u`:
    /// `(1/2)(S_0')^2 - u`, `(1/2)S_0'' + S_0'S_1'`,
    /// `(1/2)S_1'' + S_0'S_2' + (1/2)(S_1')^2`.
    pub fn low_order_residuals(&self) -> [UExpr; 3] {
        let half = Rational::new(1, 2);
        let (d0, d1, d2) = (self.du(0), self.du(1), self.du(2));
        let r0 = d0.mul(&d0).scale(&half).add(&UExpr::u().scale(&Rational::from(-1)));
        let r1 = d0.du().scale(&half).add(&d0.mul(&d1));
        let r2 = d1
            .du()
            .scale(&half)
            .add(&d0.mul(&d2))
            .add(&d1.mul(&d1).scale(&half));
        [r0, r1, r2]
    }

    pub fn verify_low_orders(&self) -> bool {
        self.low_order_residuals().iter().all(UExpr::is_zero)
    }

    /// Order `hbar^n`, `n >= 3`, in `u`:
    /// `(1/2)S_{n-1}'' + S_0'S_n' + S_1'S_{n-1}' + (1/2) sum_{i+j=n; i,j>=2} S_i'S_j'`.
    pub fn u_order_residual(&self, n: u32) -> UExpr {
        assert!(n >= 3 && n <= self.max_order());
        let half = Rational::new(1, 2);
        let mut r = self
            .du(n - 1)
            .du()
            .scale(&half)
            .add(&self.du(0).mul(&self.du(n)))
            .add(&self.du(1).mul(&self.du(n - 1)));
        for i in 2..=n - 2 {
            r = r.add(&self.du(i).mul(&self.du(n - i)).scale(&half));
        }
        r
    }

    /// `w^{5/2} S_n' - ε [ (w^{5/2} d_w)^2 S_{n-1}
    ///   + sum_{i+j=n; i,j>=2} w^{5/2} S_i' w^{5/2} S_j' ]`, `n >= 3`.
    pub fn w_order_residual(&self, n: u32) -> HalfPowerPoly {
        assert!(n >= 3 && n <= self.max_order());
        let l = |p: &HalfPowerPoly| p.derivative(0).shift(0, 5);
        let mut rhs = l(&l(&self.w(n - 1)));
        for i in 2..=n - 2 {
            rhs.add_assign(&(&l(&self.w(i)) * &l(&self.w(n - i))));
        }
        &l(&self.w(n)) - &rhs.scale(&self.branch.sign())
    }

    /// `S_n` as a polynomial in `t`, via `w^{3/2} = -2/(3t)`.
    pub fn t_form(&self, n: u32) -> Result<Poly> {
        to_t_form(&self.w(n))
    }

    /// `d_t S_n - ε [ d_t^2 S_{n-1} + sum_{i+j=n; i,j>=2} d_t S_i d_t S_j ]`.
    pub fn t_order_residual(&self, n: u32) -> Result<Poly> {
        assert!(n >= 3 && n <= self.max_order());
        let d = |p: &Poly| p.derivative(0);
        let mut rhs = d(&d(&self.t_form(n - 1)?));
        for i in 2..=n - 2 {
            rhs.add_assign(&(&d(&self.t_form(i)?) * &d(&self.t_form(n - i)?)));
        }
        Ok(&d(&self.t_form(n)?) - &rhs.scale(&self.branch.sign()))
    }

    pub fn t_recursion_check(&self, n: u32) -> Result<bool> {
        Ok(self.t_order_residual(n)?.is_zero())
    }
}

/// `w^{h/2} = (w^{3/2})^{h/3} = (-2/3)^{h/3} t^{-h/3}`; fails unless `3 | h`.
pub fn to_t_form(p: &HalfPowerPoly) -> Result<Poly> {
    let mut out = Poly::zero(1);
    for (e, c) in p.terms() {
        let h = e[0];
        if h % 3 != 0 {
            return Err(Error::Consistency(format!("w^{h}/2 is not a power of t")));
        }
        out.add_term(vec![-h / 3], c * &Rational::new(-2, 3).pow(h / 3));
    }
    Ok(out)
}

pub fn verify_low_orders(branch: Branch) -> Result<bool> {
    Ok(WkbSeries::standard(2, branch)?.verify_low_orders())
}

pub fn verify_order(n: u32, branch: Branch) -> Result<HalfPowerPoly> {
    Ok(WkbSeries::standard(n, branch)?.w_order_residual(n))
}

pub fn t_recursion_check(n: u32, branch: Branch) -> Result<bool> {
    WkbSeries::standard(n, branch)?.t_recursion_check(n)
}

/// Residual of one order of the quantum curve equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderResidual {
    pub order: u32,
    pub residual: String,
    pub zero: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantumCurveReport {
    pub max_order: u32,
    pub branch: Branch,
    pub orders: Vec<OrderResidual>,
}

impl QuantumCurveReport {
    pub fn from_series(s: &WkbSeries) -> Self {
        let mut orders = Vec::new();
        for (order, r) in s.low_order_residuals().iter().enumerate() {
            orders.push(OrderResidual {
                order: order as u32,
                residual: r.to_string(),
                zero: r.is_zero(),
            });
        }
        for n in 3..=s.max_order() {
            let r = s.w_order_residual(n);
            orders.push(OrderResidual {
                order: n,
                residual: render_poly(r.half_steps(), "w", ExponentUnit::Half).join(" + "),
                zero: r.is_zero(),
            });
        }
        QuantumCurveReport {
            max_order: s.max_order(),
            branch: s.branch(),
            orders,
        }
    }

    pub fn passes(&self) -> bool {
        self.orders.iter().all(|o| o.zero)
    }

    pub fn first_failure(&self) -> Option<&OrderResidual> {
        self.orders.iter().find(|o| !o.zero)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.orders
                .iter()
                .map(|o| {
                    json!({
                        "order": o.order,
                        "branch": self.branch.to_string(),
                        "residual": o.residual,
                    })
                })
                .collect(),
        )
    }
}

pub fn quantum_curve_report(
    max_order: u32,
    branch: Branch,
    supplier: &dyn OmegaSupplier,
) -> Result<QuantumCurveReport> {
    if max_order < 2 {
        return Err(Error::InvalidArgument("the report needs N >= 2".into()));
    }
    Ok(QuantumCurveReport::from_series(&WkbSeries::compute(max_order, branch, supplier)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::omega::big_omega_recursive_table;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q)
    }

    fn coeff(t: &WkbTerm) -> Rational {
        match &t.form {
            WkbForm::Monomial { coeff, .. } | WkbForm::Log { coeff } => coeff.clone(),
        }
    }

    #[test]
    fn low_terms() {
        let t = CorrelatorTable::new();
        let s2 = s_term(2, Branch::Plus, &t).unwrap();
        assert_eq!(
            s2.form,
            WkbForm::Monomial {
                coeff: r(5, 24),
                power: -3
            }
        );
        assert_eq!(coeff(&s_term(3, Branch::Minus, &t).unwrap()), r(5, 16));
        assert_eq!(coeff(&s_term(4, Branch::Plus, &t).unwrap()), r(1105, 1152));
        assert_eq!(
            s_term(1, Branch::Plus, &t).unwrap().form,
            WkbForm::Log { coeff: r(-1, 2) }
        );
        assert_eq!(s2.to_string(), "5/24 z^-3");
    }

    #[test]
    fn u_forms_match_printed_expressions() {
        let s = WkbSeries::standard(3, Branch::Minus).unwrap();
        // S_0 = -(1/3)(2u)^{3/2}, S_1 = -(1/4) log(2u), S_2 = -(5/24)(2u)^{-3/2}
        assert_eq!(s.term(0).u_form(), UExpr::monomial(3, r(-1, 3)));
        assert_eq!(s.term(1).u_form(), UExpr::log(r(-1, 4)));
        assert_eq!(s.term(2).u_form(), UExpr::monomial(-3, r(-5, 24)));
        assert_eq!(s.term(3).u_form(), UExpr::monomial(-6, r(5, 16)));
    }

    #[test]
    fn low_orders_both_branches() {
        for b in [Branch::Plus, Branch::Minus] {
            assert!(verify_low_orders(b).unwrap());
        }
        let mut s = WkbSeries::standard(2, Branch::Plus).unwrap();
        s.set_coefficient(2, r(1, 4));
        assert!(!s.verify_low_orders());
    }

    #[test]
    fn orders_through_ten() {
        for b in [Branch::Plus, Branch::Minus] {
            let s = WkbSeries::standard(10, b).unwrap();
            for n in 3..=10 {
                assert!(s.w_order_residual(n).is_zero(), "w order {n} branch {b}");
                assert!(s.u_order_residual(n).is_zero(), "u order {n} branch {b}");
                assert!(s.t_recursion_check(n).unwrap(), "t order {n} branch {b}");
            }
        }
    }

    #[test]
    fn branch_covariance() {
        let p = WkbSeries::standard(8, Branch::Plus).unwrap();
        let m = WkbSeries::standard(8, Branch::Minus).unwrap();
        for n in 2..=8 {
            let sign = if n % 2 == 1 { r(1, 1) } else { r(-1, 1) };
            assert_eq!(m.w(n), p.w(n).scale(&sign));
        }
    }

    #[test]
    fn recursive_omega_supplier_agrees() {
        let big = big_omega_recursive_table(5).unwrap();
        let a = WkbSeries::compute(5, Branch::Plus, &big).unwrap();
        assert_eq!(a, WkbSeries::standard(5, Branch::Plus).unwrap());
    }

    #[test]
    fn mutated_s3_breaks_t_recursion() {
        let mut s = WkbSeries::standard(4, Branch::Plus).unwrap();
        assert!(s.t_recursion_check(3).unwrap());
        s.set_coefficient(3, r(1, 3));
        assert!(!s.t_recursion_check(3).unwrap());
        assert!(!s.t_recursion_check(4).unwrap());
    }

    #[test]
    fn wrong_genus_one_base_fails_at_order_two() {
        let t = CorrelatorTable::with_base_values(Rational::one(), r(1, 12));
        let rep = quantum_curve_report(10, Branch::Plus, &t).unwrap();
        assert!(!rep.passes());
        assert_eq!(rep.first_failure().unwrap().order, 2);
    }

    #[test]
    fn report_json() {
        let rep = quantum_curve_report(3, Branch::Minus, &CorrelatorTable::new()).unwrap();
        assert!(rep.passes());
        assert_eq!(
            rep.to_json()[3].to_string(),
            r#"{"branch":"-","order":3,"residual":"0"}"#
        );
    }
}
