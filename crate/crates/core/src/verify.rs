//! Verification suites. Each suite checks a family of exact identities and
//! stops at the first counterexample, reporting where it occurred.

use std::fmt;
use std::str::FromStr;

use crate::correlator::{cells_up_to, is_stable, partitions, shell_keys, CorrelatorKey, CorrelatorTable};
use crate::eo::{eo_table, WTable};
use crate::error::{Error, Result};
use crate::poly::omega::{
    big_omega_orbits, big_omega_recursive_table, omega_from_big_omega, omega_from_correlators,
    omega_recursive_table, operator_compatibility, tw_from_correlators, verify_d_lemma,
};
use crate::poly::SparseSymPoly;
use crate::wkb::{Branch, WkbSeries};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    DvvEo,
    OmegaRec,
    BigOmegaRec,
    DLemma,
    QuantumCurve,
    TRec,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::DvvEo,
        Suite::OmegaRec,
        Suite::BigOmegaRec,
        Suite::DLemma,
        Suite::QuantumCurve,
        Suite::TRec,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::DvvEo => "dvv-eo",
            Suite::OmegaRec => "omega-rec",
            Suite::BigOmegaRec => "Omega-rec",
            Suite::DLemma => "d-lemma",
            Suite::QuantumCurve => "quantum-curve",
            Suite::TRec => "t-rec",
        }
    }

    pub fn default_max_chi(self) -> u32 {
        match self {
            Suite::DLemma => 4,
            _ => 6,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug)]
pub struct Params {
    pub max_chi: u32,
    pub order: u32,
    pub max_m: u32,
    pub jobs: usize,
}

impl Params {
    pub fn defaults(suite: Suite) -> Self {
        Params {
            max_chi: suite.default_max_chi(),
            order: 10,
            max_m: 50,
            jobs: 1,
        }
    }
}

/// Where an identity failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub identity: String,
    pub location: String,
    pub detail: String,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at {}: {}", self.identity, self.location, self.detail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub suite: Suite,
    pub checks: usize,
    pub counterexample: Option<Counterexample>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

// Accumulates checks and keeps the first failure.
struct Run {
    checks: usize,
    failure: Option<Counterexample>,
}

impl Run {
    fn new() -> Self {
        Run {
            checks: 0,
            failure: None,
        }
    }

    fn check(&mut self, ok: bool, identity: &str, location: impl FnOnce() -> String, detail: impl FnOnce() -> String) -> bool {
        self.checks += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(Counterexample {
                identity: identity.into(),
                location: location(),
                detail: detail(),
            });
        }
        ok
    }

    fn failed(&self) -> bool {
        self.failure.is_some()
    }

    fn finish(self, suite: Suite) -> Outcome {
        Outcome {
            suite,
            checks: self.checks,
            counterexample: self.failure,
        }
    }
}

/// First orbit on which two symmetric polynomials differ.
pub fn first_orbit_difference(got: &SparseSymPoly, want: &SparseSymPoly) -> Option<String> {
    let mut keys: Vec<&Vec<i32>> = got.orbits().chain(want.orbits()).map(|(k, _)| k).collect();
    keys.sort_by(|a, b| b.cmp(a));
    keys.dedup();
    keys.into_iter().find_map(|k| {
        let (a, b) = (got.coeff(k), want.coeff(k));
        (a != b).then(|| format!("orbit {k:?}: got {a}, expected {b}"))
    })
}

// Consistency errors from the engines are counterexamples, not domain errors.
fn as_counterexample<T>(r: Result<T>, run: &mut Run, identity: &str, location: String) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::Consistency(msg)) => {
            run.check(false, identity, || location, || msg);
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

pub fn run_suite(suite: Suite, params: &Params, table: &CorrelatorTable) -> Result<Outcome> {
    let mut run = Run::new();
    match suite {
        Suite::DvvEo => dvv_eo(&mut run, params, table)?,
        Suite::OmegaRec => omega_rec(&mut run, params, table)?,
        Suite::BigOmegaRec => big_omega_rec(&mut run, params, table)?,
        Suite::DLemma => d_lemma(&mut run, params, table)?,
        Suite::QuantumCurve => quantum_curve(&mut run, params, table)?,
        Suite::TRec => t_rec(&mut run, params, table)?,
    }
    Ok(run.finish(suite))
}

fn dvv_eo(run: &mut Run, p: &Params, table: &CorrelatorTable) -> Result<()> {
    let Some(w) = as_counterexample(
        eo_table(p.max_chi, p.jobs),
        run,
        "residue recursion",
        format!("2g-2+n <= {}", p.max_chi),
    )?
    else {
        return Ok(());
    };
    if let Some(c) = eo_invariants(&w) {
        run.check(false, "W parity and pole bound", || c.location.clone(), || c.detail.clone());
        return Ok(());
    }
    for (&(g, n), cell) in &w {
        let want = tw_from_correlators(g, n, table)?;
        run.check(
            cell == &want,
            "W_{g,n} = generating function of correlators",
            || format!("(g,n) = ({g},{n})"),
            || first_orbit_difference(cell, &want).unwrap_or_default(),
        );
        if run.failed() {
            return Ok(());
        }
    }
    if let Some(c) = string_equation_check(table, p.max_chi) {
        run.check(false, &c.identity, || c.location.clone(), || c.detail.clone());
    }
    Ok(())
}

fn omega_rec(run: &mut Run, p: &Params, table: &CorrelatorTable) -> Result<()> {
    let Some(rec) = as_counterexample(
        omega_recursive_table(p.max_chi),
        run,
        "omega recursion",
        format!("2g-2+n <= {}", p.max_chi),
    )?
    else {
        return Ok(());
    };
    for (&(g, n), cell) in &rec {
        let want = omega_from_correlators(g, n, table)?;
        let degree = 3 * g as i32 - 3 + 2 * n as i32;
        run.check(
            cell.homogeneous_degree() == Some(degree),
            "omega_{g,n} homogeneous of degree 3g-3+2n",
            || format!("(g,n) = ({g},{n})"),
            || format!("degree {:?}, expected {degree}", cell.homogeneous_degree()),
        );
        run.check(
            cell == &want,
            "omega recursion = definition",
            || format!("(g,n) = ({g},{n})"),
            || first_orbit_difference(cell, &want).unwrap_or_default(),
        );
        if run.failed() {
            return Ok(());
        }
    }
    Ok(())
}

fn big_omega_rec(run: &mut Run, p: &Params, table: &CorrelatorTable) -> Result<()> {
    let Some(rec) = as_counterexample(
        big_omega_recursive_table(p.max_chi),
        run,
        "Omega recursion",
        format!("2g-2+n <= {}", p.max_chi),
    )?
    else {
        return Ok(());
    };
    for (&(g, n), cell) in &rec {
        let loc = || format!("(g,n) = ({g},{n})");
        let Some(sym) = as_counterexample(cell.to_symmetric(), run, "Omega symmetry", loc())? else {
            return Ok(());
        };
        let want = big_omega_orbits(g, n, table)?;
        let degree = 6 * g as i32 - 6 + 3 * n as i32;
        run.check(
            sym.homogeneous_degree() == Some(degree),
            "Omega_{g,n} homogeneous of degree 3g-3+3n/2",
            loc,
            || format!("half-step degree {:?}, expected {degree}", sym.homogeneous_degree()),
        );
        run.check(
            sym == want,
            "Omega recursion = definition",
            loc,
            || first_orbit_difference(&sym, &want).unwrap_or_default(),
        );
        let bridge = omega_from_big_omega(cell)?;
        let small = omega_from_correlators(g, n, table)?;
        run.check(
            bridge == small,
            "omega = 2^n prod w^{3/2} d...d Omega",
            loc,
            || first_orbit_difference(&bridge, &small).unwrap_or_default(),
        );
        if run.failed() {
            return Ok(());
        }
    }
    Ok(())
}

fn d_lemma(run: &mut Run, p: &Params, table: &CorrelatorTable) -> Result<()> {
    for m in 0..=p.max_m {
        if !run.check(verify_d_lemma(m), "closed form of D_{u,v} x^m", || format!("m = {m}"), String::new) {
            return Ok(());
        }
    }
    for (g, n) in cells_up_to(p.max_chi) {
        let bad = operator_compatibility(g, n, table)?;
        if !run.check(
            bad.is_none(),
            "D omega = 2^{n+1} w^{3/2} d...d calD d Omega",
            || format!("(g,n) = ({g},{n}), i = {}", bad.unwrap_or(0)),
            || "the two sides differ".into(),
        ) {
            return Ok(());
        }
    }
    Ok(())
}

fn quantum_curve(run: &mut Run, p: &Params, table: &CorrelatorTable) -> Result<()> {
    let order = p.order.max(2);
    for branch in [Branch::Plus, Branch::Minus] {
        let Some(s) = as_counterexample(
            WkbSeries::compute(order, branch, table),
            run,
            "monomial collapse of the diagonal sum",
            format!("branch {branch}"),
        )?
        else {
            return Ok(());
        };
        for (k, r) in s.low_order_residuals().iter().enumerate() {
            if !run.check(
                r.is_zero(),
                "quantum curve in u",
                || format!("order {k}, branch {branch}"),
                || format!("residual {r}"),
            ) {
                return Ok(());
            }
        }
        for n in 3..=order {
            let r = s.w_order_residual(n);
            if !run.check(
                r.is_zero(),
                "quantum curve in w",
                || format!("order {n}, branch {branch}"),
                || format!("residual has {} nonzero terms", r.len()),
            ) {
                return Ok(());
            }
            let u = s.u_order_residual(n);
            if !run.check(
                u.is_zero(),
                "quantum curve in u",
                || format!("order {n}, branch {branch}"),
                || format!("residual {u}"),
            ) {
                return Ok(());
            }
        }
    }
    Ok(())
}

fn t_rec(run: &mut Run, p: &Params, table: &CorrelatorTable) -> Result<()> {
    let order = p.order.max(3);
    for branch in [Branch::Plus, Branch::Minus] {
        let Some(s) = as_counterexample(
            WkbSeries::compute(order, branch, table),
            run,
            "monomial collapse of the diagonal sum",
            format!("branch {branch}"),
        )?
        else {
            return Ok(());
        };
        for n in 3..=order {
            let t = s.t_recursion_check(n)?;
            let w = s.w_order_residual(n).is_zero();
            run.check(t, "recursion in t", || format!("order {n}, branch {branch}"), || "nonzero residual".into());
            run.check(
                t == w,
                "t and w forms agree",
                || format!("order {n}, branch {branch}"),
                || format!("t holds: {t}, w holds: {w}"),
            );
            if run.failed() {
                return Ok(());
            }
        }
    }
    Ok(())
}

/// Every exponent of every `W_{g,n}` is even with `z`-power in
/// `[-(6g-4+2n), -2]`, i.e. `0 <= a <= 3g-3+n`, and the cell is symmetric
/// of the right arity.
pub fn eo_invariants(w: &WTable) -> Option<Counterexample> {
    for (&(g, n), cell) in w {
        let top = 3 * g as i32 - 3 + n as i32;
        if cell.nvars() != n {
            return Some(Counterexample {
                identity: "W arity".into(),
                location: format!("(g,n) = ({g},{n})"),
                detail: format!("{} variables", cell.nvars()),
            });
        }
        if let Some((k, _)) = cell.orbits().find(|(k, _)| k.iter().any(|&a| a < 0 || a > top)) {
            return Some(Counterexample {
                identity: "W pole bound".into(),
                location: format!("(g,n) = ({g},{n})"),
                detail: format!("a-orbit {k:?} outside [0, {top}]"),
            });
        }
    }
    None
}

/// Evaluating DVV with every distinct insertion as the special one agrees
/// with the table, on every dimension-matching key with `sum a <= max_sum`.
pub fn insertion_independence(table: &CorrelatorTable, max_sum: u32) -> Result<Option<Counterexample>> {
    for g in 0..=(max_sum + 3) / 3 {
        for n in 1..=(max_sum + 3 - 3 * g) as usize {
            let total = 3 * g as i64 - 3 + n as i64;
            if !is_stable(g, n) {
                continue;
            }
            for a in partitions(total as u32, n) {
                let key = CorrelatorKey::new(g, &a)?;
                let v = table.value(&key);
                for j in 0..n {
                    if j > 0 && a[j] == a[j - 1] {
                        continue;
                    }
                    let alt = table.dvv_with_insertion(&key, j);
                    if alt != v {
                        return Ok(Some(Counterexample {
                            identity: "DVV insertion independence".into(),
                            location: format!("g = {g}, a = {a:?}, special a_{j} = {}", a[j]),
                            detail: format!("got {alt}, table has {v}"),
                        }));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// `<tau_0 prod tau_{a_i}>_g = sum_i <tau_{a_i - 1} prod_{j != i} tau_{a_j}>_g`
/// on every key containing `tau_0` with `2g - 2 + n <= max_chi`.
pub fn string_equation_check(table: &CorrelatorTable, max_chi: u32) -> Option<Counterexample> {
    for chi in 1..=max_chi {
        for key in shell_keys(chi) {
            if let Some(rhs) = table.string_equation(&key) {
                let lhs = table.value(&key);
                if lhs != rhs {
                    return Some(Counterexample {
                        identity: "string equation".into(),
                        location: format!("g = {}, a = {:?}", key.genus(), key.exponents()),
                        detail: format!("value {lhs}, string equation gives {rhs}"),
                    });
                }
            }
        }
    }
    None
}

/// Zero exactly off the dimension constraint and positive on it, for all
/// keys with `2g - 2 + n <= max_chi` and `sum a <= 3g - 3 + n + slack`.
pub fn selection_rule_check(table: &CorrelatorTable, max_chi: u32, slack: u32) -> Result<Option<Counterexample>> {
    for (g, n) in cells_up_to(max_chi) {
        let dim = 3 * g as i64 - 3 + n as i64;
        for total in 0..=(dim + slack as i64) as u32 {
            for a in partitions(total, n) {
                let v = table.value(&CorrelatorKey::new(g, &a)?);
                let on = total as i64 == dim;
                if on != v.is_positive() || (!on && !v.is_zero()) {
                    return Ok(Some(Counterexample {
                        identity: "selection rule".into(),
                        location: format!("g = {g}, a = {a:?}"),
                        detail: format!("value {v}, dimension {}", if on { "matches" } else { "differs" }),
                    }));
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rational;

    fn quick(_: Suite) -> Params {
        Params {
            max_chi: 3,
            order: 5,
            max_m: 6,
            jobs: 1,
        }
    }

    #[test]
    fn suites_pass_on_small_ranges() {
        let t = CorrelatorTable::new();
        for s in Suite::ALL {
            let o = run_suite(s, &quick(s), &t).unwrap();
            assert!(o.passed(), "{s}: {:?}", o.counterexample);
            assert!(o.checks > 0, "{s}");
        }
    }

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("omega".parse::<Suite>().is_err());
    }

    #[test]
    fn wrong_base_is_caught() {
        let bad = CorrelatorTable::with_base_values(Rational::one(), Rational::new(1, 12));
        for s in [Suite::DvvEo, Suite::OmegaRec, Suite::BigOmegaRec, Suite::QuantumCurve] {
            let o = run_suite(s, &quick(s), &bad).unwrap();
            let c = o.counterexample.unwrap_or_else(|| panic!("{s} missed the bad base"));
            assert!(!c.location.is_empty());
        }
    }

    #[test]
    fn dvv_eo_reports_orbit() {
        let bad = CorrelatorTable::with_base_values(Rational::one(), Rational::new(1, 12));
        let o = run_suite(Suite::DvvEo, &quick(Suite::DvvEo), &bad).unwrap();
        let c = o.counterexample.unwrap();
        assert_eq!(c.location, "(g,n) = (1,1)");
        assert_eq!(c.detail, "orbit [1]: got 1/8, expected 1/4");
    }

    #[test]
    fn correlator_properties_small() {
        let t = CorrelatorTable::new();
        assert_eq!(insertion_independence(&t, 7).unwrap(), None);
        assert_eq!(string_equation_check(&t, 5), None);
        assert_eq!(selection_rule_check(&t, 4, 2).unwrap(), None);
    }

    #[test]
    fn eo_invariant_violation_detected() {
        let mut w = WTable::new();
        let mut s = SparseSymPoly::zero(1);
        s.add_orbit(&[2], Rational::one());
        w.insert((1, 1), s);
        assert!(eo_invariants(&w).is_some());
    }
}
