//! Text and JSON renderings of polynomials.

use serde_json::{json, Value};

use super::{Poly, SparseSymPoly};
use crate::rational::Rational;

/// How stored exponents map to printed ones.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ExponentUnit {
    Whole,
    /// Stored exponent `k` means `k/2`.
    Half,
}

impl ExponentUnit {
    pub fn render(self, k: i32) -> String {
        match self {
            ExponentUnit::Whole => k.to_string(),
            ExponentUnit::Half if k % 2 == 0 => (k / 2).to_string(),
            ExponentUnit::Half => format!("{k}/2"),
        }
    }

    fn is_one(self, k: i32) -> bool {
        match self {
            ExponentUnit::Whole => k == 1,
            ExponentUnit::Half => k == 2,
        }
    }
}

/// `w1^2 w3^1/2`; variables are numbered from 1. Returns `"1"` for the
/// constant monomial.
pub fn render_monomial(exps: &[i32], prefix: &str, unit: ExponentUnit) -> String {
    let parts: Vec<String> = exps
        .iter()
        .enumerate()
        .filter(|(_, &k)| k != 0)
        .map(|(i, &k)| {
            if unit.is_one(k) {
                format!("{prefix}{}", i + 1)
            } else {
                format!("{prefix}{}^{}", i + 1, unit.render(k))
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" ")
    }
}

fn render_term(c: &Rational, mono: String) -> String {
    if mono == "1" {
        c.to_string()
    } else if c.is_one() {
        mono
    } else {
        format!("{c} {mono}")
    }
}

fn orbit_key(e: &[i32]) -> Vec<i32> {
    let mut k = e.to_vec();
    k.sort_unstable_by(|a, b| b.cmp(a));
    k
}

// Terms ordered by orbit descending, then by exponent vector descending.
fn sorted_terms(p: &Poly) -> Vec<(&Vec<i32>, &Rational)> {
    let mut terms: Vec<_> = p.terms().collect();
    terms.sort_by(|a, b| (orbit_key(b.0), b.0).cmp(&(orbit_key(a.0), a.0)));
    terms
}

/// One line per term.
pub fn render_poly(p: &Poly, prefix: &str, unit: ExponentUnit) -> Vec<String> {
    if p.is_zero() {
        return vec!["0".into()];
    }
    sorted_terms(p)
        .into_iter()
        .map(|(e, c)| render_term(c, render_monomial(e, prefix, unit)))
        .collect()
}

/// A symmetric polynomial with every orbit expanded, one line per term.
pub fn render_symmetric(s: &SparseSymPoly, prefix: &str, unit: ExponentUnit) -> Vec<String> {
    render_poly(&s.to_poly(), prefix, unit)
}

/// An `a`-indexed table in `1/z^{2a+2}` notation: `5/8 / (z1^2 z2^6)`.
pub fn render_inverse_z(s: &SparseSymPoly) -> Vec<String> {
    if s.is_zero() {
        return vec!["0".into()];
    }
    sorted_terms(&s.to_poly())
        .into_iter()
        .map(|(a, c)| {
            let zs: Vec<i32> = a.iter().map(|&a| 2 * a + 2).collect();
            format!("{c} / ({})", render_monomial(&zs, "z", ExponentUnit::Whole))
        })
        .collect()
}

/// `[{"orbit": [...], "coeff": "p/q"}, ...]`, orbits descending. Half-unit
/// exponents are emitted as strings such as `"3/2"`.
pub fn orbits_json(s: &SparseSymPoly, unit: ExponentUnit) -> Value {
    let records: Vec<Value> = s
        .orbits()
        .rev()
        .map(|(k, c)| {
            let orbit: Value = match unit {
                ExponentUnit::Whole => json!(k),
                ExponentUnit::Half => json!(k.iter().map(|&e| unit.render(e)).collect::<Vec<_>>()),
            };
            json!({ "orbit": orbit, "coeff": c.to_string() })
        })
        .collect();
    Value::Array(records)
}
