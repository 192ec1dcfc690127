use std::ops::{Add, Mul, Neg, Sub};

use super::{Poly, SparseSymPoly};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Polynomial whose exponents live in `(1/2) Z`.
///
/// Each exponent is stored as an integer count of half-steps, so `w^{3/2}`
/// is stored as `3`. Calculus (derivatives, antiderivatives) accounts for
/// the half-step scale.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HalfPowerPoly(Poly);

impl HalfPowerPoly {
    pub fn zero(nvars: usize) -> Self {
        HalfPowerPoly(Poly::zero(nvars))
    }

    /// Monomial with exponents given in half-steps.
    pub fn monomial(half_steps: Vec<i32>, c: Rational) -> Self {
        HalfPowerPoly(Poly::monomial(half_steps, c))
    }

    /// Wraps a polynomial whose exponents are already half-step counts.
    pub fn from_half_steps(p: Poly) -> Self {
        HalfPowerPoly(p)
    }

    /// Lifts an integer-exponent polynomial (doubling every exponent).
    pub fn from_integer_poly(p: &Poly) -> Self {
        HalfPowerPoly(p.flat_map_terms(p.nvars(), |e, c| {
            std::iter::once((e.iter().map(|k| 2 * k).collect(), c.clone()))
        }))
    }

    /// Drops to integer exponents; fails if any exponent is fractional.
    pub fn to_integer_poly(&self) -> Result<Poly> {
        if let Some((e, _)) = self.0.terms().find(|(e, _)| e.iter().any(|k| k % 2 != 0)) {
            return Err(Error::Consistency(format!(
                "half-integer exponent {e:?} where an integer polynomial was expected"
            )));
        }
        Ok(self.0.flat_map_terms(self.0.nvars(), |e, c| {
            std::iter::once((e.iter().map(|k| k / 2).collect(), c.clone()))
        }))
    }

    /// Half-step representation.
    pub fn half_steps(&self) -> &Poly {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &Rational)> {
        self.0.terms()
    }

    pub fn add_term(&mut self, half_steps: Vec<i32>, c: Rational) {
        self.0.add_term(half_steps, c);
    }

    pub fn add_assign(&mut self, other: &HalfPowerPoly) {
        self.0.add_assign(&other.0);
    }

    pub fn scale(&self, c: &Rational) -> Self {
        HalfPowerPoly(self.0.scale(c))
    }

    /// Multiplies by `x_var^{half_steps / 2}`.
    pub fn shift(&self, var: usize, half_steps: i32) -> Self {
        HalfPowerPoly(self.0.shift(var, half_steps))
    }

    pub fn embed(&self, target_nvars: usize, map: &[usize]) -> Self {
        HalfPowerPoly(self.0.embed(target_nvars, map))
    }

    /// `d/dx_var`: `x^{k/2} -> (k/2) x^{(k-2)/2}`.
    pub fn derivative(&self, var: usize) -> Self {
        HalfPowerPoly(self.0.flat_map_terms(self.nvars(), |e, c| {
            let k = e[var];
            let mut e = e.to_vec();
            e[var] -= 2;
            std::iter::once((e, c * &Rational::new(k as i64, 2)))
        }))
    }

    /// Antiderivative in `var` with zero constant of integration. Fails on
    /// a `x^{-1}` term, which has no power-law antiderivative.
    pub fn antiderivative(&self, var: usize) -> Result<Self> {
        let mut out = Poly::zero(self.nvars());
        for (e, c) in self.0.terms() {
            let k = e[var] + 2;
            if k == 0 {
                return Err(Error::Consistency(format!(
                    "term {e:?} integrates to a logarithm"
                )));
            }
            let mut e = e.clone();
            e[var] = k;
            out.add_term(e, c * &Rational::new(2, k as i64));
        }
        Ok(HalfPowerPoly(out))
    }

    /// Restriction to `x_1 = ... = x_n = x`, a one-variable polynomial.
    pub fn diagonal(&self) -> Self {
        self.embed(1, &vec![0; self.nvars()])
    }

    pub fn to_symmetric(&self) -> Result<SparseSymPoly> {
        SparseSymPoly::from_poly(&self.0)
    }

    pub fn from_symmetric(s: &SparseSymPoly) -> Self {
        HalfPowerPoly(s.to_poly())
    }
}

impl Add for &HalfPowerPoly {
    type Output = HalfPowerPoly;
    fn add(self, rhs: &HalfPowerPoly) -> HalfPowerPoly {
        HalfPowerPoly(&self.0 + &rhs.0)
    }
}

impl Sub for &HalfPowerPoly {
    type Output = HalfPowerPoly;
    fn sub(self, rhs: &HalfPowerPoly) -> HalfPowerPoly {
        HalfPowerPoly(&self.0 - &rhs.0)
    }
}

impl Mul for &HalfPowerPoly {
    type Output = HalfPowerPoly;
    fn mul(self, rhs: &HalfPowerPoly) -> HalfPowerPoly {
        HalfPowerPoly(&self.0 * &rhs.0)
    }
}

impl Neg for &HalfPowerPoly {
    type Output = HalfPowerPoly;
    fn neg(self) -> HalfPowerPoly {
        HalfPowerPoly(-&self.0)
    }
}
