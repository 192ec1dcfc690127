use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::ops::{Add, Mul, Neg, Sub};

use crate::rational::Rational;

/// Sparse Laurent polynomial in a fixed number of variables with exact
/// rational coefficients. Exponent vectors are stored in full; zero
/// coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<i32>, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn monomial(exps: Vec<i32>, c: Rational) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    /// The single variable `x_var`.
    pub fn var(nvars: usize, var: usize) -> Self {
        let mut e = vec![0; nvars];
        e[var] = 1;
        Self::monomial(e, Rational::one())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[i32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, exps: Vec<i32>, c: Rational) {
        assert_eq!(exps.len(), self.nvars, "exponent vector length");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Poly) {
        assert_eq!(self.nvars, other.nvars);
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c.clone());
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Multiplies by `x_var^k`.
    pub fn shift(&self, var: usize, k: i32) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e[var] += k;
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// Re-expresses the polynomial in `target_nvars` variables, sending
    /// variable `i` to `map[i]`. Several variables may land on the same
    /// target, which restricts to a diagonal.
    pub fn embed(&self, target_nvars: usize, map: &[usize]) -> Poly {
        assert_eq!(map.len(), self.nvars);
        let mut out = Poly::zero(target_nvars);
        for (e, c) in &self.terms {
            let mut t = vec![0; target_nvars];
            for (i, &k) in e.iter().enumerate() {
                t[map[i]] += k;
            }
            out.add_term(t, c.clone());
        }
        out
    }

    /// Applies `f` to every term and sums the results into a polynomial in
    /// `target_nvars` variables.
    pub fn flat_map_terms<F, I>(&self, target_nvars: usize, mut f: F) -> Poly
    where
        F: FnMut(&[i32], &Rational) -> I,
        I: IntoIterator<Item = (Vec<i32>, Rational)>,
    {
        let mut out = Poly::zero(target_nvars);
        for (e, c) in &self.terms {
            for (e2, c2) in f(e, c) {
                out.add_term(e2, c2);
            }
        }
        out
    }

    /// Ordinary partial derivative in `var`.
    pub fn derivative(&self, var: usize) -> Poly {
        self.flat_map_terms(self.nvars, |e, c| {
            let k = e[var];
            let mut e = e.to_vec();
            e[var] -= 1;
            std::iter::once((e, c * &Rational::from(k as i64)))
        })
    }

    /// The set of total degrees present.
    pub fn total_degrees(&self) -> BTreeSet<i32> {
        self.terms.keys().map(|e| e.iter().sum()).collect()
    }

    /// Sum of coefficients (value at the all-ones point).
    pub fn coefficient_sum(&self) -> Rational {
        self.terms.values().sum()
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign(&-rhs);
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = Poly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<i32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64) -> Rational {
        Rational::from(p)
    }

    #[test]
    fn arithmetic_cancels() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let s = &x + &y;
        let d = &x - &y;
        let prod = &s * &d;
        let expect = &(&x * &x) - &(&y * &y);
        assert_eq!(prod, expect);
        assert!((&prod - &expect).is_zero());
    }

    #[test]
    fn embed_restricts_to_diagonal() {
        // x0 x1^2 x2 -> (y0, y0, y1) gives y0^3 y1
        let p = Poly::monomial(vec![1, 2, 1], r(5));
        let q = p.embed(2, &[0, 0, 1]);
        assert_eq!(q, Poly::monomial(vec![3, 1], r(5)));
    }

    #[test]
    fn derivative_of_laurent_term() {
        let p = Poly::monomial(vec![-2], r(3));
        assert_eq!(p.derivative(0), Poly::monomial(vec![-3], r(-6)));
        assert!(Poly::constant(1, r(7)).derivative(0).is_zero());
    }
}
