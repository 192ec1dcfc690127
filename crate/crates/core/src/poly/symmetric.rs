use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::Poly;
use crate::error::{Error, Result};
use crate::rational::{factorial, Rational};

/// Symmetric sparse polynomial stored as one coefficient per permutation
/// orbit of exponent vectors. Orbit keys are sorted descending.
///
/// What an exponent means (a power of `w`, a half-step power, or the index
/// `a` in `1/z^{2a+2}`) is up to the caller.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseSymPoly {
    nvars: usize,
    orbits: BTreeMap<Vec<i32>, Rational>,
}

impl SparseSymPoly {
    pub fn zero(nvars: usize) -> Self {
        SparseSymPoly {
            nvars,
            orbits: BTreeMap::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.orbits.is_empty()
    }

    /// Adds `c` to the orbit containing `exps` (any ordering).
    pub fn add_orbit(&mut self, exps: &[i32], c: Rational) {
        assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        let key = canonical(exps);
        let slot = self.orbits.entry(key.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.orbits.remove(&key);
        }
    }

    /// Orbit representatives with coefficients, in ascending key order.
    pub fn orbits(&self) -> impl DoubleEndedIterator<Item = (&Vec<i32>, &Rational)> {
        self.orbits.iter()
    }

    pub fn orbit_count(&self) -> usize {
        self.orbits.len()
    }

    /// Coefficient of any member of the orbit of `exps`.
    pub fn coeff(&self, exps: &[i32]) -> Rational {
        self.orbits
            .get(&canonical(exps))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Converts a full polynomial, checking that it is symmetric.
    pub fn from_poly(p: &Poly) -> Result<Self> {
        let mut groups: BTreeMap<Vec<i32>, Vec<&Rational>> = BTreeMap::new();
        for (e, c) in p.terms() {
            groups.entry(canonical(e)).or_default().push(c);
        }
        let mut out = SparseSymPoly::zero(p.nvars());
        for (key, coeffs) in groups {
            let size = orbit_size(&key);
            if BigInt::from(coeffs.len()) != size {
                return Err(Error::Consistency(format!(
                    "not symmetric: orbit {key:?} has {} of {size} members",
                    coeffs.len()
                )));
            }
            if coeffs.iter().any(|c| *c != coeffs[0]) {
                return Err(Error::Consistency(format!(
                    "not symmetric: unequal coefficients on orbit {key:?}"
                )));
            }
            out.orbits.insert(key, coeffs[0].clone());
        }
        Ok(out)
    }

    /// Expands every orbit into its distinct permutations.
    pub fn to_poly(&self) -> Poly {
        let mut p = Poly::zero(self.nvars);
        for (key, c) in &self.orbits {
            for e in distinct_permutations(key) {
                p.add_term(e, c.clone());
            }
        }
        p
    }

    /// `sum_orbits coeff * |orbit|`, grouped by total degree: the
    /// restriction to the diagonal `x_1 = ... = x_n = x`, without
    /// expanding orbits.
    pub fn diagonal(&self) -> Poly {
        let mut p = Poly::zero(1);
        for (key, c) in &self.orbits {
            let deg: i32 = key.iter().sum();
            p.add_term(vec![deg], c * &Rational::from(orbit_size(key)));
        }
        p
    }

    /// Applies `f` to each orbit representative. `f` must commute with
    /// permutations (act the same way on every slot).
    pub fn map_orbits(
        &self,
        mut f: impl FnMut(&[i32], &Rational) -> Option<(Vec<i32>, Rational)>,
    ) -> SparseSymPoly {
        let mut out = SparseSymPoly::zero(self.nvars);
        for (key, c) in &self.orbits {
            if let Some((e, c2)) = f(key, c) {
                out.add_orbit(&e, c2);
            }
        }
        out
    }

    /// The common total degree, or `None` if terms differ in degree (or
    /// the polynomial is zero).
    pub fn homogeneous_degree(&self) -> Option<i32> {
        let mut degs = self.orbits.keys().map(|k| k.iter().sum::<i32>());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }
}

fn canonical(exps: &[i32]) -> Vec<i32> {
    let mut k = exps.to_vec();
    k.sort_unstable_by(|a, b| b.cmp(a));
    k
}

/// Number of distinct permutations of a multiset.
pub fn orbit_size(exps: &[i32]) -> BigInt {
    let mut counts: BTreeMap<i32, usize> = BTreeMap::new();
    for &e in exps {
        *counts.entry(e).or_default() += 1;
    }
    counts
        .values()
        .fold(factorial(exps.len()), |acc, &m| acc / factorial(m))
}

/// All distinct orderings of a multiset, in lexicographic order.
pub fn distinct_permutations(exps: &[i32]) -> Vec<Vec<i32>> {
    let mut cur = exps.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    // next lexicographic permutation
    while let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) {
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
    out
}
