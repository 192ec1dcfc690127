use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::Rational;

/// Truncated Laurent series in an active variable `z` whose coefficients are
/// Laurent polynomials in spectator variables `z_0, ..., z_{k-1}`.
///
/// Every stratum up to and including `exact_through` is exact; nothing is
/// known above it. A Laurent polynomial is exact everywhere and carries
/// `exact_through == i32::MAX`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZSeries {
    nspec: usize,
    strata: BTreeMap<i32, Poly>,
    exact_through: i32,
}

fn clamp(x: i64) -> i32 {
    x.clamp(i32::MIN as i64, i32::MAX as i64) as i32
}

impl ZSeries {
    pub fn zero(nspec: usize, exact_through: i32) -> Self {
        ZSeries {
            nspec,
            strata: BTreeMap::new(),
            exact_through,
        }
    }

    /// An exact Laurent polynomial.
    pub fn exact(nspec: usize) -> Self {
        Self::zero(nspec, i32::MAX)
    }

    pub fn nspec(&self) -> usize {
        self.nspec
    }

    pub fn exact_through(&self) -> i32 {
        self.exact_through
    }

    /// Lowest `z` power present.
    pub fn lowest_order(&self) -> Option<i32> {
        self.strata.keys().next().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.strata.is_empty()
    }

    /// Coefficient of `z^k`.
    pub fn stratum(&self, k: i32) -> Poly {
        self.strata
            .get(&k)
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.nspec))
    }

    pub fn strata(&self) -> impl Iterator<Item = (i32, &Poly)> {
        self.strata.iter().map(|(&k, p)| (k, p))
    }

    /// Adds `c z^k prod z_i^{spec_i}`. Terms above the exactness bound are
    /// dropped.
    pub fn add_term(&mut self, k: i32, spec: Vec<i32>, c: Rational) {
        if k > self.exact_through {
            return;
        }
        let slot = self
            .strata
            .entry(k)
            .or_insert_with(|| Poly::zero(self.nspec));
        slot.add_term(spec, c);
        if slot.is_zero() {
            self.strata.remove(&k);
        }
    }

    pub fn add_stratum(&mut self, k: i32, p: &Poly) {
        for (e, c) in p.terms() {
            self.add_term(k, e.clone(), c.clone());
        }
    }

    pub fn add(&self, other: &ZSeries) -> ZSeries {
        assert_eq!(self.nspec, other.nspec);
        let mut out = ZSeries::zero(self.nspec, self.exact_through.min(other.exact_through));
        for s in [self, other] {
            for (k, p) in s.strata() {
                out.add_stratum(k, p);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> ZSeries {
        let mut out = ZSeries::zero(self.nspec, self.exact_through);
        for (k, p) in self.strata() {
            out.add_stratum(k, &p.scale(c));
        }
        out
    }

    // Exactness of a product: with lowest orders p and exactness bounds M,
    // the product is exact through min(Ma + pb, Mb + pa).
    fn product_bound(&self, other: &ZSeries) -> i32 {
        let low = |s: &ZSeries| s.lowest_order().map_or(i32::MAX as i64, |p| p as i64);
        let a = self.exact_through as i64 + low(other);
        let b = other.exact_through as i64 + low(self);
        clamp(a.min(b))
    }

    pub fn mul(&self, other: &ZSeries) -> ZSeries {
        assert_eq!(self.nspec, other.nspec);
        let mut out = ZSeries::zero(self.nspec, self.product_bound(other));
        for (ka, pa) in self.strata() {
            for (kb, pb) in other.strata() {
                let k = ka as i64 + kb as i64;
                if k <= out.exact_through as i64 {
                    out.add_stratum(k as i32, &(pa * pb));
                }
            }
        }
        out
    }

    /// `z^{-1}` coefficient of `self * other`, without forming the product.
    pub fn residue_of_product(&self, other: &ZSeries) -> Result<Poly> {
        if self.product_bound(other) < -1 {
            return Err(Error::Consistency(format!(
                "product known only through z^{}, residue needs z^-1",
                self.product_bound(other)
            )));
        }
        let mut out = Poly::zero(self.nspec);
        for (ka, pa) in self.strata() {
            if let Some(pb) = other.strata.get(&(-1 - ka)) {
                out.add_assign(&(pa * pb));
            }
        }
        Ok(out)
    }
}

/// The `z^{-1}` stratum.
pub fn residue(s: &ZSeries) -> Result<Poly> {
    if s.exact_through < -1 {
        return Err(Error::Consistency(format!(
            "series known only through z^{}, residue needs z^-1",
            s.exact_through
        )));
    }
    Ok(s.stratum(-1))
}

/// `1/(z (z_0^2 - z^2)) = sum_j z^{2j-1} z_0^{-2j-2}`, through `z^m`.
/// `z_0` is spectator 0 of `nspec`.
pub fn kernel_series(nspec: usize, m: i32) -> ZSeries {
    let mut s = ZSeries::zero(nspec, m);
    let mut j = 0;
    while 2 * j - 1 <= m {
        let mut e = vec![0; nspec];
        e[0] = -2 * j - 2;
        s.add_term(2 * j - 1, e, Rational::one());
        j += 1;
    }
    s
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

impl FromStr for Sign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+" | "plus" => Ok(Sign::Plus),
            "-" | "minus" => Ok(Sign::Minus),
            _ => Err(Error::InvalidArgument(format!("branch must be + or -, got {s:?}"))),
        }
    }
}

/// `1/(±z - z_i)^2 = sum_m (m+1) (±1)^m z^m z_i^{-m-2}`, through `z^m`.
pub fn b02_series(sign: Sign, i: usize, nspec: usize, m: i32) -> ZSeries {
    let mut s = ZSeries::zero(nspec, m);
    for k in 0..=m.max(-1) {
        let mut e = vec![0; nspec];
        e[i] = -k - 2;
        let c = (k as i64 + 1) * sign.factor().pow(k as u32);
        s.add_term(k, e, Rational::from(c));
    }
    s
}
