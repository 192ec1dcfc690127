//! Intersection numbers `<tau_{a_1} ... tau_{a_n}>_g` by the DVV recursion.
//!
//! Values are memoized in a [`CorrelatorTable`]. The recursion is evaluated
//! in the normalization `tilde tau_a = (2a+1)!! tau_a`, with the two
//! axioms `<tau_0^3>_0 = 1` and `<tau_1>_1 = 1/24` seeded directly.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::RwLock;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rational::{odd_double_factorial, Rational};

/// `2g - 2 + n > 0`.
pub fn is_stable(g: u32, n: usize) -> bool {
    2 * g as i64 - 2 + n as i64 > 0
}

fn binomial(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i as u64 + 1))
}

/// Canonical correlator key: genus plus exponents sorted descending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CorrelatorKey {
    genus: u32,
    exponents: Vec<u32>,
}

impl CorrelatorKey {
    pub fn new(genus: u32, exponents: &[u32]) -> Result<Self> {
        if exponents.is_empty() {
            return Err(Error::EmptyCorrelator);
        }
        if !is_stable(genus, exponents.len()) {
            return Err(Error::Unstable {
                g: genus,
                n: exponents.len(),
            });
        }
        Ok(Self::new_unchecked(genus, exponents.to_vec()))
    }

    fn new_unchecked(genus: u32, mut exponents: Vec<u32>) -> Self {
        exponents.sort_unstable_by(|a, b| b.cmp(a));
        CorrelatorKey { genus, exponents }
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn n(&self) -> usize {
        self.exponents.len()
    }

    /// `2g - 2 + n`.
    pub fn euler_characteristic(&self) -> i64 {
        2 * self.genus as i64 - 2 + self.n() as i64
    }

    /// `sum a_i == 3g - 3 + n`; all other keys vanish.
    pub fn satisfies_dimension(&self) -> bool {
        let total: i64 = self.exponents.iter().map(|&a| a as i64).sum();
        total == 3 * self.genus as i64 - 3 + self.n() as i64
    }

    /// Sort key for exports: `(2g - 2 + n, g, a)`.
    pub fn export_order(&self) -> (i64, u32, &[u32]) {
        (self.euler_characteristic(), self.genus, &self.exponents)
    }
}

/// Memo table for correlators.
///
/// Readers proceed concurrently; writes are idempotent, so two threads
/// racing on the same key store the same value.
#[derive(Debug)]
pub struct CorrelatorTable {
    entries: RwLock<HashMap<CorrelatorKey, Rational>>,
    hits: AtomicU64,
    misses: AtomicU64,
    tau0_cubed: Rational,
    tau1: Rational,
}

impl Default for CorrelatorTable {
    fn default() -> Self {
        Self::new()
    }
}

impl CorrelatorTable {
    pub fn new() -> Self {
        Self::with_base_values(Rational::one(), Rational::new(1, 24))
    }

    /// A table whose two axioms take the given values. Only useful for
    /// checking that downstream identities notice a wrong base.
    pub fn with_base_values(tau0_cubed: Rational, tau1: Rational) -> Self {
        CorrelatorTable {
            entries: RwLock::new(HashMap::new()),
            hits: AtomicU64::new(0),
            misses: AtomicU64::new(0),
            tau0_cubed,
            tau1,
        }
    }

    /// `<tau_{a_1} ... tau_{a_n}>_g`.
    pub fn correlator(&self, g: u32, a: &[i64]) -> Result<Rational> {
        let exps = a
            .iter()
            .map(|&x| u32::try_from(x).map_err(|_| Error::NegativeExponent(x)))
            .collect::<Result<Vec<_>>>()?;
        let key = CorrelatorKey::new(g, &exps)?;
        Ok(self.value(&key))
    }

    /// Value of a validated key.
    pub fn value(&self, key: &CorrelatorKey) -> Rational {
        if !key.satisfies_dimension() {
            return Rational::zero();
        }
        if let Some(v) = self.entries.read().unwrap().get(key) {
            self.hits.fetch_add(1, Ordering::Relaxed);
            return v.clone();
        }
        self.misses.fetch_add(1, Ordering::Relaxed);
        let v = self
            .base_value(key)
            .unwrap_or_else(|| self.dvv_with_insertion(key, 0));
        self.store(key.clone(), v.clone());
        v
    }

    fn base_value(&self, key: &CorrelatorKey) -> Option<Rational> {
        match (key.genus, key.exponents.as_slice()) {
            (0, [0, 0, 0]) => Some(self.tau0_cubed.clone()),
            (1, [1]) => Some(self.tau1.clone()),
            _ => None,
        }
    }

    fn store(&self, key: CorrelatorKey, v: Rational) {
        let mut entries = self.entries.write().unwrap();
        if let Some(old) = entries.get(&key) {
            debug_assert_eq!(old, &v, "memo table rewrite for {key:?}");
            return;
        }
        entries.insert(key, v);
    }

    /// Inserts a precomputed value (cache import). Rejects conflicting
    /// rewrites and keys off the dimension constraint.
    pub fn insert(&self, key: CorrelatorKey, v: Rational) -> Result<()> {
        if !key.satisfies_dimension() {
            return Err(Error::InvalidArgument(format!(
                "key {key:?} violates sum a_i = 3g - 3 + n"
            )));
        }
        let mut entries = self.entries.write().unwrap();
        match entries.get(&key) {
            Some(old) if old != &v => Err(Error::InvalidArgument(format!(
                "conflicting values {old} and {v} for {key:?}"
            ))),
            Some(_) => Ok(()),
            None => {
                entries.insert(key, v);
                Ok(())
            }
        }
    }

    // <tilde tau ...>_g for arbitrary (possibly unstable) data; unstable
    // cells contribute nothing.
    fn tilde(&self, g: u32, exps: Vec<u32>) -> Rational {
        if !is_stable(g, exps.len()) {
            return Rational::zero();
        }
        let key = CorrelatorKey::new_unchecked(g, exps);
        if !key.satisfies_dimension() {
            return Rational::zero();
        }
        let mut v = self.value(&key);
        for &a in &key.exponents {
            v *= &odd_double_factorial(a);
        }
        v
    }

    /// One application of the DVV relation with the insertion at
    /// `special` (an index into the canonical exponent list) playing the
    /// role of `tau_{a_0}`. Sub-correlators come from the memo table.
    ///
    /// The two seeded axioms are returned as-is.
    pub fn dvv_with_insertion(&self, key: &CorrelatorKey, special: usize) -> Rational {
        if let Some(v) = self.base_value(key) {
            return v;
        }
        if !key.satisfies_dimension() {
            return Rational::zero();
        }
        let g = key.genus;
        let a0 = key.exponents[special];
        let rest: Vec<u32> = key
            .exponents
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != special)
            .map(|(_, &a)| a)
            .collect();
        let n = rest.len();

        let mut total = Rational::zero();

        for i in 0..n {
            if a0 + rest[i] == 0 {
                continue;
            }
            let mut sub: Vec<u32> = Vec::with_capacity(n);
            sub.push(a0 + rest[i] - 1);
            sub.extend(rest.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &a)| a));
            let t = self.tilde(g, sub);
            if !t.is_zero() {
                total += t * Rational::from(2 * rest[i] as i64 + 1);
            }
        }

        if a0 >= 2 {
            let mut groups: Vec<(u32, usize)> = Vec::new();
            for &a in &rest {
                match groups.last_mut() {
                    Some((b, c)) if *b == a => *c += 1,
                    _ => groups.push((a, 1)),
                }
            }
            let mut quad = Rational::zero();
            for b1 in 0..=a0 - 2 {
                let b2 = a0 - 2 - b1;
                if g >= 1 {
                    let mut sub = vec![b1, b2];
                    sub.extend_from_slice(&rest);
                    quad += self.tilde(g - 1, sub);
                }
                // sub-multisets of `rest`, weighted by the number of subsets
                // they stand for
                let mut take = vec![0usize; groups.len()];
                loop {
                    let (mut left, mut right) = (vec![b1], vec![b2]);
                    let mut weight = 1u64;
                    for (&(a, count), &k) in groups.iter().zip(&take) {
                        left.extend(std::iter::repeat_n(a, k));
                        right.extend(std::iter::repeat_n(a, count - k));
                        weight *= binomial(count, k);
                    }
                    if let Some(term) = self.split_term(g, left, right) {
                        quad += term * Rational::from(weight as i64);
                    }
                    // odometer step
                    let mut i = 0;
                    while i < groups.len() && take[i] == groups[i].1 {
                        take[i] = 0;
                        i += 1;
                    }
                    if i == groups.len() {
                        break;
                    }
                    take[i] += 1;
                }
            }
            total += quad * Rational::new(1, 2);
        }

        let mut norm = Rational::one();
        for &a in &key.exponents {
            norm *= &odd_double_factorial(a);
        }
        total / norm
    }

    // <left>_{g1} <right>_{g - g1}, with g1 forced by the dimension of `left`.
    fn split_term(&self, g: u32, left: Vec<u32>, right: Vec<u32>) -> Option<Rational> {
        let s = left.iter().sum::<u32>() as i64 + 3 - left.len() as i64;
        if s < 0 || s % 3 != 0 || s / 3 > g as i64 {
            return None;
        }
        let g1 = (s / 3) as u32;
        let g2 = g - g1;
        if !is_stable(g1, left.len()) || !is_stable(g2, right.len()) {
            return None;
        }
        let l = self.tilde(g1, left);
        if l.is_zero() {
            return None;
        }
        Some(l * self.tilde(g2, right))
    }

    /// Right-hand side of the string equation for a key containing a zero:
    /// `sum_i <tau_{a_i - 1} prod_{j != i} tau_{a_j}>_g`. `None` when the key
    /// has no `tau_0` or the reduced cell is unstable.
    pub fn string_equation(&self, key: &CorrelatorKey) -> Option<Rational> {
        let zero_at = key.exponents.iter().position(|&a| a == 0)?;
        let rest: Vec<u32> = key
            .exponents
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != zero_at)
            .map(|(_, &a)| a)
            .collect();
        if !is_stable(key.genus, rest.len()) {
            return None;
        }
        let mut sum = Rational::zero();
        for i in 0..rest.len() {
            if rest[i] == 0 {
                continue;
            }
            let mut sub = rest.clone();
            sub[i] -= 1;
            sum += self.value(&CorrelatorKey::new_unchecked(key.genus, sub));
        }
        Some(sum)
    }

    /// Populates every dimension-matching key with `2g - 2 + n <= max_chi`,
    /// one Euler-characteristic shell at a time. `jobs > 1` evaluates each
    /// shell on a thread pool.
    pub fn fill_shell(&self, max_chi: u32, jobs: usize) -> Result<()> {
        let pool = if jobs > 1 {
            Some(
                rayon::ThreadPoolBuilder::new()
                    .num_threads(jobs)
                    .build()
                    .map_err(|e| Error::InvalidArgument(e.to_string()))?,
            )
        } else {
            None
        };
        for chi in 1..=max_chi {
            let keys = shell_keys(chi);
            match &pool {
                Some(pool) => pool.install(|| {
                    keys.par_iter().for_each(|k| {
                        self.value(k);
                    })
                }),
                None => keys.iter().for_each(|k| {
                    self.value(k);
                }),
            }
        }
        Ok(())
    }

    /// All stored entries in export order.
    pub fn entries(&self) -> Vec<(CorrelatorKey, Rational)> {
        let mut out: Vec<_> = self
            .entries
            .read()
            .unwrap()
            .iter()
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        out.sort_by(|a, b| a.0.export_order().cmp(&b.0.export_order()));
        out
    }

    pub fn len(&self) -> usize {
        self.entries.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn hits(&self) -> u64 {
        self.hits.load(Ordering::Relaxed)
    }

    pub fn misses(&self) -> u64 {
        self.misses.load(Ordering::Relaxed)
    }
}

/// A table holding every nonzero-by-dimension correlator with
/// `2g - 2 + n <= max_chi`.
pub fn correlator_shell(max_chi: u32) -> CorrelatorTable {
    let table = CorrelatorTable::new();
    table.fill_shell(max_chi, 1).expect("single-threaded fill");
    table
}

/// Stable `(g, n)` cells with `n >= 1` and `2g - 2 + n == chi`.
pub fn cells_with_chi(chi: u32) -> Vec<(u32, usize)> {
    (0..=chi / 2 + 1)
        .filter_map(|g| {
            let n = chi as i64 - 2 * g as i64 + 2;
            (n >= 1).then_some((g, n as usize))
        })
        .collect()
}

/// Stable cells with `1 <= 2g - 2 + n <= max_chi`, ordered by shell.
pub fn cells_up_to(max_chi: u32) -> Vec<(u32, usize)> {
    (1..=max_chi).flat_map(cells_with_chi).collect()
}

/// Dimension-matching keys with `2g - 2 + n == chi`.
pub fn shell_keys(chi: u32) -> Vec<CorrelatorKey> {
    cells_with_chi(chi)
        .into_iter()
        .flat_map(|(g, n)| {
            let total = 3 * g as i64 - 3 + n as i64;
            partitions(total as u32, n)
                .into_iter()
                .map(move |a| CorrelatorKey::new_unchecked(g, a))
        })
        .collect()
}

/// Non-increasing sequences of `parts` non-negative integers summing to `total`.
pub fn partitions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    fn go(left: u32, parts: usize, cap: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 0 {
            if left == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        // the remaining `parts` entries are each <= the next one
        let lo = left.div_ceil(parts as u32);
        for v in (lo..=cap.min(left)).rev() {
            prefix.push(v);
            go(left - v, parts - 1, v, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(total, parts, total, &mut Vec::with_capacity(parts), &mut out);
    out
}
