use rayon::prelude::*;

use super::series::{b02_series, kernel_series, Sign, ZSeries};
use crate::correlator::{cells_with_chi, is_stable};
use crate::error::{Error, Result};
use crate::poly::{CellMap, Poly, SparseSymPoly};
use crate::rational::Rational;

/// `W_{g,n}` tables in `a`-exponent form, keyed by `(g, n)`.
pub type WTable = CellMap<SparseSymPoly>;

/// Truncation order for the `(g, n+1)` step.
pub fn truncation(g: u32, n: usize) -> i32 {
    6 * g as i32 - 4 + 2 * (n as i32 + 2) + 2
}

// Places a stable W factor into the z-series: slots listed in `active`
// become the integration variable (sign is irrelevant, W is even), slot j
// otherwise goes to spectator `spec[j]`.
fn stable_factor(w: &SparseSymPoly, active: usize, spec: &[usize], nspec: usize) -> ZSeries {
    let mut s = ZSeries::exact(nspec);
    for (a, c) in w.to_poly().terms() {
        let mut k = 0;
        let mut e = vec![0; nspec];
        for (slot, &ai) in a.iter().enumerate() {
            let pole = -2 * ai - 2;
            if slot < active {
                k += pole;
            } else {
                e[spec[slot - active]] += pole;
            }
        }
        s.add_term(k, e, c.clone());
    }
    s
}

fn lookup(lower: &WTable, g: u32, n: usize) -> Result<&SparseSymPoly> {
    lower.get(&(g, n)).ok_or(Error::MissingCell { g, n })
}

// W_{g1,|A|+1}(±z, z_A), including the unstable (0,2) factor. `None` for
// W_{0,1} = 0.
fn factor(
    lower: &WTable,
    g: u32,
    a: &[usize],
    sign: Sign,
    nspec: usize,
    m: i32,
) -> Result<Option<ZSeries>> {
    match (g, a.len() + 1) {
        (0, 1) => Ok(None),
        (0, 2) => Ok(Some(b02_series(sign, a[0], nspec, m))),
        (g, k) => Ok(Some(stable_factor(lookup(lower, g, k)?, 1, a, nspec))),
    }
}

/// `W_{g,n}(z_0, ..., z_{n-1})` by the residue recursion, as an `a`-exponent
/// table. Needs every stable cell of smaller Euler characteristic in
/// `lower`; unstable `W_{0,2}` enters through its expansion.
pub fn eo_w(g: u32, n: usize, lower: &WTable) -> Result<SparseSymPoly> {
    if !is_stable(g, n) {
        return Err(Error::Unstable { g, n });
    }
    let nspec = n;
    let rest = n - 1;
    let m = truncation(g, rest);
    let spectators: Vec<usize> = (1..=rest).collect();
    let mut body = ZSeries::exact(nspec);

    // W_{g-1,n+1}(z, -z, z_rest)
    if g >= 1 {
        if (g - 1, rest + 2) == (0, 2) {
            // 1/(z - (-z))^2
            body.add_term(-2, vec![0; nspec], Rational::new(1, 4));
        } else {
            let w = lookup(lower, g - 1, rest + 2)?;
            body = body.add(&stable_factor(w, 2, &spectators, nspec));
        }
    }

    for mask in 0u32..(1 << rest) {
        let (a1, a2): (Vec<usize>, Vec<usize>) =
            spectators.iter().partition(|&&j| mask & (1 << (j - 1)) != 0);
        for g1 in 0..=g {
            let g2 = g - g1;
            if (g1, a1.len()) == (0, 0) || (g2, a2.len()) == (0, 0) {
                continue;
            }
            let Some(f1) = factor(lower, g1, &a1, Sign::Plus, nspec, m)? else {
                continue;
            };
            let Some(f2) = factor(lower, g2, &a2, Sign::Minus, nspec, m)? else {
                continue;
            };
            body = body.add(&f1.mul(&f2));
        }
    }

    let res = kernel_series(nspec, m).residue_of_product(&body)?;
    to_a_form(g, n, &res.scale(&Rational::new(1, 2)))
}

// Converts z-exponents e = -2a - 2 to a, checking parity, the pole bound
// and symmetry.
fn to_a_form(g: u32, n: usize, p: &Poly) -> Result<SparseSymPoly> {
    let bound = -(6 * g as i32 - 4 + 2 * n as i32);
    let mut out = Poly::zero(p.nvars());
    for (e, c) in p.terms() {
        if e.iter().any(|&k| k % 2 != 0 || k > -2 || k < bound) {
            return Err(Error::Consistency(format!(
                "W_({g},{n}) term with z-exponents {e:?} is outside [{bound}, -2] or odd"
            )));
        }
        out.add_term(e.iter().map(|&k| (-k - 2) / 2).collect(), c.clone());
    }
    SparseSymPoly::from_poly(&out)
}

/// Every stable `W_{g,n}` with `2g - 2 + n <= max_chi`, one Euler
/// characteristic at a time. Cells of a shell run on `jobs` threads when
/// `jobs > 1`.
pub fn eo_table(max_chi: u32, jobs: usize) -> Result<WTable> {
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
    let mut table = WTable::new();
    for chi in 1..=max_chi {
        let cells = cells_with_chi(chi);
        let computed: Vec<Result<((u32, usize), SparseSymPoly)>> = match &pool {
            Some(pool) => pool.install(|| {
                cells
                    .par_iter()
                    .map(|&(g, n)| Ok(((g, n), eo_w(g, n, &table)?)))
                    .collect()
            }),
            None => cells
                .iter()
                .map(|&(g, n)| Ok(((g, n), eo_w(g, n, &table)?)))
                .collect(),
        };
        for cell in computed {
            let (key, w) = cell?;
            table.insert(key, w);
        }
    }
    Ok(table)
}
