//! The residue recursion on the Airy curve, over truncated Laurent series.

mod recursion;
mod series;

pub use recursion::{eo_table, eo_w, truncation, WTable};
pub use series::{b02_series, kernel_series, residue, Sign, ZSeries};
