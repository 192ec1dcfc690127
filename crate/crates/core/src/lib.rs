//! Exact intersection numbers on moduli spaces of curves and the generating
//! functions built from them: the DVV recursion, the residue recursion on
//! the Airy curve, polynomial recursions for the `omega` and `Omega`
//! packagings, and the WKB expansion of the quantum Airy curve.

pub mod cache;
pub mod correlator;
pub mod eo;
pub mod error;
pub mod poly;
pub mod rational;
pub mod verify;
pub mod wkb;

pub use correlator::{correlator_shell, CorrelatorKey, CorrelatorTable};
pub use eo::{eo_table, eo_w, WTable, ZSeries};
pub use error::{Error, Result};
pub use poly::{CellMap, HalfPowerPoly, Poly, SparseSymPoly};
pub use rational::{double_factorial, Rational};
pub use verify::{run_suite, Outcome, Params, Suite};
pub use wkb::{quantum_curve_report, Branch, QuantumCurveReport, WkbSeries};
