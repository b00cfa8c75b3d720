//! Finite-degree checks of growth, equidistribution and trace inequalities
//! over constructed polynomial families.

mod check;
mod family;
mod growth;
mod trace;

pub use check::{CheckResult, CheckRow, RowVerdict, Verdict, CSV_HEADER};
pub use family::{FamilySpec, Member};
pub use growth::{lipschitz_mean_bound_check, sampled_lipschitz, schur_growth_check, test_function, MEAN_CEILING, MIN_DEGREE};
pub use trace::{generalized_mahler_hypothesis_report, trace_mean_table, MahlerHypothesisRow, MahlerHypothesisTable, RatioCell, TraceRow, TraceTable};
