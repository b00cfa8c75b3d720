//! Upper and lower bounds for the integer Chebyshev constant of an interval.

mod exhaustive;
mod factors;
mod hilbert;
mod leading;
mod report;

pub use exhaustive::{exhaustive_integer_chebyshev, ExhaustiveReport, ExhaustiveRow};
pub use factors::{factor_exponent_optimize, FactorBasis, FactorOptions, FactorReport, Realization, Weights};
pub use hilbert::{hilbert_upper_bound, trigub_interval_report, TrigubReport};
pub use leading::{generic_leading_bound_exact, leading_coeff_lower_bound, resultant_inequality, LeadingReport, ResultantCheck};
pub use report::{BoundKind, BoundReport, Certificate};
