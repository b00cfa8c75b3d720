use dashu::rational::RBig;
use serde::Serialize;

use crate::enclosure::{format_f64, Enclosure};
use crate::numeric::{widen_down, widen_up};

/// Outcome of one inequality instance `lhs <= rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowVerdict {
    Holds,
    Violated,
    /// The enclosures overlap; no claim either way.
    Inconclusive,
}

impl RowVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            RowVerdict::Holds => "holds",
            RowVerdict::Violated => "violated",
            RowVerdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRow {
    pub n: usize,
    pub quantity: String,
    pub lhs: Enclosure,
    pub rhs: Enclosure,
    /// `rhs - lhs`.
    pub margin: Enclosure,
    pub verdict: RowVerdict,
    /// Reported for context only; never decides the overall verdict.
    pub informational: bool,
}

impl CheckRow {
    /// Decided from the enclosures: violated only when the margin is
    /// negative beyond the propagated error.
    pub fn new(n: usize, quantity: impl Into<String>, lhs: Enclosure, rhs: Enclosure) -> Self {
        let margin = difference(&rhs, &lhs);
        let verdict = if rhs.lower >= lhs.upper {
            RowVerdict::Holds
        } else if rhs.upper < lhs.lower {
            RowVerdict::Violated
        } else {
            RowVerdict::Inconclusive
        };
        CheckRow { n, quantity: quantity.into(), lhs, rhs, margin, verdict, informational: false }
    }

    /// Both sides exact rationals: the verdict is exact too.
    pub fn exact(n: usize, quantity: impl Into<String>, lhs: &RBig, rhs: &RBig) -> Self {
        let mut row = Self::new(n, quantity, Enclosure::from_rational(lhs), Enclosure::from_rational(rhs));
        row.margin = Enclosure::from_rational(&(rhs - lhs));
        row.verdict = if lhs <= rhs { RowVerdict::Holds } else { RowVerdict::Violated };
        row
    }

    /// Keeps the enclosures but overrides the verdict with an exact decision.
    pub fn decided(mut self, holds: bool) -> Self {
        self.verdict = if holds { RowVerdict::Holds } else { RowVerdict::Violated };
        self
    }

    pub fn informational(mut self) -> Self {
        self.informational = true;
        self
    }
}

fn difference(a: &Enclosure, b: &Enclosure) -> Enclosure {
    Enclosure::new(a.value - b.value, widen_down(a.lower - b.upper), widen_up(a.upper - b.lower))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict {
    AllHold,
    Violation { n: usize, quantity: String },
    Inconclusive,
    /// The theorem's hypotheses are not met; rows are context only.
    Informational { reason: String },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub rows: Vec<CheckRow>,
    pub verdict: Verdict,
}

impl CheckResult {
    pub fn new(id: impl Into<String>, rows: Vec<CheckRow>, hypothesis_failure: Option<String>) -> Self {
        let verdict = if let Some(reason) = hypothesis_failure {
            Verdict::Informational { reason }
        } else if let Some(bad) = rows.iter().find(|r| !r.informational && r.verdict == RowVerdict::Violated) {
            Verdict::Violation { n: bad.n, quantity: bad.quantity.clone() }
        } else if rows.iter().any(|r| !r.informational && r.verdict == RowVerdict::Inconclusive) {
            Verdict::Inconclusive
        } else {
            Verdict::AllHold
        };
        CheckResult { id: id.into(), rows, verdict }
    }

    pub fn all_hold(&self) -> bool {
        self.verdict == Verdict::AllHold
    }

    /// One line per row; every enclosure is spread over value, lower and
    /// upper columns so the CSV carries the same data as the JSON.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let cells = [
                r.n.to_string(),
                r.quantity.clone(),
                enclosure_cells(&r.lhs),
                enclosure_cells(&r.rhs),
                enclosure_cells(&r.margin),
                r.verdict.as_str().to_string(),
                r.informational.to_string(),
            ];
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

pub const CSV_HEADER: &str =
    "n,quantity,lhs,lhs_lower,lhs_upper,rhs,rhs_lower,rhs_upper,margin,margin_lower,margin_upper,verdict,informational";

pub(crate) fn enclosure_cells(e: &Enclosure) -> String {
    format!("{},{},{}", format_f64(e.value), format_f64(e.lower), format_f64(e.upper))
}
