use serde::Serialize;

use crate::enclosure::Enclosure;

/// What a [`BoundReport`] bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    /// Upper bound for the integer Chebyshev constant of an interval.
    UpperTz,
    /// Lower bound for `liminf |a_n|^(1/n)`.
    LowerL,
    Hilbert,
    Trigub,
}

/// The evidence behind a bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Certificate {
    /// A closed-form expression in the interval data.
    Formula { expression: String },
    /// An integer polynomial whose certified sup norm yields the value.
    Polynomial {
        coeffs: Vec<String>,
        degree: usize,
        norm: Enclosure,
    },
    /// Exponent weights over a factor basis, with the discretization used.
    Weights {
        factors: Vec<Vec<String>>,
        weights: Vec<f64>,
        grid_size: usize,
        exchange_rounds: usize,
    },
}

/// A named bound with its certificate and the parameters that produced it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub kind: BoundKind,
    pub value: Enclosure,
    pub certificate: Certificate,
    pub params: serde_json::Value,
}
