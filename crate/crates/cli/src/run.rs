//! Dispatch from parsed arguments to library calls.

use intcheb::extremal::{
    exhaustive_integer_chebyshev, factor_exponent_optimize, hilbert_upper_bound, leading_coeff_lower_bound, trigub_interval_report, FactorBasis,
    FactorOptions,
};
use intcheb::numeric::{parse_rational, rational_to_f64};
use intcheb::poly::{discriminant, monic_chebyshev, monic_chebyshev_norm, newton_convert_to, resultant, NewtonDirection, SymmetricData};
use intcheb::roots::{find_roots_with, generalized_mahler, mahler_measure, sup_norm_with_argmax, RootOptions};
use intcheb::schur::{generalized_mahler_hypothesis_report, lipschitz_mean_bound_check, schur_growth_check, trace_mean_table};
use intcheb::Enclosure;
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{Command, IchebCommand, PolyCommand, SchurCommand};
use crate::input::{family, int_poly, interval, rat_poly, read};
use crate::CliError;

pub struct Outcome {
    pub value: Value,
    /// Table form for `--csv --wide`, where one exists.
    pub table: Option<String>,
    /// A budget ran out; the result is partial.
    pub exhausted: bool,
}

impl Outcome {
    fn of<T: Serialize>(v: &T) -> Self {
        Outcome { value: serde_json::to_value(v).expect("results serialize"), table: None, exhausted: false }
    }

    fn with_table(mut self, table: String) -> Self {
        self.table = Some(table);
        self
    }
}

pub fn run(cmd: &Command, eps: f64, precision_cap: usize) -> Result<Outcome, CliError> {
    if !(eps > 0.0) {
        return Err(intcheb::Error::InvalidArgument(format!("eps must be positive, got {eps}")).into());
    }
    Ok(match cmd {
        Command::Poly(p) => poly(p, eps)?,
        Command::Roots(a) => {
            let p = int_poly(&a.coeffs)?;
            Outcome::of(&find_roots_with(&p, &RootOptions { eps, precision_cap })?)
        }
        Command::Mahler(a) => {
            let p = int_poly(&a.poly.coeffs)?;
            match &a.c {
                None => Outcome::of(&json!({ "mahler": mahler_measure(&p, eps)? })),
                Some(c) => {
                    let c = parse_rational(c.trim())?;
                    let g = generalized_mahler(&p, &c, eps)?;
                    Outcome::of(&json!({ "c": c.to_string(), "mahler": g.value, "boundary_roots": g.boundary_roots }))
                }
            }
        }
        Command::Cheb(a) => {
            let i = interval(&a.interval)?;
            let t = monic_chebyshev(a.n, &i);
            let norm = monic_chebyshev_norm(a.n, &i);
            Outcome::of(&json!({
                "n": a.n,
                "interval": i,
                "coeffs": t.to_strings(),
                "norm_exact": norm.to_string(),
                "norm": Enclosure::from_rational(&norm),
            }))
        }
        Command::Icheb(c) => icheb(c, eps)?,
        Command::Schur(c) => schur(c, eps)?,
        Command::Families(a) => {
            let members = family(a)?.members()?;
            let list: Vec<Value> = members
                .iter()
                .map(|m| json!({ "label": m.label, "degree": m.poly.degree(), "coeffs": m.poly.to_strings() }))
                .collect();
            Outcome::of(&json!({ "members": list }))
        }
        Command::Replay(_) => unreachable!("replay is resolved before dispatch"),
    })
}

fn poly(cmd: &PolyCommand, eps: f64) -> Result<Outcome, CliError> {
    Ok(match cmd {
        PolyCommand::Eval(a) => {
            let p = rat_poly(&a.poly.coeffs)?;
            let x = parse_rational(a.x.trim())?;
            let v = p.eval(&x);
            Outcome::of(&json!({ "x": x.to_string(), "value": v.to_string(), "approx": rational_to_f64(&v) }))
        }
        PolyCommand::Norm(a) => {
            let p = rat_poly(&a.poly.coeffs)?;
            let i = interval(&a.interval)?;
            let s = sup_norm_with_argmax(&p, &i, eps)?;
            Outcome::of(&json!({ "interval": i, "norm": s.norm, "argmax": s.argmax }))
        }
        PolyCommand::Resultant(a) => {
            let (p, q) = (int_poly(&a.p)?, int_poly(&a.q)?);
            Outcome::of(&json!({ "resultant": resultant(&p, &q)?.to_string() }))
        }
        PolyCommand::Discriminant(a) => Outcome::of(&json!({ "discriminant": discriminant(&int_poly(&a.coeffs)?)?.to_string() })),
        PolyCommand::Newton(a) => {
            let p = int_poly(&a.poly.coeffs)?;
            let n = p.degree();
            let data = SymmetricData::from_poly(&p, n)?;
            Outcome::of(&newton_convert_to(&data, NewtonDirection::ElementaryToPowerSums, a.order.unwrap_or(n))?)
        }
    })
}

fn icheb(cmd: &IchebCommand, eps: f64) -> Result<Outcome, CliError> {
    Ok(match cmd {
        IchebCommand::Hilbert(a) => Outcome::of(&hilbert_upper_bound(&interval(&a.interval)?)),
        IchebCommand::Trigub(a) => Outcome::of(&trigub_interval_report(a.m)?),
        IchebCommand::Exhaustive(a) => {
            let r = exhaustive_integer_chebyshev(&interval(&a.interval)?, a.nmax, a.height, a.budget)?;
            let mut out = Outcome::of(&r);
            out.exhausted = r.truncated;
            out
        }
        IchebCommand::Factors(a) => {
            let i = interval(&a.interval)?;
            let basis = match &a.basis {
                Some(path) => FactorBasis::from_json(&read(path)?, &i)?,
                None if i == intcheb::Interval::from_i64(0, 1)? => FactorBasis::default_unit_interval(),
                None => return Err(CliError::usage("invalid_argument", "--basis is required away from [0,1]")),
            };
            let opts = FactorOptions {
                grid_size: a.grid_size,
                grid_eps: a.grid_eps,
                lp_eps: a.lp_eps,
                realize_degree: (a.degree > 0).then_some(a.degree),
                ..FactorOptions::default()
            };
            Outcome::of(&factor_exponent_optimize(&basis, &i, &opts)?)
        }
        IchebCommand::Leading(a) => {
            let r = int_poly(&a.poly.coeffs)?;
            Outcome::of(&leading_coeff_lower_bound(&r, &interval(&a.interval)?, eps)?)
        }
    })
}

fn schur(cmd: &SchurCommand, eps: f64) -> Result<Outcome, CliError> {
    Ok(match cmd {
        SchurCommand::Growth(a) => {
            let r = schur_growth_check(&int_poly(&a.poly.coeffs)?, a.leading_bound, a.mmax, eps)?;
            Outcome::of(&r).with_table(r.to_csv())
        }
        SchurCommand::Lipschitz(a) => {
            let r = lipschitz_mean_bound_check(&int_poly(&a.poly.coeffs)?, a.m, eps)?;
            Outcome::of(&r).with_table(r.to_csv())
        }
        SchurCommand::Trace(a) => {
            let t = trace_mean_table(&family(&a.family)?, a.mmax, eps)?;
            Outcome::of(&t).with_table(t.to_csv())
        }
        SchurCommand::MahlerHyp(a) => {
            let c = parse_rational(a.c.trim())?;
            let t = generalized_mahler_hypothesis_report(&family(&a.family)?, &c, eps)?;
            Outcome::of(&t).with_table(t.to_csv())
        }
    })
}
