use intcheb::extremal::{
    exhaustive_integer_chebyshev, factor_exponent_optimize, hilbert_upper_bound, leading_coeff_lower_bound, trigub_interval_report, FactorBasis,
    FactorOptions,
};
use intcheb::{IntPoly, Interval};

fn ip(c: &[i64]) -> IntPoly {
    IntPoly::from_i64s(c)
}

fn unit() -> Interval {
    Interval::from_i64(0, 1).unwrap()
}

#[test]
fn hilbert_examples() {
    assert_eq!(hilbert_upper_bound(&unit()).value.value, 0.5);
    assert_eq!(hilbert_upper_bound(&Interval::from_i64(0, 4).unwrap()).value.value, 1.0);
    assert!(hilbert_upper_bound(&Interval::from_i64(-1, 1).unwrap()).value.contains(0.5f64.sqrt()));
}

#[test]
fn trigub_examples() {
    let one = trigub_interval_report(1).unwrap();
    assert!(one.lower.contains(1.0 / 3.0));
    assert!(one.upper.contains(0.2f64.sqrt()));
    let ten = trigub_interval_report(10).unwrap();
    assert!(ten.lower.contains(1.0 / 12.0));
    assert!(ten.ratio.lower > one.ratio.upper);
    let ratios: Vec<f64> = (1..=100).map(|m| trigub_interval_report(m).unwrap().ratio.value).collect();
    assert!(ratios.windows(2).all(|w| w[0] < w[1]) && ratios[99] < 1.0 && ratios[99] > 0.999);
    assert!(trigub_interval_report(0).is_err());
}

#[test]
fn exhaustive_examples() {
    let r = exhaustive_integer_chebyshev(&Interval::from_i64(0, 5).unwrap(), 3, 2, 1_000_000).unwrap();
    assert!(r.rows.iter().all(|row| row.winner == vec!["1"] && row.norm.value == 1.0));
    let r = exhaustive_integer_chebyshev(&unit(), 2, 2, 1_000_000).unwrap();
    assert_eq!(r.rows[1].winner, vec!["0", "-1", "1"]);
    assert_eq!(r.rows[1].norm.value, 0.25);
    let r = exhaustive_integer_chebyshev(&unit(), 1, 5, 1_000_000).unwrap();
    assert_eq!(r.rows[0].norm.value, 1.0);
}

#[test]
fn factor_examples() {
    let opts = FactorOptions { realize_degree: None, ..FactorOptions::default() };
    let pair = FactorBasis::new(vec![ip(&[0, 1]), ip(&[1, -1])], &unit()).unwrap();
    let r = factor_exponent_optimize(&pair, &unit(), &opts).unwrap();
    assert!(r.weights.s.iter().all(|s| (s - 0.5).abs() <= opts.lp_eps), "{:?}", r.weights);
    assert!((r.report.value.value - 0.5).abs() <= opts.lp_eps);

    assert!(FactorBasis::new(vec![ip(&[1])], &unit()).is_err());

    let four = FactorBasis::new(vec![ip(&[0, 1]), ip(&[1, -1]), ip(&[-1, 2]), ip(&[1, -5, 5])], &unit()).unwrap();
    let v = factor_exponent_optimize(&four, &unit(), &opts).unwrap().report.value.value;
    assert!(0.4213 < v && v < 0.5, "{v}");
    assert!((v - 0.43120440).abs() < 1e-8, "{v}");
}

#[test]
fn leading_examples() {
    let r = leading_coeff_lower_bound(&ip(&[0, 0, 1, 0, -1]), &Interval::from_i64(-1, 1).unwrap(), 1e-12).unwrap();
    assert!(r.report.value.contains(2f64.sqrt()) && !r.vacuous);
    let r = leading_coeff_lower_bound(&ip(&[1]), &unit(), 1e-12).unwrap();
    assert!(r.vacuous && r.report.value.value == 1.0);
    assert_eq!(r.generic.value, 2.0);
}
