use dashu::rational::RBig;
use intcheb::poly::{chebyshev_04, prime_cyclotomic_product};
use intcheb::schur::{
    generalized_mahler_hypothesis_report, lipschitz_mean_bound_check, schur_growth_check, trace_mean_table, FamilySpec, RowVerdict, Verdict,
};
use intcheb::Error;

#[test]
fn growth_rejects_roots_outside_disk() {
    assert!(matches!(schur_growth_check(&chebyshev_04(10), 1, 3, 1e-12), Err(Error::Precondition(_))));
}

#[test]
fn growth_below_minimum_degree_is_informational() {
    let p = prime_cyclotomic_product(7);
    assert_eq!(p.degree(), 51);
    let r = schur_growth_check(&p, 1, 3, 1e-12).unwrap();
    assert!(matches!(r.verdict, Verdict::Informational { .. }), "{:?}", r.verdict);
}

#[test]
fn lipschitz_examples() {
    let r = lipschitz_mean_bound_check(&prime_cyclotomic_product(8), 2, 1e-12).unwrap();
    assert_eq!(r.verdict, Verdict::AllHold);
    let row = &r.rows[0];
    // s_2 = sum over the first 8 primes of (p - 1 if p | 2 else -1) = 1 - 7 = -6
    assert!(row.lhs.contains(6.0 / 69.0));
    assert!(row.margin.lower > 0.0);
    // every root far outside the annulus contributes nothing
    let far = intcheb::IntPoly::from_i64s(&[-27, 0, 0, 1]);
    let r = lipschitz_mean_bound_check(&far, 1, 1e-12).unwrap();
    assert_eq!(r.rows[0].lhs.value, 0.0);
    assert_eq!(r.rows[0].verdict, RowVerdict::Holds);
}

#[test]
fn trace_table_checks_hold() {
    let t = trace_mean_table(&FamilySpec::Chebyshev04Trace { primes: vec![5, 7, 11, 13] }, 3, 1e-12).unwrap();
    assert_eq!(t.check.verdict, Verdict::AllHold);
    assert!(t.rows.iter().all(|r| r.certified));
    let bad = FamilySpec::UserList { polys: vec![vec!["1".into(), "0".into(), "1".into()]] };
    assert!(matches!(trace_mean_table(&bad, 2, 1e-12), Err(Error::Precondition(_))));
}

#[test]
fn mahler_hypothesis_examples() {
    let t = generalized_mahler_hypothesis_report(&FamilySpec::Chebyshev04 { degrees: vec![3, 8, 21] }, &RBig::from(2), 1e-12).unwrap();
    for row in &t.rows {
        assert!(row.hypothesis_holds && row.mahler_root.value == 1.0, "{row:?}");
        assert_eq!(row.mean, "2");
    }
    // t_n(x - 1): roots moved to [1, 5], examined with c = 3
    let shifted: Vec<Vec<String>> = [4usize, 9]
        .iter()
        .map(|&n| {
            let p = intcheb::poly::change_variable(&chebyshev_04(n).to_rat(), &intcheb::poly::VariableChange::Affine {
                from: intcheb::Interval::from_i64(0, 4).unwrap(),
                to: intcheb::Interval::from_i64(1, 5).unwrap(),
            });
            p.to_int().unwrap().to_strings()
        })
        .collect();
    let t = generalized_mahler_hypothesis_report(&FamilySpec::UserList { polys: shifted }, &RBig::from(3), 1e-12).unwrap();
    for row in &t.rows {
        assert!(row.hypothesis_holds && row.mahler_root.value == 1.0, "{row:?}");
        assert_eq!(row.mean, "3");
    }
    // (x - 2)(x - 5): the root 5 escapes [0, 4]
    let esc = FamilySpec::UserList { polys: vec![vec!["10".into(), "-7".into(), "1".into()]] };
    let t = generalized_mahler_hypothesis_report(&esc, &RBig::from(2), 1e-12).unwrap();
    assert!(!t.rows[0].hypothesis_holds && t.rows[0].mahler_root.lower > 1.0);
}
