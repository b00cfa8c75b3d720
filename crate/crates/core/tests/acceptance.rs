//! End-to-end acceptance suite. Each criterion prints one PASS/FAIL line;
//! the test fails if any criterion does. Tolerances are pinned below.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;

use dashu::base::Abs;
use dashu::integer::IBig;
use dashu::rational::RBig;
use intcheb::extremal::{
    exhaustive_integer_chebyshev, factor_exponent_optimize, hilbert_upper_bound, leading_coeff_lower_bound, resultant_inequality, FactorBasis,
    FactorOptions,
};
use intcheb::numeric::{first_primes, parse_rational, rational_to_f64};
use intcheb::poly::{
    chebyshev_04, monic_chebyshev, newton_convert, prime_cyclotomic_product, resultant, NewtonDirection, SymmetricData,
};
use intcheb::roots::{arcsine_moment, conformal_map, generalized_mahler, mahler_measure, sup_norm, EquilibriumMeasure};
use intcheb::schur::{schur_growth_check, trace_mean_table, FamilySpec, Verdict};
use intcheb::{IntPoly, Interval};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CHEB_REL_WIDTH: f64 = 1e-10;
const FLOOR: f64 = 0.4213;
const SYMMETRIC_PAIR_TOL: f64 = 1e-6;
const SHIPPED_BASIS_VALUE: f64 = 0.42595298913;
const SHIPPED_BASIS_TOL: f64 = 1e-9;
const LEADING_TOL: f64 = 1e-10;
const MAHLER_TOL: f64 = 1e-8;
const MOMENT_TOL: f64 = 1e-8;
const CONFORMAL_TOL: f64 = 1e-12;
const TREND_GAP_CEILING: f64 = 0.10;
/// `sigma_m / C(200, m)` for `t_200` on `[0, 4]`, from the exact oracle below.
const RATIO_AT_200: [(usize, &str); 2] = [(2, "794/199"), (3, "1580/199")];

fn rat(s: &str) -> RBig {
    parse_rational(s).unwrap()
}

fn ints(c: &[i64]) -> IntPoly {
    IntPoly::from_i64s(c)
}

fn c1_chebyshev_norms() {
    for (a, b) in [("-1", "1"), ("0", "1"), ("0", "4"), ("1/5", "1")] {
        let i = Interval::new(rat(a), rat(b)).unwrap();
        let quarter = (rat(b) - rat(a)) / RBig::from(4);
        for n in 1..=50 {
            let want = rational_to_f64(&(RBig::from(2) * quarter.clone().pow(n)));
            let e = sup_norm(&monic_chebyshev(n, &i), &i, CHEB_REL_WIDTH).unwrap();
            let slack = want * 4.0 * f64::EPSILON;
            assert!(e.lower - slack <= want && want <= e.upper + slack, "n={n} [{a},{b}] {e:?} vs {want}");
            assert!(e.relative_width() <= CHEB_REL_WIDTH, "n={n} [{a},{b}] width {}", e.relative_width());
        }
    }
}

fn c2_hilbert() {
    let e = hilbert_upper_bound(&Interval::from_i64(0, 1).unwrap()).value;
    assert_eq!((e.lower, e.value, e.upper), (0.5, 0.5, 0.5));
    for (a, b) in [("0", "4"), ("-3", "2"), ("1/3", "13/3"), ("0", "100")] {
        let e = hilbert_upper_bound(&Interval::new(rat(a), rat(b)).unwrap()).value;
        assert_eq!((e.lower, e.value, e.upper), (1.0, 1.0, 1.0), "[{a},{b}]");
    }
}

/// Exact sup norm on `[0, 1]` of a polynomial of degree at most 2.
fn quadratic_norm(c: [i64; 3]) -> RBig {
    let p = ints(&c);
    let mut pts = vec![RBig::ZERO, RBig::ONE];
    if c[2] != 0 {
        let v = RBig::from(-c[1]) / RBig::from(2 * c[2]);
        if v > RBig::ZERO && v < RBig::ONE {
            pts.push(v);
        }
    }
    pts.iter().map(|x| p.eval_rational(x).abs()).max().unwrap()
}

fn c3_exhaustive() {
    let r = exhaustive_integer_chebyshev(&Interval::from_i64(0, 1).unwrap(), 6, 4, 50_000_000).unwrap();
    assert!(!r.truncated);
    assert_eq!(r.rows.len(), 6);
    let mut prev = f64::INFINITY;
    for row in &r.rows {
        let u = row.best_bound.expect("a nonconstant candidate with norm <= 1 exists");
        assert!(u.value <= prev, "U_{} = {} after {prev}", row.n, u.value);
        prev = u.value;
        if row.n >= 2 {
            assert!(u.upper <= 0.5 + 1e-15, "U_{} = {u:?}", row.n);
        }
        assert!(u.lower >= FLOOR && row.norm_root.lower >= FLOOR, "n={} below floor", row.n);
    }
    // enumeration oracle for degree <= 2: exact norms of every candidate
    let h = 4i64;
    let mut best: Option<(RBig, [i64; 3])> = None;
    for a2 in 1..=h {
        for a1 in -h..=h {
            for a0 in -h..=h {
                let v = quadratic_norm([a0, a1, a2]);
                if best.as_ref().map_or(true, |(b, _)| v < *b) {
                    best = Some((v, [a0, a1, a2]));
                }
            }
        }
    }
    let (norm, coeffs) = best.unwrap();
    assert_eq!((norm.clone(), coeffs), (rat("1/4"), [0, -1, 1]));
    let row = &r.rows[1];
    assert_eq!(row.winner, vec!["0", "-1", "1"]);
    assert_eq!(row.norm.value, 0.25);
    assert!(row.norm.contains(0.25));
}

fn c4_factors() {
    let i = Interval::from_i64(0, 1).unwrap();
    let pair = FactorBasis::new(vec![ints(&[0, 1]), ints(&[1, -1])], &i).unwrap();
    let opts = FactorOptions { realize_degree: None, ..FactorOptions::default() };
    let r = factor_exponent_optimize(&pair, &i, &opts).unwrap();
    assert!((r.report.value.value - 0.5).abs() <= SYMMETRIC_PAIR_TOL, "{:?}", r.report.value);

    let r = factor_exponent_optimize(&FactorBasis::default_unit_interval(), &i, &opts).unwrap();
    let v = r.report.value.value;
    assert!(FLOOR < v && v < 0.5, "{v}");
    assert!((v - SHIPPED_BASIS_VALUE).abs() <= SHIPPED_BASIS_TOL, "{v} vs frozen {SHIPPED_BASIS_VALUE}");
}

/// Fraction-free Gaussian elimination on the Sylvester matrix.
fn sylvester_oracle(p: &[IBig], q: &[IBig]) -> IBig {
    let (n, m) = (p.len() - 1, q.len() - 1);
    let size = n + m;
    let mut a = vec![vec![IBig::ZERO; size]; size];
    for r in 0..m {
        for (k, c) in p.iter().rev().enumerate() {
            a[r][r + k] = c.clone();
        }
    }
    for r in 0..n {
        for (k, c) in q.iter().rev().enumerate() {
            a[m + r][r + k] = c.clone();
        }
    }
    let mut sign = IBig::ONE;
    let mut prev = IBig::ONE;
    for k in 0..size {
        let Some(piv) = (k..size).find(|&r| a[r][k] != IBig::ZERO) else {
            return IBig::ZERO;
        };
        if piv != k {
            a.swap(piv, k);
            sign = -sign;
        }
        for i in k + 1..size {
            for j in k + 1..size {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
            a[i][k] = IBig::ZERO;
        }
        prev = a[k][k].clone();
    }
    sign * &a[size - 1][size - 1]
}

fn c5_resultant_inequality() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let i = Interval::from_i64(0, 1).unwrap();
    let mut done = 0;
    while done < 200 {
        // P: product of distinct (b x - a) with 0 < a/b < 1, so its roots are in I
        let mut roots: Vec<(i64, i64)> = Vec::new();
        for _ in 0..rng.gen_range(1..=4) {
            let b = rng.gen_range(2..=9i64);
            let a = rng.gen_range(1..b);
            if !roots.iter().any(|&(x, y)| x * b == a * y) {
                roots.push((a, b));
            }
        }
        let p = roots.iter().fold(ints(&[1]), |acc, &(a, b)| poly_mul(&acc, &ints(&[-a, b])));
        let deg_r = rng.gen_range(1..=8 - p.degree().min(4));
        let mut rc: Vec<i64> = (0..=deg_r).map(|_| rng.gen_range(-5..=5)).collect();
        if rc[deg_r] == 0 {
            rc[deg_r] = 1;
        }
        let r = ints(&rc);
        let res = resultant(&p, &r).unwrap();
        if res == IBig::ZERO {
            continue;
        }
        assert_eq!(res, sylvester_oracle(p.coeffs(), r.coeffs()), "{p} / {r}");
        let check = resultant_inequality(&p, &r, &i, 1e-12).unwrap();
        assert!(check.resultant_at_least_one && check.holds, "{p} / {r}: {check:?}");
        // independent bound from the certified norm
        let norm = sup_norm(&r.to_rat(), &i, 1e-12).unwrap();
        let (n, m) = (p.degree() as f64, r.degree() as f64);
        let ln_an = rational_to_f64(&RBig::from(p.leading().abs())).ln();
        let ln_res = rational_to_f64(&RBig::from(res.abs())).ln();
        assert!(m * ln_an + n * norm.upper.ln() >= ln_res - 1e-12, "{p} / {r}");
        done += 1;
    }
}

fn poly_mul(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let mut c = vec![IBig::ZERO; a.degree() + b.degree() + 1];
    for (i, x) in a.coeffs().iter().enumerate() {
        for (j, y) in b.coeffs().iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    IntPoly::new(c)
}

fn c6_leading() {
    let r = leading_coeff_lower_bound(&ints(&[0, 0, 1, 0, -1]), &Interval::from_i64(-1, 1).unwrap(), 1e-12).unwrap();
    assert!((r.report.value.value - 2f64.sqrt()).abs() <= LEADING_TOL, "{:?}", r.report.value);
    assert!(r.report.value.contains(2f64.sqrt()));
    let g = leading_coeff_lower_bound(&ints(&[0, 1, -1]), &Interval::from_i64(0, 1).unwrap(), 1e-12).unwrap().generic;
    assert_eq!((g.lower, g.value, g.upper), (2.0, 2.0, 2.0));
}

fn c7_newton() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..500 {
        let n = rng.gen_range(1..=20usize);
        let mut c: Vec<i64> = (0..=n).map(|_| rng.gen_range(-50..=50)).collect();
        if c[n] == 0 {
            c[n] = rng.gen_range(1..=9);
        }
        let p = ints(&c);
        let data = SymmetricData::from_poly(&p, n).unwrap();
        for m in 1..=n {
            let vieta = RBig::from(IBig::from(if m % 2 == 0 { c[n - m] } else { -c[n - m] })) / RBig::from(IBig::from(c[n]));
            assert_eq!(data.sigma[m - 1], vieta, "{p} m={m}");
        }
        let s = newton_convert(&data, NewtonDirection::ElementaryToPowerSums).unwrap();
        let back = newton_convert(&SymmetricData::from_power_sums(n, s.powersums.clone()), NewtonDirection::PowerSumsToElementary).unwrap();
        assert_eq!(back.sigma, data.sigma, "{p}");
    }
}

fn c8_cyclotomic() {
    let mut prev_ratio = f64::INFINITY;
    for k in 1..=12usize {
        let primes = first_primes(k);
        let p = prime_cyclotomic_product(k);
        let n = p.degree();
        assert_eq!(n as u64, primes.iter().sum::<u64>() - k as u64);
        assert_eq!(p.coeff(n - 1), IBig::from(k));
        let m = mahler_measure(&p, 1e-12).unwrap();
        assert!((m.value - 1.0).abs() <= MAHLER_TOL && m.lower <= 1.0 + MAHLER_TOL, "k={k} {m:?}");
        let ratio = k as f64 / n as f64;
        if k >= 4 {
            assert!(ratio < prev_ratio, "k={k}");
        }
        prev_ratio = ratio;
        if k == 8 {
            assert_eq!(n, 69);
            assert!(8.0 <= 8.0 * (69f64 * 69f64.ln()).sqrt());
            let check = schur_growth_check(&p, 1, 5, 1e-12).unwrap();
            assert_eq!(check.verdict, Verdict::AllHold, "{check:?}");
            // exact power sums: s_m = sum over p of (p - 1 if p | m else -1)
            for mm in 1..=5u64 {
                let s: i64 = primes.iter().map(|&q| if mm % q == 0 { q as i64 - 1 } else { -1 }).sum();
                let row = check.rows.iter().find(|r| r.quantity == format!("|s_{mm}|")).unwrap();
                assert_eq!(row.lhs.value, s.unsigned_abs() as f64, "s_{mm}");
                assert!(row.lhs.value <= (24.0 * mm as f64 + 16.0) * (69f64 * 69f64.ln()).sqrt());
            }
        }
    }
}

/// Adaptive Simpson on `[a, b]`.
fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn rec(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = (a + b) / 2.0;
        let (lm, rm) = ((a + m) / 2.0, (m + b) / 2.0);
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
            left + right + (left + right - whole) / 15.0
        } else {
            rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) + rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
        }
    }
    let (fa, fm, fb) = (f(a), f((a + b) / 2.0), f(b));
    rec(f, a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), tol, 50)
}

fn c9_moments() {
    for c in ["2", "3", "7/2"] {
        let mu = EquilibriumMeasure::new(rat(c));
        assert_eq!(arcsine_moment(&mu, 1), rat(c));
        let cf = rational_to_f64(&rat(c));
        for m in 0..=10usize {
            let exact = rational_to_f64(&arcsine_moment(&mu, m));
            let scale = exact.abs().max(1.0);
            let f = move |t: f64| (cf + 2.0 * t.cos()).powi(m as i32) / std::f64::consts::PI;
            let quad = simpson(&f, 0.0, std::f64::consts::PI, 1e-12 * scale);
            assert!((quad - exact).abs() <= MOMENT_TOL * scale, "c={c} m={m}: {quad} vs {exact}");
        }
    }
}

/// `t_n` on `[0, 4]` from `t_{k+1} = (x - 2) t_k - t_{k-1}`.
fn chebyshev_04_oracle(n: usize) -> Vec<IBig> {
    let (mut a, mut b) = (vec![IBig::from(2)], vec![IBig::from(-2), IBig::ONE]);
    for _ in 1..n {
        let mut c = vec![IBig::ZERO; b.len() + 1];
        for (i, x) in b.iter().enumerate() {
            c[i + 1] += x;
            c[i] -= IBig::from(2) * x;
        }
        for (i, x) in a.iter().enumerate() {
            c[i] -= x;
        }
        (a, b) = (b, c);
    }
    b
}

fn binom(n: usize, k: usize) -> IBig {
    (0..k).fold(IBig::ONE, |acc, i| acc * IBig::from(n - i) / IBig::from(i + 1))
}

fn c10_trace_trend() {
    let degrees = [25usize, 50, 100, 200];
    let t = trace_mean_table(&FamilySpec::Chebyshev04 { degrees: degrees.to_vec() }, 3, 1e-12).unwrap();
    assert_eq!(t.rows.len(), 4);
    for (row, &n) in t.rows.iter().zip(&degrees) {
        let coeffs = chebyshev_04_oracle(n);
        assert_eq!(chebyshev_04(n).coeffs(), &coeffs[..], "n={n}");
        for m in 1..=3 {
            let sign = if m % 2 == 0 { IBig::ONE } else { -IBig::ONE };
            let oracle = RBig::from(sign * &coeffs[n - m]) / RBig::from(binom(n, m));
            let cell = &row.ratios[m - 1];
            assert_eq!(rat(&cell.exact), oracle, "n={n} m={m}");
            assert!(oracle >= RBig::ONE);
            if m == 1 {
                assert_eq!(oracle, RBig::from(2));
            }
        }
    }
    for m in [2usize, 3] {
        let vals: Vec<RBig> = t.rows.iter().map(|r| rat(&r.ratios[m - 1].exact)).collect();
        assert!(vals.windows(2).all(|w| w[0] < w[1]), "m={m} not increasing");
        assert!(t.increasing[m - 1]);
        let top = RBig::from(IBig::from(1u64 << m));
        assert!(vals.iter().all(|v| *v < top));
        let (_, frozen) = RATIO_AT_200.iter().find(|(mm, _)| *mm == m).unwrap();
        assert_eq!(vals[3], rat(frozen), "m={m} regression");
        let gap = rational_to_f64(&((&top - &vals[3]) / &top));
        assert!(gap < TREND_GAP_CEILING, "m={m} gap {gap}");
    }
    assert_eq!(t.check.verdict, Verdict::AllHold, "{:?}", t.check.verdict);
}

fn c11_generalized_mahler() {
    let two = RBig::from(2);
    for n in 1..=100 {
        let g = generalized_mahler(&chebyshev_04(n), &two, 1e-12).unwrap();
        assert_eq!((g.value.lower, g.value.value), (1.0, 1.0), "n={n} {g:?}");
        assert_eq!(g.value.upper, 1.0, "n={n} {g:?}");
    }
    let phi = conformal_map(Complex64::new(4.5, 0.0), 2.0);
    assert!((phi - Complex64::new(2.0, 0.0)).norm() <= CONFORMAL_TOL, "{phi}");
}

fn library_outputs() -> String {
    let i = Interval::from_i64(0, 1).unwrap();
    let ex = exhaustive_integer_chebyshev(&i, 5, 3, 50_000_000).unwrap();
    let opts = FactorOptions { realize_degree: None, ..FactorOptions::default() };
    let basis = FactorBasis::new(vec![ints(&[0, 1]), ints(&[1, -1]), ints(&[-1, 2]), ints(&[1, -5, 5])], &i).unwrap();
    let fac = factor_exponent_optimize(&basis, &i, &opts).unwrap();
    let tr = trace_mean_table(&FamilySpec::Chebyshev04 { degrees: vec![10, 20, 30] }, 3, 1e-12).unwrap();
    let roots = intcheb::roots::find_roots(&chebyshev_04(40), 1e-12).unwrap();
    serde_json::to_string(&(ex, fac, tr, roots)).unwrap()
}

/// The CLI binary of this workspace, when it has been built.
fn cli_binary() -> Option<PathBuf> {
    let target = std::env::var_os("CARGO_TARGET_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../target"));
    let exe = if cfg!(windows) { "intcheb.exe" } else { "intcheb" };
    ["debug", "release"].iter().map(|p| target.join(p).join(exe)).find(|p| p.exists())
}

fn c12_determinism() {
    let reference = intcheb::par::sequential(library_outputs);
    assert_eq!(library_outputs(), reference);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(8).build().unwrap();
    assert_eq!(pool.install(library_outputs), reference);

    let bin = cli_binary().expect("CLI binary is built alongside the workspace tests");
    let args = ["icheb", "exhaustive", "--interval", "0,1", "--nmax", "5", "--height", "3"];
    let run = |extra: &[&str]| {
        let out = Command::new(&bin).args(extra).args(args).env_remove("SOURCE_DATE_EPOCH").output().unwrap();
        assert_eq!(out.status.code(), Some(0));
        out.stdout
    };
    let first = run(&[]);
    assert_eq!(run(&[]), first);
    assert_eq!(run(&["--threads", "8"]), first);
}

fn main() {
    let criteria: [(&str, fn()); 12] = [
        ("monic Chebyshev norm identity", c1_chebyshev_norms),
        ("Hilbert bound", c2_hilbert),
        ("exhaustive search on [0,1]", c3_exhaustive),
        ("factor optimizer", c4_factors),
        ("resultant inequality", c5_resultant_inequality),
        ("leading coefficient bound", c6_leading),
        ("Newton identities", c7_newton),
        ("prime cyclotomic products", c8_cyclotomic),
        ("equilibrium moments", c9_moments),
        ("trace trend", c10_trace_trend),
        ("generalized Mahler measure", c11_generalized_mahler),
        ("determinism", c12_determinism),
    ];
    let mut failed = Vec::new();
    for (k, (name, f)) in criteria.iter().enumerate() {
        let t = std::time::Instant::now();
        let ok = catch_unwind(AssertUnwindSafe(f)).is_ok();
        println!("criterion {:>2} {:<32} {} ({:.2}s)", k + 1, name, if ok { "PASS" } else { "FAIL" }, t.elapsed().as_secs_f64());
        if !ok {
            failed.push(k + 1);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
