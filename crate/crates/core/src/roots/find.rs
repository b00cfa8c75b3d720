use std::sync::atomic::{AtomicUsize, Ordering};

use num_complex::Complex64;
use serde::Serialize;

use super::fixed::{ldexp, ln_horner_error, Fix};
use crate::error::{Error, Result};
use crate::numeric::{ln_abs, rational_bounds};
use crate::par;
use crate::poly::IntPoly;
use dashu::integer::IBig;
use dashu::rational::RBig;

pub const DEFAULT_PRECISION_CAP: usize = 4096;
const START_PRECISION: usize = 64;
/// Relative slack for quantities computed in `f64`.
const SLACK: f64 = 1.0 / (1u64 << 48) as f64;

/// What the certificate says about a root's position relative to the real
/// axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Reality {
    Real,
    NonReal,
    Unresolved,
}

/// A root approximation `center` whose disc of the given radius contains a
/// true root (of the stated multiplicity).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CertifiedRoot {
    pub re: f64,
    pub im: f64,
    pub radius: f64,
    pub multiplicity: u32,
    pub reality: Reality,
    /// The root provably has modulus exactly 1.
    pub on_unit_circle: bool,
}

impl CertifiedRoot {
    pub fn center(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn is_real(&self) -> bool {
        self.reality == Reality::Real
    }

    /// Enclosure `[lo, hi]` of the modulus.
    pub fn modulus_bounds(&self) -> (f64, f64) {
        if self.on_unit_circle {
            return (1.0, 1.0);
        }
        if self.radius == 0.0 && self.im == 0.0 {
            return (self.re.abs(), self.re.abs());
        }
        let c = self.center().norm();
        (((c - self.radius) * (1.0 - SLACK)).max(0.0), (c + self.radius) * (1.0 + SLACK))
    }

    fn exact(x: &RBig, multiplicity: u32) -> Self {
        let (lo, mid, hi) = rational_bounds(x);
        CertifiedRoot {
            re: mid,
            im: 0.0,
            radius: (mid - lo).max(hi - mid),
            multiplicity,
            reality: Reality::Real,
            on_unit_circle: false,
        }
    }
}

/// Certified approximations of all complex roots of an integer polynomial.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RootSet {
    pub degree: usize,
    /// Highest working precision (bits) that was needed.
    pub precision: usize,
    /// Sorted by real part, then imaginary part.
    pub roots: Vec<CertifiedRoot>,
}

impl RootSet {
    pub fn count_with_multiplicity(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity as usize).sum()
    }

    pub fn max_radius(&self) -> f64 {
        self.roots.iter().map(|r| r.radius).fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootOptions {
    /// Target error radius. Radii never go below a few `f64` ulps of the
    /// center, so smaller requests are met at that floor.
    pub eps: f64,
    pub precision_cap: usize,
}

static PRECISION_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_PRECISION_CAP);

/// Sets the precision cap used by [`RootOptions::default`] process-wide, and
/// so by every routine that finds roots internally.
pub fn set_default_precision_cap(bits: usize) {
    PRECISION_CAP.store(bits.max(START_PRECISION), Ordering::Relaxed);
}

pub fn default_precision_cap() -> usize {
    PRECISION_CAP.load(Ordering::Relaxed)
}

impl Default for RootOptions {
    fn default() -> Self {
        RootOptions { eps: 1e-12, precision_cap: default_precision_cap() }
    }
}

pub fn find_roots(p: &IntPoly, eps: f64) -> Result<RootSet> {
    find_roots_with(p, &RootOptions { eps, ..RootOptions::default() })
}

/// Finds all roots of `p` with multiplicities.
///
/// Each squarefree part is solved by simultaneous Aberth iteration at growing
/// precision; a run is accepted once every disc of radius `n |W_i|` (the
/// Weierstrass correction) is within `eps` and the discs are pairwise
/// disjoint, which pins exactly one root in each disc.
pub fn find_roots_with(p: &IntPoly, opts: &RootOptions) -> Result<RootSet> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.degree() == 0 {
        return Err(Error::ConstantPolynomial);
    }
    if !(opts.eps > 0.0) {
        return Err(Error::InvalidArgument(format!("eps must be positive, got {}", opts.eps)));
    }
    let zeros = p.coeffs().iter().take_while(|c| c.is_zero()).count();
    let mut roots = Vec::new();
    if zeros > 0 {
        roots.push(CertifiedRoot::exact(&RBig::ZERO, zeros as u32));
    }
    let q = IntPoly::new(p.coeffs()[zeros..].to_vec());
    let mut precision = 0;
    if q.degree() > 0 {
        for (f, mult) in q.squarefree_decomposition() {
            let (mut rs, prec) = squarefree_roots(&f, opts)?;
            precision = precision.max(prec);
            for r in &mut rs {
                r.multiplicity = mult;
            }
            roots.extend(rs);
        }
    }
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(RootSet { degree: p.degree(), precision, roots })
}

fn squarefree_roots(f: &IntPoly, opts: &RootOptions) -> Result<(Vec<CertifiedRoot>, usize)> {
    let n = f.degree();
    if n == 1 {
        let root = -RBig::from(f.coeff(0)) / RBig::from(f.coeff(1));
        return Ok((vec![CertifiedRoot::exact(&root, 1)], 0));
    }
    let guesses = initial_guesses(f);
    let rho = guesses.iter().map(|g| g.norm()).fold(1.0, f64::max);
    let mut prec = start_precision(f, rho).min(opts.precision_cap);
    let mut z: Vec<Fix> = guesses.iter().map(|&g| Fix::from_c64(g, prec)).collect();
    loop {
        let coeffs: Vec<IBig> = f.coeffs().iter().map(|a| a << prec).collect();
        aberth(&coeffs, &mut z, prec);
        if let Some(roots) = certify(f, &coeffs, &z, prec, opts.eps) {
            return Ok((roots, prec));
        }
        if prec >= opts.precision_cap {
            return Err(Error::RootsNotCertified { precision: prec });
        }
        let rho = z.iter().map(|w| w.to_c64(prec).norm()).filter(|r| r.is_finite()).fold(1.0, f64::max);
        let next = (prec * 2).max(start_precision(f, rho)).min(opts.precision_cap);
        z = z.iter().map(|w| w.rescale(prec, next)).collect();
        prec = next;
    }
}

/// Fixed-point scale that resolves roots of `f` on the disc of radius `rho`:
/// the Horner truncation error grows like `rho^n`, and a root moves by that
/// error over `|f'|`, which is at least of order `|a_n|` for separated roots.
/// Rounded up to a multiple of 64.
fn start_precision(f: &IntPoly, rho: f64) -> usize {
    let n = f.degree() as f64;
    let bits = n * rho.log2().max(0.0) + n.log2() - ln_abs(&f.leading()) / std::f64::consts::LN_2;
    let raw = 64 + bits.max(0.0).ceil() as usize;
    (raw.div_ceil(64) * 64).max(START_PRECISION)
}

/// Starting points on circles around the root centroid `c`, with radii read
/// off the Newton polygon of `f(y + c)`.
fn initial_guesses(f: &IntPoly) -> Vec<Complex64> {
    let n = f.degree();
    let centroid =
        -crate::numeric::rational_to_f64(&(RBig::from(f.coeff(n - 1)) / RBig::from(f.leading()))) / n as f64;
    // f(y + m / 2^S) 2^(S n) as an integer polynomial, with m / 2^S close to c
    const S: u32 = 20;
    let m = (centroid * (1u64 << S) as f64).round();
    let m = if m.is_finite() && m.abs() < 1e18 { m } else { 0.0 };
    let c = m / (1u64 << S) as f64;
    let shifted = if m == 0.0 {
        f.clone()
    } else {
        let scale = IBig::ONE << S as usize;
        let lin = IntPoly::new(vec![IBig::from(m as i64), scale.clone()]);
        let mut acc = IntPoly::new(vec![f.leading()]);
        let mut pow = IBig::ONE;
        for k in (0..n).rev() {
            pow *= &scale;
            acc = &(&acc * &lin) + &IntPoly::new(vec![f.coeff(k) * &pow]);
        }
        acc
    };
    let pts: Vec<(usize, f64)> = shifted
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, a)| !a.is_zero())
        .map(|(k, a)| (k, ln_abs(a)))
        .collect();
    // upper convex hull, left to right
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for &pt in &pts {
        while hull.len() >= 2 {
            let (k1, y1) = hull[hull.len() - 2];
            let (k2, y2) = hull[hull.len() - 1];
            let cross = (k2 as f64 - k1 as f64) * (pt.1 - y1) - (y2 - y1) * (pt.0 as f64 - k1 as f64);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let center = Complex64::new(c, 0.0);
    let mut out = Vec::with_capacity(n);
    // f(c) = 0 exactly: start those roots right next to c
    for j in 0..hull[0].0 {
        out.push(center + Complex64::from_polar(1e-8 * (1.0 + c.abs()), 0.3 + j as f64));
    }
    for (seg, w) in hull.windows(2).enumerate() {
        let ((k0, y0), (k1, y1)) = (w[0], w[1]);
        let m = k1 - k0;
        let radius = ((y0 - y1) / m as f64).exp();
        let offset = 2.0 * std::f64::consts::PI * seg as f64 / n as f64 + 0.7;
        for j in 0..m {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / m as f64 + offset;
            out.push(center + Complex64::from_polar(radius, theta));
        }
    }
    out
}

/// Jacobi-style Aberth sweeps at fixed-point scale `q`. Horner runs on the
/// big integers; the Newton quotient and the pairwise sums only need relative
/// accuracy and are taken in `f64`.
fn aberth(coeffs: &[IBig], z: &mut [Fix], q: usize) {
    let n = z.len();
    let freeze_below = 2f64.powi(-(q as i32 - 8));
    let mut frozen = vec![false; n];
    let mut best = f64::INFINITY;
    let mut frozen_count = 0;
    let mut stalled = 0;
    for _ in 0..100 + 2 * n {
        let zf: Vec<Complex64> = z.iter().map(|w| w.to_c64(q)).collect();
        let corrections: Vec<Option<Complex64>> = par::map_range(0..n, |i| {
            if frozen[i] {
                return None;
            }
            let (p, dp) = z[i].horner_with_derivative(coeffs, q);
            // inside the truncation noise further sweeps cannot help
            if p.is_zero() || p.ln_abs_raw() - q as f64 * std::f64::consts::LN_2 <= ln_horner_error(n + 1, zf[i].norm(), q) + 2.0 {
                return None;
            }
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j == i {
                    continue;
                }
                let mut d = zf[i] - zf[j];
                if d.norm() < 1e-10 * (zf[i].norm() + zf[j].norm()) {
                    d = z[i].sub(&z[j]).to_c64(q);
                }
                if d.norm() > 0.0 {
                    s += d.inv();
                }
            }
            if dp.is_zero() {
                // stationary point: nudge away
                return Some(Complex64::new(1e-3, 1e-3) * (zf[i].norm() + 1.0));
            }
            let (pc, pe) = p.scaled();
            let (dc, de) = dp.scaled();
            let ratio = pc / dc;
            let newton = Complex64::new(ldexp(ratio.re, pe - de), ldexp(ratio.im, pe - de));
            let den = Complex64::new(1.0, 0.0) - newton * s;
            Some(if den.norm() > 0.0 && den.is_finite() { newton / den } else { newton })
        });
        let mut worst: f64 = 0.0;
        for (i, c) in corrections.into_iter().enumerate() {
            let Some(c) = c else {
                frozen[i] = true;
                continue;
            };
            if !c.is_finite() {
                continue;
            }
            z[i] = z[i].sub(&Fix::from_c64(c, q));
            let rel = c.norm() / (zf[i] - c).norm().max(1.0);
            if rel <= freeze_below {
                frozen[i] = true;
            }
            worst = worst.max(rel);
        }
        if frozen.iter().all(|&b| b) {
            return;
        }
        // Far from convergence the corrections wander; a stall only counts
        // once no root freezes and the largest step stops shrinking.
        let now_frozen = frozen.iter().filter(|&&b| b).count();
        if worst < 0.5 * best || now_frozen > frozen_count {
            best = best.min(worst);
            frozen_count = now_frozen;
            stalled = 0;
        } else {
            stalled += 1;
            if (best < 1e-8 && stalled >= 12) || stalled >= 60 {
                return;
            }
        }
    }
}

fn disjoint(c1: Complex64, r1: f64, c2: Complex64, r2: f64) -> bool {
    (c1 - c2).norm() * (1.0 - SLACK) > (r1 + r2) * (1.0 + SLACK)
}

/// Inclusion discs for approximations `z` of the roots of the squarefree `f`.
/// Returns `None` when a disc exceeds `eps` or two discs meet.
fn certify(f: &IntPoly, coeffs: &[IBig], z: &[Fix], q: usize, eps: f64) -> Option<Vec<CertifiedRoot>> {
    let n = z.len();
    let centers: Vec<Complex64> = z.iter().map(|w| w.to_c64(q)).collect();
    if centers.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return None;
    }
    // rounding error of the f64 centers
    let e: Vec<f64> = centers.iter().map(|c| (c.re.abs() + c.im.abs()) * f64::EPSILON + 1e-300).collect();
    let ln_lc = ln_abs(&f.leading());
    let radii: Vec<Option<f64>> = par::map_range(0..n, |i| {
        let mut ln_den = ln_lc;
        let mut err = 0.0;
        for j in 0..n {
            if j == i {
                continue;
            }
            let mut d = (centers[i] - centers[j]).norm() * (1.0 - SLACK) - e[i] - e[j];
            if d <= 0.0 {
                d = z[i].sub(&z[j]).to_c64(q).norm() * (1.0 - SLACK);
            }
            if d <= 0.0 {
                return None;
            }
            let l = d.ln();
            err += l.abs();
            ln_den += l;
        }
        ln_den -= 1e-12 * (err + ln_lc.abs()) + 1e-12;
        // |f(z_i)| <= |computed| + truncation error, all in logs
        let p = z[i].horner(coeffs, q);
        let modulus = (centers[i].norm() + e[i]) * (1.0 + SLACK);
        let ln_trunc = ln_horner_error(n + 1, modulus, q);
        let ln_p = if p.is_zero() {
            ln_trunc
        } else {
            let lp = p.ln_abs_raw() - q as f64 * std::f64::consts::LN_2 + 1e-12 * (1.0 + q as f64);
            let (hi, lo) = if lp > ln_trunc { (lp, ln_trunc) } else { (ln_trunc, lp) };
            hi + (lo - hi).exp().ln_1p() + 1e-15
        };
        let ln_w = ln_p - ln_den + (n as f64).ln();
        let r = if ln_w < -700.0 { 1e-300 } else { ln_w.exp() * (1.0 + 1e-9) };
        Some((r + e[i]).next_up())
    });
    let radii: Vec<f64> = radii.into_iter().collect::<Option<_>>()?;
    for i in 0..n {
        let floor = 4.0 * f64::EPSILON * centers[i].norm();
        if !(radii[i] <= eps.max(floor)) {
            return None;
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if !disjoint(centers[i], radii[i], centers[j], radii[j]) {
                return None;
            }
        }
    }
    Some(classify(&centers, &radii, f.reciprocal_symmetry().is_some()))
}

/// Uses symmetries of the root set to pin roots exactly. A real polynomial's
/// roots are closed under conjugation, so a disc whose mirror image meets no
/// other disc holds a real root. Likewise, for a self-reciprocal polynomial,
/// a disc whose image under `z -> 1/conj(z)` meets no other disc holds a root
/// of modulus one.
fn classify(centers: &[Complex64], radii: &[f64], self_reciprocal: bool) -> Vec<CertifiedRoot> {
    let n = centers.len();
    let clear_of_others = |i: usize, c: Complex64, r: f64| (0..n).all(|j| j == i || disjoint(c, r, centers[j], radii[j]));
    (0..n)
        .map(|i| {
            let (c, r) = (centers[i], radii[i]);
            let reality = if c.im.abs() > r * (1.0 + SLACK) {
                Reality::NonReal
            } else if clear_of_others(i, c.conj(), r) {
                Reality::Real
            } else {
                Reality::Unresolved
            };
            let on_unit_circle = self_reciprocal && {
                let denom = c.norm_sqr() - r * r;
                denom > 0.0 && {
                    let image = c / denom;
                    let ir = (r / denom) * (1.0 + 1e-12) + 1e-15 * image.norm();
                    clear_of_others(i, image, ir)
                }
            };
            let (im, radius) = match reality {
                Reality::Real => (0.0, (r + c.im.abs()).next_up()),
                _ => (c.im, r),
            };
            CertifiedRoot { re: c.re, im, radius, multiplicity: 1, reality, on_unit_circle }
        })
        .collect()
}
