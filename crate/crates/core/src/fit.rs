//! Least-squares fitting in Laurent bases, trapezoid (DFT) coefficient
//! extraction on circles, and the sampling+refit backends for exponentials
//! and reciprocals of finitely represented functions.

use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};
// required by the no_std build; test builds see std's inherent methods
#[allow(unused_imports)]
use num_traits::Float;

use crate::config::Config;
use crate::domain::{CompactKind, CompactSet};
use crate::error::Error;
use crate::holo::{c64, HoloFunction};
use crate::{Result, C64};

/// Monomial Laurent basis `((z - center)/scale)^k`, `k = lo..=hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaurentBasis {
    pub center: C64,
    pub lo: i64,
    pub hi: i64,
    pub scale: f64,
}

impl LaurentBasis {
    pub fn polynomial(center: C64, degree: usize, scale: f64) -> Self {
        LaurentBasis { center, lo: 0, hi: degree as i64, scale }
    }

    pub fn symmetric(center: C64, degree: usize, scale: f64) -> Self {
        LaurentBasis { center, lo: -(degree as i64), hi: degree as i64, scale }
    }

    pub fn len(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.hi < self.lo
    }

    fn row(&self, z: C64, out: &mut [C64]) {
        let w = (z - self.center) / c64(self.scale, 0.0);
        let mut p = if self.lo == 0 { c64(1.0, 0.0) } else { w.powi(self.lo as i32) };
        for slot in out.iter_mut() {
            *slot = p;
            p *= w;
        }
    }

    /// Converts scaled-basis coefficients to a plain Laurent polynomial.
    pub fn to_holo(&self, coeffs: &[C64]) -> HoloFunction {
        assert_eq!(coeffs.len(), self.len());
        let mut out = Vec::with_capacity(coeffs.len());
        for (i, &c) in coeffs.iter().enumerate() {
            let k = self.lo + i as i64;
            out.push(c / c64(self.scale, 0.0).powi(k as i32));
        }
        HoloFunction::from_coeffs(self.center, self.lo, out)
    }
}

/// Weighted, ridge-regularized complex least squares in a Laurent basis.
///
/// Minimizes `sum_i w_i^2 |f(z_i) - v_i|^2 + lambda^2 |c|^2`; `weights` may
/// be empty for uniform weighting.
pub fn fit_laurent(
    points: &[C64],
    values: &[C64],
    weights: &[f64],
    basis: &LaurentBasis,
    ridge_rel: f64,
) -> HoloFunction {
    assert_eq!(points.len(), values.len());
    assert!(points.len() >= basis.len(), "under-determined fit");
    let m = points.len();
    let n = basis.len();
    let mut a = DMatrix::<C64>::zeros(m + n, n);
    let mut b = DVector::<C64>::zeros(m + n);
    let mut row = alloc::vec![c64(0.0, 0.0); n];
    let mut max_w = 0.0f64;
    for i in 0..m {
        let w = if weights.is_empty() { 1.0 } else { weights[i] };
        max_w = max_w.max(w);
        basis.row(points[i], &mut row);
        for j in 0..n {
            a[(i, j)] = row[j] * c64(w, 0.0);
        }
        b[i] = values[i] * c64(w, 0.0);
    }
    // Tikhonov rows keep the coefficient vector bounded when the basis is
    // ill conditioned on the sample geometry.
    let lambda = ridge_rel.max(1e-300) * max_w.max(1.0);
    for j in 0..n {
        a[(m + j, j)] = c64(lambda, 0.0);
    }
    let coeffs = lstsq(a, b);
    basis.to_holo(coeffs.as_slice())
}

/// Thin-QR least squares.
fn lstsq(a: DMatrix<C64>, b: DVector<C64>) -> DVector<C64> {
    let qr = a.qr();
    let q = qr.q();
    let r = qr.r();
    let y = q.adjoint() * b;
    r.solve_upper_triangular(&y).expect("ridge rows keep R nonsingular")
}

/// Laurent coefficients `lo..=hi` of a function analytic on the circle
/// `|z - center| = radius`, by the trapezoid rule (spectrally accurate for
/// periodic integrands). `n_samples = 0` picks a default.
pub fn cauchy_coeffs<F: FnMut(C64) -> C64>(
    f: &mut F,
    center: C64,
    radius: f64,
    lo: i64,
    hi: i64,
    n_samples: usize,
) -> Vec<C64> {
    let n = if n_samples == 0 {
        (4 * ((hi - lo).unsigned_abs() as usize + 8)).max(256)
    } else {
        n_samples
    };
    let mut vals = Vec::with_capacity(n);
    for k in 0..n {
        let t = core::f64::consts::TAU * k as f64 / n as f64;
        let w = c64(t.cos(), t.sin());
        vals.push(f(center + w * c64(radius, 0.0)));
    }
    let mut out = Vec::with_capacity((hi - lo + 1) as usize);
    for m in lo..=hi {
        let mut acc = c64(0.0, 0.0);
        for (k, &v) in vals.iter().enumerate() {
            let t = core::f64::consts::TAU * ((k as i64 * m).rem_euclid(n as i64)) as f64 / n as f64;
            acc += v * c64(t.cos(), -t.sin());
        }
        out.push(acc / c64(n as f64 * radius.powi(m as i32), 0.0));
    }
    out
}

/// Representative check points of a compact set: boundary plus interior.
pub fn check_points(k: &CompactSet, n: usize) -> Vec<C64> {
    let mut pts = k.boundary_points_n(n / 2);
    match &k.kind {
        CompactKind::Rectangle(r) => {
            let g = (((n / 2) as f64).sqrt() as usize + 2).max(4);
            for i in 0..g {
                for j in 0..g {
                    let x = r.min.re + (r.max.re - r.min.re) * (i as f64 + 0.5) / g as f64;
                    let y = r.min.im + (r.max.im - r.min.im) * (j as f64 + 0.5) / g as f64;
                    pts.push(c64(x, y));
                }
            }
        }
        CompactKind::Annulus { center, r_inner, r_outer } => {
            let rings = 6;
            let per = (n / 2 / rings).max(16);
            for i in 0..rings {
                let r = r_inner + (r_outer - r_inner) * (i as f64 + 0.5) / rings as f64;
                if r <= 0.0 {
                    continue;
                }
                pts.extend(circle_points(*center, r, per));
            }
        }
        CompactKind::RectanglesWithArcs { rects, arcs } => {
            let g = 8;
            for r in rects {
                for i in 0..g {
                    for j in 0..g {
                        let x = r.min.re + (r.max.re - r.min.re) * (i as f64 + 0.5) / g as f64;
                        let y = r.min.im + (r.max.im - r.min.im) * (j as f64 + 0.5) / g as f64;
                        pts.push(c64(x, y));
                    }
                }
            }
            for a in arcs {
                pts.extend(a.sample(64));
            }
        }
    }
    pts
}

pub fn circle_points(center: C64, r: f64, n: usize) -> Vec<C64> {
    let mut v = Vec::with_capacity(n);
    for k in 0..n {
        let t = core::f64::consts::TAU * k as f64 / n as f64;
        v.push(center + c64(r * t.cos(), r * t.sin()));
    }
    v
}

/// Outcome of a sampling + refit operation.
#[derive(Debug, Clone, PartialEq)]
pub struct RefitReport {
    pub degree: usize,
    /// Sup of |f - fit| over the check points.
    pub sup_err: f64,
    /// Sup of |f| over the check points.
    pub sup_f: f64,
}

/// Refits a pointwise-evaluable function, analytic on a neighborhood of
/// `k`, to a Laurent polynomial about `k.center()` via circle-DFT
/// coefficients. The degree escalates from `degree0` until the
/// a-posteriori sup error on check points drops below
/// `cfg.refit_tol_factor * sup|f|`.
pub fn refit_on<F: FnMut(C64) -> C64>(
    f: &mut F,
    k: &CompactSet,
    degree0: usize,
    cfg: &Config,
) -> Result<(HoloFunction, RefitReport)> {
    let center = k.center();
    // For a true annulus, positive exponents are extracted on the outer
    // circle and negative ones on the inner circle, so sampling noise never
    // amplifies on the set itself.
    let radii = match &k.kind {
        CompactKind::Annulus { r_inner, r_outer, .. } if *r_inner > 0.0 => {
            Some((*r_inner, *r_outer))
        }
        _ => None,
    };
    let radius = k.circumradius();
    let checks = check_points(k, 1024.max(k.boundary_samples));
    let sup_f = checks.iter().map(|&z| f(z).norm()).fold(0.0, f64::max);
    let threshold = cfg.refit_tol_factor * sup_f.max(1e-300);
    let mut degree = degree0.max(8);
    let mut best_err = f64::INFINITY;
    loop {
        let (lo, coeffs) = match radii {
            Some((r_in, r_out)) => {
                let d = degree as i64;
                let mut c = cauchy_coeffs(f, center, r_in, -d, -1, 0);
                c.extend(cauchy_coeffs(f, center, r_out, 0, d, 0));
                (-d, c)
            }
            None => (0, cauchy_coeffs(f, center, radius, 0, degree as i64, 0)),
        };
        let cand = HoloFunction::from_coeffs(center, lo, coeffs);
        let sup_err = checks
            .iter()
            .map(|&z| (f(z) - cand.eval(z)).norm())
            .fold(0.0, f64::max);
        let report = RefitReport { degree, sup_err, sup_f };
        if sup_err <= threshold {
            return Ok((cand, report));
        }
        best_err = best_err.min(sup_err);
        if degree >= cfg.max_degree {
            return Err(Error::RefitFailure { err: best_err, threshold });
        }
        degree = (degree * 2).min(cfg.max_degree);
    }
}

/// `exp(f)` as a fresh Laurent polynomial on `k` (sampling + refit).
pub fn exp_refit(
    f: &HoloFunction,
    k: &CompactSet,
    cfg: &Config,
) -> Result<(HoloFunction, RefitReport)> {
    refit_on(&mut |z| f.eval(z).exp(), k, cfg.refit_degree, cfg)
}

/// `1/f` as a fresh Laurent polynomial on `k`; `f` must be nonvanishing on
/// a neighborhood of `k` for the refit to converge.
pub fn reciprocal_refit(
    f: &HoloFunction,
    k: &CompactSet,
    cfg: &Config,
) -> Result<(HoloFunction, RefitReport)> {
    refit_on(&mut |z| c64(1.0, 0.0) / f.eval(z), k, cfg.refit_degree, cfg)
}

/// Sup of |f - g| over points.
pub fn sup_diff<F: FnMut(C64) -> C64, G: FnMut(C64) -> C64>(
    f: &mut F,
    g: &mut G,
    points: &[C64],
) -> f64 {
    points.iter().map(|&z| (f(z) - g(z)).norm()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dft_recovers_laurent_coefficients() {
        let f = HoloFunction::from_coeffs(
            c64(0.0, 0.0),
            -2,
            alloc::vec![
                c64(2.0, 0.0),
                c64(0.0, 0.0),
                c64(1.0, 1.0),
                c64(0.0, 0.0),
                c64(0.0, 0.0),
                c64(3.0, 0.0),
            ],
        );
        let got = cauchy_coeffs(&mut |z| f.eval(z), c64(0.0, 0.0), 1.3, -4, 6, 256);
        for (i, &c) in got.iter().enumerate() {
            let k = -4 + i as i64;
            assert!((c - f.coeff(k)).norm() < 1e-12, "k={k}");
        }
    }

    #[test]
    fn least_squares_interpolates_polynomial() {
        let target = HoloFunction::from_coeffs(
            c64(0.0, 0.0),
            0,
            alloc::vec![c64(1.0, -1.0), c64(0.5, 0.0), c64(0.0, 2.0)],
        );
        let pts: Vec<C64> = circle_points(c64(0.0, 0.0), 1.0, 40);
        let vals: Vec<C64> = pts.iter().map(|&z| target.eval(z)).collect();
        let basis = LaurentBasis::polynomial(c64(0.0, 0.0), 5, 1.0);
        let fit = fit_laurent(&pts, &vals, &[], &basis, 1e-14);
        for &z in &pts {
            assert!((fit.eval(z) - target.eval(z)).norm() < 1e-11);
        }
    }

    #[test]
    fn exp_refit_of_z_on_disk() {
        let k = CompactSet::disk(c64(0.0, 0.0), 1.0, 512);
        let f = HoloFunction::z(c64(0.0, 0.0));
        let (e, report) = exp_refit(&f, &k, &Config::default()).unwrap();
        assert!(report.sup_err <= 1e-9 * report.sup_f);
        let z = c64(0.3, -0.8);
        assert!((e.eval(z) - z.exp()).norm() < 1e-10);
    }

    #[test]
    fn exp_refit_on_annulus_keeps_negative_powers() {
        // exp(1/z) on the catenoid annulus
        let k = CompactSet::annulus(c64(0.0, 0.0), 0.5, 2.0, 512);
        let f = HoloFunction::monomial(c64(0.0, 0.0), -1, c64(1.0, 0.0));
        let (e, report) = exp_refit(&f, &k, &Config::default()).unwrap();
        assert!(report.sup_err <= 1e-9 * report.sup_f, "{report:?}");
        let z = c64(0.0, 0.6);
        assert!((e.eval(z) - (c64(1.0, 0.0) / z).exp()).norm() < 1e-9);
    }

    #[test]
    fn reciprocal_refit_nonvanishing() {
        let f = HoloFunction::from_coeffs(
            c64(0.0, 0.0),
            0,
            alloc::vec![c64(-3.0, 0.0), c64(1.0, 0.0)],
        );
        let k = CompactSet::disk(c64(0.0, 0.0), 1.0, 512);
        let (r, report) = reciprocal_refit(&f, &k, &Config::default()).unwrap();
        assert!(report.sup_err <= 1e-9 * report.sup_f);
        let z = c64(-0.4, 0.7);
        assert!((r.eval(z) - c64(1.0, 0.0) / f.eval(z)).norm() < 1e-11);
    }

    #[test]
    fn refit_refuses_unreachable_tolerance() {
        // 1/(z - 1.0001) blows up at the disk boundary: the degree budget
        // cannot reach the tolerance.
        let k = CompactSet::disk(c64(0.0, 0.0), 1.0, 256);
        let cfg = Config { max_degree: 64, ..Config::default() };
        let res = refit_on(&mut |z| c64(1.0, 0.0) / (z - c64(1.0001, 0.0)), &k, 16, &cfg);
        assert!(matches!(res, Err(Error::RefitFailure { .. })));
    }
}
