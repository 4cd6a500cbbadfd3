//! Uniform approximation of meromorphic data on compact planar sets by
//! globally defined functions, preserving prescribed divisors.
//!
//! [`approx_with_divisor`] produces a (Laurent) polynomial within `eps` of
//! the input whose difference vanishes on a prescribed integral divisor,
//! enforced by a Hermite-interpolation correction. [`approx_nonvanishing`]
//! preserves the full zero divisor: the result is `B * exp(h)` with `B` the
//! explicit factor carrying the zeros (times an integer winding monomial on
//! annuli) and `h` a fitted polynomial log.

use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};
// required by the no_std build; test builds see std's inherent methods
#[allow(unused_imports)]
use num_traits::Float;

use crate::config::Config;
use crate::domain::{CompactKind, CompactSet, Path};
use crate::error::Error;
use crate::fit::{cauchy_coeffs, check_points, fit_laurent, LaurentBasis};
use crate::holo::{c64, Divisor, HoloFunction};
use crate::quad::{log_along_fn, winding_number_fn};
use crate::roots::holo_zeros_filtered;
use crate::{Result, C64};

/// Outcome of a divisor-constrained approximation.
#[derive(Debug, Clone, PartialEq)]
pub struct ApproxReport {
    pub degree: usize,
    /// Sup of |f - p| over the boundary samples of K.
    pub sup_err: f64,
    /// Largest violated derivative condition at the divisor (absolute).
    pub constraint_residual: f64,
}

fn divisor_ok(k: &CompactSet, d: &Divisor, clearance: f64) -> Result<()> {
    if !d.is_integral() {
        return Err(Error::InvalidArgument("divisor must be integral".into()));
    }
    for p in d.support() {
        if !k.interior_contains(p, clearance) {
            return Err(Error::BadDivisor { point: p });
        }
    }
    Ok(())
}

/// Hermite interpolant matching the given derivative data on the divisor:
/// the unique polynomial of degree < total multiplicity.
fn hermite_correction(residual_derivs: &[(C64, Vec<C64>)], center: C64) -> HoloFunction {
    let m_total: usize = residual_derivs.iter().map(|(_, ds)| ds.len()).sum();
    if m_total == 0 {
        return HoloFunction::zero(center);
    }
    let n = m_total;
    let mut a = DMatrix::<C64>::zeros(n, n);
    let mut b = DVector::<C64>::zeros(n);
    let mut row = 0;
    for (q, ds) in residual_derivs {
        let w = q - center;
        for (j, &dj) in ds.iter().enumerate() {
            // d^j/dz^j of (z-center)^k at q is k!/(k-j)! w^(k-j)
            for k in j..n {
                let mut fall = 1.0;
                for t in 0..j {
                    fall *= (k - t) as f64;
                }
                a[(row, k)] = c64(fall, 0.0) * w.powi((k - j) as i32);
            }
            b[row] = dj;
            row += 1;
        }
    }
    let coeffs = a.lu().solve(&b).expect("confluent Vandermonde is nonsingular");
    HoloFunction::from_coeffs(center, 0, coeffs.as_slice().to_vec())
}

fn derivative_data(f: &HoloFunction, p: &HoloFunction, d: &Divisor) -> Vec<(C64, Vec<C64>)> {
    d.entries()
        .iter()
        .map(|&(q, m)| {
            let ds = (0..m as usize)
                .map(|j| f.derivative_at(q, j) - p.derivative_at(q, j))
                .collect();
            (q, ds)
        })
        .collect()
}

fn constraint_residual(f: &HoloFunction, p: &HoloFunction, d: &Divisor) -> f64 {
    derivative_data(f, p, d)
        .iter()
        .flat_map(|(_, ds)| ds.iter().map(|c| c.norm()))
        .fold(0.0, f64::max)
}

/// Raw Laurent truncation of `f` about `k.center()` at a given degree (no
/// divisor correction). Positive exponents come from the outer extraction
/// circle; negative ones (the kept pole at an annulus hole) from the inner.
pub fn truncation_at_degree(
    f: &HoloFunction,
    k: &CompactSet,
    degree: usize,
) -> Result<HoloFunction> {
    let center = k.center();
    let same_center = (f.center() - center).norm() <= 1e-14;
    match &k.kind {
        CompactKind::Annulus { r_inner, r_outer, .. } if *r_inner > 0.0 => {
            let lo = if same_center { f.low_exponent().min(0) } else { 0 };
            let mut coeffs = if lo < 0 {
                cauchy_coeffs(&mut |z| f.eval(z), center, *r_inner, lo, -1, 0)
            } else {
                Vec::new()
            };
            coeffs.extend(cauchy_coeffs(&mut |z| f.eval(z), center, *r_outer, 0, degree as i64, 0));
            Ok(HoloFunction::from_coeffs(center, lo.min(0), coeffs))
        }
        _ => {
            let r_k = k.circumradius();
            let pole_dist = if f.pole_order() > 0 {
                (f.center() - center).norm()
            } else {
                f64::INFINITY
            };
            if pole_dist <= r_k * 1.0001 {
                // pole too close for circle extraction: boundary least squares
                let pts = k.boundary_points_n(k.boundary_samples.max(8 * (degree + 1)));
                let vals: Vec<C64> = pts.iter().map(|&z| f.eval(z)).collect();
                let basis = LaurentBasis::polynomial(center, degree, r_k);
                return Ok(fit_laurent(&pts, &vals, &[], &basis, 1e-13));
            }
            let r = if pole_dist.is_finite() { (r_k + pole_dist) * 0.5 } else { r_k };
            let coeffs = cauchy_coeffs(&mut |z| f.eval(z), center, r, 0, degree as i64, 0);
            Ok(HoloFunction::from_coeffs(center, 0, coeffs))
        }
    }
}

/// Divisor-constrained approximation at one fixed degree.
pub fn approx_with_divisor_at_degree(
    f: &HoloFunction,
    k: &CompactSet,
    d: &Divisor,
    degree: usize,
    cfg: &Config,
) -> Result<(HoloFunction, ApproxReport)> {
    let clearance = cfg.pole_clearance(k.diameter());
    divisor_ok(k, d, clearance)?;
    if f.pole_order() > 0 && k.contains(f.center(), clearance) {
        return Err(Error::PoleTooClose { pole: f.center(), clearance, distance: 0.0 });
    }
    let mut p = truncation_at_degree(f, k, degree)?;
    if !d.is_empty() {
        let r = hermite_correction(&derivative_data(f, &p, d), k.center());
        p = &p + &r;
    }
    let boundary = k.boundary_points();
    let sup_err = boundary
        .iter()
        .map(|&z| (f.eval(z) - p.eval(z)).norm())
        .fold(0.0, f64::max);
    let report =
        ApproxReport { degree, sup_err, constraint_residual: constraint_residual(f, &p, d) };
    Ok((p, report))
}

/// Uniform approximation on `K` with prescribed vanishing `(f - p) >= D`:
/// the smallest-degree truncation (plus Hermite correction) whose boundary
/// sup error is below `eps`.
pub fn approx_with_divisor(
    f: &HoloFunction,
    k: &CompactSet,
    d: &Divisor,
    eps: f64,
    cfg: &Config,
) -> Result<(HoloFunction, ApproxReport)> {
    assert!(eps > 0.0);
    let clearance = cfg.pole_clearance(k.diameter());
    divisor_ok(k, d, clearance)?;
    // identity case: f is already global with an admissible pole structure
    let same_center = (f.center() - k.center()).norm() <= 1e-14;
    let pole_free_on_k = f.pole_order() == 0 || !k.contains(f.center(), clearance);
    if same_center && pole_free_on_k {
        let report = ApproxReport {
            degree: f.high_exponent().max(0) as usize,
            sup_err: 0.0,
            constraint_residual: 0.0,
        };
        return Ok((f.clone(), report));
    }
    let mut best_err = f64::INFINITY;
    let mut degree = 2usize;
    loop {
        let (p, report) = approx_with_divisor_at_degree(f, k, d, degree, cfg)?;
        if report.sup_err < eps {
            // walk back to the smallest passing degree
            let mut lo = degree / 2;
            let mut chosen = (p, report);
            while lo + 1 < chosen.1.degree {
                let mid = (lo + chosen.1.degree) / 2;
                let (pm, rm) = approx_with_divisor_at_degree(f, k, d, mid, cfg)?;
                if rm.sup_err < eps {
                    chosen = (pm, rm);
                } else {
                    lo = mid;
                }
            }
            return Ok(chosen);
        }
        best_err = best_err.min(report.sup_err);
        if degree >= cfg.max_degree {
            return Err(Error::DegreeBudgetExceeded {
                max_degree: cfg.max_degree,
                eps,
                best: best_err,
            });
        }
        degree = (degree * 2).min(cfg.max_degree);
    }
}

/// Outcome of a nonvanishing approximation.
#[derive(Debug, Clone, PartialEq)]
pub struct NonvanishingReport {
    pub degree: usize,
    pub sup_err: f64,
    /// Boundary winding of input and output (argument principle): equal
    /// values certify identical zero counts inside K.
    pub winding_f: i64,
    pub winding_result: i64,
}

/// Total boundary winding (zero count inside K) of a function.
pub fn boundary_winding<F: FnMut(C64) -> C64>(
    f: &mut F,
    k: &CompactSet,
    cfg: &Config,
) -> Result<i64> {
    let mut total = 0;
    for contour in k.boundary_contours(512) {
        total += winding_number_fn(f, &contour, 1024, cfg.pole_clearance(k.diameter()))?;
    }
    Ok(total)
}

/// Approximation preserving the zero divisor: returns `B * exp(h)` with the
/// same zeros as `f` in `K` and sup error below `eps` on the check points.
pub fn approx_nonvanishing(
    f: &HoloFunction,
    k: &CompactSet,
    eps: f64,
    cfg: &Config,
) -> Result<(HoloFunction, NonvanishingReport)> {
    assert!(eps > 0.0);
    let clearance = cfg.pole_clearance(k.diameter());
    let boundary = k.boundary_points();
    let sup_f = boundary.iter().map(|&z| f.eval(z).norm()).fold(0.0, f64::max);
    let min_bd = boundary.iter().map(|&z| f.eval(z).norm()).fold(f64::INFINITY, f64::min);
    if min_bd <= 1e-9 * sup_f.max(1e-300) {
        return Err(Error::ZeroOnBoundary { min_abs: min_bd });
    }
    // explicit divisor factor: zeros inside K, plus the hole winding on an annulus
    let zeros = holo_zeros_filtered(f, |z| k.contains(z, clearance));
    for (z, _) in zeros.entries() {
        if !k.interior_contains(*z, clearance) {
            return Err(Error::ZeroOnBoundary { min_abs: f.eval(*z).norm() });
        }
    }
    let mut b = HoloFunction::constant(k.center(), c64(1.0, 0.0));
    for &(q, m) in zeros.entries() {
        for _ in 0..m {
            b = &b * &HoloFunction::from_roots(k.center(), &[q]);
        }
    }
    if let CompactKind::Annulus { center, r_inner, .. } = &k.kind {
        if *r_inner > 0.0 {
            let inner = Path::circle(*center, *r_inner, 512);
            let bb = b.clone();
            let w = winding_number_fn(&mut |z| f.eval(z) / bb.eval(z), &inner, 1024, clearance)?;
            if w != 0 {
                b = &b * &HoloFunction::monomial(k.center(), w, c64(1.0, 0.0));
            }
        }
    }
    // exact shortcut: f equals its divisor factor up to a constant
    if let Ok(q) = f.div_exact(&b, 1e-13) {
        if q.low_exponent() == 0 && q.high_exponent() == 0 {
            let result = b.scale(q.coeff(0));
            let winding_f = boundary_winding(&mut |z| f.eval(z), k, cfg)?;
            return Ok((
                result,
                NonvanishingReport { degree: 0, sup_err: 0.0, winding_f, winding_result: winding_f },
            ));
        }
    }
    let log_samples = boundary_log_samples(f, &b, k, cfg)?;
    let checks = check_points(k, 1024.max(k.boundary_samples));
    let winding_f = boundary_winding(&mut |z| f.eval(z), k, cfg)?;
    let mut degree = 8usize;
    let mut best_err = f64::INFINITY;
    loop {
        let basis = match &k.kind {
            CompactKind::Annulus { r_inner, .. } if *r_inner > 0.0 => {
                LaurentBasis::symmetric(k.center(), degree / 2, k.circumradius())
            }
            _ => LaurentBasis::polynomial(k.center(), degree, k.circumradius()),
        };
        if log_samples.len() < basis.len() {
            return Err(Error::DegreeBudgetExceeded { max_degree: degree, eps, best: best_err });
        }
        let pts: Vec<C64> = log_samples.iter().map(|&(z, _)| z).collect();
        let vals: Vec<C64> = log_samples.iter().map(|&(_, v)| v).collect();
        let h = fit_laurent(&pts, &vals, &[], &basis, cfg.ridge_rel);
        let sup_err = checks
            .iter()
            .map(|&z| (f.eval(z) - b.eval(z) * h.eval(z).exp()).norm())
            .fold(0.0, f64::max);
        if sup_err < eps {
            // materialize exp(h) and re-verify on the same points
            let (e, _r) =
                crate::fit::refit_on(&mut |z| h.eval(z).exp(), k, degree.max(cfg.refit_degree), cfg)?;
            let result = &b * &e;
            let sup_err_mat = checks
                .iter()
                .map(|&z| (f.eval(z) - result.eval(z)).norm())
                .fold(0.0, f64::max);
            if sup_err_mat < eps {
                let winding_result = boundary_winding(&mut |z| result.eval(z), k, cfg)?;
                if winding_result != winding_f {
                    return Err(Error::WindingMismatch {
                        residual: (winding_result - winding_f) as f64,
                    });
                }
                return Ok((
                    result,
                    NonvanishingReport { degree, sup_err: sup_err_mat, winding_f, winding_result },
                ));
            }
        }
        best_err = best_err.min(sup_err);
        if degree >= cfg.max_degree {
            return Err(Error::DegreeBudgetExceeded {
                max_degree: cfg.max_degree,
                eps,
                best: best_err,
            });
        }
        degree = (degree * 2).min(cfg.max_degree);
    }
}

/// Branch-consistent log(f/B) samples along the boundary contours of `K`
/// (annulus contours are linked through a radial bridge).
fn boundary_log_samples(
    f: &HoloFunction,
    b: &HoloFunction,
    k: &CompactSet,
    cfg: &Config,
) -> Result<Vec<(C64, C64)>> {
    let clearance = cfg.pole_clearance(k.diameter());
    let mut ratio = |z: C64| f.eval(z) / b.eval(z);
    let mut out = Vec::new();
    match &k.kind {
        CompactKind::Annulus { center, r_inner, r_outer } if *r_inner > 0.0 => {
            let n = k.boundary_samples.max(256);
            let outer = Path::circle(*center, *r_outer, 512);
            let logs = log_along_fn(&mut ratio, &outer, n, clearance)?;
            let pts = outer.sample(n);
            let closure = logs.last().unwrap() - logs[0];
            if closure.norm() > 1e-6 {
                return Err(Error::WindingMismatch { residual: closure.norm() });
            }
            for (z, l) in pts.iter().zip(logs.iter()) {
                out.push((*z, *l));
            }
            // bridge to the inner contour to stay on one branch
            let bridge = Path::segment(center + c64(*r_outer, 0.0), center + c64(*r_inner, 0.0));
            let bridge_logs = log_along_fn(&mut ratio, &bridge, 64, clearance)?;
            let offset = logs[0] - bridge_logs[0];
            let inner_anchor = *bridge_logs.last().unwrap() + offset;
            let inner = Path::circle(*center, *r_inner, 512);
            let inner_logs = log_along_fn(&mut ratio, &inner, n, clearance)?;
            let inner_pts = inner.sample(n);
            let inner_closure = inner_logs.last().unwrap() - inner_logs[0];
            if inner_closure.norm() > 1e-6 {
                return Err(Error::WindingMismatch { residual: inner_closure.norm() });
            }
            let shift = inner_anchor - inner_logs[0];
            for (z, l) in inner_pts.iter().zip(inner_logs.iter()) {
                out.push((*z, l + shift));
            }
        }
        _ => {
            for contour in k.boundary_contours(512) {
                let n = k.boundary_samples.max(256);
                let logs = log_along_fn(&mut ratio, &contour, n, clearance)?;
                let pts = contour.sample(n);
                let closure = logs.last().unwrap() - logs[0];
                if closure.norm() > 1e-6 {
                    return Err(Error::WindingMismatch { residual: closure.norm() });
                }
                for (z, l) in pts.iter().zip(logs.iter()) {
                    out.push((*z, *l));
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::integrate_fn;

    fn cfg() -> Config {
        Config::default()
    }

    fn unit_disk() -> CompactSet {
        CompactSet::disk(c64(0.0, 0.0), 1.0, 1024)
    }

    fn geometric_pole() -> HoloFunction {
        // 1/(z - 2) as a Laurent monomial about 2
        HoloFunction::monomial(c64(2.0, 0.0), -1, c64(1.0, 0.0))
    }

    #[test]
    fn taylor_truncation_matches_geometric_tail() {
        // 1/(z-2) = -sum_k z^k / 2^(k+1); at degree 21 the boundary error is
        // bounded by the geometric tail < 4.8e-7
        let f = geometric_pole();
        let (p, report) =
            approx_with_divisor_at_degree(&f, &unit_disk(), &Divisor::empty(), 21, &cfg()).unwrap();
        assert!(report.sup_err <= 4.8e-7, "sup err {}", report.sup_err);
        for kexp in 0..=21i64 {
            let expect = -(0.5f64.powi(kexp as i32 + 1));
            assert!((p.coeff(kexp) - c64(expect, 0.0)).norm() < 1e-12, "k={kexp}");
        }
        // the minimal-degree search achieves eps = 1e-6 by degree <= 21
        let (_, r) = approx_with_divisor(&f, &unit_disk(), &Divisor::empty(), 1e-6, &cfg()).unwrap();
        assert!(r.degree <= 21 && r.sup_err < 1e-6, "{r:?}");
    }

    #[test]
    fn identity_case_returns_input() {
        let f = HoloFunction::from_coeffs(
            c64(0.0, 0.0),
            0,
            alloc::vec![c64(0.0, 0.0), c64(-0.3, 1.0), c64(2.0, 0.0)],
        );
        let d = Divisor::point(c64(0.0, 0.0), 1);
        let (p, r) = approx_with_divisor(&f, &unit_disk(), &d, 1e-12, &cfg()).unwrap();
        assert_eq!(p, f);
        assert_eq!(r.sup_err, 0.0);
    }

    #[test]
    fn hermite_correction_pins_derivatives() {
        // D = {0 with multiplicity 2}: p(0) = f(0), p'(0) = f'(0)
        let f = geometric_pole();
        let d = Divisor::point(c64(0.0, 0.0), 2);
        let (p, report) = approx_with_divisor(&f, &unit_disk(), &d, 1e-5, &cfg()).unwrap();
        assert!(report.sup_err < 1e-5);
        assert!(report.constraint_residual < 1e-12);
        assert!((p.eval(c64(0.0, 0.0)) - c64(-0.5, 0.0)).norm() < 1e-12);
        assert!((p.derivative().eval(c64(0.0, 0.0)) - c64(-0.25, 0.0)).norm() < 1e-12);
        // re-check on 1024 fresh boundary samples
        let pts = unit_disk().boundary_points_n(1024);
        let sup = pts.iter().map(|&z| (f.eval(z) - p.eval(z)).norm()).fold(0.0, f64::max);
        assert!(sup < 1e-5);
    }

    #[test]
    fn bad_divisor_rejected() {
        let f = geometric_pole();
        let on_boundary = Divisor::point(c64(1.0, 0.0), 1);
        assert!(matches!(
            approx_with_divisor(&f, &unit_disk(), &on_boundary, 1e-4, &cfg()),
            Err(Error::BadDivisor { .. })
        ));
        let outside = Divisor::point(c64(1.5, 0.0), 1);
        assert!(matches!(
            approx_with_divisor(&f, &unit_disk(), &outside, 1e-4, &cfg()),
            Err(Error::BadDivisor { .. })
        ));
        let non_integral = Divisor::point(c64(0.0, 0.0), -1);
        assert!(approx_with_divisor(&f, &unit_disk(), &non_integral, 1e-4, &cfg()).is_err());
    }

    #[test]
    fn monotone_budget() {
        let f = geometric_pole();
        let k = unit_disk();
        let (_, r1) = approx_with_divisor(&f, &k, &Divisor::empty(), 1e-4, &cfg()).unwrap();
        let (_, r2) = approx_with_divisor(&f, &k, &Divisor::empty(), 5e-5, &cfg()).unwrap();
        assert!(r2.sup_err < 5e-5);
        assert!(r2.sup_err <= r1.sup_err || r2.degree > r1.degree);
    }

    #[test]
    fn degree_budget_exceeded_reported() {
        // a pole just off the boundary needs a huge degree at eps 1e-12
        let f = HoloFunction::monomial(c64(1.05, 0.0), -1, c64(1.0, 0.0));
        let tight = Config { max_degree: 16, ..cfg() };
        assert!(matches!(
            approx_with_divisor(&f, &unit_disk(), &Divisor::empty(), 1e-12, &tight),
            Err(Error::DegreeBudgetExceeded { .. })
        ));
    }

    #[test]
    fn nonvanishing_exponential() {
        // f = e^z (entered exactly through a refit) comes back with no zeros
        let k = unit_disk();
        let (ez, _) = crate::fit::exp_refit(&HoloFunction::z(c64(0.0, 0.0)), &k, &cfg()).unwrap();
        let (res, report) = approx_nonvanishing(&ez, &k, 1e-8, &cfg()).unwrap();
        assert!(report.sup_err < 1e-8);
        assert_eq!(report.winding_f, 0);
        assert_eq!(report.winding_result, 0);
        assert!((res.eval(c64(0.5, 0.5)) - c64(0.5, 0.5).exp()).norm() < 1e-7);
    }

    #[test]
    fn divisor_factor_exact_for_monomial() {
        let k = unit_disk();
        let f = HoloFunction::z(c64(0.0, 0.0));
        let (res, report) = approx_nonvanishing(&f, &k, 1e-3, &cfg()).unwrap();
        assert_eq!(report.sup_err, 0.0);
        assert_eq!(res, f);
    }

    #[test]
    fn zero_at_origin_preserved_for_composite_data() {
        // f = z * exp(1/(z-3)) on the unit disk: zero only at 0
        let k = unit_disk();
        let inner = HoloFunction::monomial(c64(3.0, 0.0), -1, c64(1.0, 0.0));
        let (e, _) = crate::fit::refit_on(&mut |z| inner.eval(z).exp(), &k, 32, &cfg()).unwrap();
        let f = &HoloFunction::z(c64(0.0, 0.0)) * &e;
        let (res, report) = approx_nonvanishing(&f, &k, 1e-6, &cfg()).unwrap();
        assert!(report.sup_err < 1e-6);
        // argument-principle oracle: one zero inside the disk
        let mut rf = |z: C64| res.eval(z);
        let zeros = boundary_winding(&mut rf, &k, &cfg()).unwrap();
        assert_eq!(zeros, 1);
        assert_eq!(report.winding_f, report.winding_result);
        // the zero sits exactly at the origin: res = z * (nonvanishing)
        assert!(res.low_exponent() >= 1);
    }

    #[test]
    fn zero_on_boundary_rejected() {
        let k = unit_disk();
        let f = HoloFunction::from_roots(c64(0.0, 0.0), &[c64(1.0, 0.0)]);
        assert!(matches!(
            approx_nonvanishing(&f, &k, 1e-6, &cfg()),
            Err(Error::ZeroOnBoundary { .. })
        ));
    }

    #[test]
    fn annulus_winding_correction() {
        // f = z^2 on the catenoid annulus: the divisor factor is the
        // monomial z^2 itself (winding 2 around the hole, no ring zeros)
        let k = CompactSet::annulus(c64(0.0, 0.0), 0.5, 2.0, 1024);
        let f = HoloFunction::monomial(c64(0.0, 0.0), 2, c64(1.0, 0.0));
        let (res, report) = approx_nonvanishing(&f, &k, 1e-8, &cfg()).unwrap();
        // no zeros in the ring itself (the boundary winding of an annulus
        // counts ring zeros only)
        assert_eq!(report.winding_f, 0);
        assert_eq!(report.winding_result, 0);
        // the hole winding is carried by the monomial factor of the result
        let inner = Path::circle(c64(0.0, 0.0), 0.5, 512);
        let w = winding_number_fn(&mut |z| res.eval(z), &inner, 1024, 1e-12).unwrap();
        assert_eq!(w, 2);
        assert_eq!(res.low_exponent(), 2);
        assert!((res.eval(c64(0.0, 1.2)) - f.eval(c64(0.0, 1.2))).norm() < 1e-8);
    }

    #[test]
    fn divisor_preservation_integral_oracle() {
        // (1/2 pi i) \oint d(res)/res computed by quadrature equals the zero
        // count of the input
        let k = unit_disk();
        let inner = HoloFunction::monomial(c64(3.0, 0.0), -1, c64(1.0, 0.0));
        let (e, _) = crate::fit::refit_on(&mut |z| inner.eval(z).exp(), &k, 32, &cfg()).unwrap();
        let f = &HoloFunction::z(c64(0.0, 0.0)) * &e;
        let (res, _) = approx_nonvanishing(&f, &k, 1e-6, &cfg()).unwrap();
        let dres = res.derivative();
        let contour = Path::circle(c64(0.0, 0.0), 1.0, 512);
        let integral = integrate_fn(&mut |z| dres.eval(z) / res.eval(z), &contour, &cfg()).unwrap();
        let n = integral / c64(0.0, core::f64::consts::TAU);
        assert!((n - c64(1.0, 0.0)).norm() < 1e-6, "zero count {n}");
    }
}
