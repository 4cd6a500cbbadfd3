//! Contour integration by composite Gauss-Legendre quadrature with adaptive
//! halving, plus continuous logarithms along paths.

use alloc::vec::Vec;

// required by the no_std build; test builds see std's inherent methods
#[allow(unused_imports)]
use num_traits::Float;

use crate::config::Config;
use crate::domain::Path;
use crate::error::Error;
use crate::holo::{c64, HoloFunction, OneForm};
use crate::{Result, C64};

/// 16-point Gauss-Legendre nodes and weights on [-1, 1].
pub const GL16: [(f64, f64); 16] = [
    (-0.9894009349916499325962, 0.02715245941175409485178),
    (-0.944575023073232576078, 0.06225352393864789286284),
    (-0.8656312023878317438805, 0.09515851168249278480993),
    (-0.7554044083550030338951, 0.1246289712555338720525),
    (-0.6178762444026437484467, 0.1495959888165767320815),
    (-0.4580167776572273863424, 0.1691565193950025381893),
    (-0.2816035507792589132305, 0.1826034150449235888668),
    (-0.09501250983763744018532, 0.1894506104550684962854),
    (0.09501250983763744018532, 0.1894506104550684962854),
    (0.2816035507792589132305, 0.1826034150449235888668),
    (0.4580167776572273863424, 0.1691565193950025381893),
    (0.6178762444026437484467, 0.1495959888165767320815),
    (0.7554044083550030338951, 0.1246289712555338720525),
    (0.8656312023878317438805, 0.09515851168249278480993),
    (0.944575023073232576078, 0.06225352393864789286284),
    (0.9894009349916499325962, 0.02715245941175409485178),
];

/// GL16 on one straight segment of `f(z) dz`.
fn gl16_segment<F: FnMut(C64) -> C64>(f: &mut F, a: C64, b: C64) -> C64 {
    let mid = (a + b) * c64(0.5, 0.0);
    let half = (b - a) * c64(0.5, 0.0);
    let mut acc = c64(0.0, 0.0);
    for &(x, w) in GL16.iter() {
        acc += f(mid + half * c64(x, 0.0)) * c64(w, 0.0);
    }
    acc * half
}

fn adaptive_segment<F: FnMut(C64) -> C64>(
    f: &mut F,
    a: C64,
    b: C64,
    tol_abs: f64,
    depth: usize,
    max_depth: usize,
) -> Result<C64> {
    let whole = gl16_segment(f, a, b);
    let mid = (a + b) * c64(0.5, 0.0);
    let left = gl16_segment(f, a, mid);
    let right = gl16_segment(f, mid, b);
    let refined = left + right;
    if (whole - refined).norm() <= tol_abs {
        return Ok(refined);
    }
    if depth >= max_depth {
        return Err(Error::QuadratureNotConverged { max_depth });
    }
    let l = adaptive_segment(f, a, mid, tol_abs * 0.5, depth + 1, max_depth)?;
    let r = adaptive_segment(f, mid, b, tol_abs * 0.5, depth + 1, max_depth)?;
    Ok(l + r)
}

/// Adaptive composite integral of a pointwise-evaluable density along a path.
///
/// The tolerance is relative to an initial magnitude estimate of the
/// integral (with an absolute floor), distributed over segments by length.
pub fn integrate_fn<F: FnMut(C64) -> C64>(f: &mut F, path: &Path, cfg: &Config) -> Result<C64> {
    let segs = path.segments();
    let total_len = path.length();
    // magnitude estimate from a single coarse pass
    let mut coarse_abs = 0.0;
    for &(a, b) in &segs {
        coarse_abs += gl16_segment(f, a, b).norm();
    }
    let scale = coarse_abs.max(1.0);
    let mut acc = c64(0.0, 0.0);
    for &(a, b) in &segs {
        let frac = (b - a).norm() / total_len;
        let tol_abs = cfg.quad_tol * scale * frac.max(1e-3);
        acc += adaptive_segment(f, a, b, tol_abs, 0, cfg.quad_max_depth)?;
    }
    Ok(acc)
}

fn check_pole_clearance(density: &HoloFunction, path: &Path, cfg: &Config) -> Result<()> {
    if density.pole_order() > 0 {
        let clearance = cfg.pole_clearance(path.length());
        let distance = path.distance_to(density.center());
        if distance < clearance {
            return Err(Error::PoleTooClose { pole: density.center(), clearance, distance });
        }
    }
    Ok(())
}

/// Contour integral of a 1-form along a path.
pub fn integrate(form: &OneForm, path: &Path, cfg: &Config) -> Result<C64> {
    check_pole_clearance(&form.density, path, cfg)?;
    integrate_fn(&mut |z| form.density.eval(z), path, cfg)
}

/// Integral of a 1-form along a path from `base` to `target`; the path must
/// actually connect them.
pub fn primitive(form: &OneForm, base: C64, target: C64, path: &Path, cfg: &Config) -> Result<C64> {
    let tol = 1e-9 * (1.0 + path.length());
    if (path.start() - base).norm() > tol || (path.end() - target).norm() > tol {
        return Err(Error::InvalidArgument(
            "path endpoints do not match base/target".into(),
        ));
    }
    integrate(form, path, cfg)
}

/// Continuous branch of `log f` along a path, anchored at the principal
/// value at the start. Returns the branch at `n` equidistributed samples.
pub fn log_along(f: &HoloFunction, path: &Path, n: usize, cfg: &Config) -> Result<Vec<C64>> {
    let zero_tol = cfg.pole_clearance(path.length().max(1.0));
    log_along_fn(&mut |z| f.eval(z), path, n, zero_tol)
}

/// Closure variant of [`log_along`]. Consecutive branch jumps are kept
/// below pi by local refinement; `zero_tol` is the |f| floor below which
/// the branch is declared undefined.
pub fn log_along_fn<F: FnMut(C64) -> C64>(
    f: &mut F,
    path: &Path,
    n: usize,
    zero_tol: f64,
) -> Result<Vec<C64>> {
    let pts = if path.is_closed() {
        let mut p = path.sample(n);
        p.push(path.start());
        p
    } else {
        path.sample(n)
    };
    let v0 = f(pts[0]);
    if v0.norm() <= zero_tol {
        return Err(Error::ZeroOnPath { min_abs: v0.norm() });
    }
    let mut out = Vec::with_capacity(pts.len());
    out.push(v0.ln());
    let mut prev_z = pts[0];
    let mut prev_log = out[0];
    let mut prev_val = v0;
    for &z in pts.iter().skip(1) {
        let log = continue_log(f, prev_z, prev_val, prev_log, z, 0, zero_tol)?;
        prev_val = f(z);
        prev_z = z;
        prev_log = log;
        out.push(log);
    }
    Ok(out)
}

/// One continuation step with recursive midpoint refinement when the
/// argument jump is too large.
fn continue_log<F: FnMut(C64) -> C64>(
    f: &mut F,
    z0: C64,
    v0: C64,
    log0: C64,
    z1: C64,
    depth: usize,
    zero_tol: f64,
) -> Result<C64> {
    let v1 = f(z1);
    if v1.norm() <= zero_tol {
        return Err(Error::ZeroOnPath { min_abs: v1.norm() });
    }
    let ratio = v1 / v0;
    let jump = ratio.ln();
    if jump.im.abs() < 0.9 * core::f64::consts::PI {
        return Ok(log0 + jump);
    }
    if depth >= 24 {
        return Err(Error::ZeroOnPath { min_abs: v1.norm().min(v0.norm()) });
    }
    let mid = (z0 + z1) * c64(0.5, 0.0);
    let lm = continue_log(f, z0, v0, log0, mid, depth + 1, zero_tol)?;
    let vm = f(mid);
    continue_log(f, mid, vm, lm, z1, depth + 1, zero_tol)
}

/// Winding number of `f` along a closed path, by argument tracking.
pub fn winding_number_fn<F: FnMut(C64) -> C64>(
    f: &mut F,
    path: &Path,
    n: usize,
    zero_tol: f64,
) -> Result<i64> {
    assert!(path.is_closed() || (path.start() - path.end()).norm() <= 1e-12);
    let logs = log_along_fn(f, path, n, zero_tol)?;
    let total = logs.last().unwrap() - logs[0];
    let w = total.im / core::f64::consts::TAU;
    let rounded = w.round();
    if (w - rounded).abs() > 1e-3 {
        return Err(Error::WindingMismatch { residual: (w - rounded).abs() });
    }
    Ok(rounded as i64)
}
