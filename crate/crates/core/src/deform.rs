//! The two deformation engines of the construction: rigid wedge rotations
//! acting on triples, and the Gauss-map arc deformation `g -> g * rho_t`
//! with intermediate-value shooting for the parameter `t`.

use alloc::vec::Vec;

// required by the no_std build; test builds see std's inherent methods
#[allow(unused_imports)]
use num_traits::Float;

use crate::config::Config;
use crate::domain::{CompactSet, Path};
use crate::error::Error;
use crate::holo::c64;
use crate::quad::GL16;
use crate::weierstrass::{NullTriple, SpinData};
use crate::{Point3, Result, C64};

pub use crate::wedge::choose_lambda;

/// Rotation about the line `{x1 = 0, x3 = height}` parallel to the x2 axis,
/// by `angle` in the (x1, x3) plane. Maps the boundary plane of
/// `Pi_height(angle)` onto the plane `x3 = height`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WedgeRotation {
    pub angle: f64,
    pub height: f64,
}

impl WedgeRotation {
    pub fn new(angle: f64, height: f64) -> Self {
        WedgeRotation { angle, height }
    }

    pub fn inverse(&self) -> WedgeRotation {
        WedgeRotation { angle: -self.angle, height: self.height }
    }

    /// Rigid rotation of a point (isometry; fixes the axis).
    pub fn rotate_point(&self, p: Point3) -> Point3 {
        let (s, c) = self.angle.sin_cos();
        let dz = p.z - self.height;
        Point3::new(c * p.x - s * dz, p.y, self.height + s * p.x + c * dz)
    }

    /// Linear action on form triples (the translation part drops out).
    pub fn mix_densities(&self, d: [C64; 3]) -> [C64; 3] {
        let (s, c) = self.angle.sin_cos();
        [
            d[0] * c64(c, 0.0) - d[2] * c64(s, 0.0),
            d[1],
            d[0] * c64(s, 0.0) + d[2] * c64(c, 0.0),
        ]
    }

    /// Rotated triple (exact coefficient mixing), revalidated on the domain.
    pub fn rotate_triple(
        &self,
        t: &NullTriple,
        domain: &CompactSet,
        cfg: &Config,
    ) -> Result<NullTriple> {
        let (s, c) = self.angle.sin_cos();
        let p1 = &t.phi[0].density.scale(c64(c, 0.0)) - &t.phi[2].density.scale(c64(s, 0.0));
        let p3 = &t.phi[0].density.scale(c64(s, 0.0)) + &t.phi[2].density.scale(c64(c, 0.0));
        NullTriple::new(
            [
                crate::holo::OneForm::new(p1),
                t.phi[1].clone(),
                crate::holo::OneForm::new(p3),
            ],
            domain,
            cfg,
        )
    }
}

/// Gauss map / height differential view of a triple in some frame. The
/// pipeline implements this for materialized spin data and for its own
/// rotated stage triples.
pub trait SpinView {
    fn g_at(&self, z: C64) -> C64;
    /// Density of phi3 with respect to the global coordinate.
    fn f3_at(&self, z: C64) -> C64;
}

impl SpinView for SpinData {
    fn g_at(&self, z: C64) -> C64 {
        self.g.eval(z)
    }
    fn f3_at(&self, z: C64) -> C64 {
        self.phi3.density.eval(z)
    }
}

/// Deformation arc: a straight segment from an outer-boundary point to an
/// inner-set point, carried with the parametrization `z(s) = S + s (T-S)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DeformArc {
    pub gamma: Path,
}

impl DeformArc {
    /// The arc must be a single straight segment so the chart pullback has
    /// constant derivative.
    pub fn segment(s: C64, t: C64) -> Self {
        DeformArc { gamma: Path::segment(s, t) }
    }

    pub fn start(&self) -> C64 {
        self.gamma.start()
    }

    pub fn end(&self) -> C64 {
        self.gamma.end()
    }

    pub fn z_at(&self, s: f64) -> C64 {
        self.start() + (self.end() - self.start()) * c64(s, 0.0)
    }

    /// dz/ds of the parametrization.
    pub fn derivative(&self) -> C64 {
        self.end() - self.start()
    }
}

/// Quintic smoothstep (zero first and second derivatives at both ends).
fn smoothstep5(u: f64) -> f64 {
    let u = u.clamp(0.0, 1.0);
    u * u * u * (10.0 + u * (-15.0 + 6.0 * u))
}

/// Blend exponent profile: 0 outside [1/3, 2/3], 1 on the middle plateau,
/// quintic-smooth on transition windows of width `w`.
fn blend_sigma(s: f64, w: f64) -> f64 {
    if s <= 1.0 / 3.0 || s >= 2.0 / 3.0 {
        0.0
    } else if s < 1.0 / 3.0 + w {
        smoothstep5((s - 1.0 / 3.0) / w)
    } else if s > 2.0 / 3.0 - w {
        smoothstep5((2.0 / 3.0 - s) / w)
    } else {
        1.0
    }
}

/// Number of interior samples used to unwrap the plateau logarithm.
const ARC_LOG_SAMPLES: usize = 2048;

/// The deformed Gauss map `ghat = g * rho_t` along an arc.
///
/// `rho_t` is 1 outside the middle parameter third, equals `t/(g f3)` on
/// the plateau (`f3` taken in the arc chart, where dz/ds is constant), and
/// blends in log space on windows of width `min(1/(4+t^2), 1/8)` so it
/// never vanishes. Measured modulus bounds are reported.
pub struct ArcDeformation<'a, V: SpinView> {
    view: &'a V,
    arc: &'a DeformArc,
    pub t: f64,
    pub window: f64,
    log_v: Vec<C64>,
    /// Measured lower bound of |rho| over the arc.
    pub min_abs_rho: f64,
    /// Measured upper bound of |rho| over the arc.
    pub max_abs_rho: f64,
}

/// Builds the deformation family member at parameter `t`, precomputing a
/// continuous branch of `log(t/(g f3))` along the arc.
pub fn rho_family<'a, V: SpinView>(
    view: &'a V,
    arc: &'a DeformArc,
    t: f64,
) -> Result<ArcDeformation<'a, V>> {
    assert!(t != 0.0, "rho_0 is not part of the family");
    let dz = arc.derivative();
    let n = ARC_LOG_SAMPLES;
    // interior guard: g*f3 must stay away from zero on the arc
    let mut min_gf3 = f64::INFINITY;
    let mut max_gf3 = 0.0f64;
    let mut vals = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let s = k as f64 / n as f64;
        let z = arc.z_at(s);
        let gf3 = view.g_at(z) * view.f3_at(z) * dz;
        min_gf3 = min_gf3.min(gf3.norm());
        max_gf3 = max_gf3.max(gf3.norm());
        vals.push(c64(t, 0.0) / gf3);
    }
    if min_gf3 <= 1e-12 * max_gf3.max(1e-300) {
        return Err(Error::ZeroOnArc { min_abs: min_gf3 });
    }
    // continuous branch of log v, anchored near the principal value at the
    // arc midpoint
    let mut log_v = Vec::with_capacity(n + 1);
    let mid = n / 2;
    let mut lv = vals[mid].ln();
    let mut branch = alloc::vec![c64(0.0, 0.0); n + 1];
    branch[mid] = lv;
    for k in (0..mid).rev() {
        let jump = (vals[k] / vals[k + 1]).ln();
        if jump.im.abs() > 0.95 * core::f64::consts::PI {
            return Err(Error::BlendFailure("log branch jump >= pi between arc samples".into()));
        }
        branch[k] = branch[k + 1] + jump;
    }
    lv = branch[mid];
    for k in mid + 1..=n {
        let jump = (vals[k] / vals[k - 1]).ln();
        if jump.im.abs() > 0.95 * core::f64::consts::PI {
            return Err(Error::BlendFailure("log branch jump >= pi between arc samples".into()));
        }
        lv += jump;
        branch[k] = lv;
    }
    log_v.extend_from_slice(&branch);
    let window = (1.0 / (4.0 + t * t)).min(0.125);
    let mut out = ArcDeformation {
        view,
        arc,
        t,
        window,
        log_v,
        min_abs_rho: f64::INFINITY,
        max_abs_rho: 0.0,
    };
    let mut min_r = f64::INFINITY;
    let mut max_r = 0.0f64;
    for k in 0..=n {
        let r = out.rho_at(k as f64 / n as f64).norm();
        min_r = min_r.min(r);
        max_r = max_r.max(r);
    }
    out.min_abs_rho = min_r;
    out.max_abs_rho = max_r;
    Ok(out)
}

impl<'a, V: SpinView> ArcDeformation<'a, V> {
    fn log_v_at(&self, s: f64) -> C64 {
        let n = self.log_v.len() - 1;
        let x = (s.clamp(0.0, 1.0)) * n as f64;
        let i = (x as usize).min(n - 1);
        let frac = x - i as f64;
        // branch-consistent value: principal log shifted to the branch of
        // the interpolated grid value
        let interp = self.log_v[i] * c64(1.0 - frac, 0.0) + self.log_v[i + 1] * c64(frac, 0.0);
        let z = self.arc.z_at(s);
        let v = c64(self.t, 0.0) / (self.view.g_at(z) * self.view.f3_at(z) * self.arc.derivative());
        let principal = v.ln();
        let turns = ((interp.im - principal.im) / core::f64::consts::TAU).round();
        c64(principal.re, principal.im + turns * core::f64::consts::TAU)
    }

    /// log rho at arc parameter `s` (0 outside the deformation window).
    pub fn log_rho_at(&self, s: f64) -> C64 {
        let sigma = blend_sigma(s, self.window);
        if sigma == 0.0 {
            return c64(0.0, 0.0);
        }
        self.log_v_at(s) * c64(sigma, 0.0)
    }

    /// The never-vanishing factor rho_t at arc parameter `s`.
    pub fn rho_at(&self, s: f64) -> C64 {
        self.log_rho_at(s).exp()
    }

    /// Deformed Gauss map along the arc.
    pub fn ghat_at(&self, s: f64) -> C64 {
        self.view.g_at(self.arc.z_at(s)) * self.rho_at(s)
    }

    /// Pullback density (w.r.t. ds) of the first deformed spin form
    /// `psi1_hat = (1/ghat - ghat) f3 / 2`.
    pub fn psi1_hat_pullback(&self, s: f64) -> C64 {
        let z = self.arc.z_at(s);
        let f3 = self.view.f3_at(z) * self.arc.derivative();
        let gh = self.ghat_at(s);
        (c64(1.0, 0.0) / gh - gh) * f3 * c64(0.5, 0.0)
    }

    /// Pullback density of the undeformed `psi1`.
    pub fn psi1_pullback(&self, s: f64) -> C64 {
        let z = self.arc.z_at(s);
        let f3 = self.view.f3_at(z) * self.arc.derivative();
        let g = self.view.g_at(z);
        (c64(1.0, 0.0) / g - g) * f3 * c64(0.5, 0.0)
    }
}

/// Piecewise Gauss-Legendre integral over the arc parameter, aligned with
/// the blend breakpoints.
fn integrate_arc<F: FnMut(f64) -> C64>(f: &mut F, window: f64) -> C64 {
    let third = 1.0 / 3.0;
    let breaks = [0.0, third, third + window, 2.0 * third - window, 2.0 * third, 1.0];
    let mut acc = c64(0.0, 0.0);
    for pair in breaks.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        if b <= a {
            continue;
        }
        let panels = 6;
        for p in 0..panels {
            let pa = a + (b - a) * p as f64 / panels as f64;
            let pb = a + (b - a) * (p + 1) as f64 / panels as f64;
            let mid = 0.5 * (pa + pb);
            let half = 0.5 * (pb - pa);
            for &(x, w) in GL16.iter() {
                acc += f(mid + half * x) * c64(w * half, 0.0);
            }
        }
    }
    acc
}

/// Real x1-displacement along the arc for the deformed data at parameter t.
pub fn deformed_shift<V: SpinView>(view: &V, arc: &DeformArc, t: f64) -> Result<f64> {
    let d = rho_family(view, arc, t)?;
    let hat = integrate_arc(&mut |s| d.psi1_hat_pullback(s), d.window);
    Ok(hat.re)
}

/// Undeformed x1-displacement along the arc.
pub fn base_shift<V: SpinView>(view: &V, arc: &DeformArc) -> Result<f64> {
    let d = rho_family(view, arc, 1.0)?;
    let base = integrate_arc(&mut |s| d.psi1_pullback(s), d.window);
    Ok(base.re)
}

/// Outcome of the shooting solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShootReport {
    pub t0: f64,
    /// |Re int psi1_hat - (Re int psi1 - target_shift)| at t0.
    pub residual: f64,
    pub scanned_max: f64,
    pub bisections: usize,
}

/// Finds `t0` with `Re \int psi1_hat(t0) = Re \int psi1 - target_shift` by
/// a geometric bracket scan (`t = +-1, 2, 4, ..., 2^20`) and bisection.
pub fn shoot_t<V: SpinView>(
    view: &V,
    arc: &DeformArc,
    target_shift: f64,
    shoot_tol: f64,
) -> Result<ShootReport> {
    let base = base_shift(view, arc)?;
    let target = base - target_shift;
    let tol = if shoot_tol > 0.0 { shoot_tol } else { 1e-9 * target_shift.abs() + 1e-12 };
    let mut residual = |t: f64| -> Result<f64> {
        // the family degenerates at t = 0; a bisection midpoint there is
        // evaluated on the adjacent member
        let t = if t == 0.0 { 1e-12 } else { t };
        Ok(deformed_shift(view, arc, t)? - target)
    };
    // geometric scan on both sides
    let mut ts: Vec<f64> = Vec::new();
    let mut m = 1.0f64;
    while m <= (1 << 20) as f64 {
        ts.push(m);
        m *= 2.0;
    }
    let mut bracket: Option<(f64, f64, f64, f64)> = None;
    'outer: for sign in [1.0f64, -1.0] {
        let mut prev: Option<(f64, f64)> = None;
        for &tm in &ts {
            let t = sign * tm;
            let r = residual(t)?;
            if r.abs() <= tol {
                return Ok(ShootReport { t0: t, residual: r.abs(), scanned_max: tm, bisections: 0 });
            }
            if let Some((tp, rp)) = prev {
                if rp * r < 0.0 {
                    bracket = Some((tp, rp, t, r));
                    break 'outer;
                }
            }
            prev = Some((t, r));
        }
    }
    // the two scan directions share no bracket: check the crossing through
    // the (continuously extended) gap between -1 and 1
    if bracket.is_none() {
        let r_pos = residual(1.0)?;
        let r_neg = residual(-1.0)?;
        if r_pos * r_neg < 0.0 {
            bracket = Some((-1.0, r_neg, 1.0, r_pos));
        }
    }
    let Some((mut ta, mut ra, mut tb, _rb)) = bracket else {
        return Err(Error::BracketNotFound { scanned: (1u64 << 20) as f64 });
    };
    let mut bisections = 0;
    for _ in 0..200 {
        let tm = 0.5 * (ta + tb);
        if tm == ta || tm == tb {
            break;
        }
        let rm = residual(tm)?;
        bisections += 1;
        if rm.abs() <= tol {
            return Ok(ShootReport {
                t0: tm,
                residual: rm.abs(),
                scanned_max: tb.abs().max(ta.abs()),
                bisections,
            });
        }
        if ra * rm < 0.0 {
            tb = tm;
        } else {
            ta = tm;
            ra = rm;
        }
    }
    let tm = 0.5 * (ta + tb);
    let rm = residual(tm)?;
    if rm.abs() <= tol.max(1e-9) {
        return Ok(ShootReport { t0: tm, residual: rm.abs(), scanned_max: tb.abs(), bisections });
    }
    Err(Error::BracketNotFound { scanned: rm.abs() })
}
