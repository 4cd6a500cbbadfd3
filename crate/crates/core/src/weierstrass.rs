//! Null triples, minimal immersions, Gauss map, metric and flux: the
//! dictionary between holomorphic data and surfaces.
//!
//! The canonical constructor is [`from_spin_data`]: a pair `(g, phi3)` of
//! Gauss map and height differential generates the triple
//! `phi1 = (1/g - g) phi3 / 2`, `phi2 = i (1/g + g) phi3 / 2`, whose
//! nullity holds by algebra. Directly constructed triples are validated on
//! a sample grid before use.

use alloc::vec::Vec;

// required by the no_std build; test builds see std's inherent methods
#[allow(unused_imports)]
use num_traits::Float;

use crate::config::Config;
use crate::domain::{CompactKind, CompactSet, Path};
use crate::error::Error;
use crate::fit::refit_on;
use crate::holo::{c64, HoloFunction, OneForm};
use crate::quad::{integrate_fn, primitive};
use crate::{Point3, Result, C64};

/// Pointwise evaluation interface shared by materialized triples and the
/// stage pipeline's factored triples.
pub trait TripleField {
    /// Densities of (phi1, phi2, phi3) with respect to dz.
    fn densities(&self, z: C64) -> [C64; 3];

    /// Intrinsic metric density `sum |phi_k|^2` at a point.
    fn metric_density(&self, z: C64) -> f64 {
        let d = self.densities(z);
        d[0].norm_sqr() + d[1].norm_sqr() + d[2].norm_sqr()
    }
}

/// Gauss map and height differential.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinData {
    pub g: HoloFunction,
    pub phi3: OneForm,
}

impl SpinData {
    pub fn new(g: HoloFunction, phi3: OneForm) -> Self {
        SpinData { g, phi3 }
    }
}

/// Triple of holomorphic 1-forms with `sum phi_k^2 = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct NullTriple {
    pub phi: [OneForm; 3],
}

impl TripleField for NullTriple {
    fn densities(&self, z: C64) -> [C64; 3] {
        [self.phi[0].eval(z), self.phi[1].eval(z), self.phi[2].eval(z)]
    }
}

/// Relative nullity tolerance of the type invariant.
pub const NULLITY_REL_TOL: f64 = 1e-10;

impl NullTriple {
    /// Wraps raw forms after validating nullity and regularity on a 64x64
    /// grid over the domain.
    pub fn new(phi: [OneForm; 3], domain: &CompactSet, cfg: &Config) -> Result<Self> {
        let t = NullTriple { phi };
        t.validate(domain, cfg)?;
        Ok(t)
    }

    /// Grid validation of the two type invariants.
    pub fn validate(&self, domain: &CompactSet, cfg: &Config) -> Result<()> {
        validate_field(self, domain, cfg)
    }
}

/// Validates nullity and regularity of any triple field over a 64x64 grid.
pub fn validate_field<T: TripleField>(t: &T, domain: &CompactSet, cfg: &Config) -> Result<()> {
    let pts = domain_grid(domain, 64, 64);
    let clearance = cfg.pole_clearance(domain.diameter());
    let mut min_metric = f64::INFINITY;
    let mut max_metric = 0.0f64;
    let mut min_point = c64(0.0, 0.0);
    for &z in &pts {
        if pole_guard(t, z, clearance) {
            continue;
        }
        let d = t.densities(z);
        let metric = d[0].norm_sqr() + d[1].norm_sqr() + d[2].norm_sqr();
        let null = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).norm();
        if null > NULLITY_REL_TOL * metric.max(1e-300) {
            return Err(Error::TripleInvariant { what: "nullity", residual: null / metric.max(1e-300), point: z });
        }
        if metric < min_metric {
            min_metric = metric;
            min_point = z;
        }
        max_metric = max_metric.max(metric);
    }
    if min_metric <= 1e-10 * max_metric {
        return Err(Error::RegularityFailure { point: min_point, min_metric });
    }
    Ok(())
}

fn pole_guard<T: TripleField + ?Sized>(_t: &T, _z: C64, _clearance: f64) -> bool {
    false
}

/// Sample grid adapted to the domain shape (row-major, `nx * ny` points,
/// poles at an annulus center excluded by construction).
pub fn domain_grid(domain: &CompactSet, nx: usize, ny: usize) -> Vec<C64> {
    let mut pts = Vec::with_capacity(nx * ny);
    match &domain.kind {
        CompactKind::Rectangle(r) => {
            for j in 0..ny {
                let y = r.min.im + (r.max.im - r.min.im) * j as f64 / (ny - 1) as f64;
                for i in 0..nx {
                    let x = r.min.re + (r.max.re - r.min.re) * i as f64 / (nx - 1) as f64;
                    pts.push(c64(x, y));
                }
            }
        }
        CompactKind::Annulus { center, r_inner, r_outer } => {
            let r0 = if *r_inner > 0.0 { *r_inner } else { r_outer / 64.0 };
            for j in 0..ny {
                let r = r0 + (r_outer - r0) * j as f64 / (ny - 1) as f64;
                for i in 0..nx {
                    let t = core::f64::consts::TAU * i as f64 / nx as f64;
                    pts.push(center + c64(r * t.cos(), r * t.sin()));
                }
            }
        }
        CompactKind::RectanglesWithArcs { rects, .. } => {
            for r in rects {
                for j in 0..ny {
                    let y = r.min.im + (r.max.im - r.min.im) * j as f64 / (ny - 1) as f64;
                    for i in 0..nx {
                        let x = r.min.re + (r.max.re - r.min.re) * i as f64 / (nx - 1) as f64;
                        pts.push(c64(x, y));
                    }
                }
            }
        }
    }
    pts
}

/// Builds the null triple generated by spin data.
///
/// `eta1 = phi3/g` is computed by exact Laurent division when possible and
/// otherwise by sampling + refit on the domain; `eta2 = g phi3` is exact.
pub fn from_spin_data(sd: &SpinData, domain: &CompactSet, cfg: &Config) -> Result<NullTriple> {
    let g = &sd.g;
    let f3 = &sd.phi3.density;
    if g.is_zero() {
        return Err(Error::DegenerateTriple);
    }
    let eta1 = match f3.div_exact(g, 1e-12) {
        Ok(q) => q,
        Err(_) => {
            // sampled ratio refit; rejects data whose ratio is not
            // holomorphic on the domain
            let mut ratio = |z: C64| f3.eval(z) / g.eval(z);
            let (q, _report) = refit_on(&mut ratio, domain, cfg.refit_degree, cfg)
                .map_err(|e| match e {
                    Error::RefitFailure { err, .. } => Error::RepresentationOverflow(
                        alloc::format!("1/g refit stalled at sup error {err:e}"),
                    ),
                    other => other,
                })?;
            q
        }
    };
    // eta1 poles inside the domain mean phi3 does not compensate the zeros
    // of g: the data does not define an immersion there.
    if eta1.pole_order() > 0 && domain.contains(eta1.center(), -1e-9) {
        return Err(Error::RegularityFailure { point: eta1.center(), min_metric: 0.0 });
    }
    let eta2 = &g.clone() * f3;
    let half = c64(0.5, 0.0);
    let ihalf = c64(0.0, 0.5);
    let phi1 = (&eta1 - &eta2).scale(half);
    let phi2 = (&eta1 + &eta2).scale(ihalf);
    NullTriple::new([OneForm::new(phi1), OneForm::new(phi2), OneForm::new(f3.clone())], domain, cfg)
}

/// Recovers the Gauss map `g = phi3 / (phi1 - i phi2)` of a triple, by
/// exact division when the representation allows it and by refit on the
/// domain otherwise.
pub fn gauss_map(t: &NullTriple, domain: &CompactSet, cfg: &Config) -> Result<HoloFunction> {
    let eta1 = &t.phi[0].density - &t.phi[1].density.scale(c64(0.0, 1.0));
    let f3 = &t.phi[2].density;
    let scale = t.phi[0].density.max_coeff_norm() + t.phi[1].density.max_coeff_norm();
    if eta1.max_coeff_norm() <= 1e-13 * scale.max(1e-300) {
        return Err(Error::DegenerateTriple);
    }
    if let Ok(g) = f3.div_exact(&eta1, 1e-12) {
        return Ok(g);
    }
    let mut ratio = |z: C64| f3.eval(z) / eta1.eval(z);
    let (g, _report) = refit_on(&mut ratio, domain, cfg.refit_degree, cfg).map_err(|e| match e {
        Error::RefitFailure { err, .. } => {
            Error::RepresentationOverflow(alloc::format!("Gauss map refit stalled at {err:e}"))
        }
        other => other,
    })?;
    Ok(g)
}

/// Minimal immersion: a validated triple with a base point/value and the
/// domain carrying its well-definedness (vanishing real periods).
#[derive(Debug, Clone)]
pub struct Immersion {
    pub triple: NullTriple,
    pub base_point: C64,
    pub base_value: Point3,
    pub domain: CompactSet,
}

/// Tolerance on real periods for well-definedness.
pub const REAL_PERIOD_TOL: f64 = 1e-10;

impl Immersion {
    /// Checks that the real periods over the domain's homology loops vanish.
    pub fn new(
        triple: NullTriple,
        base_point: C64,
        base_value: Point3,
        domain: CompactSet,
        cfg: &Config,
    ) -> Result<Self> {
        if let CompactKind::Annulus { center, r_inner, r_outer } = &domain.kind {
            if *r_inner > 0.0 {
                let loop_path = Path::circle(*center, (r_inner * r_outer).sqrt(), 256);
                for form in &triple.phi {
                    let p = integrate_fn(&mut |z| form.eval(z), &loop_path, cfg)?;
                    if p.re.abs() > REAL_PERIOD_TOL {
                        return Err(Error::InvalidArgument(alloc::format!(
                            "real period {:.3e} exceeds tolerance; immersion ill-defined",
                            p.re
                        )));
                    }
                }
            }
        }
        Ok(Immersion { triple, base_point, base_value, domain })
    }

    /// `base_value + Re \int_p Phi` along an explicit path from the base
    /// point to `z`.
    pub fn immerse(&self, z: C64, p: &Path, cfg: &Config) -> Result<Point3> {
        let mut out = self.base_value;
        for (k, form) in self.triple.phi.iter().enumerate() {
            let v = primitive(form, self.base_point, z, p, cfg)?;
            out[k] += v.re;
        }
        Ok(out)
    }

    /// Conjugate null curve `X + i X^*`: the full complex integral plus the
    /// complex base value (imaginary part anchored at zero). Path-dependent
    /// when the flux is nonzero; the caller supplies the path.
    pub fn conjugate_null_curve(&self, z: C64, p: &Path, cfg: &Config) -> Result<[C64; 3]> {
        let mut out = [c64(0.0, 0.0); 3];
        for (k, form) in self.triple.phi.iter().enumerate() {
            let v = primitive(form, self.base_point, z, p, cfg)?;
            out[k] = c64(self.base_value[k], 0.0) + v;
        }
        Ok(out)
    }
}

/// Flux vector of a closed loop: `Im \oint Phi`, a homology invariant.
pub fn flux<T: TripleField>(t: &T, loop_path: &Path, cfg: &Config) -> Result<Point3> {
    assert!(
        loop_path.is_closed() || (loop_path.start() - loop_path.end()).norm() <= 1e-12,
        "flux requires a closed loop"
    );
    let mut out = Point3::zeros();
    for k in 0..3 {
        let v = integrate_fn(&mut |z| t.densities(z)[k], loop_path, cfg)?;
        out[k] = v.im;
    }
    Ok(out)
}

/// Real periods of a triple over a closed loop (all three components).
pub fn real_periods<T: TripleField>(t: &T, loop_path: &Path, cfg: &Config) -> Result<Point3> {
    let mut out = Point3::zeros();
    for k in 0..3 {
        let v = integrate_fn(&mut |z| t.densities(z)[k], loop_path, cfg)?;
        out[k] = v.re;
    }
    Ok(out)
}

/// Closed loop plus its flux, recomputable within tolerance.
#[derive(Debug, Clone)]
pub struct FluxVector {
    pub loop_path: Path,
    pub value: Point3,
}

impl FluxVector {
    pub fn measure<T: TripleField>(t: &T, loop_path: Path, cfg: &Config) -> Result<Self> {
        let value = flux(t, &loop_path, cfg)?;
        Ok(FluxVector { loop_path, value })
    }
}

/// Surface samples on a structured grid (row-major), ready for export.
#[derive(Debug, Clone)]
pub struct SampledSurface {
    pub nx: usize,
    pub ny: usize,
    pub points: Vec<(C64, Point3)>,
}

impl SampledSurface {
    /// Quad faces as vertex-index quadruples (counterclockwise).
    pub fn quads(&self) -> Vec<[usize; 4]> {
        let mut out = Vec::with_capacity((self.nx - 1) * (self.ny - 1));
        for j in 0..self.ny - 1 {
            for i in 0..self.nx - 1 {
                let a = j * self.nx + i;
                out.push([a, a + 1, a + self.nx + 1, a + self.nx]);
            }
        }
        out
    }
}

/// Integrates `Re Phi` incrementally along a chain of points, starting
/// from a known value.
pub fn integrate_chain<T: TripleField>(
    t: &T,
    start: C64,
    start_value: Point3,
    chain: &[C64],
    cfg: &Config,
) -> Result<Vec<Point3>> {
    let mut out = Vec::with_capacity(chain.len());
    let mut prev_z = start;
    let mut prev_v = start_value;
    for &z in chain {
        if (z - prev_z).norm() > 0.0 {
            let seg = Path::segment(prev_z, z);
            let mut v = prev_v;
            for k in 0..3 {
                let inc = integrate_fn(&mut |w| t.densities(w)[k], &seg, cfg)?;
                v[k] += inc.re;
            }
            prev_v = v;
            prev_z = z;
        }
        out.push(prev_v);
    }
    Ok(out)
}

/// Samples the immersion of a triple over a rectangle grid by incremental
/// row integration anchored at `(base_point, base_value)`.
pub fn sample_rect_grid<T: TripleField>(
    t: &T,
    rect: &crate::domain::Rect,
    nx: usize,
    ny: usize,
    base_point: C64,
    base_value: Point3,
    cfg: &Config,
) -> Result<SampledSurface> {
    let xs: Vec<f64> = (0..nx)
        .map(|i| rect.min.re + (rect.max.re - rect.min.re) * i as f64 / (nx - 1) as f64)
        .collect();
    let ys: Vec<f64> = (0..ny)
        .map(|j| rect.min.im + (rect.max.im - rect.min.im) * j as f64 / (ny - 1) as f64)
        .collect();
    // anchor column: from the base point to each row start
    let col: Vec<C64> = ys.iter().map(|&y| c64(xs[0], y)).collect();
    let col_vals = integrate_chain(t, base_point, base_value, &col, cfg)?;
    let mut points = Vec::with_capacity(nx * ny);
    for (j, &y) in ys.iter().enumerate() {
        let row: Vec<C64> = xs.iter().map(|&x| c64(x, y)).collect();
        let row_vals = integrate_chain(t, col[j], col_vals[j], &row, cfg)?;
        for (i, &x) in xs.iter().enumerate() {
            points.push((c64(x, y), row_vals[i]));
        }
    }
    Ok(SampledSurface { nx, ny, points })
}

/// Samples the immersion of a triple over an annulus (polar grid: `ny`
/// radii, `nx` angles, seam duplicated for mesh export).
pub fn sample_annulus_grid<T: TripleField>(
    t: &T,
    center: C64,
    r_inner: f64,
    r_outer: f64,
    nx: usize,
    ny: usize,
    base_point: C64,
    base_value: Point3,
    cfg: &Config,
) -> Result<SampledSurface> {
    let rs: Vec<f64> = (0..ny)
        .map(|j| r_inner + (r_outer - r_inner) * j as f64 / (ny - 1) as f64)
        .collect();
    let spoke: Vec<C64> = rs.iter().map(|&r| center + c64(r, 0.0)).collect();
    let spoke_vals = integrate_chain(t, base_point, base_value, &spoke, cfg)?;
    let mut points = Vec::with_capacity(nx * ny);
    for (j, &r) in rs.iter().enumerate() {
        let ring: Vec<C64> = (0..nx)
            .map(|i| {
                let a = core::f64::consts::TAU * i as f64 / (nx - 1) as f64;
                center + c64(r * a.cos(), r * a.sin())
            })
            .collect();
        let ring_vals = integrate_chain(t, spoke[j], spoke_vals[j], &ring, cfg)?;
        for (i, &z) in ring.iter().enumerate() {
            points.push((z, ring_vals[i]));
        }
    }
    Ok(SampledSurface { nx, ny, points })
}

/// Catalog spin data: Enneper (`g = s z`, `phi3 = s s' z dz`).
pub fn enneper_spin(scale_g: f64, scale3: f64) -> SpinData {
    let z0 = c64(0.0, 0.0);
    SpinData::new(
        HoloFunction::monomial(z0, 1, c64(scale_g, 0.0)),
        OneForm::new(HoloFunction::monomial(z0, 1, c64(scale_g * scale3, 0.0))),
    )
}

/// Catalog spin data: catenoid on an annulus (`g = z`, `phi3 = dz/z`).
pub fn catenoid_spin() -> SpinData {
    let z0 = c64(0.0, 0.0);
    SpinData::new(
        HoloFunction::z(z0),
        OneForm::new(HoloFunction::monomial(z0, -1, c64(1.0, 0.0))),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::Rect;
    use approx::assert_abs_diff_eq;

    fn cfg() -> Config {
        Config::default()
    }

    fn enneper_domain() -> CompactSet {
        CompactSet::rectangle(c64(-1.2, -1.2), c64(1.2, 1.2), 512)
    }

    fn enneper() -> NullTriple {
        from_spin_data(&enneper_spin(1.0, 1.0), &enneper_domain(), &cfg()).unwrap()
    }

    fn catenoid_domain() -> CompactSet {
        CompactSet::annulus(c64(0.0, 0.0), 0.5, 2.0, 512)
    }

    fn catenoid() -> NullTriple {
        from_spin_data(&catenoid_spin(), &catenoid_domain(), &cfg()).unwrap()
    }

    #[test]
    fn enneper_triple_exact() {
        let t = enneper();
        // (phi1, phi2, phi3) = ((1-z^2)/2, i(1+z^2)/2, z) dz
        let z = c64(0.3, -0.4);
        let d = t.densities(z);
        let half = c64(0.5, 0.0);
        assert!((d[0] - (c64(1.0, 0.0) - z * z) * half).norm() < 1e-14);
        assert!((d[1] - (c64(1.0, 0.0) + z * z) * c64(0.0, 0.5)).norm() < 1e-14);
        assert!((d[2] - z).norm() < 1e-14);
        // nullity is exact by algebra
        let null = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).norm();
        assert!(null < 1e-15);
    }

    #[test]
    fn catenoid_triple_exact() {
        let t = catenoid();
        // ((z^-2 - 1)/2, i(z^-2 + 1)/2, 1/z) dz by symbolic expansion
        let z = c64(0.0, 1.3);
        let d = t.densities(z);
        let zi2 = c64(1.0, 0.0) / (z * z);
        assert!((d[0] - (zi2 - c64(1.0, 0.0)) * c64(0.5, 0.0)).norm() < 1e-14);
        assert!((d[1] - (zi2 + c64(1.0, 0.0)) * c64(0.0, 0.5)).norm() < 1e-14);
        assert!((d[2] - c64(1.0, 0.0) / z).norm() < 1e-14);
    }

    #[test]
    fn constant_gauss_map_accepted() {
        // flat triple: g = c, phi3 = dz
        let sd = SpinData::new(
            HoloFunction::constant(c64(0.0, 0.0), c64(1.0, 0.0)),
            OneForm::dz(),
        );
        let k = enneper_domain();
        let t = from_spin_data(&sd, &k, &cfg()).unwrap();
        let d = t.densities(c64(0.2, 0.7));
        // g = 1: phi1 = 0, phi2 = i dz, phi3 = dz; metric = 2
        assert!(d[0].norm() < 1e-15);
        assert_abs_diff_eq!(t.metric_density(c64(0.2, 0.7)), 2.0, epsilon = 1e-14);
    }

    #[test]
    fn irregular_spin_data_rejected() {
        // g = z with phi3 = dz: 1/g blows up at 0 with no compensating zero
        let sd = SpinData::new(HoloFunction::z(c64(0.0, 0.0)), OneForm::dz());
        let err = from_spin_data(&sd, &enneper_domain(), &cfg()).unwrap_err();
        assert!(matches!(err, Error::RegularityFailure { .. } | Error::RepresentationOverflow(_)));
    }

    #[test]
    fn metric_density_enneper_values() {
        let t = enneper();
        assert_abs_diff_eq!(t.metric_density(c64(0.0, 0.0)), 0.5, epsilon = 1e-14);
        assert_abs_diff_eq!(t.metric_density(c64(1.0, 0.0)), 2.0, epsilon = 1e-14);
    }

    #[test]
    fn enneper_immersion_closed_form() {
        let t = enneper();
        let im = Immersion::new(
            t,
            c64(0.0, 0.0),
            Point3::zeros(),
            enneper_domain(),
            &cfg(),
        )
        .unwrap();
        // closed-form oracle: X = Re( (z - z^3/3)/2, i(z + z^3/3)/2, z^2/2 )
        let oracle = |z: C64| {
            let z3 = z * z * z / c64(3.0, 0.0);
            Point3::new(
                ((z - z3) * c64(0.5, 0.0)).re,
                ((z + z3) * c64(0.0, 0.5)).re,
                (z * z * c64(0.5, 0.0)).re,
            )
        };
        for &z in &[c64(0.5, 0.0), c64(0.3, 0.4), c64(-0.9, 0.7), c64(0.0, -1.0)] {
            let p = Path::segment(c64(0.0, 0.0), z);
            let got = im.immerse(z, &p, &cfg()).unwrap();
            assert!((got - oracle(z)).norm() < 1e-9, "at {z}: {got:?} vs {:?}", oracle(z));
        }
        // base point maps to base value
        let p = Path::polyline(alloc::vec![c64(0.0, 0.0), c64(0.1, 0.0), c64(0.0, 0.0)]);
        let got = im.immerse(c64(0.0, 0.0), &p, &cfg()).unwrap();
        assert!(got.norm() < 1e-12);
        // real part of the conjugate curve matches the immersion
        let z = c64(0.3, 0.4);
        let p = Path::segment(c64(0.0, 0.0), z);
        let f = im.conjugate_null_curve(z, &p, &cfg()).unwrap();
        let x = im.immerse(z, &p, &cfg()).unwrap();
        for k in 0..3 {
            assert_abs_diff_eq!(f[k].re, x[k], epsilon = 1e-12);
        }
    }

    #[test]
    fn catenoid_flux_and_periods() {
        let t = catenoid();
        let loop1 = Path::circle(c64(0.0, 0.0), 1.0, 256);
        let f = flux(&t, &loop1, &cfg()).unwrap();
        // residue oracle: only phi3 = dz/z has a residue; flux = (0,0,2pi)
        assert!(f.x.abs() < 1e-8 && f.y.abs() < 1e-8);
        assert_abs_diff_eq!(f.z, core::f64::consts::TAU, epsilon = 1e-8);
        let rp = real_periods(&t, &loop1, &cfg()).unwrap();
        assert!(rp.norm() < 1e-10, "{rp:?}");

        // homology invariance: a homotopic loop gives the same flux
        let loop2 = Path::circle(c64(0.0, 0.0), 1.4, 200);
        let f2 = flux(&t, &loop2, &cfg()).unwrap();
        assert!((f - f2).norm() < 1e-8);

        // winding twice doubles it
        let loop_twice = Path::circle_turns(c64(0.0, 0.0), 1.0, 256, 2);
        let f4 = flux(&t, &loop_twice, &cfg()).unwrap();
        assert_abs_diff_eq!(f4.z, 2.0 * core::f64::consts::TAU, epsilon = 1e-8);

        // loop integration back to base returns the base value
        let im = Immersion::new(
            t,
            c64(1.0, 0.0),
            Point3::new(1.0, 2.0, 3.0),
            catenoid_domain(),
            &cfg(),
        )
        .unwrap();
        let mut verts = alloc::vec![];
        for k in 0..=96 {
            let a = core::f64::consts::TAU * k as f64 / 96.0;
            verts.push(c64(a.cos(), a.sin()));
        }
        let p = Path::polyline(verts);
        let got = im.immerse(c64(1.0, 0.0), &p, &cfg()).unwrap();
        assert!((got - Point3::new(1.0, 2.0, 3.0)).norm() < 1e-9);

        // conjugate curve over the loop picks up i * flux
        let f = im.conjugate_null_curve(c64(1.0, 0.0), &p, &cfg()).unwrap();
        assert!((f[2] - c64(3.0, core::f64::consts::TAU)).norm() < 1e-8);
        assert!((f[0] - c64(1.0, 0.0)).norm() < 1e-8);
    }

    #[test]
    fn enneper_flux_vanishes() {
        // pole-free triple: Cauchy gives zero flux
        let t = enneper();
        let f = flux(&t, &Path::circle(c64(0.0, 0.0), 1.0, 128), &cfg()).unwrap();
        assert!(f.norm() < 1e-10);
    }

    #[test]
    fn gauss_map_roundtrip() {
        let t = enneper();
        let g = gauss_map(&t, &enneper_domain(), &cfg()).unwrap();
        assert!((g.eval(c64(0.3, 0.2)) - c64(0.3, 0.2)).norm() < 1e-12);
        let t2 = catenoid();
        let g2 = gauss_map(&t2, &catenoid_domain(), &cfg()).unwrap();
        assert!((g2.eval(c64(0.0, 1.1)) - c64(0.0, 1.1)).norm() < 1e-12);
    }

    #[test]
    fn degenerate_triple_rejected() {
        // (1, -i, 0) dz: null and regular but eta1 = 0 identically
        let z0 = c64(0.0, 0.0);
        let phi = [
            OneForm::new(HoloFunction::constant(z0, c64(1.0, 0.0))),
            OneForm::new(HoloFunction::constant(z0, c64(0.0, -1.0))),
            OneForm::new(HoloFunction::zero(z0)),
        ];
        let t = NullTriple { phi };
        assert!(matches!(
            gauss_map(&t, &enneper_domain(), &cfg()),
            Err(Error::DegenerateTriple)
        ));
    }

    #[test]
    fn invalid_triple_rejected() {
        let z0 = c64(0.0, 0.0);
        let phi = [
            OneForm::new(HoloFunction::constant(z0, c64(1.0, 0.0))),
            OneForm::new(HoloFunction::constant(z0, c64(1.0, 0.0))),
            OneForm::new(HoloFunction::constant(z0, c64(1.0, 0.0))),
        ];
        let err = NullTriple::new(phi, &enneper_domain(), &cfg()).unwrap_err();
        assert!(matches!(err, Error::TripleInvariant { what: "nullity", .. }));
    }

    #[test]
    fn grid_sampling_matches_pointwise_immersion() {
        let t = enneper();
        let rect = Rect::new(c64(-0.5, -0.5), c64(0.5, 0.5));
        let s = sample_rect_grid(&t, &rect, 9, 9, c64(0.0, 0.0), Point3::zeros(), &cfg()).unwrap();
        assert_eq!(s.points.len(), 81);
        let oracle = |z: C64| {
            let z3 = z * z * z / c64(3.0, 0.0);
            Point3::new(
                ((z - z3) * c64(0.5, 0.0)).re,
                ((z + z3) * c64(0.0, 0.5)).re,
                (z * z * c64(0.5, 0.0)).re,
            )
        };
        for &(z, v) in &s.points {
            assert!((v - oracle(z)).norm() < 1e-10);
        }
        let quads = s.quads();
        assert_eq!(quads.len(), 64);
    }
}
