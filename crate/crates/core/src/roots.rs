//! Zero location: Aberth-Ehrlich iteration for Laurent-polynomial zero sets
//! and winding-number subdivision for pointwise-evaluable functions on
//! rectangles. Candidates are Newton-polished and cross-checked against the
//! argument principle by the callers that need certified divisors.

use alloc::vec::Vec;

// required by the no_std build; test builds see std's inherent methods
#[allow(unused_imports)]
use num_traits::Float;

use crate::domain::Rect;
use crate::error::Error;
use crate::holo::{c64, Divisor, HoloFunction};
use crate::quad::winding_number_fn;
use crate::{Result, C64};

/// All complex roots of the polynomial `c[0] + c[1] w + ... + c[d] w^d`
/// (ascending coefficients, `c[0] != 0 != c[d]`), by Aberth-Ehrlich.
pub fn poly_roots(coeffs: &[C64]) -> Vec<C64> {
    let d = coeffs.len().saturating_sub(1);
    if d == 0 {
        return Vec::new();
    }
    if d == 1 {
        return alloc::vec![-coeffs[0] / coeffs[1]];
    }
    // Initial guesses on a circle of the Cauchy-bound radius, detuned so no
    // two iterates collide.
    let lead = coeffs[d].norm();
    let r_cauchy = 1.0
        + coeffs[..d]
            .iter()
            .map(|c| c.norm() / lead)
            .fold(0.0, f64::max);
    let r0 = r_cauchy.min(1e12).max(1e-12);
    let mut zs: Vec<C64> = (0..d)
        .map(|k| {
            let t = core::f64::consts::TAU * (k as f64 + 0.37) / d as f64 + 0.1;
            c64(r0 * 0.8 * t.cos(), r0 * 0.8 * t.sin())
        })
        .collect();
    let eval = |z: C64| -> (C64, C64) {
        // value and derivative by Horner
        let mut p = coeffs[d];
        let mut dp = c64(0.0, 0.0);
        for k in (0..d).rev() {
            dp = dp * z + p;
            p = p * z + coeffs[k];
        }
        (p, dp)
    };
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    for _sweep in 0..160 {
        let mut moved = 0.0f64;
        for i in 0..d {
            let (p, dp) = eval(zs[i]);
            if p.norm() <= 1e-15 * scale * (1.0 + zs[i].norm().powi(d as i32 / 2)) {
                continue;
            }
            let newton = if dp.norm() > 0.0 { p / dp } else { c64(1e-8, 0.0) };
            let mut sum = c64(0.0, 0.0);
            for j in 0..d {
                if j != i {
                    let dz = zs[i] - zs[j];
                    if dz.norm() > 1e-300 {
                        sum += c64(1.0, 0.0) / dz;
                    }
                }
            }
            let denom = c64(1.0, 0.0) - newton * sum;
            let step = if denom.norm() > 1e-300 { newton / denom } else { newton };
            zs[i] -= step;
            moved = moved.max(step.norm() / (1.0 + zs[i].norm()));
        }
        if moved < 1e-14 {
            break;
        }
    }
    // Newton polish
    for z in zs.iter_mut() {
        for _ in 0..8 {
            let (p, dp) = eval(*z);
            if dp.norm() == 0.0 {
                break;
            }
            let step = p / dp;
            *z -= step;
            if step.norm() <= 1e-15 * (1.0 + z.norm()) {
                break;
            }
        }
    }
    zs
}

/// Zero divisor of a Laurent polynomial restricted by a point filter
/// (multiplicities recovered by clustering; the center zero of positive
/// order is included).
pub fn holo_zeros_filtered<P: Fn(C64) -> bool>(f: &HoloFunction, keep: P) -> Divisor {
    if f.is_zero() {
        return Divisor::empty();
    }
    let mut entries: Vec<(C64, i64)> = Vec::new();
    if f.low_exponent() > 0 && keep(f.center()) {
        entries.push((f.center(), f.low_exponent()));
    }
    let roots = poly_roots(f.coeffs());
    let cluster_tol = 1e-7 * (1.0 + f.center().norm());
    for w in roots {
        let z = f.center() + w;
        if !keep(z) {
            continue;
        }
        if let Some(e) = entries.iter_mut().find(|(q, _)| (*q - z).norm() < cluster_tol) {
            e.1 += 1;
        } else {
            entries.push((z, 1));
        }
    }
    Divisor::new(entries)
}

/// Winding number of `f` around the boundary of a rectangle, retrying with
/// a slightly inflated box when a zero sits too close to the contour.
fn rect_winding<F: FnMut(C64) -> C64>(
    f: &mut F,
    rect: &Rect,
    samples: usize,
) -> Result<(i64, Rect)> {
    // The |f| floor is intentionally tiny: zeros close to the contour are
    // handled by refinement plus the grow/retry loop, not by giving up.
    let zero_tol = 1e-280;
    let mut grow = 0.0f64;
    let base = (rect.max - rect.min).norm();
    for _ in 0..8 {
        let r = Rect::new(
            rect.min - c64(grow, grow),
            rect.max + c64(grow, grow),
        );
        match winding_number_fn(f, &r.boundary(), samples, zero_tol) {
            Ok(w) => return Ok((w, r)),
            Err(_) => {
                grow = if grow == 0.0 { 1e-4 * base } else { grow * 3.7 };
            }
        }
    }
    Err(Error::WindingMismatch { residual: f64::NAN })
}

/// Zeros (with multiplicity) of a pointwise-evaluable holomorphic function
/// inside a rectangle, by winding-number subdivision plus Newton polish
/// with a finite-difference derivative.
pub fn zeros_in_rect_fn<F: FnMut(C64) -> C64>(
    f: &mut F,
    rect: Rect,
) -> Result<Vec<(C64, i64)>> {
    let mut out: Vec<(C64, i64)> = Vec::new();
    let (count, rect) = rect_winding(f, &rect, 512)?;
    if count < 0 {
        return Err(Error::InvalidArgument(
            "negative winding: function has poles in the search box".into(),
        ));
    }
    subdivide(f, rect, count, 0, &mut out)?;
    // Cluster polished candidates that landed on the same zero.
    let tol = 1e-6 * (1.0 + rect.diameter());
    let mut merged: Vec<(C64, i64)> = Vec::new();
    for (z, m) in out {
        if let Some(e) = merged.iter_mut().find(|(q, _)| (*q - z).norm() < tol) {
            e.1 += m;
        } else {
            merged.push((z, m));
        }
    }
    let total: i64 = merged.iter().map(|&(_, m)| m).sum();
    if total != count {
        return Err(Error::WindingMismatch { residual: (total - count) as f64 });
    }
    Ok(merged)
}

/// Splits slightly off-center (varying with depth) so zeros that sit on a
/// symmetric grid never coincide with subdivision corners.
fn split_fraction(depth: usize, axis: usize) -> f64 {
    let salt = (depth * 2 + axis).wrapping_mul(2654435761) % 37;
    0.47 + 0.06 * (salt as f64) / 37.0
}

fn subdivide<F: FnMut(C64) -> C64>(
    f: &mut F,
    rect: Rect,
    count: i64,
    depth: usize,
    out: &mut Vec<(C64, i64)>,
) -> Result<()> {
    if count == 0 {
        return Ok(());
    }
    let size = (rect.max - rect.min).norm();
    if count == 1 || size < 1e-7 || depth >= 36 {
        let z0 = newton_polish(f, rect.center(), size);
        out.push((z0, count));
        return Ok(());
    }
    let sx = rect.min.re + split_fraction(depth, 0) * (rect.max.re - rect.min.re);
    let sy = rect.min.im + split_fraction(depth, 1) * (rect.max.im - rect.min.im);
    let quads = [
        Rect::new(rect.min, c64(sx, sy)),
        Rect::new(c64(sx, rect.min.im), c64(rect.max.re, sy)),
        Rect::new(c64(rect.min.re, sy), c64(sx, rect.max.im)),
        Rect::new(c64(sx, sy), rect.max),
    ];
    let mut found = 0;
    for q in quads {
        let (w, qr) = rect_winding(f, &q, 256)?;
        found += w;
        subdivide(f, qr, w, depth + 1, out)?;
        if found >= count {
            break;
        }
    }
    Ok(())
}

fn newton_polish<F: FnMut(C64) -> C64>(f: &mut F, mut z: C64, scale: f64) -> C64 {
    let h = 1e-7 * (scale + 1.0);
    for _ in 0..60 {
        let v = f(z);
        let d = (f(z + c64(h, 0.0)) - f(z - c64(h, 0.0))) / c64(2.0 * h, 0.0);
        if d.norm() == 0.0 {
            break;
        }
        let step = v / d;
        z -= step;
        if step.norm() < 1e-13 * (1.0 + z.norm()) {
            break;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aberth_finds_known_roots() {
        // (w-1)(w+2i)(w-3.5)(w+0.1-0.2i)
        let roots = [c64(1.0, 0.0), c64(0.0, -2.0), c64(3.5, 0.0), c64(-0.1, 0.2)];
        let p = HoloFunction::from_roots(c64(0.0, 0.0), &roots);
        let got = poly_roots(p.coeffs());
        assert_eq!(got.len(), 4);
        for r in roots {
            let best = got.iter().map(|z| (z - r).norm()).fold(f64::INFINITY, f64::min);
            assert!(best < 1e-10, "root {r} missed by {best}");
        }
    }

    #[test]
    fn holo_zero_divisor_with_center_zero() {
        // z^2 (z - 1): zeros 0 (double), 1
        let f = &HoloFunction::monomial(c64(0.0, 0.0), 2, c64(1.0, 0.0))
            * &HoloFunction::from_roots(c64(0.0, 0.0), &[c64(1.0, 0.0)]);
        let d = holo_zeros_filtered(&f, |_| true);
        assert_eq!(d.degree(), 3);
        assert_eq!(d.multiplicity_at(c64(0.0, 0.0)), 2);
        assert_eq!(d.multiplicity_at(c64(1.0, 0.0)), 1);
    }

    #[test]
    fn winding_subdivision_locates_zeros_of_closure() {
        // f(z) = sin-like combination with two known zeros in the box
        let a = c64(0.3, 0.4);
        let b = c64(-0.5, -0.1);
        let mut f = |z: C64| (z - a) * (z - b) * (z.exp() + c64(3.0, 0.0));
        let rect = Rect::new(c64(-1.0, -1.0), c64(1.0, 1.0));
        let zs = zeros_in_rect_fn(&mut f, rect).unwrap();
        assert_eq!(zs.iter().map(|&(_, m)| m).sum::<i64>(), 2);
        for target in [a, b] {
            let best = zs.iter().map(|(z, _)| (z - target).norm()).fold(f64::INFINITY, f64::min);
            assert!(best < 1e-9, "missed {target} by {best}");
        }
    }

    #[test]
    fn winding_subdivision_counts_multiplicity() {
        let a = c64(0.25, -0.25);
        let mut f = |z: C64| (z - a) * (z - a);
        let rect = Rect::new(c64(-1.0, -1.0), c64(1.0, 1.0));
        let zs = zeros_in_rect_fn(&mut f, rect).unwrap();
        assert_eq!(zs.iter().map(|&(_, m)| m).sum::<i64>(), 2);
    }

    #[test]
    fn empty_box_is_empty() {
        let mut f = |z: C64| z.exp() + c64(10.0, 0.0);
        let rect = Rect::new(c64(-1.0, -1.0), c64(1.0, 1.0));
        let zs = zeros_in_rect_fn(&mut f, rect).unwrap();
        assert!(zs.is_empty());
    }
}
