//! Finitely represented holomorphic/meromorphic functions on planar domains.
//!
//! A [`HoloFunction`] is a Laurent polynomial about a declared center; its
//! pole divisor is derived from the negative-exponent part. Sums, products,
//! derivatives and (for monomial-divisible data) exact quotients stay inside
//! the representation; exponentials and reciprocals of nonvanishing factors
//! are produced elsewhere by sampling and least-squares refit.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::{Result, C64};

/// Shorthand complex constructor.
#[inline]
pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Formal product of points with nonzero integer multiplicities.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Divisor {
    entries: Vec<(C64, i64)>,
}

/// Tolerance used to decide whether two divisor points coincide.
pub const DIVISOR_POINT_TOL: f64 = 1e-9;

impl Divisor {
    pub fn empty() -> Self {
        Divisor { entries: Vec::new() }
    }

    /// Builds a divisor, merging coincident points and dropping zero
    /// multiplicities.
    pub fn new(entries: impl IntoIterator<Item = (C64, i64)>) -> Self {
        let mut out: Vec<(C64, i64)> = Vec::new();
        for (p, m) in entries {
            if m == 0 {
                continue;
            }
            if let Some(slot) = out.iter_mut().find(|(q, _)| (*q - p).norm() <= DIVISOR_POINT_TOL) {
                slot.1 += m;
            } else {
                out.push((p, m));
            }
        }
        out.retain(|&(_, m)| m != 0);
        // deterministic order
        out.sort_by(|a, b| {
            (a.0.re, a.0.im)
                .partial_cmp(&(b.0.re, b.0.im))
                .unwrap_or(core::cmp::Ordering::Equal)
        });
        Divisor { entries: out }
    }

    pub fn point(p: C64, m: i64) -> Self {
        Divisor::new([(p, m)])
    }

    pub fn entries(&self) -> &[(C64, i64)] {
        &self.entries
    }

    pub fn support(&self) -> impl Iterator<Item = C64> + '_ {
        self.entries.iter().map(|&(p, _)| p)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Total multiplicity.
    pub fn degree(&self) -> i64 {
        self.entries.iter().map(|&(_, m)| m).sum()
    }

    /// Integral iff all multiplicities are positive.
    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|&(_, m)| m > 0)
    }

    pub fn mul(&self, other: &Divisor) -> Divisor {
        Divisor::new(self.entries.iter().chain(other.entries.iter()).copied())
    }

    pub fn inverse(&self) -> Divisor {
        Divisor::new(self.entries.iter().map(|&(p, m)| (p, -m)))
    }

    /// Partial order: `self >= other` iff `self * other^-1` is integral.
    pub fn geq(&self, other: &Divisor) -> bool {
        self.mul(&other.inverse()).is_integral()
    }

    pub fn multiplicity_at(&self, p: C64) -> i64 {
        self.entries
            .iter()
            .find(|(q, _)| (*q - p).norm() <= DIVISOR_POINT_TOL)
            .map(|&(_, m)| m)
            .unwrap_or(0)
    }
}

/// Laurent polynomial `sum_k c_k (z - center)^k` over a finite exponent
/// range, with poles only at the center (order `-lo` when `lo < 0`).
#[derive(Debug, Clone, PartialEq)]
pub struct HoloFunction {
    center: C64,
    lo: i64,
    /// `coeffs[i]` multiplies `(z - center)^(lo + i)`; first and last entries
    /// are nonzero unless the function is identically zero (empty vector).
    coeffs: Vec<C64>,
}

impl HoloFunction {
    pub fn zero(center: C64) -> Self {
        HoloFunction { center, lo: 0, coeffs: Vec::new() }
    }

    pub fn constant(center: C64, value: C64) -> Self {
        HoloFunction::from_coeffs(center, 0, vec![value])
    }

    /// `coeff * (z - center)^k`.
    pub fn monomial(center: C64, k: i64, coeff: C64) -> Self {
        HoloFunction::from_coeffs(center, k, vec![coeff])
    }

    /// The identity `z` expressed about `center`.
    pub fn z(center: C64) -> Self {
        HoloFunction::from_coeffs(center, 0, vec![center, c64(1.0, 0.0)])
    }

    pub fn from_coeffs(center: C64, lo: i64, coeffs: Vec<C64>) -> Self {
        let mut f = HoloFunction { center, lo, coeffs };
        f.trim();
        f
    }

    /// Monic polynomial with the given roots (about `center`).
    pub fn from_roots(center: C64, roots: &[C64]) -> Self {
        let mut f = HoloFunction::constant(center, c64(1.0, 0.0));
        for &r in roots {
            // (z - r) = (z - center) - (r - center)
            let factor = HoloFunction::from_coeffs(center, 0, vec![center - r, c64(1.0, 0.0)]);
            f = &f * &factor;
        }
        f
    }

    fn trim(&mut self) {
        while let Some(last) = self.coeffs.last() {
            if last.re == 0.0 && last.im == 0.0 {
                self.coeffs.pop();
            } else {
                break;
            }
        }
        let leading_zeros = self.coeffs.iter().take_while(|c| c.re == 0.0 && c.im == 0.0).count();
        if leading_zeros > 0 {
            self.coeffs.drain(..leading_zeros);
            self.lo += leading_zeros as i64;
        }
        if self.coeffs.is_empty() {
            self.lo = 0;
        }
    }

    pub fn center(&self) -> C64 {
        self.center
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with nonzero coefficient (0 for the zero function).
    pub fn low_exponent(&self) -> i64 {
        self.lo
    }

    /// Highest exponent with nonzero coefficient (0 for the zero function).
    pub fn high_exponent(&self) -> i64 {
        if self.coeffs.is_empty() {
            0
        } else {
            self.lo + self.coeffs.len() as i64 - 1
        }
    }

    /// Pole order at the center (0 if holomorphic).
    pub fn pole_order(&self) -> i64 {
        (-self.lo).max(0)
    }

    /// Derived pole divisor: the negative-exponent part at the center.
    pub fn pole_divisor(&self) -> Divisor {
        if self.lo < 0 {
            Divisor::point(self.center, self.lo)
        } else {
            Divisor::empty()
        }
    }

    pub fn coeff(&self, k: i64) -> C64 {
        if self.coeffs.is_empty() || k < self.lo || k > self.high_exponent() {
            c64(0.0, 0.0)
        } else {
            self.coeffs[(k - self.lo) as usize]
        }
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn max_coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Raw evaluation by Horner's rule in `w = z - center`; returns
    /// non-finite values on a pole.
    pub fn eval(&self, z: C64) -> C64 {
        if self.coeffs.is_empty() {
            return c64(0.0, 0.0);
        }
        let w = z - self.center;
        let mut acc = c64(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * w + c;
        }
        match self.lo {
            0 => acc,
            1 => acc * w,
            _ => acc * w.powi(self.lo as i32),
        }
    }

    /// Evaluation guarded against the declared pole.
    pub fn eval_checked(&self, z: C64, clearance: f64) -> Result<C64> {
        if self.lo < 0 && (z - self.center).norm() <= clearance {
            return Err(Error::PoleHit { point: z, clearance });
        }
        Ok(self.eval(z))
    }

    /// Exact term-by-term derivative.
    pub fn derivative(&self) -> HoloFunction {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (i, &c) in self.coeffs.iter().enumerate() {
            let k = self.lo + i as i64;
            coeffs.push(c * c64(k as f64, 0.0));
        }
        HoloFunction::from_coeffs(self.center, self.lo - 1, coeffs)
    }

    /// n-th derivative evaluated at a point.
    pub fn derivative_at(&self, z: C64, order: usize) -> C64 {
        let mut f = self.clone();
        for _ in 0..order {
            f = f.derivative();
        }
        f.eval(z)
    }

    /// Exact antiderivative together with the residue coefficient (the
    /// `(z-center)^-1` term, which integrates to a logarithm and is left
    /// out of the returned function).
    pub fn antiderivative(&self) -> (HoloFunction, C64) {
        let residue = self.coeff(-1);
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (i, &c) in self.coeffs.iter().enumerate() {
            let k = self.lo + i as i64;
            if k == -1 {
                // contributes residue * log, dropped here
                coeffs.push(c64(0.0, 0.0));
            } else {
                coeffs.push(c / c64((k + 1) as f64, 0.0));
            }
        }
        (HoloFunction::from_coeffs(self.center, self.lo + 1, coeffs), residue)
    }

    /// Strict antiderivative; errors when a logarithmic term is present.
    pub fn antiderivative_strict(&self, rel_tol: f64) -> Result<HoloFunction> {
        let (prim, residue) = self.antiderivative();
        if residue.norm() > rel_tol * (1.0 + self.max_coeff_norm()) {
            return Err(Error::LogTerm { residue });
        }
        Ok(prim)
    }

    pub fn scale(&self, s: C64) -> HoloFunction {
        HoloFunction::from_coeffs(self.center, self.lo, self.coeffs.iter().map(|&c| c * s).collect())
    }

    fn assert_same_center(&self, other: &HoloFunction) {
        assert!(
            (self.center - other.center).norm() == 0.0,
            "HoloFunction arithmetic requires equal centers ({} vs {})",
            self.center,
            other.center
        );
    }

    /// Exact quotient `self / den`; errors unless the division leaves a
    /// negligible remainder relative to the operand scale.
    pub fn div_exact(&self, den: &HoloFunction, rel_tol: f64) -> Result<HoloFunction> {
        self.assert_same_center(den);
        if den.is_zero() {
            return Err(Error::InvalidArgument("division by the zero function".into()));
        }
        if self.is_zero() {
            return Ok(HoloFunction::zero(self.center));
        }
        // Factor out the monomial parts: quotient exponent offset.
        let lo_q = self.lo - den.lo;
        let n = self.coeffs.clone();
        let d = &den.coeffs;
        if n.len() < d.len() {
            return Err(Error::InvalidArgument("quotient would not be a Laurent polynomial".into()));
        }
        // Long division of the coefficient polynomials (ascending order
        // storage, divide from the top).
        let mut rem = n;
        let dn = d.len();
        let lead = d[dn - 1];
        let qlen = rem.len() - dn + 1;
        let mut q = vec![c64(0.0, 0.0); qlen];
        for qi in (0..qlen).rev() {
            let c = rem[qi + dn - 1] / lead;
            q[qi] = c;
            for (j, &dj) in d.iter().enumerate() {
                rem[qi + j] -= c * dj;
            }
        }
        let scale = self.max_coeff_norm().max(1e-300);
        let rem_norm = rem.iter().take(dn - 1).map(|c| c.norm()).fold(0.0, f64::max);
        if rem_norm > rel_tol * scale {
            return Err(Error::InvalidArgument("inexact polynomial division".into()));
        }
        Ok(HoloFunction::from_coeffs(self.center, lo_q, q))
    }
}

impl core::ops::Add for &HoloFunction {
    type Output = HoloFunction;
    fn add(self, rhs: &HoloFunction) -> HoloFunction {
        self.assert_same_center(rhs);
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.lo.min(rhs.lo);
        let hi = self.high_exponent().max(rhs.high_exponent());
        let mut coeffs = vec![c64(0.0, 0.0); (hi - lo + 1) as usize];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[(self.lo + i as i64 - lo) as usize] += c;
        }
        for (i, &c) in rhs.coeffs.iter().enumerate() {
            coeffs[(rhs.lo + i as i64 - lo) as usize] += c;
        }
        HoloFunction::from_coeffs(self.center, lo, coeffs)
    }
}

impl core::ops::Sub for &HoloFunction {
    type Output = HoloFunction;
    fn sub(self, rhs: &HoloFunction) -> HoloFunction {
        self + &rhs.scale(c64(-1.0, 0.0))
    }
}

impl core::ops::Mul for &HoloFunction {
    type Output = HoloFunction;
    fn mul(self, rhs: &HoloFunction) -> HoloFunction {
        self.assert_same_center(rhs);
        if self.is_zero() || rhs.is_zero() {
            return HoloFunction::zero(self.center);
        }
        let mut coeffs = vec![c64(0.0, 0.0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.re == 0.0 && a.im == 0.0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        HoloFunction::from_coeffs(self.center, self.lo + rhs.lo, coeffs)
    }
}

/// Holomorphic 1-form on a planar domain: exactly its density with respect
/// to the global coordinate, `omega = f dz`.
#[derive(Debug, Clone, PartialEq)]
pub struct OneForm {
    pub density: HoloFunction,
}

impl OneForm {
    pub fn new(density: HoloFunction) -> Self {
        OneForm { density }
    }

    /// The form `dz`.
    pub fn dz() -> Self {
        OneForm::new(HoloFunction::constant(c64(0.0, 0.0), c64(1.0, 0.0)))
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.density.eval(z)
    }
}
