//! Wedge half-spaces and the distance predicates behind every stage
//! certificate.

// required by the no_std build; test builds see std's inherent methods
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::Error;
use crate::{Point3, Result};

/// Closed half-space `{x in R^3 : x3 + tan(theta) x1 <= a}`.
///
/// Its complement is the open region the stage pipeline escapes into; the
/// tilt is restricted to |theta| < pi/2 so tan is defined, with the
/// pipeline itself using theta in (0, pi/4).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Wedge {
    pub a: f64,
    pub theta: f64,
}

impl Wedge {
    pub fn new(a: f64, theta: f64) -> Self {
        assert!(theta.abs() < core::f64::consts::FRAC_PI_2, "tilt must satisfy |theta| < pi/2");
        Wedge { a, theta }
    }

    /// Signed elevation above the boundary plane, in plane-normal units:
    /// positive outside the wedge (in its complement).
    pub fn elevation(&self, p: Point3) -> f64 {
        (p.z + self.theta.tan() * p.x - self.a) * self.theta.cos()
    }

    /// Membership in the closed half-space.
    pub fn contains(&self, p: Point3) -> bool {
        p.z + self.theta.tan() * p.x <= self.a
    }

    /// Euclidean distance from `p` to the half-space (0 inside).
    pub fn distance(&self, p: Point3) -> f64 {
        self.elevation(p).max(0.0)
    }
}

/// Distance to `Pi_a(theta) U Pi_a(-theta)`: the min of the two wedge
/// distances. Points escape the union when this is positive.
pub fn dist_to_wedge_union(a: f64, theta: f64, p: Point3) -> f64 {
    Wedge::new(a, theta).distance(p).min(Wedge::new(a, -theta).distance(p))
}

/// Smallest shift magnitude `lambda >= 0` such that every point translated
/// by `(-lambda, 0, 0)` keeps distance greater than `margin` from the
/// wedge, then 1% headroom. Requires `tan(theta) < 0`, the tilt sign for
/// which a shift toward negative x1 increases the elevation.
pub fn choose_lambda(points: &[Point3], target: &Wedge, margin: f64) -> Result<f64> {
    let tan_theta = target.theta.tan();
    if tan_theta >= 0.0 {
        return Err(Error::WrongSign { tan_theta });
    }
    let mut lambda: f64 = 0.0;
    for p in points {
        // elevation(p - (l,0,0)) = elevation(p) - l*tan(theta)*cos(theta)
        let deficit = margin - target.elevation(*p);
        if deficit > 0.0 {
            lambda = lambda.max(deficit / (tan_theta.abs() * target.theta.cos()));
        }
    }
    Ok(lambda * 1.01)
}
