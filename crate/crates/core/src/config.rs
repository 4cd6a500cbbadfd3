//! Numeric knobs shared across the kernel.

/// Tolerances and budgets. `Config::default()` matches the documented
/// defaults; individual runs may override fields.
#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    /// Relative tolerance for adaptive contour quadrature.
    pub quad_tol: f64,
    /// Maximum halving depth per segment before giving up.
    pub quad_max_depth: usize,
    /// Pole clearance as a fraction of the domain diameter.
    pub pole_clearance_rel: f64,
    /// Fallback absolute pole clearance when no domain scale is available.
    pub pole_clearance_abs: f64,
    /// Default degree used when refitting exp/reciprocals of functions.
    pub refit_degree: usize,
    /// Hard cap on any polynomial degree produced by approximation.
    pub max_degree: usize,
    /// Refit acceptance: sup fit error must stay below this times sup |f|.
    pub refit_tol_factor: f64,
    /// Ridge weight (relative to the largest column norm) for least squares.
    pub ridge_rel: f64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            quad_tol: 1e-11,
            quad_max_depth: 11,
            pole_clearance_rel: 1e-6,
            pole_clearance_abs: 1e-9,
            refit_degree: 64,
            max_degree: 640,
            refit_tol_factor: 1e-9,
            ridge_rel: 1e-13,
        }
    }
}

impl Config {
    /// Pole clearance for a domain of the given diameter.
    pub fn pole_clearance(&self, domain_diameter: f64) -> f64 {
        if domain_diameter > 0.0 {
            self.pole_clearance_rel * domain_diameter
        } else {
            self.pole_clearance_abs
        }
    }
}
