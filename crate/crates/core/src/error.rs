//! Error type shared by all modules.

use alloc::string::String;

use crate::C64;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    // -- evaluation / integration ------------------------------------------
    #[error("evaluation point {point} is within {clearance:e} of a pole")]
    PoleHit { point: C64, clearance: f64 },
    #[error("pole at {pole} lies within clearance {clearance:e} of the integration path (distance {distance:e})")]
    PoleTooClose { pole: C64, clearance: f64, distance: f64 },
    #[error("adaptive quadrature exceeded its refinement budget (depth {max_depth})")]
    QuadratureNotConverged { max_depth: usize },
    #[error("|f| = {min_abs:e} on the path; continuous logarithm undefined")]
    ZeroOnPath { min_abs: f64 },
    #[error("operands have different expansion centers ({0} vs {1})")]
    CenterMismatch(C64, C64),
    #[error("antiderivative has a logarithmic term: residue coefficient {residue}")]
    LogTerm { residue: C64 },

    // -- approximation ------------------------------------------------------
    #[error("no polynomial of degree <= {max_degree} reaches eps {eps:e} (best sup error {best:e})")]
    DegreeBudgetExceeded { max_degree: usize, eps: f64, best: f64 },
    #[error("divisor point {point} is outside the interior of K or touches its boundary")]
    BadDivisor { point: C64 },
    #[error("f vanishes on the boundary of K (min |f| = {min_abs:e})")]
    ZeroOnBoundary { min_abs: f64 },
    #[error("continuous log fails to close after integer winding correction: residual {residual:e}")]
    WindingMismatch { residual: f64 },
    #[error("least-squares refit error {err:e} exceeds the acceptance threshold {threshold:e}")]
    RefitFailure { err: f64, threshold: f64 },

    // -- weierstrass --------------------------------------------------------
    #[error("spin data is irregular: sum |phi_k|^2 = {min_metric:e} at {point}")]
    RegularityFailure { point: C64, min_metric: f64 },
    #[error("1/g (or a derived form) is not representable within the degree budget: {0}")]
    RepresentationOverflow(String),
    #[error("phi1 - i*phi2 is (numerically) identically zero; Gauss map undefined")]
    DegenerateTriple,
    #[error("null-triple invariant violated: {what} residual {residual:e} at {point}")]
    TripleInvariant { what: &'static str, residual: f64, point: C64 },

    // -- deformation --------------------------------------------------------
    #[error("g*phi3 vanishes along the deformation arc (min |g f3| = {min_abs:e})")]
    ZeroOnArc { min_abs: f64 },
    #[error("smooth blend failed to stay nonvanishing/continuous on the arc: {0}")]
    BlendFailure(String),
    #[error("no sign change of the shooting residual for t in [-{scanned:e}, {scanned:e}]")]
    BracketNotFound { scanned: f64 },
    #[error("translating along x1 cannot increase the distance to a wedge with tan(theta) = {tan_theta}")]
    WrongSign { tan_theta: f64 },

    // -- periods ------------------------------------------------------------
    #[error("period Jacobian at (0,0) has rank {rank}, need {need}; increase param_degree")]
    RankDeficient { rank: usize, need: usize },
    #[error("Newton iteration diverged after {iters} steps; residual history tail {residual:e}")]
    NewtonDiverged { iters: usize, residual: f64 },

    // -- builder ------------------------------------------------------------
    #[error("stage {stage} failed: certificate {certificate} margin {margin:e} after {retries} retries")]
    StageFailed { stage: usize, certificate: &'static str, margin: f64, retries: usize },

    // -- misc ---------------------------------------------------------------
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("compact set is not admissible: {0}")]
    NotAdmissible(String),
}
