//! Error taxonomy shared by all modules.

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CoreError {
    /// `M <= 0` or `Lambda <= 0`: not a black-hole parameter set at all.
    #[error("nonphysical input: {0}")]
    Nonphysical(String),

    /// Admissibility inequalities violated; the quartic does not have the
    /// required root structure.
    #[error("inadmissible parameters: {0}")]
    Inadmissible(String),

    /// Complex or (nearly) multiple horizon roots.
    #[error("parameter set degenerate / near-extremal: {0}")]
    DegenerateHorizons(String),

    /// Radius/domain violations of maps that are only valid on a window.
    #[error("domain error: {0}")]
    Domain(String),

    /// Discretization refused (too coarse, unusable request).
    #[error("discretization too small: N = {0}, need N >= {1}")]
    DiscretizationTooSmall(usize, usize),

    /// Eigenvalue continuation could not disambiguate two branches.
    #[error("eigenvalue continuation ambiguous: candidates {0} and {1}")]
    ContinuationAmbiguous(Complex64, Complex64),

    /// lambda hit the exceptional set Omega_pm -+ i kappa_pm/2 Z_+ of the
    /// Gamma-normalized horizon series.
    #[error("Gamma pole: lambda within {dist:.3e} of exceptional point {point}")]
    GammaPole { point: Complex64, dist: f64 },

    /// Series tail failed to decay inside the requested disc.
    #[error("series convergence radius exceeded at |w_hat| = {0:.3e}")]
    RadiusExceeded(f64),

    /// Adaptive integrator step collapsed.
    #[error("stiffness: step underflow at x = {0:.6e}")]
    Stiffness(f64),

    /// Both outgoing solutions vanish identically (exceptional case).
    #[error("degenerate outgoing pair at lambda = {0}")]
    DegenerateOutgoing(Complex64),

    /// Newton/winding bookkeeping disagrees even after subdivision.
    #[error("zero search diagnostic failure: {0}")]
    ZeroSearch(String),

    /// Trapping analysis found no interior critical point.
    #[error("no interior trapping: {0}")]
    NoTrapping(String),

    /// Photon sphere absent: 2Q^2 >= (3M/2)^2.
    #[error("no photon sphere: 2Q^2 = {0:.6e} >= (3M/2)^2 = {1:.6e}")]
    NoPhotonSphere(f64, f64),

    /// Degenerate trapping (second derivative below tolerance).
    #[error("degenerate trapping: |second derivative| = {0:.3e} below tolerance")]
    DegenerateTrapping(f64),

    /// Operation only defined in a restricted regime was called outside it.
    #[error("refused: {0}")]
    Refused(String),

    /// Newton iteration did not converge; trace of iterates attached.
    #[error("no convergence after {iterations} iterations; last |step| = {last_step:.3e}")]
    NoConvergence { iterations: usize, last_step: f64 },
}
