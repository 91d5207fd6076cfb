//! Outgoing (Jost) solutions of the radial Dirac system at both horizons,
//! interior integration, Wronskian evaluation and complex zero location.

pub mod context;
mod integrate;
mod schrodinger;
mod series;
mod wronskian;
mod zeros;

pub use context::{RadialContext, SideSeries};
pub use integrate::{integrate_interior, IntegratedState, LOCAL_TOL};
pub use schrodinger::{barrier_potentials, schrodinger_reduction_check};
pub use series::{exceptional_distance, HorizonSeries, SpinorJet, J_DEFAULT};
pub use wronskian::{
    evaluate_outgoing, seed_state, seed_state_at, series_ode_residual, wronskian,
    wronskian_with_drift, OutgoingValue, WronskianValue,
};
pub use zeros::{radial_resonances, ResonanceZero, SearchBox, SweepVariable};

use crate::Result;
use num_complex::Complex64;
use std::sync::Arc;

/// A radial spectral problem at fixed `(lambda, omega, k)`.
#[derive(Debug, Clone)]
pub struct RadialProblem {
    pub context: Arc<RadialContext>,
    pub lambda: Complex64,
    pub omega: Complex64,
    /// Half-integer azimuthal index (validated upstream).
    pub k: f64,
    pub massive: bool,
    /// Proceed with the limit normalization at exceptional `lambda`.
    pub allow_exceptional: bool,
}

impl RadialProblem {
    pub fn massless(
        context: Arc<RadialContext>,
        lambda: Complex64,
        omega: Complex64,
        k: f64,
    ) -> Self {
        Self {
            context,
            lambda,
            omega,
            k,
            massive: false,
            allow_exceptional: false,
        }
    }

    pub fn massive(
        context: Arc<RadialContext>,
        lambda: Complex64,
        omega: Complex64,
        k: f64,
    ) -> Self {
        Self {
            context,
            lambda,
            omega,
            k,
            massive: true,
            allow_exceptional: false,
        }
    }

    /// Spinor dimension: 2 massless, 4 massive.
    pub fn dim(&self) -> usize {
        if self.massive {
            4
        } else {
            2
        }
    }

    /// Number of outgoing families per side: 1 massless, 2 massive.
    pub fn families(&self) -> usize {
        self.dim() / 2
    }

    pub fn with_frequencies(&self, lambda: Complex64, omega: Complex64) -> Self {
        let mut p = self.clone();
        p.lambda = lambda;
        p.omega = omega;
        p
    }

    pub fn allowing_exceptional(mut self) -> Self {
        self.allow_exceptional = true;
        self
    }
}

/// Build a context from black-hole parameters (horizons + photon-sphere
/// anchored Regge-Wheeler map + coefficient series).
pub fn build_context(params: &crate::spacetime::BlackHoleParams) -> Result<Arc<RadialContext>> {
    Ok(Arc::new(RadialContext::new(
        crate::semiclassical::build_coeffs(params)?,
    )?))
}
