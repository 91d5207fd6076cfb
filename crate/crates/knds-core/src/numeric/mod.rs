//! Shared numerical building blocks: quadrature, Jacobi polynomials, the
//! complex log-Gamma function and a dense complex eigenvalue solver.

pub mod eig;
pub mod gamma;
pub mod jacobi;
pub mod quadrature;

use num_complex::Complex64;

/// A complex value stored as `value * exp(log)` with `log` real, so that
/// quantities growing like `exp(|Im lambda| X_0)` stay representable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogScaled {
    pub value: Complex64,
    pub log: f64,
}

impl LogScaled {
    pub fn new(value: Complex64, log: f64) -> Self {
        Self { value, log }
    }

    pub fn from_value(value: Complex64) -> Self {
        Self { value, log: 0.0 }
    }

    /// Pull the magnitude of `value` into the log part.
    pub fn normalized(self) -> Self {
        let m = self.value.norm();
        if m == 0.0 || !m.is_finite() {
            return self;
        }
        Self {
            value: self.value / m,
            log: self.log + m.ln(),
        }
    }

    /// The plain complex number; may overflow for large `log`.
    pub fn collapse(self) -> Complex64 {
        self.value * self.log.exp()
    }

    pub fn ln_abs(self) -> f64 {
        self.log + self.value.norm().ln()
    }

    pub fn mul(self, other: LogScaled) -> LogScaled {
        LogScaled::new(self.value * other.value, self.log + other.log).normalized()
    }

    /// `self / other` as a plain complex number (logs subtract).
    pub fn ratio(self, other: LogScaled) -> Complex64 {
        (self.value / other.value) * (self.log - other.log).exp()
    }
}

/// Relative distance between two log-scaled values after aligning logs.
pub fn log_scaled_rel_diff(a: LogScaled, b: LogScaled) -> f64 {
    let r = b.ratio(a);
    (r - 1.0).norm()
}
