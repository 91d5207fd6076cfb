//! Quasi-normal modes (resonances) of charged, massive Dirac fields in the
//! exterior of slowly rotating Kerr-Newman-de Sitter black holes.
//!
//! Two independent routes to the spectrum are provided and cross-validated:
//!
//! * closed-form semiclassical asymptotics (photon-sphere data, leading
//!   pseudolattice formula, radial/angular quantization symbols and the
//!   Zeeman splitting slope), see [`semiclassical`];
//! * a numerical pipeline: angular eigenvalues of the separated Dirac
//!   operator on `(0, pi)` ([`angular`]) combined with outgoing-solution
//!   Wronskian root finding for the radial system ([`radial`], [`qnm`]).
//!
//! Both massless (2-spinor) and massive (4-spinor) fields are supported.
//! All frequency-plane quantities are log-scaled internally so that modes
//! deep in the lower half-plane remain representable.

pub mod angular;
pub mod error;
pub mod numeric;
pub mod qnm;
pub mod radial;
pub mod semiclassical;
pub mod spacetime;

pub use error::CoreError;
pub use num_complex::Complex64;
pub use spacetime::{BlackHoleParams, CoeffFunctions, HorizonSet, ReggeWheelerMap};

/// Library-wide result alias.
pub type Result<T> = std::result::Result<T, CoreError>;
