//! Black-hole parameters, horizon structure, the Regge-Wheeler coordinate
//! and the coefficient functions of the separated radial Dirac system.

mod coeffs;
mod horizons;
mod params;
mod regge_wheeler;

pub use coeffs::CoeffFunctions;
pub use horizons::{HorizonSet, HorizonSide};
pub use params::{AdmissibilityReport, BlackHoleParams};
pub use regge_wheeler::ReggeWheelerMap;
