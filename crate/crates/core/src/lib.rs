//! Exact counting of distance configurations in finite planes `F_q^2`
//! (and `F_q^d` where it makes sense), together with the Fourier-analytic
//! machinery used to estimate those counts.
//!
//! Every count is computed in integer arithmetic; Fourier-side quantities are
//! double precision and are checked against the integer counts.

pub mod char_sums;
pub mod config_count;
pub mod congruence;
pub mod error;
pub mod experiments;
pub mod field;
pub mod fourier;
pub mod geom_solver;
pub mod linalg;
pub mod point;

pub use config_count::PointSet;
pub use error::{Error, Result};
pub use field::{ComplexScalar, FieldElement, PrimeField};
pub use fourier::SpectralGrid;
pub use point::{GridShape, PointD};
