//! Free Meixner laws: non-crossing partitions, moment/free-cumulant calculus,
//! analytic transforms, densities with atoms, quadrature, and exact checks of
//! the regression identities that characterize the family.

pub mod cumulant_calculus;
pub mod error;
pub mod meixner;
pub mod ncpart;
pub mod numerics;
pub mod regression_verifier;
pub mod scalar;
pub mod sequence;

pub use error::{Error, Result};
pub use scalar::{ratio, Rational, Scalar};
pub use sequence::{CumulantSequence, MomentSequence};
