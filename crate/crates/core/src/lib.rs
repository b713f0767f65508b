//! Exact radial expectation values `<r^k>` for d-dimensional hydrogen-like
//! bound states.
//!
//! Moments are dimensionless, `M_k = <(Z r / a0)^k>`; multiply by `(a0/Z)^k`
//! for physical units. The [`recurrence`] module builds tables from the seeds
//! `M_{-1} = 1/N^2`, `M_0 = 1` with the three-term and two-term relations, and
//! [`oracle`] recomputes any moment by exact integration of the wavefunction.
//!
//! Everything is generic over [`Scalar`]; the exact instantiation uses
//! [`Rational`] and is exposed through the `Exact*` aliases below.

pub mod error;
pub mod oracle;
pub mod recurrence;
pub mod scalar;
pub mod state;
pub mod table;

pub use error::{MomentError, Result};
pub use oracle::{laguerre_coefficients, oracle_moment, radial_integral, RadialPolynomial};
pub use recurrence::{
    ascend, closed_form_r, closed_form_r_polynomial, closed_form_r_reduced, descend, full_table,
    invert_two_term, kramers_residual, kramers_residual_with, seeds, step_coefficients,
    CentralPotential, Coulomb, KramersResidual, StepCoefficients,
};
pub use scalar::{rational, Scalar};
pub use state::{angular_coefficient, moment_exists, spectral_params, QuantumState, SpectralParams};
pub use table::{Moment, MomentEntry, MomentTable};

/// Arbitrary-precision rational used for every exact computation.
pub type Rational = num_rational::BigRational;

pub type ExactParams = SpectralParams<Rational>;
pub type ExactMoment = Moment<Rational>;
pub type ExactTable = MomentTable<Rational>;
pub type ExactResidual = KramersResidual<Rational>;

pub type F64Params = SpectralParams<f64>;
pub type F64Moment = Moment<f64>;
pub type F64Table = MomentTable<f64>;

pub type F32Table = MomentTable<f32>;
