//! Generalized incomplete exponential functions of complex matrices.
//!
//! Matrix functions are computed by Schur-Parlett over scalar kernels
//! ([`scalarfn`]); hypergeometric-type series are summed term by term
//! ([`hyperseries`]) and cross-checked against integral representations
//! evaluated by adaptive Gauss-Kronrod quadrature ([`quad`]).

pub mod error;
pub mod hyperseries;
pub mod incexp;
pub mod matcore;
pub mod matspecial;
pub mod quad;
pub mod scalarfn;
pub mod verify;

pub use error::{Error, Result};
pub use matcore::{
    apply_scalar_function, matrix_exp, matrix_power_real_base, random_commuting_family, CMatrix,
    SpectralBox, SpectralData,
};
pub use num_complex::Complex64;
