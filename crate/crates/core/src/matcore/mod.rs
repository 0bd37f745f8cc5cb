//! Dense complex matrices, Schur-Parlett matrix functions and random commuting families.

mod expm;
mod family;
mod funm;
mod matrix;
mod schur;
mod spectrum;

pub use expm::{matrix_exp, matrix_power_real_base};
pub use family::{random_commuting_family, CommutingBasis, SpectralBox};
pub use funm::{apply_scalar_function, SpectralData, BLOCKING_TOL};
pub use matrix::{relative_residual, CMatrix, Lu};
pub use schur::{schur_decompose, Schur};
pub use spectrum::{eigenvalues, is_positive_stable, margin_of_matrix, shift_invertibility_margin};
