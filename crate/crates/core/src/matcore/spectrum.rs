use num_complex::Complex64;

use super::funm::SpectralData;
use super::matrix::CMatrix;
use crate::error::Result;

pub fn eigenvalues(m: &CMatrix) -> Result<Vec<Complex64>> {
    Ok(super::schur::schur_decompose(m)?.eigenvalues())
}

/// All eigenvalues have strictly positive real part.
pub fn is_positive_stable(m: &CMatrix) -> Result<bool> {
    Ok(eigenvalues(m)?.iter().all(|z| z.re > 0.0))
}

/// `min_{0 <= k <= k_max} min_i |lambda_i + k|`: how far `M + kI` stays from singular.
pub fn shift_invertibility_margin(m: &CMatrix, k_max: usize) -> Result<f64> {
    Ok(margin_of(&eigenvalues(m)?, k_max).0)
}

fn margin_of(eigs: &[Complex64], k_max: usize) -> (f64, Complex64) {
    let mut best = (f64::INFINITY, Complex64::new(0.0, 0.0));
    for &z in eigs {
        // The closest shift is the integer nearest -Re(z), clamped to the range.
        let k = (-z.re).round().clamp(0.0, k_max as f64);
        let d = (z + k).norm();
        if d < best.0 {
            best = (d, z);
        }
    }
    best
}

/// The margin together with the eigenvalue attaining it.
pub fn margin_of_matrix(m: &CMatrix, k_max: usize) -> Result<(f64, Complex64)> {
    Ok(margin_of(&eigenvalues(m)?, k_max))
}

impl SpectralData {
    pub fn is_positive_stable(&self) -> bool {
        self.eigenvalues().iter().all(|z| z.re > 0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn margins() {
        let m = CMatrix::from_real_diag(&[-2.5, 1.0]);
        assert!((shift_invertibility_margin(&m, 10).unwrap() - 0.5).abs() < 1e-14);
        assert!((shift_invertibility_margin(&m, 1).unwrap() - 1.0).abs() < 1e-14);
        let s = CMatrix::from_real_diag(&[-3.0]);
        assert!(shift_invertibility_margin(&s, 5).unwrap() < 1e-14);
        assert!(!is_positive_stable(&m).unwrap());
        assert!(is_positive_stable(&CMatrix::from_real_diag(&[0.5, 2.0])).unwrap());
    }
}
