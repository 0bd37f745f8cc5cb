//! Gamma, beta, incomplete gamma and Pochhammer functions of a matrix argument.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matcore::{eigenvalues, CMatrix, SpectralData};
use crate::scalarfn::{nearest_pole_distance, GammaFn, LowerGamma, RecipGamma, UpperGamma};

/// Eigenvalues closer than this to a nonpositive integer count as poles.
pub const POLE_TOL: f64 = 1e-10;
/// Relative commutator bound accepted as "commuting".
pub const COMMUTE_TOL: f64 = 1e-10;

fn check_poles(spec: &SpectralData) -> Result<()> {
    for z in spec.eigenvalues() {
        if nearest_pole_distance(z) < POLE_TOL {
            return Err(Error::Pole(z));
        }
    }
    Ok(())
}

fn check_x(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::DomainError(format!("x must be positive and finite, got {x}")))
    }
}

pub(crate) fn require_commuting(a: &CMatrix, b: &CMatrix) -> Result<()> {
    let rc = a.relative_commutator(b);
    if rc > COMMUTE_TOL {
        Err(Error::CommutativityViolation(rc))
    } else {
        Ok(())
    }
}

/// `Gamma(E)`.
pub fn gamma_matrix(e: &CMatrix) -> Result<CMatrix> {
    let spec = SpectralData::new(e)?;
    check_poles(&spec)?;
    spec.apply(&GammaFn)
}

/// `Gamma(E)^{-1}`, computed from the entire function `1/Gamma` rather than by inversion.
pub fn gamma_matrix_inverse(e: &CMatrix) -> Result<CMatrix> {
    SpectralData::new(e)?.apply(&RecipGamma::default())
}

/// `gamma(E, x)`.
pub fn lower_incomplete_gamma_matrix(e: &CMatrix, x: f64) -> Result<CMatrix> {
    check_x(x)?;
    let spec = SpectralData::new(e)?;
    check_poles(&spec)?;
    spec.apply(&LowerGamma { x })
}

/// `Gamma(E, x)`.
pub fn upper_incomplete_gamma_matrix(e: &CMatrix, x: f64) -> Result<CMatrix> {
    check_x(x)?;
    SpectralData::new(e)?.apply(&UpperGamma { x })
}

/// `(gamma(E, x), Gamma(E, x))` from one Schur factorization.
pub fn incomplete_split(e: &CMatrix, x: f64) -> Result<(CMatrix, CMatrix)> {
    check_x(x)?;
    let spec = SpectralData::new(e)?;
    check_poles(&spec)?;
    Ok((spec.apply(&LowerGamma { x })?, spec.apply(&UpperGamma { x })?))
}

/// `B(E, F) = Gamma(E) Gamma(F) Gamma(E + F)^{-1}` for commuting `E`, `F`.
pub fn beta_matrix(e: &CMatrix, f: &CMatrix) -> Result<CMatrix> {
    require_commuting(e, f)?;
    let sum = e + f;
    Ok(&(&gamma_matrix(e)? * &gamma_matrix(f)?) * &gamma_matrix_inverse(&sum)?)
}

/// `(E)_n = E (E + I) ... (E + (n-1) I)`.
pub fn pochhammer_matrix(e: &CMatrix, n: usize) -> CMatrix {
    let mut acc = CMatrix::identity(e.dim());
    for k in 0..n {
        acc = &acc * &e.shift(Complex64::new(k as f64, 0.0));
    }
    acc
}

/// `(E; x)_n = gamma(E + nI, x) Gamma(E)^{-1}`.
pub fn incomplete_pochhammer_lower(e: &CMatrix, x: f64, n: usize) -> Result<CMatrix> {
    let shifted = e.shift(Complex64::new(n as f64, 0.0));
    Ok(&lower_incomplete_gamma_matrix(&shifted, x)? * &gamma_matrix_inverse(e)?)
}

/// `[E; x]_n = Gamma(E + nI, x) Gamma(E)^{-1}`.
pub fn incomplete_pochhammer_upper(e: &CMatrix, x: f64, n: usize) -> Result<CMatrix> {
    let shifted = e.shift(Complex64::new(n as f64, 0.0));
    Ok(&upper_incomplete_gamma_matrix(&shifted, x)? * &gamma_matrix_inverse(e)?)
}

/// `(E)_{kn} = k^{kn} prod_{j<k} ((E + jI) / k)_n`, the multiplication split of a Pochhammer symbol.
pub fn generalized_pochhammer_split(e: &CMatrix, k: usize, n: usize) -> Result<CMatrix> {
    if k == 0 {
        return Err(Error::DomainError("split factor k must be at least 1".into()));
    }
    let kf = k as f64;
    let mut acc = CMatrix::identity(e.dim()).scale_re(kf.powi((k * n) as i32));
    for j in 0..k {
        let part = e.shift(Complex64::new(j as f64, 0.0)).scale_re(1.0 / kf);
        acc = &acc * &pochhammer_matrix(&part, n);
    }
    Ok(acc)
}

/// `(n-1)! (E)_n^{-1} n^E`, which tends to `Gamma(E)` as `n` grows.
pub fn gamma_limit_approximant(e: &CMatrix, n: usize) -> Result<CMatrix> {
    if n == 0 {
        return Err(Error::DomainError("n must be positive".into()));
    }
    // (n-1)! (E)_n^{-1} = (E prod_{k<n} (I + E/k))^{-1}, which stays in range.
    let mut p = e.clone();
    for k in 1..n {
        p = &p * &e.scale_re(1.0 / k as f64).shift(Complex64::new(1.0, 0.0));
    }
    let pw = crate::matcore::matrix_power_real_base(n as f64, e)?;
    p.solve(&pw)
}

/// Whether `E` has an eigenvalue on a pole of gamma.
pub fn has_gamma_pole(e: &CMatrix) -> Result<bool> {
    Ok(eigenvalues(e)?.iter().any(|&z| nearest_pole_distance(z) < POLE_TOL))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::relative_residual;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn nonnormal() -> CMatrix {
        CMatrix::from_rows(vec![
            vec![c(1.2, 0.1), c(0.4, 0.0), c(0.0, 0.3)],
            vec![c(0.0, 0.0), c(2.1, -0.2), c(0.5, 0.0)],
            vec![c(0.1, 0.0), c(0.0, 0.0), c(0.8, 0.0)],
        ])
        .unwrap()
    }

    #[test]
    fn gamma_of_identity_multiples() {
        let g = gamma_matrix(&CMatrix::identity(2).scale_re(5.0)).unwrap();
        assert!((g - CMatrix::identity(2).scale_re(24.0)).frobenius_norm() < 1e-12);
        let e = CMatrix::from_real_diag(&[-1.0, 2.0]);
        assert_eq!(gamma_matrix(&e), Err(Error::Pole(c(-1.0, 0.0))));
        let r = gamma_matrix_inverse(&e).unwrap();
        assert!(r[(0, 0)].norm() < 1e-300);
    }

    #[test]
    fn recurrence_and_inverse() {
        let e = nonnormal();
        let g = gamma_matrix(&e).unwrap();
        let g1 = gamma_matrix(&e.shift(c(1.0, 0.0))).unwrap();
        assert!(relative_residual(&g1, &(&e * &g)) < 1e-13);
        let gi = gamma_matrix_inverse(&e).unwrap();
        assert!(relative_residual(&(&g * &gi), &CMatrix::identity(3)) < 1e-13);
    }

    #[test]
    fn incomplete_parts_sum_to_gamma() {
        let e = nonnormal();
        let (lo, up) = incomplete_split(&e, 1.7).unwrap();
        assert!(relative_residual(&(lo + up), &gamma_matrix(&e).unwrap()) < 1e-13);
        for n in 0..5 {
            let s = incomplete_pochhammer_lower(&e, 0.9, n).unwrap() + incomplete_pochhammer_upper(&e, 0.9, n).unwrap();
            assert!(relative_residual(&s, &pochhammer_matrix(&e, n)) < 1e-12, "n = {n}");
        }
    }

    #[test]
    fn beta_of_scalars() {
        let b = beta_matrix(&CMatrix::identity(1), &CMatrix::identity(1).scale_re(2.0)).unwrap();
        assert!((b[(0, 0)] - 0.5).norm() < 1e-15);
        let e = nonnormal();
        let f = e.transpose();
        assert!(matches!(beta_matrix(&e, &f), Err(Error::CommutativityViolation(_))));
    }

    #[test]
    fn pochhammer_split_and_limit() {
        let e = nonnormal();
        for k in 1..4 {
            let lhs = pochhammer_matrix(&e, k * 3);
            let rhs = generalized_pochhammer_split(&e, k, 3).unwrap();
            assert!(relative_residual(&rhs, &lhs) < 1e-13);
        }
        let g = gamma_matrix(&e).unwrap();
        let err25 = relative_residual(&gamma_limit_approximant(&e, 25).unwrap(), &g);
        let err400 = relative_residual(&gamma_limit_approximant(&e, 400).unwrap(), &g);
        assert!(err400 < err25 && err400 < 1e-2);
    }
}
