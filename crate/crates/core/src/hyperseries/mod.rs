//! Hypergeometric-type matrix series: `pFq`, `pRq`, `0F1` and incomplete Gauss functions.

mod engine;
mod params;

pub use engine::{HyperSeries, SeriesSpec, Weight, DENOMINATOR_MARGIN};
pub use params::{EvalResult, ParamSet, SeriesControl};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matcore::CMatrix;

/// Refuses `p > q + 1` (for `z != 0`) and `p = q + 1` with `|z| > 1`. `|z| = 1` is
/// accepted and left to the convergence monitor.
pub fn check_pfq_convergence(p: usize, q: usize, z: Complex64) -> Result<()> {
    if z == Complex64::new(0.0, 0.0) {
        return Ok(());
    }
    if p > q + 1 {
        return Err(Error::DivergentSeries(format!("{p}F{q} diverges for every nonzero argument")));
    }
    if p == q + 1 && z.norm() > 1.0 {
        return Err(Error::DivergentSeries(format!("{p}F{q} needs |z| <= 1, got |z| = {}", z.norm())));
    }
    Ok(())
}

/// `pFq(E; F; z)` with numerator products on the left and denominator inverses on the right.
pub fn pfq(e: &[CMatrix], f: &[CMatrix], z: Complex64, ctrl: &SeriesControl) -> Result<EvalResult> {
    check_pfq_convergence(e.len(), f.len(), z)?;
    HyperSeries::new(SeriesSpec::plain(e.to_vec(), f.to_vec()), ctrl.max_terms)?.eval_scalar(z, ctrl)
}

/// `pRq(E; F | A, B; v) = sum Gamma(mA + B)^{-1} (E)_m (F)_m^{-1} v^m / m!`.
pub fn prq(e: &[CMatrix], f: &[CMatrix], a: &CMatrix, b: &CMatrix, v: Complex64, ctrl: &SeriesControl) -> Result<EvalResult> {
    prq_series(e, f, a, b, ctrl)?.eval_scalar(v, ctrl)
}

/// `pRq` at a matrix argument `Z`, with powers `Z^m` multiplied on the right.
pub fn prq_matrix_arg(e: &[CMatrix], f: &[CMatrix], a: &CMatrix, b: &CMatrix, z: &CMatrix, ctrl: &SeriesControl) -> Result<EvalResult> {
    prq_series(e, f, a, b, ctrl)?.eval_matrix(z, ctrl)
}

pub(crate) fn prq_series(e: &[CMatrix], f: &[CMatrix], a: &CMatrix, b: &CMatrix, ctrl: &SeriesControl) -> Result<HyperSeries> {
    let spec = SeriesSpec::weighted(Weight::RecipGamma, a.clone(), b.clone(), e.to_vec(), f.to_vec());
    HyperSeries::new(spec, ctrl.max_terms)
}

/// `0F1(-; A; z)`.
pub fn zero_f_one(a: &CMatrix, z: Complex64, ctrl: &SeriesControl) -> Result<EvalResult> {
    pfq(&[], std::slice::from_ref(a), z, ctrl)
}

fn check_x(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::DomainError(format!("x must be positive and finite, got {x}")))
    }
}

/// Lower incomplete Gauss function `sum (E; x)_n (F)_n (G)_n^{-1} z^n / n!`.
pub fn incomplete_gauss_lower(
    e: &CMatrix,
    f: &CMatrix,
    g: &CMatrix,
    x: f64,
    z: Complex64,
    ctrl: &SeriesControl,
) -> Result<EvalResult> {
    check_x(x)?;
    // (E; x)_n = P(E + nI, x) (E)_n, so the weight is P(nI + E, x).
    let spec = SeriesSpec::weighted(
        Weight::Lower { x },
        CMatrix::identity(e.dim()),
        e.clone(),
        vec![e.clone(), f.clone()],
        vec![g.clone()],
    );
    HyperSeries::new(spec, ctrl.max_terms)?.eval_scalar(z, ctrl)
}

/// Upper incomplete Gauss function `sum [E; x]_n (F)_n (G)_n^{-1} z^n / n!`.
pub fn incomplete_gauss_upper(
    e: &CMatrix,
    f: &CMatrix,
    g: &CMatrix,
    x: f64,
    z: Complex64,
    ctrl: &SeriesControl,
) -> Result<EvalResult> {
    check_x(x)?;
    check_pfq_convergence(2, 1, z)?;
    let spec = SeriesSpec::weighted(
        Weight::Upper { x },
        CMatrix::identity(e.dim()),
        e.clone(),
        vec![e.clone(), f.clone()],
        vec![g.clone()],
    );
    HyperSeries::new(spec, ctrl.max_terms)?.eval_scalar(z, ctrl)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::{apply_scalar_function, relative_residual};
    use crate::scalarfn::Analytic;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sample() -> (CMatrix, CMatrix) {
        let a = CMatrix::from_rows(vec![
            vec![c(1.3, 0.1), c(0.2, -0.1), c(0.0, 0.0)],
            vec![c(0.1, 0.0), c(0.8, 0.0), c(0.3, 0.2)],
            vec![c(0.0, 0.0), c(-0.2, 0.0), c(2.2, -0.3)],
        ])
        .unwrap();
        let b = a.shift(c(0.5, 0.0)).scale_re(1.5);
        (a, b)
    }

    #[test]
    fn zero_argument_gives_identity() {
        let (a, _) = sample();
        let r = zero_f_one(&a, c(0.0, 0.0), &SeriesControl::default()).unwrap();
        assert_eq!(r.value, CMatrix::identity(3));
    }

    #[test]
    fn binomial_series() {
        // 1F0(A;;z) = (1 - z)^{-A}
        let (a, _) = sample();
        let z = c(0.3, 0.4);
        let r = pfq(std::slice::from_ref(&a), &[], z, &SeriesControl::default()).unwrap();
        let want = apply_scalar_function(&a, &Analytic::entire(move |s: Complex64| (-s * (1.0 - z).ln()).exp())).unwrap();
        assert!(relative_residual(&r.value, &want) < 1e-11);
        assert!(r.est_error <= 1e-12 * (1.0 + r.value.frobenius_norm()));
    }

    #[test]
    fn scalar_gauss_function() {
        // 2F1(0.5+0.2i, 1.5; 2.5; 0.6) from mpmath.hyp2f1
        let m = |z: Complex64| CMatrix::scalar(1, z);
        let r = pfq(&[m(c(0.5, 0.2)), m(c(1.5, 0.0))], &[m(c(2.5, 0.0))], c(0.6, 0.0), &SeriesControl::default()).unwrap();
        let want = c(REF_2F1.0, REF_2F1.1);
        assert!((r.value[(0, 0)] - want).norm() < 1e-12);
    }

    #[test]
    fn refusals() {
        let (a, _) = sample();
        let ctrl = SeriesControl::default();
        let two = [a.clone(), a.clone()];
        assert!(matches!(pfq(&two, &[], c(0.1, 0.0), &ctrl), Err(Error::DivergentSeries(_))));
        assert!(matches!(pfq(&two, std::slice::from_ref(&a), c(1.1, 0.0), &ctrl), Err(Error::DivergentSeries(_))));
        let pole = CMatrix::from_real_diag(&[-2.0, 1.0, 1.0]);
        assert!(matches!(zero_f_one(&pole, c(0.5, 0.0), &ctrl), Err(Error::Pole(_))));
        let tiny = SeriesControl::default().with_max_terms(3);
        assert!(matches!(zero_f_one(&a, c(0.5, 0.0), &tiny), Err(Error::ConvergenceFailure { .. })));
    }

    #[test]
    fn coefficients_follow_the_term_ratio() {
        // For one numerator and one denominator the coefficients satisfy
        // c_{m+1} = c_m (E + mI) (F + mI)^{-1} / (m + 1).
        let (a, b) = sample();
        let mut s = HyperSeries::new(SeriesSpec::plain(vec![a.clone()], vec![b.clone()]), 100).unwrap();
        for m in 0..20 {
            let cm = s.coefficient_matrix(m).unwrap();
            let next = s.coefficient_matrix(m + 1).unwrap();
            let shift = c(m as f64, 0.0);
            let want = b.shift(shift).solve_right(&(&cm * &a.shift(shift))).unwrap().scale_re(1.0 / (m + 1) as f64);
            assert!(relative_residual(&next, &want) < 1e-13, "m = {m}");
        }
    }

    #[test]
    fn reciprocal_gamma_weight_matches_direct_terms() {
        let (a, b) = sample();
        let ctrl = SeriesControl::default();
        let v = c(0.4, -0.2);
        let r = prq(&[], &[], &a, &b, v, &ctrl).unwrap();
        let mut want = CMatrix::zeros(3);
        let mut fact = 1.0;
        for m in 0..40 {
            let w = crate::matspecial::gamma_matrix_inverse(&(a.scale_re(m as f64) + &b)).unwrap();
            want += &w.scale(v.powu(m as u32) / fact);
            fact *= (m + 1) as f64;
        }
        assert!(relative_residual(&r.value, &want) < 1e-13);
        let z = CMatrix::identity(3).scale(v);
        let rm = prq_matrix_arg(&[], &[], &a, &b, &z, &ctrl).unwrap();
        assert!(relative_residual(&rm.value, &r.value) < 1e-14);
    }

    #[test]
    fn power_argument_survives_a_wide_spectral_spread() {
        // Non-normal commuting family; mode values from mpmath at t = 100, v = 0.5+0.3i.
        let basis = CMatrix::from_rows(vec![vec![c(1.0, 0.0), c(0.6, 0.2)], vec![c(0.3, -0.1), c(1.0, 0.0)]]).unwrap();
        let inv = basis.inverse().unwrap();
        let family = |d: [Complex64; 2]| &(&basis * &CMatrix::from_diag(&d)) * &inv;
        let a = family([c(2.9, 0.0), c(1.8, 0.0)]);
        let b = family([c(1.9, 0.0), c(2.8, 0.0)]);
        let e = family([c(1.6, 0.0), c(1.7, 0.0)]);
        let f = family([c(2.7, 0.0), c(2.9, 0.0)]);
        let want = family([c(2.9459733278666336e16, -2.726977014144089e15), c(1.3268872151142131e8, -2.4966810348350132e8)]);
        let ctrl = SeriesControl::default();
        let got = prq_series(&[e], &[f], &a, &b, &ctrl).unwrap().eval_power(100.0, c(0.5, 0.3), &ctrl).unwrap();
        assert!(relative_residual(&got.value, &want) < 1e-12, "{:e}", relative_residual(&got.value, &want));
    }

    #[test]
    fn incomplete_gauss_halves_sum_to_gauss() {
        let (a, b) = sample();
        let g = b.shift(c(1.0, 0.0));
        let ctrl = SeriesControl::default();
        let z = c(0.5, 0.1);
        let lo = incomplete_gauss_lower(&a, &b, &g, 1.3, z, &ctrl).unwrap().value;
        let up = incomplete_gauss_upper(&a, &b, &g, 1.3, z, &ctrl).unwrap().value;
        let full = pfq(&[a.clone(), b.clone()], &[g.clone()], z, &ctrl).unwrap().value;
        assert!(relative_residual(&(lo + up), &full) < 1e-11);
    }
}

#[cfg(test)]
const REF_2F1: (f64, f64) = (1.2705717833883075, 0.12921427302887445);
