//! Scalar kernels and the `ScalarFn` abstraction consumed by the matrix-function engine.

mod bessel;
mod gamma;
mod incgamma;
mod kernels;

pub use bessel::{bessel_i_c, bessel_j_c};
pub use gamma::{gamma_c, lgamma_c, nearest_pole_distance, rgamma_c};
pub use incgamma::{
    lower_gamma_c, regularized_lower_c, regularized_upper_c, upper_gamma_c, IncGammaSplit,
    incomplete_gamma_split_c,
};
pub use kernels::{
    Affine, Analytic, BesselOrder, Exp, GammaFn, LowerGamma, Pointwise, RealPower, RecipGamma,
    RegularizedLower, RegularizedUpper, UpperGamma,
};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Number of Cauchy contour points used for numerical Taylor coefficients.
pub const CAUCHY_POINTS: usize = 64;
/// Largest Taylor order the Cauchy fallback will produce.
pub const CAUCHY_MAX_ORDER: usize = 40;

/// A scalar function that can be lifted to matrices by Schur-Parlett.
pub trait ScalarFn {
    fn eval(&self, z: Complex64) -> Result<Complex64>;

    /// True when `z` is a pole or otherwise outside the domain.
    fn is_singular(&self, _z: Complex64) -> bool {
        false
    }

    /// Radius of a disc about `z` on which the function is analytic and numerically tame.
    fn analytic_radius(&self, _z: Complex64) -> f64 {
        f64::INFINITY
    }

    /// Highest derivative order this function can supply.
    fn max_derivative_order(&self) -> usize {
        CAUCHY_MAX_ORDER
    }

    /// Taylor coefficients `f^(k)(z) / k!` for `k < count`.
    ///
    /// The default uses the trapezoid rule on a circle of radius
    /// `clamp(2 * spread, 0.25, R / 2)` where `R` is the analytic radius.
    fn taylor_coefficients(&self, z: Complex64, count: usize, spread: f64) -> Result<Vec<Complex64>> {
        if count <= 1 {
            return Ok(vec![self.eval(z)?]);
        }
        if count - 1 > self.max_derivative_order() {
            return Err(Error::DerivativeUnavailable { order: count - 1 });
        }
        let radius = self.analytic_radius(z);
        let rho = (2.0 * spread).max(0.25).min(0.5 * radius);
        if !(rho > 0.0) || !rho.is_finite() {
            return Err(Error::DerivativeUnavailable { order: count - 1 });
        }
        cauchy_coefficients(|w| self.eval(w), z, rho, count)
    }

    fn derivative(&self, order: usize, z: Complex64) -> Result<Complex64> {
        if order == 0 {
            return self.eval(z);
        }
        let c = self.taylor_coefficients(z, order + 1, 0.0)?;
        let fact: f64 = (1..=order).map(|k| k as f64).product();
        Ok(c[order] * fact)
    }
}

impl<T: ScalarFn + ?Sized> ScalarFn for &T {
    fn eval(&self, z: Complex64) -> Result<Complex64> {
        (**self).eval(z)
    }
    fn is_singular(&self, z: Complex64) -> bool {
        (**self).is_singular(z)
    }
    fn analytic_radius(&self, z: Complex64) -> f64 {
        (**self).analytic_radius(z)
    }
    fn max_derivative_order(&self) -> usize {
        (**self).max_derivative_order()
    }
    fn taylor_coefficients(&self, z: Complex64, count: usize, spread: f64) -> Result<Vec<Complex64>> {
        (**self).taylor_coefficients(z, count, spread)
    }
    fn derivative(&self, order: usize, z: Complex64) -> Result<Complex64> {
        (**self).derivative(order, z)
    }
}

/// Taylor coefficients about `z` from `CAUCHY_POINTS` samples on the circle of radius `rho`.
pub fn cauchy_coefficients(
    f: impl Fn(Complex64) -> Result<Complex64>,
    z: Complex64,
    rho: f64,
    count: usize,
) -> Result<Vec<Complex64>> {
    let n = CAUCHY_POINTS;
    let samples: Vec<(Complex64, Complex64)> = (0..n)
        .map(|j| {
            let w = Complex64::from_polar(1.0, std::f64::consts::TAU * j as f64 / n as f64);
            f(z + w * rho).map(|v| (w, v))
        })
        .collect::<Result<_>>()?;
    let mut out = Vec::with_capacity(count);
    let mut scale = 1.0;
    for k in 0..count {
        let s: Complex64 = samples.iter().map(|(w, v)| v * w.conj().powu(k as u32)).sum();
        out.push(s / (n as f64 * scale));
        scale *= rho;
    }
    Ok(out)
}
