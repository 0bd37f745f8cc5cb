use num_complex::Complex64;

use super::bessel::{bessel_i_c, bessel_j_c};
use super::gamma::{gamma_c, lgamma_c, nearest_pole_distance, rgamma_c};
use super::incgamma::{
    lower_gamma_c, lower_log_hint, regularized_lower_scaled, regularized_upper_scaled, upper_gamma_c,
    upper_log_hint,
};
use super::ScalarFn;
use crate::error::{Error, Result};

const POLE_TOL: f64 = 1e-10;

/// `z -> Gamma(z)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct GammaFn;

impl ScalarFn for GammaFn {
    fn eval(&self, z: Complex64) -> Result<Complex64> {
        if self.is_singular(z) {
            return Err(Error::Pole(z));
        }
        Ok(gamma_c(z))
    }
    fn is_singular(&self, z: Complex64) -> bool {
        nearest_pole_distance(z) < POLE_TOL
    }
    fn analytic_radius(&self, z: Complex64) -> f64 {
        nearest_pole_distance(z)
    }
}

/// `z -> e^{-shift} / Gamma(z)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct RecipGamma {
    pub shift: f64,
}

impl RecipGamma {
    /// Shift that brings `1/Gamma` near unit size at `center`.
    pub fn scaled_at(center: Complex64) -> Self {
        RecipGamma { shift: if center.re >= 0.5 { -lgamma_c(center).re } else { 0.0 } }
    }
}

impl ScalarFn for RecipGamma {
    fn eval(&self, z: Complex64) -> Result<Complex64> {
        if z.re >= 0.5 {
            Ok((-lgamma_c(z) - self.shift).exp())
        } else {
            Ok(rgamma_c(z) * (-self.shift).exp())
        }
    }
}

/// `z -> P(z, x) e^{-shift}`, the regularized lower incomplete gamma in its first argument.
#[derive(Clone, Copy, Debug)]
pub struct RegularizedLower {
    pub x: f64,
    pub shift: f64,
}

impl RegularizedLower {
    pub fn new(x: f64) -> Self {
        RegularizedLower { x, shift: 0.0 }
    }
    pub fn scaled_at(x: f64, center: Complex64) -> Self {
        RegularizedLower { x, shift: lower_log_hint(center, x) }
    }
}

impl ScalarFn for RegularizedLower {
    fn eval(&self, z: Complex64) -> Result<Complex64> {
        regularized_lower_scaled(z, self.x, self.shift)
    }
}

/// `z -> Q(z, x) e^{-shift}`.
#[derive(Clone, Copy, Debug)]
pub struct RegularizedUpper {
    pub x: f64,
    pub shift: f64,
}

impl RegularizedUpper {
    pub fn new(x: f64) -> Self {
        RegularizedUpper { x, shift: 0.0 }
    }
    pub fn scaled_at(x: f64, center: Complex64) -> Self {
        RegularizedUpper { x, shift: upper_log_hint(center, x) }
    }
}

impl ScalarFn for RegularizedUpper {
    fn eval(&self, z: Complex64) -> Result<Complex64> {
        regularized_upper_scaled(z, self.x, self.shift)
    }
}

/// `z -> gamma(z, x)`.
#[derive(Clone, Copy, Debug)]
pub struct LowerGamma {
    pub x: f64,
}

impl ScalarFn for LowerGamma {
    fn eval(&self, z: Complex64) -> Result<Complex64> {
        lower_gamma_c(z, self.x)
    }
    fn is_singular(&self, z: Complex64) -> bool {
        nearest_pole_distance(z) < POLE_TOL
    }
    fn analytic_radius(&self, z: Complex64) -> f64 {
        nearest_pole_distance(z)
    }
}

/// `z -> Gamma(z, x)`.
#[derive(Clone, Copy, Debug)]
pub struct UpperGamma {
    pub x: f64,
}

impl ScalarFn for UpperGamma {
    fn eval(&self, z: Complex64) -> Result<Complex64> {
        upper_gamma_c(z, self.x)
    }
}

/// `z -> exp(scale * z)`.
#[derive(Clone, Copy, Debug)]
pub struct Exp {
    pub scale: Complex64,
}

impl ScalarFn for Exp {
    fn eval(&self, z: Complex64) -> Result<Complex64> {
        Ok((self.scale * z).exp())
    }
    fn max_derivative_order(&self) -> usize {
        usize::MAX
    }
    fn taylor_coefficients(&self, z: Complex64, count: usize, _spread: f64) -> Result<Vec<Complex64>> {
        let mut c = self.eval(z)?;
        let mut out = Vec::with_capacity(count);
        for k in 0..count {
            out.push(c);
            c *= self.scale / (k + 1) as f64;
        }
        Ok(out)
    }
}

/// `z -> t^z = exp(z ln t)` for real `t > 0`.
#[derive(Clone, Copy, Debug)]
pub struct RealPower {
    exp: Exp,
}

impl RealPower {
    pub fn new(t: f64) -> Result<Self> {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::DomainError(format!("real power needs a positive base, got {t}")));
        }
        Ok(RealPower { exp: Exp { scale: Complex64::new(t.ln(), 0.0) } })
    }
}

impl ScalarFn for RealPower {
    fn eval(&self, z: Complex64) -> Result<Complex64> {
        self.exp.eval(z)
    }
    fn max_derivative_order(&self) -> usize {
        usize::MAX
    }
    fn taylor_coefficients(&self, z: Complex64, count: usize, spread: f64) -> Result<Vec<Complex64>> {
        self.exp.taylor_coefficients(z, count, spread)
    }
}

/// `nu -> J_nu(z)` or `nu -> I_nu(z)` at a fixed argument.
#[derive(Clone, Copy, Debug)]
pub struct BesselOrder {
    pub z: Complex64,
    pub modified: bool,
}

impl ScalarFn for BesselOrder {
    fn eval(&self, nu: Complex64) -> Result<Complex64> {
        if self.modified {
            bessel_i_c(nu, self.z)
        } else {
            bessel_j_c(nu, self.z)
        }
    }
    fn is_singular(&self, nu: Complex64) -> bool {
        self.analytic_radius(nu) < POLE_TOL
    }
    fn analytic_radius(&self, nu: Complex64) -> f64 {
        // The series is only evaluated away from the negative integers.
        let k = (-nu.re).round().max(1.0);
        (nu + k).norm()
    }
}

/// A closure known only pointwise; clusters of close eigenvalues cannot be handled.
pub struct Pointwise<F>(pub F);

impl<F: Fn(Complex64) -> Complex64> ScalarFn for Pointwise<F> {
    fn eval(&self, z: Complex64) -> Result<Complex64> {
        Ok((self.0)(z))
    }
    fn max_derivative_order(&self) -> usize {
        0
    }
}

/// A closure analytic on discs of the given radius; derivatives come from Cauchy sums.
pub struct Analytic<F> {
    pub f: F,
    pub radius: f64,
}

impl<F: Fn(Complex64) -> Complex64> Analytic<F> {
    pub fn entire(f: F) -> Self {
        Analytic { f, radius: f64::INFINITY }
    }
}

impl<F: Fn(Complex64) -> Complex64> ScalarFn for Analytic<F> {
    fn eval(&self, z: Complex64) -> Result<Complex64> {
        Ok((self.f)(z))
    }
    fn analytic_radius(&self, _z: Complex64) -> f64 {
        self.radius
    }
}

/// `z -> f(scale * z + offset)`, letting one Schur form serve a family of shifted arguments.
pub struct Affine<F> {
    pub inner: F,
    pub scale: Complex64,
    pub offset: Complex64,
}

impl<F: ScalarFn> ScalarFn for Affine<F> {
    fn eval(&self, z: Complex64) -> Result<Complex64> {
        self.inner.eval(self.scale * z + self.offset)
    }
    fn is_singular(&self, z: Complex64) -> bool {
        self.inner.is_singular(self.scale * z + self.offset)
    }
    fn analytic_radius(&self, z: Complex64) -> f64 {
        let s = self.scale.norm();
        if s == 0.0 {
            f64::INFINITY
        } else {
            self.inner.analytic_radius(self.scale * z + self.offset) / s
        }
    }
    fn max_derivative_order(&self) -> usize {
        self.inner.max_derivative_order()
    }
    fn taylor_coefficients(&self, z: Complex64, count: usize, spread: f64) -> Result<Vec<Complex64>> {
        let w = self.scale * z + self.offset;
        if self.scale.norm() == 0.0 {
            let mut out = vec![Complex64::new(0.0, 0.0); count.max(1)];
            out[0] = self.inner.eval(w)?;
            return Ok(out);
        }
        let mut c = self.inner.taylor_coefficients(w, count, spread * self.scale.norm())?;
        let mut p = Complex64::new(1.0, 0.0);
        for ck in c.iter_mut() {
            *ck *= p;
            p *= self.scale;
        }
        Ok(c)
    }
}
