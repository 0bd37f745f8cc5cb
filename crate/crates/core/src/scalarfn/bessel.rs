use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use super::gamma::{lgamma_c, rgamma_c};
use crate::error::{Error, Result};

const MAX_TERMS: usize = 500;
const STALL: usize = 5;

/// `J_nu(z)` by its ascending series; `nu` must not be a negative integer.
pub fn bessel_j_c(nu: Complex64, z: Complex64) -> Result<Complex64> {
    if z == Complex64::new(0.0, 0.0) {
        return Ok(if nu == Complex64::new(0.0, 0.0) { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) });
    }
    let half = z * 0.5;
    let lead = if nu.re >= -0.5 {
        (nu * half.ln() - lgamma_c(nu + 1.0)).exp()
    } else {
        (nu * half.ln()).exp() * rgamma_c(nu + 1.0)
    };
    let q = -half * half;
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut quiet = 0;
    for m in 1..MAX_TERMS {
        let denom = nu + m as f64;
        if denom.norm() < 1e-300 {
            return Err(Error::Pole(nu));
        }
        term *= q / (denom * m as f64);
        sum += term;
        if term.norm() < 1e-16 * sum.norm() {
            quiet += 1;
            if quiet >= STALL {
                let v = lead * sum;
                return if v.is_finite() { Ok(v) } else { Err(Error::Overflow("Bessel series".into())) };
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::ConvergenceFailure { what: "Bessel series", iterations: MAX_TERMS })
}

/// `I_nu(z) = e^{-i pi nu / 2} J_nu(i z)` for `-pi < arg z <= pi/2`, with the
/// mirrored rotation in the remaining sector.
pub fn bessel_i_c(nu: Complex64, z: Complex64) -> Result<Complex64> {
    let i = Complex64::i();
    if z.arg() <= FRAC_PI_2 {
        Ok((-i * FRAC_PI_2 * nu).exp() * bessel_j_c(nu, i * z)?)
    } else {
        Ok((i * FRAC_PI_2 * nu).exp() * bessel_j_c(nu, -i * z)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn modified_bessel_reference() {
        let i0 = bessel_i_c(c(0.0, 0.0), c(2.0, 0.0)).unwrap();
        assert!((i0 - 2.2795853023360673).norm() < 1e-14);
        // I_{1.5+0.5i}(1.7) from mpmath.besseli.
        let v = bessel_i_c(c(1.5, 0.5), c(1.7, 0.0)).unwrap();
        let want = c(REF_I.0, REF_I.1);
        assert!((v - want).norm() / want.norm() < 1e-13, "{v}");
    }

    #[test]
    fn ordinary_bessel_reference() {
        let j = bessel_j_c(c(0.0, 0.0), c(1.0, 0.0)).unwrap();
        assert!((j - 0.7651976865579666).norm() < 1e-15);
        let v = bessel_j_c(c(2.3, -0.7), c(3.1, 0.4)).unwrap();
        let want = c(REF_J.0, REF_J.1);
        assert!((v - want).norm() / want.norm() < 1e-13, "{v}");
    }

    #[test]
    fn three_term_recurrence() {
        // J_{nu-1} + J_{nu+1} = 2 nu / z J_nu
        let (nu, z) = (c(1.2, 0.3), c(2.5, -0.5));
        let lhs = bessel_j_c(nu - 1.0, z).unwrap() + bessel_j_c(nu + 1.0, z).unwrap();
        let rhs = nu * 2.0 / z * bessel_j_c(nu, z).unwrap();
        assert!((lhs - rhs).norm() < 1e-14);
    }
}

#[cfg(test)]
const REF_I: (f64, f64) = (0.7238387226088498, -0.38430335390790604);
#[cfg(test)]
const REF_J: (f64, f64) = (0.6013783072024798, 0.20106545549907312);
