use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hyperseries::{prq_series, HyperSeries, ParamSet, SeriesControl, SeriesSpec};
use crate::matcore::{matrix_power_real_base, CMatrix, SpectralData};
use crate::matspecial::{beta_matrix, gamma_matrix_inverse};
use crate::quad::{integrate_endpoint_singular, integrate_semi_infinite, Endpoints, Node, QuadratureControl};
use crate::scalarfn::BesselOrder;

use super::series::{generalized_series, Half};

/// Integration range for kernels of the form `v^{M-I} e^{-v} K(v)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Range {
    /// `[0, x]`
    Lower,
    /// `[x, inf)`
    Upper,
    /// `[0, inf)`
    Full,
}

impl From<Half> for Range {
    fn from(h: Half) -> Self {
        match h {
            Half::Lower => Range::Lower,
            Half::Upper => Range::Upper,
        }
    }
}

/// Inner series are summed far past the outer tolerance so quadrature sees a smooth integrand.
pub(crate) const INNER: SeriesControl = SeriesControl { tol: 1e-15, max_terms: 20_000, stall_window: 5 };

const MINUS_ONE: Complex64 = Complex64::new(-1.0, 0.0);

/// `int v^{M-I} e^{-v} K(v) dv` over the range. The left end at zero is always treated as
/// singular; a positive split point below one keeps the `u^2` substitution so vanishing `x` works.
pub fn gamma_type_integral<K: FnMut(f64) -> Result<CMatrix>>(
    range: Range,
    x: f64,
    m: &CMatrix,
    mut kernel: K,
    qctrl: &QuadratureControl,
) -> Result<CMatrix> {
    if range != Range::Full && !(x > 0.0 && x.is_finite()) {
        return Err(Error::DomainError(format!("x must be positive and finite, got {x}")));
    }
    let m1 = m.shift(MINUS_ONE);
    let mut integrand = |v: f64| -> Result<CMatrix> {
        let w = matrix_power_real_base(v, &m1)?.scale_re((-v).exp());
        Ok(&w * &kernel(v)?)
    };
    match range {
        Range::Lower => integrate_endpoint_singular(|n: Node| integrand(n.at), 0.0, x, Endpoints::LEFT, qctrl),
        Range::Upper if x >= 1.0 => integrate_semi_infinite(integrand, x, qctrl),
        Range::Upper => {
            let head = integrate_endpoint_singular(|n: Node| integrand(n.at), x, 1.0, Endpoints::LEFT, qctrl)?;
            Ok(head + integrate_semi_infinite(integrand, 1.0, qctrl)?)
        }
        Range::Full => {
            let head = integrate_endpoint_singular(|n: Node| integrand(n.at), 0.0, 1.0, Endpoints::LEFT, qctrl)?;
            Ok(head + integrate_semi_infinite(integrand, 1.0, qctrl)?)
        }
    }
}

/// `Gamma(A)^{-1} int v^{A-I} e^{-v} 0F1(-; A; v t) dv`, the integral form of the incomplete exponentials.
pub fn e_integral(range: Range, x: f64, t: Complex64, a: &CMatrix, qctrl: &QuadratureControl) -> Result<CMatrix> {
    pe_q_integral(range, x, t, a, &[], &[], qctrl)
}

/// `Gamma(A)^{-1} int v^{A-I} e^{-v} (p-1)Fq(E_2..E_p; A, F_2..F_q; v t) dv`.
pub fn pe_q_integral(
    range: Range,
    x: f64,
    t: Complex64,
    a: &CMatrix,
    e: &[CMatrix],
    f: &[CMatrix],
    qctrl: &QuadratureControl,
) -> Result<CMatrix> {
    let mut den = vec![a.clone()];
    den.extend(f.iter().cloned());
    let mut inner = HyperSeries::new(SeriesSpec::plain(e.to_vec(), den), INNER.max_terms)?;
    let integral = gamma_type_integral(range, x, a, |v| Ok(inner.eval_scalar(t * v, &INNER)?.value), qctrl)?;
    Ok(&gamma_matrix_inverse(a)? * &integral)
}

/// `t^{-A/2} int v^{A/2} e^{-v} I_A(2 sqrt(v t)) dv` (or `J_A` when `modified` is false) over the
/// half given. With `I_A` this is `e((x, t); A + I)`; with `J_A` it is `e((x, -t); A + I)`.
pub fn e_bessel_form(half: Half, x: f64, t: f64, a: &CMatrix, modified: bool, qctrl: &QuadratureControl) -> Result<CMatrix> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::DomainError(format!("Bessel form needs t > 0, got {t}")));
    }
    let spectral = SpectralData::new(a)?;
    let half_a = a.scale_re(0.5);
    let m = half_a.shift(Complex64::new(1.0, 0.0));
    let integral = gamma_type_integral(
        half.into(),
        x,
        &m,
        |v| {
            let z = Complex64::new(2.0 * (v * t).sqrt(), 0.0);
            spectral.apply(&BesselOrder { z, modified })
        },
        qctrl,
    )?;
    Ok(&matrix_power_real_base(t, &(-half_a))? * &integral)
}

/// `int t^{B-I} e^{-t} pRq(E; F | A, B; v t^A) dt` over the range; over `[x, inf)` this is the
/// upper generalized function and over `[0, x]` the lower one.
pub fn gen_integral(range: Range, x: f64, v: Complex64, params: &ParamSet, qctrl: &QuadratureControl) -> Result<CMatrix> {
    let a = params.require_a()?;
    let b = params.require_b()?;
    let mut inner = prq_series(&params.e, &params.f, a, b, &INNER)?;
    gamma_type_integral(
        range,
        x,
        b,
        |t| {
            Ok(inner.eval_power(t, v, &INNER)?.value)
        },
        qctrl,
    )
}

/// `Gamma(E_1)^{-1} int_0^inf t^{E_1-I} e^{-t} (p-1)Rq(E_2..E_p; F | A, B; v t) dt`.
pub fn prq_gamma_kernel(v: Complex64, params: &ParamSet, qctrl: &QuadratureControl) -> Result<CMatrix> {
    let (e1, rest) = params
        .e
        .split_first()
        .ok_or_else(|| Error::ShapeError("gamma kernel needs at least one numerator".into()))?;
    let mut inner = prq_series(rest, &params.f, params.require_a()?, params.require_b()?, &INNER)?;
    let integral = gamma_type_integral(Range::Full, 0.0, e1, |t| Ok(inner.eval_scalar(v * t, &INNER)?.value), qctrl)?;
    Ok(&gamma_matrix_inverse(e1)? * &integral)
}

fn split_last(params: &ParamSet) -> Result<(ParamSet, CMatrix, CMatrix)> {
    let (ep, e) = params
        .e
        .split_last()
        .ok_or_else(|| Error::ShapeError("beta kernel needs at least one numerator".into()))?;
    let (fq, f) = params
        .f
        .split_last()
        .ok_or_else(|| Error::ShapeError("beta kernel needs at least one denominator".into()))?;
    let reduced = ParamSet { a: params.a.clone(), b: params.b.clone(), e: e.to_vec(), f: f.to_vec() };
    Ok((reduced, ep.clone(), fq.clone()))
}

/// `int_0^1 K(t) t^{E_p-I} (1-t)^{F_q-E_p-I} dt B(E_p, F_q - E_p)^{-1}`.
fn beta_integral<K: FnMut(f64) -> Result<CMatrix>>(mut kernel: K, ep: &CMatrix, fq: &CMatrix, qctrl: &QuadratureControl) -> Result<CMatrix> {
    let p1 = ep.shift(MINUS_ONE);
    let diff = fq - ep;
    let p2 = diff.shift(MINUS_ONE);
    let integral = integrate_endpoint_singular(
        |n: Node| {
            let w = &matrix_power_real_base(n.from_a, &p1)? * &matrix_power_real_base(n.to_b, &p2)?;
            Ok(&kernel(n.at)? * &w)
        },
        0.0,
        1.0,
        Endpoints::BOTH,
        qctrl,
    )?;
    let beta = beta_matrix(ep, &diff)?;
    beta.solve_right(&integral)
}

/// Beta-kernel form of the upper generalized function: the inner function drops `E_p` and `F_q`.
pub fn gen_upper_beta(x: f64, v: Complex64, params: &ParamSet, qctrl: &QuadratureControl) -> Result<CMatrix> {
    let (reduced, ep, fq) = split_last(params)?;
    let mut inner = generalized_series(Half::Upper, x, &reduced, INNER.max_terms)?;
    beta_integral(|t| Ok(inner.eval_scalar(v * t, &INNER)?.value), &ep, &fq, qctrl)
}

/// Beta-kernel form of `pRq`, with the same parameter split as [`gen_upper_beta`].
pub fn prq_beta(v: Complex64, params: &ParamSet, qctrl: &QuadratureControl) -> Result<CMatrix> {
    let (reduced, ep, fq) = split_last(params)?;
    let mut inner = prq_series(&reduced.e, &reduced.f, reduced.require_a()?, reduced.require_b()?, &INNER)?;
    beta_integral(|t| Ok(inner.eval_scalar(v * t, &INNER)?.value), &ep, &fq, qctrl)
}

/// `int_0^t v^{A-I} (t-v)^{B-I} pE_q(x, A, B; lambda v^k) dv`.
pub fn fractional_one_sided(x: f64, lambda: Complex64, k: u32, t: f64, params: &ParamSet, qctrl: &QuadratureControl) -> Result<CMatrix> {
    let a1 = params.require_a()?.shift(MINUS_ONE);
    let b1 = params.require_b()?.shift(MINUS_ONE);
    let mut inner = generalized_series(Half::Upper, x, params, INNER.max_terms)?;
    integrate_endpoint_singular(
        |n: Node| {
            let w = &matrix_power_real_base(n.from_a, &a1)? * &matrix_power_real_base(n.to_b, &b1)?;
            Ok(&w * &inner.eval_scalar(lambda * n.from_a.powi(k as i32), &INNER)?.value)
        },
        0.0,
        t,
        Endpoints::BOTH,
        qctrl,
    )
}

/// `int_t^y (y-v)^{C-I} (v-t)^{B-I} pE_q(x, A, B; lambda (v-t)^k) dv`.
#[allow(clippy::too_many_arguments)]
pub fn fractional_two_sided(
    x: f64,
    lambda: Complex64,
    k: u32,
    t: f64,
    y: f64,
    c: &CMatrix,
    params: &ParamSet,
    qctrl: &QuadratureControl,
) -> Result<CMatrix> {
    let b1 = params.require_b()?.shift(MINUS_ONE);
    let c1 = c.shift(MINUS_ONE);
    let mut inner = generalized_series(Half::Upper, x, params, INNER.max_terms)?;
    integrate_endpoint_singular(
        |n: Node| {
            let w = &matrix_power_real_base(n.to_b, &c1)? * &matrix_power_real_base(n.from_a, &b1)?;
            Ok(&w * &inner.eval_scalar(lambda * n.from_a.powi(k as i32), &INNER)?.value)
        },
        t,
        y,
        Endpoints::BOTH,
        qctrl,
    )
}
