use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hyperseries::{check_pfq_convergence, prq_series, EvalResult, HyperSeries, ParamSet, SeriesControl, SeriesSpec, Weight};
use crate::matcore::{matrix_power_real_base, CMatrix};
use crate::matspecial::{gamma_matrix, gamma_matrix_inverse, pochhammer_matrix};

/// Which incomplete-gamma half weights the terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Half {
    Lower,
    Upper,
}

fn check_x(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::DomainError(format!("x must be positive and finite, got {x}")))
    }
}

fn weight(half: Half, x: f64) -> Weight {
    match half {
        Half::Lower => Weight::Lower { x },
        Half::Upper => Weight::Upper { x },
    }
}

fn shifted(ms: &[CMatrix], n: usize) -> Vec<CMatrix> {
    ms.iter().map(|m| m.shift(Complex64::new(n as f64, 0.0))).collect()
}

/// The lower half gains a factor `x^m / m!` from `P`, so it tolerates one extra numerator.
fn check_lower_convergence(p: usize, q: usize, x: f64, z: Complex64) -> Result<()> {
    if z == Complex64::new(0.0, 0.0) {
        return Ok(());
    }
    if p > q + 2 {
        return Err(Error::DivergentSeries(format!("lower series with {p} numerators and {q} denominators diverges")));
    }
    if p == q + 2 && x * z.norm() > 1.0 {
        return Err(Error::DivergentSeries(format!("lower series needs x |z| <= 1, got {}", x * z.norm())));
    }
    Ok(())
}

/// Series with weight `P(mI + A, x)` or `Q(mI + A, x)` and the given extra parameters.
pub(crate) fn incomplete_series(half: Half, x: f64, a: &CMatrix, e: &[CMatrix], f: &[CMatrix], max_terms: usize) -> Result<HyperSeries> {
    check_x(x)?;
    let spec = SeriesSpec::weighted(weight(half, x), CMatrix::identity(a.dim()), a.clone(), e.to_vec(), f.to_vec());
    HyperSeries::new(spec, max_terms)
}

/// Lower incomplete exponential `sum Gamma(A + mI)^{-1} gamma(A + mI, x) t^m / m!`.
pub fn e_lower(x: f64, t: Complex64, a: &CMatrix, ctrl: &SeriesControl) -> Result<EvalResult> {
    incomplete_series(Half::Lower, x, a, &[], &[], ctrl.max_terms)?.eval_scalar(t, ctrl)
}

/// Upper incomplete exponential `sum Gamma(A + mI)^{-1} Gamma(A + mI, x) t^m / m!`.
pub fn e_upper(x: f64, t: Complex64, a: &CMatrix, ctrl: &SeriesControl) -> Result<EvalResult> {
    incomplete_series(Half::Upper, x, a, &[], &[], ctrl.max_terms)?.eval_scalar(t, ctrl)
}

/// `pe_q` / `pE_q` with leading parameter pair `(A; A)` and the remaining `E_2..E_p`, `F_2..F_q`.
pub fn pe_q_half(half: Half, x: f64, t: Complex64, a: &CMatrix, e: &[CMatrix], f: &[CMatrix], ctrl: &SeriesControl) -> Result<EvalResult> {
    match half {
        Half::Upper => check_pfq_convergence(e.len(), f.len(), t)?,
        Half::Lower => check_lower_convergence(e.len(), f.len(), x, t)?,
    }
    incomplete_series(half, x, a, e, f, ctrl.max_terms)?.eval_scalar(t, ctrl)
}

/// Lower incomplete generalized exponential `pe_q`.
pub fn pe_q(x: f64, t: Complex64, a: &CMatrix, e: &[CMatrix], f: &[CMatrix], ctrl: &SeriesControl) -> Result<EvalResult> {
    pe_q_half(Half::Lower, x, t, a, e, f, ctrl)
}

/// Upper incomplete generalized exponential `pE_q`.
#[allow(non_snake_case)]
pub fn pE_q(x: f64, t: Complex64, a: &CMatrix, e: &[CMatrix], f: &[CMatrix], ctrl: &SeriesControl) -> Result<EvalResult> {
    pe_q_half(Half::Upper, x, t, a, e, f, ctrl)
}

/// Series of the generalized function with weight `P(mA + B, x)` or `Q(mA + B, x)`.
pub(crate) fn generalized_series(half: Half, x: f64, params: &ParamSet, max_terms: usize) -> Result<HyperSeries> {
    check_x(x)?;
    params.dim()?;
    let spec = SeriesSpec::weighted(weight(half, x), params.require_a()?.clone(), params.require_b()?.clone(), params.e.clone(), params.f.clone());
    HyperSeries::new(spec, max_terms)
}

pub fn gen_half(half: Half, x: f64, v: Complex64, params: &ParamSet, ctrl: &SeriesControl) -> Result<EvalResult> {
    if half == Half::Upper {
        check_pfq_convergence(params.e.len(), params.f.len(), v)?;
    }
    generalized_series(half, x, params, ctrl.max_terms)?.eval_scalar(v, ctrl)
}

/// `pe_q(x, A, B; v | E; F) = sum Gamma(mA+B)^{-1} gamma(mA+B, x) (E)_m (F)_m^{-1} v^m / m!`.
pub fn gen_pe_q(x: f64, v: Complex64, params: &ParamSet, ctrl: &SeriesControl) -> Result<EvalResult> {
    gen_half(Half::Lower, x, v, params, ctrl)
}

/// `pE_q(x, A, B; v | E; F) = sum Gamma(mA+B)^{-1} Gamma(mA+B, x) (E)_m (F)_m^{-1} v^m / m!`.
#[allow(non_snake_case)]
pub fn gen_pE_q(x: f64, v: Complex64, params: &ParamSet, ctrl: &SeriesControl) -> Result<EvalResult> {
    gen_half(Half::Upper, x, v, params, ctrl)
}

fn pochhammer_ratio(e: &[CMatrix], f: &[CMatrix], n: usize, dim: usize) -> Result<CMatrix> {
    let mut r = CMatrix::identity(dim);
    for ei in e {
        r = &r * &pochhammer_matrix(ei, n);
    }
    for fj in f {
        r = pochhammer_matrix(fj, n).solve_right(&r)?;
    }
    Ok(r)
}

/// Parameters with `B -> nA + B` and every `E_i`, `F_j` shifted by `n`.
pub fn shifted_params(params: &ParamSet, n: usize) -> Result<ParamSet> {
    let a = params.require_a()?;
    let b = params.require_b()?;
    Ok(ParamSet {
        a: Some(a.clone()),
        b: Some(a.scale_re(n as f64) + b),
        e: shifted(&params.e, n),
        f: shifted(&params.f, n),
    })
}

/// `d^n/dv^n pE_q(x, A, B; v) = pE_q(x, A, nA+B; v | E+nI; F+nI) prod (E_i)_n prod (F_j)_n^{-1}`.
#[allow(non_snake_case)]
pub fn gen_pE_q_derivative(x: f64, v: Complex64, params: &ParamSet, n: usize, ctrl: &SeriesControl) -> Result<EvalResult> {
    let sp = shifted_params(params, n)?;
    let mut r = gen_pE_q(x, v, &sp, ctrl)?;
    r.value = &r.value * &pochhammer_ratio(&params.e, &params.f, n, params.dim()?)?;
    Ok(r)
}

/// `d/dv pE_q = pE_q(x, A, A+B; v | E+I; F+I) E_1 ... E_p F_1^{-1} ... F_q^{-1}`.
#[allow(non_snake_case)]
pub fn gen_pE_q_first_derivative(x: f64, v: Complex64, params: &ParamSet, ctrl: &SeriesControl) -> Result<EvalResult> {
    let sp = shifted_params(params, 1)?;
    let mut r = gen_pE_q(x, v, &sp, ctrl)?;
    let mut tail = CMatrix::identity(params.dim()?);
    for e in &params.e {
        tail = &tail * e;
    }
    for f in &params.f {
        tail = f.solve_right(&tail)?;
    }
    r.value = &r.value * &tail;
    Ok(r)
}

/// `d/dx pE_q(x, A, B; v) = -e^{-x} x^{B-I} pR_q(E; F | A, B; v x^A)`.
#[allow(non_snake_case)]
pub fn gen_pE_q_dx(x: f64, v: Complex64, params: &ParamSet, ctrl: &SeriesControl) -> Result<CMatrix> {
    check_x(x)?;
    let a = params.require_a()?;
    let b = params.require_b()?;
    let r = prq_series(&params.e, &params.f, a, b, ctrl)?.eval_power(x, v, ctrl)?;
    let pre = matrix_power_real_base(x, &b.shift(Complex64::new(-1.0, 0.0)))?.scale_re(-(-x).exp());
    Ok(&pre * &r.value)
}

/// `d^n/dv^n pR_q(E; F | A, B; v) = pR_q(E+nI; F+nI | A, nA+B; v) prod (E_i)_n prod (F_j)_n^{-1}`.
pub fn prq_derivative(v: Complex64, params: &ParamSet, n: usize, ctrl: &SeriesControl) -> Result<EvalResult> {
    let sp = shifted_params(params, n)?;
    let mut r = prq_series(&sp.e, &sp.f, sp.require_a()?, sp.require_b()?, ctrl)?.eval_scalar(v, ctrl)?;
    r.value = &r.value * &pochhammer_ratio(&params.e, &params.f, n, params.dim()?)?;
    Ok(r)
}

/// `d/dx e((x, t); A) = x^{A-I} e^{-x} Gamma(A)^{-1} 0F1(-; A; t x)`; the upper half is its negative.
pub fn e_dx(half: Half, x: f64, t: Complex64, a: &CMatrix, ctrl: &SeriesControl) -> Result<CMatrix> {
    check_x(x)?;
    let f01 = crate::hyperseries::zero_f_one(a, t * x, ctrl)?.value;
    let pw = matrix_power_real_base(x, &a.shift(Complex64::new(-1.0, 0.0)))?;
    let v = &(&pw.scale_re((-x).exp()) * &gamma_matrix_inverse(a)?) * &f01;
    Ok(match half {
        Half::Lower => v,
        Half::Upper => -v,
    })
}

/// `prod Gamma(E_i + nI) prod Gamma(F_j + nI)^{-1} prod Gamma(E_i)^{-1} prod Gamma(F_j)`, the
/// gamma ratio in the addition and multiplication expansions.
pub fn gamma_shift_ratio(params: &ParamSet, n: usize) -> Result<CMatrix> {
    let mut r = CMatrix::identity(params.dim()?);
    for e in &params.e {
        r = &r * &gamma_matrix(&e.shift(Complex64::new(n as f64, 0.0)))?;
    }
    for f in &params.f {
        r = &r * &gamma_matrix_inverse(&f.shift(Complex64::new(n as f64, 0.0)))?;
    }
    for e in &params.e {
        r = &r * &gamma_matrix_inverse(e)?;
    }
    for f in &params.f {
        r = &r * &gamma_matrix(f)?;
    }
    Ok(r)
}

/// `sum_{n < terms} pE_q(x, A, nA+B; w | E+nI; F+nI) h^n / n! * ratio_n`, the common shape of the
/// addition (`h = v`) and multiplication (`h = w (v - 1)`) expansions.
fn shifted_expansion(x: f64, w: Complex64, h: Complex64, params: &ParamSet, terms: usize, ctrl: &SeriesControl) -> Result<CMatrix> {
    let mut sum = CMatrix::zeros(params.dim()?);
    let mut hn = Complex64::new(1.0, 0.0);
    for n in 0..terms {
        let inner = gen_pE_q(x, w, &shifted_params(params, n)?, ctrl)?.value;
        let term = &inner.scale(hn) * &gamma_shift_ratio(params, n)?;
        sum += &term;
        hn *= h / (n + 1) as f64;
    }
    Ok(sum)
}

/// Truncated right side of the addition formula for `pE_q(x, A, B; w + v)`.
#[allow(non_snake_case)]
pub fn gen_pE_q_addition(x: f64, w: Complex64, v: Complex64, params: &ParamSet, terms: usize, ctrl: &SeriesControl) -> Result<CMatrix> {
    shifted_expansion(x, w, v, params, terms, ctrl)
}

/// Truncated right side of the multiplication formula for `pE_q(x, A, B; w v)`.
#[allow(non_snake_case)]
pub fn gen_pE_q_multiplication(x: f64, w: Complex64, v: Complex64, params: &ParamSet, terms: usize, ctrl: &SeriesControl) -> Result<CMatrix> {
    shifted_expansion(x, w, w * (v - 1.0), params, terms, ctrl)
}

/// `Delta(k, M) = (M/k, (M+I)/k, ..., (M+(k-1)I)/k)`.
pub fn delta_params(k: usize, m: &CMatrix) -> Vec<CMatrix> {
    (0..k).map(|j| m.shift(Complex64::new(j as f64, 0.0)).scale_re(1.0 / k as f64)).collect()
}

/// Parameters `(Delta(k, num), E; Delta(k, den), F)` keeping `A`, `B`.
pub fn delta_augmented(params: &ParamSet, k: usize, num: &CMatrix, den: &CMatrix) -> ParamSet {
    let mut e = delta_params(k, num);
    e.extend(params.e.iter().cloned());
    let mut f = delta_params(k, den);
    f.extend(params.f.iter().cloned());
    ParamSet { a: params.a.clone(), b: params.b.clone(), e, f }
}

/// `B(A, B) t^{A+B-I} p+kE_q+k(x, A, B; lambda t^k | Delta(k, A), E; Delta(k, A+B), F)`.
pub fn fractional_one_sided_rhs(x: f64, lambda: Complex64, k: u32, t: f64, params: &ParamSet, ctrl: &SeriesControl) -> Result<CMatrix> {
    let a = params.require_a()?;
    let b = params.require_b()?;
    let aug = delta_augmented(params, k as usize, a, &(a + b));
    let series = gen_pE_q(x, lambda * t.powi(k as i32), &aug, ctrl)?.value;
    let pre = &crate::matspecial::beta_matrix(a, b)? * &matrix_power_real_base(t, &(a + b).shift(Complex64::new(-1.0, 0.0)))?;
    Ok(&pre * &series)
}

/// `B(B, C) (y-t)^{C+B-I} p+kE_q+k(x, A, B; lambda (y-t)^k | Delta(k, B), E; Delta(k, B+C), F)`.
#[allow(clippy::too_many_arguments)]
pub fn fractional_two_sided_rhs(
    x: f64,
    lambda: Complex64,
    k: u32,
    t: f64,
    y: f64,
    c: &CMatrix,
    params: &ParamSet,
    ctrl: &SeriesControl,
) -> Result<CMatrix> {
    let b = params.require_b()?;
    let aug = delta_augmented(params, k as usize, b, &(b + c));
    let h = y - t;
    let series = gen_pE_q(x, lambda * h.powi(k as i32), &aug, ctrl)?.value;
    let pre = &crate::matspecial::beta_matrix(b, c)? * &matrix_power_real_base(h, &(c + b).shift(Complex64::new(-1.0, 0.0)))?;
    Ok(&pre * &series)
}

/// Closed form of the exponential-kernel case `2e1(x; -t | C, C; C)` (and its upper half):
/// `Gamma(C)^{-1} (1+t)^{-C} gamma(C, (1+t) x)`, for real `t > -1`.
pub fn exponential_kernel_closed(half: Half, x: f64, t: f64, c: &CMatrix) -> Result<CMatrix> {
    check_x(x)?;
    if t <= -1.0 {
        return Err(Error::DomainError(format!("needs t > -1, got {t}")));
    }
    let s = 1.0 + t;
    let g = match half {
        Half::Lower => crate::matspecial::lower_incomplete_gamma_matrix(c, s * x)?,
        Half::Upper => crate::matspecial::upper_incomplete_gamma_matrix(c, s * x)?,
    };
    Ok(&(&gamma_matrix_inverse(c)? * &matrix_power_real_base(s, &(-c))?) * &g)
}
