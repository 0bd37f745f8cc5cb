use num_complex::Complex64;

use super::{c, complete, gen_params, matrices, qctrl, shape, Pairs, SER, STD, X_RANGE};
use crate::error::Result;
use crate::hyperseries::{incomplete_gauss_lower, incomplete_gauss_upper, pfq, prq, ParamSet};
use crate::incexp::{e_lower, e_upper, gamma_type_integral, gen_pE_q, gen_pe_q, pE_q, pe_q, Range};
use crate::matcore::{matrix_power_real_base, CMatrix, SpectralBox};
use crate::matspecial::{
    beta_matrix, gamma_limit_approximant, gamma_matrix, gamma_matrix_inverse, generalized_pochhammer_split,
    incomplete_pochhammer_lower, incomplete_pochhammer_upper, incomplete_split, lower_incomplete_gamma_matrix,
    pochhammer_matrix, upper_incomplete_gamma_matrix,
};
use crate::quad::{integrate_endpoint_singular, Endpoints, Node};
use crate::scalarfn::{gamma_c, lower_gamma_c, regularized_lower_c, regularized_upper_c, rgamma_c, upper_gamma_c};
use crate::verify::case::Case;

pub fn gamma_recurrence(case: &mut Case) -> Result<Pairs> {
    let e = case.matrix("E", STD);
    let g = gamma_matrix(&e)?;
    Ok(vec![
        (gamma_matrix(&e.shift(c(1.0)))?, &e * &g),
        (&g * &gamma_matrix_inverse(&e)?, CMatrix::identity(e.dim())),
    ])
}

/// Spread of `Re E` kept small: `n^E` and the product both carry a factor `n^{spread}` of
/// conditioning, which at `n = 4e4` would swamp the check.
const LIMIT_BOX: SpectralBox = SpectralBox::new((1.0, 1.5), (-0.5, 0.5));

/// Richardson-extrapolated limit formula; the approximant error is a series in `1/n`.
pub fn gamma_limit(case: &mut Case) -> Result<Pairs> {
    let e = case.matrix("E", LIMIT_BOX);
    let n = 20_000;
    let extrap = gamma_limit_approximant(&e, 2 * n)?.scale_re(2.0) - gamma_limit_approximant(&e, n)?;
    Ok(vec![(extrap, gamma_matrix(&e)?)])
}

pub fn beta_integral(case: &mut Case) -> Result<Pairs> {
    let e = case.matrix("E", STD);
    let f = case.matrix("F", STD);
    let (e1, f1) = (e.shift(c(-1.0)), f.shift(c(-1.0)));
    let int = integrate_endpoint_singular(
        |n: Node| Ok(&matrix_power_real_base(n.from_a, &e1)? * &matrix_power_real_base(n.to_b, &f1)?),
        0.0,
        1.0,
        Endpoints::BOTH,
        &qctrl(),
    )?;
    Ok(vec![(int, beta_matrix(&e, &f)?)])
}

pub fn pochhammer_gamma(case: &mut Case) -> Result<Pairs> {
    let e = case.matrix("E", STD);
    let n = case.index("n", 0, 8);
    let rhs = &gamma_matrix(&e.shift(c(n as f64)))? * &gamma_matrix_inverse(&e)?;
    Ok(vec![(pochhammer_matrix(&e, n), rhs)])
}

pub fn pochhammer_multiplication(case: &mut Case) -> Result<Pairs> {
    let e = case.matrix("E", STD);
    let k = case.index("k", 1, 3);
    let n = case.index("n", 0, 5);
    Ok(vec![(pochhammer_matrix(&e, k * n), generalized_pochhammer_split(&e, k, n)?)])
}

pub fn incomplete_gamma_integral(case: &mut Case) -> Result<Pairs> {
    let e = case.matrix("E", STD);
    let x = case.real("x", X_RANGE.0, X_RANGE.1);
    let id = CMatrix::identity(e.dim());
    let int = gamma_type_integral(Range::Lower, x, &e, |_| Ok(id.clone()), &qctrl())?;
    Ok(vec![(int, lower_incomplete_gamma_matrix(&e, x)?)])
}

pub fn incomplete_gamma_split(case: &mut Case) -> Result<Pairs> {
    let e = case.matrix("E", STD);
    let x = case.real("x", X_RANGE.0, X_RANGE.1);
    let (lo, up) = incomplete_split(&e, x)?;
    Ok(vec![(lo + up, gamma_matrix(&e)?)])
}

pub fn incomplete_pochhammer_split(case: &mut Case) -> Result<Pairs> {
    let e = case.matrix("E", STD);
    let x = case.real("x", X_RANGE.0, X_RANGE.1);
    let n = case.index("n", 0, 6);
    let sum = incomplete_pochhammer_lower(&e, x, n)? + incomplete_pochhammer_upper(&e, x, n)?;
    Ok(vec![(sum, pochhammer_matrix(&e, n))])
}

pub fn incomplete_gauss_split(case: &mut Case) -> Result<Pairs> {
    let e = case.matrix("E", STD);
    let f = case.matrix("F", STD);
    let g = case.matrix("G", STD);
    let x = case.real("x", X_RANGE.0, X_RANGE.1);
    let z = case.disk("z", super::ARG_RADIUS);
    let sum = incomplete_gauss_lower(&e, &f, &g, x, z, &SER)?.value + incomplete_gauss_upper(&e, &f, &g, x, z, &SER)?.value;
    let full = pfq(&[e, f], &[g], z, &SER)?.value;
    Ok(vec![(sum, full)])
}

pub fn exponential_split(case: &mut Case) -> Result<Pairs> {
    let a = case.matrix("A", STD);
    let x = case.real("x", X_RANGE.0, X_RANGE.1);
    let t = case.disk("t", super::ARG_RADIUS);
    let sum = e_lower(x, t, &a, &SER)?.value + e_upper(x, t, &a, &SER)?.value;
    Ok(vec![(sum, CMatrix::scalar(a.dim(), t.exp()))])
}

pub fn hypergeometric_exponential_split(case: &mut Case) -> Result<Pairs> {
    let (p, q) = shape(case, &[(1, 1), (2, 1), (1, 2), (2, 2), (3, 2)]);
    let a = case.matrix("A", STD);
    let e = matrices(case, "E", p - 1, STD);
    let f = matrices(case, "F", q - 1, STD);
    let x = case.real("x", X_RANGE.0, X_RANGE.1);
    let t = case.disk("t", super::ARG_RADIUS);
    let sum = pe_q(x, t, &a, &e, &f, &SER)?.value + pE_q(x, t, &a, &e, &f, &SER)?.value;
    Ok(vec![(sum, complete(&e, &f, t, a.dim())?)])
}

const GEN_SHAPES: [(usize, usize); 6] = [(0, 0), (0, 1), (1, 0), (1, 1), (2, 1), (1, 2)];

pub fn generalized_split(case: &mut Case) -> Result<Pairs> {
    let (p, q) = shape(case, &GEN_SHAPES);
    let params = gen_params(case, STD, p, q);
    let x = case.real("x", X_RANGE.0, X_RANGE.1);
    let v = case.disk("v", super::ARG_RADIUS);
    let sum = gen_pe_q(x, v, &params, &SER)?.value + gen_pE_q(x, v, &params, &SER)?.value;
    Ok(vec![(sum, complete(&params.e, &params.f, v, params.dim()?)?)])
}

/// At `x = 50` the lower part alone carries the complete function. Needs `p <= q` and a
/// narrow `A`, so the terms with `Re(mA + B) > 50` carry factorially small coefficients.
pub fn generalized_saturation(case: &mut Case) -> Result<Pairs> {
    let (p, q) = shape(case, &[(0, 0), (0, 1), (1, 1), (1, 2)]);
    let params = gen_params(case, super::NARROW, p, q);
    let v = case.disk("v", super::ARG_RADIUS);
    let lo = gen_pe_q(50.0, v, &params, &SER)?.value;
    Ok(vec![(lo, complete(&params.e, &params.f, v, params.dim()?)?)])
}

pub fn generalized_reduction(case: &mut Case) -> Result<Pairs> {
    let cm = case.matrix("C", STD);
    let x = case.real("x", X_RANGE.0, X_RANGE.1);
    let t = case.disk("t", super::ARG_RADIUS);
    let params = ParamSet { a: Some(CMatrix::identity(cm.dim())), b: Some(cm.clone()), e: vec![], f: vec![] };
    Ok(vec![
        (gen_pe_q(x, t, &params, &SER)?.value, e_lower(x, t, &cm, &SER)?.value),
        (gen_pE_q(x, t, &params, &SER)?.value, e_upper(x, t, &cm, &SER)?.value),
    ])
}

// Scalar collapse: direct summation with scalar kernels only.

fn s(z: Complex64) -> CMatrix {
    CMatrix::scalar(1, z)
}

fn entry(m: &CMatrix) -> Complex64 {
    m[(0, 0)]
}

/// `sum_m weight(m) prod (e)_m / prod (f)_m z^m / m!`, stopped once five consecutive terms are
/// below `1e-17` of the running sum.
fn direct_sum<W: FnMut(usize) -> Result<Complex64>>(mut weight: W, e: &[Complex64], f: &[Complex64], z: Complex64) -> Result<Complex64> {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut coef = Complex64::new(1.0, 0.0);
    let mut quiet = 0;
    for m in 0..100_000 {
        let term = weight(m)? * coef;
        sum += term;
        if term.norm() <= 1e-17 * (1.0 + sum.norm()) {
            quiet += 1;
            if quiet == 5 {
                break;
            }
        } else {
            quiet = 0;
        }
        let mf = m as f64;
        let mut ratio = z / (mf + 1.0);
        for ei in e {
            ratio *= ei + mf;
        }
        for fj in f {
            ratio /= fj + mf;
        }
        coef *= ratio;
    }
    Ok(sum)
}

fn scalars(ms: &[CMatrix]) -> Vec<Complex64> {
    ms.iter().map(entry).collect()
}

pub fn scalar_gamma_functions(case: &mut Case) -> Result<Pairs> {
    let e = case.matrix("E", STD);
    let f = case.matrix("F", STD);
    let x = case.real("x", X_RANGE.0, X_RANGE.1);
    let n = case.index("n", 0, 8);
    let (ez, fz) = (entry(&e), entry(&f));
    let poch = (0..n).fold(Complex64::new(1.0, 0.0), |acc, k| acc * (ez + k as f64));
    Ok(vec![
        (gamma_matrix(&e)?, s(gamma_c(ez))),
        (gamma_matrix_inverse(&e)?, s(rgamma_c(ez))),
        (lower_incomplete_gamma_matrix(&e, x)?, s(lower_gamma_c(ez, x)?)),
        (upper_incomplete_gamma_matrix(&e, x)?, s(upper_gamma_c(ez, x)?)),
        (beta_matrix(&e, &f)?, s(gamma_c(ez) * gamma_c(fz) * rgamma_c(ez + fz))),
        (pochhammer_matrix(&e, n), s(poch)),
    ])
}

pub fn scalar_exponentials(case: &mut Case) -> Result<Pairs> {
    let a = case.matrix("A", STD);
    let x = case.real("x", X_RANGE.0, X_RANGE.1);
    let t = case.disk("t", super::ARG_RADIUS);
    let az = entry(&a);
    let lo = direct_sum(|m| regularized_lower_c(az + m as f64, x), &[], &[], t)?;
    let up = direct_sum(|m| regularized_upper_c(az + m as f64, x), &[], &[], t)?;
    Ok(vec![(e_lower(x, t, &a, &SER)?.value, s(lo)), (e_upper(x, t, &a, &SER)?.value, s(up))])
}

pub fn scalar_hypergeometric_exponentials(case: &mut Case) -> Result<Pairs> {
    let (p, q) = shape(case, &[(1, 1), (2, 1), (1, 2), (2, 2), (3, 2)]);
    let a = case.matrix("A", STD);
    let e = matrices(case, "E", p - 1, STD);
    let f = matrices(case, "F", q - 1, STD);
    let x = case.real("x", X_RANGE.0, X_RANGE.1);
    let t = case.disk("t", super::ARG_RADIUS);
    let (az, ez, fz) = (entry(&a), scalars(&e), scalars(&f));
    let lo = direct_sum(|m| regularized_lower_c(az + m as f64, x), &ez, &fz, t)?;
    let up = direct_sum(|m| regularized_upper_c(az + m as f64, x), &ez, &fz, t)?;
    Ok(vec![
        (pe_q(x, t, &a, &e, &f, &SER)?.value, s(lo)),
        (pE_q(x, t, &a, &e, &f, &SER)?.value, s(up)),
    ])
}

pub fn scalar_generalized(case: &mut Case) -> Result<Pairs> {
    let (p, q) = shape(case, &GEN_SHAPES);
    let params = gen_params(case, STD, p, q);
    let x = case.real("x", X_RANGE.0, X_RANGE.1);
    let v = case.disk("v", super::ARG_RADIUS);
    let (az, bz) = (entry(params.require_a()?), entry(params.require_b()?));
    let (ez, fz) = (scalars(&params.e), scalars(&params.f));
    let lo = direct_sum(|m| regularized_lower_c(az * m as f64 + bz, x), &ez, &fz, v)?;
    let up = direct_sum(|m| regularized_upper_c(az * m as f64 + bz, x), &ez, &fz, v)?;
    Ok(vec![
        (gen_pe_q(x, v, &params, &SER)?.value, s(lo)),
        (gen_pE_q(x, v, &params, &SER)?.value, s(up)),
    ])
}

pub fn scalar_hypergeometric(case: &mut Case) -> Result<Pairs> {
    let (p, q) = shape(case, &GEN_SHAPES);
    let params = gen_params(case, STD, p, q);
    let v = case.disk("v", super::ARG_RADIUS);
    let (az, bz) = (entry(params.require_a()?), entry(params.require_b()?));
    let (ez, fz) = (scalars(&params.e), scalars(&params.f));
    let plain = direct_sum(|_| Ok(Complex64::new(1.0, 0.0)), &ez, &fz, v)?;
    let weighted = direct_sum(|m| Ok(rgamma_c(az * m as f64 + bz)), &ez, &fz, v)?;
    let (a, b) = (params.require_a()?, params.require_b()?);
    Ok(vec![
        (complete(&params.e, &params.f, v, params.dim()?)?, s(plain)),
        (prq(&params.e, &params.f, a, b, v, &SER)?.value, s(weighted)),
    ])
}

pub fn scalar_incomplete_gauss(case: &mut Case) -> Result<Pairs> {
    let e = case.matrix("E", STD);
    let f = case.matrix("F", STD);
    let g = case.matrix("G", STD);
    let x = case.real("x", X_RANGE.0, X_RANGE.1);
    let z = case.disk("z", super::ARG_RADIUS);
    let (ez, fz, gz) = (entry(&e), entry(&f), entry(&g));
    let lo = direct_sum(|m| regularized_lower_c(ez + m as f64, x), &[ez, fz], &[gz], z)?;
    let up = direct_sum(|m| regularized_upper_c(ez + m as f64, x), &[ez, fz], &[gz], z)?;
    Ok(vec![
        (incomplete_gauss_lower(&e, &f, &g, x, z, &SER)?.value, s(lo)),
        (incomplete_gauss_upper(&e, &f, &g, x, z, &SER)?.value, s(up)),
    ])
}

