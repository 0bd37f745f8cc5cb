use num_complex::Complex64;

use super::{c, central, central2, complete, matrices, qctrl, shape, Pairs, ARG_RADIUS, SER, STD, X_RANGE};
use crate::error::Result;
use crate::incexp::{
    e_bessel_form, e_dx, e_integral, e_lower, e_upper, exponential_kernel_closed, gamma_type_integral, pE_q, pe_q,
    pe_q_integral, Half, Range,
};
use crate::matcore::{matrix_exp, CMatrix};
use crate::matspecial::{gamma_matrix_inverse, incomplete_split};
use crate::quad::{integrate_endpoint_singular, Endpoints, Node};
use crate::scalarfn::{bessel_i_c, bessel_j_c};
use crate::verify::case::Case;

fn e_half(half: Half, x: f64, t: Complex64, a: &CMatrix) -> Result<CMatrix> {
    Ok(match half {
        Half::Lower => e_lower(x, t, a, &SER)?.value,
        Half::Upper => e_upper(x, t, a, &SER)?.value,
    })
}

pub fn dual_engine(case: &mut Case) -> Result<Pairs> {
    let a = case.matrix("A", STD);
    let x = case.real("x", X_RANGE.0, X_RANGE.1);
    let t = case.disk("t", ARG_RADIUS);
    Ok(vec![
        (e_integral(Range::Lower, x, t, &a, &qctrl())?, e_lower(x, t, &a, &SER)?.value),
        (e_integral(Range::Upper, x, t, &a, &qctrl())?, e_upper(x, t, &a, &SER)?.value),
    ])
}

/// At `t = 0` only the leading term survives.
pub fn zero_argument(case: &mut Case) -> Result<Pairs> {
    let a = case.matrix("A", STD);
    let x = case.real("x", X_RANGE.0, X_RANGE.1);
    let (lo, up) = incomplete_split(&a, x)?;
    let rg = gamma_matrix_inverse(&a)?;
    let z = Complex64::new(0.0, 0.0);
    Ok(vec![(e_lower(x, z, &a, &SER)?.value, &rg * &lo), (e_upper(x, z, &a, &SER)?.value, &rg * &up)])
}

fn bessel_pairs(case: &mut Case, modified: bool) -> Result<Pairs> {
    let a = case.matrix("A", STD);
    let x = case.real("x", X_RANGE.0, X_RANGE.1);
    let t = case.real("t", 0.05, ARG_RADIUS);
    let ap = a.shift(c(1.0));
    let arg = if modified { c(t) } else { c(-t) };
    let mut out = Vec::new();
    for half in [Half::Lower, Half::Upper] {
        out.push((e_bessel_form(half, x, t, &a, modified, &qctrl())?, e_half(half, x, arg, &ap)?));
    }
    Ok(out)
}

pub fn bessel_modified(case: &mut Case) -> Result<Pairs> {
    bessel_pairs(case, true)
}

pub fn bessel_oscillatory(case: &mut Case) -> Result<Pairs> {
    bessel_pairs(case, false)
}

/// `1 x 1` Bessel form integrated with the scalar Bessel kernels directly.
pub fn bessel_scalar_kernel(case: &mut Case) -> Result<Pairs> {
    let a = case.matrix("A", STD);
    let x = case.real("x", X_RANGE.0, X_RANGE.1);
    let t = case.real("t", 0.05, ARG_RADIUS);
    let nu = a[(0, 0)];
    let mut out = Vec::new();
    for modified in [true, false] {
        let int = integrate_endpoint_singular(
            |n: Node| {
                let v = n.at;
                let z = c(2.0 * (v * t).sqrt());
                let k = if modified { bessel_i_c(nu, z)? } else { bessel_j_c(nu, z)? };
                Ok(CMatrix::scalar(1, c(v).powc(nu * 0.5) * (-v).exp() * k))
            },
            0.0,
            x,
            Endpoints::LEFT,
            &qctrl(),
        )?;
        let lhs = int.scale(c(t).powc(-nu * 0.5));
        let arg = if modified { c(t) } else { c(-t) };
        out.push((lhs, e_lower(x, arg, &a.shift(c(1.0)), &SER)?.value));
    }
    Ok(out)
}

pub fn first_t(case: &mut Case) -> Result<Pairs> {
    let a = case.matrix("A", STD);
    let x = case.real("x", X_RANGE.0, X_RANGE.1);
    let t = case.disk("t", 0.85);
    let ap = a.shift(c(1.0));
    let mut out = Vec::new();
    for half in [Half::Lower, Half::Upper] {
        out.push((central(|t| e_half(half, x, t, &a), t, 1e-5)?, e_half(half, x, t, &ap)?));
    }
    Ok(out)
}

pub fn second_t(case: &mut Case) -> Result<Pairs> {
    let a = case.matrix("A", STD);
    let x = case.real("x", X_RANGE.0, X_RANGE.1);
    let t = case.disk("t", 0.85);
    let ap = a.shift(c(2.0));
    let mut out = Vec::new();
    for half in [Half::Lower, Half::Upper] {
        out.push((central2(|t| e_half(half, x, t, &a), t, 1e-3)?, e_half(half, x, t, &ap)?));
    }
    Ok(out)
}

pub fn x_derivative(case: &mut Case) -> Result<Pairs> {
    let a = case.matrix("A", STD);
    let x = case.real("x", X_RANGE.0, X_RANGE.1);
    let t = case.disk("t", ARG_RADIUS);
    let mut out = Vec::new();
    for half in [Half::Lower, Half::Upper] {
        let fd = central(|xz| e_half(half, xz.re, t, &a), c(x), 1e-5)?;
        out.push((fd, e_dx(half, x, t, &a, &SER)?));
    }
    Ok(out)
}

pub fn pe_q_dual_engine(case: &mut Case) -> Result<Pairs> {
    let (p, q) = shape(case, &[(1, 1), (2, 1), (1, 2), (2, 2)]);
    let a = case.matrix("A", STD);
    let e = matrices(case, "E", p - 1, STD);
    let f = matrices(case, "F", q - 1, STD);
    let x = case.real("x", X_RANGE.0, X_RANGE.1);
    let t = case.disk("t", ARG_RADIUS);
    let qc = qctrl();
    Ok(vec![
        (pe_q_integral(Range::Lower, x, t, &a, &e, &f, &qc)?, pe_q(x, t, &a, &e, &f, &SER)?.value),
        (pe_q_integral(Range::Upper, x, t, &a, &e, &f, &qc)?, pE_q(x, t, &a, &e, &f, &SER)?.value),
        (pe_q_integral(Range::Full, 0.0, t, &a, &e, &f, &qc)?, complete(&e, &f, t, a.dim())?),
    ])
}

/// `2e1 + 2E1` with parameters `(C, A; C)` against `(1 - t)^{-A}`.
pub fn confluent_sum(case: &mut Case) -> Result<Pairs> {
    let cm = case.matrix("C", STD);
    let a = case.matrix("A", STD);
    let x = case.real("x", X_RANGE.0, X_RANGE.1);
    let t = case.disk("t", ARG_RADIUS);
    let e = [a.clone()];
    let sum = pe_q(x, t, &cm, &e, &[], &SER)?.value + pE_q(x, t, &cm, &e, &[], &SER)?.value;
    let closed = matrix_exp(&a.scale(-(Complex64::new(1.0, 0.0) - t).ln()))?;
    Ok(vec![(sum, closed)])
}

pub fn confluent_integrals(case: &mut Case) -> Result<Pairs> {
    let cm = case.matrix("C", STD);
    let a = case.matrix("A", STD);
    let x = case.real("x", X_RANGE.0, X_RANGE.1);
    let t = case.disk("t", ARG_RADIUS);
    let e = [a];
    Ok(vec![
        (pe_q_integral(Range::Lower, x, t, &cm, &e, &[], &qctrl())?, pe_q(x, t, &cm, &e, &[], &SER)?.value),
        (pe_q_integral(Range::Upper, x, t, &cm, &e, &[], &qctrl())?, pE_q(x, t, &cm, &e, &[], &SER)?.value),
    ])
}

/// Parameters `(C, C; C)` at `-t`: the kernel collapses to `e^{-(1+t) v}`.
pub fn exponential_kernel(case: &mut Case) -> Result<Pairs> {
    let cm = case.matrix("C", STD);
    let x = case.real("x", X_RANGE.0, X_RANGE.1);
    let t = case.real("t", -ARG_RADIUS, ARG_RADIUS);
    let e = [cm.clone()];
    let rg = gamma_matrix_inverse(&cm)?;
    let id = CMatrix::identity(cm.dim());
    let mut out = Vec::new();
    for half in [Half::Lower, Half::Upper] {
        let series = match half {
            Half::Lower => pe_q(x, c(-t), &cm, &e, &[], &SER)?.value,
            Half::Upper => pE_q(x, c(-t), &cm, &e, &[], &SER)?.value,
        };
        let int = gamma_type_integral(half.into(), x, &cm, |v| Ok(id.scale_re((-t * v).exp())), &qctrl())?;
        out.push((series.clone(), &rg * &int));
        out.push((series, exponential_kernel_closed(half, x, t, &cm)?));
    }
    Ok(out)
}

/// Parameters `(C, A, B; C)`: the kernel is `2F1(A, B; C; vt)`; needs `x |t| < 1`.
pub fn gauss_kernel(case: &mut Case) -> Result<Pairs> {
    let cm = case.matrix("C", STD);
    let a = case.matrix("A", STD);
    let b = case.matrix("B", STD);
    let x = case.real("x", X_RANGE.0, 1.0);
    let t = case.disk("t", ARG_RADIUS);
    let e = [a, b];
    Ok(vec![(pe_q_integral(Range::Lower, x, t, &cm, &e, &[], &qctrl())?, pe_q(x, t, &cm, &e, &[], &SER)?.value)])
}
