use num_complex::Complex64;

use super::{c, central, central2, complete, gen_params, matrices, qctrl, shape, Pairs, ARG_RADIUS, SER, STD, X_RANGE};
use crate::error::Result;
use crate::hyperseries::{prq, ParamSet, SeriesControl};
use crate::incexp::{
    fractional_one_sided, fractional_one_sided_rhs, fractional_two_sided, fractional_two_sided_rhs, gen_integral,
    gen_pE_q, gen_pE_q_addition, gen_pE_q_derivative, gen_pE_q_dx, gen_pE_q_first_derivative, gen_pE_q_multiplication,
    gen_pe_q, gen_upper_beta, pe_q_integral, prq_beta, prq_derivative, prq_gamma_kernel, Range,
};
use crate::matcore::{CMatrix, SpectralBox};
use crate::matspecial::{gamma_matrix, gamma_matrix_inverse};
use crate::verify::case::Case;

/// Shapes with `p <= q`, whose integrands decay like `e^{-t}` at matrix argument.
const ENTIRE: [(usize, usize); 4] = [(0, 0), (0, 1), (1, 1), (1, 2)];
const SHAPES: [(usize, usize); 5] = [(0, 0), (0, 1), (1, 0), (1, 1), (2, 1)];

fn upper(x: f64, v: Complex64, p: &ParamSet) -> Result<CMatrix> {
    Ok(gen_pE_q(x, v, p, &SER)?.value)
}

fn prq_value(v: Complex64, p: &ParamSet) -> Result<CMatrix> {
    Ok(prq(&p.e, &p.f, p.require_a()?, p.require_b()?, v, &SER)?.value)
}

pub fn matrix_argument(case: &mut Case) -> Result<Pairs> {
    let (p, q) = shape(case, &ENTIRE);
    let params = gen_params(case, STD, p, q);
    let x = case.real("x", X_RANGE.0, X_RANGE.1);
    let v = case.disk("v", ARG_RADIUS);
    Ok(vec![(gen_integral(Range::Upper, x, v, &params, &qctrl())?, upper(x, v, &params)?)])
}

/// Split point `x = 1e-20`: the upper integral is the whole of `pFq`.
pub fn vanishing_split(case: &mut Case) -> Result<Pairs> {
    let (p, q) = shape(case, &ENTIRE);
    let params = gen_params(case, STD, p, q);
    let v = case.disk("v", ARG_RADIUS);
    Ok(vec![(gen_integral(Range::Upper, 1e-20, v, &params, &qctrl())?, complete(&params.e, &params.f, v, params.dim()?)?)])
}

/// `1E0(x, I, C; v | A)` against the integral of `t^{C-I} e^{-t} 1F1(A; C; vt)`.
pub fn confluent_upper(case: &mut Case) -> Result<Pairs> {
    let cm = case.matrix("C", STD);
    let a = case.matrix("A", STD);
    let x = case.real("x", X_RANGE.0, X_RANGE.1);
    let v = case.disk("v", ARG_RADIUS);
    let params = ParamSet { a: Some(CMatrix::identity(cm.dim())), b: Some(cm.clone()), e: vec![a.clone()], f: vec![] };
    let int = pe_q_integral(Range::Upper, x, v, &cm, &[a], &[], &qctrl())?;
    Ok(vec![(upper(x, v, &params)?, int)])
}

pub fn gamma_kernel(case: &mut Case) -> Result<Pairs> {
    let (p, q) = shape(case, &[(1, 0), (1, 1), (2, 1), (1, 2), (2, 2)]);
    let params = gen_params(case, STD, p, q);
    let v = case.disk("v", ARG_RADIUS);
    Ok(vec![(prq_gamma_kernel(v, &params, &qctrl())?, prq_value(v, &params)?)])
}

/// Parameters with `E_p` and `F_q - E_p` positive stable.
fn beta_params(case: &mut Case) -> ParamSet {
    let (p, q) = shape(case, &[(1, 1), (2, 1), (1, 2), (2, 2)]);
    let a = case.matrix("A", STD);
    let b = case.matrix("B", STD);
    let mut e = matrices(case, "E", p - 1, STD);
    let mut f = matrices(case, "F", q - 1, STD);
    let ep = case.eigs(STD);
    let gap = case.eigs(STD);
    let fq: Vec<Complex64> = ep.iter().zip(&gap).map(|(x, y)| x + y).collect();
    e.push(case.matrix_from("Ep", &ep));
    f.push(case.matrix_from("Fq", &fq));
    ParamSet { a: Some(a), b: Some(b), e, f }
}

pub fn euler_beta_generalized(case: &mut Case) -> Result<Pairs> {
    let params = beta_params(case);
    let x = case.real("x", X_RANGE.0, X_RANGE.1);
    let v = case.disk("v", ARG_RADIUS);
    Ok(vec![(gen_upper_beta(x, v, &params, &qctrl())?, upper(x, v, &params)?)])
}

pub fn euler_beta_prq(case: &mut Case) -> Result<Pairs> {
    let params = beta_params(case);
    let v = case.disk("v", ARG_RADIUS);
    Ok(vec![(prq_beta(v, &params, &qctrl())?, prq_value(v, &params)?)])
}

fn v_derivative(case: &mut Case, n: usize) -> Result<Pairs> {
    let (p, q) = shape(case, &SHAPES);
    let params = gen_params(case, STD, p, q);
    let x = case.real("x", X_RANGE.0, X_RANGE.1);
    let v = case.disk("v", 0.85);
    let f = |z: Complex64| upper(x, z, &params);
    let fd = if n == 1 { central(f, v, 1e-5)? } else { central2(f, v, 1e-3)? };
    Ok(vec![(fd, gen_pE_q_derivative(x, v, &params, n, &SER)?.value)])
}

pub fn first_v(case: &mut Case) -> Result<Pairs> {
    v_derivative(case, 1)
}

pub fn second_v(case: &mut Case) -> Result<Pairs> {
    v_derivative(case, 2)
}

fn prq_v_derivative(case: &mut Case, n: usize) -> Result<Pairs> {
    let (p, q) = shape(case, &SHAPES);
    let params = gen_params(case, STD, p, q);
    let v = case.disk("v", 0.85);
    let f = |z: Complex64| prq_value(z, &params);
    let fd = if n == 1 { central(f, v, 1e-5)? } else { central2(f, v, 1e-3)? };
    Ok(vec![(fd, prq_derivative(v, &params, n, &SER)?.value)])
}

pub fn prq_first_v(case: &mut Case) -> Result<Pairs> {
    prq_v_derivative(case, 1)
}

pub fn prq_second_v(case: &mut Case) -> Result<Pairs> {
    prq_v_derivative(case, 2)
}

pub fn parameter_shift(case: &mut Case) -> Result<Pairs> {
    let (p, q) = shape(case, &SHAPES);
    let params = gen_params(case, STD, p, q);
    let x = case.real("x", X_RANGE.0, X_RANGE.1);
    let v = case.disk("v", 0.85);
    let fd = central(|z| upper(x, z, &params), v, 1e-5)?;
    Ok(vec![(fd, gen_pE_q_first_derivative(x, v, &params, &SER)?.value)])
}

pub fn x_derivative(case: &mut Case) -> Result<Pairs> {
    let (p, q) = shape(case, &SHAPES);
    let params = gen_params(case, STD, p, q);
    let x = case.real("x", X_RANGE.0, X_RANGE.1);
    let v = case.disk("v", ARG_RADIUS);
    let fd = central(|xz| upper(xz.re, v, &params), c(x), 1e-5)?;
    Ok(vec![(fd, gen_pE_q_dx(x, v, &params, &SER)?)])
}

const OUTER_TERMS: usize = 30;
const SMALL: f64 = 0.3;

pub fn addition(case: &mut Case) -> Result<Pairs> {
    let (p, q) = shape(case, &SHAPES);
    let params = gen_params(case, STD, p, q);
    let x = case.real("x", X_RANGE.0, X_RANGE.1);
    let w = case.disk("w", SMALL);
    let v = case.disk("v", SMALL);
    Ok(vec![(upper(x, w + v, &params)?, gen_pE_q_addition(x, w, v, &params, OUTER_TERMS, &SER)?)])
}

pub fn addition_at_zero(case: &mut Case) -> Result<Pairs> {
    let (p, q) = shape(case, &SHAPES);
    let params = gen_params(case, STD, p, q);
    let x = case.real("x", X_RANGE.0, X_RANGE.1);
    let v = case.disk("v", SMALL);
    Ok(vec![(upper(x, v, &params)?, gen_pE_q_addition(x, c(0.0), v, &params, OUTER_TERMS, &SER)?)])
}

pub fn multiplication(case: &mut Case) -> Result<Pairs> {
    let (p, q) = shape(case, &ENTIRE);
    let params = gen_params(case, STD, p, q);
    let x = case.real("x", X_RANGE.0, X_RANGE.1);
    let w = case.disk("w", SMALL);
    let v = case.disk("v", SMALL);
    Ok(vec![(upper(x, w * v, &params)?, gen_pE_q_multiplication(x, w, v, &params, OUTER_TERMS, &SER)?)])
}

/// `v = 1` leaves only the `n = 0` term.
pub fn multiplication_at_one(case: &mut Case) -> Result<Pairs> {
    let (p, q) = shape(case, &SHAPES);
    let params = gen_params(case, STD, p, q);
    let x = case.real("x", X_RANGE.0, X_RANGE.1);
    let w = case.disk("w", SMALL);
    Ok(vec![(upper(x, w, &params)?, gen_pE_q_multiplication(x, w, c(1.0), &params, OUTER_TERMS, &SER)?)])
}

const FRACTIONAL_SHAPES: [(usize, usize); 4] = [(0, 0), (0, 1), (1, 0), (1, 1)];

fn one_sided(case: &mut Case, k: u32, zero_lambda: bool) -> Result<Pairs> {
    let (p, q) = shape(case, &FRACTIONAL_SHAPES);
    let params = gen_params(case, STD, p, q);
    let x = case.real("x", X_RANGE.0, X_RANGE.1);
    let t = case.real("t", 0.25, 1.0);
    let lambda = if zero_lambda { c(0.0) } else { case.disk("lambda", ARG_RADIUS) };
    Ok(vec![(
        fractional_one_sided(x, lambda, k, t, &params, &qctrl())?,
        fractional_one_sided_rhs(x, lambda, k, t, &params, &SER)?,
    )])
}

pub fn one_sided_k1(case: &mut Case) -> Result<Pairs> {
    one_sided(case, 1, false)
}

pub fn one_sided_k2(case: &mut Case) -> Result<Pairs> {
    one_sided(case, 2, false)
}

pub fn one_sided_zero_lambda(case: &mut Case) -> Result<Pairs> {
    one_sided(case, 1, true)
}

fn two_sided(case: &mut Case, k: u32) -> Result<Pairs> {
    let (p, q) = shape(case, &FRACTIONAL_SHAPES);
    let params = gen_params(case, STD, p, q);
    let cm = case.matrix("C", STD);
    let x = case.real("x", X_RANGE.0, X_RANGE.1);
    let t = case.real("t", 0.0, 1.0);
    let y = t + case.real("y_minus_t", 0.25, 1.0);
    let lambda = case.disk("lambda", ARG_RADIUS);
    Ok(vec![(
        fractional_two_sided(x, lambda, k, t, y, &cm, &params, &qctrl())?,
        fractional_two_sided_rhs(x, lambda, k, t, y, &cm, &params, &SER)?,
    )])
}

pub fn two_sided_k1(case: &mut Case) -> Result<Pairs> {
    two_sided(case, 1)
}

pub fn two_sided_k2(case: &mut Case) -> Result<Pairs> {
    two_sided(case, 2)
}

/// The series at `v = 1` decays only algebraically, like `m^{-Re(F1 - E1 - E2) - 1}`.
const GAUSS: SeriesControl = SeriesControl { tol: 1e-14, max_terms: 50_000, stall_window: 5 };
const GAUSS_NUM: SpectralBox = SpectralBox::new((0.5, 1.5), (-0.5, 0.5));
const GAUSS_GAP: SpectralBox = SpectralBox::new((3.5, 4.5), (-0.5, 0.5));

fn gauss_pairs(case: &mut Case, zero_numerator: bool) -> Result<Pairs> {
    let a = case.matrix("A", STD);
    let b = case.matrix("B", STD);
    let e1 = case.eigs(GAUSS_NUM);
    let e2 = if zero_numerator { vec![c(0.0); case.dim()] } else { case.eigs(GAUSS_NUM) };
    let gap = case.eigs(GAUSS_GAP);
    let f1: Vec<Complex64> = (0..case.dim()).map(|i| e1[i] + e2[i] + gap[i]).collect();
    let (e1m, e2m, f1m) = (case.matrix_from("E1", &e1), case.matrix_from("E2", &e2), case.matrix_from("F1", &f1));
    let x = case.real("x", X_RANGE.0, X_RANGE.1);
    let gauss = &(&(&gamma_matrix(&(&(&f1m - &e1m) - &e2m))? * &gamma_matrix(&f1m)?) * &gamma_matrix_inverse(&(&f1m - &e1m))?)
        * &gamma_matrix_inverse(&(&f1m - &e2m))?;
    let params = ParamSet { a: Some(a), b: Some(b), e: vec![e1m, e2m], f: vec![f1m] };
    let one = c(1.0);
    let lhs = gen_pE_q(x, one, &params, &GAUSS)?.value;
    let lower = gen_pe_q(x, one, &params, &GAUSS)?.value;
    Ok(vec![(lhs, gauss - lower)])
}

pub fn gauss_value(case: &mut Case) -> Result<Pairs> {
    gauss_pairs(case, false)
}

pub fn gauss_zero_numerator(case: &mut Case) -> Result<Pairs> {
    gauss_pairs(case, true)
}

const RECURRENCE_F: SpectralBox = SpectralBox::new((1.5, 3.5), (-0.5, 0.5));
const RECURRENCE_GAP: SpectralBox = SpectralBox::new((0.5, 1.5), (-0.5, 0.5));

/// `F1 - I` and `E1 - F1 + I` positive stable by construction (hence `E1` too).
fn recurrence_pairs(case: &mut Case, degenerate: bool) -> Result<Pairs> {
    let a = case.matrix("A", STD);
    let b = case.matrix("B", STD);
    let f1 = case.eigs(RECURRENCE_F);
    let gap = if degenerate { vec![c(0.0); case.dim()] } else { case.eigs(RECURRENCE_GAP) };
    let e1: Vec<Complex64> = (0..case.dim()).map(|i| f1[i] - 1.0 + gap[i]).collect();
    let (e1m, f1m) = (case.matrix_from("E1", &e1), case.matrix_from("F1", &f1));
    let e2m = case.matrix("E2", STD);
    let x = case.real("x", X_RANGE.0, X_RANGE.1);
    let v = case.disk("v", ARG_RADIUS);
    let f = |e1: &CMatrix, f1: &CMatrix| -> Result<CMatrix> {
        let p = ParamSet { a: Some(a.clone()), b: Some(b.clone()), e: vec![e1.clone(), e2m.clone()], f: vec![f1.clone()] };
        upper(x, v, &p)
    };
    let id = CMatrix::identity(case.dim());
    let f1_minus = f1m.shift(c(-1.0));
    let lhs = &f(&e1m, &f1m)? * &(&(&e1m - &f1m) + &id);
    let rhs = &f(&e1m.shift(c(1.0)), &f1m)? * &e1m - &f(&e1m, &f1_minus)? * &f1_minus;
    Ok(vec![(lhs, rhs)])
}

pub fn recurrence(case: &mut Case) -> Result<Pairs> {
    recurrence_pairs(case, false)
}

pub fn recurrence_degenerate(case: &mut Case) -> Result<Pairs> {
    recurrence_pairs(case, true)
}
