use num_complex::Complex64;

use super::*;
use crate::hyperseries::{pfq, prq, ParamSet, SeriesControl};
use crate::matcore::{matrix_exp, relative_residual, CMatrix};
use crate::quad::QuadratureControl;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn s(v: f64) -> CMatrix {
    CMatrix::scalar(1, c(v, 0.0))
}

fn ctrl() -> SeriesControl {
    SeriesControl::default().with_tol(1e-15).with_max_terms(5000)
}

fn q() -> QuadratureControl {
    QuadratureControl::default()
}

/// Non-normal, with distinct eigenvalues in the right half plane.
fn a3() -> CMatrix {
    CMatrix::from_rows(vec![
        vec![c(1.3, 0.1), c(0.2, -0.1), c(0.0, 0.0)],
        vec![c(0.1, 0.0), c(0.8, 0.0), c(0.3, 0.2)],
        vec![c(0.0, 0.0), c(-0.2, 0.0), c(2.2, -0.3)],
    ])
    .unwrap()
}

/// A polynomial in `a3`, so it commutes with it.
fn b3() -> CMatrix {
    let a = a3();
    (&a * &a).scale_re(0.2) + a.scale_re(0.3) + CMatrix::identity(3).scale_re(0.6)
}

fn close(got: Complex64, want: Complex64, tol: f64) {
    assert!((got - want).norm() <= tol * want.norm().max(1.0), "got {got}, want {want}");
}

// Reference values below were computed with mpmath at 40 digits.

#[test]
fn scalar_exponentials_match_reference() {
    let t = c(0.7, 0.2);
    let lo = e_lower(1.5, t, &s(1.3), &ctrl()).unwrap().value[(0, 0)];
    let up = e_upper(1.5, t, &s(1.3), &ctrl()).unwrap().value[(0, 0)];
    close(lo, c(0.9582623835720042655949562446757686674131, 0.09280277521196937514805517863760287659408), 1e-13);
    close(up, c(1.015349341057120507738066567394008457, 0.3072681275679328695647592951430586880666), 1e-13);
}

#[test]
fn scalar_pe_q_matches_reference() {
    let (x, t) = (0.8, c(0.5, -0.3));
    let e = [s(0.7)];
    let f = [s(2.1)];
    let up = pE_q(x, t, &s(1.2), &e, &f, &ctrl()).unwrap().value[(0, 0)];
    let lo = pe_q(x, t, &s(1.2), &e, &f, &ctrl()).unwrap().value[(0, 0)];
    close(up, c(0.6954283537298721970571594951655427681148, -0.1159615333065057817540351827032362007129), 1e-13);
    close(lo, c(0.4853896896659844232978005673627117346941, -0.01579526652632864030786513487740873418233), 1e-13);
}

#[test]
fn scalar_generalized_matches_reference() {
    let p = ParamSet::new(Some(s(0.7)), Some(s(1.4)), vec![s(0.9)], vec![s(1.6)]).unwrap();
    let v = c(0.6, 0.1);
    let up = gen_pE_q(1.1, v, &p, &ctrl()).unwrap().value[(0, 0)];
    let lo = gen_pe_q(1.1, v, &p, &ctrl()).unwrap().value[(0, 0)];
    close(up, c(0.8137976539117084633851603601369424624991, 0.06913171673835183787812100400465496052944), 1e-13);
    close(lo, c(0.6079537828416985128905889666779668113454, 0.01880891237709305293929808562950700469163), 1e-13);
}

#[test]
fn exponential_halves_sum_to_exp() {
    let t = c(0.9, -0.4);
    let lo = e_lower(2.0, t, &a3(), &ctrl()).unwrap().value;
    let up = e_upper(2.0, t, &a3(), &ctrl()).unwrap().value;
    let want = CMatrix::scalar(3, t.exp());
    assert!(relative_residual(&(lo + up), &want) < 1e-12);
}

#[test]
fn series_agrees_with_quadrature() {
    let t = c(0.6, 0.3);
    for (half, range) in [(Half::Lower, Range::Lower), (Half::Upper, Range::Upper)] {
        let ser = pe_q_half(half, 1.2, t, &a3(), &[], &[], &ctrl()).unwrap().value;
        let int = e_integral(range, 1.2, t, &a3(), &q()).unwrap();
        assert!(relative_residual(&int, &ser) < 1e-9, "{half:?}");
    }
    let full = e_integral(Range::Full, 0.0, t, &a3(), &q()).unwrap();
    assert!(relative_residual(&full, &CMatrix::scalar(3, t.exp())) < 1e-9);
}

#[test]
fn bessel_forms_match_series() {
    let a = a3();
    let ap = a.shift(c(1.0, 0.0));
    let (x, t) = (1.7, 0.8);
    let want = e_lower(x, c(t, 0.0), &ap, &ctrl()).unwrap().value;
    let got = e_bessel_form(Half::Lower, x, t, &a, true, &q()).unwrap();
    assert!(relative_residual(&got, &want) < 1e-8);
    let want = e_upper(x, c(-t, 0.0), &ap, &ctrl()).unwrap().value;
    let got = e_bessel_form(Half::Upper, x, t, &a, false, &q()).unwrap();
    assert!(relative_residual(&got, &want) < 1e-8);
}

#[test]
fn generalized_upper_matches_matrix_argument_integral() {
    let p = ParamSet::new(Some(a3()), Some(b3()), vec![], vec![a3().shift(c(0.5, 0.0))]).unwrap();
    let v = c(0.4, 0.2);
    let ser = gen_pE_q(0.9, v, &p, &ctrl()).unwrap().value;
    let int = gen_integral(Range::Upper, 0.9, v, &p, &q()).unwrap();
    assert!(relative_residual(&int, &ser) < 1e-8);
}

#[test]
fn generalized_reduces_to_exponential() {
    let p = ParamSet::new(Some(CMatrix::identity(3)), Some(a3()), vec![], vec![]).unwrap();
    let t = c(1.1, 0.2);
    let g = gen_pE_q(0.7, t, &p, &ctrl()).unwrap().value;
    let e = e_upper(0.7, t, &a3(), &ctrl()).unwrap().value;
    assert!(relative_residual(&g, &e) < 1e-12);
}

#[test]
fn halves_sum_to_prq() {
    let p = ParamSet::new(Some(a3()), Some(b3()), vec![b3()], vec![a3().shift(c(1.0, 0.0))]).unwrap();
    let v = c(0.5, 0.1);
    let lo = gen_pe_q(1.3, v, &p, &ctrl()).unwrap().value;
    let up = gen_pE_q(1.3, v, &p, &ctrl()).unwrap().value;
    let full = pfq(&p.e, &p.f, v, &ctrl()).unwrap().value;
    assert!(relative_residual(&(lo + up), &full) < 1e-12);
}

#[test]
fn derivative_forms_agree() {
    let p = ParamSet::new(Some(a3()), Some(b3()), vec![b3()], vec![a3().shift(c(1.0, 0.0))]).unwrap();
    let v = c(0.3, 0.1);
    let d1 = gen_pE_q_derivative(1.0, v, &p, 1, &ctrl()).unwrap().value;
    let e1 = gen_pE_q_first_derivative(1.0, v, &p, &ctrl()).unwrap().value;
    assert!(relative_residual(&d1, &e1) < 1e-12);
    let h = 1e-5;
    let fd = (gen_pE_q(1.0, v + h, &p, &ctrl()).unwrap().value - gen_pE_q(1.0, v - h, &p, &ctrl()).unwrap().value)
        .scale_re(0.5 / h);
    assert!(relative_residual(&fd, &d1) < 1e-8);
    let dx = gen_pE_q_dx(1.0, v, &p, &ctrl()).unwrap();
    let fdx = (gen_pE_q(1.0 + h, v, &p, &ctrl()).unwrap().value - gen_pE_q(1.0 - h, v, &p, &ctrl()).unwrap().value)
        .scale_re(0.5 / h);
    assert!(relative_residual(&fdx, &dx) < 1e-8);
}

#[test]
fn addition_and_multiplication_expansions() {
    let p = ParamSet::new(Some(a3()), Some(b3()), vec![b3()], vec![a3().shift(c(1.0, 0.0))]).unwrap();
    let (w, v) = (c(0.25, 0.05), c(-0.2, 0.1));
    let lhs = gen_pE_q(0.8, w + v, &p, &ctrl()).unwrap().value;
    let rhs = gen_pE_q_addition(0.8, w, v, &p, 30, &ctrl()).unwrap();
    assert!(relative_residual(&lhs, &rhs) < 1e-10);
    let lhs = gen_pE_q(0.8, w * v, &p, &ctrl()).unwrap().value;
    let rhs = gen_pE_q_multiplication(0.8, w, v, &p, 30, &ctrl()).unwrap();
    assert!(relative_residual(&lhs, &rhs) < 1e-10);
}

#[test]
fn fractional_integrals_match_closed_forms() {
    let p = ParamSet::new(Some(a3()), Some(b3()), vec![], vec![b3().shift(c(0.5, 0.0))]).unwrap();
    for k in [1u32, 2] {
        let lhs = fractional_one_sided(0.6, c(0.7, 0.2), k, 0.9, &p, &q()).unwrap();
        let rhs = fractional_one_sided_rhs(0.6, c(0.7, 0.2), k, 0.9, &p, &ctrl()).unwrap();
        assert!(relative_residual(&lhs, &rhs) < 1e-8, "one-sided k={k}");
        let cm = a3().scale_re(0.5).shift(c(0.4, 0.0));
        let lhs = fractional_two_sided(0.6, c(-0.5, 0.1), k, 0.3, 1.4, &cm, &p, &q()).unwrap();
        let rhs = fractional_two_sided_rhs(0.6, c(-0.5, 0.1), k, 0.3, 1.4, &cm, &p, &ctrl()).unwrap();
        assert!(relative_residual(&lhs, &rhs) < 1e-8, "two-sided k={k}");
    }
}

#[test]
fn kernel_forms_of_prq() {
    let e1 = a3().shift(c(0.2, 0.0));
    let p = ParamSet::new(Some(a3()), Some(b3()), vec![e1.clone(), b3()], vec![e1.shift(c(1.2, 0.0))]).unwrap();
    let v = c(0.4, -0.2);
    let ser = prq(&p.e, &p.f, &a3(), &b3(), v, &ctrl()).unwrap().value;
    let gk = prq_gamma_kernel(v, &p, &q()).unwrap();
    assert!(relative_residual(&gk, &ser) < 1e-8);
    let bk = prq_beta(v, &p, &q()).unwrap();
    assert!(relative_residual(&bk, &ser) < 1e-8);
    let up = gen_pE_q(0.9, v, &p, &ctrl()).unwrap().value;
    let ub = gen_upper_beta(0.9, v, &p, &q()).unwrap();
    assert!(relative_residual(&ub, &up) < 1e-8);
}

#[test]
fn exponential_kernel_closed_form() {
    let cm = b3();
    let lo = pe_q(1.1, c(-0.4, 0.0), &cm, &[cm.clone()], &[], &ctrl()).unwrap().value;
    let closed = exponential_kernel_closed(Half::Lower, 1.1, 0.4, &cm).unwrap();
    assert!(relative_residual(&lo, &closed) < 1e-11);
    let up = pE_q(1.1, c(-0.4, 0.0), &cm, &[cm.clone()], &[], &ctrl()).unwrap().value;
    let closed = exponential_kernel_closed(Half::Upper, 1.1, 0.4, &cm).unwrap();
    assert!(relative_residual(&up, &closed) < 1e-11);
}

#[test]
fn exponential_derivatives() {
    let a = a3();
    let (x, t, h) = (1.4, c(0.5, 0.0), 1e-5);
    let up = |t: Complex64| e_upper(x, t, &a, &ctrl()).unwrap().value;
    let fd = (up(t + h) - up(t - h)).scale_re(0.5 / h);
    let want = e_upper(x, t, &a.shift(c(1.0, 0.0)), &ctrl()).unwrap().value;
    assert!(relative_residual(&fd, &want) < 1e-8);
    let lo = |x: f64| e_lower(x, t, &a, &ctrl()).unwrap().value;
    let fdx = (lo(x + h) - lo(x - h)).scale_re(0.5 / h);
    assert!(relative_residual(&fdx, &e_dx(Half::Lower, x, t, &a, &ctrl()).unwrap()) < 1e-8);
}

#[test]
fn divergent_shapes_are_refused() {
    let a = s(1.0);
    assert!(matches!(
        pE_q(1.0, c(1.5, 0.0), &a, &[s(0.5)], &[], &ctrl()),
        Err(crate::Error::DivergentSeries(_))
    ));
    assert!(matches!(
        pe_q(1.0, c(0.5, 0.0), &a, &[s(0.5), s(0.5), s(0.5)], &[], &ctrl()),
        Err(crate::Error::DivergentSeries(_))
    ));
    assert!(matches!(e_lower(-1.0, c(0.5, 0.0), &a, &ctrl()), Err(crate::Error::DomainError(_))));
    let _ = matrix_exp(&a);
}
