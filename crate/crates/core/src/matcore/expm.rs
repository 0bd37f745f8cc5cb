use num_complex::Complex64;

use super::matrix::CMatrix;
use crate::error::{Error, Result};

const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];
const THETA13: f64 = 5.371920351148152;

fn combo(terms: &[(&CMatrix, f64)], n: usize) -> CMatrix {
    let mut out = CMatrix::zeros(n);
    for (m, c) in terms {
        out += &m.scale_re(*c);
    }
    out
}

/// Matrix exponential by scaling and squaring with a degree-13 Pade approximant.
pub fn matrix_exp(a: &CMatrix) -> Result<CMatrix> {
    if !a.is_finite() {
        return Err(Error::InvalidInput("matrix has non-finite entries".into()));
    }
    let n = a.dim();
    let norm = a.norm_one();
    let s = if norm > THETA13 { (norm / THETA13).log2().ceil() as i32 } else { 0 };
    if s > 1000 {
        return Err(Error::Overflow(format!("norm {norm:.3e} is too large for the exponential")));
    }
    let a = a.scale_re(0.5f64.powi(s));
    let b = &PADE13;
    let id = CMatrix::identity(n);
    let a2 = &a * &a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;
    let u_inner = &a6 * &combo(&[(&a6, b[13]), (&a4, b[11]), (&a2, b[9])], n)
        + combo(&[(&a6, b[7]), (&a4, b[5]), (&a2, b[3]), (&id, b[1])], n);
    let u = &a * &u_inner;
    let v = &a6 * &combo(&[(&a6, b[12]), (&a4, b[10]), (&a2, b[8])], n)
        + combo(&[(&a6, b[6]), (&a4, b[4]), (&a2, b[2]), (&id, b[0])], n);
    let mut r = (&v - &u).solve(&(&v + &u))?;
    for _ in 0..s {
        r = &r * &r;
        if !r.is_finite() {
            return Err(Error::Overflow("matrix exponential".into()));
        }
    }
    if !r.is_finite() {
        return Err(Error::Overflow("matrix exponential".into()));
    }
    Ok(r)
}

/// `t^A = exp(A ln t)` for real `t > 0`.
pub fn matrix_power_real_base(t: f64, a: &CMatrix) -> Result<CMatrix> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::DomainError(format!("real base must be positive, got {t}")));
    }
    matrix_exp(&a.scale(Complex64::new(t.ln(), 0.0)))
}
