use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense square complex matrix stored row-major.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixDoc", into = "MatrixDoc")]
pub struct CMatrix {
    n: usize,
    data: Vec<Complex64>,
}

/// Interchange form: `{"r": n, "entries": [[[re, im], ...], ...]}`.
#[derive(Serialize, Deserialize)]
struct MatrixDoc {
    r: usize,
    entries: Vec<Vec<[f64; 2]>>,
}

impl TryFrom<MatrixDoc> for CMatrix {
    type Error = Error;

    fn try_from(doc: MatrixDoc) -> Result<Self> {
        if doc.entries.len() != doc.r {
            return Err(Error::ShapeError(format!(
                "declared r = {} but found {} rows",
                doc.r,
                doc.entries.len()
            )));
        }
        let rows = doc
            .entries
            .into_iter()
            .map(|row| row.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
            .collect();
        CMatrix::from_rows(rows)
    }
}

impl From<CMatrix> for MatrixDoc {
    fn from(m: CMatrix) -> Self {
        let entries = (0..m.n)
            .map(|i| m.row(i).iter().map(|z| [z.re, z.im]).collect())
            .collect();
        MatrixDoc { r: m.n, entries }
    }
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        assert!(n > 0, "matrix dimension must be positive");
        CMatrix { n, data: vec![ZERO; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, ONE)
    }

    pub fn scalar(n: usize, c: Complex64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = c;
        }
        m
    }

    pub fn from_diag(d: &[Complex64]) -> Self {
        let mut m = Self::zeros(d.len());
        for (i, &z) in d.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    pub fn from_real_diag(d: &[f64]) -> Self {
        let d: Vec<Complex64> = d.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::from_diag(&d)
    }

    /// Builds a matrix from rows, rejecting ragged, non-square, empty or non-finite input.
    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::ShapeError("matrix must have at least one row".into()));
        }
        let mut data = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::ShapeError(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Self::from_vec(n, data)
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
                .collect(),
        )
    }

    /// Row-major constructor; validates shape and finiteness.
    pub fn from_vec(n: usize, data: Vec<Complex64>) -> Result<Self> {
        if n == 0 || data.len() != n * n {
            return Err(Error::ShapeError(format!(
                "expected {} entries for r = {n}, got {}",
                n * n,
                data.len()
            )));
        }
        if let Some(k) = data.iter().position(|z| !z.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "entry ({}, {}) is not finite",
                k / n,
                k % n
            )));
        }
        Ok(CMatrix { n, data })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn diag(&self) -> Vec<Complex64> {
        (0..self.n).map(|i| self[(i, i)]).collect()
    }

    pub fn trace(&self) -> Complex64 {
        self.diag().iter().sum()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.is_finite())
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        CMatrix { n: self.n, data: self.data.iter().map(|&z| f(z)).collect() }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        self.map(|z| z * c)
    }

    pub fn scale_re(&self, c: f64) -> Self {
        self.map(|z| z * c)
    }

    /// `self + c I`.
    pub fn shift(&self, c: Complex64) -> Self {
        let mut m = self.clone();
        for i in 0..self.n {
            m[(i, i)] += c;
        }
        m
    }

    pub fn conj_transpose(&self) -> Self {
        let n = self.n;
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(j, i)] = self[(i, j)];
            }
        }
        m
    }

    pub fn frobenius_norm(&self) -> f64 {
        let scale = self.max_abs();
        if scale == 0.0 || !scale.is_finite() {
            return scale;
        }
        scale * self.data.iter().map(|z| (z / scale).norm_sqr()).sum::<f64>().sqrt()
    }

    /// Maximum absolute column sum.
    pub fn norm_one(&self) -> f64 {
        (0..self.n)
            .map(|j| (0..self.n).map(|i| self[(i, j)].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn matmul(&self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch in matmul");
        let n = self.n;
        let mut out = vec![ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                let rrow = &rhs.data[k * n..(k + 1) * n];
                let orow = &mut out[i * n..(i + 1) * n];
                for (o, &b) in orow.iter_mut().zip(rrow) {
                    *o += a * b;
                }
            }
        }
        CMatrix { n, data: out }
    }

    pub fn commutator_norm(&self, other: &CMatrix) -> f64 {
        (self * other - other * self).frobenius_norm()
    }

    /// Relative commutator `||AB - BA|| / (1 + ||A|| ||B||)`.
    pub fn commutes_with(&self, other: &CMatrix, tol: f64) -> bool {
        self.relative_commutator(other) <= tol
    }

    pub fn relative_commutator(&self, other: &CMatrix) -> f64 {
        self.commutator_norm(other) / (1.0 + self.frobenius_norm() * other.frobenius_norm())
    }

    /// Integer power by repeated squaring.
    pub fn powi(&self, mut k: u32) -> CMatrix {
        let mut base = self.clone();
        let mut acc = CMatrix::identity(self.n);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Solves `self X = rhs`.
    pub fn solve(&self, rhs: &CMatrix) -> Result<CMatrix> {
        Lu::factor(self)?.solve(rhs)
    }

    /// Solves `X self = lhs`, i.e. returns `lhs self^{-1}`.
    pub fn solve_right(&self, lhs: &CMatrix) -> Result<CMatrix> {
        Ok(Lu::factor(&self.transpose())?.solve(&lhs.transpose())?.transpose())
    }

    pub fn inverse(&self) -> Result<CMatrix> {
        self.solve(&CMatrix::identity(self.n))
    }

    /// 1-norm condition number estimate via an explicit inverse.
    pub fn condition_one(&self) -> f64 {
        match self.inverse() {
            Ok(inv) => self.norm_one() * inv.norm_one(),
            Err(_) => f64::INFINITY,
        }
    }
}

/// LU factorization with partial pivoting.
pub struct Lu {
    lu: CMatrix,
    perm: Vec<usize>,
}

impl Lu {
    pub fn factor(a: &CMatrix) -> Result<Lu> {
        let n = a.n;
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let scale = a.max_abs();
        if scale == 0.0 {
            return Err(Error::SingularMatrix);
        }
        for k in 0..n {
            let (p, pmax) = (k..n)
                .map(|i| (i, lu[(i, k)].norm()))
                .fold((k, -1.0), |best, c| if c.1 > best.1 { c } else { best });
            if pmax <= scale * 1e-300 || !pmax.is_finite() {
                return Err(Error::SingularMatrix);
            }
            if p != k {
                for j in 0..n {
                    lu.data.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
            }
            let pivot = lu[(k, k)];
            for i in k + 1..n {
                let l = lu[(i, k)] / pivot;
                lu[(i, k)] = l;
                if l != ZERO {
                    for j in k + 1..n {
                        let u = lu[(k, j)];
                        lu[(i, j)] -= l * u;
                    }
                }
            }
        }
        Ok(Lu { lu, perm })
    }

    pub fn solve(&self, rhs: &CMatrix) -> Result<CMatrix> {
        let n = self.lu.n;
        assert_eq!(rhs.n, n, "dimension mismatch in solve");
        let mut x = CMatrix::zeros(n);
        for (i, &p) in self.perm.iter().enumerate() {
            for j in 0..n {
                x[(i, j)] = rhs[(p, j)];
            }
        }
        for col in 0..n {
            for i in 1..n {
                let mut s = x[(i, col)];
                for k in 0..i {
                    s -= self.lu[(i, k)] * x[(k, col)];
                }
                x[(i, col)] = s;
            }
            for i in (0..n).rev() {
                let mut s = x[(i, col)];
                for k in i + 1..n {
                    s -= self.lu[(i, k)] * x[(k, col)];
                }
                x[(i, col)] = s / self.lu[(i, i)];
            }
        }
        if !x.is_finite() {
            return Err(Error::SingularMatrix);
        }
        Ok(x)
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix {}x{} [", self.n, self.n)?;
        for i in 0..self.n {
            write!(f, "  ")?;
            for z in self.row(i) {
                write!(f, "{:>12.5e}{:+.5e}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

macro_rules! elementwise {
    ($tr:ident, $m:ident, $op:tt) => {
        impl $tr<&CMatrix> for &CMatrix {
            type Output = CMatrix;
            fn $m(self, rhs: &CMatrix) -> CMatrix {
                assert_eq!(self.n, rhs.n, "dimension mismatch");
                CMatrix {
                    n: self.n,
                    data: self.data.iter().zip(&rhs.data).map(|(a, b)| a $op b).collect(),
                }
            }
        }
        impl $tr<CMatrix> for CMatrix {
            type Output = CMatrix;
            fn $m(self, rhs: CMatrix) -> CMatrix {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&CMatrix> for CMatrix {
            type Output = CMatrix;
            fn $m(self, rhs: &CMatrix) -> CMatrix {
                (&self).$m(rhs)
            }
        }
        impl $tr<CMatrix> for &CMatrix {
            type Output = CMatrix;
            fn $m(self, rhs: CMatrix) -> CMatrix {
                self.$m(&rhs)
            }
        }
    };
}

elementwise!(Add, add, +);
elementwise!(Sub, sub, -);

impl AddAssign<&CMatrix> for CMatrix {
    fn add_assign(&mut self, rhs: &CMatrix) {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
    }
}

impl SubAssign<&CMatrix> for CMatrix {
    fn sub_assign(&mut self, rhs: &CMatrix) {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a -= b;
        }
    }
}

impl Mul<&CMatrix> for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        self.matmul(rhs)
    }
}

impl Mul<CMatrix> for CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: CMatrix) -> CMatrix {
        self.matmul(&rhs)
    }
}

impl Mul<&CMatrix> for CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        self.matmul(rhs)
    }
}

impl Mul<CMatrix> for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: CMatrix) -> CMatrix {
        self.matmul(&rhs)
    }
}

impl Mul<Complex64> for &CMatrix {
    type Output = CMatrix;
    fn mul(self, c: Complex64) -> CMatrix {
        self.scale(c)
    }
}

impl Mul<Complex64> for CMatrix {
    type Output = CMatrix;
    fn mul(self, c: Complex64) -> CMatrix {
        self.scale(c)
    }
}

impl Mul<f64> for &CMatrix {
    type Output = CMatrix;
    fn mul(self, c: f64) -> CMatrix {
        self.scale_re(c)
    }
}

impl Mul<f64> for CMatrix {
    type Output = CMatrix;
    fn mul(self, c: f64) -> CMatrix {
        self.scale_re(c)
    }
}

impl Neg for CMatrix {
    type Output = CMatrix;
    fn neg(self) -> CMatrix {
        self.map(|z| -z)
    }
}

impl Neg for &CMatrix {
    type Output = CMatrix;
    fn neg(self) -> CMatrix {
        self.map(|z| -z)
    }
}

/// `||lhs - rhs||_F / (1 + ||rhs||_F)`, the residual metric used throughout.
pub fn relative_residual(lhs: &CMatrix, rhs: &CMatrix) -> f64 {
    (lhs - rhs).frobenius_norm() / (1.0 + rhs.frobenius_norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let m = CMatrix::from_rows(vec![
            vec![c(0.1, -1.0 / 3.0), c(1e-300, 7.0)],
            vec![c(-0.0, 2.5), c(std::f64::consts::PI, 1e300)],
        ])
        .unwrap();
        let text = serde_json::to_string(&m).unwrap();
        let back: CMatrix = serde_json::from_str(&text).unwrap();
        for (a, b) in m.as_slice().iter().zip(back.as_slice()) {
            assert_eq!(a.re.to_bits(), b.re.to_bits());
            assert_eq!(a.im.to_bits(), b.im.to_bits());
        }
    }

    #[test]
    fn rejects_bad_documents() {
        let ragged = r#"{"r": 2, "entries": [[[1,0],[0,0]],[[1,0]]]}"#;
        assert!(serde_json::from_str::<CMatrix>(ragged).is_err());
        let wrong_r = r#"{"r": 3, "entries": [[[1,0]]]}"#;
        assert!(serde_json::from_str::<CMatrix>(wrong_r).is_err());
        assert!(CMatrix::from_vec(1, vec![c(f64::NAN, 0.0)]).is_err());
    }

    #[test]
    fn solve_and_inverse() {
        let a = CMatrix::from_rows(vec![
            vec![c(0.0, 1.0), c(2.0, 0.0), c(1.0, 1.0)],
            vec![c(1.0, 0.0), c(0.0, 0.0), c(3.0, -1.0)],
            vec![c(2.0, 2.0), c(1.0, 0.0), c(0.5, 0.0)],
        ])
        .unwrap();
        let inv = a.inverse().unwrap();
        assert!((&a * &inv - CMatrix::identity(3)).frobenius_norm() < 1e-14);
        let b = a.shift(c(1.0, 0.0));
        let x = a.solve_right(&b).unwrap();
        assert!((&x * &a - &b).frobenius_norm() < 1e-13);
        assert_eq!(CMatrix::zeros(2).solve(&CMatrix::identity(2)), Err(Error::SingularMatrix));
    }

    #[test]
    fn powi_matches_repeated_product() {
        let a = CMatrix::from_real_rows(&[&[0.5, 1.0], &[-0.25, 0.75]]).unwrap();
        let p = a.powi(5);
        let q = &(&(&(&a * &a) * &a) * &a) * &a;
        assert!((p - q).frobenius_norm() < 1e-15);
    }
}
