use num_complex::Complex64;

use super::matrix::CMatrix;
use super::schur::{schur_decompose, swap_adjacent, Schur};
use crate::error::{Error, Result};
use crate::scalarfn::ScalarFn;

/// Eigenvalues closer than this (through a chain) share a Parlett block.
pub const BLOCKING_TOL: f64 = 0.1;

const MAX_TAYLOR: usize = crate::scalarfn::CAUCHY_MAX_ORDER;

/// A reordered Schur form with its Parlett block structure, reusable across functions.
#[derive(Clone, Debug)]
pub struct SpectralData {
    schur: Schur,
    /// Half-open index ranges of the diagonal blocks, in order.
    blocks: Vec<(usize, usize)>,
}

fn cluster_labels(eigs: &[Complex64]) -> Vec<usize> {
    let n = eigs.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if (eigs[i] - eigs[j]).norm() <= BLOCKING_TOL {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    // Relabel roots by order of first appearance.
    let mut label = vec![usize::MAX; n];
    let mut out = vec![0; n];
    let mut next = 0;
    for i in 0..n {
        let r = find(&mut parent, i);
        if label[r] == usize::MAX {
            label[r] = next;
            next += 1;
        }
        out[i] = label[r];
    }
    out
}

impl SpectralData {
    pub fn new(m: &CMatrix) -> Result<Self> {
        let mut schur = schur_decompose(m)?;
        let n = m.dim();
        let mut labels = cluster_labels(&schur.eigenvalues());
        // Bubble clusters into contiguous runs with adjacent swaps.
        loop {
            let mut swapped = false;
            for k in 0..n.saturating_sub(1) {
                if labels[k] > labels[k + 1] {
                    swap_adjacent(&mut schur, k);
                    labels.swap(k, k + 1);
                    swapped = true;
                }
            }
            if !swapped {
                break;
            }
        }
        let mut blocks = Vec::new();
        let mut start = 0;
        for k in 1..=n {
            if k == n || labels[k] != labels[start] {
                blocks.push((start, k));
                start = k;
            }
        }
        Ok(SpectralData { schur, blocks })
    }

    pub fn dim(&self) -> usize {
        self.schur.t.dim()
    }

    pub fn eigenvalues(&self) -> Vec<Complex64> {
        self.schur.eigenvalues()
    }

    pub fn schur(&self) -> &Schur {
        &self.schur
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|(a, b)| b - a).collect()
    }

    /// `f(M)` for the matrix this data was built from.
    pub fn apply(&self, f: &impl ScalarFn) -> Result<CMatrix> {
        let ft = self.apply_triangular(f)?;
        let q = &self.schur.q;
        let out = &(q * &ft) * &q.conj_transpose();
        if !out.is_finite() {
            return Err(Error::Overflow("matrix function value is not finite".into()));
        }
        Ok(out)
    }

    fn apply_triangular(&self, f: &impl ScalarFn) -> Result<CMatrix> {
        let t = &self.schur.t;
        let n = t.dim();
        for z in t.diag() {
            if f.is_singular(z) {
                return Err(Error::SingularFunction(z));
            }
        }
        let mut ft = CMatrix::zeros(n);
        for &(a, b) in &self.blocks {
            let fb = taylor_block(t, a, b, f)?;
            for i in a..b {
                for j in i..b {
                    ft[(i, j)] = fb[(i - a, j - a)];
                }
            }
        }
        // Block Parlett recurrence, one block column at a time.
        for jb in 0..self.blocks.len() {
            let (ja, jz) = self.blocks[jb];
            for ib in (0..jb).rev() {
                let (ia, iz) = self.blocks[ib];
                // rhs = F_ii T_ij - T_ij F_jj + sum_k (F_ik T_kj - T_ik F_kj)
                let mut rhs = vec![Complex64::new(0.0, 0.0); (iz - ia) * (jz - ja)];
                let w = jz - ja;
                for i in ia..iz {
                    for j in ja..jz {
                        let mut s = Complex64::new(0.0, 0.0);
                        for k in i..iz {
                            s += ft[(i, k)] * t[(k, j)];
                        }
                        for k in ja..=j {
                            s -= t[(i, k)] * ft[(k, j)];
                        }
                        for k in iz..ja {
                            s += ft[(i, k)] * t[(k, j)] - t[(i, k)] * ft[(k, j)];
                        }
                        rhs[(i - ia) * w + (j - ja)] = s;
                    }
                }
                // Solve T_ii X - X T_jj = rhs column by column.
                for j in ja..jz {
                    let mu = t[(j, j)];
                    let mut col: Vec<Complex64> = (ia..iz)
                        .map(|i| {
                            let mut s = rhs[(i - ia) * w + (j - ja)];
                            for l in ja..j {
                                s += ft[(i, l)] * t[(l, j)];
                            }
                            s
                        })
                        .collect();
                    for i in (ia..iz).rev() {
                        let mut s = col[i - ia];
                        for k in i + 1..iz {
                            s -= t[(i, k)] * col[k - ia];
                        }
                        let d = t[(i, i)] - mu;
                        col[i - ia] = s / d;
                    }
                    for i in ia..iz {
                        ft[(i, j)] = col[i - ia];
                    }
                }
            }
        }
        Ok(ft)
    }
}

/// Taylor expansion of `f` on the diagonal block `t[a..b, a..b]` about its mean eigenvalue.
fn taylor_block(t: &CMatrix, a: usize, b: usize, f: &impl ScalarFn) -> Result<CMatrix> {
    let p = b - a;
    if p == 1 {
        let mut m = CMatrix::zeros(1);
        m[(0, 0)] = f.eval(t[(a, a)])?;
        return Ok(m);
    }
    let mut block = CMatrix::zeros(p);
    for i in 0..p {
        for j in i..p {
            block[(i, j)] = t[(a + i, a + j)];
        }
    }
    let sigma = block.trace() / p as f64;
    let nmat = block.shift(-sigma);
    let spread = nmat.frobenius_norm();
    if spread == 0.0 {
        return Ok(CMatrix::scalar(p, f.eval(sigma)?));
    }
    let order = MAX_TAYLOR.min(f.max_derivative_order().saturating_add(1));
    if order < p {
        return Err(Error::DerivativeUnavailable { order: p - 1 });
    }
    let coeffs = f.taylor_coefficients(sigma, order, spread)?;
    let mut acc = CMatrix::scalar(p, coeffs[0]);
    let mut power = CMatrix::identity(p);
    let mut small = 0;
    let mut last = f64::INFINITY;
    for (k, c) in coeffs.iter().enumerate().skip(1) {
        power = &power * &nmat;
        let term = power.scale(*c);
        let tn = term.frobenius_norm();
        acc += &term;
        last = tn;
        if k + 1 >= p && tn <= 4.0 * f64::EPSILON * acc.frobenius_norm() {
            small += 1;
            if small == 2 {
                return Ok(acc);
            }
        } else {
            small = 0;
        }
    }
    if last <= 1e-10 * acc.frobenius_norm().max(f64::MIN_POSITIVE) {
        Ok(acc)
    } else {
        Err(Error::ConvergenceFailure { what: "in-cluster Taylor expansion", iterations: order })
    }
}

/// `f(M)` by Schur-Parlett.
pub fn apply_scalar_function(m: &CMatrix, f: &impl ScalarFn) -> Result<CMatrix> {
    SpectralData::new(m)?.apply(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalarfn::{Analytic, Exp, GammaFn, Pointwise};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn diagonal_input() {
        let m = CMatrix::from_real_diag(&[1.0, 2.0, 3.0]);
        let g = apply_scalar_function(&m, &GammaFn).unwrap();
        let want = CMatrix::from_real_diag(&[1.0, 1.0, 2.0]);
        assert!((g - want).frobenius_norm() < 1e-13);
    }

    #[test]
    fn jordan_block_of_exponential() {
        // exp([[l,1],[0,l]]) = e^l [[1,1],[0,1]]
        let l = 0.7;
        let m = CMatrix::from_real_rows(&[&[l, 1.0], &[0.0, l]]).unwrap();
        let e = apply_scalar_function(&m, &Exp { scale: c(1.0, 0.0) }).unwrap();
        let want = CMatrix::from_real_rows(&[&[1.0, 1.0], &[0.0, 1.0]]).unwrap().scale_re(l.exp());
        assert!((e - want).frobenius_norm() < 1e-14);
        let pw = Pointwise(|z: Complex64| z.exp());
        assert_eq!(apply_scalar_function(&m, &pw), Err(Error::DerivativeUnavailable { order: 1 }));
    }

    #[test]
    fn close_eigenvalues_use_taylor() {
        // Upper triangular with eigenvalues 1 and 1 + d: f(T)_{01} = t (f(1+d) - f(1)) / d.
        let d = 1e-3;
        let m = CMatrix::from_real_rows(&[&[1.0, 2.0], &[0.0, 1.0 + d]]).unwrap();
        let f = Analytic::entire(|z: Complex64| z.sin());
        let r = apply_scalar_function(&m, &f).unwrap();
        let want01 = 2.0 * ((1.0 + d).sin() - 1f64.sin()) / d;
        assert!((r[(0, 1)] - want01).norm() < 1e-12);
        assert!((r[(1, 1)] - (1.0 + d).sin()).norm() < 1e-14);
    }

    #[test]
    fn singular_eigenvalue_is_reported() {
        let m = CMatrix::from_real_diag(&[0.0, 1.0]);
        assert!(matches!(apply_scalar_function(&m, &GammaFn), Err(Error::SingularFunction(_))));
    }
}
