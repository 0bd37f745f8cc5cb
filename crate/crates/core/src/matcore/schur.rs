use num_complex::Complex64;

use super::matrix::CMatrix;
use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// `M = Q T Q*` with `Q` unitary and `T` upper triangular.
#[derive(Clone, Debug)]
pub struct Schur {
    pub q: CMatrix,
    pub t: CMatrix,
}

impl Schur {
    pub fn eigenvalues(&self) -> Vec<Complex64> {
        self.t.diag()
    }

    pub fn reconstruct(&self) -> CMatrix {
        &(&self.q * &self.t) * &self.q.conj_transpose()
    }
}

/// Rotation `G = [[c, -s], [conj(s), c]]` with `G* [a; b] = [r; 0]`.
#[derive(Clone, Copy)]
struct Givens {
    c: f64,
    s: Complex64,
}

impl Givens {
    fn zeroing(a: Complex64, b: Complex64) -> Givens {
        let na = a.norm();
        let nb = b.norm();
        if nb == 0.0 {
            return Givens { c: 1.0, s: ZERO };
        }
        if na == 0.0 {
            return Givens { c: 0.0, s: Complex64::new(1.0, 0.0) };
        }
        let r = na.hypot(nb);
        Givens { c: na / r, s: (a / na) * b.conj() / r }
    }

    /// Rows `k, k+1` of `m` over columns `cols` are replaced by `G*` times them.
    fn left(&self, m: &mut CMatrix, k: usize, cols: std::ops::Range<usize>) {
        for j in cols {
            let x = m[(k, j)];
            let y = m[(k + 1, j)];
            m[(k, j)] = x * self.c + self.s * y;
            m[(k + 1, j)] = -self.s.conj() * x + y * self.c;
        }
    }

    /// Columns `k, k+1` of `m` over rows `rows` are replaced by them times `G`.
    fn right(&self, m: &mut CMatrix, k: usize, rows: std::ops::Range<usize>) {
        for i in rows {
            let x = m[(i, k)];
            let y = m[(i, k + 1)];
            m[(i, k)] = x * self.c + y * self.s.conj();
            m[(i, k + 1)] = -x * self.s + y * self.c;
        }
    }
}

fn hessenberg(m: &CMatrix) -> (CMatrix, CMatrix) {
    let n = m.dim();
    let mut h = m.clone();
    let mut q = CMatrix::identity(n);
    for k in 0..n.saturating_sub(2) {
        let norm: f64 = (k + 1..n).map(|i| h[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        let tail: f64 = (k + 2..n).map(|i| h[(i, k)].norm_sqr()).sum();
        if tail == 0.0 {
            continue;
        }
        let x0 = h[(k + 1, k)];
        let phase = if x0.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { x0 / x0.norm() };
        let alpha = -phase * norm;
        let mut v: Vec<Complex64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        v[0] -= alpha;
        let vn: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in v.iter_mut() {
            *z /= vn;
        }
        // H <- P H P with P = I - 2 v v*.
        for j in 0..n {
            let dot: Complex64 = v.iter().enumerate().map(|(a, vi)| vi.conj() * h[(k + 1 + a, j)]).sum();
            for (a, vi) in v.iter().enumerate() {
                h[(k + 1 + a, j)] -= *vi * dot * 2.0;
            }
        }
        for mat in [&mut h, &mut q] {
            for i in 0..n {
                let dot: Complex64 = v.iter().enumerate().map(|(a, vi)| mat[(i, k + 1 + a)] * vi).sum();
                for (a, vi) in v.iter().enumerate() {
                    mat[(i, k + 1 + a)] -= dot * vi.conj() * 2.0;
                }
            }
        }
        for i in k + 2..n {
            h[(i, k)] = ZERO;
        }
    }
    (h, q)
}

fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    // Eigenvalue of [[a, b], [c, d]] closest to d.
    let tr_half = (a + d) * 0.5;
    let disc = ((a - d) * 0.5).powi(2) + b * c;
    let root = disc.sqrt();
    let l1 = tr_half + root;
    let l2 = tr_half - root;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// Complex Schur decomposition by Hessenberg reduction and shifted QR.
pub fn schur_decompose(m: &CMatrix) -> Result<Schur> {
    let n = m.dim();
    if !m.is_finite() {
        return Err(Error::InvalidInput("matrix has non-finite entries".into()));
    }
    let (mut t, mut q) = hessenberg(m);
    if n == 1 {
        return Ok(Schur { q, t });
    }
    let eps = f64::EPSILON;
    let norm = t.max_abs().max(f64::MIN_POSITIVE);
    let mut hi = n - 1;
    let mut iter_since_deflation = 0usize;
    let mut total = 0usize;
    let max_total = 100 * n;
    let mut rotations: Vec<Givens> = Vec::with_capacity(n);
    while hi > 0 {
        // Deflate negligible subdiagonals.
        let mut lo = hi;
        while lo > 0 {
            let sub = t[(lo, lo - 1)].norm();
            let local = t[(lo, lo)].norm() + t[(lo - 1, lo - 1)].norm();
            if sub <= eps * local.max(eps * norm) {
                t[(lo, lo - 1)] = ZERO;
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            hi -= 1;
            iter_since_deflation = 0;
            continue;
        }
        total += 1;
        iter_since_deflation += 1;
        if total > max_total {
            return Err(Error::ConvergenceFailure { what: "Schur QR iteration", iterations: total });
        }
        let mu = if iter_since_deflation % 11 == 10 {
            t[(hi, hi)] + Complex64::new(t[(hi, hi - 1)].re.abs() * 1.5, t[(hi, hi - 1)].norm() * 0.5)
        } else {
            wilkinson_shift(t[(hi - 1, hi - 1)], t[(hi - 1, hi)], t[(hi, hi - 1)], t[(hi, hi)])
        };
        for i in lo..=hi {
            t[(i, i)] -= mu;
        }
        rotations.clear();
        for k in lo..hi {
            let g = Givens::zeroing(t[(k, k)], t[(k + 1, k)]);
            g.left(&mut t, k, k..n);
            t[(k + 1, k)] = ZERO;
            rotations.push(g);
        }
        for (idx, g) in rotations.iter().enumerate() {
            let k = lo + idx;
            g.right(&mut t, k, 0..(k + 2).min(hi + 1));
            g.right(&mut q, k, 0..n);
        }
        for i in lo..=hi {
            t[(i, i)] += mu;
        }
    }
    for i in 1..n {
        for j in 0..i {
            t[(i, j)] = ZERO;
        }
    }
    Ok(Schur { q, t })
}

/// Swaps diagonal entries `k` and `k+1` of an upper triangular Schur form.
pub fn swap_adjacent(s: &mut Schur, k: usize) {
    let n = s.t.dim();
    let a = s.t[(k, k)];
    let b = s.t[(k + 1, k + 1)];
    let g = Givens::zeroing(s.t[(k, k + 1)], b - a);
    g.left(&mut s.t, k, k..n);
    g.right(&mut s.t, k, 0..k + 2);
    g.right(&mut s.q, k, 0..n);
    s.t[(k + 1, k)] = ZERO;
    s.t[(k, k)] = b;
    s.t[(k + 1, k + 1)] = a;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn check(m: &CMatrix) -> Schur {
        let s = schur_decompose(m).unwrap();
        let n = m.dim();
        let qq = &s.q.conj_transpose() * &s.q;
        assert!((qq - CMatrix::identity(n)).frobenius_norm() < 1e-13);
        for i in 1..n {
            for j in 0..i {
                assert_eq!(s.t[(i, j)], ZERO);
            }
        }
        let err = (s.reconstruct() - m).frobenius_norm() / (1.0 + m.frobenius_norm());
        assert!(err < 1e-13, "reconstruction error {err}");
        s
    }

    #[test]
    fn triangular_input_keeps_diagonal() {
        let m = CMatrix::from_rows(vec![
            vec![c(1.0, 0.0), c(2.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(1.5, 0.0), c(1.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0), c(2.0, 0.0)],
        ])
        .unwrap();
        let s = check(&m);
        let mut d: Vec<f64> = s.eigenvalues().iter().map(|z| z.re).collect();
        d.sort_by(f64::total_cmp);
        assert!((d[0] - 1.0).abs() < 1e-14 && (d[1] - 1.5).abs() < 1e-14 && (d[2] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn rotation_and_jordan_blocks() {
        let rot = CMatrix::from_real_rows(&[&[0.0, -1.0], &[1.0, 0.0]]).unwrap();
        let s = check(&rot);
        for z in s.eigenvalues() {
            assert!((z.norm() - 1.0).abs() < 1e-14 && z.re.abs() < 1e-14);
        }
        let jordan = CMatrix::from_real_rows(&[&[2.0, 1.0, 0.0], &[0.0, 2.0, 1.0], &[0.0, 0.0, 2.0]]).unwrap();
        check(&jordan);
        check(&CMatrix::zeros(4));
    }

    #[test]
    fn dense_complex_matrices() {
        for seed in 0..20u64 {
            let n = 1 + (seed as usize % 6);
            let mut x = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let mut next = || {
                x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((x >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
            };
            let data = (0..n * n).map(|_| c(next(), next())).collect();
            let m = CMatrix::from_vec(n, data).unwrap();
            let mut s = check(&m);
            if n >= 2 {
                swap_adjacent(&mut s, 0);
                let err = (s.reconstruct() - &m).frobenius_norm();
                assert!(err < 1e-13 * (1.0 + m.frobenius_norm()));
            }
        }
    }
}
