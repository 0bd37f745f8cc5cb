use num_complex::Complex64;
use rand::Rng;

use super::matrix::CMatrix;
use crate::error::{Error, Result};

/// Axis-aligned rectangle in the complex plane from which eigenvalues are drawn.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralBox {
    pub re: (f64, f64),
    pub im: (f64, f64),
}

impl SpectralBox {
    /// `Re in [0.5, 3]`, `Im in [-0.5, 0.5]`.
    pub const STANDARD: SpectralBox = SpectralBox { re: (0.5, 3.0), im: (-0.5, 0.5) };

    pub const fn new(re: (f64, f64), im: (f64, f64)) -> Self {
        SpectralBox { re, im }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Complex64 {
        Complex64::new(uniform(rng, self.re), uniform(rng, self.im))
    }
}

pub(crate) fn uniform<R: Rng + ?Sized>(rng: &mut R, (lo, hi): (f64, f64)) -> f64 {
    if hi > lo {
        rng.random_range(lo..hi)
    } else {
        lo
    }
}

const MAX_CONDITION: f64 = 50.0;
const ATTEMPTS: usize = 32;

/// A fixed eigenbasis `V`; every `V diag(mu) V^{-1}` built from it commutes with every other.
#[derive(Clone, Debug)]
pub struct CommutingBasis {
    v: CMatrix,
    v_inv: CMatrix,
}

impl CommutingBasis {
    /// `V = I + 0.3 G / sqrt(r)` with `G` uniform in the unit square, redrawn until well conditioned.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::ShapeError("dimension must be positive".into()));
        }
        let scale = 0.3 / (r as f64).sqrt();
        for _ in 0..ATTEMPTS {
            let data = (0..r * r)
                .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)) * scale)
                .collect();
            let v = CMatrix::from_vec(r, data)?.shift(Complex64::new(1.0, 0.0));
            if v.condition_one() > MAX_CONDITION {
                continue;
            }
            let v_inv = v.inverse()?;
            return Ok(CommutingBasis { v, v_inv });
        }
        Err(Error::GenerationFailure(format!("no eigenbasis with condition below {MAX_CONDITION} in {ATTEMPTS} draws")))
    }

    pub fn dim(&self) -> usize {
        self.v.dim()
    }

    /// `V diag(eigs) V^{-1}`.
    pub fn member(&self, eigs: &[Complex64]) -> CMatrix {
        assert_eq!(eigs.len(), self.v.dim(), "eigenvalue count must match the basis");
        &(&self.v * &CMatrix::from_diag(eigs)) * &self.v_inv
    }

    /// Draws eigenvalues from `bx` and returns them with the member they define.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, bx: &SpectralBox) -> (Vec<Complex64>, CMatrix) {
        let eigs: Vec<Complex64> = (0..self.dim()).map(|_| bx.sample(rng)).collect();
        let m = self.member(&eigs);
        (eigs, m)
    }
}

/// `count` pairwise-commuting `r x r` matrices with spectra in `bx`.
pub fn random_commuting_family<R: Rng + ?Sized>(
    rng: &mut R,
    r: usize,
    count: usize,
    bx: &SpectralBox,
) -> Result<Vec<CMatrix>> {
    let basis = CommutingBasis::random(rng, r)?;
    Ok((0..count).map(|_| basis.sample(rng, bx).1).collect())
}
