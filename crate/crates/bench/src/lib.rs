//! Seeded inputs shared by the benchmarks.

use imexp_core::hyperseries::ParamSet;
use imexp_core::{random_commuting_family, CMatrix, SpectralBox};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use imexp_core::Complex64;

/// A commuting `A, B, E_1, E_2, F_1` family of dimension `r`.
pub struct Fixture {
    pub a: CMatrix,
    pub params: ParamSet,
}

impl Fixture {
    pub fn new(r: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fam = random_commuting_family(&mut rng, r, 5, &SpectralBox::STANDARD).expect("family generation");
        let params = ParamSet {
            a: Some(fam[0].clone()),
            b: Some(fam[1].clone()),
            e: vec![fam[2].clone(), fam[3].clone()],
            f: vec![fam[4].clone()],
        };
        Fixture { a: fam[0].clone(), params }
    }

    /// The same family with a single numerator, so upper series converge for every argument.
    pub fn confluent(&self) -> ParamSet {
        ParamSet { e: self.params.e[..1].to_vec(), ..self.params.clone() }
    }
}

/// Dense `n x n` matrix with entries uniform in the unit square, for the matrix kernels.
pub fn dense(n: usize, seed: u64) -> CMatrix {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let data = (0..n * n).map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
    CMatrix::from_vec(n, data).expect("square data")
}
