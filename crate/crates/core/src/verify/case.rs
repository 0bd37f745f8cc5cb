use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::matcore::{CMatrix, CommutingBasis, SpectralBox};

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Stream seed for one case; depends only on the run seed, the suite name and the case id.
pub fn case_seed(seed: u64, suite: &str, case_id: u64) -> u64 {
    // FNV-1a keeps the suite contribution independent of registry order.
    let h = suite.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3));
    splitmix(splitmix(seed) ^ splitmix(h) ^ splitmix(case_id.wrapping_add(0x5851_f42d)))
}

/// Random inputs for one case: a commuting eigenbasis plus a log of everything drawn.
pub struct Case {
    rng: ChaCha8Rng,
    basis: CommutingBasis,
    inputs: Vec<(String, Value)>,
}

impl Case {
    pub fn new(seed: u64, r: usize) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let basis = CommutingBasis::random(&mut rng, r)?;
        Ok(Case { rng, basis, inputs: Vec::new() })
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn record<T: Serialize>(&mut self, name: &str, value: &T) {
        let v = serde_json::to_value(value).expect("inputs are serializable");
        self.inputs.push((name.to_string(), v));
    }

    pub fn eigs(&mut self, bx: SpectralBox) -> Vec<Complex64> {
        (0..self.dim()).map(|_| bx.sample(&mut self.rng)).collect()
    }

    /// A member of the commuting family with the given eigenvalues.
    pub fn matrix_from(&mut self, name: &str, eigs: &[Complex64]) -> CMatrix {
        let m = self.basis.member(eigs);
        self.record(name, &m);
        m
    }

    pub fn matrix(&mut self, name: &str, bx: SpectralBox) -> CMatrix {
        let e = self.eigs(bx);
        self.matrix_from(name, &e)
    }

    pub fn real(&mut self, name: &str, lo: f64, hi: f64) -> f64 {
        let v = if hi > lo { self.rng.random_range(lo..hi) } else { lo };
        self.record(name, &v);
        v
    }

    /// Uniform on the disk `|z| <= radius`.
    pub fn disk(&mut self, name: &str, radius: f64) -> Complex64 {
        let rho = radius * self.rng.random::<f64>().sqrt();
        let th = self.rng.random_range(-std::f64::consts::PI..std::f64::consts::PI);
        let z = Complex64::from_polar(rho, th);
        self.record(name, &[z.re, z.im]);
        z
    }

    pub fn index(&mut self, name: &str, lo: usize, hi_inclusive: usize) -> usize {
        let v = self.rng.random_range(lo..=hi_inclusive);
        self.record(name, &v);
        v
    }

    /// Canonical JSON of every recorded input as `[name, value]` pairs in draw order.
    pub fn inputs_json(&self) -> String {
        let doc: Vec<Value> = self.inputs.iter().map(|(k, v)| Value::Array(vec![Value::String(k.clone()), v.clone()])).collect();
        serde_json::to_string(&doc).expect("inputs are serializable")
    }

    /// SHA-256 of [`Case::inputs_json`].
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.inputs_json().as_bytes()))
    }
}
