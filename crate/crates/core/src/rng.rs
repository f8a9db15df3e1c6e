//! Deterministic, label-addressed random streams.
//!
//! A stream is a ChaCha8 generator keyed by `SHA-256(seed || label)`, so any
//! `(seed, label)` pair reproduces the same draws regardless of which thread
//! asks for it or in what order streams are created.

use rand::{Rng as _, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal, StudentT};
use sha2::{Digest, Sha256};

#[derive(Debug, Clone)]
pub struct Stream {
    seed: u64,
    label: String,
    inner: ChaCha8Rng,
}

/// Opens the stream identified by `(seed, label)`.
pub fn rng_stream(seed: u64, label: &str) -> Stream {
    let mut h = Sha256::new();
    h.update(seed.to_le_bytes());
    h.update(label.as_bytes());
    let digest = h.finalize();
    let mut key = [0u8; 32];
    key.copy_from_slice(&digest[..32]);
    Stream {
        seed,
        label: label.to_owned(),
        inner: ChaCha8Rng::from_seed(key),
    }
}

impl Stream {
    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Child stream `label/sub` under the same seed. Independent of how many
    /// draws were taken from `self`.
    pub fn fork(&self, sub: &str) -> Stream {
        rng_stream(self.seed, &format!("{}/{}", self.label, sub))
    }

    pub fn normal(&mut self) -> f64 {
        StandardNormal.sample(&mut self.inner)
    }

    /// Uniform on `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.inner.random::<f64>()
    }

    pub fn uniform_range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Uniform integer in `0..n`.
    pub fn index(&mut self, n: usize) -> usize {
        self.inner.random_range(0..n)
    }

    /// Student-t draw with `df` degrees of freedom (`df > 0`).
    pub fn student_t(&mut self, df: f64) -> f64 {
        StudentT::new(df)
            .expect("student_t: df must be positive")
            .sample(&mut self.inner)
    }

    /// Uniformly random unit vector in `R^dim`.
    pub fn unit_vector(&mut self, dim: usize) -> Vec<f64> {
        loop {
            let mut v: Vec<f64> = (0..dim).map(|_| self.normal()).collect();
            let norm = crate::linalg::norm(&v);
            if norm > 1e-12 {
                v.iter_mut().for_each(|c| *c /= norm);
                return v;
            }
        }
    }

    /// Fisher-Yates shuffle.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.index(i + 1);
            items.swap(i, j);
        }
    }
}

impl RngCore for Stream {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.inner.fill_bytes(dst)
    }
}
