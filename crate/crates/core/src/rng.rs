//! Seeded randomness for every randomized run in the crate.
//!
//! The generator is Xoshiro256++ seeded through SplitMix64 (as done by
//! `rand_xoshiro::Xoshiro256PlusPlus::seed_from_u64`):
//!
//! ```text
//! SplitMix64:   z = (state += 0x9E3779B97F4A7C15)
//!               z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//!               z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//!               out = z ^ (z >> 31)          (four outputs fill s[0..4])
//! Xoshiro256++: out = rotl(s0 + s3, 23) + s0
//!               t = s1 << 17
//!               s2 ^= s0; s3 ^= s1; s1 ^= s2; s0 ^= s3; s2 ^= t
//!               s3 = rotl(s3, 45)
//! ```
//!
//! Derived draws, all from one `next_u64` each:
//! - `unit()`: `(x >> 11) · 2⁻⁵³`, uniform on `[0, 1)`
//! - `uniform(a, b)`: `a + (b − a)·unit()`
//! - `int_in(lo, hi)`: `lo + x mod (hi − lo + 1)`
//!
//! Randomized suites seed trial `t` with `seed + t` (wrapping), so any
//! counterexample is reproduced from `(seed, t)` alone.

use num_complex::Complex;
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::scalar::{ratio, CScalar, Exact, C64};
use crate::vector::{CVector, Vector};

pub struct SeededRng(Xoshiro256PlusPlus);

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng(Xoshiro256PlusPlus::seed_from_u64(seed))
    }

    /// Generator for trial `trial` of a run seeded with `seed`.
    pub fn for_trial(seed: u64, trial: u64) -> Self {
        Self::new(seed.wrapping_add(trial))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }

    /// Integer uniform on `lo..=hi` (modulo reduction).
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        debug_assert!(lo <= hi);
        let span = (hi - lo) as u64 + 1;
        lo + (self.next_u64() % span) as i64
    }

    pub fn usize_in(&mut self, lo: usize, hi: usize) -> usize {
        self.int_in(lo as i64, hi as i64) as usize
    }

    /// Rational `p/q` with `p ∈ [-20, 20]`, `q ∈ [1, 12]`.
    pub fn rational(&mut self) -> Exact {
        let p = self.int_in(-20, 20);
        let q = self.int_in(1, 12);
        ratio(p, q)
    }

    pub fn cexact(&mut self) -> CScalar<Exact> {
        let re = self.rational();
        let im = self.rational();
        Complex::new(re, im)
    }

    /// Complex with both parts uniform on `[-scale, scale)`.
    pub fn cfloat(&mut self, scale: f64) -> C64 {
        let re = self.uniform(-scale, scale);
        let im = self.uniform(-scale, scale);
        Complex::new(re, im)
    }

    pub fn cvector_exact(&mut self, dim: usize) -> CVector<Exact> {
        Vector::from_fn(dim, |_| self.cexact()).expect("dim >= 1")
    }

    pub fn cvector_float(&mut self, dim: usize, scale: f64) -> CVector<f64> {
        Vector::from_fn(dim, |_| self.cfloat(scale)).expect("dim >= 1")
    }
}
