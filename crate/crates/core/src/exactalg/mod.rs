//! Dense linear algebra over a prime field `F_p` with `p < 2^32`.
//!
//! Every rank, kernel and solve in the engine goes through this module.
//! Randomness is drawn from a [`FieldCtx`], which pairs the field with a
//! seeded ChaCha stream so that any randomized answer can be replayed.

mod mat;
mod system;

pub use mat::{AffineSolution, Mat};
pub use system::{BlockLayout, LinearSystem};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// 2^31 - 1.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

/// Trials per randomized answer unless configured otherwise.
pub const DEFAULT_TRIALS: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p <= 2 || p >= 1 << 32 || !is_prime(p) {
            return Err(Error::Precondition(format!(
                "{p} is not an odd prime below 2^32"
            )));
        }
        Ok(Self { p })
    }

    #[inline]
    pub fn modulus(self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Panics on zero.
    pub fn inv(self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero");
        self.pow(a, self.p - 2)
    }

    /// Reduce a signed integer into `[0, p)`.
    pub fn from_i64(self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    /// Symmetric lift into `(-p/2, p/2]`, handy for printing small values.
    pub fn to_i64(self, v: u64) -> i64 {
        if v > self.p / 2 {
            v as i64 - self.p as i64
        } else {
            v as i64
        }
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        Self { p: DEFAULT_PRIME }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Field plus a reproducible random stream.
///
/// A context must not be shared between concurrent tasks; parallel trials
/// each build their own with [`FieldCtx::for_trial`].
#[derive(Debug, Clone)]
pub struct FieldCtx {
    field: PrimeField,
    rng: ChaCha8Rng,
}

impl FieldCtx {
    pub fn new(field: PrimeField, seed: u64) -> Self {
        Self {
            field,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Independent stream for trial `trial` under `seed`.
    pub fn for_trial(field: PrimeField, seed: u64, trial: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial);
        Self { field, rng }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn random_elem(&mut self) -> u64 {
        self.rng.random_range(0..self.field.p)
    }

    pub fn random_nonzero(&mut self) -> u64 {
        self.rng.random_range(1..self.field.p)
    }

    pub fn random_vec(&mut self, len: usize) -> Vec<u64> {
        (0..len).map(|_| self.random_elem()).collect()
    }

    pub fn random_mat(&mut self, rows: usize, cols: usize) -> Mat {
        let data = self.random_vec(rows * cols);
        Mat::from_data(self.field, rows, cols, data)
    }

    /// Uniform index in `0..n`.
    pub fn random_index(&mut self, n: usize) -> usize {
        self.rng.random_range(0..n)
    }
}

/// Free-function form of [`FieldCtx::random_mat`].
pub fn random_mat(rows: usize, cols: usize, ctx: &mut FieldCtx) -> Mat {
    ctx.random_mat(rows, cols)
}
