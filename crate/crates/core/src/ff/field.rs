//! Arithmetic in `GF(q)` for a prime `q < 2^31`.

use crate::error::{Error, Result};

/// Deterministic primality test by trial division; `q` is at most `2^31`.
pub fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= q {
        if q % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    q: u32,
}

impl Fp {
    pub fn new(q: u64) -> Result<Self> {
        if q >= 1 << 31 || !is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        Ok(Fp { q: q as u32 })
    }

    pub fn q(self) -> u32 {
        self.q
    }

    /// Reduces any signed integer into `0..q`.
    pub fn from_i64(self, v: i64) -> u32 {
        v.rem_euclid(self.q as i64) as u32
    }

    pub fn add(self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.q as u64) as u32
    }

    pub fn sub(self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.q as u64 - b as u64) % self.q as u64) as u32
    }

    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }

    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.q as u64) as u32
    }

    pub fn pow(self, mut a: u32, mut e: u64) -> u32 {
        let mut acc = 1 % self.q;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a nonzero element.
    pub fn inv(self, a: u32) -> u32 {
        assert!(a % self.q != 0, "inverse of zero");
        self.pow(a, self.q as u64 - 2)
    }
}
