//! Dense univariate polynomials over the integers.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::series::{binom_ext, write_terms, TruncatedSeries};

/// Polynomial in `t`; `coeffs[i]` multiplies `t^i`. Trailing zeros are trimmed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly { coeffs: vec![BigInt::one()] }
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_i64s(values: &[i64]) -> Self {
        Self::from_coeffs(values.iter().map(|&v| BigInt::from(v)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// Number of leading zero coefficients (the `t`-adic valuation); `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// `p(t^d)`.
    pub fn inflate(&self, d: usize) -> Self {
        if d == 1 || self.is_zero() {
            return self.clone();
        }
        let mut out = vec![BigInt::zero(); (self.coeffs.len() - 1) * d + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * d] = c.clone();
        }
        IntPoly { coeffs: out }
    }

    /// Divides by `t^e`, dropping the low coefficients. Caller checks they vanish.
    pub fn shift_down(&self, e: usize) -> Self {
        IntPoly::from_coeffs(self.coeffs.iter().skip(e).cloned().collect())
    }

    /// `(1 - t^d)^n` expanded with the binomial theorem.
    pub fn one_minus_t_pow(d: usize, n: usize) -> Self {
        let mut out = vec![BigInt::zero(); n * d + 1];
        for k in 0..=n {
            let c = binom_ext(n as i64, k as i64);
            out[k * d] = if k % 2 == 0 { c } else { -c };
        }
        IntPoly { coeffs: out }
    }

    /// Exact quotient `self / rhs`, or `None` when `rhs` does not divide `self` in `Z[t]`.
    pub fn div_exact(&self, rhs: &IntPoly) -> Option<IntPoly> {
        let dd = rhs.degree().expect("division by the zero polynomial");
        let Some(nd) = self.degree() else {
            return Some(IntPoly::zero());
        };
        if nd < dd {
            return None;
        }
        let lead = &rhs.coeffs[dd];
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (i, c) in rhs.coeffs.iter().enumerate() {
                if !c.is_zero() {
                    rem[k + i] -= &q * c;
                }
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPoly::from_coeffs(quot))
    }

    /// Evaluates at an integer.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Coefficients `0..order` as a truncated series.
    pub fn to_series(&self, order: usize) -> TruncatedSeries {
        let mut v = vec![BigInt::zero(); order];
        for (slot, c) in v.iter_mut().zip(&self.coeffs) {
            *slot = c.clone();
        }
        TruncatedSeries::from_coeffs(v)
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;

    fn add(self, rhs: &IntPoly) -> IntPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        let mut out = long.coeffs.clone();
        for (o, c) in out.iter_mut().zip(&short.coeffs) {
            *o += c;
        }
        IntPoly::from_coeffs(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;

    fn sub(self, rhs: &IntPoly) -> IntPoly {
        self + &(-rhs)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        IntPoly::from_coeffs(out)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.coeffs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn display() {
        assert_eq!(IntPoly::from_i64s(&[175, -175, 50]).to_string(), "175 - 175*t + 50*t^2");
        assert_eq!(IntPoly::from_i64s(&[0, -1, 0, 1]).to_string(), "-t + t^3");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }

    #[test]
    fn arithmetic_basics() {
        let a = IntPoly::from_i64s(&[1, 1]);
        let b = IntPoly::from_i64s(&[1, -1]);
        assert_eq!(&a * &b, IntPoly::from_i64s(&[1, 0, -1]));
        assert_eq!(&a - &a, IntPoly::zero());
        assert_eq!((&a + &b).degree(), Some(0));
        assert_eq!(IntPoly::from_i64s(&[0, 0, 3]).valuation(), Some(2));
    }

    #[test]
    fn exact_division() {
        let a = IntPoly::from_i64s(&[2, 3, 1]);
        let b = IntPoly::from_i64s(&[1, 1]);
        assert_eq!(a.div_exact(&b), Some(IntPoly::from_i64s(&[2, 1])));
        assert_eq!(IntPoly::from_i64s(&[1, 0, 1]).div_exact(&b), None);
        assert_eq!(IntPoly::from_i64s(&[1, 2]).div_exact(&IntPoly::from_i64s(&[2])), None);
    }

    #[test]
    fn one_minus_t_pow_matches_repeated_product() {
        let f = IntPoly::from_i64s(&[1, 0, -1]);
        let mut p = IntPoly::one();
        for _ in 0..5 {
            p = &p * &f;
        }
        assert_eq!(IntPoly::one_minus_t_pow(2, 5), p);
        assert_eq!(IntPoly::one_minus_t_pow(3, 0), IntPoly::one());
    }

    #[test]
    fn inflate_and_shift() {
        let p = IntPoly::from_i64s(&[1, 2, 3]);
        assert_eq!(p.inflate(2), IntPoly::from_i64s(&[1, 0, 2, 0, 3]));
        assert_eq!(IntPoly::from_i64s(&[0, 0, 5, 1]).shift_down(2), IntPoly::from_i64s(&[5, 1]));
        assert_eq!(p.eval(&BigInt::from(2)), BigInt::from(17));
    }
}
