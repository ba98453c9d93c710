//! Truncated power series with big-integer coefficients, and the binomial
//! coefficients they are built from.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// `a (a-1) ... (a-k+1) / k!` for any integer `a`; zero when `k < 0`.
pub fn binom_ext(a: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    // Classical binomial with a small lower index: use symmetry when it helps.
    let k = if a >= 0 && k > a {
        return BigInt::zero();
    } else if a >= 0 && k > a - k {
        a - k
    } else {
        k
    };
    let mut acc = BigInt::one();
    for i in 0..k {
        // binom(a, i) * (a - i) = (i + 1) * binom(a, i + 1), always exact.
        acc *= a - i;
        acc /= i + 1;
    }
    acc
}

/// Twisted binomial `[n, m] = binom(n + m, m)`, zero when `m < 0`.
pub fn twisted_binom(n: i64, m: i64) -> BigInt {
    if m < 0 {
        BigInt::zero()
    } else {
        binom_ext(n + m, m)
    }
}

/// A power series `Σ c_i t^i` known up to (excluding) `t^order`.
///
/// Series of order zero only arise as the output of [`TruncatedSeries::truncate_plus`]
/// when the very first coefficient is non-positive.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

/// Result of the `[S]_+` truncation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlusTruncation {
    pub series: TruncatedSeries,
    /// `true` when a non-positive coefficient was found within the order.
    pub terminated: bool,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries { coeffs: vec![BigInt::zero(); order] }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(BigInt::one(), order)
    }

    pub fn constant(c: BigInt, order: usize) -> Self {
        let mut s = Self::zero(order);
        if order > 0 {
            s.coeffs[0] = c;
        }
        s
    }

    /// `t^e` at the given order.
    pub fn monomial(e: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if e < order {
            s.coeffs[e] = BigInt::one();
        }
        s
    }

    /// Takes ownership of the coefficient list; the order is its length.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        TruncatedSeries { coeffs }
    }

    /// Builds a series from small integers, zero-padded or cut to `order`.
    pub fn from_i64s(values: &[i64], order: usize) -> Self {
        let mut s = Self::zero(order);
        for (c, v) in s.coeffs.iter_mut().zip(values) {
            *c = BigInt::from(*v);
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `t^i`; zero past the order.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn set_coeff(&mut self, i: usize, c: BigInt) {
        if i < self.coeffs.len() {
            self.coeffs[i] = c;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Drops every coefficient from `t^order` on.
    pub fn truncate(mut self, order: usize) -> Self {
        self.coeffs.truncate(order);
        self
    }

    pub fn scale(&self, a: &BigInt) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|c| c * a).collect() }
    }

    /// Division by `t^e`. The first `e` coefficients must vanish.
    pub fn shift_div(&self, e: usize) -> Result<Self> {
        if let Some(index) = self.coeffs.iter().take(e).position(|c| !c.is_zero()) {
            return Err(Error::Divisibility { exponent: e, index });
        }
        Ok(TruncatedSeries { coeffs: self.coeffs.iter().skip(e).cloned().collect() })
    }

    /// `[S]_+`: the prefix strictly before the first coefficient `<= 0`.
    pub fn truncate_plus(&self) -> PlusTruncation {
        match self.coeffs.iter().position(|c| !c.is_positive()) {
            Some(cut) => PlusTruncation {
                series: TruncatedSeries { coeffs: self.coeffs[..cut].to_vec() },
                terminated: true,
            },
            None => PlusTruncation { series: self.clone(), terminated: false },
        }
    }

    /// Multiplication by `1/(1-t)^k`, done as `k` running sums.
    pub fn div_one_minus_t_pow(&self, k: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        for _ in 0..k {
            for i in 1..coeffs.len() {
                let prev = coeffs[i - 1].clone();
                coeffs[i] += prev;
            }
        }
        TruncatedSeries { coeffs }
    }
}

/// Expansion of `1/(1 - t^d)^n` up to `order`: the coefficient of `t^(d u)`
/// is `binom(n - 1 + u, u)`.
pub fn geometric_inverse_pow(n: usize, d: usize, order: usize) -> TruncatedSeries {
    assert!(d >= 1, "geometric_inverse_pow needs d >= 1");
    let mut s = TruncatedSeries::zero(order);
    if n == 0 {
        if order > 0 {
            s.coeffs[0] = BigInt::one();
        }
        return s;
    }
    let mut c = BigInt::one();
    let mut u: i64 = 0;
    let mut idx = 0;
    while idx < order {
        s.coeffs[idx] = c.clone();
        // binom(n + u, u + 1) = binom(n - 1 + u, u) * (n + u) / (u + 1)
        c = c * (n as i64 + u) / (u + 1);
        u += 1;
        idx += d;
    }
    s
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        TruncatedSeries {
            coeffs: self.coeffs[..order].iter().zip(&rhs.coeffs[..order]).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        TruncatedSeries {
            coeffs: self.coeffs[..order].iter().zip(&rhs.coeffs[..order]).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        let mut out = vec![BigInt::zero(); order];
        for (i, a) in self.coeffs[..order].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..order - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        TruncatedSeries { coeffs: out }
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn neg(self) -> TruncatedSeries {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for TruncatedSeries {
            type Output = TruncatedSeries;

            fn $method(self, rhs: TruncatedSeries) -> TruncatedSeries {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Writes `c_0 + c_1*t + ...`, skipping zeros; `0` when every coefficient vanishes.
pub(crate) fn write_terms(f: &mut fmt::Formatter<'_>, coeffs: &[BigInt]) -> fmt::Result {
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if !first {
            f.write_str(if c.is_negative() { " - " } else { " + " })?;
        } else if c.is_negative() {
            f.write_str("-")?;
        }
        first = false;
        let a = c.abs();
        match i {
            0 => write!(f, "{a}")?,
            _ if a.is_one() && i == 1 => f.write_str("t")?,
            _ if a.is_one() => write!(f, "t^{i}")?,
            1 => write!(f, "{a}*t")?,
            _ => write!(f, "{a}*t^{i}")?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.coeffs)?;
        write!(f, " + O(t^{})", self.order())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn binom_oracle(a: i64, k: i64) -> BigInt {
        if k < 0 {
            return big(0);
        }
        let mut num = big(1);
        let mut den = big(1);
        for i in 0..k {
            num *= a - i;
            den *= i + 1;
        }
        num / den
    }

    #[test]
    fn binom_ext_examples() {
        assert_eq!(binom_ext(5, 2), big(10));
        assert_eq!(binom_ext(7, -1), big(0));
        assert_eq!(binom_ext(-7, -1), big(0));
        assert_eq!(binom_ext(-3, 2), big(6));
        assert_eq!(binom_oracle(-3, 2), big(6));
        assert_eq!(binom_ext(3, 5), big(0));
        assert_eq!(binom_ext(0, 0), big(1));
    }

    #[test]
    fn binom_ext_matches_product_oracle() {
        for a in -12..=12 {
            for k in -2..=12 {
                assert_eq!(binom_ext(a, k), binom_oracle(a, k), "a={a} k={k}");
            }
        }
    }

    #[test]
    fn twisted_binom_examples() {
        assert_eq!(twisted_binom(4, 1), big(5));
        assert_eq!(twisted_binom(7 - 1, 1), big(7));
        assert_eq!(twisted_binom(2, 3), big(10));
        assert_eq!(twisted_binom(2, -1), big(0));
    }

    #[test]
    fn reflection_and_twist_relations() {
        for a in 0..=10i64 {
            for k in 0..=a {
                assert_eq!(binom_ext(a, k), twisted_binom(a - k, k));
            }
        }
        for a in 1..=10i64 {
            for k in 1..=10i64 {
                let sign = if k % 2 == 0 { big(1) } else { big(-1) };
                assert_eq!(binom_ext(-a, k), sign * binom_ext(a + k - 1, k));
            }
        }
    }

    #[test]
    fn geometric_series_times_one_minus_t() {
        let one_minus_t = TruncatedSeries::from_i64s(&[1, -1], 12);
        let geo = geometric_inverse_pow(1, 1, 12);
        assert_eq!(&one_minus_t * &geo, TruncatedSeries::one(12));
        let one_plus_t = TruncatedSeries::from_i64s(&[1, 1], 5);
        assert_eq!(&one_plus_t * &one_plus_t, TruncatedSeries::from_i64s(&[1, 2, 1], 5));
    }

    #[test]
    fn geometric_inverse_pow_examples() {
        assert_eq!(geometric_inverse_pow(0, 3, 6), TruncatedSeries::one(6));
        assert_eq!(geometric_inverse_pow(1, 1, 4), TruncatedSeries::from_i64s(&[1, 1, 1, 1], 4));
        // (1/(1-t^2))^3 multiplied out naively.
        let base = geometric_inverse_pow(1, 2, 9);
        let cube = &(&base * &base) * &base;
        assert_eq!(cube.coeff(4), big(6));
        assert_eq!(geometric_inverse_pow(3, 2, 9), cube);
    }

    #[test]
    fn inverse_pow_cancels_one_minus_t_d_pow() {
        for n in 0..=10usize {
            for d in 1..=3usize {
                let mut p = TruncatedSeries::one(30);
                let factor = {
                    let mut f = TruncatedSeries::one(30);
                    f.set_coeff(d, big(-1));
                    f
                };
                for _ in 0..n {
                    p = &p * &factor;
                }
                assert_eq!(&p * &geometric_inverse_pow(n, d, 30), TruncatedSeries::one(30));
            }
        }
    }

    #[test]
    fn div_one_minus_t_pow_matches_geometric() {
        let s = TruncatedSeries::from_i64s(&[3, -1, 4, 1, -5], 10);
        assert_eq!(s.div_one_minus_t_pow(4), &s * &geometric_inverse_pow(4, 1, 10));
    }

    #[test]
    fn shift_div_examples() {
        let s = TruncatedSeries::from_i64s(&[0, 0, 1, 1], 4);
        assert_eq!(s.shift_div(2).unwrap(), TruncatedSeries::from_i64s(&[1, 1], 2));
        let bad = TruncatedSeries::from_i64s(&[1, 1], 4);
        assert_eq!(bad.shift_div(1), Err(Error::Divisibility { exponent: 1, index: 0 }));
    }

    #[test]
    fn truncate_plus_examples() {
        let s = TruncatedSeries::from_i64s(&[3, 2, 0, 5], 4);
        let p = s.truncate_plus();
        assert!(p.terminated);
        assert_eq!(p.series, TruncatedSeries::from_i64s(&[3, 2], 2));

        let p = TruncatedSeries::from_i64s(&[1, -1, 4], 3).truncate_plus();
        assert_eq!(p.series, TruncatedSeries::from_i64s(&[1], 1));

        let all = TruncatedSeries::from_i64s(&[1, 2, 3], 3);
        let p = all.truncate_plus();
        assert!(!p.terminated);
        assert_eq!(p.series, all);
    }

    #[test]
    fn display_is_readable() {
        let s = TruncatedSeries::from_i64s(&[175, -175, 50], 4);
        assert_eq!(alloc::format!("{s}"), "175 - 175*t + 50*t^2 + O(t^4)");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn series(order: usize) -> impl Strategy<Value = TruncatedSeries> {
            proptest::collection::vec(-50i64..50, order).prop_map(move |v| TruncatedSeries::from_i64s(&v, order))
        }

        fn naive_mul(a: &TruncatedSeries, b: &TruncatedSeries) -> TruncatedSeries {
            let n = a.order().min(b.order());
            let mut out = TruncatedSeries::zero(n);
            for k in 0..n {
                let mut acc = BigInt::zero();
                for i in 0..=k {
                    acc += a.coeff(i) * b.coeff(k - i);
                }
                out.set_coeff(k, acc);
            }
            out
        }

        proptest! {
            #[test]
            fn mul_commutative_associative(a in series(8), b in series(8), c in series(8)) {
                prop_assert_eq!(&a * &b, &b * &a);
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&a * &b, naive_mul(&a, &b));
            }

            #[test]
            fn truncate_plus_idempotent(a in series(10)) {
                let once = a.truncate_plus().series;
                let twice = once.truncate_plus().series;
                prop_assert_eq!(once, twice);
            }
        }
    }
}
