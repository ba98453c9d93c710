//! Hilbert series of the Support-Minors system for generic instances.
//!
//! Four engines compute the series of the determinantal module in the `U`
//! variables: a partition sum ([`hs_naive`]) and three determinant forms
//! ([`hs_delta`], [`hs_b`], [`hs_a`]). [`hs_sm_generic`] assembles the
//! series of the full bihomogeneous system from the `A` form.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::combinatorics::{partitions, stab, Shape};
use crate::det::{det_bigint, det_poly, series_matrix_det};
use crate::error::{Error, Result};
use crate::poly::IntPoly;
use crate::series::{binom_ext, geometric_inverse_pow, twisted_binom, TruncatedSeries};

/// One Generalized MinRank family: an `m x n` matrix of degree-`d` forms in
/// `k` variables, target rank `r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GmrParams {
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub d: usize,
}

impl GmrParams {
    /// `r = 0` is accepted; it degenerates to `mn` generic equations.
    pub fn new(m: usize, n: usize, k: usize, r: usize, d: usize) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidParams("m and n must be at least 1"));
        }
        if k == 0 {
            return Err(Error::InvalidParams("K must be at least 1"));
        }
        if d == 0 {
            return Err(Error::InvalidParams("D must be at least 1"));
        }
        if r > m.min(n) {
            return Err(Error::InvalidParams("r must not exceed min(m, n)"));
        }
        Ok(GmrParams { m, n, k, r, d })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Validity {
    /// `K >= m(n-r)`.
    Proven,
    /// `K <= (m-r)(n-r)`.
    ConjecturedOverdetermined,
    /// In between, with `dc <= m-r`.
    ConjecturedDcSmall,
    /// In between, with `dc > m-r`: known counterexamples exist.
    Unreliable,
}

impl Validity {
    pub fn as_str(self) -> &'static str {
        match self {
            Validity::Proven => "proven",
            Validity::ConjecturedOverdetermined => "conjectured_overdetermined",
            Validity::ConjecturedDcSmall => "conjectured_dc_small",
            Validity::Unreliable => "unreliable",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertResult {
    /// `[S]_+`.
    pub series: TruncatedSeries,
    pub terminated: bool,
    /// Length of the retained prefix, present iff `terminated`.
    pub reg_degree: Option<usize>,
    pub validity: Validity,
    /// The series before truncation, at the requested order.
    pub raw: TruncatedSeries,
    /// `S = numerator / (1-t)^denominator_power`, with common `(1-t)` factors cancelled.
    pub numerator: IntPoly,
    pub denominator_power: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Dimensions {
    pub krull_s: usize,
    pub height_s: usize,
    pub plucker_dim: usize,
}

fn choose2(r: usize) -> usize {
    r * r.saturating_sub(1) / 2
}

fn i(x: usize) -> i64 {
    x as i64
}

/// `Σ_{v ⊢ du, r parts} stab(m, v) stab(n, v + dc)` as the coefficient of `t^du`.
pub fn hs_naive(m: usize, n: usize, r: usize, dc: usize, order: usize) -> TruncatedSeries {
    let coeffs = (0..order)
        .map(|du| {
            partitions(du, r)
                .iter()
                .map(|v| {
                    let left = stab(m, v);
                    if left.is_zero() {
                        left
                    } else {
                        left * stab(n, &v.shifted(dc))
                    }
                })
                .sum()
        })
        .collect();
    TruncatedSeries::from_coeffs(coeffs)
}

fn series_det_or_one(mat: Vec<Vec<TruncatedSeries>>, order: usize) -> TruncatedSeries {
    if mat.is_empty() {
        TruncatedSeries::one(order)
    } else {
        series_matrix_det(&mat)
    }
}

/// `det Δ` with `Δ[i][j] = Σ_l [m-i, l] [n-j, l+dc+j-i] t^l`.
pub fn hs_delta(m: usize, n: usize, r: usize, dc: usize, order: usize) -> TruncatedSeries {
    let (m, n, dc) = (i(m), i(n), i(dc));
    let mat = (1..=i(r))
        .map(|a| {
            (1..=i(r))
                .map(|b| {
                    let c = (0..order)
                        .map(|l| twisted_binom(m - a, i(l)) * twisted_binom(n - b, i(l) + dc + b - a))
                        .collect();
                    TruncatedSeries::from_coeffs(c)
                })
                .collect()
        })
        .collect();
    series_det_or_one(mat, order)
}

/// `det B / (1-t)^((m+n-r)r)` with `B[i][j] = Σ_l C(n+dc-i, l+dc+j-i) C(m-dc-j, l) t^l`.
pub fn hs_b(m: usize, n: usize, r: usize, dc: usize, order: usize) -> TruncatedSeries {
    let (mi, ni, dci) = (i(m), i(n), i(dc));
    let mat = (1..=i(r))
        .map(|a| {
            (1..=i(r))
                .map(|b| {
                    let c = (0..order)
                        .map(|l| binom_ext(ni + dci - a, i(l) + dci + b - a) * binom_ext(mi - dci - b, i(l)))
                        .collect();
                    TruncatedSeries::from_coeffs(c)
                })
                .collect()
        })
        .collect();
    let det = series_det_or_one(mat, order);
    &det * &geometric_inverse_pow((m + n - r) * r, 1, order)
}

/// Entry `A_dc[i][j] = Σ_l C(n+dc-i, l+dc) C(m-dc-j, l) t^l` (1-based); a polynomial of degree `<= n-i`.
pub fn a_entry(m: usize, n: usize, dc: usize, a: usize, b: usize) -> IntPoly {
    let (mi, ni, dci) = (i(m), i(n), i(dc));
    let top = n.saturating_sub(a);
    IntPoly::from_coeffs(
        (0..=top).map(|l| binom_ext(ni + dci - i(a), i(l) + dci) * binom_ext(mi - dci - i(b), i(l))).collect(),
    )
}

pub fn a_matrix(m: usize, n: usize, r: usize, dc: usize) -> Vec<Vec<IntPoly>> {
    (1..=r).map(|a| (1..=r).map(|b| a_entry(m, n, dc, a, b)).collect()).collect()
}

/// `det A / (t^C(r,2) (1-t)^((m+n-r)r))`, with the determinant taken over series.
pub fn hs_a(m: usize, n: usize, r: usize, dc: usize, order: usize) -> Result<TruncatedSeries> {
    let shift = choose2(r);
    let work = order + shift + 1;
    let mat = a_matrix(m, n, r, dc).iter().map(|row| row.iter().map(|p| p.to_series(work)).collect()).collect();
    let det = series_det_or_one(mat, work).shift_div(shift)?.truncate(order);
    Ok(&det * &geometric_inverse_pow((m + n - r) * r, 1, order))
}

/// Series of the determinantal Support-Minors module in the `U` variables.
pub fn hs_det_sm(m: usize, n: usize, r: usize, dc: usize, order: usize) -> Result<TruncatedSeries> {
    hs_a(m, n, r, dc, order)
}

/// `det A_dc(t) / t^C(r,2)` as an exact polynomial.
pub fn reduced_det_a(m: usize, n: usize, r: usize, dc: usize) -> Result<IntPoly> {
    let shift = choose2(r);
    let det = det_poly(a_matrix(m, n, r, dc));
    if let Some(v) = det.valuation() {
        if v < shift {
            return Err(Error::Divisibility { exponent: shift, index: v });
        }
    }
    Ok(det.shift_down(shift))
}

/// Numerator `N` and power `k` with `HS = N / (1-t)^k`, after cancelling `(1-t)` factors.
pub fn sm_rational_form(p: &GmrParams, dc: usize) -> Result<(IntPoly, usize)> {
    let GmrParams { m, n, k, r, d } = *p;
    debug_assert_eq!(m * n - (m + n - r) * r, (m - r) * (n - r));
    let det = reduced_det_a(m, n, r, dc)?;
    let mut num = &det.inflate(d) * &IntPoly::one_minus_t_pow(d, (m - r) * (n - r));
    let mut pow = k;
    let one_minus_t = IntPoly::from_i64s(&[1, -1]);
    while pow > 0 && !num.is_zero() && num.eval(&BigInt::from(1)).is_zero() {
        num = num.div_exact(&one_minus_t).expect("root at t = 1");
        pow -= 1;
    }
    Ok((num, pow))
}

/// `[det A_dc(t^D) (1-t^D)^((m-r)(n-r)) / (t^(D C(r,2)) (1-t)^K)]_+`.
pub fn hs_sm_generic(p: &GmrParams, dc: usize, order: usize) -> Result<HilbertResult> {
    let (numerator, denominator_power) = sm_rational_form(p, dc)?;
    let raw = numerator.to_series(order).div_one_minus_t_pow(denominator_power);
    let plus = raw.truncate_plus();
    let reg_degree = plus.terminated.then(|| plus.series.order());
    Ok(HilbertResult {
        series: plus.series,
        terminated: plus.terminated,
        reg_degree,
        validity: validity_region(p, dc),
        raw,
        numerator,
        denominator_power,
    })
}

/// Rank of the degree-`dc` part of the Plücker coordinate ring: `det([n-j, dc+j-i])`.
pub fn module_rank(n: usize, r: usize, dc: usize) -> BigInt {
    stab(n, &Shape::rectangle(dc, r))
}

/// Second determinant form of the module rank, `det(C(n+dc-i, n-j))`.
pub fn module_rank_alt(n: usize, r: usize, dc: usize) -> BigInt {
    let (ni, dci) = (i(n), i(dc));
    det_bigint(
        (1..=i(r)).map(|a| (1..=i(r)).map(|b| binom_ext(ni + dci - a, ni - b)).collect()).collect(),
    )
}

/// Columns of the Macaulay matrix in bidegree `(dx, dc)`.
pub fn macaulay_cols(p: &GmrParams, dx: usize, dc: usize) -> BigInt {
    binom_ext(i(p.k + dx) - 1, i(dx)) * module_rank_alt(p.n, p.r, dc)
}

pub fn dimensions(p: &GmrParams) -> Dimensions {
    let GmrParams { m, n, r, .. } = *p;
    Dimensions { krull_s: r * (m + n - r) + 1, height_s: m * (n - r), plucker_dim: r * (n - r) + 1 }
}

pub fn validity_region(p: &GmrParams, dc: usize) -> Validity {
    let GmrParams { m, n, k, r, .. } = *p;
    if k >= m * (n - r) {
        Validity::Proven
    } else if k <= (m - r) * (n - r) {
        Validity::ConjecturedOverdetermined
    } else if dc <= m - r {
        Validity::ConjecturedDcSmall
    } else {
        Validity::Unreliable
    }
}

/// True when every coefficient is non-negative.
pub fn is_nonnegative(s: &TruncatedSeries) -> bool {
    s.coeffs().iter().all(|c| !c.is_negative())
}
