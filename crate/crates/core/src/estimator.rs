//! Bit-cost estimates for solving the Support-Minors and Minors systems by
//! linear algebra on their Macaulay matrices.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::hilbert::{hs_sm_generic, macaulay_cols, GmrParams, Validity};
use crate::series::binom_ext;

/// Column density used for the Wiedemann branch when `dc = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MinorsDensity {
    /// No density: the Minors system is only costed with dense linear algebra.
    DenseOnly,
    /// Number of monomials of degree `D(r+1)` in `K` variables.
    MonomialCount,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CostModel {
    pub omega: f64,
    pub c_omega: f64,
    pub c_wiedemann: f64,
    /// Added to every cost. `None` means 0 for [`complexity_at`] and
    /// `log2(log2(q)^2)` for [`complexity_hybrid`].
    pub fieldop_bits: Option<f64>,
    pub minors_density: MinorsDensity,
    /// Largest series order tried before giving up on a degree of regularity.
    pub order_cap: usize,
}

impl Default for CostModel {
    fn default() -> Self {
        CostModel {
            omega: 2.81,
            c_omega: 3.0,
            c_wiedemann: 3.0,
            fieldop_bits: None,
            minors_density: MinorsDensity::MonomialCount,
            order_cap: 512,
        }
    }
}

impl CostModel {
    pub fn validate(&self) -> Result<()> {
        if !(2.0..=3.0).contains(&self.omega) {
            return Err(Error::InvalidParams("omega must lie in [2, 3]"));
        }
        if self.c_omega <= 0.0 || self.c_wiedemann <= 0.0 {
            return Err(Error::InvalidParams("cost constants must be positive"));
        }
        if self.fieldop_bits.is_some_and(|b| b < 0.0 || !b.is_finite()) {
            return Err(Error::InvalidParams("fieldop_bits must be a non-negative number"));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    Dense,
    Wiedemann,
}

impl Strategy {
    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::Dense => "dense",
            Strategy::Wiedemann => "wiedemann",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CostPoint {
    pub log2_cost: f64,
    pub dreg: usize,
    pub strategy: Strategy,
    pub log2_cols: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexityReport {
    pub log2_cost: f64,
    pub dc_star: usize,
    pub dreg: usize,
    pub a_star: usize,
    pub strategy: Strategy,
    pub sub_params: GmrParams,
    pub validity: Validity,
}

/// One cell of the hybrid `(a, dc)` grid.
#[derive(Clone, Debug, PartialEq)]
pub struct GridPoint {
    pub a: usize,
    pub dc: usize,
    /// `None` when no admissible degree of regularity exists at this cell.
    pub cost: Option<CostPoint>,
    pub total: Option<f64>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct HybridOptions {
    /// `dc` values tried; `None` means `0..=min(10, m-r)`.
    pub dc_range: Option<Vec<usize>>,
    /// Upper bound on `a`; the admissible range is cut further by `n-a > r` and `K-am >= 1`.
    pub a_max: Option<usize>,
    /// Discard cells whose degree of regularity exceeds this.
    pub max_dreg: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub r: usize,
    pub k: usize,
    pub minors: Option<CostPoint>,
    pub sm: Option<CostPoint>,
}

/// `log2` of a positive big integer.
pub fn log2_big(x: &BigInt) -> f64 {
    assert!(x.is_positive(), "log2 of a non-positive integer");
    let bits = x.bits();
    if bits <= 1000 {
        return libm::log2(x.to_f64().expect("fits in f64"));
    }
    let shift = bits - 64;
    let top: BigInt = x >> shift;
    libm::log2(top.to_f64().expect("fits in f64")) + shift as f64
}

/// Nonzero entries per Macaulay row: `K(r+1)` for `dc = 1`, `M(1, dc)` above.
pub fn density(p: &GmrParams, dc: usize) -> BigInt {
    if dc == 1 {
        BigInt::from(p.k * (p.r + 1))
    } else {
        macaulay_cols(p, 1, dc)
    }
}

fn density_for(p: &GmrParams, dc: usize, model: &CostModel) -> Option<BigInt> {
    match (dc, model.minors_density) {
        (0, MinorsDensity::DenseOnly) => None,
        (0, MinorsDensity::MonomialCount) => {
            let deg = (p.d * (p.r + 1)) as i64;
            Some(binom_ext(p.k as i64 + deg - 1, deg))
        }
        _ => Some(density(p, dc)),
    }
}

/// Degree of regularity of `hs_sm_generic(p, dc)`, raising the order up to the cap.
pub fn reg_degree(p: &GmrParams, dc: usize, order_cap: usize) -> Result<usize> {
    let mut order = 64.min(order_cap.max(1));
    loop {
        let h = hs_sm_generic(p, dc, order)?;
        if let Some(d) = h.reg_degree {
            return Ok(d);
        }
        if order >= order_cap {
            return Err(Error::NoFiniteRegDegree { order_cap });
        }
        order = (order * 2).min(order_cap);
    }
}

/// `log2 min(c_w M^w, c D M^2) + fieldop_bits` at `M = macaulay_cols(p, dreg, dc)`.
pub fn complexity_at(p: &GmrParams, dc: usize, model: &CostModel) -> Result<CostPoint> {
    let dreg = reg_degree(p, dc, model.order_cap)?;
    let cols = macaulay_cols(p, dreg, dc);
    if !cols.is_positive() {
        return Err(Error::NoFiniteRegDegree { order_cap: model.order_cap });
    }
    let lm = log2_big(&cols);
    let ld = density_for(p, dc, model).map(|d| log2_big(&d));
    let (cost, strategy) = linear_algebra_cost(lm, ld, model);
    Ok(CostPoint { log2_cost: cost + model.fieldop_bits.unwrap_or(0.0), dreg, strategy, log2_cols: lm })
}

/// `log2 min(c_w 2^(w lm), c 2^(ld + 2 lm))` from `lm = log2 M` and `ld = log2 density`.
pub fn linear_algebra_cost(lm: f64, ld: Option<f64>, model: &CostModel) -> (f64, Strategy) {
    let dense = libm::log2(model.c_omega) + model.omega * lm;
    match ld.map(|d| libm::log2(model.c_wiedemann) + d + 2.0 * lm) {
        Some(s) if s < dense => (s, Strategy::Wiedemann),
        _ => (dense, Strategy::Dense),
    }
}

/// `log2(log2(q)^2)`, the cost of one field operation in bits.
pub fn default_fieldop_bits(q: u64) -> f64 {
    let l = libm::log2(q as f64);
    libm::log2(l * l)
}

/// Largest `a` with `n - a > r` and `K - a m >= 1`, if `a = 0` itself is admissible.
pub fn max_hybrid_columns(p: &GmrParams) -> Option<usize> {
    if p.n <= p.r || p.k < 1 {
        return None;
    }
    let by_n = p.n - p.r - 1;
    let by_k = (p.k - 1) / p.m;
    Some(by_n.min(by_k))
}

/// Every cell of the hybrid search grid, in `(a, dc)` lexicographic order.
pub fn hybrid_grid(p: &GmrParams, q: u64, model: &CostModel, opts: &HybridOptions) -> Result<Vec<GridPoint>> {
    model.validate()?;
    if q < 2 {
        return Err(Error::InvalidParams("q must be at least 2"));
    }
    let dcs: Vec<usize> = match &opts.dc_range {
        Some(v) if v.is_empty() => return Err(Error::InvalidParams("empty dc range")),
        Some(v) => v.clone(),
        None => (0..=10.min(p.m - p.r)).collect(),
    };
    let fieldop = model.fieldop_bits.unwrap_or_else(|| default_fieldop_bits(q));
    let inner = CostModel { fieldop_bits: Some(0.0), ..*model };
    let a_top = match (max_hybrid_columns(p), opts.a_max) {
        (None, _) => return Ok(Vec::new()),
        (Some(a), Some(cap)) => a.min(cap),
        (Some(a), None) => a,
    };
    let guess_bits = p.r as f64 * libm::log2(q as f64);
    let mut out = Vec::new();
    for a in 0..=a_top {
        let sub = GmrParams { n: p.n - a, k: p.k - a * p.m, ..*p };
        for &dc in &dcs {
            let cost = match complexity_at(&sub, dc, &inner) {
                Ok(c) if opts.max_dreg.map_or(true, |mx| c.dreg <= mx) => Some(c),
                Ok(_) | Err(Error::NoFiniteRegDegree { .. }) => None,
                Err(e) => return Err(e),
            };
            let total = cost.as_ref().map(|c| a as f64 * guess_bits + c.log2_cost + fieldop);
            out.push(GridPoint { a, dc, cost, total });
        }
    }
    Ok(out)
}

/// Minimum over the hybrid grid; ties go to the smallest `a`, then the smallest `dc`.
pub fn complexity_hybrid(p: &GmrParams, q: u64, model: &CostModel, opts: &HybridOptions) -> Result<ComplexityReport> {
    let grid = hybrid_grid(p, q, model, opts)?;
    best_of_grid(p, &grid).ok_or(Error::NoAdmissibleParams)
}

pub fn best_of_grid(p: &GmrParams, grid: &[GridPoint]) -> Option<ComplexityReport> {
    let mut best: Option<(&GridPoint, f64)> = None;
    for g in grid {
        if let Some(t) = g.total {
            if best.map_or(true, |(_, b)| t < b) {
                best = Some((g, t));
            }
        }
    }
    best.map(|(g, total)| {
        let c = g.cost.as_ref().expect("total implies cost");
        let sub = GmrParams { n: p.n - g.a, k: p.k - g.a * p.m, ..*p };
        ComplexityReport {
            log2_cost: total,
            dc_star: g.dc,
            dreg: c.dreg,
            a_star: g.a,
            strategy: c.strategy,
            sub_params: sub,
            validity: crate::hilbert::validity_region(&sub, g.dc),
        }
    })
}

/// Minors (`dc = 0`) and Support-Minors (`dc = 1`) costs for each `r`, with `K = k_of(r)`.
/// Rows where `K` would be zero are skipped; cells without a finite regularity are `None`.
pub fn sweep_r(
    m: usize,
    n: usize,
    rs: impl IntoIterator<Item = usize>,
    k_of: impl Fn(usize) -> usize,
    model: &CostModel,
) -> Result<Vec<SweepRow>> {
    model.validate()?;
    let mut out = Vec::new();
    for r in rs {
        let k = k_of(r);
        if k == 0 {
            continue;
        }
        let p = GmrParams::new(m, n, k, r, 1)?;
        let cell = |dc| match complexity_at(&p, dc, model) {
            Ok(c) => Ok(Some(c)),
            Err(Error::NoFiniteRegDegree { .. }) => Ok(None),
            Err(e) => Err(e),
        };
        out.push(SweepRow { r, k, minors: cell(0)?, sm: cell(1)? });
    }
    Ok(out)
}

/// `K = (m-r)(n-r) - 1`, floored at zero.
pub fn sweep_k(m: usize, n: usize, r: usize) -> usize {
    ((m - r) * (n - r)).saturating_sub(1)
}

/// Rounds to one decimal place.
pub fn round1(x: f64) -> f64 {
    libm::round(x * 10.0) / 10.0
}
