//! Comparing observed Hilbert-function values with the closed-form series.

use alloc::vec::Vec;

use num_bigint::BigInt;

use super::instance::gen_instance;
use super::macaulay::{PluckerBases, RankOptions, SmSystem};
use crate::error::Result;
use crate::hilbert::{hs_sm_generic, GmrParams};

/// Predicted value at `t^dx`: the truncated coefficient, or 0 at or beyond the cut.
/// The flag is `true` in the latter case.
pub fn predicted_hf(p: &GmrParams, dc: usize, dx: usize) -> Result<(BigInt, bool)> {
    let h = hs_sm_generic(p, dc, dx + 1)?;
    if dx < h.series.order() {
        Ok((h.series.coeff(dx), false))
    } else {
        Ok((BigInt::from(0), true))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellReport {
    pub dc: usize,
    pub dx: usize,
    pub predicted: BigInt,
    pub observed: BigInt,
    pub matched: bool,
    /// `dx` lies at or beyond the point where the series was cut.
    pub post_truncation: bool,
    pub rank: usize,
    pub ambient_dim: BigInt,
    pub rows: usize,
    pub cols: usize,
}

pub fn check_cell(sys: &SmSystem, p: &GmrParams, dx: usize, opts: &RankOptions) -> Result<CellReport> {
    let (predicted, post_truncation) = predicted_hf(p, sys.dc(), dx)?;
    let r = sys.rank_at(dx, opts)?;
    Ok(CellReport {
        dc: sys.dc(),
        dx,
        matched: predicted == r.observed_hf,
        predicted,
        observed: r.observed_hf,
        post_truncation,
        rank: r.rank,
        ambient_dim: r.ambient_dim,
        rows: r.rows,
        cols: r.cols,
    })
}

/// One instance from `seed`, checked at `dx = 1..=dx_max`.
pub fn verify_series(p: &GmrParams, q: u64, dc: usize, dx_max: usize, seed: u64, opts: &RankOptions) -> Result<Vec<CellReport>> {
    let inst = gen_instance(p, q, seed)?;
    let sys = SmSystem::new(&inst, dc, opts.rows)?;
    (1..=dx_max).map(|dx| check_cell(&sys, p, dx, opts)).collect()
}

/// Per-trial seed: SplitMix64 of the master seed offset by the trial index.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialOutcome {
    pub index: u64,
    pub seed: u64,
    pub cells: Vec<CellReport>,
    /// Every cell matched.
    pub matched: bool,
}

pub fn run_trial(p: &GmrParams, q: u64, dcs: &[usize], dx: usize, index: u64, seed: u64, opts: &RankOptions) -> Result<TrialOutcome> {
    let field = super::field::Fp::new(q)?;
    let bases = PluckerBases::new(p.n, p.r, dcs.iter().copied().max().unwrap_or(1), field);
    run_trial_with(&bases, p, q, dcs, dx, index, seed, opts)
}

/// [`run_trial`] with Plücker bases built once for many trials.
#[allow(clippy::too_many_arguments)]
pub fn run_trial_with(
    bases: &PluckerBases,
    p: &GmrParams,
    q: u64,
    dcs: &[usize],
    dx: usize,
    index: u64,
    seed: u64,
    opts: &RankOptions,
) -> Result<TrialOutcome> {
    let inst = gen_instance(p, q, seed)?;
    let mut cells = Vec::with_capacity(dcs.len());
    for &dc in dcs {
        let sys = bases.system(&inst, dc, opts.rows)?;
        cells.push(check_cell(&sys, p, dx, opts)?);
    }
    let matched = cells.iter().all(|c| c.matched);
    Ok(TrialOutcome { index, seed, cells, matched })
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrialsReport {
    pub trials: usize,
    pub matched: usize,
    pub fraction: f64,
    /// Matches per `dc`, aligned with the requested `dc` list.
    pub per_dc_matched: Vec<usize>,
    pub log: Vec<TrialOutcome>,
}

pub fn summarize(dcs: &[usize], log: Vec<TrialOutcome>) -> TrialsReport {
    let trials = log.len();
    let matched = log.iter().filter(|t| t.matched).count();
    let per_dc_matched = (0..dcs.len()).map(|i| log.iter().filter(|t| t.cells[i].matched).count()).collect();
    TrialsReport { trials, matched, fraction: matched as f64 / trials.max(1) as f64, per_dc_matched, log }
}

/// Serial genericity experiment; trial `i` uses `derive_seed(seed, i)`.
pub fn genericity_trials(
    p: &GmrParams,
    q: u64,
    dcs: &[usize],
    dx: usize,
    trials: usize,
    seed: u64,
    opts: &RankOptions,
) -> Result<TrialsReport> {
    let field = super::field::Fp::new(q)?;
    let bases = PluckerBases::new(p.n, p.r, dcs.iter().copied().max().unwrap_or(1), field);
    let log = (0..trials as u64)
        .map(|i| run_trial_with(&bases, p, q, dcs, dx, i, derive_seed(seed, i), opts))
        .collect::<Result<Vec<_>>>()?;
    Ok(summarize(dcs, log))
}
