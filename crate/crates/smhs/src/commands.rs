//! One function per subcommand, each producing a [`Report`].

use std::time::Instant;

use rayon::prelude::*;
use serde_json::{json, Value};
use smhs_core::combinatorics::{
    check_combi_identity, check_saalschutz, enumerate_tableaux, partitions, stab,
};
use smhs_core::estimator::{best_of_grid, sweep_k, hybrid_grid, sweep_r, CostModel, HybridOptions};
use smhs_core::ff::verify::{check_cell, summarize};
use smhs_core::ff::{derive_seed, gen_instance, CellReport, Fp, PluckerBases, RankOptions, RowSelection, TrialOutcome};
use smhs_core::hilbert::{hs_sm_generic, module_rank, module_rank_alt};
use smhs_core::{BigInt, Error, GmrParams};

use crate::config::{Command, Options, RunConfig};
use crate::report::{big, bigs, cell, opt_cell, record, Report, Table};

#[derive(Debug)]
pub enum RunError {
    /// Bad flags or parameters; exit status 1.
    Usage(String),
    /// The computation itself failed; exit status 2.
    Compute(String),
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RunError::Usage(m) => write!(f, "usage error: {m}"),
            RunError::Compute(m) => write!(f, "error: {m}"),
        }
    }
}

impl std::error::Error for RunError {}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParams(_) | Error::NotPrime(_) => RunError::Usage(e.to_string()),
            _ => RunError::Compute(e.to_string()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// Some verified cell disagreed with the prediction.
    Mismatch,
    /// An identity sweep found a counterexample.
    IdentityFailure,
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Report,
    pub status: Status,
}

pub type RunResult = Result<Outcome, RunError>;

pub fn run(cfg: &RunConfig) -> RunResult {
    let o = &cfg.opts;
    match cfg.command {
        Command::Hilbert => hilbert(o),
        Command::Estimate => estimate(o),
        Command::SweepR => sweep(o),
        Command::Verify => verify(o),
        Command::Trials => trials(o),
        Command::Identities => identities(),
    }
}

/// `K` defaults to `m(n-r)`, the smallest value of the proven region.
fn params(o: &Options) -> Result<GmrParams, RunError> {
    if o.r > o.m.min(o.n) {
        return Err(RunError::Usage("r must not exceed min(m, n)".into()));
    }
    let k = o.k.unwrap_or(o.m * (o.n - o.r));
    Ok(GmrParams::new(o.m, o.n, k, o.r, o.d)?)
}

fn params_json(p: &GmrParams) -> Value {
    json!({"m": p.m, "n": p.n, "K": p.k, "r": p.r, "D": p.d})
}

fn params_cells(p: &GmrParams) -> Vec<String> {
    [p.m, p.n, p.k, p.r, p.d].iter().map(|v| v.to_string()).collect()
}

fn model(o: &Options) -> Result<CostModel, RunError> {
    let m = CostModel {
        omega: o.omega,
        c_omega: o.c_omega,
        c_wiedemann: o.c_wiedemann,
        fieldop_bits: o.fieldop_bits,
        ..CostModel::default()
    };
    m.validate()?;
    Ok(m)
}

fn ok(report: Report) -> RunResult {
    Ok(Outcome { report, status: Status::Ok })
}

pub fn hilbert(o: &Options) -> RunResult {
    let p = params(o)?;
    let dc = o.dc.unwrap_or(1);
    let h = hs_sm_generic(&p, dc, o.order)?;
    let numerator = h.numerator.coeffs().to_vec();
    let json = record(
        "hilbert",
        json!({
            "params": params_json(&p),
            "dc": dc,
            "order": o.order,
            "series": bigs(h.series.coeffs()),
            "terminated": h.terminated,
            "reg_degree": h.reg_degree,
            "validity": h.validity.as_str(),
            "raw": bigs(h.raw.coeffs()),
            "numerator": bigs(&numerator),
            "denominator_power": h.denominator_power,
        }),
    );
    let mut table = Table::new(&["index", "series", "raw", "numerator", "denominator_power", "reg_degree", "validity"]);
    let len = h.raw.order().max(numerator.len());
    let get = |v: &[BigInt], i: usize| v.get(i).map(|x| x.to_string()).unwrap_or_default();
    for i in 0..len {
        table.push(vec![
            i.to_string(),
            get(h.series.coeffs(), i),
            get(h.raw.coeffs(), i),
            get(&numerator, i),
            h.denominator_power.to_string(),
            opt_cell(h.reg_degree),
            h.validity.as_str().into(),
        ]);
    }
    let notes = vec![format!("HS = [({}) / (1-t)^{}]_+", h.numerator, h.denominator_power)];
    ok(Report { json, table, notes })
}

pub fn estimate(o: &Options) -> RunResult {
    let p = params(o)?;
    let q = o.q.ok_or_else(|| RunError::Usage("estimate needs --q".into()))?;
    let model = model(o)?;
    let dc_range = match (o.dc, o.dc_max) {
        (Some(dc), _) => Some(vec![dc]),
        (None, Some(top)) => Some((0..=top).collect()),
        (None, None) => None,
    };
    let hopts = HybridOptions { dc_range, a_max: o.a_max, max_dreg: o.max_dreg };
    let grid = hybrid_grid(&p, q, &model, &hopts)?;
    let best = best_of_grid(&p, &grid).ok_or(RunError::Compute(Error::NoAdmissibleParams.to_string()))?;
    let fieldop = o.fieldop_bits.unwrap_or_else(|| smhs_core::estimator::default_fieldop_bits(q));
    let mut fields = json!({
        "params": params_json(&p),
        "q": q,
        "log2_cost": best.log2_cost,
        "a": best.a_star,
        "dc": best.dc_star,
        "dreg": best.dreg,
        "strategy": best.strategy.as_str(),
        "sub_params": params_json(&best.sub_params),
        "validity": best.validity.as_str(),
        "fieldop_bits": fieldop,
    });
    let mut table = Table::new(&["kind", "a", "dc", "dreg", "strategy", "log2_cost"]);
    table.push(vec![
        "best".into(),
        best.a_star.to_string(),
        best.dc_star.to_string(),
        best.dreg.to_string(),
        best.strategy.as_str().into(),
        cell(&json!(best.log2_cost)),
    ]);
    if o.verbose {
        let cells: Vec<Value> = grid
            .iter()
            .map(|g| {
                json!({
                    "a": g.a,
                    "dc": g.dc,
                    "dreg": g.cost.as_ref().map(|c| c.dreg),
                    "strategy": g.cost.as_ref().map(|c| c.strategy.as_str()),
                    "log2_cost": g.total,
                })
            })
            .collect();
        for c in &cells {
            table.push(vec![
                "grid".into(),
                cell(&c["a"]),
                cell(&c["dc"]),
                cell(&c["dreg"]),
                cell(&c["strategy"]),
                cell(&c["log2_cost"]),
            ]);
        }
        fields["grid"] = Value::Array(cells);
    }
    let notes = vec![format!(
        "sub-system (m, n, K, r) = ({}, {}, {}, {}), validity {}",
        best.sub_params.m,
        best.sub_params.n,
        best.sub_params.k,
        best.sub_params.r,
        best.validity.as_str()
    )];
    ok(Report { json: record("estimate", fields), table, notes })
}

pub fn sweep(o: &Options) -> RunResult {
    if o.m == 0 || o.n == 0 {
        return Err(RunError::Usage("m and n must be at least 1".into()));
    }
    let model = model(o)?;
    let (m, n, fixed) = (o.m, o.n, o.k);
    let top = m.min(n);
    let rows = sweep_r(m, n, 1..=top, |r| fixed.unwrap_or_else(|| sweep_k(m, n, r)), &model)?;
    let mut table = Table::new(&["r", "minors_cost", "sm_cost", "minors_dreg", "sm_dreg"]);
    let mut records = Vec::new();
    for row in &rows {
        let v = json!({
            "r": row.r,
            "minors_cost": row.minors.as_ref().map(|c| c.log2_cost),
            "sm_cost": row.sm.as_ref().map(|c| c.log2_cost),
            "minors_dreg": row.minors.as_ref().map(|c| c.dreg),
            "sm_dreg": row.sm.as_ref().map(|c| c.dreg),
        });
        table.push(["r", "minors_cost", "sm_cost", "minors_dreg", "sm_dreg"].iter().map(|k| cell(&v[k])).collect());
        records.push(record("sweep_r", v));
    }
    let mut notes = Vec::new();
    for r in 1..=top {
        if !rows.iter().any(|row| row.r == r) {
            notes.push(format!("r = {r} skipped: K = 0"));
        }
    }
    for row in &rows {
        if row.minors.is_none() || row.sm.is_none() {
            notes.push(format!("r = {}: no finite degree of regularity for some series", row.r));
        }
    }
    if let Some(q) = o.q {
        notes.push(format!("q = {q} (recorded only)"));
    }
    ok(Report { json: Value::Array(records), table, notes })
}

const CELL_HEADERS: [&str; 17] = [
    "m", "n", "K", "r", "D", "q", "seed", "dc", "dx", "ambient_dim", "rank", "observed_hf", "predicted", "match",
    "post_truncation", "rows", "elapsed_ms",
];

fn cell_json(p: &GmrParams, q: u64, seed: u64, c: &CellReport, elapsed_ms: u128) -> Value {
    json!({
        "params": params_json(p),
        "q": q,
        "seed": seed,
        "dc": c.dc,
        "dx": c.dx,
        "ambient_dim": big(&c.ambient_dim),
        "rank": c.rank,
        "observed_hf": big(&c.observed),
        "predicted": big(&c.predicted),
        "match": c.matched,
        "post_truncation": c.post_truncation,
        "rows": c.rows,
        "elapsed_ms": elapsed_ms as u64,
    })
}

fn cell_row(p: &GmrParams, v: &Value) -> Vec<String> {
    let mut row = params_cells(p);
    row.extend(CELL_HEADERS[5..].iter().map(|k| cell(&v[k])));
    row
}

fn rank_options(o: &Options) -> RankOptions {
    RankOptions { max_cols: o.max_cols, rows: RowSelection::Reduced, ..RankOptions::default() }
}

fn verifier_dcs(o: &Options) -> Result<Vec<usize>, RunError> {
    let dcs: Vec<usize> = match (o.dc, o.dc_max) {
        (Some(dc), _) => vec![dc],
        (None, top) => (1..=top.unwrap_or(3)).collect(),
    };
    if dcs.is_empty() || dcs.contains(&0) {
        return Err(RunError::Usage("the verifier needs dc >= 1".into()));
    }
    Ok(dcs)
}

pub fn verify(o: &Options) -> RunResult {
    let p = params(o)?;
    let q = o.q.unwrap_or(31);
    let dcs = verifier_dcs(o)?;
    let opts = rank_options(o);
    let inst = gen_instance(&p, q, o.seed)?;
    let bases = PluckerBases::new(p.n, p.r, dcs[dcs.len() - 1], Fp::new(q)?);
    let mut records = Vec::new();
    let mut table = Table::new(&CELL_HEADERS);
    let mut mismatches = 0;
    for &dc in &dcs {
        let sys = bases.system(&inst, dc, opts.rows)?;
        for dx in 1..=o.dx_max {
            let start = Instant::now();
            let c = check_cell(&sys, &p, dx, &opts)?;
            let ms = start.elapsed().as_millis();
            if o.verbose {
                eprintln!("dc={dc} dx={dx}: observed {} predicted {} ({ms} ms)", c.observed, c.predicted);
            }
            mismatches += usize::from(!c.matched);
            let v = cell_json(&p, q, o.seed, &c, ms);
            table.push(cell_row(&p, &v));
            records.push(record("verify", v));
        }
    }
    let total = records.len();
    let notes = vec![format!("{} of {total} cells match", total - mismatches)];
    let status = if mismatches > 0 { Status::Mismatch } else { Status::Ok };
    Ok(Outcome { report: Report { json: Value::Array(records), table, notes }, status })
}

struct TrialSetup<'a> {
    p: GmrParams,
    q: u64,
    dcs: &'a [usize],
    dx: usize,
    bases: PluckerBases,
    opts: RankOptions,
}

fn one_trial(s: &TrialSetup, index: u64, seed: u64) -> smhs_core::error::Result<(TrialOutcome, Vec<u128>)> {
    let TrialSetup { p, q, dcs, dx, .. } = *s;
    let (p, opts) = (&p, &s.opts);
    let inst = gen_instance(p, q, seed)?;
    let mut cells = Vec::new();
    let mut times = Vec::new();
    for &dc in dcs {
        let start = Instant::now();
        let sys = s.bases.system(&inst, dc, opts.rows)?;
        cells.push(check_cell(&sys, p, dx, opts)?);
        times.push(start.elapsed().as_millis());
    }
    let matched = cells.iter().all(|c| c.matched);
    Ok((TrialOutcome { index, seed, cells, matched }, times))
}

pub fn trials(o: &Options) -> RunResult {
    let p = params(o)?;
    let q = o.q.unwrap_or(31);
    let dcs = verifier_dcs(o)?;
    if o.trials == 0 {
        return Err(RunError::Usage("--trials must be at least 1".into()));
    }
    let bases = PluckerBases::new(p.n, p.r, dcs[dcs.len() - 1], Fp::new(q)?);
    let setup = TrialSetup { p, q, dcs: &dcs, dx: o.dx, bases, opts: rank_options(o) };
    let results = (0..o.trials as u64)
        .into_par_iter()
        .map(|i| {
            let r = one_trial(&setup, i, derive_seed(o.seed, i));
            if o.verbose {
                if let Ok((t, _)) = &r {
                    eprintln!("trial {i} seed {}: {}", t.seed, if t.matched { "match" } else { "MISMATCH" });
                }
            }
            r
        })
        .collect::<smhs_core::error::Result<Vec<_>>>()?;
    let mut table = Table::new(&[&["trial"][..], &CELL_HEADERS].concat());
    let mut cells = Vec::new();
    let mut log = Vec::new();
    for (t, times) in results {
        for (c, ms) in t.cells.iter().zip(&times) {
            let mut v = cell_json(&p, q, t.seed, c, *ms);
            let mut row = vec![t.index.to_string()];
            row.extend(cell_row(&p, &v));
            table.push(row);
            v["trial"] = json!(t.index);
            cells.push(v);
        }
        log.push(t);
    }
    let rep = summarize(&dcs, log);
    let failures: Vec<u64> = rep.log.iter().filter(|t| !t.matched).map(|t| t.seed).collect();
    let json = record(
        "trials",
        json!({
            "params": params_json(&p),
            "q": q,
            "seed": o.seed,
            "dcs": dcs,
            "dx": o.dx,
            "trials": rep.trials,
            "matched": rep.matched,
            "fraction": rep.fraction,
            "per_dc_matched": rep.per_dc_matched,
            "failed_seeds": failures,
            "cells": cells,
        }),
    );
    let notes = vec![format!("{} of {} trials match (fraction {:.4})", rep.matched, rep.trials, rep.fraction)];
    ok(Report { json, table, notes })
}

/// Exhaustive small-range checks of the binomial identities and tableau counts.
pub fn identities() -> RunResult {
    let mut checks: Vec<(&str, usize, Vec<String>)> = Vec::new();
    let (mut n, mut bad) = (0, Vec::new());
    for a in -6..=6 {
        for b in -6..=6 {
            for f in -3..=6 {
                for l in 0..=6 {
                    n += 1;
                    if !check_saalschutz(a, b, f, l) {
                        bad.push(format!("a={a} b={b} f={f} l={l}"));
                    }
                }
            }
        }
    }
    checks.push(("saalschutz", n, bad));
    let (mut n, mut bad) = (0, Vec::new());
    for i in 1..=8 {
        for a in -8..=8 {
            for b in 1..=8 {
                n += 1;
                if !check_combi_identity(i, a, b) {
                    bad.push(format!("i={i} a={a} b={b}"));
                }
            }
        }
    }
    checks.push(("combi", n, bad));
    let (mut n, mut bad) = (0, Vec::new());
    for bound in 0..=6 {
        for deg in 0..=6 {
            for shape in partitions(deg, deg) {
                n += 1;
                let count = enumerate_tableaux(bound, &shape).map(|v| v.len());
                if count.map(BigInt::from) != Ok(stab(bound, &shape)) {
                    bad.push(format!("bound={bound} shape={:?}", shape.parts()));
                }
            }
        }
    }
    checks.push(("stab_enumeration", n, bad));
    let (mut n, mut bad) = (0, Vec::new());
    for nn in 1..=6 {
        for r in 1..=nn.min(3) {
            for dc in 0..=3 {
                n += 1;
                if module_rank(nn, r, dc) != module_rank_alt(nn, r, dc) {
                    bad.push(format!("n={nn} r={r} dc={dc}"));
                }
            }
        }
    }
    checks.push(("module_rank_forms", n, bad));

    let mut table = Table::new(&["identity", "cases", "failures"]);
    let mut records = Vec::new();
    let mut failed = false;
    for (name, cases, bad) in &checks {
        failed |= !bad.is_empty();
        table.push(vec![name.to_string(), cases.to_string(), bad.len().to_string()]);
        records.push(record("identity", json!({"identity": name, "cases": cases, "failures": bad.len(), "counterexamples": bad})));
    }
    let status = if failed { Status::IdentityFailure } else { Status::Ok };
    Ok(Outcome { report: Report { json: Value::Array(records), table, notes: Vec::new() }, status })
}
