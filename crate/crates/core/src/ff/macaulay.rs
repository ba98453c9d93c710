//! Support-Minors Macaulay matrices and their ranks.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::field::Fp;
use super::instance::{sm_equations, Instance};
use super::matrix::{Echelon, SparseRow};
use super::plucker::{binom_usize, multisets, PluckerBasis};
use crate::error::{Error, Result};
use crate::hilbert::module_rank;
use crate::series::binom_ext;

/// Which multiplier rows build the matrix in bidegree `(dx, dc)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowSelection {
    /// Every equation times every monomial of bidegree `(dx-1, dc-1)`.
    Full,
    /// Equations times basis monomials of degree `dc-1`, keeping a linearly
    /// independent subset in bidegree `(1, dc)` before multiplying by `x`-monomials.
    /// Spans the same row space as `Full`.
    Reduced,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankOptions {
    pub max_cols: usize,
    /// Bound on stored echelon entries (8 bytes each).
    pub max_fill: usize,
    pub rows: RowSelection,
}

impl Default for RankOptions {
    fn default() -> Self {
        RankOptions { max_cols: 200_000, max_fill: 400_000_000, rows: RowSelection::Reduced }
    }
}

/// Column labels in bidegree `(dx, dc)`: `x`-monomials (graded lex) times Plücker basis monomials.
#[derive(Clone, Debug)]
pub struct MonomialIndex {
    pub dx: usize,
    pub dc: usize,
    /// Exponent vectors over the `K` variables, graded lexicographic.
    pub x_monomials: Vec<Vec<u16>>,
    /// Basis monomials in the Plücker variables.
    pub c_monomials: Vec<Vec<u16>>,
}

impl MonomialIndex {
    pub fn new(k: usize, dx: usize, basis: &PluckerBasis) -> Self {
        let x_monomials = multisets(k, dx).iter().map(|m| exponents(m, k)).collect();
        let c_monomials = basis.basis.iter().map(|&i| basis.monomials[i].clone()).collect();
        MonomialIndex { dx, dc: basis.dc, x_monomials, c_monomials }
    }

    pub fn cols(&self) -> usize {
        self.x_monomials.len() * self.c_monomials.len()
    }

    /// Column of `x^alpha * b_t`.
    pub fn col(&self, alpha: usize, t: usize) -> usize {
        alpha * self.c_monomials.len() + t
    }
}

fn exponents(multiset: &[u16], k: usize) -> Vec<u16> {
    let mut e = alloc::vec![0u16; k];
    for &v in multiset {
        e[v as usize] += 1;
    }
    e
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MacaulayRank {
    pub dx: usize,
    pub dc: usize,
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    pub ambient_dim: BigInt,
    pub observed_hf: BigInt,
}

/// An instance together with the Plücker data for one `dc`.
pub struct SmSystem {
    inst: Instance,
    field: Fp,
    dc: usize,
    basis: PluckerBasis,
    /// Rows in bidegree `(1, dc)`, columns `k * R + t`.
    base_rows: Vec<SparseRow>,
    /// Positions in `base_rows` of the rows multiplied by `x`-monomials.
    independent: Vec<usize>,
    /// Rank in bidegree `(1, dc)`.
    base_rank: usize,
}

impl SmSystem {
    pub fn new(inst: &Instance, dc: usize, selection: RowSelection) -> Result<Self> {
        let p = inst.params;
        if dc == 0 {
            return Err(Error::InvalidParams("the verifier needs dc >= 1"));
        }
        let field = inst.field();
        let basis = PluckerBasis::new(p.n, p.r, dc, field);
        let lower = PluckerBasis::new(p.n, p.r, dc - 1, field);
        Self::from_bases(inst, basis, &lower, selection)
    }

    /// Like [`SmSystem::new`] with precomputed Plücker bases in degrees `dc` and `dc - 1`.
    pub fn from_bases(inst: &Instance, basis: PluckerBasis, lower: &PluckerBasis, selection: RowSelection) -> Result<Self> {
        let p = inst.params;
        let field = inst.field();
        let dc = basis.dc;
        if dc == 0 || lower.dc + 1 != dc || basis.q != field.q() || lower.q != field.q() || (basis.n, basis.r) != (p.n, p.r) || (lower.n, lower.r) != (p.n, p.r) {
            return Err(Error::InvalidParams("Plücker bases do not fit the instance"));
        }
        // Sparser rows with more distinct leading columns; same Hilbert function.
        let normal = inst.with_unit_entries();
        let multipliers: Vec<&Vec<u16>> = match selection {
            RowSelection::Full => lower.monomials.iter().collect(),
            RowSelection::Reduced => lower.basis.iter().map(|&i| &lower.monomials[i]).collect(),
        };
        let big_r = basis.rank() as u32;
        let mut base_rows = Vec::new();
        let mut product_cache: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for eq in sm_equations(&p) {
            for (bi, beta) in multipliers.iter().enumerate() {
                let mut entries = Vec::new();
                for term in &eq.terms {
                    let mono = *product_cache.entry((term.plucker, bi)).or_insert_with(|| {
                        let mut m: Vec<u16> = (*beta).clone();
                        m.push(term.plucker as u16);
                        m.sort_unstable();
                        basis.monomial_index(&m)
                    });
                    let fx = normal.entry(eq.row, term.col);
                    for &(t, mu) in &basis.coords[mono] {
                        let mu = if term.negative { field.neg(mu) } else { mu };
                        for (k, &a) in fx.iter().enumerate() {
                            if a != 0 {
                                entries.push((k as u32 * big_r + t, field.mul(a, mu)));
                            }
                        }
                    }
                }
                base_rows.push(SparseRow::from_unsorted(entries, field));
            }
        }
        let mut ech = Echelon::new(p.k * big_r as usize, field, usize::MAX);
        let mut order: Vec<usize> = (0..base_rows.len()).collect();
        order.sort_by(|&a, &b| base_rows[b].lead().cmp(&base_rows[a].lead()).then(base_rows[a].nnz().cmp(&base_rows[b].nnz())));
        let mut keep = Vec::new();
        for i in order {
            if ech.insert(&base_rows[i])? {
                keep.push(i);
            }
        }
        keep.sort_unstable();
        let base_rank = keep.len();
        let independent = match selection {
            RowSelection::Full => (0..base_rows.len()).collect(),
            RowSelection::Reduced => keep,
        };
        Ok(SmSystem { inst: inst.clone(), field, dc, basis, base_rows, independent, base_rank })
    }

    pub fn dc(&self) -> usize {
        self.dc
    }

    pub fn plucker_basis(&self) -> &PluckerBasis {
        &self.basis
    }

    pub fn ambient_dim(&self, dx: usize) -> BigInt {
        let k = self.inst.params.k as i64;
        binom_ext(k + dx as i64 - 1, dx as i64) * BigInt::from(self.basis.rank())
    }

    /// Builds the Macaulay matrix rows in bidegree `(dx, dc)`, `dx >= 1`.
    pub fn rows(&self, dx: usize) -> Vec<SparseRow> {
        assert!(dx >= 1);
        let k = self.inst.params.k;
        let big_r = self.basis.rank() as u32;
        let targets = multisets(k, dx);
        let index: BTreeMap<&[u16], u32> = targets.iter().enumerate().map(|(i, m)| (m.as_slice(), i as u32)).collect();
        let mut out = Vec::new();
        for gamma in multisets(k, dx - 1) {
            // x^gamma * x_v lands on column block mult[v]; increasing in v.
            let mult: Vec<u32> = (0..k as u16)
                .map(|v| {
                    let mut m = gamma.clone();
                    m.push(v);
                    m.sort_unstable();
                    index[m.as_slice()]
                })
                .collect();
            for &i in &self.independent {
                let base = &self.base_rows[i];
                let mut row = SparseRow::default();
                for (&c, &val) in base.cols.iter().zip(&base.vals) {
                    let (v, t) = (c / big_r, c % big_r);
                    row.push(mult[v as usize] * big_r + t, val);
                }
                out.push(row);
            }
        }
        out
    }

    pub fn rank_at(&self, dx: usize, opts: &RankOptions) -> Result<MacaulayRank> {
        let ambient = self.ambient_dim(dx);
        if dx == 0 {
            return Ok(MacaulayRank {
                dx,
                dc: self.dc,
                rows: 0,
                cols: self.basis.rank(),
                rank: 0,
                observed_hf: ambient.clone(),
                ambient_dim: ambient,
            });
        }
        let cols = binom_usize(self.inst.params.k + dx - 1, dx) * self.basis.rank();
        if cols > opts.max_cols {
            return Err(Error::CapExceeded { what: "Macaulay columns", size: cols as u128, cap: opts.max_cols as u128 });
        }
        if dx == 1 {
            return Ok(MacaulayRank {
                dx,
                dc: self.dc,
                rows: self.base_rows.len(),
                cols,
                rank: self.base_rank,
                observed_hf: &ambient - BigInt::from(self.base_rank),
                ambient_dim: ambient,
            });
        }
        let mut rows = self.rows(dx);
        // Rightmost leading columns first: each row meets only pivots that already exist.
        rows.sort_by(|a, b| b.lead().cmp(&a.lead()).then(a.nnz().cmp(&b.nnz())));
        let mut ech = Echelon::new(cols, self.field, opts.max_fill);
        for row in &rows {
            ech.insert(row)?;
            if ech.rank() == cols {
                break;
            }
        }
        let rank = ech.rank();
        Ok(MacaulayRank {
            dx,
            dc: self.dc,
            rows: rows.len(),
            cols,
            rank,
            observed_hf: &ambient - BigInt::from(rank),
            ambient_dim: ambient,
        })
    }
}

/// Plücker bases in degrees `0..=dc_max` for one `(n, r, q)`, shared across instances.
#[derive(Clone, Debug)]
pub struct PluckerBases {
    bases: Vec<PluckerBasis>,
}

impl PluckerBases {
    pub fn new(n: usize, r: usize, dc_max: usize, field: Fp) -> Self {
        PluckerBases { bases: (0..=dc_max).map(|dc| PluckerBasis::new(n, r, dc, field)).collect() }
    }

    pub fn dc_max(&self) -> usize {
        self.bases.len() - 1
    }

    pub fn system(&self, inst: &Instance, dc: usize, selection: RowSelection) -> Result<SmSystem> {
        if dc == 0 || dc > self.dc_max() {
            return Err(Error::InvalidParams("dc outside the precomputed Plücker bases"));
        }
        SmSystem::from_bases(inst, self.bases[dc].clone(), &self.bases[dc - 1], selection)
    }
}

/// Rank of the Macaulay matrix in bidegree `(dx, dc)` for one instance.
pub fn macaulay_rank(inst: &Instance, dx: usize, dc: usize, opts: &RankOptions) -> Result<MacaulayRank> {
    SmSystem::new(inst, dc, opts.rows)?.rank_at(dx, opts)
}

/// `binom(K+dx-1, dx) * module_rank(n, r, dc)`.
pub fn expected_ambient_dim(inst: &Instance, dx: usize, dc: usize) -> BigInt {
    let p = &inst.params;
    binom_ext((p.k + dx) as i64 - 1, dx as i64) * module_rank(p.n, p.r, dc)
}
