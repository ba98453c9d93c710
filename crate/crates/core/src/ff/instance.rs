//! Random linear MinRank instances and their Support-Minors equations.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::Fp;
use super::plucker::{subset_index, subsets};
use crate::error::{Error, Result};
use crate::hilbert::GmrParams;

/// `F = (f_ij)` with `f_ij = Σ_k coeffs[(i n + j) K + k] x_k` over `GF(q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub params: GmrParams,
    pub q: u64,
    pub seed: u64,
    pub coeffs: Vec<u32>,
}

impl Instance {
    /// Wraps explicit coefficients; `coeffs` has length `m n K` and entries below `q`.
    pub fn from_coeffs(params: GmrParams, q: u64, coeffs: Vec<u32>) -> Result<Self> {
        let field = Fp::new(q)?;
        if params.d != 1 {
            return Err(Error::InvalidParams("instances need D = 1"));
        }
        if coeffs.len() != params.m * params.n * params.k || coeffs.iter().any(|&c| c >= field.q()) {
            return Err(Error::InvalidParams("coefficient array has the wrong shape or range"));
        }
        Ok(Instance { params, q, seed: 0, coeffs })
    }

    pub fn field(&self) -> Fp {
        Fp::new(self.q).expect("checked on construction")
    }

    pub fn coeff(&self, i: usize, j: usize, k: usize) -> u32 {
        let p = &self.params;
        self.coeffs[(i * p.n + j) * p.k + k]
    }

    /// `f_ij` as its `K` coefficients.
    pub fn entry(&self, i: usize, j: usize) -> &[u32] {
        let p = &self.params;
        let s = (i * p.n + j) * p.k;
        &self.coeffs[s..s + p.k]
    }

    /// `F(x)` as an `m x n` matrix over `GF(q)`.
    pub fn evaluate(&self, x: &[u32]) -> Vec<Vec<u32>> {
        let f = self.field();
        let p = &self.params;
        (0..p.m)
            .map(|i| {
                (0..p.n)
                    .map(|j| self.entry(i, j).iter().zip(x).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b))))
                    .collect()
            })
            .collect()
    }
}

impl Instance {
    /// Same instance after an invertible change of the `x` variables that turns
    /// the first `K` linearly independent entries (row-major) into single
    /// variables. Ideals of the two instances are isomorphic, so every Hilbert
    /// function value agrees.
    pub fn with_unit_entries(&self) -> Instance {
        let f = self.field();
        let p = self.params;
        let k = p.k;
        // Greedy choice of independent coefficient vectors, tracked in echelon form.
        let mut chosen: Vec<usize> = Vec::new();
        let mut ech: Vec<(usize, Vec<u32>)> = Vec::new();
        for e in 0..p.m * p.n {
            if chosen.len() == k {
                break;
            }
            let mut v = self.coeffs[e * k..(e + 1) * k].to_vec();
            for (lead, row) in &ech {
                let g = v[*lead];
                if g != 0 {
                    for (a, b) in v.iter_mut().zip(row) {
                        *a = f.sub(*a, f.mul(g, *b));
                    }
                }
            }
            if let Some(lead) = v.iter().position(|&a| a != 0) {
                let inv = f.inv(v[lead]);
                v.iter_mut().for_each(|a| *a = f.mul(*a, inv));
                ech.push((lead, v));
                chosen.push(e);
            }
        }
        if chosen.len() < k {
            return self.clone();
        }
        // T has the chosen coefficient vectors as rows; new coefficients are a T^{-1}.
        let t: Vec<Vec<u32>> = chosen.iter().map(|&e| self.coeffs[e * k..(e + 1) * k].to_vec()).collect();
        let tinv = invert(&t, f).expect("independent rows");
        let mut coeffs = alloc::vec![0u32; self.coeffs.len()];
        for e in 0..p.m * p.n {
            let a = &self.coeffs[e * k..(e + 1) * k];
            for j in 0..k {
                coeffs[e * k + j] = (0..k).fold(0, |acc, i| f.add(acc, f.mul(a[i], tinv[i][j])));
            }
        }
        Instance { params: p, q: self.q, seed: self.seed, coeffs }
    }
}

fn invert(a: &[Vec<u32>], f: Fp) -> Option<Vec<Vec<u32>>> {
    let n = a.len();
    let mut m: Vec<Vec<u32>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| u32::from(i == j)));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| m[i][c] != 0)?;
        m.swap(p, c);
        let inv = f.inv(m[c][c]);
        m[c].iter_mut().for_each(|v| *v = f.mul(*v, inv));
        for i in 0..n {
            if i != c && m[i][c] != 0 {
                let g = m[i][c];
                let pivot = m[c].clone();
                for (v, pv) in m[i].iter_mut().zip(&pivot) {
                    *v = f.sub(*v, f.mul(g, *pv));
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Uniform coefficients from ChaCha8 seeded with `seed`.
pub fn gen_instance(params: &GmrParams, q: u64, seed: u64) -> Result<Instance> {
    if params.d != 1 {
        return Err(Error::InvalidParams("instances need D = 1"));
    }
    let field = Fp::new(q)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let len = params.m * params.n * params.k;
    let coeffs = (0..len).map(|_| rng.gen_range(0..field.q())).collect();
    Ok(Instance { params: *params, q, seed, coeffs })
}

/// One term `sign * f_{row, col} * c_plucker`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SmTerm {
    pub negative: bool,
    pub col: usize,
    pub plucker: usize,
}

/// Equation `Σ_{i=1}^{r+1} (-1)^i f_{row, j_i} c_{J \ j_i}` for `J = {j_1 < ... < j_{r+1}}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmEquation {
    pub row: usize,
    pub subset: Vec<u8>,
    pub terms: Vec<SmTerm>,
}

/// The `m C(n, r+1)` bilinear equations, ordered by row then by subset.
pub fn sm_equations(params: &GmrParams) -> Vec<SmEquation> {
    let (m, n, r) = (params.m, params.n, params.r);
    let mut out = Vec::new();
    for row in 0..m {
        for set in subsets(n, r + 1) {
            let terms = (0..=r)
                .map(|i| {
                    let rest: Vec<u8> = set.iter().enumerate().filter(|&(p, _)| p != i).map(|(_, &v)| v).collect();
                    // 1-based position i+1 gives sign (-1)^(i+1).
                    SmTerm { negative: i % 2 == 0, col: set[i] as usize, plucker: subset_index(&rest, n) }
                })
                .collect();
            out.push(SmEquation { row, subset: set, terms });
        }
    }
    out
}

/// Value of an equation at `x` and Plücker values `c` (indexed like [`subsets`]).
pub fn eval_equation(inst: &Instance, eq: &SmEquation, x: &[u32], c: &[u32]) -> u32 {
    let f = inst.field();
    eq.terms.iter().fold(0, |acc, t| {
        let fx = inst.entry(eq.row, t.col).iter().zip(x).fold(0, |s, (&a, &b)| f.add(s, f.mul(a, b)));
        let v = f.mul(fx, c[t.plucker]);
        if t.negative {
            f.sub(acc, v)
        } else {
            f.add(acc, v)
        }
    })
}

/// Maximal minors of an `r x n` matrix over `GF(q)`, in [`subsets`] order.
pub fn maximal_minors(cmat: &[Vec<u32>], n: usize, field: Fp) -> Vec<u32> {
    let r = cmat.len();
    subsets(n, r)
        .iter()
        .map(|set| {
            let rows: Vec<Vec<i64>> = cmat.iter().map(|row| set.iter().map(|&j| row[j as usize] as i64).collect()).collect();
            det_mod(rows, field)
        })
        .collect()
}

fn det_mod(mut a: Vec<Vec<i64>>, field: Fp) -> u32 {
    let n = a.len();
    let q = field.q() as i64;
    let mut det: u32 = 1;
    for c in 0..n {
        for row in a.iter_mut() {
            row[c] = row[c].rem_euclid(q);
        }
        let Some(p) = (c..n).find(|&i| a[i][c] != 0) else {
            return 0;
        };
        if p != c {
            a.swap(p, c);
            det = field.neg(det);
        }
        let pv = a[c][c] as u32;
        det = field.mul(det, pv);
        let inv = field.inv(pv) as i64;
        for i in c + 1..n {
            let g = (a[i][c] * inv).rem_euclid(q);
            if g == 0 {
                continue;
            }
            for j in c..n {
                a[i][j] = (a[i][j] - g * a[c][j]).rem_euclid(q);
            }
        }
    }
    det
}
