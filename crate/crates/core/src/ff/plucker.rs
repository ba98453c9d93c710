//! Plücker coordinates as maximal minors of a generic `r x n` matrix `C`.
//!
//! A monomial in the `c_I` is expanded into a polynomial in the entries of
//! `C`. Linear algebra on these expansions selects a basis of the degree-`dc`
//! part of the coordinate ring of the Grassmannian and expresses every other
//! monomial in it, so no Plücker relation is ever written down.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::field::Fp;
use super::matrix::{Echelon, Reduced, SparseRow};

/// All `r`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, r: usize) -> Vec<Vec<u8>> {
    fn go(start: usize, n: usize, r: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for j in start..n {
            if n - j < r - cur.len() {
                break;
            }
            cur.push(j as u8);
            go(j + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, r, &mut Vec::new(), &mut out);
    out
}

/// Position of a sorted subset in [`subsets`] order.
pub fn subset_index(set: &[u8], n: usize) -> usize {
    let r = set.len();
    let mut idx = 0usize;
    let mut prev = 0usize;
    for (pos, &s) in set.iter().enumerate() {
        for skip in prev..s as usize {
            idx += binom_usize(n - skip - 1, r - pos - 1);
        }
        prev = s as usize + 1;
    }
    idx
}

pub(crate) fn binom_usize(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1usize;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Multisets of size `d` from `0..n`, as non-decreasing sequences in lexicographic order.
pub fn multisets(n: usize, d: usize) -> Vec<Vec<u16>> {
    fn go(start: usize, n: usize, d: usize, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for j in start..n {
            cur.push(j as u16);
            go(j, n, d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, d, &mut Vec::new(), &mut out);
    out
}

/// Polynomial in the entries `C[i][j]` (variable `i*n + j`); keys are sorted variable multisets.
pub type EntryPoly = BTreeMap<Vec<u8>, u32>;

fn permutations(r: usize) -> Vec<(Vec<usize>, bool)> {
    if r == 0 {
        return vec![(Vec::new(), false)];
    }
    let mut out = Vec::new();
    for (p, odd) in permutations(r - 1) {
        for pos in 0..r {
            let mut q = p.clone();
            q.insert(pos, r - 1);
            // Inserting the largest element at `pos` adds r-1-pos inversions.
            out.push((q, odd ^ ((r - 1 - pos) % 2 == 1)));
        }
    }
    out
}

/// Leibniz expansion of the minor of `C` on columns `cols`.
pub fn minor_poly(cols: &[u8], n: usize, field: Fp) -> EntryPoly {
    let r = cols.len();
    let mut out = EntryPoly::new();
    for (perm, odd) in permutations(r) {
        let mut key: Vec<u8> = (0..r).map(|i| (i * n + cols[perm[i]] as usize) as u8).collect();
        key.sort_unstable();
        let v = if odd { field.neg(1) } else { 1 };
        let e = out.entry(key).or_insert(0);
        *e = field.add(*e, v);
    }
    out.retain(|_, v| *v != 0);
    out
}

pub fn poly_mul(a: &EntryPoly, b: &EntryPoly, field: Fp) -> EntryPoly {
    let mut out = EntryPoly::new();
    for (ka, va) in a {
        for (kb, vb) in b {
            let mut key = Vec::with_capacity(ka.len() + kb.len());
            key.extend_from_slice(ka);
            key.extend_from_slice(kb);
            key.sort_unstable();
            let e = out.entry(key).or_insert(0);
            *e = field.add(*e, field.mul(*va, *vb));
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

/// Image of `Π c_{I_k}` (a multiset of subset indices) in the ring of `C` entries.
pub fn expand_plucker(monomial: &[u16], n: usize, r: usize, field: Fp) -> EntryPoly {
    let sets = subsets(n, r);
    let mut acc = EntryPoly::new();
    acc.insert(Vec::new(), 1);
    for &i in monomial {
        acc = poly_mul(&acc, &minor_poly(&sets[i as usize], n, field), field);
    }
    acc
}

/// Basis of the degree-`dc` Plücker monomials modulo the Plücker relations.
#[derive(Clone, Debug)]
pub struct PluckerBasis {
    pub n: usize,
    pub r: usize,
    pub dc: usize,
    /// Field size the coordinates live in.
    pub q: u32,
    /// All degree-`dc` monomials in the `C(n, r)` Plücker variables.
    pub monomials: Vec<Vec<u16>>,
    /// Indices into `monomials` of the chosen basis, in increasing order.
    pub basis: Vec<usize>,
    /// For each monomial, its coordinates `(basis position, value)` in the basis.
    pub coords: Vec<Vec<(u32, u32)>>,
    index: BTreeMap<Vec<u16>, u32>,
}

impl PluckerBasis {
    /// Greedy basis: a monomial joins the basis when its expansion is independent of the earlier ones.
    pub fn new(n: usize, r: usize, dc: usize, field: Fp) -> Self {
        let nvars = binom_usize(n, r);
        let monomials = multisets(nvars, dc);
        let expansions: Vec<EntryPoly> = monomials.iter().map(|m| expand_plucker(m, n, r, field)).collect();
        let mut col_of: BTreeMap<&Vec<u8>, u32> = BTreeMap::new();
        for e in &expansions {
            for k in e.keys() {
                let next = col_of.len() as u32;
                col_of.entry(k).or_insert(next);
            }
        }
        let width = col_of.len() as u32;
        // Trailing tag columns record which expansion rows a dependent row combined.
        let total = width as usize + monomials.len();
        let mut ech = Echelon::new(total, field, usize::MAX);
        let mut basis = Vec::new();
        let mut pos_of_basis = vec![u32::MAX; monomials.len()];
        let mut coords = Vec::with_capacity(monomials.len());
        for (i, e) in expansions.iter().enumerate() {
            let mut entries: Vec<(u32, u32)> = e.iter().map(|(k, v)| (col_of[k], *v)).collect();
            entries.push((width + i as u32, 1));
            let row = SparseRow::from_unsorted(entries, field);
            match ech.reduce(&row) {
                Reduced::Residual(res) if res.lead().unwrap() < width => {
                    pos_of_basis[i] = basis.len() as u32;
                    coords.push(vec![(basis.len() as u32, 1)]);
                    basis.push(i);
                    ech.push_pivot(res).expect("uncapped");
                }
                Reduced::Residual(res) => {
                    // res = tag_i * a + Σ tag_b * λ_b with every b a basis monomial.
                    let mut self_coef = 0;
                    let mut rest = Vec::new();
                    for (&c, &v) in res.cols.iter().zip(&res.vals) {
                        let t = (c - width) as usize;
                        if t == i {
                            self_coef = v;
                        } else {
                            rest.push((pos_of_basis[t], v));
                        }
                    }
                    assert!(self_coef != 0, "dependent monomial must keep its own tag");
                    let scale = field.neg(field.inv(self_coef));
                    let mut c: Vec<(u32, u32)> = rest.into_iter().map(|(b, v)| (b, field.mul(v, scale))).collect();
                    c.sort_unstable();
                    coords.push(c);
                }
                Reduced::Zero => unreachable!("tag column keeps every row nonzero"),
            }
        }
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i as u32)).collect();
        PluckerBasis { n, r, dc, q: field.q(), monomials, basis, coords, index }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Index of a sorted monomial.
    pub fn monomial_index(&self, m: &[u16]) -> usize {
        self.index[m] as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::matrix::PrimeFieldMatrix;
    use crate::hilbert::module_rank;
    use num_bigint::BigInt;

    fn f31() -> Fp {
        Fp::new(31).unwrap()
    }

    #[test]
    fn subset_indexing() {
        for n in 1..=7 {
            for r in 0..=n {
                for (i, s) in subsets(n, r).iter().enumerate() {
                    assert_eq!(subset_index(s, n), i);
                }
                assert_eq!(subsets(n, r).len(), binom_usize(n, r));
            }
        }
    }

    #[test]
    fn expansion_examples() {
        let f = f31();
        let p = expand_plucker(&[2], 4, 1, f);
        assert_eq!(p, [(vec![2u8], 1u32)].into_iter().collect());
        // c_{12} of a 2 x 3 matrix: C11 C22 - C12 C21, variables 0, 4, 1, 3.
        let p = expand_plucker(&[0], 3, 2, f);
        let want: EntryPoly = [(vec![0u8, 4], 1u32), (vec![1u8, 3], 30)].into_iter().collect();
        assert_eq!(p, want);
    }

    #[test]
    fn basis_size_is_module_rank() {
        let f = f31();
        for n in 1..=5 {
            for r in 1..=n.min(3) {
                for dc in 0..=3 {
                    let b = PluckerBasis::new(n, r, dc, f);
                    assert_eq!(BigInt::from(b.rank()), module_rank(n, r, dc), "{n} {r} {dc}");
                }
            }
        }
    }

    #[test]
    fn coordinates_reproduce_expansions() {
        let f = f31();
        let (n, r, dc) = (5, 2, 2);
        let b = PluckerBasis::new(n, r, dc, f);
        for (i, m) in b.monomials.iter().enumerate() {
            let mut sum = EntryPoly::new();
            for &(pos, v) in &b.coords[i] {
                for (k, w) in expand_plucker(&b.monomials[b.basis[pos as usize]], n, r, f) {
                    let e = sum.entry(k).or_insert(0);
                    *e = f.add(*e, f.mul(v, w));
                }
            }
            sum.retain(|_, v| *v != 0);
            assert_eq!(sum, expand_plucker(m, n, r, f));
        }
    }

    #[test]
    fn basis_expansions_are_independent() {
        let f = f31();
        let (n, r, dc) = (5, 3, 2);
        let b = PluckerBasis::new(n, r, dc, f);
        let polys: Vec<EntryPoly> = b.basis.iter().map(|&i| expand_plucker(&b.monomials[i], n, r, f)).collect();
        let mut keys: Vec<&Vec<u8>> = polys.iter().flat_map(|p| p.keys()).collect();
        keys.sort();
        keys.dedup();
        let rows: Vec<Vec<i64>> = polys
            .iter()
            .map(|p| keys.iter().map(|k| p.get(*k).copied().unwrap_or(0) as i64).collect())
            .collect();
        assert_eq!(PrimeFieldMatrix::from_rows(&rows, f).rank(), b.rank());
        assert_eq!(b.rank(), 50);
    }
}
