//! Partitions, standard tableaux and the binomial identities behind the
//! Hilbert-series formulas.
//!
//! A [`Shape`] `(v(1), ..., v(p))` lists column lengths. A [`Tableau`] of that
//! shape has `p` columns, so its row lengths are the conjugate partition.
//! Entries strictly increase along rows and weakly increase down columns.
//! With this orientation a row is one `r`-subset, i.e. one maximal minor, and
//! `stab` counts exactly the tableaux produced by [`enumerate_tableaux`].

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::det::det_bigint;
use crate::error::{Error, Result};
use crate::series::{binom_ext, twisted_binom};

/// Default bound on the number of candidate fillings [`enumerate_tableaux`] accepts.
pub const DEFAULT_ENUMERATION_CAP: u128 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shape {
    parts: Vec<usize>,
}

impl Shape {
    /// Returns `None` unless `parts` is weakly decreasing.
    pub fn new(parts: Vec<usize>) -> Option<Self> {
        parts.windows(2).all(|w| w[0] >= w[1]).then_some(Shape { parts })
    }

    /// `p` equal parts of size `d`.
    pub fn rectangle(d: usize, p: usize) -> Self {
        Shape { parts: vec![d; p] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Adds `k` to every part.
    pub fn shifted(&self, k: usize) -> Self {
        Shape { parts: self.parts.iter().map(|v| v + k).collect() }
    }

    /// Row lengths of the Young diagram whose column lengths are `parts`.
    pub fn conjugate(&self) -> Vec<usize> {
        let height = self.parts.first().copied().unwrap_or(0);
        (0..height).map(|row| self.parts.iter().filter(|&&v| v > row).count()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tableau {
    pub rows: Vec<Vec<u32>>,
    pub bound: u32,
}

impl Tableau {
    /// Checks the row/column monotonicity and the entry bound.
    pub fn is_standard(&self) -> bool {
        let in_range = self.rows.iter().flatten().all(|&e| e >= 1 && e <= self.bound);
        let rows_ok = self.rows.iter().all(|r| r.windows(2).all(|w| w[0] < w[1]));
        let shape_ok = self.rows.windows(2).all(|w| w[0].len() >= w[1].len());
        let cols_ok = self.rows.windows(2).all(|w| w[1].iter().zip(&w[0]).all(|(lo, hi)| hi <= lo));
        in_range && rows_ok && shape_ok && cols_ok
    }
}

/// All weakly decreasing `max_parts`-tuples summing to `d`, in decreasing lexicographic order.
pub fn partitions(d: usize, max_parts: usize) -> Vec<Shape> {
    fn go(rest: usize, cap: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Shape>) {
        if slots == 0 {
            if rest == 0 {
                out.push(Shape { parts: cur.clone() });
            }
            return;
        }
        if rest > cap * slots {
            return;
        }
        for v in (0..=cap.min(rest)).rev() {
            cur.push(v);
            go(rest - v, v, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(d, d, max_parts, &mut Vec::with_capacity(max_parts), &mut out);
    out
}

/// Number of standard tableaux of `shape` with entries in `1..=bound`:
/// `det(twisted_binom(bound - j, v(i) + j - i))`.
pub fn stab(bound: usize, shape: &Shape) -> BigInt {
    let p = shape.len();
    let v = shape.parts();
    let m: Vec<Vec<BigInt>> = (0..p)
        .map(|i| {
            (0..p)
                .map(|j| twisted_binom(bound as i64 - j as i64 - 1, v[i] as i64 + j as i64 - i as i64))
                .collect()
        })
        .collect();
    det_bigint(m)
}

/// Every standard tableau of `shape` with entries in `1..=bound`, ordered
/// lexicographically by the row-major entry sequence.
pub fn enumerate_tableaux(bound: usize, shape: &Shape) -> Result<Vec<Tableau>> {
    enumerate_tableaux_capped(bound, shape, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_tableaux_capped(bound: usize, shape: &Shape, cap: u128) -> Result<Vec<Tableau>> {
    let rows = shape.conjugate();
    let mut size = BigInt::from(1);
    for &len in &rows {
        size *= binom_ext(bound as i64, len as i64);
    }
    let size = size.to_u128().unwrap_or(u128::MAX);
    if size > cap {
        return Err(Error::CapExceeded { what: "tableau enumeration", size, cap });
    }
    let bound = bound as u32;
    let cells: Vec<(usize, usize)> = rows.iter().enumerate().flat_map(|(i, &l)| (0..l).map(move |j| (i, j))).collect();
    let mut grid: Vec<Vec<u32>> = rows.iter().map(|&l| vec![0; l]).collect();
    let mut out = Vec::new();
    fill(0, &cells, &mut grid, bound, &mut out);
    Ok(out)
}

fn fill(k: usize, cells: &[(usize, usize)], grid: &mut Vec<Vec<u32>>, bound: u32, out: &mut Vec<Tableau>) {
    let Some(&(i, j)) = cells.get(k) else {
        out.push(Tableau { rows: grid.clone(), bound });
        return;
    };
    let mut lo = 1;
    if j > 0 {
        lo = lo.max(grid[i][j - 1] + 1);
    }
    if i > 0 {
        lo = lo.max(grid[i - 1][j]);
    }
    // The rest of the row still needs room to increase strictly.
    let hi = bound.saturating_sub((grid[i].len() - 1 - j) as u32);
    for e in lo..=hi {
        grid[i][j] = e;
        fill(k + 1, cells, grid, bound, out);
    }
    grid[i][j] = 0;
}

/// Standard bitableaux with the given left and right shapes.
pub fn count_bitableaux(m_bound: usize, n_bound: usize, left: &Shape, right: &Shape) -> BigInt {
    stab(m_bound, left) * stab(n_bound, right)
}

/// Both sides of `Σ_k C(b, f-k) C(a, l-k) C(a+b+k, k) = C(a+f, l) C(b+l, f)`.
pub fn saalschutz_sides(a: i64, b: i64, f: i64, ell: i64) -> (BigInt, BigInt) {
    let mut lhs = BigInt::zero();
    for k in 0..=ell {
        lhs += binom_ext(b, f - k) * binom_ext(a, ell - k) * binom_ext(a + b + k, k);
    }
    (lhs, binom_ext(a + f, ell) * binom_ext(b + ell, f))
}

pub fn check_saalschutz(a: i64, b: i64, f: i64, ell: i64) -> bool {
    assert!(ell >= 0, "check_saalschutz needs ell >= 0");
    let (l, r) = saalschutz_sides(a, b, f, ell);
    l == r
}

/// Both sides of `Σ_{k≥1} (-1)^(i-k) C(i-1, k-1) C(a-k, b-k) = (-1)^(i-1) C(a-i, b-1)`.
pub fn combi_identity_sides(i: i64, a: i64, b: i64) -> (BigInt, BigInt) {
    let sign = |e: i64| if e % 2 == 0 { 1 } else { -1 };
    let mut lhs = BigInt::zero();
    for k in 1..=i {
        lhs += sign(i - k) * binom_ext(i - 1, k - 1) * binom_ext(a - k, b - k);
    }
    (lhs, sign(i - 1) * binom_ext(a - i, b - 1))
}

pub fn check_combi_identity(i: i64, a: i64, b: i64) -> bool {
    assert!(i >= 1 && b >= 1, "check_combi_identity needs i, b >= 1");
    let (l, r) = combi_identity_sides(i, a, b);
    l == r
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn shape(v: &[usize]) -> Shape {
        Shape::new(v.to_vec()).unwrap()
    }

    #[test]
    fn partitions_examples() {
        assert_eq!(partitions(0, 3), vec![shape(&[0, 0, 0])]);
        assert_eq!(partitions(3, 2), vec![shape(&[3, 0]), shape(&[2, 1])]);
        assert_eq!(partitions(6, 3).len(), 7);
    }

    #[test]
    fn partitions_match_nested_loops() {
        for d in 0..=8 {
            let mut brute = Vec::new();
            for a in 0..=d {
                for b in 0..=a {
                    for c in 0..=b {
                        if a + b + c == d {
                            brute.push(shape(&[a, b, c]));
                        }
                    }
                }
            }
            brute.sort();
            brute.reverse();
            assert_eq!(partitions(d, 3), brute);
        }
    }

    #[test]
    fn partitions_strictly_decreasing_order() {
        for d in 0..=7 {
            for p in 1..=4 {
                let ps = partitions(d, p);
                assert!(ps.windows(2).all(|w| w[0] > w[1]));
                assert!(ps.iter().all(|s| s.degree() == d && s.len() == p));
            }
        }
    }

    #[test]
    fn stab_examples() {
        assert_eq!(stab(7, &shape(&[1])), BigInt::from(7));
        assert_eq!(stab(4, &shape(&[0, 0, 0])), BigInt::from(1));
        assert_eq!(stab(5, &shape(&[3, 2, 2, 1])), BigInt::from(175));
        assert_eq!(stab(5, &Shape::rectangle(3, 3)), BigInt::from(175));
    }

    #[test]
    fn enumeration_examples() {
        let t = enumerate_tableaux(2, &shape(&[2])).unwrap();
        let rows: Vec<Vec<Vec<u32>>> = t.iter().map(|t| t.rows.clone()).collect();
        assert_eq!(rows, vec![vec![vec![1], vec![1]], vec![vec![1], vec![2]], vec![vec![2], vec![2]]]);
        assert!(enumerate_tableaux(1, &shape(&[1, 1])).unwrap().is_empty());
        assert_eq!(enumerate_tableaux(3, &shape(&[0])).unwrap().len(), 1);
        assert!(t.iter().all(Tableau::is_standard));
    }

    #[test]
    fn enumeration_cap() {
        let err = enumerate_tableaux_capped(20, &shape(&[4, 4, 4, 4]), 1000).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { .. }));
    }

    #[test]
    fn stab_matches_enumeration() {
        for bound in 1..=6 {
            for d in 0..=6 {
                for p in 1..=d.max(1) {
                    for s in partitions(d, p) {
                        let n = enumerate_tableaux(bound, &s).unwrap().len();
                        assert_eq!(stab(bound, &s), BigInt::from(n), "bound={bound} shape={s:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn too_many_rows_gives_zero() {
        for bound in 1..=4 {
            let s = Shape::rectangle(1, bound + 1);
            assert!(stab(bound, &s).is_zero());
            assert!(enumerate_tableaux(bound, &s).unwrap().is_empty());
        }
    }

    #[test]
    fn bitableaux_examples() {
        let empty = shape(&[0]);
        assert_eq!(count_bitableaux(3, 3, &empty, &empty), BigInt::from(1));
        let s = shape(&[3, 2, 2, 1]);
        let left = enumerate_tableaux(5, &s).unwrap().len();
        let right = enumerate_tableaux(4, &s).unwrap().len();
        assert_eq!(count_bitableaux(5, 4, &s, &s), BigInt::from(left * right));
        assert!(count_bitableaux(5, 3, &shape(&[1, 1, 1, 1]), &shape(&[1, 1, 1, 1])).is_zero());
    }

    #[test]
    fn identity_examples() {
        assert!(check_saalschutz(3, 2, -1, 2));
        assert_eq!(saalschutz_sides(3, 2, -2, 3), (BigInt::zero(), BigInt::zero()));
        assert!(check_saalschutz(3, 2, 1, 2));
        assert_eq!(saalschutz_sides(4, -3, 0, 0), (BigInt::from(1), BigInt::from(1)));
        assert!(check_combi_identity(1, 4, 2));
        assert!(check_combi_identity(2, 5, 3));
    }

    #[test]
    fn identity_sweeps() {
        for a in -6..=6 {
            for b in -6..=6 {
                for f in -3..=6 {
                    for ell in 0..=6 {
                        assert!(check_saalschutz(a, b, f, ell), "{a} {b} {f} {ell}");
                    }
                }
            }
        }
        for i in 1..=8 {
            for a in -8..=8 {
                for b in 1..=8 {
                    assert!(check_combi_identity(i, a, b), "{i} {a} {b}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn enumerated_tableaux_are_standard_and_sorted(bound in 1usize..5, d in 0usize..5, p in 1usize..4) {
            for s in partitions(d, p) {
                let t = enumerate_tableaux(bound, &s).unwrap();
                prop_assert!(t.iter().all(Tableau::is_standard));
                let flat: Vec<Vec<u32>> = t.iter().map(|t| t.rows.concat()).collect();
                prop_assert!(flat.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }
}
