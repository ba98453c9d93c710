//! Exact determinants over `Z`, `Z[t]` and truncated series rings.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::poly::IntPoly;
use crate::series::TruncatedSeries;

/// Fraction-free Bareiss elimination over the integers.
pub fn det_bigint(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// Fraction-free Bareiss elimination over `Z[t]`; every division is exact.
pub fn det_poly(mut a: Vec<Vec<IntPoly>>) -> IntPoly {
    let n = a.len();
    if n == 0 {
        return IntPoly::one();
    }
    let mut sign = false;
    let mut prev = IntPoly::one();
    for k in 0..n {
        // Lowest-degree pivot keeps intermediate growth down.
        let Some(p) = (k..n).filter(|&i| !a[i][k].is_zero()).min_by_key(|&i| a[i][k].degree()) else {
            return IntPoly::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = v.div_exact(&prev).expect("Bareiss step is exact over Z[t]");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -&d
    } else {
        d
    }
}

/// Determinant of a square matrix of truncated series, at the minimum entry order.
///
/// Small matrices use cofactor expansion, larger ones the division-free
/// Berkowitz recurrence; neither needs invertible pivots.
pub fn series_matrix_det(a: &[Vec<TruncatedSeries>]) -> TruncatedSeries {
    let n = a.len();
    assert!(n >= 1, "series_matrix_det needs a non-empty matrix");
    assert!(a.iter().all(|row| row.len() == n), "matrix must be square");
    let order = a.iter().flatten().map(TruncatedSeries::order).min().unwrap_or(0);
    if n <= 4 {
        let cols: Vec<usize> = (0..n).collect();
        cofactor(a, 0, &cols, order)
    } else {
        berkowitz(a, order)
    }
}

fn cofactor(a: &[Vec<TruncatedSeries>], row: usize, cols: &[usize], order: usize) -> TruncatedSeries {
    if cols.len() == 1 {
        return a[row][cols[0]].clone().truncate(order);
    }
    let mut acc = TruncatedSeries::zero(order);
    for (k, &c) in cols.iter().enumerate() {
        if a[row][c].is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = &a[row][c] * &cofactor(a, row + 1, &rest, order);
        acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

fn berkowitz(a: &[Vec<TruncatedSeries>], order: usize) -> TruncatedSeries {
    let n = a.len();
    let zero = TruncatedSeries::zero(order);
    let one = TruncatedSeries::one(order);
    // c holds the characteristic polynomial of the leading k x k block, highest power first.
    let mut c = alloc::vec![one.clone()];
    for k in 0..n {
        // Toeplitz column: 1, -a_kk, -R S, -R A S, ..., -R A^(k-1) S.
        let mut col = Vec::with_capacity(k + 2);
        col.push(one.clone());
        col.push(-&a[k][k]);
        let mut v: Vec<TruncatedSeries> = (0..k).map(|i| a[i][k].clone()).collect();
        for step in 0..k {
            if step > 0 {
                v = (0..k)
                    .map(|i| {
                        let mut s = zero.clone();
                        for (j, vj) in v.iter().enumerate() {
                            s = &s + &(&a[i][j] * vj);
                        }
                        s
                    })
                    .collect();
            }
            let mut rs = zero.clone();
            for (j, vj) in v.iter().enumerate() {
                rs = &rs + &(&a[k][j] * vj);
            }
            col.push(-&rs);
        }
        let mut next = Vec::with_capacity(k + 2);
        for i in 0..k + 2 {
            let mut s = zero.clone();
            for (j, cj) in c.iter().enumerate() {
                if j <= i {
                    s = &s + &(&col[i - j] * cj);
                }
            }
            next.push(s);
        }
        c = next;
    }
    let d = c.pop().expect("non-empty");
    if n % 2 == 1 {
        -&d
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for pos in 0..n {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }

    fn parity(p: &[usize]) -> bool {
        let mut inv = 0;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                if p[i] > p[j] {
                    inv += 1;
                }
            }
        }
        inv % 2 == 1
    }

    fn leibniz_series(a: &[Vec<TruncatedSeries>], order: usize) -> TruncatedSeries {
        let mut acc = TruncatedSeries::zero(order);
        for p in permutations(a.len()) {
            let mut term = TruncatedSeries::one(order);
            for (i, &j) in p.iter().enumerate() {
                term = &term * &a[i][j];
            }
            acc = if parity(&p) { &acc - &term } else { &acc + &term };
        }
        acc
    }

    fn leibniz_int(a: &[Vec<BigInt>]) -> BigInt {
        let mut acc = BigInt::zero();
        for p in permutations(a.len()) {
            let mut term = BigInt::one();
            for (i, &j) in p.iter().enumerate() {
                term *= &a[i][j];
            }
            if parity(&p) {
                acc -= term;
            } else {
                acc += term;
            }
        }
        acc
    }

    fn series_matrix(n: usize, order: usize) -> impl Strategy<Value = Vec<Vec<TruncatedSeries>>> {
        proptest::collection::vec(proptest::collection::vec(-9i64..9, order), n * n).prop_map(move |flat| {
            (0..n)
                .map(|i| (0..n).map(|j| TruncatedSeries::from_i64s(&flat[i * n + j], order)).collect())
                .collect()
        })
    }

    #[test]
    fn trivial_cases() {
        let s = TruncatedSeries::from_i64s(&[3, 1, 4], 3);
        assert_eq!(series_matrix_det(&[vec![s.clone()]]), s);
        let id: Vec<Vec<TruncatedSeries>> = (0..6)
            .map(|i| (0..6).map(|j| if i == j { TruncatedSeries::one(5) } else { TruncatedSeries::zero(5) }).collect())
            .collect();
        assert_eq!(series_matrix_det(&id), TruncatedSeries::one(5));
        assert_eq!(det_bigint(vec![]), BigInt::one());
    }

    proptest! {
        #[test]
        fn small_series_det_matches_leibniz(n in 1usize..=4, m in series_matrix(4, 5)) {
            let a: Vec<Vec<TruncatedSeries>> = m.into_iter().take(n).map(|r| r.into_iter().take(n).collect()).collect();
            prop_assert_eq!(series_matrix_det(&a), leibniz_series(&a, 5));
        }

        #[test]
        fn berkowitz_matches_leibniz(n in 1usize..=6, m in series_matrix(6, 4)) {
            let a: Vec<Vec<TruncatedSeries>> = m.into_iter().take(n).map(|r| r.into_iter().take(n).collect()).collect();
            prop_assert_eq!(berkowitz(&a, 4), leibniz_series(&a, 4));
        }

        #[test]
        fn bareiss_int_matches_leibniz(n in 0usize..=6, flat in proptest::collection::vec(-20i64..20, 36)) {
            let a: Vec<Vec<BigInt>> = (0..n).map(|i| (0..n).map(|j| BigInt::from(flat[i * 6 + j])).collect()).collect();
            prop_assert_eq!(det_bigint(a.clone()), leibniz_int(&a));
        }

        #[test]
        fn bareiss_poly_matches_series(n in 1usize..=5, m in series_matrix(5, 3)) {
            let a: Vec<Vec<TruncatedSeries>> = m.into_iter().take(n).map(|r| r.into_iter().take(n).collect()).collect();
            let polys: Vec<Vec<IntPoly>> = a
                .iter()
                .map(|r| r.iter().map(|s| IntPoly::from_coeffs(s.coeffs().to_vec())).collect())
                .collect();
            let order = 3 * n;
            let padded: Vec<Vec<TruncatedSeries>> =
                polys.iter().map(|r| r.iter().map(|p| p.to_series(order)).collect()).collect();
            prop_assert_eq!(det_poly(polys).to_series(order), leibniz_series(&padded, order));
        }
    }
}
