//! Exact dense linear algebra over the integers and rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Determinant by fraction-free (Bareiss) elimination. The empty matrix has determinant 1.
pub(crate) fn det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// An integer normal of the hyperplane spanned by `n - 1` vectors in dimension `n`
/// (generalized cross product); zero iff the vectors are dependent.
pub(crate) fn normal(vectors: &[&[BigInt]], dim: usize) -> Vec<BigInt> {
    debug_assert_eq!(vectors.len() + 1, dim);
    (0..dim)
        .map(|skip| {
            let minor: Vec<Vec<BigInt>> = vectors
                .iter()
                .map(|v| {
                    v.iter()
                        .enumerate()
                        .filter(|(j, _)| *j != skip)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let d = det(minor);
            if skip % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect()
}

/// Solves `Σ xⱼ colⱼ = rhs`.
///
/// Returns `None` if the columns are linearly dependent, `Some(None)` if the
/// system is inconsistent and `Some(Some(x))` otherwise.
pub(crate) fn solve_independent(
    cols: &[&[BigInt]],
    rhs: &[BigInt],
) -> Option<Option<Vec<BigRational>>> {
    let rows = rhs.len();
    let k = cols.len();
    let mut a: Vec<Vec<BigRational>> = (0..rows)
        .map(|i| {
            cols.iter()
                .map(|c| BigRational::from_integer(c[i].clone()))
                .chain(std::iter::once(BigRational::from_integer(rhs[i].clone())))
                .collect()
        })
        .collect();
    let mut row = 0;
    for col in 0..k {
        let pivot = (row..rows).find(|&i| !a[i][col].is_zero())?;
        a.swap(row, pivot);
        let p = a[row][col].clone();
        for x in a[row].iter_mut() {
            *x /= &p;
        }
        let pivot_row = a[row].clone();
        for (i, r) in a.iter_mut().enumerate() {
            if i != row && !r[col].is_zero() {
                let f = r[col].clone();
                for (x, y) in r[col..=k].iter_mut().zip(&pivot_row[col..=k]) {
                    *x -= &f * y;
                }
            }
        }
        row += 1;
    }
    if a[row..].iter().any(|r| !r[k].is_zero()) {
        return Some(None);
    }
    Some(Some((0..k).map(|i| a[i][k].clone()).collect()))
}

/// True iff the integer vector `v` is a non-negative rational combination of `gens`.
///
/// Uses Carathéodory's theorem: it suffices to test every linearly independent
/// subset of at most `dim` generators.
pub(crate) fn in_cone(gens: &[&[BigInt]], v: &[BigInt]) -> bool {
    if v.iter().all(Zero::is_zero) {
        return true;
    }
    let dim = v.len();
    let max = gens.len().min(dim);
    let mut subset = Vec::with_capacity(max);
    (1..=max).any(|size| subset_search(gens, v, 0, size, &mut subset))
}

fn subset_search<'a>(
    gens: &[&'a [BigInt]],
    v: &[BigInt],
    start: usize,
    size: usize,
    chosen: &mut Vec<&'a [BigInt]>,
) -> bool {
    if chosen.len() == size {
        return matches!(
            solve_independent(chosen, v),
            Some(Some(ref x)) if x.iter().all(|c| !c.is_negative())
        );
    }
    for i in start..gens.len() {
        if gens.len() - i < size - chosen.len() {
            break;
        }
        chosen.push(gens[i]);
        let found = subset_search(gens, v, i + 1, size, chosen);
        chosen.pop();
        if found {
            return true;
        }
    }
    false
}
