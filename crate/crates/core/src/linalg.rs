//! Exact linear algebra over the integers and rationals: fraction-free
//! Bareiss elimination for determinants and solves, plus rational RREF for
//! nullspace bases. No floating point anywhere; every result is bit-exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Determinant of a square integer matrix by fraction-free (Bareiss)
/// elimination. All intermediate entries are minors of the input, so the
/// divisions below are exact.
pub(crate) fn det_bareiss(matrix: &[Vec<BigInt>]) -> BigInt {
    let n = matrix.len();
    if n == 0 {
        return BigInt::one();
    }
    debug_assert!(matrix.iter().all(|row| row.len() == n));
    let mut m: Vec<Vec<BigInt>> = matrix.to_vec();
    let mut sign = 1i8;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                debug_assert!((&num % &prev).is_zero());
                m[i][j] = num / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let last = std::mem::take(&mut m[n - 1][n - 1]);
    if sign < 0 {
        -last
    } else {
        last
    }
}

/// Solves `A x = b` for square integer `A` by Bareiss forward elimination
/// on the augmented matrix followed by exact rational back-substitution.
/// Returns `None` when `A` is singular.
pub(crate) fn solve_bareiss(matrix: &[Vec<BigInt>], rhs: &[BigInt]) -> Option<Vec<BigRational>> {
    let n = matrix.len();
    debug_assert_eq!(rhs.len(), n);
    if n == 0 {
        return Some(Vec::new());
    }
    let mut m: Vec<Vec<BigInt>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let i = (k + 1..n).find(|&i| !m[i][k].is_zero())?;
            m.swap(k, i);
        }
        for i in k + 1..n {
            for j in k + 1..=n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                debug_assert!((&num % &prev).is_zero());
                m[i][j] = num / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    if m[n - 1][n - 1].is_zero() {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = BigRational::from(m[i][n].clone());
        for j in i + 1..n {
            acc -= BigRational::from(m[i][j].clone()) * &x[j];
        }
        x[i] = acc / BigRational::from(m[i][i].clone());
    }
    Some(x)
}

/// Inverse of a square integer matrix over the rationals via Gauss-Jordan,
/// or `None` when singular. Used where every column of the inverse is
/// needed at once.
pub(crate) fn invert(matrix: &[Vec<BigInt>]) -> Option<Vec<Vec<BigRational>>> {
    let n = matrix.len();
    let mut m: Vec<Vec<BigRational>> = matrix
        .iter()
        .enumerate()
        .map(|(i, row)| {
            debug_assert_eq!(row.len(), n);
            let mut r: Vec<BigRational> = row.iter().cloned().map(BigRational::from).collect();
            r.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&i| !m[i][col].is_zero())?;
        m.swap(col, pivot);
        let inv = m[col][col].recip();
        for entry in &mut m[col] {
            *entry *= &inv;
        }
        for i in 0..n {
            if i == col || m[i][col].is_zero() {
                continue;
            }
            let factor = std::mem::replace(&mut m[i][col], BigRational::zero());
            for j in col + 1..2 * n {
                let delta = &factor * &m[col][j];
                m[i][j] -= delta;
            }
        }
    }
    Some(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Basis of the right nullspace of an integer matrix (rows × `ncols`),
/// one primitive integer vector per free column of the RREF, in ascending
/// column order. Deterministic: first nonzero pivot, free coordinate
/// scaled positive, content 1.
pub(crate) fn nullspace_primitive(rows: &[Vec<BigInt>], ncols: usize) -> Vec<Vec<BigInt>> {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|row| {
            debug_assert_eq!(row.len(), ncols);
            row.iter().cloned().map(BigRational::from).collect()
        })
        .collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut row = 0usize;
    for col in 0..ncols {
        let Some(pivot) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, pivot);
        let inv = m[row][col].recip();
        for entry in &mut m[row] {
            *entry *= &inv;
        }
        for i in 0..m.len() {
            if i == row || m[i][col].is_zero() {
                continue;
            }
            let factor = std::mem::replace(&mut m[i][col], BigRational::zero());
            for j in col + 1..ncols {
                let delta = &factor * &m[row][j];
                m[i][j] -= delta;
            }
        }
        pivots.push(col);
        row += 1;
    }
    let mut basis = Vec::with_capacity(ncols - pivots.len());
    for free in 0..ncols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![BigRational::zero(); ncols];
        v[free] = BigRational::one();
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = -m[r][free].clone();
        }
        basis.push(clear_to_primitive(&v));
    }
    basis
}

/// Scales a rational vector to integer entries with content 1. The entry
/// that was 1 before scaling stays positive.
pub(crate) fn clear_to_primitive(v: &[BigRational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect();
    let mut content = BigInt::zero();
    for x in &ints {
        content = content.gcd(x);
    }
    if content.is_zero() || content.is_one() {
        return ints;
    }
    ints.into_iter().map(|x| x / &content).collect()
}

/// Least common multiple of the denominators of a rational vector.
pub(crate) fn denominator_lcm(v: &[BigRational]) -> BigInt {
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    lcm.abs()
}
