//! Division-free characteristic polynomial (Berkowitz recurrence).
//!
//! Each leading principal submatrix `A_r` contributes a Toeplitz column
//! `[1, -a_rr, -R C, -R M C, ..., -R M^(r-2) C]` which is convolved with the
//! polynomial of `A_(r-1)`. Only ring operations are used, so the result is
//! exact over the integers.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::poly::IntPolynomial;

/// Ring element with overflow-aware operations. `BigInt` never overflows.
pub(crate) trait ExactRing: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Option<Self>;
    fn mul(&self, other: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    fn into_bigint(self) -> BigInt;
}

impl ExactRing for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn add(&self, other: &Self) -> Option<Self> {
        self.checked_add(*other)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        self.checked_mul(*other)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn into_bigint(self) -> BigInt {
        BigInt::from(self)
    }
}

impl ExactRing for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn into_bigint(self) -> BigInt {
        self
    }
}

/// Coefficients of `det(λI - A)`, leading first, or `None` on overflow.
pub(crate) fn berkowitz<T: ExactRing>(a: &[Vec<T>]) -> Option<Vec<T>> {
    let n = a.len();
    let mut poly: Vec<T> = vec![T::one()];
    for r in 1..=n {
        let m = r - 1;
        // Toeplitz column for A_r
        let mut column = Vec::with_capacity(r + 1);
        column.push(T::one());
        column.push(a[m][m].neg()?);
        let mut v: Vec<T> = (0..m).map(|i| a[i][m].clone()).collect();
        for step in 0..m {
            let mut dot = T::zero();
            for j in 0..m {
                if !a[m][j].is_zero() && !v[j].is_zero() {
                    dot = dot.add(&a[m][j].mul(&v[j])?)?;
                }
            }
            column.push(dot.neg()?);
            if step + 1 < m {
                let mut next = vec![T::zero(); m];
                for (i, slot) in next.iter_mut().enumerate() {
                    let mut acc = T::zero();
                    for j in 0..m {
                        if !a[i][j].is_zero() && !v[j].is_zero() {
                            acc = acc.add(&a[i][j].mul(&v[j])?)?;
                        }
                    }
                    *slot = acc;
                }
                v = next;
            }
        }
        let mut next = vec![T::zero(); r + 1];
        for (i, slot) in next.iter_mut().enumerate() {
            let mut acc = T::zero();
            for j in 0..r.min(i + 1) {
                let t = &column[i - j];
                if !t.is_zero() && !poly[j].is_zero() {
                    acc = acc.add(&t.mul(&poly[j])?)?;
                }
            }
            *slot = acc;
        }
        poly = next;
    }
    Some(poly)
}

/// Characteristic polynomial of an integer matrix, using a checked `i128`
/// pass and falling back to `BigInt` on overflow.
pub fn charpoly_matrix(a: &[Vec<BigInt>]) -> IntPolynomial {
    let narrow: Option<Vec<Vec<i128>>> = a
        .iter()
        .map(|row| row.iter().map(|x| i128::try_from(x).ok()).collect())
        .collect();
    if let Some(coeffs) = narrow.as_deref().and_then(berkowitz) {
        return IntPolynomial::new(coeffs.into_iter().map(ExactRing::into_bigint).collect());
    }
    let coeffs = berkowitz(a).expect("BigInt arithmetic does not overflow");
    IntPolynomial::new(coeffs)
}

/// Same as [`charpoly_matrix`] for a symmetric 0/1 matrix given as bit rows.
pub(crate) fn charpoly_rows(rows: &[u64]) -> IntPolynomial {
    let n = rows.len();
    let narrow: Vec<Vec<i128>> = rows
        .iter()
        .map(|&r| (0..n).map(|j| i128::from(r >> j & 1 == 1)).collect())
        .collect();
    if let Some(coeffs) = berkowitz(&narrow) {
        return IntPolynomial::new(coeffs.into_iter().map(ExactRing::into_bigint).collect());
    }
    let wide: Vec<Vec<BigInt>> = narrow
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    IntPolynomial::new(berkowitz(&wide).expect("BigInt arithmetic does not overflow"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(m: &[&[i64]]) -> Vec<Vec<BigInt>> {
        m.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    // Laplace expansion along the first row over polynomial entries
    // `λδ_ij - a_ij`: an independent determinant oracle for small matrices.
    fn det_oracle(a: &[Vec<BigInt>]) -> IntPolynomial {
        let n = a.len();
        if n == 0 {
            return IntPolynomial::one();
        }
        let entry = |i: usize, j: usize| {
            if i == j {
                IntPolynomial::new(vec![BigInt::from(1), -a[i][j].clone()])
            } else {
                IntPolynomial::new(vec![-a[i][j].clone()])
            }
        };
        let all: Vec<usize> = (0..n).collect();
        minor_det(&all, &all, &entry)
    }

    fn minor_det(
        rows: &[usize],
        cols: &[usize],
        entry: &dyn Fn(usize, usize) -> IntPolynomial,
    ) -> IntPolynomial {
        if rows.is_empty() {
            return IntPolynomial::one();
        }
        let mut total = IntPolynomial::zero();
        for (k, &c) in cols.iter().enumerate() {
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = &entry(rows[0], c) * &minor_det(&rows[1..], &rest, entry);
            total = if k % 2 == 0 { &total + &term } else { &total - &term };
        }
        total
    }

    #[test]
    fn small_matrices_match_laplace() {
        let cases = [
            big(&[&[0, 1], &[1, 0]]),
            big(&[&[2, -1, 0], &[3, 5, 7], &[-4, 1, 1]]),
            big(&[&[0, 1, 1, 0], &[1, 0, 1, 1], &[1, 1, 0, 1], &[0, 1, 1, 0]]),
            big(&[&[1, 2, 3, 4, 5], &[0, -1, 2, 0, 1], &[3, 3, 0, 1, -2], &[1, 0, 0, 2, 2], &[9, -9, 1, 0, 4]]),
        ];
        for a in &cases {
            assert_eq!(charpoly_matrix(a), det_oracle(a));
        }
    }

    #[test]
    fn overflow_falls_back() {
        let huge = BigInt::from(10).pow(30);
        let a = vec![vec![huge.clone(), huge.clone()], vec![huge.clone(), huge.clone()]];
        // (λ - h)^2 - h^2 = λ^2 - 2hλ
        let expected = IntPolynomial::new(vec![BigInt::from(1), -(huge * BigInt::from(2)), BigInt::from(0)]);
        assert_eq!(charpoly_matrix(&a), expected);
    }

    #[test]
    fn empty_matrix() {
        assert_eq!(charpoly_matrix(&[]), IntPolynomial::one());
    }
}
