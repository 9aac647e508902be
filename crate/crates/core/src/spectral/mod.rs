//! Characteristic polynomials of graphs.

pub mod berkowitz;
pub mod sachs;

use nalgebra::DMatrix;
use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matchings::count_k_matchings;
use crate::poly::IntPolynomial;

pub use berkowitz::charpoly_matrix;
pub use sachs::{char_poly_sachs, sachs_subgraphs, SachsSubgraph};

/// `det(λI - A_G)`, exact. Orders up to 64.
pub fn char_poly(g: &Graph) -> Result<IntPolynomial> {
    let rows = g.require_dense("char_poly")?;
    Ok(berkowitz::charpoly_rows(rows))
}

/// Characteristic polynomial of a tree from its matching numbers:
/// `a_(2k) = (-1)^k m_k`, odd coefficients zero.
pub fn tree_char_poly(t: &Graph) -> Result<IntPolynomial> {
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    let tally = count_k_matchings(t)?;
    let n = t.order();
    let mut coeffs = vec![BigInt::from(0); n + 1];
    for (k, m) in tally.m.iter().enumerate() {
        let m = BigInt::from(m.clone());
        coeffs[2 * k] = if k % 2 == 0 { m } else { -m };
    }
    Ok(IntPolynomial::new(coeffs))
}

pub const DEFAULT_SPECTRUM_TOLERANCE: f64 = 1e-9;

/// Floating-point eigenvalues, ascending. Diagnostics only.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub tolerance: f64,
}

impl Spectrum {
    fn close(&self, a: f64, b: f64) -> bool {
        (a - b).abs() <= self.tolerance * a.abs().max(b.abs()).max(1.0)
    }

    /// Every eigenvalue `λ` is matched (as a multiset) by another `λ'` with
    /// `λλ' = 1`. Fails as soon as an eigenvalue is zero.
    pub fn is_reciprocal(&self) -> bool {
        let mut unused: Vec<f64> = self.eigenvalues.clone();
        while let Some(x) = unused.pop() {
            if self.close(x, 0.0) {
                return false;
            }
            let want = 1.0 / x;
            match unused.iter().position(|&y| self.close(y, want)) {
                Some(i) => {
                    unused.swap_remove(i);
                }
                None if self.close(x * x, 1.0) => {}
                None => return false,
            }
        }
        true
    }

    /// The multiset is closed under negation.
    pub fn is_symmetric(&self) -> bool {
        let e = &self.eigenvalues;
        e.iter().zip(e.iter().rev()).all(|(a, b)| self.close(*a, -*b))
    }
}

pub fn approx_spectrum(g: &Graph) -> Result<Spectrum> {
    let rows = g.require_dense("approx_spectrum")?;
    let n = rows.len();
    let m = DMatrix::from_fn(n, n, |i, j| f64::from(u8::from(rows[i] >> j & 1 == 1)));
    let mut eigenvalues: Vec<f64> = m.symmetric_eigen().eigenvalues.iter().copied().collect();
    eigenvalues.sort_by(f64::total_cmp);
    Ok(Spectrum {
        eigenvalues,
        tolerance: DEFAULT_SPECTRUM_TOLERANCE,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hairing::hair_k;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    fn c6_chord() -> Graph {
        let mut e: Vec<_> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        e.push((0, 3));
        Graph::from_edges(6, &e).unwrap()
    }

    /// Left factor of the tensor counterexample: two columns of three,
    /// rungs `i-i'`, column paths, and crossings `1-2'`, `1-3'`, `1'-2`, `1'-3`.
    pub(crate) fn counterexample_factor() -> Graph {
        // columns 0,1,2 and 3,4,5
        Graph::from_edges(
            6,
            &[(0, 3), (1, 4), (2, 5), (0, 1), (1, 2), (3, 4), (4, 5), (0, 4), (0, 5), (3, 1), (3, 2)],
        )
        .unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(char_poly(&Graph::path(2)).unwrap(), p(&[1, 0, -1]));
        assert_eq!(char_poly(&c6_chord()).unwrap(), p(&[1, 0, -7, 0, 7, 0, -1]));
        assert_eq!(
            char_poly(&counterexample_factor()).unwrap(),
            p(&[1, 0, -11, -12, 3, 4, -1])
        );
        assert_eq!(char_poly(&Graph::empty(1)).unwrap(), p(&[1, 0]));
        assert_eq!(char_poly(&Graph::empty(0)).unwrap(), p(&[1]));
    }

    #[test]
    fn sachs_agrees_on_examples() {
        for g in [c6_chord(), counterexample_factor(), Graph::complete(6), Graph::cycle(7)] {
            assert_eq!(char_poly(&g).unwrap(), char_poly_sachs(&g).unwrap());
        }
    }

    #[test]
    fn tree_polynomials() {
        assert_eq!(tree_char_poly(&Graph::path(4)).unwrap(), p(&[1, 0, -3, 0, 1]));
        let hp5 = hair_k(&Graph::path(5), 1);
        assert_eq!(
            tree_char_poly(&hp5).unwrap(),
            p(&[1, 0, -9, 0, 25, 0, -25, 0, 9, 0, -1])
        );
        assert_eq!(tree_char_poly(&Graph::empty(1)).unwrap(), p(&[1, 0]));
        assert_eq!(tree_char_poly(&Graph::cycle(4)), Err(Error::NotATree));
    }

    #[test]
    fn double_broom_by_direct_determinant() {
        let h2 = hair_k(&Graph::path(2), 2);
        assert_eq!(char_poly(&h2).unwrap(), p(&[1, 0, -5, 0, 4, 0, 0]));
    }

    #[test]
    fn spectra() {
        let s = approx_spectrum(&Graph::path(2)).unwrap();
        assert!((s.eigenvalues[0] + 1.0).abs() < 1e-12 && (s.eigenvalues[1] - 1.0).abs() < 1e-12);
        let s = approx_spectrum(&Graph::path(4)).unwrap();
        assert!(s.is_reciprocal());
        assert!(s.is_symmetric());
        let s = approx_spectrum(&Graph::cycle(4)).unwrap();
        assert_eq!(s.eigenvalues.iter().filter(|x| x.abs() < 1e-9).count(), 2);
        assert!(!s.is_reciprocal());
    }

    #[test]
    fn large_order_uses_bigint() {
        let g = Graph::complete(40);
        let c = char_poly(&g).unwrap();
        // χ(K40) = (λ - 39)(λ + 1)^39
        assert_eq!(c.eval(&BigInt::from(0)), BigInt::from(-39));
        assert_eq!(c.eval(&BigInt::from(39)), BigInt::from(0));
        assert_eq!(c.eval(&BigInt::from(-1)), BigInt::from(0));
        assert!(char_poly(&Graph::empty(65)).is_err());
    }
}
