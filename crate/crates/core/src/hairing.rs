//! Hairings: one pendant vertex attached to every vertex.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Bipartition, Graph};
use crate::poly::{PalindromeClass, PalindromeKind};

pub const SYMPLECTIC_LIMIT: usize = 32;

/// `H_k(g)`: vertex `i` keeps its index and its `j`-th hair is `j·n + i`.
pub fn hair_k(g: &Graph, k: usize) -> Graph {
    assert!(k >= 1, "hair_k needs k >= 1");
    let n = g.order();
    let mut adj: Vec<Vec<usize>> = Vec::with_capacity((k + 1) * n);
    for v in 0..n {
        let mut list = g.neighbors(v).to_vec();
        list.extend((1..=k).map(|j| j * n + v));
        adj.push(list);
    }
    for _ in 1..=k {
        for v in 0..n {
            adj.push(vec![v]);
        }
    }
    Graph::from_adjacency_unchecked(adj)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HairCertificate {
    /// Core vertices, ascending.
    pub core: Vec<usize>,
    /// `hair_of[i]` is the pendant attached to `core[i]`.
    pub hair_of: Vec<usize>,
    #[serde(skip)]
    pub core_graph: Graph,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Dehair {
    Hairing(HairCertificate),
    NotAHairing(String),
}

impl Dehair {
    pub fn is_hairing(&self) -> bool {
        matches!(self, Dehair::Hairing(_))
    }

    pub fn certificate(&self) -> Option<&HairCertificate> {
        match self {
            Dehair::Hairing(c) => Some(c),
            Dehair::NotAHairing(_) => None,
        }
    }
}

/// Recognizes `H_1` graphs in one pass over the adjacency lists.
///
/// Outside K2 components the pendant vertices are exactly the hairs, so the
/// core is forced: each pendant's neighbor, and every such neighbor must own
/// exactly one pendant. In a K2 component the lower index is the core.
pub fn dehair(g: &Graph) -> Dehair {
    let n = g.order();
    const NONE: usize = usize::MAX;
    let mut hair_of = vec![NONE; n];
    let mut is_hair = vec![false; n];
    for v in 0..n {
        match g.neighbors(v) {
            [] => return Dehair::NotAHairing(format!("vertex {v} is isolated")),
            &[u] => {
                let core = if g.degree(u) == 1 { v.min(u) } else { u };
                if core == v {
                    continue;
                }
                if hair_of[core] != NONE {
                    return Dehair::NotAHairing(format!(
                        "core vertex {core} has 2 pendant neighbors ({} and {v})",
                        hair_of[core]
                    ));
                }
                hair_of[core] = v;
                is_hair[v] = true;
            }
            _ => {}
        }
    }
    let mut index = vec![NONE; n];
    let mut core = Vec::with_capacity(n / 2);
    for v in 0..n {
        if is_hair[v] {
            continue;
        }
        if hair_of[v] == NONE {
            return Dehair::NotAHairing(format!("core vertex {v} has no pendant neighbor"));
        }
        index[v] = core.len();
        core.push(v);
    }
    let adj = core
        .iter()
        .map(|&v| {
            g.neighbors(v)
                .iter()
                .filter(|&&w| !is_hair[w])
                .map(|&w| index[w])
                .collect()
        })
        .collect();
    let hair_of = core.iter().map(|&v| hair_of[v]).collect();
    Dehair::Hairing(HairCertificate {
        core,
        hair_of,
        core_graph: Graph::from_adjacency_unchecked(adj),
    })
}

/// The class `χ(H(g))` must have.
pub fn predict_class_of_hairing(g: &Graph) -> PalindromeClass {
    let kind = match (g.is_bipartite(), g.order() % 2 == 0) {
        (true, true) => PalindromeKind::Palindromic,
        (true, false) => PalindromeKind::Antipalindromic,
        (false, _) => PalindromeKind::Neither,
    };
    PalindromeClass { kind, absolute: true }
}

/// Whether the two color classes of `H(g)` have equal size.
pub fn hairing_bipartition_balance(g: &Graph) -> Result<bool> {
    if !g.is_bipartite() {
        return Err(Error::NotBipartite);
    }
    match hair_k(g, 1).bipartition() {
        Bipartition::Bipartite { part_v, part_w } => Ok(part_v.len() == part_w.len()),
        Bipartition::NotBipartite { .. } => Err(Error::NotBipartite),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SymplecticReport {
    /// `A'` is `[[A, I], [I, 0]]` as assembled from `hair_k(g, 1)`.
    pub block_ok: bool,
    /// `A' J A' = -J`.
    pub quasisymplectic_ok: bool,
    /// `A' · (J A' J) = I`.
    pub inverse_ok: bool,
    /// `det A' = (-1)^n`.
    pub det_ok: bool,
}

impl SymplecticReport {
    pub fn all_ok(&self) -> bool {
        self.block_ok && self.quasisymplectic_ok && self.inverse_ok && self.det_ok
    }
}

type Matrix = Vec<Vec<i64>>;

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut out = vec![vec![0; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

/// Fraction-free Gaussian elimination with row pivoting.
fn bareiss_det(m: &Matrix) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        sign
    } else {
        sign * &a[n - 1][n - 1]
    }
}

pub fn symplectic_check(g: &Graph) -> Result<SymplecticReport> {
    let n = g.order();
    if n > SYMPLECTIC_LIMIT {
        return Err(Error::OrderTooLarge {
            operation: "symplectic_check",
            order: n,
            limit: SYMPLECTIC_LIMIT,
        });
    }
    let h = hair_k(g, 1);
    let size = 2 * n;
    let a_prime: Matrix = (0..size)
        .map(|i| (0..size).map(|j| i64::from(h.has_edge(i, j))).collect())
        .collect();
    let block_ok = (0..size).all(|i| {
        (0..size).all(|j| {
            let want = match (i < n, j < n) {
                (true, true) => g.has_edge(i, j),
                (true, false) => j - n == i,
                (false, true) => i - n == j,
                (false, false) => false,
            };
            (a_prime[i][j] == 1) == want
        })
    });
    let j_mat: Matrix = (0..size)
        .map(|r| {
            (0..size)
                .map(|c| {
                    if r < n && c == r + n {
                        1
                    } else if r >= n && c + n == r {
                        -1
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect();
    let neg_j: Matrix = j_mat.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
    let aja = mat_mul(&mat_mul(&a_prime, &j_mat), &a_prime);
    let inverse = mat_mul(&mat_mul(&j_mat, &a_prime), &j_mat);
    let ident: Matrix = (0..size)
        .map(|r| (0..size).map(|c| i64::from(r == c)).collect())
        .collect();
    let det = bareiss_det(&a_prime);
    let expected_det = if n % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    Ok(SymplecticReport {
        block_ok,
        quasisymplectic_ok: aja == neg_j,
        inverse_ok: mat_mul(&a_prime, &inverse) == ident,
        det_ok: det.abs() == BigInt::one() && det == expected_det,
    })
}
