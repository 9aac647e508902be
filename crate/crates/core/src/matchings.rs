//! Matching counts.
//!
//! General graphs (order ≤ 24) are handled by branching on the lowest
//! remaining vertex: it is either left unmatched or matched to a remaining
//! neighbor. Results are memoized on the remaining vertex set. Forests use a
//! two-state tree DP with no order cap.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::spectral::char_poly;

pub const MATCHING_LIMIT: usize = 24;

/// `m[k]` is the number of `k`-edge matchings, for `k = 0..=n/2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatchingTally {
    pub m: Vec<BigUint>,
}

impl MatchingTally {
    fn from_counts(mut m: Vec<BigUint>, n: usize) -> Self {
        m.resize(n / 2 + 1, BigUint::zero());
        MatchingTally { m }
    }

    pub fn get(&self, k: usize) -> BigUint {
        self.m.get(k).cloned().unwrap_or_default()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatchingCertificate {
    pub edges: Vec<(usize, usize)>,
    pub perfect: bool,
    pub unique: Option<bool>,
}

pub fn count_k_matchings(g: &Graph) -> Result<MatchingTally> {
    if g.is_forest() {
        count_k_matchings_forest(g)
    } else {
        count_k_matchings_exhaustive(g)
    }
}

/// Branch-and-count enumeration; refuses orders above [`MATCHING_LIMIT`].
pub fn count_k_matchings_exhaustive(g: &Graph) -> Result<MatchingTally> {
    let n = g.order();
    if n > MATCHING_LIMIT {
        return Err(Error::OrderTooLarge {
            operation: "count_k_matchings",
            order: n,
            limit: MATCHING_LIMIT,
        });
    }
    let rows: Vec<u32> = (0..n)
        .map(|u| g.neighbors(u).iter().fold(0u32, |m, &v| m | 1 << v))
        .collect();
    let mut memo = HashMap::new();
    let full = if n == 0 { 0 } else { u32::MAX >> (32 - n) };
    let counts = matchings_of(&rows, full, &mut memo);
    Ok(MatchingTally::from_counts(
        counts.iter().map(|&c| BigUint::from(c)).collect(),
        n,
    ))
}

fn matchings_of(rows: &[u32], remaining: u32, memo: &mut HashMap<u32, Vec<u64>>) -> Vec<u64> {
    if remaining.count_ones() < 2 {
        return vec![1];
    }
    if let Some(hit) = memo.get(&remaining) {
        return hit.clone();
    }
    let v = remaining.trailing_zeros() as usize;
    let rest = remaining & !(1 << v);
    let mut out = matchings_of(rows, rest, memo);
    let mut nb = rows[v] & rest;
    while nb != 0 {
        let u = nb.trailing_zeros();
        nb &= nb - 1;
        let sub = matchings_of(rows, rest & !(1 << u), memo);
        if out.len() < sub.len() + 1 {
            out.resize(sub.len() + 1, 0);
        }
        for (k, c) in sub.iter().enumerate() {
            out[k + 1] += c;
        }
    }
    memo.insert(remaining, out.clone());
    out
}

fn poly_mul(a: &[BigUint], b: &[BigUint]) -> Vec<BigUint> {
    let mut out = vec![BigUint::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add_into(acc: &mut Vec<BigUint>, b: &[BigUint], shift: usize) {
    if acc.len() < b.len() + shift {
        acc.resize(b.len() + shift, BigUint::zero());
    }
    for (i, y) in b.iter().enumerate() {
        acc[i + shift] += y;
    }
}

/// Tree DP per component: for each vertex, matchings of its subtree with
/// the vertex free versus matched to a child. Component tallies multiply.
pub fn count_k_matchings_forest(g: &Graph) -> Result<MatchingTally> {
    if !g.is_forest() {
        return Err(Error::NotAForest);
    }
    let n = g.order();
    const NONE: usize = usize::MAX;
    let mut parent = vec![NONE; n];
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    let mut roots = Vec::new();
    for r in 0..n {
        if seen[r] {
            continue;
        }
        roots.push(r);
        seen[r] = true;
        let mut stack = vec![r];
        while let Some(u) = stack.pop() {
            order.push(u);
            for &v in g.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    parent[v] = u;
                    stack.push(v);
                }
            }
        }
    }
    let one = vec![BigUint::one()];
    let mut free: Vec<Vec<BigUint>> = vec![one.clone(); n];
    let mut matched: Vec<Vec<BigUint>> = vec![Vec::new(); n];
    for &u in order.iter().rev() {
        let p = parent[u];
        if p == NONE {
            continue;
        }
        let mut total_u = free[u].clone();
        poly_add_into(&mut total_u, &matched[u], 0);
        // parent matched to u: x · free(p) · free(u)
        let via_u = poly_mul(&free[p], &free[u]);
        let mut new_matched = if matched[p].is_empty() {
            Vec::new()
        } else {
            poly_mul(&matched[p], &total_u)
        };
        poly_add_into(&mut new_matched, &via_u, 1);
        matched[p] = new_matched;
        free[p] = poly_mul(&free[p], &total_u);
        free[u] = Vec::new();
        matched[u] = Vec::new();
    }
    let mut result = one;
    for r in roots {
        let mut t = std::mem::take(&mut free[r]);
        poly_add_into(&mut t, &matched[r], 0);
        result = poly_mul(&result, &t);
    }
    while result.len() > 1 && result.last().is_some_and(Zero::is_zero) {
        result.pop();
    }
    Ok(MatchingTally::from_counts(result, n))
}

pub fn count_perfect_matchings(g: &Graph) -> Result<BigUint> {
    let n = g.order();
    if n % 2 == 1 {
        return Ok(BigUint::zero());
    }
    Ok(count_k_matchings(g)?.get(n / 2))
}

/// Greedy leaf pairing on a tree; `None` when no perfect matching exists.
pub fn unique_perfect_matching(t: &Graph) -> Result<Option<MatchingCertificate>> {
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    let n = t.order();
    let mut degree: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut leaves: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut edges = Vec::new();
    while let Some(leaf) = leaves.pop() {
        if removed[leaf] {
            continue;
        }
        let Some(&mate) = t.neighbors(leaf).iter().find(|&&w| !removed[w]) else {
            return Ok(None);
        };
        removed[leaf] = true;
        removed[mate] = true;
        edges.push((leaf.min(mate), leaf.max(mate)));
        for &w in t.neighbors(mate) {
            if !removed[w] {
                degree[w] -= 1;
                if degree[w] == 1 {
                    leaves.push(w);
                }
                if degree[w] == 0 {
                    return Ok(None);
                }
            }
        }
    }
    if removed.iter().all(|&r| r) {
        edges.sort_unstable();
        Ok(Some(MatchingCertificate {
            edges,
            perfect: true,
            unique: Some(true),
        }))
    } else {
        Ok(None)
    }
}

/// `|a_(2k)| = m_k` and odd coefficients vanish, for a forest of order ≤ 64.
pub fn forest_coefficient_identity(t: &Graph) -> Result<bool> {
    if !t.is_forest() {
        return Err(Error::NotAForest);
    }
    let chi = char_poly(t)?;
    let tally = count_k_matchings_forest(t)?;
    if !chi.odd_coeffs_vanish() {
        return Ok(false);
    }
    Ok(chi
        .even_coeffs()
        .iter()
        .enumerate()
        .all(|(k, a)| a.abs() == BigInt::from(tally.get(k))))
}
