//! Brute-force characteristic polynomial from elementary subgraphs.
//!
//! For each `i`, `(-1)^i a_i` is the sum of `(-1)^r 2^s` over subgraphs on
//! `i` vertices whose components are single edges or cycles, where `r` is
//! `i` minus the number of components and `s` is the number of cycles.
//!
//! Enumeration visits vertices in index order. The lowest undecided vertex
//! is either left uncovered, matched to a higher neighbor, or used as the
//! smallest vertex of a cycle; a cycle is accepted in only one of its two
//! directions.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::poly::IntPolynomial;

pub const SACHS_LIMIT: usize = 12;

/// One elementary subgraph, as found by [`sachs_subgraphs`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SachsSubgraph {
    pub edges: Vec<(usize, usize)>,
    pub cycles: Vec<Vec<usize>>,
}

impl SachsSubgraph {
    /// Covered vertex count.
    pub fn size(&self) -> usize {
        2 * self.edges.len() + self.cycles.iter().map(Vec::len).sum::<usize>()
    }

    pub fn components(&self) -> usize {
        self.edges.len() + self.cycles.len()
    }

    pub fn rank(&self) -> usize {
        self.size() - self.components()
    }

    pub fn corank(&self) -> usize {
        self.cycles.len()
    }
}

pub fn char_poly_sachs(g: &Graph) -> Result<IntPolynomial> {
    let n = g.order();
    if n > SACHS_LIMIT {
        return Err(Error::OrderTooLarge {
            operation: "char_poly_sachs",
            order: n,
            limit: SACHS_LIMIT,
        });
    }
    let rows = g.require_dense("char_poly_sachs")?;
    let mut sums = vec![0i64; n + 1];
    let mut visit = |i: usize, c: usize, s: usize| {
        let sign = if (i - c) % 2 == 0 { 1 } else { -1 };
        sums[i] += sign << s;
    };
    walk(rows, 0, 0, 0, 0, 0, &mut Vec::new(), &mut visit);
    let coeffs = sums
        .iter()
        .enumerate()
        .map(|(i, &s)| BigInt::from(if i % 2 == 0 { s } else { -s }))
        .collect();
    Ok(IntPolynomial::new(coeffs))
}

/// Every elementary subgraph of `g` (including the empty one).
pub fn sachs_subgraphs(g: &Graph) -> Result<Vec<SachsSubgraph>> {
    let n = g.order();
    if n > SACHS_LIMIT {
        return Err(Error::OrderTooLarge {
            operation: "sachs_subgraphs",
            order: n,
            limit: SACHS_LIMIT,
        });
    }
    let rows = g.require_dense("sachs_subgraphs")?;
    let mut out = Vec::new();
    let mut parts = Vec::new();
    collect(rows, 0, 0, &mut parts, &mut out);
    Ok(out)
}

#[derive(Clone)]
enum Part {
    Edge(usize, usize),
    Cycle(Vec<usize>),
}

#[allow(clippy::too_many_arguments)]
fn walk(
    rows: &[u64],
    v: usize,
    used: u64,
    i: usize,
    c: usize,
    s: usize,
    scratch: &mut Vec<usize>,
    visit: &mut impl FnMut(usize, usize, usize),
) {
    let n = rows.len();
    if v == n {
        visit(i, c, s);
        return;
    }
    if used >> v & 1 == 1 {
        walk(rows, v + 1, used, i, c, s, scratch, visit);
        return;
    }
    walk(rows, v + 1, used, i, c, s, scratch, visit);
    let higher_free = !used & !((2u64 << v) - 1) & full(n);
    let mut nb = rows[v] & higher_free;
    while nb != 0 {
        let u = nb.trailing_zeros() as usize;
        nb &= nb - 1;
        walk(rows, v + 1, used | 1 << v | 1 << u, i + 2, c + 1, s, scratch, visit);
    }
    let mut cycles = Vec::new();
    scratch.clear();
    scratch.push(v);
    cycles_from(rows, v, higher_free, scratch, &mut cycles);
    for mask in cycles {
        let len = mask.count_ones() as usize;
        walk(rows, v + 1, used | mask, i + len, c + 1, s + 1, scratch, visit);
    }
}

fn collect(rows: &[u64], v: usize, used: u64, parts: &mut Vec<Part>, out: &mut Vec<SachsSubgraph>) {
    let n = rows.len();
    if v == n {
        let mut sub = SachsSubgraph {
            edges: Vec::new(),
            cycles: Vec::new(),
        };
        for p in parts.iter() {
            match p {
                Part::Edge(a, b) => sub.edges.push((*a, *b)),
                Part::Cycle(cy) => sub.cycles.push(cy.clone()),
            }
        }
        out.push(sub);
        return;
    }
    collect(rows, v + 1, used, parts, out);
    if used >> v & 1 == 1 {
        return;
    }
    let higher_free = !used & !((2u64 << v) - 1) & full(n);
    let mut nb = rows[v] & higher_free;
    while nb != 0 {
        let u = nb.trailing_zeros() as usize;
        nb &= nb - 1;
        parts.push(Part::Edge(v, u));
        collect(rows, v + 1, used | 1 << v | 1 << u, parts, out);
        parts.pop();
    }
    let mut paths = Vec::new();
    cycle_paths(rows, v, higher_free, &mut vec![v], &mut paths);
    for cy in paths {
        let mask = cy.iter().fold(0u64, |m, &x| m | 1 << x);
        parts.push(Part::Cycle(cy));
        collect(rows, v + 1, used | mask, parts, out);
        parts.pop();
    }
}

fn full(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Vertex masks of cycles whose smallest vertex is `path[0]` and whose other
/// vertices lie in `free`.
fn cycles_from(rows: &[u64], anchor: usize, free: u64, path: &mut Vec<usize>, out: &mut Vec<u64>) {
    let last = *path.last().expect("path starts at the anchor");
    if path.len() >= 3 && rows[last] >> anchor & 1 == 1 && path[1] < last {
        out.push(path.iter().fold(0u64, |m, &x| m | 1 << x));
    }
    let mut nb = rows[last] & free;
    while nb != 0 {
        let u = nb.trailing_zeros() as usize;
        nb &= nb - 1;
        if path.contains(&u) {
            continue;
        }
        path.push(u);
        cycles_from(rows, anchor, free, path, out);
        path.pop();
    }
}

fn cycle_paths(rows: &[u64], anchor: usize, free: u64, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let last = *path.last().expect("path starts at the anchor");
    if path.len() >= 3 && rows[last] >> anchor & 1 == 1 && path[1] < last {
        out.push(path.clone());
    }
    let mut nb = rows[last] & free;
    while nb != 0 {
        let u = nb.trailing_zeros() as usize;
        nb &= nb - 1;
        if path.contains(&u) {
            continue;
        }
        path.push(u);
        cycle_paths(rows, anchor, free, path, out);
        path.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_by_hand() {
        // empty subgraph, three single edges, and the triangle itself
        let subs = sachs_subgraphs(&Graph::cycle(3)).unwrap();
        assert_eq!(subs.len(), 5);
        let tri: Vec<_> = subs.iter().filter(|s| s.corank() == 1).collect();
        assert_eq!(tri.len(), 1);
        assert_eq!((tri[0].size(), tri[0].rank()), (3, 2));
        assert_eq!(
            char_poly_sachs(&Graph::cycle(3)).unwrap(),
            IntPolynomial::from_i64(&[1, 0, -3, -2])
        );
    }

    #[test]
    fn small_examples() {
        assert_eq!(
            char_poly_sachs(&Graph::path(4)).unwrap(),
            IntPolynomial::from_i64(&[1, 0, -3, 0, 1])
        );
        assert_eq!(char_poly_sachs(&Graph::empty(3)).unwrap(), IntPolynomial::monomial(3));
        // C4: one 4-cycle counted once
        let subs = sachs_subgraphs(&Graph::cycle(4)).unwrap();
        assert_eq!(subs.iter().filter(|s| s.corank() == 1).count(), 1);
        assert_eq!(
            char_poly_sachs(&Graph::cycle(4)).unwrap(),
            IntPolynomial::from_i64(&[1, 0, -4, 0, 0])
        );
    }

    #[test]
    fn k4_cycle_count() {
        // K4 has four triangles and three 4-cycles
        let subs = sachs_subgraphs(&Graph::complete(4)).unwrap();
        let cyc = |len| subs.iter().filter(|s| s.cycles.len() == 1 && s.cycles[0].len() == len && s.edges.is_empty()).count();
        assert_eq!(cyc(3), 4);
        assert_eq!(cyc(4), 3);
    }

    #[test]
    fn order_limit() {
        assert!(char_poly_sachs(&Graph::empty(13)).is_err());
    }
}
