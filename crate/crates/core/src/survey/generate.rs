//! Isomorph-free generation of connected graphs, trees and all graphs.
//!
//! Connected graphs of order `n` are children of connected graphs of order
//! `n - 1`: a new vertex joined to a nonempty subset. A child is kept only
//! when its new vertex lies in the automorphism orbit of its designated
//! vertex, the non-cut vertex that comes last in canonical order. Removing
//! that vertex recovers the unique parent class, so children of different
//! parents are never isomorphic; duplicates under the parent's own
//! automorphisms are removed by canonical code.

use std::collections::{BTreeMap, HashSet};

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::canon::{canonize, orbits_of, refine, same_orbit_rows, unit_partition};
use crate::graph::Graph;

/// Largest order the built-in connected generator accepts.
pub const BUILTIN_LIMIT: usize = 10;
/// Largest order for [`enumerate_trees`].
pub const TREE_LIMIT: usize = 18;

/// Graph6 text of a graph given as bit rows (order at most 62).
pub(crate) fn code_of_rows(rows: &[u64]) -> String {
    let n = rows.len();
    debug_assert!(n <= 62);
    let mut out = Vec::with_capacity(1 + (n * n) / 12 + 1);
    out.push(n as u8 + 63);
    let (mut word, mut filled) = (0u8, 0);
    for j in 1..n {
        for row in &rows[..j] {
            word = word << 1 | (row >> j & 1) as u8;
            filled += 1;
            if filled == 6 {
                out.push(word + 63);
                word = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((word << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

fn connected_without(rows: &[u64], v: usize) -> bool {
    let n = rows.len();
    let all = ((1u64 << n) - 1) & !(1 << v);
    if all == 0 {
        return true;
    }
    let mut seen = 1u64 << all.trailing_zeros();
    let mut frontier = seen;
    while frontier != 0 {
        let u = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let fresh = rows[u] & all & !seen;
        seen |= fresh;
        frontier |= fresh;
    }
    seen == all
}

/// One connected class, in canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Canonical {
    pub code: String,
    pub rows: Vec<u64>,
}

impl Canonical {
    pub fn graph(&self) -> Graph {
        Graph::from_rows(&self.rows)
    }
}

/// Accepted children of a canonical connected parent, sorted by code.
pub(crate) fn children(parent: &[u64]) -> Vec<Canonical> {
    let k = parent.len();
    let fresh = k;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut rows = parent.to_vec();
    rows.push(0);
    for s in 1u64..(1u64 << k) {
        for (v, row) in rows.iter_mut().enumerate().take(k) {
            *row = parent[v] | (s >> v & 1) << fresh;
        }
        rows[fresh] = s;
        let canon = canonize(&rows, unit_partition(k + 1));
        let designated = canon
            .lab
            .iter()
            .rev()
            .copied()
            .find(|&v| connected_without(&rows, v))
            .expect("a connected graph has a non-cut vertex");
        if designated != fresh && !related(&rows, &canon.generators, fresh, designated) {
            continue;
        }
        let code = code_of_rows(&canon.rows);
        if seen.insert(code.clone()) {
            out.push(Canonical {
                code,
                rows: canon.rows,
            });
        }
    }
    out.sort_by(|a, b| a.code.cmp(&b.code));
    out
}

fn related(rows: &[u64], generators: &[Vec<usize>], v: usize, w: usize) -> bool {
    if rows[v].count_ones() != rows[w].count_ones() {
        return false;
    }
    let orbit = orbits_of(rows.len(), generators);
    if orbit[v] == orbit[w] {
        return true;
    }
    let mut cells = unit_partition(rows.len());
    refine(rows, &mut cells);
    if !cells.iter().any(|c| c.contains(&v) && c.contains(&w)) {
        return false;
    }
    same_orbit_rows(rows, v, w)
}

fn order_check(n: usize, limit: usize, operation: &'static str) -> Result<()> {
    if n > limit {
        return Err(Error::OrderTooLarge {
            operation,
            order: n,
            limit,
        });
    }
    Ok(())
}

/// Classes of order `n` from the classes of order `n - 1`.
pub(crate) fn next_level(parents: &[Canonical]) -> Vec<Canonical> {
    let mut level: Vec<Canonical> = parents
        .par_iter()
        .flat_map_iter(|p| children(&p.rows))
        .collect();
    level.sort_by(|a, b| a.code.cmp(&b.code));
    level
}

/// Connected classes of every order `1..=n`; entry `i` holds order `i + 1`.
pub fn connected_levels(n: usize) -> Result<Vec<Vec<Canonical>>> {
    order_check(n, BUILTIN_LIMIT, "enumerate_connected")?;
    let mut levels: Vec<Vec<Canonical>> = Vec::with_capacity(n);
    if n == 0 {
        return Ok(levels);
    }
    levels.push(vec![Canonical {
        code: code_of_rows(&[0]),
        rows: vec![0],
    }]);
    while levels.len() < n {
        let next = next_level(levels.last().expect("nonempty"));
        levels.push(next);
    }
    Ok(levels)
}

/// One graph per isomorphism class of connected graphs of order `n`,
/// canonically labeled and sorted by graph6 code.
pub fn enumerate_connected(n: usize) -> Result<Vec<Graph>> {
    let levels = connected_levels(n)?;
    Ok(levels
        .last()
        .map(|l| l.iter().map(Canonical::graph).collect())
        .unwrap_or_default())
}

/// Disconnected graphs of order `n` as disjoint unions of connected classes
/// of smaller orders; `levels` must cover orders `1..n`.
pub fn disconnected_from_levels(n: usize, levels: &[Vec<Canonical>]) -> Vec<Graph> {
    assert!(n <= 1 || levels.len() >= n - 1);
    let mut out = Vec::new();
    // parts: nonincreasing (order, index) pairs so every multiset appears once
    let mut parts: Vec<(usize, usize)> = Vec::new();
    fn rec(
        remaining: usize,
        bound: (usize, usize),
        n: usize,
        levels: &[Vec<Canonical>],
        parts: &mut Vec<(usize, usize)>,
        out: &mut Vec<Graph>,
    ) {
        if remaining == 0 {
            if parts.len() >= 2 {
                let graphs: Vec<Graph> = parts.iter().map(|&(o, i)| levels[o - 1][i].graph()).collect();
                out.push(Graph::disjoint_union(&graphs));
            }
            return;
        }
        for order in (1..=remaining.min(bound.0)).rev() {
            if order == n {
                continue;
            }
            let count = levels[order - 1].len();
            let top = if order == bound.0 { bound.1 + 1 } else { count };
            for i in (0..top.min(count)).rev() {
                parts.push((order, i));
                rec(remaining - order, (order, i), n, levels, parts, out);
                parts.pop();
            }
        }
    }
    if n >= 2 {
        rec(n, (n, usize::MAX - 1), n, levels, &mut parts, &mut out);
    }
    out
}

/// Every graph of order `n` up to isomorphism: the connected classes
/// followed by the disconnected ones.
pub fn enumerate_all(n: usize) -> Result<Vec<Graph>> {
    let levels = connected_levels(n)?;
    let mut out: Vec<Graph> = levels
        .last()
        .map(|l| l.iter().map(Canonical::graph).collect())
        .unwrap_or_default();
    out.extend(disconnected_from_levels(n, &levels));
    Ok(out)
}

/// Unlabeled trees of order `n`, canonically labeled, sorted by code.
pub fn enumerate_trees(n: usize) -> Result<Vec<Graph>> {
    order_check(n, TREE_LIMIT, "enumerate_trees")?;
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut level: BTreeMap<String, Vec<u64>> = BTreeMap::new();
    level.insert(code_of_rows(&[0]), vec![0]);
    for k in 1..n {
        let parents: Vec<Vec<u64>> = level.into_values().collect();
        let grown: Vec<(String, Vec<u64>)> = parents
            .par_iter()
            .flat_map_iter(|p| {
                (0..k).map(move |v| {
                    let mut rows = p.clone();
                    rows[v] |= 1 << k;
                    rows.push(1 << v);
                    let c = canonize(&rows, unit_partition(k + 1));
                    (code_of_rows(&c.rows), c.rows)
                })
            })
            .collect();
        level = grown.into_iter().collect();
    }
    Ok(level.values().map(|r| Graph::from_rows(r)).collect())
}

/// Uniformly random labeled tree from a random Prüfer sequence.
pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Graph {
    if n <= 2 {
        return Graph::path(n);
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &x in &seq {
        degree[x] += 1;
    }
    let mut adj = vec![Vec::new(); n];
    let link = |u: usize, v: usize, adj: &mut Vec<Vec<usize>>| {
        adj[u].push(v);
        adj[v].push(u);
    };
    // linear decoding: `ptr` scans for the smallest leaf, `leaf` follows chains
    let mut ptr = (0..n).find(|&v| degree[v] == 1).expect("a leaf exists");
    let mut leaf = ptr;
    for &x in &seq {
        link(leaf, x, &mut adj);
        degree[x] -= 1;
        if degree[x] == 1 && x < ptr {
            leaf = x;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    link(leaf, n - 1, &mut adj);
    for l in &mut adj {
        l.sort_unstable();
    }
    Graph::from_adjacency_unchecked(adj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::canon::canonical_form;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn connected_counts() {
        let levels = connected_levels(7).unwrap();
        let counts: Vec<usize> = levels.iter().map(Vec::len).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112, 853]);
        for level in &levels {
            let codes: HashSet<_> = level.iter().map(|c| c.code.clone()).collect();
            assert_eq!(codes.len(), level.len());
            for c in level {
                let g = c.graph();
                assert!(g.is_connected());
                assert_eq!(canonical_form(&g).unwrap().code, c.code);
            }
        }
    }

    #[test]
    fn code_matches_writer() {
        for g in [Graph::cycle(7), Graph::complete(5), Graph::star(9)] {
            let rows = g.dense_rows().unwrap();
            assert_eq!(code_of_rows(rows), crate::graph::graph6::write_graph6(&g).unwrap());
        }
    }

    #[test]
    fn all_graph_counts() {
        let counts: Vec<usize> = (1..=7).map(|n| enumerate_all(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 11, 34, 156, 1044]);
        let six = enumerate_all(6).unwrap();
        assert_eq!(crate::graph::canon::count_classes(&six).unwrap(), 156);
    }

    #[test]
    fn tree_counts() {
        let counts: Vec<usize> = (1..=12).map(|n| enumerate_trees(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551]);
        assert!(enumerate_trees(12).unwrap().iter().all(Graph::is_tree));
        assert!(enumerate_trees(19).is_err());
    }

    #[test]
    fn random_trees_are_trees() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [1, 2, 3, 10, 257, 5000] {
            let t = random_tree(n, &mut rng);
            assert_eq!(t.order(), n);
            assert!(t.is_tree());
        }
    }

    #[test]
    fn order_limit() {
        assert!(enumerate_connected(11).is_err());
        assert!(enumerate_connected(0).unwrap().is_empty());
    }
}
