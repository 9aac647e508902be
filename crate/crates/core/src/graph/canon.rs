//! Canonical labeling by equitable refinement and individualization.
//!
//! The search visits every leaf of the individualization tree except those
//! in subtrees already known to be images of explored subtrees under a
//! discovered automorphism, and keeps the lexicographically least relabeled
//! adjacency. The result is therefore a function of the isomorphism class
//! alone. Orders above 64 are rejected.

use std::cmp::Ordering;
use std::collections::HashSet;

use crate::error::Result;
use crate::graph::graph6::write_graph6;
use crate::graph::Graph;

/// `label[v]` is the position of vertex `v` in the canonical graph; `code` is
/// the graph6 string of that relabeled graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    pub label: Vec<usize>,
    pub code: String,
}

impl CanonicalForm {
    pub fn graph(&self, g: &Graph) -> Graph {
        g.relabel(&self.label)
    }
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    let rows = g.require_dense("canonical_form")?;
    let c = canonize(rows, unit_partition(rows.len()));
    let mut label = vec![0; rows.len()];
    for (pos, &v) in c.lab.iter().enumerate() {
        label[v] = pos;
    }
    let code = write_graph6(&Graph::from_rows(&c.rows)).expect("order at most 64");
    Ok(CanonicalForm { label, code })
}

/// Whether some automorphism of `g` maps `v` to `w`.
pub fn same_orbit(g: &Graph, v: usize, w: usize) -> Result<bool> {
    let rows = g.require_dense("same_orbit")?;
    Ok(same_orbit_rows(rows, v, w))
}

pub(crate) fn same_orbit_rows(rows: &[u64], v: usize, w: usize) -> bool {
    if v == w {
        return true;
    }
    let marked = |x: usize| {
        let rest: Vec<usize> = (0..rows.len()).filter(|&u| u != x).collect();
        canonize(rows, vec![rest, vec![x]]).rows
    };
    marked(v) == marked(w)
}

pub(crate) fn unit_partition(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        Vec::new()
    } else {
        vec![(0..n).collect()]
    }
}

pub(crate) struct Canon {
    /// `lab[pos]` is the vertex placed at canonical position `pos`.
    pub lab: Vec<usize>,
    /// Bit rows of the canonical graph.
    pub rows: Vec<u64>,
    /// Automorphisms found during the search (`gen[v]` is the image of `v`).
    pub generators: Vec<Vec<usize>>,
}

const MAX_GENERATORS: usize = 256;

pub(crate) fn canonize(rows: &[u64], initial: Vec<Vec<usize>>) -> Canon {
    let n = rows.len();
    let mut cells = initial;
    refine(rows, &mut cells);
    let mut search = Search {
        rows,
        best: None,
        best_path: Vec::new(),
        generators: Vec::new(),
    };
    let mut path = Vec::new();
    search.visit(cells, &mut path);
    let (best_rows, lab) = search.best.unwrap_or_default();
    debug_assert_eq!(lab.len(), n);
    Canon {
        lab,
        rows: best_rows,
        generators: search.generators,
    }
}

struct Search<'a> {
    rows: &'a [u64],
    best: Option<(Vec<u64>, Vec<usize>)>,
    best_path: Vec<usize>,
    generators: Vec<Vec<usize>>,
}

impl Search<'_> {
    /// Returns `Some(depth)` when the caller chain should unwind to the node
    /// at `depth`, whose current child has become redundant.
    fn visit(&mut self, cells: Vec<Vec<usize>>, path: &mut Vec<usize>) -> Option<usize> {
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            return self.leaf(&cells, path);
        };
        let mut explored: Vec<usize> = Vec::new();
        let candidates = cells[target].clone();
        for v in candidates {
            if !explored.is_empty() && self.pruned(v, &explored, path) {
                continue;
            }
            explored.push(v);
            let mut child = individualize(&cells, target, v);
            refine(self.rows, &mut child);
            path.push(v);
            let unwind = self.visit(child, path);
            path.pop();
            if let Some(depth) = unwind {
                if depth < path.len() {
                    return Some(depth);
                }
            }
        }
        None
    }

    fn leaf(&mut self, cells: &[Vec<usize>], path: &[usize]) -> Option<usize> {
        let lab: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let code = permuted_rows(self.rows, &lab);
        let ord = match &self.best {
            None => Ordering::Less,
            Some((best, _)) => code.cmp(best),
        };
        match ord {
            Ordering::Less => {
                self.best = Some((code, lab));
                self.best_path = path.to_vec();
                None
            }
            Ordering::Greater => None,
            Ordering::Equal => {
                let (_, best_lab) = self.best.as_ref().expect("best exists");
                let mut gamma = vec![0; lab.len()];
                for (&a, &b) in best_lab.iter().zip(&lab) {
                    gamma[a] = b;
                }
                if self.generators.len() < MAX_GENERATORS {
                    self.generators.push(gamma);
                }
                let common = self
                    .best_path
                    .iter()
                    .zip(path)
                    .take_while(|(a, b)| a == b)
                    .count();
                Some(common)
            }
        }
    }

    /// `v` can be skipped if an automorphism fixing `path` pointwise maps an
    /// explored sibling onto it.
    fn pruned(&self, v: usize, explored: &[usize], path: &[usize]) -> bool {
        let n = self.rows.len();
        let mut uf = UnionFind::new(n);
        let mut any = false;
        for g in &self.generators {
            if path.iter().all(|&p| g[p] == p) {
                any = true;
                for (x, &y) in g.iter().enumerate() {
                    uf.union(x, y);
                }
            }
        }
        if !any {
            return false;
        }
        let root = uf.find(v);
        explored.iter().any(|&e| uf.find(e) == root)
    }
}

fn individualize(cells: &[Vec<usize>], target: usize, v: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(cells.len() + 1);
    out.extend_from_slice(&cells[..target]);
    out.push(vec![v]);
    out.push(cells[target].iter().copied().filter(|&x| x != v).collect());
    out.extend_from_slice(&cells[target + 1..]);
    out
}

/// Refines an ordered partition to the coarsest equitable refinement.
/// Split cells are ordered by ascending neighbor count, so the outcome
/// commutes with relabeling.
pub(crate) fn refine(rows: &[u64], cells: &mut Vec<Vec<usize>>) {
    let mut s = 0;
    while s < cells.len() {
        let mask = cells[s].iter().fold(0u64, |m, &v| m | 1 << v);
        let mut split = false;
        let mut next = Vec::with_capacity(cells.len() + 1);
        for cell in cells.drain(..) {
            if cell.len() == 1 {
                next.push(cell);
                continue;
            }
            let mut keyed: Vec<(u32, usize)> = cell
                .iter()
                .map(|&v| ((rows[v] & mask).count_ones(), v))
                .collect();
            keyed.sort_unstable();
            if keyed[0].0 == keyed[keyed.len() - 1].0 {
                next.push(cell);
                continue;
            }
            split = true;
            let mut group = vec![keyed[0].1];
            for w in keyed.windows(2) {
                if w[1].0 != w[0].0 {
                    next.push(std::mem::take(&mut group));
                }
                group.push(w[1].1);
            }
            next.push(group);
        }
        *cells = next;
        s = if split { 0 } else { s + 1 };
    }
}

fn permuted_rows(rows: &[u64], lab: &[usize]) -> Vec<u64> {
    let mut pos = vec![0usize; lab.len()];
    for (p, &v) in lab.iter().enumerate() {
        pos[v] = p;
    }
    lab.iter()
        .map(|&v| {
            let mut r = rows[v];
            let mut out = 0u64;
            while r != 0 {
                let w = r.trailing_zeros() as usize;
                out |= 1 << pos[w];
                r &= r - 1;
            }
            out
        })
        .collect()
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Orbit representatives under the group generated by `generators`.
pub(crate) fn orbits_of(n: usize, generators: &[Vec<usize>]) -> Vec<usize> {
    let mut uf = UnionFind::new(n);
    for g in generators {
        for (x, &y) in g.iter().enumerate() {
            uf.union(x, y);
        }
    }
    (0..n).map(|v| uf.find(v)).collect()
}

/// Number of isomorphism classes among `graphs`.
pub fn count_classes<'a>(graphs: impl IntoIterator<Item = &'a Graph>) -> Result<usize> {
    let mut seen = HashSet::new();
    for g in graphs {
        seen.insert(canonical_form(g)?.code);
    }
    Ok(seen.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn all_labeled(n: usize) -> impl Iterator<Item = Graph> {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        (0u64..1 << pairs.len()).map(move |mask| {
            let e: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            Graph::from_edges(n, &e).unwrap()
        })
    }

    #[test]
    fn class_counts_of_all_labeled_graphs() {
        // number of unlabeled graphs on n vertices: 1, 2, 4, 11, 34, 156
        let expected = [1, 2, 4, 11, 34, 156];
        for (i, &want) in expected.iter().enumerate() {
            let n = i + 1;
            let graphs: Vec<_> = all_labeled(n).collect();
            assert_eq!(count_classes(&graphs).unwrap(), want, "n = {n}");
        }
    }

    #[test]
    fn path_vs_star() {
        let p4 = canonical_form(&Graph::path(4)).unwrap();
        let k13 = canonical_form(&Graph::star(3)).unwrap();
        assert_ne!(p4.code, k13.code);
        let relabeled = Graph::path(4).relabel(&[2, 0, 3, 1]);
        assert_eq!(canonical_form(&relabeled).unwrap().code, p4.code);
    }

    #[test]
    fn label_yields_code() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (3, 4), (0, 4)]).unwrap();
        let c = canonical_form(&g).unwrap();
        assert_eq!(write_graph6(&c.graph(&g)).unwrap(), c.code);
    }

    #[test]
    fn symmetric_graphs_are_fast_and_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let petersen = Graph::from_edges(
            10,
            &[
                (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
                (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
                (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
            ],
        )
        .unwrap();
        for g in [Graph::complete(40), Graph::empty(40), Graph::cycle(30), petersen, Graph::complete_bipartite(12, 13)] {
            let base = canonical_form(&g).unwrap().code;
            for _ in 0..5 {
                let mut perm: Vec<usize> = (0..g.order()).collect();
                perm.shuffle(&mut rng);
                assert_eq!(canonical_form(&g.relabel(&perm)).unwrap().code, base);
            }
        }
        let _ = rng.gen::<u8>();
    }

    #[test]
    fn orbit_test() {
        let p4 = Graph::path(4);
        assert!(same_orbit(&p4, 0, 3).unwrap());
        assert!(same_orbit(&p4, 1, 2).unwrap());
        assert!(!same_orbit(&p4, 0, 1).unwrap());
    }

    #[test]
    fn too_large() {
        assert!(canonical_form(&Graph::empty(65)).is_err());
    }
}
