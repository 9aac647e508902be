//! Simple undirected graphs on vertices `0..n`.
//!
//! Adjacency is stored as strictly sorted neighbor lists, so structural
//! operations scale to very large graphs. A dense bit-row view is
//! materialized lazily (once) for graphs of order at most 64 and is what the
//! spectral and canonical-labeling code consumes.

pub mod canon;
pub mod graph6;

use std::collections::VecDeque;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Largest order for which the dense bit-row view exists.
pub const DENSE_LIMIT: usize = 64;

pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    dense: OnceLock<Vec<u64>>,
}

impl Clone for Graph {
    fn clone(&self) -> Self {
        Graph {
            n: self.n,
            adj: self.adj.clone(),
            dense: self.dense.clone(),
        }
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: vec![Vec::new(); n],
            dense: OnceLock::new(),
        }
    }

    /// Builds a graph from an edge list. Loops, repeated edges and
    /// out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, order: n });
                }
            }
            if u == v {
                return Err(Error::Loop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::ParallelEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Graph {
            n,
            adj,
            dense: OnceLock::new(),
        })
    }

    /// Caller guarantees symmetric, loop-free, strictly sorted lists.
    pub(crate) fn from_adjacency_unchecked(adj: Vec<Vec<usize>>) -> Self {
        debug_assert!(adj.iter().enumerate().all(|(u, l)| {
            l.windows(2).all(|w| w[0] < w[1]) && !l.contains(&u)
        }));
        Graph {
            n: adj.len(),
            adj,
            dense: OnceLock::new(),
        }
    }

    /// Builds a graph of order at most 64 from symmetric bit rows.
    pub(crate) fn from_rows(rows: &[u64]) -> Self {
        let adj = rows
            .iter()
            .map(|&r| (0..rows.len()).filter(|&j| r >> j & 1 == 1).collect())
            .collect();
        Self::from_adjacency_unchecked(adj)
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges).expect("path edges are simple")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_edges(n, &edges).expect("cycle edges are simple")
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Self::from_edges(n, &edges).expect("complete graph edges are simple")
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..a {
            for v in a..a + b {
                edges.push((u, v));
            }
        }
        Self::from_edges(a + b, &edges).expect("complete bipartite edges are simple")
    }

    /// The star `K_{1,leaves}` centred at vertex 0.
    pub fn star(leaves: usize) -> Self {
        Self::complete_bipartite(1, leaves)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, l)| l.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Dense bit rows (`rows[u] >> v & 1` is the adjacency), or `None` above
    /// [`DENSE_LIMIT`].
    pub fn dense_rows(&self) -> Option<&[u64]> {
        if self.n > DENSE_LIMIT {
            return None;
        }
        Some(self.dense.get_or_init(|| {
            self.adj
                .iter()
                .map(|l| l.iter().fold(0u64, |acc, &v| acc | 1 << v))
                .collect()
        }))
    }

    pub(crate) fn require_dense(&self, operation: &'static str) -> Result<&[u64]> {
        self.dense_rows().ok_or(Error::OrderTooLarge {
            operation,
            order: self.n,
            limit: DENSE_LIMIT,
        })
    }

    /// The graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut adj = vec![Vec::new(); self.n];
        for (u, list) in self.adj.iter().enumerate() {
            let mut mapped: Vec<usize> = list.iter().map(|&v| perm[v]).collect();
            mapped.sort_unstable();
            adj[perm[u]] = mapped;
        }
        Graph::from_adjacency_unchecked(adj)
    }

    /// Disjoint union; vertices of later graphs are shifted past earlier ones.
    pub fn disjoint_union<'a>(parts: impl IntoIterator<Item = &'a Graph>) -> Graph {
        let mut adj = Vec::new();
        for g in parts {
            let offset = adj.len();
            adj.extend(
                g.adj
                    .iter()
                    .map(|l| l.iter().map(|&v| v + offset).collect::<Vec<_>>()),
            );
        }
        Graph::from_adjacency_unchecked(adj)
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            queue.push_back(s);
            let mut comp = Vec::new();
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.connected_components().len() == 1
    }

    /// Two-colors each component by BFS with its smallest vertex in
    /// `part_v`, or returns an odd closed walk (a simple odd cycle).
    pub fn bipartition(&self) -> Bipartition {
        const UNSET: usize = usize::MAX;
        let mut color = vec![UNSET; self.n];
        let mut parent = vec![UNSET; self.n];
        let mut depth = vec![0usize; self.n];
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if color[s] != UNSET {
                continue;
            }
            color[s] = 0;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if color[v] == UNSET {
                        color[v] = 1 - color[u];
                        parent[v] = u;
                        depth[v] = depth[u] + 1;
                        queue.push_back(v);
                    } else if color[v] == color[u] {
                        return Bipartition::NotBipartite {
                            odd_cycle: odd_cycle(u, v, &parent, &depth),
                        };
                    }
                }
            }
        }
        let (part_v, part_w) = (0..self.n).partition(|&v| color[v] == 0);
        Bipartition::Bipartite { part_v, part_w }
    }

    pub fn is_bipartite(&self) -> bool {
        matches!(self.bipartition(), Bipartition::Bipartite { .. })
    }

    /// Degree-one vertices.
    pub fn hairs(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.adj[v].len() == 1).collect()
    }

    pub fn is_bald(&self) -> bool {
        self.adj.iter().all(|l| l.len() != 1)
    }

    /// Connected with `n - 1` edges. The empty graph is not a tree.
    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.size() == self.n - 1 && self.is_connected()
    }

    pub fn is_forest(&self) -> bool {
        self.size() + self.connected_components().len() == self.n
    }

    pub fn is_triangle_free(&self) -> bool {
        for (u, v) in self.edges() {
            let (a, b) = (&self.adj[u], &self.adj[v]);
            let (mut i, mut j) = (0, 0);
            while i < a.len() && j < b.len() {
                match a[i].cmp(&b[j]) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => return false,
                }
            }
        }
        true
    }

    /// Subgraph induced on `vertices`, renumbered by sorted order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph> {
        let mut keep = vertices.to_vec();
        keep.sort_unstable();
        keep.dedup();
        if let Some(&v) = keep.iter().find(|&&v| v >= self.n) {
            return Err(Error::VertexOutOfRange { vertex: v, order: self.n });
        }
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let adj = keep
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter(|&&w| index[w] != usize::MAX)
                    .map(|&w| index[w])
                    .collect()
            })
            .collect();
        Ok(Graph::from_adjacency_unchecked(adj))
    }

    /// Vertices whose removal disconnects their component.
    pub fn cut_vertices(&self) -> Vec<usize> {
        // iterative Tarjan lowpoint
        const UNSET: usize = usize::MAX;
        let mut disc = vec![UNSET; self.n];
        let mut low = vec![0; self.n];
        let mut is_cut = vec![false; self.n];
        let mut timer = 0;
        for root in 0..self.n {
            if disc[root] != UNSET {
                continue;
            }
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            let mut root_children = 0;
            let mut stack: Vec<(usize, usize, usize)> = vec![(root, UNSET, 0)];
            while let Some(&(u, p, next)) = stack.last() {
                if next < self.adj[u].len() {
                    let v = self.adj[u][next];
                    stack.last_mut().expect("non-empty").2 += 1;
                    if disc[v] == UNSET {
                        disc[v] = timer;
                        low[v] = timer;
                        timer += 1;
                        if u == root {
                            root_children += 1;
                        }
                        stack.push((v, u, 0));
                    } else if v != p {
                        low[u] = low[u].min(disc[v]);
                    }
                } else {
                    stack.pop();
                    if p != UNSET {
                        low[p] = low[p].min(low[u]);
                        if p != root && low[u] >= disc[p] {
                            is_cut[p] = true;
                        }
                    }
                }
            }
            if root_children >= 2 {
                is_cut[root] = true;
            }
        }
        (0..self.n).filter(|&v| is_cut[v]).collect()
    }
}

fn odd_cycle(u: usize, v: usize, parent: &[usize], depth: &[usize]) -> Vec<usize> {
    let (mut a, mut b) = (u, v);
    let mut left = Vec::new();
    let mut right = Vec::new();
    while depth[a] > depth[b] {
        left.push(a);
        a = parent[a];
    }
    while depth[b] > depth[a] {
        right.push(b);
        b = parent[b];
    }
    while a != b {
        left.push(a);
        right.push(b);
        a = parent[a];
        b = parent[b];
    }
    left.push(a);
    left.extend(right.into_iter().rev());
    left
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bipartition {
    Bipartite {
        part_v: Vec<usize>,
        part_w: Vec<usize>,
    },
    /// A simple cycle of odd length, listed in traversal order.
    NotBipartite { odd_cycle: Vec<usize> },
}
