//! Kronecker products of graphs and palindromic families built from them.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::graph6::write_graph6;
use crate::graph::{Bipartition, Graph};
use crate::hairing::dehair;
use crate::poly::{classify, IntPolynomial, PalindromeClass, PalindromeKind};
use crate::spectral::{char_poly, charpoly_matrix};

/// `g1 ⊗ g2` with `(u, u')` at index `u·|V'| + u'`.
pub fn tensor_product(g1: &Graph, g2: &Graph) -> Graph {
    let m = g2.order();
    let mut adj = Vec::with_capacity(g1.order() * m);
    for u in 0..g1.order() {
        for u2 in 0..m {
            let mut list = Vec::with_capacity(g1.degree(u) * g2.degree(u2));
            for &v in g1.neighbors(u) {
                list.extend(g2.neighbors(u2).iter().map(|&v2| v * m + v2));
            }
            adj.push(list);
        }
    }
    Graph::from_adjacency_unchecked(adj)
}

/// `p(λ) = λ^m + a_1 λ^(m-1) + ... + a_m` has companion rows with ones on the
/// subdiagonal and `-a_(m-i)` in the last column.
fn companion(p: &IntPolynomial) -> Vec<Vec<BigInt>> {
    let m = p.degree().expect("monic");
    let c = p.coeffs();
    (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    if j == m - 1 {
                        -c[m - i].clone()
                    } else if i == j + 1 {
                        BigInt::from(1)
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

/// The monic polynomial whose roots are all products `λμ` of a root of `p1`
/// with a root of `p2`, from the Kronecker product of companion matrices.
pub fn product_charpoly(p1: &IntPolynomial, p2: &IntPolynomial) -> Result<IntPolynomial> {
    if !p1.is_monic() || !p2.is_monic() {
        return Err(Error::NotMonic);
    }
    let a = companion(p1);
    let b = companion(p2);
    let (m, k) = (a.len(), b.len());
    let mut kron = vec![vec![BigInt::zero(); m * k]; m * k];
    for i in 0..m {
        for j in 0..m {
            if a[i][j].is_zero() {
                continue;
            }
            for r in 0..k {
                for s in 0..k {
                    kron[i * k + r][j * k + s] = &a[i][j] * &b[r][s];
                }
            }
        }
    }
    Ok(charpoly_matrix(&kron))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplitComponent {
    #[serde(skip)]
    pub graph: Graph,
    /// `vertices[i]` is the product index of local vertex `i`, ascending.
    pub vertices: Vec<usize>,
    /// Local indices of the two color classes.
    pub part_v: Vec<usize>,
    pub part_w: Vec<usize>,
    pub class: Option<PalindromeClass>,
}

/// The two components of a product of connected bipartite graphs. The even
/// one, on `V1×V2 ∪ W1×W2`, contains `(0, 0)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TensorSplit {
    pub even_component: SplitComponent,
    pub odd_component: SplitComponent,
}

fn sides(g: &Graph) -> Result<Vec<bool>> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    if g.order() < 2 {
        return Err(Error::OrderTooSmall(2));
    }
    match g.bipartition() {
        Bipartition::Bipartite { part_w, .. } => {
            let mut w = vec![false; g.order()];
            for v in part_w {
                w[v] = true;
            }
            Ok(w)
        }
        Bipartition::NotBipartite { .. } => Err(Error::NotBipartite),
    }
}

pub fn bipartite_split(g1: &Graph, g2: &Graph) -> Result<TensorSplit> {
    let w1 = sides(g1)?;
    let w2 = sides(g2)?;
    let product = tensor_product(g1, g2);
    let m = g2.order();
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for x in 0..product.order() {
        let (u, u2) = (x / m, x % m);
        if w1[u] == w2[u2] {
            even.push(x);
        } else {
            odd.push(x);
        }
    }
    let build = |vertices: Vec<usize>| -> Result<SplitComponent> {
        let graph = product.induced_subgraph(&vertices)?;
        let (mut part_v, mut part_w) = (Vec::new(), Vec::new());
        for (i, &x) in vertices.iter().enumerate() {
            if w1[x / m] {
                part_w.push(i);
            } else {
                part_v.push(i);
            }
        }
        let class = if graph.order() <= crate::graph::DENSE_LIMIT {
            Some(classify(&char_poly(&graph)?)?)
        } else {
            None
        };
        Ok(SplitComponent {
            graph,
            vertices,
            part_v,
            part_w,
            class,
        })
    };
    Ok(TensorSplit {
        even_component: build(even)?,
        odd_component: build(odd)?,
    })
}

/// Hairs over order, unreduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HairRatio {
    pub numerator: usize,
    pub denominator: usize,
}

impl HairRatio {
    /// `self ≤ p/q`, by cross-multiplication.
    pub fn at_most(&self, p: usize, q: usize) -> bool {
        self.numerator * q <= p * self.denominator
    }

    pub fn is_half(&self) -> bool {
        2 * self.numerator == self.denominator
    }
}

pub fn hair_ratio(g: &Graph) -> HairRatio {
    HairRatio {
        numerator: g.hairs().len(),
        denominator: g.order(),
    }
}

/// One verified family member, with the fields of its JSON sidecar record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyMember {
    #[serde(skip)]
    pub graph: Graph,
    pub graph6: String,
    pub order: usize,
    pub class: PalindromeClass,
    pub bald: bool,
    pub hair_ratio: HairRatio,
}

fn is_signed_palindromic(g: &Graph) -> Result<bool> {
    Ok(classify(&char_poly(g)?)?.is_signed_palindrome())
}

/// Lazily emits the even component of `seed ⊗ t` for each tree `t`. Every
/// emission is checked for connectivity, bipartiteness, palindromicity and
/// failure to dehair before it is yielded.
pub struct FamilyGenerator<I> {
    seed: Graph,
    trees: I,
    remaining: usize,
}

pub fn family_generator<I>(seed: Graph, trees: I, limit: usize) -> Result<FamilyGenerator<I::IntoIter>>
where
    I: IntoIterator<Item = Graph>,
{
    if !seed.is_connected() || !seed.is_bipartite() {
        return Err(Error::SeedNotPalindromic("seed must be connected and bipartite".into()));
    }
    let class = classify(&char_poly(&seed)?)?;
    if class.kind != PalindromeKind::Palindromic {
        return Err(Error::SeedNotPalindromic(format!("seed is {class}")));
    }
    Ok(FamilyGenerator {
        seed,
        trees: trees.into_iter(),
        remaining: limit,
    })
}

impl<I: Iterator<Item = Graph>> FamilyGenerator<I> {
    fn emit(&self, tree: &Graph) -> Result<FamilyMember> {
        if !tree.is_tree() || tree.order() < 2 {
            return Err(Error::NotATree);
        }
        if !is_signed_palindromic(tree)? {
            return Err(Error::TreeNotPalindromic(write_graph6(tree)?));
        }
        let split = bipartite_split(&self.seed, tree)?;
        let graph = split.even_component.graph;
        let graph6 = write_graph6(&graph)?;
        let fail = |what: &str| Err(Error::EmissionFailedVerification(format!("{graph6}: {what}")));
        if !graph.is_connected() {
            return fail("not connected");
        }
        if !graph.is_bipartite() {
            return fail("not bipartite");
        }
        let class = classify(&char_poly(&graph)?)?;
        if class.kind != PalindromeKind::Palindromic {
            return fail(class.label());
        }
        if dehair(&graph).is_hairing() {
            return fail("is a hairing");
        }
        Ok(FamilyMember {
            order: graph.order(),
            bald: graph.is_bald(),
            hair_ratio: hair_ratio(&graph),
            class,
            graph6,
            graph,
        })
    }
}

impl<I: Iterator<Item = Graph>> Iterator for FamilyGenerator<I> {
    type Item = Result<FamilyMember>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.remaining == 0 {
            return None;
        }
        let tree = self.trees.next()?;
        self.remaining -= 1;
        Some(self.emit(&tree))
    }
}

/// The 8-cycle with chords `0-3` and `4-7`: bipartite, bald, palindromic.
pub fn bald_seed() -> Graph {
    let mut edges: Vec<_> = (0..8).map(|i| (i, (i + 1) % 8)).collect();
    edges.extend([(0, 3), (4, 7)]);
    Graph::from_edges(8, &edges).expect("valid edge list")
}
