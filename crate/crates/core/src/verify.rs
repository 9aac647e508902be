//! Built-in invariant suite: exhaustive checks at small orders that tie the
//! modules together. Each check reports its first counterexample.

use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;

use crate::error::Result;
use crate::graph::canon::canonical_form;
use crate::graph::graph6::{parse_graph6, write_graph6};
use crate::graph::Graph;
use crate::hairing::{dehair, hair_k, predict_class_of_hairing, symplectic_check};
use crate::matchings::{count_perfect_matchings, forest_coefficient_identity, unique_perfect_matching};
use crate::poly::{classify, substitute_hairing};
use crate::spectral::{char_poly, char_poly_sachs};
use crate::survey::{classify_survey, conjecture_scan, enumerate_all, enumerate_connected, enumerate_trees, SurveyFilter};
use crate::tensor::{product_charpoly, tensor_product};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub cases: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

fn g6(g: &Graph) -> String {
    write_graph6(g).unwrap_or_else(|_| format!("{g:?}"))
}

/// Runs `test` on every case until the first failure.
fn check<T>(
    name: &'static str,
    cases: impl IntoIterator<Item = T>,
    mut test: impl FnMut(&T) -> Result<bool>,
    describe: impl Fn(&T) -> String,
) -> Check {
    let mut count = 0;
    for c in cases {
        count += 1;
        match test(&c) {
            Ok(true) => {}
            Ok(false) => {
                return Check {
                    name,
                    passed: false,
                    cases: count,
                    counterexample: Some(describe(&c)),
                }
            }
            Err(e) => {
                return Check {
                    name,
                    passed: false,
                    cases: count,
                    counterexample: Some(format!("{}: {e}", describe(&c))),
                }
            }
        }
    }
    Check {
        name,
        passed: true,
        cases: count,
        counterexample: None,
    }
}

fn connected_upto(n: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for k in 1..=n {
        out.extend(enumerate_connected(k)?);
    }
    Ok(out)
}

fn trees_upto(n: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for k in 1..=n {
        out.extend(enumerate_trees(k)?);
    }
    Ok(out)
}

pub fn run_all() -> Result<Vec<Check>> {
    let conn6 = connected_upto(6)?;
    let conn4 = connected_upto(4)?;
    let trees10 = trees_upto(10)?;
    let trees12 = trees_upto(12)?;
    let mut all5 = Vec::new();
    for k in 1..=5 {
        all5.extend(enumerate_all(k)?);
    }
    let mut out = Vec::new();

    out.push(check(
        "graph6 round trip",
        conn6.iter(),
        |g| Ok(parse_graph6(&write_graph6(g)?)? == **g),
        |g| g6(g),
    ));
    out.push(check(
        "determinant expansion agrees with elementary subgraphs",
        conn6.iter(),
        |g| Ok(char_poly(g)? == char_poly_sachs(g)?),
        |g| g6(g),
    ));
    out.push(check(
        "forest coefficient identity",
        trees10.iter(),
        |t| forest_coefficient_identity(t),
        |t| g6(t),
    ));
    let pairs: Vec<(&Graph, u32)> = conn6
        .iter()
        .filter(|g| g.order() <= 5)
        .flat_map(|g| (1..=3).map(move |k| (g, k)))
        .collect();
    out.push(check(
        "hairing substitution identity",
        pairs,
        |(g, k)| Ok(char_poly(&hair_k(g, *k as usize))? == substitute_hairing(&char_poly(g)?, *k)?),
        |(g, k)| format!("{} k={k}", g6(g)),
    ));
    out.push(check(
        "hairing class prediction",
        all5.iter(),
        |g| Ok(classify(&char_poly(&hair_k(g, 1))?)? == predict_class_of_hairing(g)),
        |g| g6(g),
    ));
    out.push(check(
        "dehair inverts hairing",
        conn6.iter(),
        |g| {
            let Some(cert) = dehair(&hair_k(g, 1)).certificate().cloned() else {
                return Ok(false);
            };
            Ok(canonical_form(&cert.core_graph)?.code == canonical_form(g)?.code)
        },
        |g| g6(g),
    ));
    out.push(check(
        "trees: (anti)palindromic iff hairing, orders 0 or 2 mod 4",
        trees12.iter(),
        |t| {
            let class = classify(&char_poly(t)?)?;
            let signed = class.is_signed_palindrome();
            let order_ok = match class.kind {
                crate::poly::PalindromeKind::Palindromic => t.order() % 4 == 0,
                crate::poly::PalindromeKind::Antipalindromic => t.order() % 4 == 2,
                crate::poly::PalindromeKind::Neither => true,
            };
            let matching_ok = !signed || unique_perfect_matching(t)?.is_some();
            Ok(signed == dehair(t).is_hairing() && order_ok && matching_ok)
        },
        |t| g6(t),
    ));
    out.push(check(
        "quasisymplectic block identities",
        conn6.iter(),
        |g| Ok(symplectic_check(g)?.all_ok()),
        |g| g6(g),
    ));
    let products: Vec<(&Graph, &Graph)> = conn4
        .iter()
        .flat_map(|a| conn4.iter().map(move |b| (a, b)))
        .collect();
    out.push(check(
        "tensor spectrum is the product of spectra",
        products.iter(),
        |(a, b)| Ok(char_poly(&tensor_product(a, b))? == product_charpoly(&char_poly(a)?, &char_poly(b)?)?),
        |(a, b)| format!("{} {}", g6(a), g6(b)),
    ));
    out.push(check(
        "hairs of a tensor product are products of hairs",
        products.iter(),
        |(a, b)| {
            let p = tensor_product(a, b);
            let m = b.order();
            let expected: Vec<usize> = a
                .hairs()
                .iter()
                .flat_map(|&u| b.hairs().into_iter().map(move |v| u * m + v))
                .collect();
            Ok(p.hairs() == expected)
        },
        |(a, b)| format!("{} {}", g6(a), g6(b)),
    ));
    out.push(check(
        "signed palindromic graphs have a perfect matching",
        conn6.iter(),
        |g| {
            let class = classify(&char_poly(g)?)?;
            Ok(!class.is_signed_palindrome() || count_perfect_matchings(g)? > BigUint::zero())
        },
        |g| g6(g),
    ));
    let expected = [1usize, 1, 2, 6, 21, 112, 853];
    out.push(check(
        "connected generator counts",
        1..=7usize,
        |&n| Ok(enumerate_connected(n)?.len() == expected[n - 1]),
        |n| format!("order {n}"),
    ));
    let filters: Vec<SurveyFilter> = (1..=6)
        .flat_map(|n| [SurveyFilter::builtin(n, true), SurveyFilter::builtin(n, false)])
        .collect();
    out.push(check(
        "survey invariants and order conjecture",
        filters,
        |f| {
            let graphs = if f.connected_only {
                enumerate_connected(f.order)?
            } else {
                enumerate_all(f.order)?
            };
            let r = classify_survey(&graphs, *f);
            Ok(r.violations.is_empty() && conjecture_scan(&r))
        },
        |f| format!("order {} {}", f.order, f.population()),
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    #[test]
    fn suite_passes() {
        let checks = super::run_all().unwrap();
        for c in &checks {
            assert!(c.passed, "{c:?}");
        }
        assert_eq!(checks.len(), 13);
    }
}
