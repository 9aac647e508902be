//! Side-by-side comparison of survey tallies with the published results
//! table (orders 2 to 12).
//!
//! The table does not say whether it counts connected graphs only, and its
//! `|P.|` column reads inclusively at some orders and exclusively at others,
//! so every cell is evaluated under each population and each reading. A
//! cell whose readings disagree with each other is AMBIGUOUS-SEMANTICS; the
//! per-reading MATCH / MISMATCH lines and witness lists are always kept.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::canon::canonical_form;
use crate::graph::graph6::parse_graph6;
use crate::poly::PalindromeKind;
use crate::tensor::bipartite_split;

use super::{SurveyReport, Witness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "MATCH")]
    Match,
    #[serde(rename = "MISMATCH")]
    Mismatch,
    #[serde(rename = "AMBIGUOUS-SEMANTICS")]
    AmbiguousSemantics,
    #[serde(rename = "NOT-COMPUTED")]
    NotComputed,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Match => "MATCH",
            Status::Mismatch => "MISMATCH",
            Status::AmbiguousSemantics => "AMBIGUOUS-SEMANTICS",
            Status::NotComputed => "NOT-COMPUTED",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Published {
    Exact(u64),
    AtLeast(u64),
}

impl Published {
    fn status(&self, derived: u64) -> Status {
        let ok = match *self {
            Published::Exact(v) => derived == v,
            Published::AtLeast(v) => derived >= v,
        };
        if ok {
            Status::Match
        } else {
            Status::Mismatch
        }
    }
}

impl fmt::Display for Published {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Published::Exact(v) => write!(f, "{v}"),
            Published::AtLeast(v) => write!(f, ">={v}"),
        }
    }
}

pub const COLUMNS: [&str; 8] = ["P.", "A.", "|P.|", "Trees", "T.P.", "H.P.", "H.A.", "H.|P.|"];

/// Rows of the published table, columns in [`COLUMNS`] order.
pub fn published_table() -> Vec<(usize, [Published; 8])> {
    use Published::{AtLeast as L, Exact as E};
    vec![
        (2, [E(0), E(1), E(1), E(1), E(0), E(0), E(1), E(1)]),
        (4, [E(1), E(0), E(1), E(1), E(0), E(1), E(0), E(1)]),
        (6, [E(0), E(4), E(4), E(1), E(0), E(0), E(2), E(2)]),
        (8, [E(14), E(0), E(35), E(2), E(1), E(5), E(0), E(4)]),
        (10, [E(0), E(53), E(326), E(3), E(0), E(0), E(5), E(9)]),
        (12, [L(368), E(0), L(389), E(7), E(6), E(17), E(0), E(22)]),
    ]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Reading {
    pub population: String,
    pub reading: String,
    pub derived: Option<u64>,
    pub status: Status,
    pub witnesses: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cell {
    pub order: usize,
    pub column: String,
    pub published: Published,
    pub status: Status,
    pub readings: Vec<Reading>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FigureCheck {
    pub claim: String,
    pub expected: u64,
    pub derived: u64,
    pub status: Status,
    pub witnesses: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Reconciliation {
    pub cells: Vec<Cell>,
    pub figure_checks: Vec<FigureCheck>,
    /// Survey violations carried over from the input reports.
    pub violations: Vec<String>,
}

const REQUIRED: [usize; 4] = [2, 4, 6, 8];

fn codes<'a>(ws: impl Iterator<Item = &'a Witness>) -> Vec<String> {
    ws.map(|w| w.graph6.clone()).collect()
}

struct Derivation {
    reading: &'static str,
    count: u64,
    witnesses: Vec<String>,
}

fn derive(column: &str, r: &SurveyReport) -> Vec<Derivation> {
    let signed = |kind: PalindromeKind, hairing_only: bool| {
        codes(
            r.witnesses
                .iter()
                .filter(move |w| w.class.kind == kind && (!hairing_only || w.hairing)),
        )
    };
    let absolute = |exclusive: bool, hairing_only: bool| {
        let mut v: Vec<String> = Vec::new();
        if !exclusive {
            v.extend(codes(r.witnesses.iter().filter(|w| !hairing_only || w.hairing)));
        }
        v.extend(codes(
            r.absolute_witnesses.iter().filter(|w| !hairing_only || w.hairing),
        ));
        v.sort();
        v
    };
    let one = |reading, count, witnesses| vec![Derivation { reading, count, witnesses }];
    match column {
        "P." => one("count", r.counts.palindromic, signed(PalindromeKind::Palindromic, false)),
        "A." => one("count", r.counts.antipalindromic, signed(PalindromeKind::Antipalindromic, false)),
        "|P.|" => vec![
            Derivation {
                reading: "inclusive",
                count: r.counts.absolute_inclusive,
                witnesses: absolute(false, false),
            },
            Derivation {
                reading: "exclusive",
                count: r.counts.absolute_exclusive,
                witnesses: absolute(true, false),
            },
        ],
        "Trees" => one(
            "(anti)palindromic trees",
            r.trees.palindromic + r.trees.antipalindromic,
            codes(r.witnesses.iter().filter(|w| w.tree)),
        ),
        "H.P." => one("count", r.hairings.palindromic, signed(PalindromeKind::Palindromic, true)),
        "H.A." => one("count", r.hairings.antipalindromic, signed(PalindromeKind::Antipalindromic, true)),
        "H.|P.|" => vec![
            Derivation {
                reading: "inclusive",
                count: r.hairings.absolute_inclusive,
                witnesses: absolute(false, true),
            },
            Derivation {
                reading: "exclusive",
                count: r.hairings.absolute_exclusive,
                witnesses: absolute(true, true),
            },
        ],
        _ => unreachable!("column {column}"),
    }
}

type Key = (usize, bool);

fn find<'a>(reports: &'a BTreeMap<Key, &'a SurveyReport>, order: usize, connected: bool) -> Option<&'a SurveyReport> {
    reports.get(&(order, connected)).copied()
}

const TENSOR_READING: &str = "components of products of two (anti)palindromic connected bipartite graphs of order >= 4";

/// Canonical codes of the components of `g1 ⊗ g2` over all admissible
/// factor pairs whose orders multiply to `2n`.
fn tensor_components(n: usize, reports: &BTreeMap<Key, &SurveyReport>) -> Option<BTreeSet<String>> {
    let mut out = BTreeSet::new();
    for a in 4..=2 * n {
        if (2 * n) % a != 0 || a > (2 * n) / a {
            continue;
        }
        let b = 2 * n / a;
        if b < 4 {
            continue;
        }
        let factors = |order: usize| -> Option<Vec<crate::graph::Graph>> {
            if order % 2 == 1 {
                return Some(Vec::new());
            }
            let r = find(reports, order, true)?;
            Some(
                r.witnesses
                    .iter()
                    .filter(|w| w.bipartite && w.connected)
                    .filter_map(|w| parse_graph6(&w.graph6).ok())
                    .collect(),
            )
        };
        let (fa, fb) = (factors(a)?, factors(b)?);
        for g1 in &fa {
            for g2 in &fb {
                let Ok(split) = bipartite_split(g1, g2) else { continue };
                for c in [split.even_component.graph, split.odd_component.graph] {
                    if let Ok(cf) = canonical_form(&c) {
                        out.insert(cf.code);
                    }
                }
            }
        }
    }
    Some(out)
}

fn summarize(column: &str, readings: &[Reading]) -> Status {
    let computed: Vec<Status> = readings
        .iter()
        .map(|r| r.status)
        .filter(|s| *s != Status::NotComputed)
        .collect();
    if computed.is_empty() {
        Status::NotComputed
    } else if column == "T.P." {
        Status::AmbiguousSemantics
    } else if computed.iter().all(|s| *s == Status::Match) {
        Status::Match
    } else if computed.iter().all(|s| *s == Status::Mismatch) {
        Status::Mismatch
    } else {
        Status::AmbiguousSemantics
    }
}

fn population_name(connected: bool) -> &'static str {
    if connected {
        "connected"
    } else {
        "all"
    }
}

fn figure(claim: &str, expected: u64, witnesses: Vec<String>) -> FigureCheck {
    let derived = witnesses.len() as u64;
    FigureCheck {
        claim: claim.to_string(),
        expected,
        derived,
        status: if derived == expected { Status::Match } else { Status::Mismatch },
        witnesses,
    }
}

/// Builds the comparison. Reports for orders 2, 4, 6 and 8 under both
/// populations are required; triangle-free reports only feed the claims
/// that concern them.
pub fn reconcile_table2(reports: &[SurveyReport]) -> Result<Reconciliation> {
    let mut plain: BTreeMap<Key, &SurveyReport> = BTreeMap::new();
    let mut triangle_free: BTreeMap<Key, &SurveyReport> = BTreeMap::new();
    for r in reports {
        let key = (r.filter.order, r.filter.connected_only);
        if r.filter.triangle_free {
            triangle_free.insert(key, r);
        } else {
            plain.insert(key, r);
        }
    }
    for &n in &REQUIRED {
        for connected in [true, false] {
            if find(&plain, n, connected).is_none() {
                return Err(Error::MissingReport {
                    order: n,
                    population: population_name(connected).to_string(),
                });
            }
        }
    }

    let mut cells = Vec::new();
    for (n, row) in published_table() {
        for (column, published) in COLUMNS.iter().zip(row) {
            let mut readings = Vec::new();
            let mut note = None;
            for connected in [true, false] {
                let population = population_name(connected).to_string();
                let Some(r) = find(&plain, n, connected) else {
                    readings.push(Reading {
                        population,
                        reading: if *column == "T.P." { TENSOR_READING } else { "count" }.to_string(),
                        derived: None,
                        status: Status::NotComputed,
                        witnesses: Vec::new(),
                    });
                    continue;
                };
                if *column == "T.P." {
                    note = Some("column semantics are not defined; the derived value is an analog".into());
                    let reading = TENSOR_READING.to_string();
                    match tensor_components(n, &plain) {
                        Some(products) => {
                            let witnesses: Vec<String> = r
                                .witnesses_of(PalindromeKind::Palindromic)
                                .filter(|w| products.contains(&w.graph6))
                                .map(|w| w.graph6.clone())
                                .collect();
                            let count = witnesses.len() as u64;
                            readings.push(Reading {
                                population,
                                reading,
                                derived: Some(count),
                                status: published.status(count),
                                witnesses,
                            });
                        }
                        None => readings.push(Reading {
                            population,
                            reading,
                            derived: None,
                            status: Status::NotComputed,
                            witnesses: Vec::new(),
                        }),
                    }
                    continue;
                }
                for d in derive(column, r) {
                    readings.push(Reading {
                        population: population.clone(),
                        reading: d.reading.to_string(),
                        derived: Some(d.count),
                        status: published.status(d.count),
                        witnesses: d.witnesses,
                    });
                }
            }
            cells.push(Cell {
                order: n,
                column: column.to_string(),
                published,
                status: summarize(column, &readings),
                readings,
                note,
            });
        }
    }

    let mut figure_checks = Vec::new();
    let c8 = find(&plain, 8, true).expect("checked above");
    figure_checks.push(figure(
        "non-hairing palindromic connected graphs of order 8",
        9,
        codes(c8.witnesses_of(PalindromeKind::Palindromic).filter(|w| !w.hairing)),
    ));
    figure_checks.push(figure(
        "bald palindromic connected graphs of order 8",
        4,
        codes(c8.witnesses_of(PalindromeKind::Palindromic).filter(|w| w.bald)),
    ));
    let c6 = find(&plain, 6, true).expect("checked above");
    figure_checks.push(figure(
        "non-hairing antipalindromic connected graphs of order 6",
        1,
        codes(c6.witnesses_of(PalindromeKind::Antipalindromic).filter(|w| !w.hairing)),
    ));
    if let Some(c10) = find(&plain, 10, true) {
        figure_checks.push(figure(
            "antipalindromic hairings of trees, order 10",
            3,
            codes(c10.witnesses_of(PalindromeKind::Antipalindromic).filter(|w| w.hairing && w.tree)),
        ));
        figure_checks.push(figure(
            "antipalindromic hairings of connected non-trees, order 10",
            18,
            codes(c10.witnesses_of(PalindromeKind::Antipalindromic).filter(|w| w.hairing && !w.tree)),
        ));
    }
    if let Some(t8) = find(&triangle_free, 8, true) {
        figure_checks.push(figure(
            "triangle-free connected absolutely palindromic (exclusive) graphs of order 8",
            2,
            codes(t8.absolute_witnesses.iter()),
        ));
    }

    let mut violations: Vec<String> = reports
        .iter()
        .flat_map(|r| {
            let tag = format!("order {} {}", r.filter.order, r.filter.population());
            r.violations.iter().map(move |v| format!("{tag}: {v}"))
        })
        .collect();
    violations.sort();
    Ok(Reconciliation {
        cells,
        figure_checks,
        violations,
    })
}

impl Reconciliation {
    pub fn cell(&self, order: usize, column: &str) -> Option<&Cell> {
        self.cells.iter().find(|c| c.order == order && c.column == column)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reconciliation serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for c in &self.cells {
            let _ = writeln!(
                s,
                "{:<8} n={:<3} published {:<6} {}",
                c.column,
                c.order,
                c.published.to_string(),
                c.status
            );
            if let Some(note) = &c.note {
                let _ = writeln!(s, "    note: {note}");
            }
            for r in &c.readings {
                let derived = r.derived.map_or("-".to_string(), |d| d.to_string());
                let _ = writeln!(
                    s,
                    "    {:<10} {:<24} derived {:<6} {}",
                    r.population, r.reading, derived, r.status
                );
                if r.status == Status::Mismatch && !r.witnesses.is_empty() {
                    let _ = writeln!(s, "        witnesses: {}", r.witnesses.join(" "));
                }
            }
        }
        let _ = writeln!(s);
        for f in &self.figure_checks {
            let _ = writeln!(
                s,
                "{}: expected {}, derived {} {}",
                f.claim, f.expected, f.derived, f.status
            );
            if !f.witnesses.is_empty() {
                let _ = writeln!(s, "    witnesses: {}", f.witnesses.join(" "));
            }
        }
        let _ = writeln!(s, "violations: {}", self.violations.len());
        for v in &self.violations {
            let _ = writeln!(s, "    {v}");
        }
        s
    }
}
