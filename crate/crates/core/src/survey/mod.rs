//! Exhaustive classification surveys.

pub mod checkpoint;
pub mod generate;
pub mod ingest;
pub mod reconcile;

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::canon::canonical_form;
use crate::graph::Graph;
use crate::hairing::{dehair, predict_class_of_hairing, Dehair};
use crate::matchings::{count_perfect_matchings, MATCHING_LIMIT};
use crate::poly::{classify, IntPolynomial, PalindromeClass, PalindromeKind};
use crate::spectral::sachs::SACHS_LIMIT;
use crate::spectral::{char_poly, char_poly_sachs};

pub use checkpoint::{run_survey, RunOptions};
pub use generate::{enumerate_all, enumerate_connected, enumerate_trees, random_tree};
pub use ingest::{ingest_stream, Ingested, LineError};
pub use reconcile::{reconcile_table2, Reconciliation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    BuiltinGenerator,
    Graph6Stream,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyFilter {
    pub order: usize,
    pub connected_only: bool,
    pub triangle_free: bool,
    pub source: Source,
}

impl SurveyFilter {
    pub fn builtin(order: usize, connected_only: bool) -> Self {
        SurveyFilter {
            order,
            connected_only,
            triangle_free: false,
            source: Source::BuiltinGenerator,
        }
    }

    pub fn admits(&self, g: &Graph) -> bool {
        g.order() == self.order
            && (!self.connected_only || g.is_connected())
            && (!self.triangle_free || g.is_triangle_free())
    }

    pub fn population(&self) -> &'static str {
        if self.connected_only {
            "connected"
        } else {
            "all"
        }
    }
}

/// Palindromic, antipalindromic, and absolutely palindromic counts; the
/// exclusive reading leaves out the first two.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCounts {
    pub palindromic: u64,
    pub antipalindromic: u64,
    pub absolute_inclusive: u64,
    pub absolute_exclusive: u64,
}

impl ClassCounts {
    fn record(&mut self, class: PalindromeClass) {
        match class.kind {
            PalindromeKind::Palindromic => self.palindromic += 1,
            PalindromeKind::Antipalindromic => self.antipalindromic += 1,
            PalindromeKind::Neither if class.absolute => self.absolute_exclusive += 1,
            PalindromeKind::Neither => {}
        }
        if class.absolute {
            self.absolute_inclusive += 1;
        }
    }

    fn add(&mut self, o: &ClassCounts) {
        self.palindromic += o.palindromic;
        self.antipalindromic += o.antipalindromic;
        self.absolute_inclusive += o.absolute_inclusive;
        self.absolute_exclusive += o.absolute_exclusive;
    }

    fn consistent(&self) -> bool {
        self.absolute_exclusive + self.palindromic + self.antipalindromic == self.absolute_inclusive
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// Canonical graph6.
    pub graph6: String,
    pub class: PalindromeClass,
    pub hairing: bool,
    pub tree: bool,
    pub bald: bool,
    pub bipartite: bool,
    pub connected: bool,
    pub polynomial: IntPolynomial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyReport {
    pub filter: SurveyFilter,
    pub graphs: u64,
    pub counts: ClassCounts,
    pub hairings: ClassCounts,
    pub trees: ClassCounts,
    pub bald: ClassCounts,
    /// Must be empty.
    pub violations: Vec<String>,
    /// Every palindromic or antipalindromic graph, sorted by code.
    pub witnesses: Vec<Witness>,
    /// Absolutely palindromic graphs that are neither, sorted by code.
    pub absolute_witnesses: Vec<Witness>,
}

impl SurveyReport {
    pub fn empty(filter: SurveyFilter) -> Self {
        SurveyReport {
            filter,
            graphs: 0,
            counts: ClassCounts::default(),
            hairings: ClassCounts::default(),
            trees: ClassCounts::default(),
            bald: ClassCounts::default(),
            violations: Vec::new(),
            witnesses: Vec::new(),
            absolute_witnesses: Vec::new(),
        }
    }

    /// Commutative merge; lists are re-sorted so the result does not depend
    /// on the order of merging.
    pub fn merge(&mut self, other: SurveyReport) {
        self.graphs += other.graphs;
        self.counts.add(&other.counts);
        self.hairings.add(&other.hairings);
        self.trees.add(&other.trees);
        self.bald.add(&other.bald);
        self.violations.extend(other.violations);
        self.witnesses.extend(other.witnesses);
        self.absolute_witnesses.extend(other.absolute_witnesses);
        self.normalize();
    }

    fn normalize(&mut self) {
        self.violations.sort();
        self.witnesses.sort_by(|a, b| a.graph6.cmp(&b.graph6));
        self.absolute_witnesses.sort_by(|a, b| a.graph6.cmp(&b.graph6));
    }

    pub fn witnesses_of(&self, kind: PalindromeKind) -> impl Iterator<Item = &Witness> {
        self.witnesses.iter().filter(move |w| w.class.kind == kind)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Aligned plain-text summary.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let f = &self.filter;
        let _ = writeln!(
            s,
            "order {}  population {}{}  graphs {}",
            f.order,
            f.population(),
            if f.triangle_free { " (triangle-free)" } else { "" },
            self.graphs
        );
        let _ = writeln!(
            s,
            "{:<10} {:>12} {:>16} {:>14} {:>14}",
            "", "palindromic", "antipalindromic", "|P.| incl.", "|P.| excl."
        );
        for (name, c) in [
            ("all", &self.counts),
            ("hairings", &self.hairings),
            ("trees", &self.trees),
            ("bald", &self.bald),
        ] {
            let _ = writeln!(
                s,
                "{:<10} {:>12} {:>16} {:>14} {:>14}",
                name, c.palindromic, c.antipalindromic, c.absolute_inclusive, c.absolute_exclusive
            );
        }
        let _ = writeln!(s, "violations {}", self.violations.len());
        for v in &self.violations {
            let _ = writeln!(s, "  {v}");
        }
        for w in &self.witnesses {
            let _ = writeln!(
                s,
                "{} {}{}{}",
                w.graph6,
                w.class,
                if w.hairing { " hairing" } else { "" },
                if w.bald { " bald" } else { "" }
            );
        }
        s
    }
}

/// Per-graph outcome before aggregation.
struct Classified {
    class: PalindromeClass,
    hairing: bool,
    tree: bool,
    bald: bool,
    violations: Vec<String>,
    witness: Option<Witness>,
}

fn classify_one(g: &Graph) -> Result<Classified> {
    let poly = char_poly(g)?;
    let class = classify(&poly)?;
    let outcome = dehair(g);
    let hairing = outcome.is_hairing();
    let tree = g.is_tree();
    let bald = g.is_bald();
    let mut violations = Vec::new();
    let mut witness = None;
    if let Dehair::Hairing(cert) = &outcome {
        // hairings are absolutely palindromic with a predictable sign pattern
        if predict_class_of_hairing(&cert.core_graph) != class {
            violations.push(format!("hairing classified {class} against its prediction"));
        }
    }
    if tree && class.is_signed_palindrome() != hairing {
        violations.push(format!("tree is {class} but dehair says hairing={hairing}"));
    }
    if class.absolute {
        let code = canonical_form(g)?.code;
        let tag = |what: &str| format!("{code}: {what}");
        if class.is_signed_palindrome() {
            let n = g.order();
            if n % 2 == 1 {
                violations.push(tag("odd order"));
            }
            if n <= MATCHING_LIMIT && count_perfect_matchings(g)? == 0u8.into() {
                violations.push(tag("no perfect matching"));
            }
        }
        if g.order() <= SACHS_LIMIT && char_poly_sachs(g)? != poly {
            violations.push(tag("elementary-subgraph expansion disagrees"));
        }
        witness = Some(Witness {
            graph6: code,
            class,
            hairing,
            tree,
            bald,
            bipartite: g.is_bipartite(),
            connected: g.is_connected(),
            polynomial: poly,
        });
    }
    Ok(Classified {
        class,
        hairing,
        tree,
        bald,
        violations,
        witness,
    })
}

/// Classifies every admitted graph (in parallel on the current pool) and
/// aggregates the tallies. Graphs the filter rejects are skipped.
pub fn classify_survey(graphs: &[Graph], filter: SurveyFilter) -> SurveyReport {
    let outcomes: Vec<(usize, Result<Classified>)> = graphs
        .par_iter()
        .enumerate()
        .filter(|(_, g)| filter.admits(g))
        .map(|(i, g)| (i, classify_one(g)))
        .collect();
    let mut report = SurveyReport::empty(filter);
    for (i, outcome) in outcomes {
        report.graphs += 1;
        let c = match outcome {
            Ok(c) => c,
            Err(e) => {
                report.violations.push(format!("graph #{i}: {e}"));
                continue;
            }
        };
        report.counts.record(c.class);
        if c.hairing {
            report.hairings.record(c.class);
        }
        if c.tree {
            report.trees.record(c.class);
        }
        if c.bald {
            report.bald.record(c.class);
        }
        report.violations.extend(c.violations);
        if let Some(w) = c.witness {
            if w.class.is_signed_palindrome() {
                report.witnesses.push(w);
            } else {
                report.absolute_witnesses.push(w);
            }
        }
    }
    for (name, c) in [
        ("all", &report.counts),
        ("hairings", &report.hairings),
        ("trees", &report.trees),
        ("bald", &report.bald),
    ] {
        if !c.consistent() {
            report.violations.push(format!("{name}: exclusive count is not inclusive minus signed"));
        }
    }
    report.normalize();
    report
}

/// Every palindromic witness has order `0 mod 4` and every antipalindromic
/// one has order `2 mod 4`.
pub fn conjecture_scan(report: &SurveyReport) -> bool {
    report.witnesses.iter().all(|w| {
        let n = (w.polynomial.degree().unwrap_or(0)) % 4;
        match w.class.kind {
            PalindromeKind::Palindromic => n == 0,
            PalindromeKind::Antipalindromic => n == 2,
            PalindromeKind::Neither => true,
        }
    })
}
