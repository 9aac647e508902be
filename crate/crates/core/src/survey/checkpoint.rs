//! Built-in surveys, processed in batches of parents with resumable
//! progress.
//!
//! Checkpoint file: a version line followed by one JSON object holding the
//! filter, the parent cursor and the partial report. Partial reports merge
//! commutatively, so a resumed run ends with exactly the report of an
//! uninterrupted one.

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

use super::generate::{children, connected_levels, disconnected_from_levels, Canonical};
use super::{classify_survey, Source, SurveyFilter, SurveyReport};

const HEADER: &str = "palgraph-survey-checkpoint v1";

#[derive(Debug, Clone)]
pub struct RunOptions {
    /// Worker threads; `None` uses the available parallelism.
    pub workers: Option<usize>,
    pub checkpoint: Option<PathBuf>,
    pub resume: bool,
    /// Parents per batch (and per checkpoint write).
    pub batch: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            workers: None,
            checkpoint: None,
            resume: false,
            batch: 256,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct Checkpoint {
    filter: SurveyFilter,
    parents_total: usize,
    parents_done: usize,
    partial: SurveyReport,
}

fn read_checkpoint(path: &Path) -> Result<Checkpoint> {
    let text = fs::read_to_string(path)?;
    let (head, body) = text
        .split_once('\n')
        .ok_or_else(|| Error::Checkpoint("missing header line".into()))?;
    if head != HEADER {
        return Err(Error::Checkpoint(format!("unsupported header {head:?}")));
    }
    serde_json::from_str(body).map_err(|e| Error::Checkpoint(e.to_string()))
}

fn write_checkpoint(path: &Path, c: &Checkpoint) -> Result<()> {
    let body = serde_json::to_string(c).map_err(|e| Error::Checkpoint(e.to_string()))?;
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, format!("{HEADER}\n{body}\n"))?;
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Runs a survey of the built-in generator's output under `filter`.
pub fn run_survey(filter: &SurveyFilter, opts: &RunOptions) -> Result<SurveyReport> {
    if filter.order == 0 {
        return Err(Error::OrderTooSmall(1));
    }
    let mut filter = *filter;
    filter.source = Source::BuiltinGenerator;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = opts.workers {
        builder = builder.num_threads(w.max(1));
    }
    let pool = builder
        .build()
        .map_err(|e| Error::Io(format!("thread pool: {e}")))?;
    pool.install(|| survey_in_pool(&filter, opts))
}

fn survey_in_pool(filter: &SurveyFilter, opts: &RunOptions) -> Result<SurveyReport> {
    let n = filter.order;
    if n > super::generate::BUILTIN_LIMIT {
        return Err(Error::OrderTooLarge {
            operation: "run_survey",
            order: n,
            limit: super::generate::BUILTIN_LIMIT,
        });
    }
    let levels = connected_levels(n - 1)?;
    let single = [Canonical {
        code: String::new(),
        rows: Vec::new(),
    }];
    // order 1: the empty graph is the lone parent of K1
    let parents: &[Canonical] = if n == 1 { &single } else { &levels[n - 2] };

    let mut state = Checkpoint {
        filter: *filter,
        parents_total: parents.len(),
        parents_done: 0,
        partial: SurveyReport::empty(*filter),
    };
    if let (true, Some(path)) = (opts.resume, &opts.checkpoint) {
        if path.exists() {
            let saved = read_checkpoint(path)?;
            if saved.filter != *filter || saved.parents_total != parents.len() {
                return Err(Error::Checkpoint("checkpoint belongs to a different survey".into()));
            }
            state = saved;
        }
    }

    let batch = opts.batch.max(1);
    while state.parents_done < parents.len() {
        let end = (state.parents_done + batch).min(parents.len());
        let graphs: Vec<Graph> = parents[state.parents_done..end]
            .par_iter()
            .flat_map_iter(|p| {
                if p.rows.is_empty() {
                    vec![Graph::empty(1)]
                } else {
                    children(&p.rows).iter().map(Canonical::graph).collect()
                }
            })
            .collect();
        state.partial.merge(classify_survey(&graphs, *filter));
        state.parents_done = end;
        if let Some(path) = &opts.checkpoint {
            write_checkpoint(path, &state)?;
        }
    }

    let mut report = state.partial;
    if !filter.connected_only {
        let disconnected = disconnected_from_levels(n, &levels);
        report.merge(classify_survey(&disconnected, *filter));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_direct_classification() {
        for connected_only in [true, false] {
            let f = SurveyFilter::builtin(6, connected_only);
            let direct = if connected_only {
                classify_survey(&super::super::enumerate_connected(6).unwrap(), f)
            } else {
                classify_survey(&super::super::enumerate_all(6).unwrap(), f)
            };
            let run = run_survey(&f, &RunOptions { batch: 5, ..RunOptions::default() }).unwrap();
            assert_eq!(run, direct);
        }
        let one = run_survey(&SurveyFilter::builtin(1, true), &RunOptions::default()).unwrap();
        assert_eq!(one.graphs, 1);
    }

    #[test]
    fn worker_count_does_not_change_output() {
        let f = SurveyFilter::builtin(7, true);
        let a = run_survey(&f, &RunOptions { workers: Some(1), ..RunOptions::default() }).unwrap();
        let b = run_survey(&f, &RunOptions { workers: Some(4), ..RunOptions::default() }).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.graphs, 853);
    }

    #[test]
    fn resume_after_interruption() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("survey.ckpt");
        let f = SurveyFilter::builtin(7, true);
        let full = run_survey(&f, &RunOptions::default()).unwrap();

        // fabricate an interrupted run: first 40 of 112 parents done
        let levels = connected_levels(6).unwrap();
        let done: Vec<Graph> = levels[5][..40]
            .iter()
            .flat_map(|p| children(&p.rows))
            .map(|c| c.graph())
            .collect();
        let partial = Checkpoint {
            filter: f,
            parents_total: 112,
            parents_done: 40,
            partial: classify_survey(&done, f),
        };
        write_checkpoint(&path, &partial).unwrap();
        let opts = RunOptions {
            checkpoint: Some(path.clone()),
            resume: true,
            batch: 16,
            ..RunOptions::default()
        };
        let resumed = run_survey(&f, &opts).unwrap();
        assert_eq!(resumed.to_json(), full.to_json());

        let text = fs::read_to_string(&path).unwrap();
        assert!(text.starts_with(HEADER));
        let wrong = SurveyFilter::builtin(7, false);
        assert!(matches!(run_survey(&wrong, &opts), Err(Error::Checkpoint(_))));
        fs::write(&path, "something else\n{}").unwrap();
        assert!(matches!(run_survey(&f, &opts), Err(Error::Checkpoint(_))));
    }
}
