use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::ideal::AnalyzeOptions;
use crate::theorems::checks::{check, Prediction, Subject, TheoremId, TheoremReport};
use crate::theorems::random::{sample, wxyz, ShapeSource};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TheoremTally {
    pub runs: usize,
    pub applicable: usize,
    /// Applicable runs with a definite prediction.
    pub claims: usize,
    pub inconsistent: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Inconsistency {
    pub index: u64,
    pub form: String,
    pub report: TheoremReport,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchSummary {
    pub count: usize,
    pub generic: usize,
    pub identity_failures: usize,
    /// Number of forms for each value of `r`.
    pub r_histogram: BTreeMap<usize, usize>,
    pub tallies: BTreeMap<TheoremId, TheoremTally>,
    pub inconsistencies: Vec<Inconsistency>,
    /// `(index, message)` for forms the engine could not analyze.
    pub errors: Vec<(u64, String)>,
}

impl SearchSummary {
    pub fn clean(&self) -> bool {
        self.inconsistencies.is_empty() && self.errors.is_empty() && self.identity_failures == 0
    }
}

struct Outcome {
    index: u64,
    form: String,
    generic: bool,
    identity_ok: bool,
    r: usize,
    reports: Vec<TheoremReport>,
}

fn run_one(
    source: &ShapeSource,
    seed: u64,
    index: u64,
    theorems: &[TheoremId],
    opts: AnalyzeOptions,
) -> Result<Outcome> {
    let nf = sample(source, seed, index)?;
    let form = nf.form.render(&wxyz());
    let s = Subject::from_normal(nf, opts)?;
    let mut reports = Vec::new();
    for &t in theorems {
        reports.extend(check(t, &s)?);
    }
    let v = &s.analysis.verdict;
    Ok(Outcome {
        index,
        form,
        generic: v.generic,
        identity_ok: v.identity_ok,
        r: v.r,
        reports,
    })
}

/// Draws `count` forms from `source` and runs `theorems` on each. Work is
/// spread over the current rayon pool; the summary is assembled in index
/// order, so it depends only on the seed.
pub fn search(
    source: &ShapeSource,
    seed: u64,
    count: u64,
    theorems: &[TheoremId],
    opts: AnalyzeOptions,
) -> SearchSummary {
    let outcomes: Vec<(u64, Result<Outcome>)> = (0..count)
        .into_par_iter()
        .map(|i| (i, run_one(source, seed, i, theorems, opts)))
        .collect();
    let mut sum = SearchSummary {
        count: count as usize,
        ..Default::default()
    };
    for t in theorems {
        sum.tallies.insert(*t, TheoremTally::default());
    }
    for (i, o) in outcomes {
        let o = match o {
            Ok(o) => o,
            Err(e) => {
                sum.errors.push((i, e.to_string()));
                continue;
            }
        };
        sum.generic += usize::from(o.generic);
        sum.identity_failures += usize::from(!o.identity_ok);
        *sum.r_histogram.entry(o.r).or_default() += 1;
        for rep in o.reports {
            let tally = sum.tallies.entry(rep.theorem).or_default();
            tally.runs += 1;
            tally.applicable += usize::from(rep.applicable());
            tally.claims += usize::from(rep.prediction != Prediction::NoClaim);
            if !rep.consistent {
                tally.inconsistent += 1;
                sum.inconsistencies.push(Inconsistency {
                    index: o.index,
                    form: o.form.clone(),
                    report: rep,
                });
            }
        }
    }
    sum
}
