//! The document-to-report pipeline and the corpus reproduction table.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::dp::VariableSet;
use crate::error::Result;
use crate::ideal::{analyze, Analysis, AnalyzeOptions, I2Shape, VariableFlag};
use crate::io::{corpus, parse_document_with, validate, Caveat, FormDocument, NormalForm, Shape, ValidateOptions};
use crate::linalg::Field;

#[derive(Clone, Copy, Debug, Default)]
pub struct PipelineOptions {
    /// Replaces the field named in the document.
    pub field: Option<Field>,
    pub auto_normalize: bool,
    pub max_degree: Option<u32>,
}

impl PipelineOptions {
    pub fn analyze_options(&self) -> AnalyzeOptions {
        AnalyzeOptions {
            max_degree: self.max_degree,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InputEcho {
    pub label: Option<String>,
    pub vars: Vec<String>,
    pub field: String,
    pub form: String,
    /// Terms removed by auto-normalization.
    pub removed: Vec<String>,
}

/// Stable JSON view of an analysis. Apart from `elapsed_ms` the
/// serialization is a function of the input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub input: InputEcho,
    pub shape: Shape,
    #[serde(rename = "hilbert_RI")]
    pub hilbert_ri: Vec<usize>,
    #[serde(rename = "hilbert_RJ")]
    pub hilbert_rj: Vec<usize>,
    /// `ν_d(I)` for `d = 0..`.
    pub nu: Vec<usize>,
    #[serde(rename = "nu_J")]
    pub nu_j: Vec<usize>,
    #[serde(rename = "muI")]
    pub mu_i: usize,
    #[serde(rename = "muJ")]
    pub mu_j: usize,
    pub beta: u32,
    pub g: String,
    pub r: usize,
    pub flags: Vec<VariableFlag>,
    pub generic: bool,
    pub identity_ok: bool,
    pub diff_pattern_ok: bool,
    pub hilbert_diff: Vec<i64>,
    pub j_unimodal: bool,
    pub i2_shape: I2Shape,
    pub elapsed_ms: u64,
}

impl AnalysisReport {
    pub fn new(a: &Analysis, label: Option<String>, elapsed_ms: u64) -> Self {
        let vars: &VariableSet = &a.normal.vars;
        AnalysisReport {
            input: InputEcho {
                label,
                vars: vars.names().to_vec(),
                field: a.normal.field().to_string(),
                form: a.normal.form.render(vars),
                removed: a.normal.removed.clone(),
            },
            shape: a.normal.shape,
            hilbert_ri: a.profile.hilbert_ri.clone(),
            hilbert_rj: a.profile.hilbert_rj.clone(),
            nu: a.profile.counts_i.nu.clone(),
            nu_j: a.profile.counts_j.nu.clone(),
            mu_i: a.verdict.mu_i,
            mu_j: a.verdict.mu_j,
            beta: a.verdict.beta,
            g: a.verdict.g.render(vars),
            r: a.verdict.r,
            flags: a.verdict.flags.clone(),
            generic: a.verdict.generic,
            identity_ok: a.verdict.identity_ok,
            diff_pattern_ok: a.difference.matches_pattern,
            hilbert_diff: a.difference.diff.clone(),
            j_unimodal: a.j_unimodal,
            i2_shape: a.profile.i2_shape,
            elapsed_ms,
        }
    }
}

pub fn load_document(text: &str, opts: &PipelineOptions) -> Result<FormDocument> {
    Ok(parse_document_with(text, opts.field)?)
}

pub fn normalize(doc: &FormDocument, opts: &PipelineOptions) -> Result<NormalForm> {
    Ok(validate(
        &doc.form,
        &doc.vars,
        ValidateOptions {
            auto_normalize: opts.auto_normalize,
        },
    )?)
}

/// Parse, validate and analyze one form file.
pub fn analyze_text(text: &str, opts: &PipelineOptions) -> Result<(Analysis, AnalysisReport)> {
    let start = Instant::now();
    let doc = load_document(text, opts)?;
    let nf = normalize(&doc, opts)?;
    let a = analyze(nf, opts.analyze_options())?;
    let ms = start.elapsed().as_millis() as u64;
    let report = AnalysisReport::new(&a, doc.label.clone(), ms);
    Ok((a, report))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReproduceRow {
    pub entry: String,
    pub form: String,
    pub binding: bool,
    pub caveat: Option<String>,
    pub expected_mu: Option<(usize, usize)>,
    pub expected_generic: Option<bool>,
    pub computed_mu: Option<(usize, usize)>,
    pub computed_generic: Option<bool>,
    pub error: Option<String>,
    pub elapsed_ms: u64,
}

impl ReproduceRow {
    /// Every stated expectation agrees with the computation.
    pub fn matches(&self) -> bool {
        self.error.is_none()
            && self.expected_mu.is_none_or(|m| Some(m) == self.computed_mu)
            && self.expected_generic.is_none_or(|g| Some(g) == self.computed_generic)
    }
}

/// Analyzes every corpus form. Rows come out in corpus order.
pub fn reproduce(opts: &PipelineOptions) -> Vec<ReproduceRow> {
    let forms: Vec<(&'static str, crate::io::CorpusForm)> = corpus()
        .into_iter()
        .flat_map(|e| e.forms.into_iter().map(move |f| (e.label, f)))
        .collect();
    forms
        .into_par_iter()
        .map(|(entry, f)| {
            let start = Instant::now();
            let local = PipelineOptions {
                auto_normalize: opts.auto_normalize || f.needs_normalization,
                ..*opts
            };
            let result = analyze_text(&f.to_document(), &local);
            let (mu, generic, error) = match result {
                Ok((a, _)) => (Some((a.verdict.mu_i, a.verdict.mu_j)), Some(a.verdict.generic), None),
                Err(e) => (None, None, Some(e.to_string())),
            };
            ReproduceRow {
                entry: entry.to_string(),
                form: f.name.clone(),
                binding: f.is_binding(),
                caveat: f.caveat.map(|c| match c {
                    Caveat::Transcribed(s) => format!("transcribed: {s}"),
                    Caveat::ProseDiscrepancy(s) => format!("prose discrepancy: {s}"),
                }),
                expected_mu: f.expect_mu,
                expected_generic: f.expect_generic,
                computed_mu: mu,
                computed_generic: generic,
                error,
                elapsed_ms: start.elapsed().as_millis() as u64,
            }
        })
        .collect()
}
