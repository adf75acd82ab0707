//! One pass/fail line per acceptance criterion, then the details.
//!
//! A criterion may fail in a documented way: the corpus rows whose counts
//! are unattainable, and the three statements with confirmed
//! counterexamples. Those print FAIL but do not fail the run as long as
//! every counterexample is confirmed by the independent oracle. Anything
//! else exits nonzero.

mod support;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use rayon::prelude::*;

use apolar::apolarity::{ann_degree, ideal_slice};
use apolar::dp::{contract, RingElement, VariableSet};
use apolar::ideal::{AnalyzeOptions, I2Shape};
use apolar::io::{corpus, parse_form, validate, NormalForm, ValidateOptions};
use apolar::linalg::Field;
use apolar::report::{reproduce, PipelineOptions};
use apolar::theorems::{
    check, restricted_form, sample, Observation, Prediction, Preset, ShapeSource, Subject, TheoremId, TheoremReport,
};

use support::equivalence::compare;
use support::gen::small_form;
use support::oracle::counts_modp;
use support::props;

const RANDOM_PER_PRESET: u64 = 500;
const SEED: u64 = 20_241;
const SMALL_FORMS: u64 = 200;
const PROPERTY_CASES: u32 = 1000;
/// Random counterexamples listed per statement; the rest are only counted.
const LISTED: usize = 8;

/// Corpus rows whose expected counts no reading of the form reproduces.
const UNATTAINABLE_ROWS: [&str; 2] = ["shift-pair/F", "shift-pair/F'"];

/// Statements with confirmed counterexamples.
const REFUTED: [TheoremId; 3] = [TheoremId::Restrict, TheoremId::Tm2, TheoremId::Tm2Converse];

#[derive(PartialEq, Eq)]
enum Status {
    Pass,
    /// Fails, for reasons recorded in the decision log.
    Documented,
    Fail,
}

struct Criterion {
    name: &'static str,
    status: Status,
    summary: String,
    details: Vec<String>,
}

impl Criterion {
    fn line(&self) -> String {
        let tag = match self.status {
            Status::Pass => "PASS",
            Status::Documented => "FAIL (documented)",
            Status::Fail => "FAIL",
        };
        format!("{tag:<18} {:<24} {}", self.name, self.summary)
    }
}

fn rows_match() -> Criterion {
    let rows = reproduce(&PipelineOptions::default());
    let mut details = Vec::new();
    let mut undocumented = 0;
    let mut documented = 0;
    for r in rows.iter().filter(|r| r.binding && !r.matches()) {
        let known = UNATTAINABLE_ROWS.contains(&r.form.as_str());
        if known {
            documented += 1;
        } else {
            undocumented += 1;
        }
        details.push(format!(
            "{}{}: expected {:?} {:?}, computed {:?} {:?}{}",
            if known { "" } else { "UNEXPECTED " },
            r.form,
            r.expected_mu,
            r.expected_generic,
            r.computed_mu,
            r.computed_generic,
            r.error.as_deref().map(|e| format!(" ({e})")).unwrap_or_default()
        ));
    }
    let binding = rows.iter().filter(|r| r.binding).count();
    let informational: Vec<String> = rows
        .iter()
        .filter(|r| !r.binding)
        .map(|r| {
            format!(
                "informational {}: expected {:?} {:?}, computed {:?} {:?}",
                r.form, r.expected_mu, r.expected_generic, r.computed_mu, r.computed_generic
            )
        })
        .collect();
    details.extend(informational);
    Criterion {
        name: "corpus-reproduction",
        status: match (undocumented, documented) {
            (0, 0) => Status::Pass,
            (0, _) => Status::Documented,
            _ => Status::Fail,
        },
        summary: format!(
            "{} of {binding} binding rows match; {documented} unattainable, {undocumented} unexpected",
            binding - documented - undocumented
        ),
        details,
    }
}

/// The engine's verdict on a form against the oracle's counts over
/// `F_(2^31-1)`.
fn oracle_agrees(nf: &NormalForm, engine_generic: bool) -> Result<String, String> {
    let start = Instant::now();
    let o = counts_modp(&nf.form, nf.vars.w());
    let g = o.generic(nf.nvars());
    let text = format!(
        "oracle μ = {}/{} ({}) in {:.2?}",
        o.mu_i,
        o.mu_j,
        if g { "generic" } else { "not generic" },
        start.elapsed()
    );
    if g == engine_generic {
        Ok(text)
    } else {
        Err(text)
    }
}

fn verdict_of(o: Observation) -> Option<bool> {
    match o {
        Observation::Generic => Some(true),
        Observation::NotGeneric => Some(false),
        _ => None,
    }
}

/// One inconsistent report, confirmed or not. Every statement with a
/// genericity prediction is confirmed on `F`; `restrict` is also confirmed
/// on `F'`.
fn confirm(s: &Subject, t: Option<usize>, r: &TheoremReport) -> Result<String, String> {
    let nf = &s.analysis.normal;
    let mut parts = vec![oracle_agrees(nf, s.analysis.verdict.generic).map_err(|e| format!("F: {e}"))?];
    if let Some(t) = t {
        let prime = restricted_form(nf, t).map_err(|e| e.to_string())?;
        let observed = verdict_of(r.observed).ok_or("restrict observes a verdict")?;
        parts.push(oracle_agrees(&prime, observed).map_err(|e| format!("F': {e}"))?);
    }
    Ok(parts.join("; "))
}

#[derive(Default)]
struct Findings {
    runs: BTreeMap<TheoremId, (usize, usize, usize)>,
    documented: BTreeMap<TheoremId, usize>,
    undocumented: Vec<String>,
    details: Vec<String>,
    identity: (usize, Vec<String>),
}

impl Findings {
    fn record(&mut self, origin: &str, s: &Subject, listed: bool) {
        let form = &s.analysis.normal.form.render(&s.analysis.normal.vars);
        self.identity.0 += 1;
        if !s.analysis.verdict.identity_ok {
            self.identity.1.push(format!("{origin}: {form}"));
        }
        let middle: Vec<usize> = s.analysis.normal.vars.middle().collect();
        for theorem in TheoremId::ALL {
            let reports = match check(theorem, s) {
                Ok(r) => r,
                Err(e) => {
                    self.undocumented
                        .push(format!("{origin} {theorem}: checker error {e}: {form}"));
                    continue;
                }
            };
            for (k, r) in reports.iter().enumerate() {
                let tally = self.runs.entry(theorem).or_default();
                tally.0 += 1;
                tally.1 += usize::from(r.prediction != Prediction::NoClaim);
                if r.consistent {
                    continue;
                }
                tally.2 += 1;
                let t = (theorem == TheoremId::Restrict).then(|| middle[k]);
                let head = format!(
                    "{origin} {theorem} on {}: predicted {}, observed {}: {form}",
                    r.subject, r.prediction, r.observed
                );
                match confirm(s, t, r) {
                    Ok(c) if REFUTED.contains(&theorem) => {
                        let k = self.documented.entry(theorem).or_default();
                        *k += 1;
                        if listed || *k <= LISTED {
                            self.details.push(format!("{head}\n    confirmed: {c}"));
                        }
                    }
                    Ok(c) => self.undocumented.push(format!("{head}\n    confirmed: {c}")),
                    Err(e) => self.undocumented.push(format!("{head}\n    ORACLE DISAGREES: {e}")),
                }
            }
        }
    }
}

fn corpus_subjects() -> Vec<(String, Result<Subject, String>)> {
    corpus()
        .into_iter()
        .flat_map(|e| e.forms)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|f| {
            let vars = VariableSet::new(f.vars).expect("corpus variables");
            let s = parse_form(&f.text, &vars, Field::Rational)
                .map_err(|e| e.to_string())
                .and_then(|form| {
                    let opts = ValidateOptions {
                        auto_normalize: f.needs_normalization,
                    };
                    validate(&form, &vars, opts).map_err(|e| e.to_string())
                })
                .and_then(|nf| Subject::from_normal(nf, AnalyzeOptions::default()).map_err(|e| e.to_string()));
            (f.name, s)
        })
        .collect()
}

fn random_subjects(preset: Preset) -> Vec<(u64, Result<Subject, String>)> {
    let source = ShapeSource::Preset(preset);
    (0..RANDOM_PER_PRESET)
        .into_par_iter()
        .map(|i| {
            let s = sample(&source, SEED, i).and_then(|nf| Subject::from_normal(nf, AnalyzeOptions::default()));
            (i, s.map_err(|e| e.to_string()))
        })
        .collect()
}

fn differences(subjects: &[(String, Result<Subject, String>)]) -> Criterion {
    let mut details = Vec::new();
    let mut checked = 0;
    let mut bad = 0;
    for (name, s) in subjects {
        let Ok(s) = s else { continue };
        if s.analysis.profile.i2_shape != I2Shape::SquareAndMixed {
            continue;
        }
        checked += 1;
        let ok = s.analysis.difference.matches_pattern && s.analysis.j_unimodal;
        bad += usize::from(!ok);
        details.push(format!(
            "{name}: H(R/I) - H(R'/J) = {:?}, pattern {}, H(R'/J) unimodal {}",
            s.analysis.difference.diff, s.analysis.difference.matches_pattern, s.analysis.j_unimodal
        ));
    }
    Criterion {
        name: "hilbert-difference",
        status: if bad == 0 && checked > 0 {
            Status::Pass
        } else {
            Status::Fail
        },
        summary: format!("{checked} corpus forms with I_2 = (w^2, w x_i), {bad} violate"),
        details,
    }
}

fn oracle_equivalence() -> Criterion {
    let results: Vec<(u64, Result<_, String>)> = (0..SMALL_FORMS)
        .into_par_iter()
        .map(|seed| {
            let nf = small_form(seed, 8, Field::Rational);
            (
                seed,
                compare(&nf).map_err(|e| format!("{e}: {}", nf.form.render(&nf.vars))),
            )
        })
        .collect();
    let mut matrices = 0;
    let mut details = Vec::new();
    for (seed, r) in &results {
        match r {
            Ok(c) => matrices += c.matrices,
            Err(e) => details.push(format!("seed {seed}: {e}")),
        }
    }
    Criterion {
        name: "oracle-equivalence",
        status: if details.is_empty() { Status::Pass } else { Status::Fail },
        summary: format!(
            "{} of {SMALL_FORMS} forms agree ({matrices} catalecticants, counts mod p, F_65537 vs Q)",
            SMALL_FORMS as usize - details.len()
        ),
        details,
    }
}

fn properties() -> Criterion {
    let mut details = Vec::new();
    for (name, f) in props::ALL {
        if let Err(e) = f(PROPERTY_CASES) {
            details.push(format!("{name}: {e}"));
        }
    }
    Criterion {
        name: "algebraic-properties",
        status: if details.is_empty() { Status::Pass } else { Status::Fail },
        summary: format!(
            "{} of {} properties hold on {PROPERTY_CASES} cases each",
            props::ALL.len() - details.len(),
            props::ALL.len()
        ),
        details,
    }
}

/// A ring element written like a form; only the exponents and coefficients
/// are read.
fn ring(text: &str, vars: &VariableSet) -> RingElement {
    let f = parse_form(text, vars, Field::Rational).expect("witness parses");
    RingElement::from_terms(
        f.nvars(),
        Field::Rational,
        f.terms().map(|(e, c)| (e.clone(), c.clone())),
    )
}

fn large_block_witnesses() -> Criterion {
    let mut details = Vec::new();
    let mut ok = true;
    let mut fail = |details: &mut Vec<String>, msg: String| {
        ok = false;
        details.push(msg);
    };

    let entry = corpus()
        .into_iter()
        .flat_map(|e| e.forms)
        .find(|f| f.name == "large-block-exponent")
        .expect("corpus has the entry");
    let vars = VariableSet::new(entry.vars).unwrap();
    let form = parse_form(&entry.text, &vars, Field::Rational).unwrap();
    let nf = validate(&form, &vars, ValidateOptions::default()).unwrap();
    let s = Subject::from_normal(nf, AnalyzeOptions::default()).unwrap();
    let beta = s.analysis.verdict.beta;
    details.push(format!("beta = {beta}, g = {}", s.analysis.verdict.g.render(&vars)));
    if beta != 7 {
        fail(&mut details, format!("beta is {beta}, not 7"));
    }

    let lower = VariableSet::new(&["w", "x", "y", "z"]).unwrap();
    let witness = ring("wz^[7]-y^[8]+y^[7]z-y^[6]z^[2]+y^[5]z^[3]-yz^[7]", &lower);
    match contract(&witness, &form) {
        Ok(c) if c.is_zero() => details.push("the degree-8 witness annihilates F".into()),
        Ok(c) => fail(&mut details, format!("witness leaves {}", c.render(&vars))),
        Err(e) => fail(&mut details, e.to_string()),
    }

    let yz = VariableSet::new(&["Y", "Z"]).unwrap();
    let yz_lower = VariableSet::new(&["y", "z"]).unwrap();
    let g0 = parse_form("Y^[10]Z^[5]+Y^[9]Z^[6]+Y^[6]Z^[9]", &yz, Field::Rational).unwrap();
    let theta = ring(
        "y^[8]+y^[7]z-y^[5]z^[3]-2y^[4]z^[4]-y^[3]z^[5]+y^[2]z^[6]+3yz^[7]+3z^[8]",
        &yz_lower,
    );
    let delta = ring("y^[7]z^[2]-y^[4]z^[5]-y^[3]z^[6]+yz^[8]+2z^[9]", &yz_lower);
    for (name, el) in [("theta", &theta), ("delta", &delta)] {
        match contract(el, &g0) {
            Ok(c) if c.is_zero() => {}
            Ok(c) => fail(&mut details, format!("{name} leaves {}", c.render(&yz))),
            Err(e) => fail(&mut details, e.to_string()),
        }
    }
    let gens = [theta, delta];
    let mut equal = 0;
    for d in 0..=17 {
        let generated = ideal_slice(&gens, 2, d, None, Field::Rational).unwrap();
        let ann = ann_degree(&g0, d).unwrap();
        if generated.contains_subspace(&ann).unwrap() && ann.contains_subspace(&generated).unwrap() {
            equal += 1;
        } else {
            fail(
                &mut details,
                format!(
                    "degree {d}: (theta, delta) has dim {}, ann G_0 has {}",
                    generated.dim(),
                    ann.dim()
                ),
            );
        }
    }
    details.push(format!("(theta, delta) equals ann G_0 in {equal} of 18 degrees 0..=17"));
    Criterion {
        name: "large-block-witnesses",
        status: if ok { Status::Pass } else { Status::Fail },
        summary: format!("beta = {beta}; witness, theta and delta checked; ideal equal in {equal}/18 degrees"),
        details,
    }
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut criteria = vec![rows_match()];

    let subjects = corpus_subjects();
    let mut findings = Findings::default();
    let mut corpus_errors = Vec::new();
    for (name, s) in &subjects {
        match s {
            Ok(s) => findings.record(name, s, true),
            Err(e) => corpus_errors.push(format!("{name}: {e}")),
        }
    }
    let mut random_errors = Vec::new();
    for preset in Preset::ALL {
        for (i, s) in random_subjects(preset) {
            match s {
                Ok(s) => findings.record(&format!("{preset}#{i}"), &s, false),
                Err(e) => random_errors.push(format!("{preset}#{i}: {e}")),
            }
        }
    }

    let documented: usize = findings.documented.values().sum();
    let mut details: Vec<String> = findings
        .runs
        .iter()
        .map(|(t, (runs, claims, bad))| format!("{t}: {runs} runs, {claims} claims, {bad} inconsistent"))
        .collect();
    // Errors on corpus forms are expected only where the corpus records them;
    // reproduction reports those, so here they are listed, not failed.
    details.extend(corpus_errors.iter().map(|e| format!("corpus form not analyzed: {e}")));
    details.extend(random_errors.iter().map(|e| format!("random form not analyzed: {e}")));
    details.extend(findings.undocumented.iter().map(|u| format!("UNDOCUMENTED {u}")));
    details.extend(findings.details.iter().cloned());
    let per: Vec<String> = findings.documented.iter().map(|(t, k)| format!("{t} {k}")).collect();
    criteria.push(Criterion {
        name: "theorem-checkers",
        status: if !findings.undocumented.is_empty() || !random_errors.is_empty() {
            Status::Fail
        } else if documented > 0 {
            Status::Documented
        } else {
            Status::Pass
        },
        summary: format!(
            "{} corpus + {} random forms; {documented} oracle-confirmed counterexamples ({}), {} undocumented",
            subjects.len(),
            RANDOM_PER_PRESET as usize * Preset::ALL.len(),
            per.join(", "),
            findings.undocumented.len() + random_errors.len()
        ),
        details,
    });

    let (total, failures) = &findings.identity;
    criteria.push(Criterion {
        name: "generator-identity",
        status: if failures.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        },
        summary: format!(
            "μ(I) + r = μ(J) + n + 1 on {} of {total} analyses",
            total - failures.len()
        ),
        details: failures.clone(),
    });

    criteria.push(differences(&subjects));
    criteria.push(oracle_equivalence());
    criteria.push(properties());
    criteria.push(large_block_witnesses());

    for c in &criteria {
        println!("{}", c.line());
    }
    println!("({:.1?})", start.elapsed());
    for c in &criteria {
        if c.details.is_empty() {
            continue;
        }
        println!("\n== {}", c.name);
        for d in &c.details {
            println!("  {d}");
        }
    }
    if criteria.iter().any(|c| c.status == Status::Fail) {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
