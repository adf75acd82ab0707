use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::apolarity::ann_degree;
use crate::dp::{index_map, monomial_basis, DualForm, Exponent};
use crate::error::{Error, Result};
use crate::ideal::{analyze, Analysis, AnalyzeOptions, I2Shape};
use crate::io::{validate, NormalForm, Shape, ValidateOptions};
use crate::linalg::Subspace;
use crate::theorems::decompose::{decompose, FormDecomposition};

/// The checkable statements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremId {
    /// Genericity passes from `F` to `F' = X_t G + W Z^[j]`.
    Restrict,
    /// `ann G_0` has nothing but multiples of `y^{p+1}` through degree `j - p`.
    Lem0,
    /// Generic forces `a_1 <= p` or `p <= max deg_Y G_i`.
    Th0,
    /// One block with `a > j - a >= p`: generic iff `deg_Y G_1 = p`.
    Thm1,
    /// Generic forces `deg_Y G_n = p` under the top-block hypotheses.
    Tm2,
    /// Sufficient conditions for genericity with `deg_Y G_n = p`.
    Tm2Converse,
    /// `H_{R/I} - H_{R'/J}` is 1 exactly on degrees `1..=β`.
    Hilb,
    /// `H_{R'/J}` is unimodal.
    Unimodal,
}

impl TheoremId {
    pub const ALL: [TheoremId; 8] = [
        TheoremId::Restrict,
        TheoremId::Lem0,
        TheoremId::Th0,
        TheoremId::Thm1,
        TheoremId::Tm2,
        TheoremId::Tm2Converse,
        TheoremId::Hilb,
        TheoremId::Unimodal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::Restrict => "restrict",
            TheoremId::Lem0 => "lem0",
            TheoremId::Th0 => "th0",
            TheoremId::Thm1 => "thm1",
            TheoremId::Tm2 => "tm2",
            TheoremId::Tm2Converse => "tm2-converse",
            TheoremId::Hilb => "hilb",
            TheoremId::Unimodal => "unimodal",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoremId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        TheoremId::ALL.into_iter().find(|t| t.name() == s).ok_or_else(|| {
            let names: Vec<&str> = TheoremId::ALL.iter().map(|t| t.name()).collect();
            format!("unknown theorem '{s}' (expected one of {})", names.join(", "))
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Prediction {
    Generic,
    NotGeneric,
    /// The structural statement holds.
    Holds,
    NoClaim,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Observation {
    Generic,
    NotGeneric,
    Holds,
    Fails,
}

impl Observation {
    fn verdict(generic: bool) -> Self {
        if generic {
            Observation::Generic
        } else {
            Observation::NotGeneric
        }
    }

    fn property(holds: bool) -> Self {
        if holds {
            Observation::Holds
        } else {
            Observation::Fails
        }
    }
}

impl fmt::Display for Prediction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Prediction::Generic => "generic",
            Prediction::NotGeneric => "not generic",
            Prediction::Holds => "holds",
            Prediction::NoClaim => "no claim",
        })
    }
}

impl fmt::Display for Observation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Observation::Generic => "generic",
            Observation::NotGeneric => "not generic",
            Observation::Holds => "holds",
            Observation::Fails => "fails",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hypothesis {
    pub statement: String,
    pub holds: bool,
}

fn hyp(holds: bool, statement: impl Into<String>) -> Hypothesis {
    Hypothesis {
        statement: statement.into(),
        holds,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub theorem: TheoremId,
    /// What the statement was applied to, e.g. `F` or `F' = X·G + WZ^[j]`.
    pub subject: String,
    pub hypotheses: Vec<Hypothesis>,
    pub prediction: Prediction,
    pub observed: Observation,
    pub consistent: bool,
    pub notes: Vec<String>,
}

impl TheoremReport {
    /// A claim survives only when every hypothesis holds.
    fn new(
        theorem: TheoremId,
        subject: impl Into<String>,
        hypotheses: Vec<Hypothesis>,
        claim: Prediction,
        observed: Observation,
        notes: Vec<String>,
    ) -> Self {
        let prediction = if hypotheses.iter().all(|h| h.holds) {
            claim
        } else {
            Prediction::NoClaim
        };
        let consistent = matches!(
            (prediction, observed),
            (Prediction::NoClaim, _)
                | (Prediction::Generic, Observation::Generic)
                | (Prediction::NotGeneric, Observation::NotGeneric)
                | (Prediction::Holds, Observation::Holds)
        );
        TheoremReport {
            theorem,
            subject: subject.into(),
            hypotheses,
            prediction,
            observed,
            consistent,
            notes,
        }
    }

    pub fn applicable(&self) -> bool {
        self.hypotheses.iter().all(|h| h.holds)
    }

    pub fn failed_hypotheses(&self) -> Vec<&str> {
        self.hypotheses
            .iter()
            .filter(|h| !h.holds)
            .map(|h| h.statement.as_str())
            .collect()
    }
}

/// An analyzed form together with its stratification.
#[derive(Clone, Debug)]
pub struct Subject {
    pub analysis: Analysis,
    /// The reason the form does not decompose, if it does not.
    pub decomposition: std::result::Result<FormDecomposition, String>,
    pub options: AnalyzeOptions,
}

impl Subject {
    pub fn new(analysis: Analysis, options: AnalyzeOptions) -> Self {
        let decomposition = decompose(&analysis.normal).map_err(|e| e.to_string());
        Subject {
            analysis,
            decomposition,
            options,
        }
    }

    pub fn from_normal(nf: NormalForm, options: AnalyzeOptions) -> Result<Self> {
        Ok(Self::new(analyze(nf, options)?, options))
    }

    fn nf(&self) -> &NormalForm {
        &self.analysis.normal
    }

    fn observed_verdict(&self) -> Observation {
        Observation::verdict(self.analysis.verdict.generic)
    }
}

/// The standing setup shared by the four-variable statements: `F` in
/// `W, X, Y, Z` with `c_p != 0` and some block containing a pure `Z` power.
fn notation(s: &Subject) -> (Vec<Hypothesis>, Option<&FormDecomposition>) {
    let mut hs = Vec::new();
    let four = s.nf().nvars() == 4;
    hs.push(hyp(
        four,
        format!("F is a form in four variables W, X, Y, Z (found {})", s.nf().nvars()),
    ));
    match &s.decomposition {
        Ok(d) if four => {
            hs.push(hyp(
                true,
                format!(
                    "F = G_0 + Σ X^[a_i] G_i + c·WZ^[j-1] with c_p != 0 (p = {}, q = {}, m = {})",
                    d.p, d.q, d.m
                ),
            ));
            hs.push(hyp(
                d.some_block_has_pure_z(),
                "some G_i with i >= 1 contains a pure power of Z",
            ));
            (hs, Some(d))
        }
        Ok(_) => (hs, None),
        Err(e) => {
            hs.push(hyp(
                false,
                format!("F = G_0 + Σ X^[a_i] G_i + c·WZ^[j-1] with c_p != 0 ({e})"),
            ));
            (hs, None)
        }
    }
}

fn observed_only(theorem: TheoremId, s: &Subject, hs: Vec<Hypothesis>) -> TheoremReport {
    TheoremReport::new(theorem, "F", hs, Prediction::NoClaim, s.observed_verdict(), vec![])
}

/// `F' = X_t·G + c·W Z^[j]` for a WZ-shape normal form.
pub fn restricted_form(nf: &NormalForm, t: usize) -> Result<NormalForm> {
    if nf.shape != Shape::WZ {
        return Err(Error::Decompose("the W term must be c·WZ^[j-1]".into()));
    }
    if !nf.vars.middle().contains(&t) {
        return Err(Error::Decompose(format!(
            "{} is not one of X_1..X_(n-1)",
            nf.vars.dual_name(t)
        )));
    }
    let n1 = nf.nvars();
    let mut w = Exponent::unit(n1, nf.vars.w());
    w = w.bump(nf.vars.z(), nf.socle);
    let lifted =
        nf.g.shift_up(t)
            .add(&DualForm::monomial(nf.field(), w, nf.w_coeff.clone()))?;
    Ok(validate(&lifted, &nf.vars, ValidateOptions::default())?)
}

/// Analyzes `F'` for one `X_t` and compares with the implication
/// "F generic ⇒ F' generic".
pub fn check_restrict(s: &Subject, t: usize) -> Result<TheoremReport> {
    let nf = s.nf();
    let name = nf.vars.dual_name(t).to_string();
    let prime = Subject::from_normal(restricted_form(nf, t)?, s.options)?;
    let (f, fp) = (&s.analysis.verdict, &prime.analysis.verdict);
    let hs = vec![
        hyp(true, "F = G + c·WZ^[j-1]"),
        hyp(
            f.generic,
            format!("F is generic (μ(I) = {}, μ(J) = {})", f.mu_i, f.mu_j),
        ),
    ];
    let mut notes = vec![
        format!("F' = {}", prime.nf().form.render(&nf.vars)),
        format!("F': μ(I') = {}, μ(J') = {}, r' = {}", fp.mu_i, fp.mu_j, fp.r),
    ];
    if !f.generic && fp.generic {
        notes.push("F is not generic while F' is: the converse implication fails here".into());
    }
    if !fp.generic {
        notes.push("F' is not generic, so F cannot be generic".into());
    }
    Ok(TheoremReport::new(
        TheoremId::Restrict,
        format!("F' = {name}·G + WZ^[j]"),
        hs,
        Prediction::Generic,
        prime.observed_verdict(),
        notes,
    ))
}

/// `check_restrict` for every `X_t`.
pub fn check_restrict_all(s: &Subject) -> Result<Vec<TheoremReport>> {
    s.nf().vars.middle().map(|t| check_restrict(s, t)).collect()
}

/// Compares `(ann G_0)_d` with `y^{p+1}·R_{d-p-1}` for `d <= j - p`, where
/// `g0` is a binary form in `(Y, Z)` and `p = deg_Y g0`.
pub fn check_lem0_binary(g0: &DualForm) -> Result<TheoremReport> {
    if g0.nvars() != 2 {
        return Err(Error::VariableMismatch {
            left: 2,
            right: g0.nvars(),
        });
    }
    let j = g0.degree().ok_or(if g0.is_zero() {
        Error::ZeroForm
    } else {
        Error::Inhomogeneous
    })?;
    let p = g0.deg_in_var(0)?;
    let field = g0.field();
    let hs = vec![hyp(p < j - p, format!("p < j - p (p = {p}, j = {j})"))];
    let mut holds = true;
    let mut notes = Vec::new();
    for d in 1..=j.saturating_sub(p) {
        let ann = ann_degree(g0, d)?;
        let basis = monomial_basis(2, d, None);
        let index = index_map(&basis);
        let rows = if d > p {
            monomial_basis(2, d - p - 1, None)
                .into_iter()
                .map(|m| {
                    let mut v = vec![field.zero(); basis.len()];
                    v[index[&m.bump(0, p + 1)]] = field.one();
                    v
                })
                .collect()
        } else {
            Vec::new()
        };
        let multiples = Subspace::span(field, basis.len(), rows)?;
        if ann != multiples {
            holds = false;
            notes.push(format!(
                "degree {d}: ann G_0 has dimension {} against {} multiples of y^{}",
                ann.dim(),
                multiples.dim(),
                p + 1
            ));
        }
    }
    Ok(TheoremReport::new(
        TheoremId::Lem0,
        "G_0",
        hs,
        Prediction::Holds,
        Observation::property(holds),
        notes,
    ))
}

pub fn check_lem0(s: &Subject) -> Result<TheoremReport> {
    match &s.decomposition {
        Ok(d) => check_lem0_binary(&d.g0),
        Err(e) => Ok(TheoremReport::new(
            TheoremId::Lem0,
            "G_0",
            vec![hyp(false, format!("G_0 has c_p != 0 ({e})"))],
            Prediction::NoClaim,
            Observation::Fails,
            vec!["G_0 is not available".into()],
        )),
    }
}

pub fn check_th0(s: &Subject) -> Result<TheoremReport> {
    let (mut hs, d) = notation(s);
    let Some(d) = d else {
        return Ok(observed_only(TheoremId::Th0, s, hs));
    };
    hs.push(hyp(!d.blocks.is_empty(), "F has at least one X-block"));
    let Some(first) = d.blocks.first() else {
        return Ok(observed_only(TheoremId::Th0, s, hs));
    };
    let max_y = d.blocks.iter().map(|b| b.deg_y()).max().expect("nonempty");
    let left = first.a <= d.p;
    let right = d.p <= max_y;
    let notes = vec![
        format!("a_1 <= p: {} (a_1 = {}, p = {})", left, first.a, d.p),
        format!("p <= max deg_Y G_i: {right} (max = {max_y})"),
    ];
    let claim = if left || right {
        Prediction::NoClaim
    } else {
        Prediction::NotGeneric
    };
    Ok(TheoremReport::new(
        TheoremId::Th0,
        "F",
        hs,
        claim,
        s.observed_verdict(),
        notes,
    ))
}

pub fn check_thm1(s: &Subject) -> Result<TheoremReport> {
    let (mut hs, d) = notation(s);
    let Some(d) = d else {
        return Ok(observed_only(TheoremId::Thm1, s, hs));
    };
    hs.push(hyp(
        d.blocks.len() == 1,
        format!("exactly one X-block (found {})", d.blocks.len()),
    ));
    let Some(b) = d.blocks.first().filter(|_| d.blocks.len() == 1) else {
        return Ok(observed_only(TheoremId::Thm1, s, hs));
    };
    let (a, j, p) = (b.a, d.j, d.p);
    hs.push(hyp(
        a > j - a && j - a >= p,
        format!("a > j - a >= p (a = {a}, j - a = {}, p = {p})", j - a),
    ));
    hs.push(hyp(
        d.deg_x() > b.degree() && b.degree() >= p,
        format!("deg_X F > deg G_1 >= deg_Y G_0 ({} > {} >= {p})", d.deg_x(), b.degree()),
    ));
    let claim = if b.deg_y() == p {
        Prediction::Generic
    } else {
        Prediction::NotGeneric
    };
    let notes = vec![format!("deg_Y G_1 = {}, p = {p}", b.deg_y())];
    Ok(TheoremReport::new(
        TheoremId::Thm1,
        "F",
        hs,
        claim,
        s.observed_verdict(),
        notes,
    ))
}

/// Hypotheses on the top block shared by `tm2` and its converse.
fn lower_blocks_below_p(d: &FormDecomposition) -> Hypothesis {
    let n = d.blocks.len();
    let worst = d.blocks[..n - 1].iter().map(|b| b.deg_y()).max();
    hyp(
        worst.is_none_or(|y| y < d.p),
        match worst {
            Some(y) => format!("deg_Y G_i < deg_Y G_0 for i < n (max {y}, p = {})", d.p),
            None => "deg_Y G_i < deg_Y G_0 for i < n (no such i)".into(),
        },
    )
}

pub fn check_tm2(s: &Subject) -> Result<TheoremReport> {
    let (mut hs, d) = notation(s);
    let Some(d) = d else {
        return Ok(observed_only(TheoremId::Tm2, s, hs));
    };
    hs.push(hyp(!d.blocks.is_empty(), "F has at least one X-block"));
    let (Some(first), Some(last)) = (d.blocks.first(), d.blocks.last()) else {
        return Ok(observed_only(TheoremId::Tm2, s, hs));
    };
    hs.push(hyp(
        d.j - last.a < first.a,
        format!("j - a_n < a_1 ({} < {})", d.j - last.a, first.a),
    ));
    hs.push(hyp(!last.y_divides(), "Y does not divide G_n"));
    hs.push(lower_blocks_below_p(d));
    let claim = if last.deg_y() != d.p {
        Prediction::NotGeneric
    } else {
        Prediction::NoClaim
    };
    let notes = vec![format!("deg_Y G_n = {}, p = {}", last.deg_y(), d.p)];
    Ok(TheoremReport::new(
        TheoremId::Tm2,
        "F",
        hs,
        claim,
        s.observed_verdict(),
        notes,
    ))
}

pub fn check_tm2_converse(s: &Subject) -> Result<TheoremReport> {
    let (mut hs, d) = notation(s);
    let Some(d) = d else {
        return Ok(observed_only(TheoremId::Tm2Converse, s, hs));
    };
    hs.push(hyp(!d.blocks.is_empty(), "F has at least one X-block"));
    let (Some(first), Some(last)) = (d.blocks.first(), d.blocks.last()) else {
        return Ok(observed_only(TheoremId::Tm2Converse, s, hs));
    };
    let p = d.p;
    let deg_n = last.degree();
    hs.push(hyp(
        last.deg_y() == p,
        format!("deg_Y G_n = p ({} = {p})", last.deg_y()),
    ));
    let s_exp = deg_n.checked_sub(p);
    hs.push(hyp(
        s_exp.is_some_and(|s| last.deg_z() == p + s),
        format!(
            "deg_Z G_n = p + s with s = deg G_n - p (deg_Z G_n = {}, deg G_n = {deg_n})",
            last.deg_z()
        ),
    ));
    hs.push(hyp(deg_n < first.a, format!("deg G_n < a_1 ({deg_n} < {})", first.a)));
    hs.push(lower_blocks_below_p(d));

    let lower = &d.blocks[..d.blocks.len() - 1];
    let rest_y = last.pairs.iter().filter(|&&(r, _)| r != p).map(|&(r, _)| r).max();
    let cond1 = rest_y.is_some_and(|ry| lower.iter().all(|b| b.deg_y() < ry));
    let cond2 = lower.iter().all(|b| b.deg_z() < last.deg_z());
    hs.push(hyp(
        cond1 || cond2,
        format!(
            "(1) deg_Y G_i < deg_Y (G_n - c·Y^[p]Z^[s]) for i < n [{}], or (2) deg_Z G_i < deg_Z G_n for i < n [{}]",
            if cond1 { "holds" } else { "fails" },
            if cond2 { "holds" } else { "fails" },
        ),
    ));
    Ok(TheoremReport::new(
        TheoremId::Tm2Converse,
        "F",
        hs,
        Prediction::Generic,
        s.observed_verdict(),
        vec![],
    ))
}

/// The three-variable setting of the Hilbert function comparison: `F` in
/// `W, X, Y, Z` of WZ shape.
fn four_variable_wz(s: &Subject) -> Vec<Hypothesis> {
    let nf = s.nf();
    vec![
        hyp(nf.shape == Shape::WZ, "F = G + c·WZ^[j-1]"),
        hyp(
            nf.nvars() == 4,
            format!("R = k[w, x, y, z] (found {} variables)", nf.nvars()),
        ),
    ]
}

pub fn check_hilb(s: &Subject) -> Result<TheoremReport> {
    let mut hs = four_variable_wz(s);
    let shape = s.analysis.profile.i2_shape;
    hs.push(hyp(
        shape == I2Shape::SquareAndMixed,
        format!("I_2 = (w^2, w x_1, .., w x_(n-1)) (found {shape:?})"),
    ));
    let diff = &s.analysis.difference;
    let notes = vec![format!(
        "H_R/I - H_R'/J = {:?}, β = {}",
        diff.diff, s.analysis.verdict.beta
    )];
    Ok(TheoremReport::new(
        TheoremId::Hilb,
        "F",
        hs,
        Prediction::Holds,
        Observation::property(diff.matches_pattern),
        notes,
    ))
}

pub fn check_unimodal(s: &Subject) -> Result<TheoremReport> {
    let hs = four_variable_wz(s);
    let notes = vec![format!("H_R'/J = {:?}", s.analysis.profile.hilbert_rj)];
    Ok(TheoremReport::new(
        TheoremId::Unimodal,
        "J = ann(G, Z^[j-1])",
        hs,
        Prediction::Holds,
        Observation::property(s.analysis.j_unimodal),
        notes,
    ))
}

/// Runs one statement; `restrict` yields one report per `X_t`.
pub fn check(theorem: TheoremId, s: &Subject) -> Result<Vec<TheoremReport>> {
    Ok(match theorem {
        TheoremId::Restrict => check_restrict_all(s)?,
        TheoremId::Lem0 => vec![check_lem0(s)?],
        TheoremId::Th0 => vec![check_th0(s)?],
        TheoremId::Thm1 => vec![check_thm1(s)?],
        TheoremId::Tm2 => vec![check_tm2(s)?],
        TheoremId::Tm2Converse => vec![check_tm2_converse(s)?],
        TheoremId::Hilb => vec![check_hilb(s)?],
        TheoremId::Unimodal => vec![check_unimodal(s)?],
    })
}
