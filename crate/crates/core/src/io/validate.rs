use serde::Serialize;
use thiserror::Error;

use crate::dp::{index_map, monomial_basis, DualForm, Exponent, VariableSet};
use crate::linalg::{Field, RowReducer, Scalar};

/// Which of the two admissible shapes the `W` term has.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Shape {
    /// `F = G + c·W Z^[j-1]`.
    WZ,
    /// `F = G + c·W^[j]`.
    W,
}

impl std::fmt::Display for Shape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Shape::WZ => "WZ",
            Shape::W => "W",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ValidationError {
    #[error("form is zero")]
    ZeroForm,
    #[error("form is not homogeneous (degrees {0:?})")]
    Inhomogeneous(Vec<u32>),
    #[error("socle degree {0} is below 2")]
    SocleTooSmall(u32),
    #[error("no term contains W")]
    NoWTerm,
    #[error("W occurs in {0} terms; it must occur in exactly one")]
    WInSeveralTerms(usize),
    #[error("the W term {0} is neither W^[j] nor c*WZ^[j-1]")]
    BadWTerm(String),
    #[error("G contains linear-times-socle terms {0:?}; rerun with auto-normalization to remove them")]
    LinearTimesSocle(Vec<String>),
    #[error("form is degenerate: its first partials span {found} of {expected} dimensions")]
    Degenerate { found: usize, expected: usize },
    #[error("field characteristic {p} must exceed the socle degree {socle}")]
    CharacteristicTooSmall { p: u64, socle: u32 },
}

impl ValidationError {
    pub fn code(&self) -> &'static str {
        match self {
            ValidationError::ZeroForm => "zero-form",
            ValidationError::Inhomogeneous(_) => "inhomogeneous",
            ValidationError::SocleTooSmall(_) => "socle-too-small",
            ValidationError::NoWTerm => "no-w-term",
            ValidationError::WInSeveralTerms(_) => "w-in-several-terms",
            ValidationError::BadWTerm(_) => "bad-w-term",
            ValidationError::LinearTimesSocle(_) => "linear-times-socle",
            ValidationError::Degenerate { .. } => "degenerate",
            ValidationError::CharacteristicTooSmall { .. } => "characteristic-too-small",
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ValidateOptions {
    /// Delete `X_i Z^[j-1]` and `Z^[j]` terms from `G` instead of rejecting
    /// them; this is the substitution `W -> W + L`.
    pub auto_normalize: bool,
}

/// A form checked to be `F = G + c·W Z^[j-1]` or `F = G + c·W^[j]` with
/// `W ∤ G`, no `L Z^[j-1]` terms in `G` (WZ shape), and `H(1) = n + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub vars: VariableSet,
    pub form: DualForm,
    pub g: DualForm,
    pub w_coeff: Scalar,
    pub shape: Shape,
    pub socle: u32,
    /// Terms deleted by auto-normalization, rendered.
    pub removed: Vec<String>,
}

impl NormalForm {
    pub fn field(&self) -> Field {
        self.form.field()
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    /// `n`, the number of variables of `R'`.
    pub fn n(&self) -> usize {
        self.vars.n()
    }

    /// Indices of the variables of `R'` (all but `w`).
    pub fn r_prime_vars(&self) -> Vec<usize> {
        (1..self.vars.len()).collect()
    }
}

/// `dim` of the span of the first partials `x ∘ F` as `x` ranges over
/// monomials of degree `j - 1`, i.e. `H(1)`.
pub fn first_partials_rank(form: &DualForm, socle: u32) -> usize {
    let n = form.nvars();
    let linear = monomial_basis(n, 1, None);
    let index = index_map(&linear);
    let mut seen = std::collections::BTreeSet::new();
    for (e, _) in form.terms() {
        for v in 0..n {
            if let Some(m) = e.lower(v) {
                seen.insert(m);
            }
        }
    }
    let mut acc = RowReducer::new(form.field(), linear.len());
    for m in seen {
        debug_assert_eq!(m.degree(), socle - 1);
        let mut row = vec![form.field().zero(); linear.len()];
        for v in 0..n {
            let c = form.coeff(&m.bump(v, 1));
            if !c.is_zero() {
                row[index[&Exponent::unit(n, v)]] = c;
            }
        }
        acc.push(row).expect("row has the basis length");
        if acc.is_full() {
            break;
        }
    }
    acc.rank()
}

pub fn validate(form: &DualForm, vars: &VariableSet, opts: ValidateOptions) -> Result<NormalForm, ValidationError> {
    if form.is_zero() {
        return Err(ValidationError::ZeroForm);
    }
    let Some(j) = form.degree() else {
        let mut degrees: Vec<u32> = form.terms().map(|(e, _)| e.degree()).collect();
        degrees.dedup();
        return Err(ValidationError::Inhomogeneous(degrees));
    };
    if j < 2 {
        return Err(ValidationError::SocleTooSmall(j));
    }
    if let Field::Prime(p) = form.field() {
        if p <= u64::from(j) {
            return Err(ValidationError::CharacteristicTooSmall { p, socle: j });
        }
    }
    let (w, z) = (vars.w(), vars.z());
    let w_terms: Vec<(&Exponent, &Scalar)> = form.terms().filter(|(e, _)| e.get(w) > 0).collect();
    let (w_exp, w_coeff) = match w_terms.as_slice() {
        [] => return Err(ValidationError::NoWTerm),
        [t] => *t,
        many => return Err(ValidationError::WInSeveralTerms(many.len())),
    };
    let n1 = vars.len();
    let shape = if *w_exp == Exponent::unit(n1, w).bump(w, j - 1) {
        Shape::W
    } else if *w_exp == Exponent::unit(n1, w).bump(z, j - 1) {
        Shape::WZ
    } else {
        let t = DualForm::monomial(form.field(), w_exp.clone(), w_coeff.clone());
        return Err(ValidationError::BadWTerm(t.render(vars)));
    };
    let w_coeff = w_coeff.clone();
    let mut g = form.filter_terms(|e| e.get(w) == 0);
    let mut removed = Vec::new();
    if shape == Shape::WZ {
        // L Z^[j-1] with L any linear form, including L = Z, whose term is Z^[j].
        let lz = |e: &Exponent| e.get(z) == j || (e.get(z) == j - 1 && vars.middle().any(|i| e.get(i) == 1));
        let bad = g.filter_terms(lz);
        if !bad.is_zero() {
            let rendered: Vec<String> = bad
                .terms()
                .map(|(e, c)| DualForm::monomial(form.field(), e.clone(), c.clone()).render(vars))
                .collect();
            if !opts.auto_normalize {
                return Err(ValidationError::LinearTimesSocle(rendered));
            }
            g = g.filter_terms(|e| !lz(e));
            removed = rendered;
        }
    }
    let mut full = g.clone();
    let wterm = DualForm::monomial(form.field(), w_exp.clone(), w_coeff.clone());
    full = full.add(&wterm).expect("same variable set");
    let h1 = first_partials_rank(&full, j);
    if h1 != n1 {
        return Err(ValidationError::Degenerate {
            found: h1,
            expected: n1,
        });
    }
    Ok(NormalForm {
        vars: vars.clone(),
        form: full,
        g,
        w_coeff,
        shape,
        socle: j,
        removed,
    })
}
