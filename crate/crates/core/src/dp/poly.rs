use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::marker::PhantomData;

use crate::dp::monomial::Exponent;
use crate::dp::vars::VariableSet;
use crate::error::{Error, Result};
use crate::linalg::{binomial, Field, Scalar};

/// Marker for elements of the divided power algebra `R*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Dual;

/// Marker for elements of the polynomial ring `R`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ring;

/// Sparse polynomial with exact coefficients and no stored zeros. Terms are
/// kept in graded-lex order.
#[derive(Debug)]
pub struct Poly<K> {
    nvars: usize,
    field: Field,
    terms: BTreeMap<Exponent, Scalar>,
    side: PhantomData<K>,
}

impl<K> Clone for Poly<K> {
    fn clone(&self) -> Self {
        Poly {
            nvars: self.nvars,
            field: self.field,
            terms: self.terms.clone(),
            side: PhantomData,
        }
    }
}

impl<K> PartialEq for Poly<K> {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.field == other.field && self.terms == other.terms
    }
}

impl<K> Eq for Poly<K> {}

impl<K> std::hash::Hash for Poly<K> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.nvars.hash(state);
        self.field.hash(state);
        self.terms.hash(state);
    }
}

/// A form `F = sum c_a X^[a]` of the divided power algebra.
pub type DualForm = Poly<Dual>;

/// An element of `k[w, x_1, .., x_n]`.
pub type RingElement = Poly<Ring>;

impl<K> Poly<K> {
    pub fn zero(nvars: usize, field: Field) -> Self {
        Poly {
            nvars,
            field,
            terms: BTreeMap::new(),
            side: PhantomData,
        }
    }

    pub fn monomial(field: Field, exp: Exponent, coeff: Scalar) -> Self {
        let mut p = Self::zero(exp.len(), field);
        p.add_term(exp, coeff);
        p
    }

    pub fn one(nvars: usize, field: Field) -> Self {
        Self::monomial(field, Exponent::zero(nvars), field.one())
    }

    /// Sums the given terms; repeated exponents accumulate.
    pub fn from_terms(nvars: usize, field: Field, terms: impl IntoIterator<Item = (Exponent, Scalar)>) -> Self {
        let mut p = Self::zero(nvars, field);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Coordinates w.r.t. a monomial basis back to a polynomial.
    pub fn from_vector(field: Field, nvars: usize, basis: &[Exponent], v: &[Scalar]) -> Self {
        Self::from_terms(
            nvars,
            field,
            basis
                .iter()
                .zip(v)
                .filter(|(_, c)| !c.is_zero())
                .map(|(e, c)| (e.clone(), c.clone())),
        )
    }

    pub fn add_term(&mut self, exp: Exponent, coeff: Scalar) {
        assert_eq!(exp.len(), self.nvars, "exponent length differs from variable count");
        assert!(self.field.owns(&coeff), "scalars from different fields were mixed");
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(c) => {
                *c = &*c + &coeff;
                if c.is_zero() {
                    self.terms.remove(&exp);
                }
            }
            None => {
                self.terms.insert(exp, coeff);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &Scalar)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &Exponent) -> Scalar {
        self.terms.get(exp).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Common total degree of all terms; `None` for zero or mixed degrees.
    pub fn degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Exponent::degree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree().is_some()
    }

    /// Largest total degree of a term.
    pub fn max_degree(&self) -> Result<u32> {
        self.terms.keys().map(Exponent::degree).max().ok_or(Error::ZeroForm)
    }

    /// Highest power of one variable across all terms.
    pub fn deg_in_var(&self, var: usize) -> Result<u32> {
        self.terms.keys().map(|e| e.get(var)).max().ok_or(Error::ZeroForm)
    }

    /// Sum of the terms whose exponents satisfy `keep`.
    pub fn filter_terms(&self, mut keep: impl FnMut(&Exponent) -> bool) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| keep(e))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
            ..Self::zero(self.nvars, self.field)
        }
    }

    pub fn map_exponents(&self, f: impl Fn(&Exponent) -> Exponent) -> Self {
        Self::from_terms(
            self.nvars,
            self.field,
            self.terms.iter().map(|(e, c)| (f(e), c.clone())),
        )
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Self::from_terms(
            self.nvars,
            self.field,
            self.terms.iter().map(|(e, c)| (e.clone(), c * s)),
        )
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-&self.field.one()))
    }

    /// Coordinates w.r.t. a monomial basis; terms outside it are an error.
    pub fn to_vector(&self, index: &HashMap<Exponent, usize>) -> Result<Vec<Scalar>> {
        let mut v = vec![self.field.zero(); index.len()];
        for (e, c) in &self.terms {
            let i = *index.get(e).ok_or(Error::DimensionMismatch {
                expected: index.len(),
                found: index.len() + 1,
            })?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    fn compatible<L>(&self, other: &Poly<L>) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VariableMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    fn render_with(&self, factor: impl Fn(&mut String, usize, u32)) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = if c.is_negative() {
                (true, -c)
            } else {
                (false, c.clone())
            };
            if neg {
                out.push('-');
            } else if i > 0 {
                out.push('+');
            }
            let constant = e.degree() == 0;
            if !mag.is_one() || constant {
                write!(out, "{mag}").unwrap();
            }
            for (v, &k) in e.as_slice().iter().enumerate() {
                if k > 0 {
                    factor(&mut out, v, k);
                }
            }
        }
        out
    }
}

impl DualForm {
    /// Divided-power product: `X^[a] X^[b] = C(a+b, a) X^[a+b]` in each
    /// variable, extended bilinearly.
    pub fn dp_multiply(&self, other: &DualForm) -> Result<DualForm> {
        self.compatible(other)?;
        let mut out = DualForm::zero(self.nvars, self.field);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let mut coeff = ca * cb;
                for (x, y) in a.as_slice().iter().zip(b.as_slice()) {
                    if *x > 0 && *y > 0 {
                        coeff = &coeff * &self.field.from_bigint(&binomial(x + y, *x));
                    }
                }
                out.add_term(a.add(b), coeff);
            }
        }
        Ok(out)
    }

    /// Raises the exponent of `var` by one in every term, keeping
    /// coefficients. Left inverse of contraction by that variable.
    pub fn shift_up(&self, var: usize) -> DualForm {
        self.map_exponents(|e| e.bump(var, 1))
    }

    /// `var^k ∘ self`, i.e. `k` divided-power derivatives in one variable.
    pub fn derivative(&self, var: usize, k: u32) -> DualForm {
        let mut exp = vec![0; self.nvars];
        exp[var] = k;
        let m = RingElement::monomial(self.field, Exponent::new(exp), self.field.one());
        contract(&m, self).expect("same variable set")
    }

    /// Bracket notation, e.g. `X^[8]Y^[2]+WZ^[13]`.
    pub fn render(&self, vars: &VariableSet) -> String {
        self.render_with(|out, v, k| {
            out.push_str(vars.dual_name(v));
            if k > 1 {
                write!(out, "^[{k}]").unwrap();
            }
        })
    }
}

impl RingElement {
    pub fn ring_multiply(&self, other: &RingElement) -> Result<RingElement> {
        self.compatible(other)?;
        let mut out = RingElement::zero(self.nvars, self.field);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.add(b), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn var(nvars: usize, field: Field, var: usize) -> RingElement {
        RingElement::monomial(field, Exponent::unit(nvars, var), field.one())
    }

    /// Power-product notation, e.g. `wz^7-y^8`.
    pub fn render(&self, vars: &VariableSet) -> String {
        self.render_with(|out, v, k| {
            out.push_str(&vars.ring_name(v));
            if k > 1 {
                write!(out, "^{k}").unwrap();
            }
        })
    }
}

/// The apolarity action `f ∘ F`: `x^a ∘ X^[b] = X^[b-a]` when `a <= b`,
/// zero otherwise, extended bilinearly.
pub fn contract(f: &RingElement, form: &DualForm) -> Result<DualForm> {
    f.compatible(form)?;
    let mut out = DualForm::zero(form.nvars, form.field);
    for (a, ca) in &f.terms {
        for (b, cb) in &form.terms {
            if let Some(q) = a.quotient_of(b) {
                out.add_term(q, ca * cb);
            }
        }
    }
    Ok(out)
}

/// The perfect pairing between `R_d` and `R*_d`: the constant `f ∘ F`.
/// Terms of other degrees pair to zero.
pub fn pairing(f: &RingElement, form: &DualForm) -> Result<Scalar> {
    f.compatible(form)?;
    let mut acc = form.field.zero();
    for (a, ca) in &f.terms {
        if let Some(cb) = form.terms.get(a) {
            acc = &acc + &(ca * cb);
        }
    }
    Ok(acc)
}
