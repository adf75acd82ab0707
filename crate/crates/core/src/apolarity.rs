//! Catalecticant matrices, degree slices of `ann F`, and the Hilbert
//! function of the Artinian Gorenstein quotient `R/ann F`.

use rayon::prelude::*;

use crate::dp::{index_map, monomial_basis, DualForm, Exponent, RingElement};
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, rank, ExactMatrix, RowReducer, Subspace};

/// The matrix of `R_d × R*_{j-d} ∋ (m, M) ↦ coefficient of M in m ∘ F`.
/// Rows are indexed by `rows`, columns by `cols`, both in graded-lex order.
#[derive(Clone, Debug)]
pub struct Catalecticant {
    pub degree: u32,
    pub socle: u32,
    pub rows: Vec<Exponent>,
    pub cols: Vec<Exponent>,
    pub matrix: ExactMatrix,
}

/// Socle degree of a nonzero homogeneous form.
pub fn socle_degree(form: &DualForm) -> Result<u32> {
    if form.is_zero() {
        return Err(Error::ZeroForm);
    }
    form.degree().ok_or(Error::Inhomogeneous)
}

pub fn catalecticant(form: &DualForm, d: u32) -> Result<Catalecticant> {
    let j = socle_degree(form)?;
    if d > j {
        return Err(Error::DegreeOutOfRange { degree: d, max: j });
    }
    let n = form.nvars();
    let rows = monomial_basis(n, d, None);
    let cols = monomial_basis(n, j - d, None);
    let col_index = index_map(&cols);
    let mut matrix = ExactMatrix::zeros(form.field(), rows.len(), cols.len());
    for (r, m) in rows.iter().enumerate() {
        for (e, c) in form.terms() {
            if let Some(q) = m.quotient_of(e) {
                matrix.set(r, col_index[&q], c.clone());
            }
        }
    }
    Ok(Catalecticant {
        degree: d,
        socle: j,
        rows,
        cols,
        matrix,
    })
}

/// `(ann F)_d` as a subspace of `R_d` in the basis `monomial_basis(n, d)`.
/// Above the socle degree every element annihilates.
pub fn ann_degree(form: &DualForm, d: u32) -> Result<Subspace> {
    let j = socle_degree(form)?;
    let field = form.field();
    if d > j {
        let dim = monomial_basis(form.nvars(), d, None).len();
        return Ok(Subspace::full(field, dim));
    }
    let cat = catalecticant(form, d)?;
    Ok(kernel_basis(&cat.matrix.transpose()))
}

/// `H(d) = rank Cat_d(F)` for `d = 0..=j`.
pub fn hilbert_function(form: &DualForm) -> Result<Vec<usize>> {
    let j = socle_degree(form)?;
    (0..=j)
        .into_par_iter()
        .map(|d| catalecticant(form, d).map(|c| rank(&c.matrix)))
        .collect()
}

/// Structural sanity of `R/ann F` for a form in `n + 1` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GorensteinSanity {
    pub hilbert: Vec<usize>,
    pub symmetric: bool,
    /// `H = (1, n+1, 1 + C(n+1, 2), .., 1 + C(n+1, 2), n+1, 1)` at the ends
    /// that exist for this socle degree.
    pub expected_shape: bool,
    pub dim_i2: usize,
    /// `dim I_2 = n`.
    pub i2_has_n_quadrics: bool,
}

pub fn gorenstein_sanity(form: &DualForm) -> Result<GorensteinSanity> {
    let hilbert = hilbert_function(form)?;
    Ok(sanity_from_hilbert(form.nvars(), hilbert))
}

pub(crate) fn sanity_from_hilbert(nvars: usize, hilbert: Vec<usize>) -> GorensteinSanity {
    let j = hilbert.len() - 1;
    let n = nvars - 1;
    let symmetric = (0..=j).all(|d| hilbert[d] == hilbert[j - d]);
    let quad = 1 + n * (n + 1) / 2;
    let mut expected_shape = hilbert[0] == 1 && symmetric;
    if j >= 2 {
        expected_shape &= hilbert[1] == n + 1;
    }
    if j >= 4 {
        expected_shape &= hilbert[2] == quad;
    }
    let r2 = nvars * (nvars + 1) / 2;
    let h2 = hilbert.get(2).copied().unwrap_or(0);
    let dim_i2 = r2 - h2;
    GorensteinSanity {
        hilbert,
        symmetric,
        expected_shape,
        dim_i2,
        i2_has_n_quadrics: dim_i2 == n,
    }
}

/// `I_d` for the ideal generated by homogeneous `gens`, in the basis
/// `monomial_basis(nvars, d, restrict)`. Generators must only involve the
/// allowed variables.
pub fn ideal_slice(
    gens: &[RingElement],
    nvars: usize,
    d: u32,
    restrict: Option<&[usize]>,
    field: crate::linalg::Field,
) -> Result<Subspace> {
    let basis = monomial_basis(nvars, d, restrict);
    let index = index_map(&basis);
    let mut acc = RowReducer::new(field, basis.len());
    for g in gens {
        if g.is_zero() {
            continue;
        }
        let e = g.degree().ok_or(Error::Inhomogeneous)?;
        if e > d {
            continue;
        }
        for m in monomial_basis(nvars, d - e, restrict) {
            let prod = g.ring_multiply(&RingElement::monomial(field, m, field.one()))?;
            acc.push(prod.to_vector(&index)?)?;
            if acc.is_full() {
                return Ok(acc.into_subspace());
            }
        }
    }
    Ok(acc.into_subspace())
}

/// The two generators of `ann G` for a binary form `G`: `f1` of the least
/// degree `d1` with `(ann G)_{d1} ≠ 0`, and `f2` the canonical new element in
/// the least degree where `ann G` exceeds `(f1)`. Both lie in the RREF
/// normal form of their slice, which makes them reproducible.
pub fn binary_apolarity_pair(g: &DualForm) -> Result<(RingElement, RingElement)> {
    if g.nvars() != 2 {
        return Err(Error::VariableMismatch {
            left: 2,
            right: g.nvars(),
        });
    }
    let e = socle_degree(g)?;
    let field = g.field();
    let to_ring =
        |d: u32, v: &[crate::linalg::Scalar]| RingElement::from_vector(field, 2, &monomial_basis(2, d, None), v);
    let mut d1 = 1;
    let ann1 = loop {
        let a = ann_degree(g, d1)?;
        if a.dim() > 0 {
            break a;
        }
        d1 += 1;
    };
    let f1 = to_ring(d1, &ann1.basis()[0]);
    if ann1.dim() >= 2 {
        return Ok((f1, to_ring(d1, &ann1.basis()[1])));
    }
    for d in d1 + 1..=e + 2 {
        let ann = ann_degree(g, d)?;
        let ours = ideal_slice(std::slice::from_ref(&f1), 2, d, None, field)?;
        if ann.dim() > ours.dim() {
            for v in ann.basis() {
                let r = ours.reduce(v)?;
                if r.iter().any(|x| !x.is_zero()) {
                    return Ok((f1, to_ring(d, &r)));
                }
            }
        }
    }
    Err(Error::Consistency(
        "binary form without a second apolar generator".into(),
    ))
}
