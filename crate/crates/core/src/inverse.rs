//! Graded pieces of an inverse system and minimal generator counts of the
//! ideal it determines, computed entirely on the dual side.
//!
//! For `I = ann(Φ_1, .., Φ_s)` over the variables `active`, the orthogonal
//! complement of `I_d` is `D_d = span{ m ∘ Φ_i : deg m = deg Φ_i - d }`, and
//! the orthogonal complement of `(𝔫I)_d` is
//! `K_d = { Φ ∈ R*_d : x ∘ Φ ∈ D_{d-1} for every variable x }`.
//! Hence `ν_d = dim I_d - dim (𝔫I)_d = dim K_d - dim D_d`, and testing
//! whether `h ∈ (𝔫I)_d` reduces to pairing `h` against a basis of `K_d`.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::dp::{contract, index_map, monomial_basis, DualForm, Exponent, RingElement};
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, ExactMatrix, Field, RowReducer, Scalar, Subspace};

#[derive(Clone, Debug)]
pub struct InverseSystem {
    nvars: usize,
    field: Field,
    active: Vec<usize>,
    generators: Vec<DualForm>,
    /// `D_e` for `e = 0..=top`.
    pieces: Vec<Subspace>,
}

impl InverseSystem {
    /// Generators must be nonzero, homogeneous and involve only `active`.
    pub fn new(nvars: usize, field: Field, active: &[usize], generators: Vec<DualForm>) -> Result<Self> {
        let mut active = active.to_vec();
        active.sort_unstable();
        active.dedup();
        let mut top = 0;
        for g in &generators {
            if g.nvars() != nvars {
                return Err(Error::VariableMismatch {
                    left: nvars,
                    right: g.nvars(),
                });
            }
            if g.field() != field {
                return Err(Error::FieldMismatch);
            }
            if g.is_zero() {
                return Err(Error::ZeroForm);
            }
            let d = g.degree().ok_or(Error::Inhomogeneous)?;
            let stray = g
                .terms()
                .any(|(e, _)| (0..nvars).any(|v| e.get(v) > 0 && !active.contains(&v)));
            if stray {
                return Err(Error::VariableMismatch {
                    left: active.len(),
                    right: nvars,
                });
            }
            top = top.max(d);
        }
        if generators.is_empty() {
            return Err(Error::ZeroForm);
        }
        let mut sys = InverseSystem {
            nvars,
            field,
            active,
            generators,
            pieces: Vec::new(),
        };
        sys.pieces = (0..=top)
            .into_par_iter()
            .map(|e| sys.derivative_space(e))
            .collect::<Result<_>>()?;
        Ok(sys)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn active(&self) -> &[usize] {
        &self.active
    }

    pub fn generators(&self) -> &[DualForm] {
        &self.generators
    }

    pub fn top_degree(&self) -> u32 {
        self.pieces.len() as u32 - 1
    }

    /// Monomials of degree `d` in the active variables; the coordinate
    /// system of every degree-`d` object here.
    pub fn basis(&self, d: u32) -> Vec<Exponent> {
        monomial_basis(self.nvars, d, Some(&self.active))
    }

    /// `D_e`, or `None` above the top degree where it vanishes.
    pub fn piece(&self, e: u32) -> Option<&Subspace> {
        self.pieces.get(e as usize)
    }

    pub fn piece_dim(&self, e: u32) -> usize {
        self.piece(e).map_or(0, Subspace::dim)
    }

    /// Hilbert function of the quotient, `dim D_e` for `e = 0..=top`.
    pub fn hilbert(&self) -> Vec<usize> {
        self.pieces.iter().map(Subspace::dim).collect()
    }

    /// Whether `f` annihilates every generator.
    pub fn annihilates(&self, f: &RingElement) -> Result<bool> {
        for g in &self.generators {
            if !contract(f, g)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn derivative_space(&self, e: u32) -> Result<Subspace> {
        let basis = self.basis(e);
        let index = index_map(&basis);
        let mut acc = RowReducer::new(self.field, basis.len());
        for g in &self.generators {
            let deg = g.degree().expect("checked homogeneous");
            if deg < e {
                continue;
            }
            for m in monomial_basis(self.nvars, deg - e, Some(&self.active)) {
                if acc.is_full() {
                    break;
                }
                let m = RingElement::monomial(self.field, m, self.field.one());
                let part = contract(&m, g)?;
                if !part.is_zero() {
                    acc.push(part.to_vector(&index)?)?;
                }
            }
        }
        Ok(acc.into_subspace())
    }

    /// `K_d`, the orthogonal complement of `(𝔫I)_d`, for `d >= 1`.
    pub fn maximal_ideal_perp(&self, d: u32) -> Result<Subspace> {
        assert!(d >= 1, "K_d is defined for positive degrees");
        let field = self.field;
        let target = self.basis(d);
        let Some(prev) = self.piece(d - 1).filter(|p| p.dim() > 0) else {
            return Ok(Subspace::zero(field, target.len()));
        };
        let m = self.active.len();
        let h = prev.dim();
        let prev_basis = self.basis(d - 1);

        // Partials x_l ∘ b_k of the basis of D_{d-1}, sparse over degree d-2.
        let lower_index = if d >= 2 {
            index_map(&self.basis(d - 2))
        } else {
            Default::default()
        };
        let partial = |k: usize, l: usize| -> Vec<(usize, Scalar)> {
            let var = self.active[l];
            prev.basis()[k]
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .filter_map(|(i, c)| prev_basis[i].lower(var).map(|u| (lower_index[&u], c.clone())))
                .collect()
        };

        // Unknowns c_{i,k} (column i*h + k) with ψ_i = Σ_k c_{i,k} b_k,
        // subject to x_l ∘ ψ_i = x_i ∘ ψ_l for i < l.
        let mut rows: BTreeMap<(usize, usize, usize), Vec<(usize, Scalar)>> = BTreeMap::new();
        if d >= 2 {
            for i in 0..m {
                for k in 0..h {
                    let col = i * h + k;
                    for l in 0..m {
                        if l == i {
                            continue;
                        }
                        let (a, b, sign) = if i < l { (i, l, false) } else { (l, i, true) };
                        for (u, c) in partial(k, l) {
                            let c = if sign { -&c } else { c };
                            rows.entry((a, b, u)).or_default().push((col, c));
                        }
                    }
                }
            }
        }
        let ncols = m * h;
        let mut acc = RowReducer::new(field, ncols);
        for (_, entries) in rows {
            let mut v = vec![field.zero(); ncols];
            for (col, c) in entries {
                v[col] = &v[col] + &c;
            }
            acc.push(v)?;
            if acc.is_full() {
                break;
            }
        }
        let constraints = acc.into_subspace();
        let matrix = ExactMatrix::from_rows(field, ncols, constraints.basis().to_vec())?;
        let solutions = kernel_basis(&matrix);

        // Rebuild Φ from its partials: coefficient at E is ψ_l at E - e_l
        // for the first active l dividing E.
        let mut phis = Vec::with_capacity(solutions.dim());
        let prev_index = index_map(&prev_basis);
        for c in solutions.basis() {
            let psi: Vec<Vec<Scalar>> = (0..m)
                .map(|i| {
                    let mut v = vec![field.zero(); prev_basis.len()];
                    for k in 0..h {
                        let ck = &c[i * h + k];
                        if ck.is_zero() {
                            continue;
                        }
                        for (slot, b) in v.iter_mut().zip(&prev.basis()[k]) {
                            if !b.is_zero() {
                                *slot = &*slot + &(ck * b);
                            }
                        }
                    }
                    v
                })
                .collect();
            let phi = target
                .iter()
                .map(|e| {
                    let l = (0..m).find(|&l| e.get(self.active[l]) > 0).expect("d >= 1");
                    let below = e.lower(self.active[l]).expect("positive exponent");
                    psi[l][prev_index[&below]].clone()
                })
                .collect();
            phis.push(phi);
        }
        Subspace::span(field, target.len(), phis)
    }

    /// `ν_d` for `d = 0..=bound`.
    pub fn generator_counts(&self, bound: u32) -> Result<Vec<usize>> {
        let mut counts = vec![0];
        let rest: Vec<usize> = (1..=bound)
            .into_par_iter()
            .map(|d| {
                let k = self.maximal_ideal_perp(d)?.dim();
                let dd = self.piece_dim(d);
                k.checked_sub(dd)
                    .ok_or_else(|| Error::Consistency(format!("dim K_{d} = {k} below dim D_{d} = {dd}")))
            })
            .collect::<Result<_>>()?;
        counts.extend(rest);
        Ok(counts)
    }

    /// Coordinates of `h ∈ R_d` modulo `(𝔫I)_d`: its pairings with a basis
    /// of `K_d`. Zero exactly when `h ∈ (𝔫I)_d`.
    pub fn residue_mod_maximal(&self, h: &RingElement, perp: &Subspace) -> Result<Vec<Scalar>> {
        let d = h.degree().ok_or(Error::Inhomogeneous)?;
        let basis = self.basis(d);
        if basis.len() != perp.ambient() {
            return Err(Error::DimensionMismatch {
                expected: perp.ambient(),
                found: basis.len(),
            });
        }
        let index = index_map(&basis);
        let hv = h.to_vector(&index)?;
        Ok(perp
            .basis()
            .iter()
            .map(|phi| {
                let mut acc = self.field.zero();
                for (a, b) in hv.iter().zip(phi) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect())
    }
}
