//! Minimal generator counts of `I = ann F` and `J = I ∩ R'`, the
//! distinguished generator `w z^β - g`, the count `r`, the genericity verdict
//! and the Hilbert-function difference `H_{R/I} - H_{R'/J}`.

use rayon::prelude::*;
use serde::Serialize;

use crate::apolarity::{ann_degree, sanity_from_hilbert};
use crate::dp::{contract, index_map, monomial_basis, DualForm, Exponent, RingElement};
use crate::error::{Error, Result};
use crate::inverse::InverseSystem;
use crate::io::{NormalForm, Shape};
use crate::linalg::{kernel_basis, rank_of_rows, solve, ExactMatrix, Field, RowReducer, Subspace};

/// One graded piece of an ideal. Pieces above every generator's degree are
/// the whole space and are not materialized.
#[derive(Clone, Debug)]
pub enum Slice {
    Full(usize),
    Sub(Subspace),
}

impl Slice {
    pub fn dim(&self) -> usize {
        match self {
            Slice::Full(n) => *n,
            Slice::Sub(s) => s.dim(),
        }
    }
}

/// Degree pieces `I_0, I_1, ..` of `ann(Φ_1, .., Φ_s)` over the variables
/// `active`, computed on the ring side as kernels of stacked catalecticants.
#[derive(Clone, Debug)]
pub struct GradedIdealSlices {
    pub nvars: usize,
    pub field: Field,
    pub active: Vec<usize>,
    pub slices: Vec<Slice>,
}

impl GradedIdealSlices {
    /// Slices `0..=top` of `ann(gens)` over `active`.
    pub fn annihilator(nvars: usize, field: Field, active: &[usize], gens: &[DualForm], top: u32) -> Result<Self> {
        let max = gens
            .iter()
            .map(|g| g.degree().ok_or(Error::Inhomogeneous))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .max()
            .ok_or(Error::ZeroForm)?;
        let slices = (0..=top)
            .into_par_iter()
            .map(|d| {
                let rows = monomial_basis(nvars, d, Some(active));
                if d > max {
                    return Ok(Slice::Full(rows.len()));
                }
                // Columns: one block per generator of degree >= d.
                let mut blocks = Vec::new();
                let mut width = 0;
                for g in gens {
                    let e = g.degree().expect("homogeneous");
                    if e >= d {
                        let cols = monomial_basis(nvars, e - d, Some(active));
                        let idx = index_map(&cols);
                        blocks.push((g, width, idx));
                        width += cols.len();
                    }
                }
                let mut m = ExactMatrix::zeros(field, rows.len(), width);
                for (r, mono) in rows.iter().enumerate() {
                    for (g, offset, idx) in &blocks {
                        for (e, c) in g.terms() {
                            if let Some(q) = mono.quotient_of(e) {
                                m.set(r, offset + idx[&q], c.clone());
                            }
                        }
                    }
                }
                Ok(Slice::Sub(kernel_basis(&m.transpose())))
            })
            .collect::<Result<_>>()?;
        Ok(GradedIdealSlices {
            nvars,
            field,
            active: active.to_vec(),
            slices,
        })
    }

    pub fn top(&self) -> u32 {
        self.slices.len() as u32 - 1
    }

    pub fn basis(&self, d: u32) -> Vec<Exponent> {
        monomial_basis(self.nvars, d, Some(&self.active))
    }

    /// `(𝔫I)_d = Σ_v x_v · I_{d-1}` for `d >= 1`, materialized.
    pub fn maximal_times(&self, d: u32) -> Result<Subspace> {
        let basis = self.basis(d);
        let index = index_map(&basis);
        let lower = self.basis(d - 1);
        let field = self.field;
        let mut acc = RowReducer::new(field, basis.len());
        let elements: Vec<RingElement> = match &self.slices[(d - 1) as usize] {
            Slice::Full(_) => lower
                .iter()
                .map(|m| RingElement::monomial(field, m.clone(), field.one()))
                .collect(),
            Slice::Sub(s) => s
                .basis()
                .iter()
                .map(|v| RingElement::from_vector(field, self.nvars, &lower, v))
                .collect(),
        };
        for f in &elements {
            for &v in &self.active {
                let x = RingElement::var(self.nvars, field, v);
                acc.push(f.ring_multiply(&x)?.to_vector(&index)?)?;
                if acc.is_full() {
                    return Ok(acc.into_subspace());
                }
            }
        }
        Ok(acc.into_subspace())
    }
}

/// Per-degree minimal generator counts `ν_d` and their sum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorCounts {
    pub nu: Vec<usize>,
    pub mu: usize,
}

impl GeneratorCounts {
    fn from_nu(nu: Vec<usize>) -> Self {
        let mu = nu.iter().sum();
        GeneratorCounts { nu, mu }
    }
}

/// `ν_d = dim I_d - dim (𝔫I)_d` for `d = 1..=top`, straight from the ring
/// side. The last computed degree must carry no generators.
pub fn minimal_generator_counts(slices: &GradedIdealSlices) -> Result<GeneratorCounts> {
    let top = slices.top();
    let mut nu = vec![slices.slices[0].dim()];
    let rest: Vec<usize> = (1..=top)
        .into_par_iter()
        .map(|d| {
            let here = slices.slices[d as usize].dim();
            if matches!(slices.slices[(d - 1) as usize], Slice::Full(_)) {
                return Ok(0);
            }
            Ok(here - slices.maximal_times(d)?.dim())
        })
        .collect::<Result<_>>()?;
    nu.extend(rest);
    if nu[top as usize] != 0 {
        return Err(Error::Truncation { degree: top });
    }
    Ok(GeneratorCounts::from_nu(nu))
}

/// Generators of the inverse system of `J = I ∩ R'`: `G` and, for the WZ
/// shape, `Z^[j-1]`.
pub fn j_generators(nf: &NormalForm) -> Vec<DualForm> {
    let mut gens = Vec::new();
    if !nf.g.is_zero() {
        gens.push(nf.g.clone());
    }
    if nf.shape == Shape::WZ {
        let z = nf.vars.z();
        let e = Exponent::zero(nf.nvars()).bump(z, nf.socle - 1);
        gens.push(DualForm::monomial(nf.field(), e, nf.field().one()));
    }
    gens
}

/// `J` as an inverse system over `R'` with its Hilbert function and
/// generator counts through `bound`.
#[derive(Clone, Debug)]
pub struct JIdeal {
    pub system: InverseSystem,
    pub hilbert: Vec<usize>,
    pub counts: GeneratorCounts,
}

pub fn compute_j(nf: &NormalForm, bound: u32) -> Result<JIdeal> {
    let system = InverseSystem::new(nf.nvars(), nf.field(), &nf.r_prime_vars(), j_generators(nf))?;
    let counts = GeneratorCounts::from_nu(system.generator_counts(bound)?);
    // J is not Gorenstein; nothing new may appear past j + 1.
    if let Some(d) = (nf.socle + 2..=bound).find(|&d| counts.nu[d as usize] != 0) {
        return Err(Error::Truncation { degree: d });
    }
    let mut hilbert = system.hilbert();
    hilbert.resize(nf.socle as usize + 1, 0);
    Ok(JIdeal {
        system,
        hilbert,
        counts,
    })
}

/// Smallest `β` and canonical `g ∈ R'_{β+1}` with `w z^β - g ∈ I`
/// (WZ shape), or `w^j - g ∈ I` (W shape, where `β = j`).
///
/// For the WZ shape the conditions are `g ∘ G = c Z^[j-β-1]` and
/// `g ∘ Z^[j-1] = 0`. For the W shape `w^t ∘ F = c W^[j-t]` lies outside
/// `R'*` unless `t = j`, so only `g ∘ G = c` is solved.
pub fn find_beta_g(nf: &NormalForm) -> Result<(u32, RingElement)> {
    let field = nf.field();
    let nvars = nf.nvars();
    let j = nf.socle;
    let rp = nf.r_prime_vars();
    let z = nf.vars.z();
    let degrees: Vec<u32> = match nf.shape {
        Shape::WZ => (1..j).collect(),
        Shape::W => vec![j],
    };
    for beta in degrees {
        let gdeg = match nf.shape {
            Shape::WZ => beta + 1,
            Shape::W => beta,
        };
        let cols = monomial_basis(nvars, gdeg, Some(&rp));
        let out = monomial_basis(nvars, j - gdeg, Some(&rp));
        let out_index = index_map(&out);
        // Extra row for the Z^[j-β-2] coefficient of g ∘ Z^[j-1].
        let extra = nf.shape == Shape::WZ && j > gdeg;
        let nrows = out.len() + usize::from(extra);
        let mut m = ExactMatrix::zeros(field, nrows, cols.len());
        for (c, mono) in cols.iter().enumerate() {
            for (e, coeff) in nf.g.terms() {
                if let Some(q) = mono.quotient_of(e) {
                    m.set(out_index[&q], c, coeff.clone());
                }
            }
            if extra && mono.get(z) == gdeg {
                m.set(out.len(), c, field.one());
            }
        }
        let mut rhs = vec![field.zero(); nrows];
        let target = match nf.shape {
            Shape::WZ => Exponent::zero(nvars).bump(z, j - gdeg),
            Shape::W => Exponent::zero(nvars),
        };
        rhs[out_index[&target]] = nf.w_coeff.clone();
        let sol = solve(&m, &rhs)?;
        let Some(particular) = sol.particular else {
            continue;
        };
        let canonical = sol.kernel.reduce(&particular)?;
        let g = RingElement::from_vector(field, nvars, &cols, &canonical);
        check_distinguished(nf, beta, &g)?;
        return Ok((beta, g));
    }
    Err(Error::NoDistinguishedGenerator(j.saturating_sub(1)))
}

/// `w z^β - g` (or `w^β - g`) as a ring element.
pub fn distinguished_generator(nf: &NormalForm, beta: u32, g: &RingElement) -> RingElement {
    let field = nf.field();
    let e = match nf.shape {
        Shape::WZ => Exponent::unit(nf.nvars(), nf.vars.w()).bump(nf.vars.z(), beta),
        Shape::W => Exponent::zero(nf.nvars()).bump(nf.vars.w(), beta),
    };
    RingElement::monomial(field, e, field.one())
        .sub(g)
        .expect("same variable set")
}

fn check_distinguished(nf: &NormalForm, beta: u32, g: &RingElement) -> Result<()> {
    let gen = distinguished_generator(nf, beta, g);
    if !contract(&gen, &nf.form)?.is_zero() {
        return Err(Error::Consistency(format!(
            "distinguished generator at degree {beta} does not annihilate F"
        )));
    }
    if contract(g, &nf.g)?.is_zero() {
        return Err(Error::Consistency("g lies in J".into()));
    }
    Ok(())
}

/// Whether `g·x_i` is a minimal generator of `J`, for one variable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VariableFlag {
    pub var: String,
    pub minimal: bool,
}

/// `r`, the dimension of the span of the `g·x_i` modulo `𝔫J`, i.e. how many
/// of them a minimal generating set of `J` needs. `flagged` counts the
/// variables whose `g·x_i` is nonzero modulo `𝔫J`; it exceeds `r` when
/// those residues are linearly dependent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RCount {
    pub r: usize,
    pub flagged: usize,
    pub flags: Vec<VariableFlag>,
}

/// Variables `x_i` whose products `g·x_i` enter the count: the middle
/// variables for the WZ shape, all of `R'` for the W shape.
pub fn r_variables(nf: &NormalForm) -> Vec<usize> {
    match nf.shape {
        Shape::WZ => nf.vars.middle().collect(),
        Shape::W => nf.r_prime_vars(),
    }
}

pub fn count_r(nf: &NormalForm, j: &JIdeal, g: &RingElement) -> Result<RCount> {
    let field = nf.field();
    let d = g.degree().ok_or(Error::Inhomogeneous)? + 1;
    let perp = j.system.maximal_ideal_perp(d)?;
    let mut flags = Vec::new();
    let mut residues = Vec::new();
    for v in r_variables(nf) {
        let h = g.ring_multiply(&RingElement::var(nf.nvars(), field, v))?;
        if !j.system.annihilates(&h)? {
            return Err(Error::Consistency(format!("g·{} is not in J", nf.vars.ring_name(v))));
        }
        let res = j.system.residue_mod_maximal(&h, &perp)?;
        let minimal = res.iter().any(|x| !x.is_zero());
        flags.push(VariableFlag {
            var: nf.vars.ring_name(v),
            minimal,
        });
        residues.push(res);
    }
    let flagged = flags.iter().filter(|f| f.minimal).count();
    let r = rank_of_rows(residues, perp.dim());
    Ok(RCount { r, flagged, flags })
}

/// `H_{R/I}(d) - H_{R'/J}(d)` for `d = 0..=j` and whether it is `1` exactly
/// on `1..=β`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertDifference {
    pub diff: Vec<i64>,
    pub matches_pattern: bool,
}

pub fn hilbert_difference(h_ri: &[usize], h_rj: &[usize], beta: u32) -> HilbertDifference {
    let diff: Vec<i64> = h_ri
        .iter()
        .enumerate()
        .map(|(d, &a)| a as i64 - h_rj.get(d).copied().unwrap_or(0) as i64)
        .collect();
    let matches_pattern = diff
        .iter()
        .enumerate()
        .all(|(d, &x)| x == i64::from(d >= 1 && d as u32 <= beta));
    HilbertDifference { diff, matches_pattern }
}

/// Weakly rising then weakly falling.
pub fn unimodal(h: &[usize]) -> bool {
    let mut falling = false;
    for w in h.windows(2) {
        if w[1] < w[0] {
            falling = true;
        } else if w[1] > w[0] && falling {
            return false;
        }
    }
    true
}

/// Shape of `I_2`: `(w², w x_1, .., w x_{n-1})` for the WZ shape, or
/// `(w x_1, .., w x_n)` for the W shape, when `dim I_2 = n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum I2Shape {
    SquareAndMixed,
    Mixed,
    Other,
}

#[derive(Clone, Debug)]
pub struct IdealProfile {
    pub socle: u32,
    pub nvars: usize,
    pub shape: Shape,
    pub hilbert_ri: Vec<usize>,
    pub hilbert_rj: Vec<usize>,
    pub counts_i: GeneratorCounts,
    pub counts_j: GeneratorCounts,
    pub dim_i2: usize,
    pub i2_shape: I2Shape,
    pub hilbert_symmetric: bool,
}

#[derive(Clone, Debug)]
pub struct GenericityVerdict {
    pub beta: u32,
    pub g: RingElement,
    pub r: usize,
    pub flagged: usize,
    pub flags: Vec<VariableFlag>,
    pub mu_i: usize,
    pub mu_j: usize,
    pub n: usize,
    /// `r = 0`.
    pub generic: bool,
    /// `μ(I) = μ(J) + n + 1`, computed independently of `r`.
    pub generic_by_count: bool,
    /// `μ(I) = μ(J) + n + 1 - r`.
    pub identity_ok: bool,
}

/// Everything computed for one normal form.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub normal: NormalForm,
    pub profile: IdealProfile,
    pub verdict: GenericityVerdict,
    pub difference: HilbertDifference,
    pub j_unimodal: bool,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct AnalyzeOptions {
    /// Count generators through this degree instead of the default bound.
    /// Must be at least `j + 2`.
    pub max_degree: Option<u32>,
}

fn i2_shape(nf: &NormalForm, dim_i2: usize) -> Result<I2Shape> {
    if dim_i2 != nf.n() {
        return Ok(I2Shape::Other);
    }
    let n1 = nf.nvars();
    let w = nf.vars.w();
    let ann2 = ann_degree(&nf.form, 2)?;
    let basis = monomial_basis(n1, 2, None);
    let index = index_map(&basis);
    let expected: Vec<Exponent> = match nf.shape {
        Shape::WZ => std::iter::once(Exponent::unit(n1, w).bump(w, 1))
            .chain(nf.vars.middle().map(|i| Exponent::unit(n1, w).bump(i, 1)))
            .collect(),
        Shape::W => nf
            .r_prime_vars()
            .into_iter()
            .map(|i| Exponent::unit(n1, w).bump(i, 1))
            .collect(),
    };
    let mut rows = Vec::new();
    for e in &expected {
        let mut v = vec![nf.field().zero(); basis.len()];
        v[index[e]] = nf.field().one();
        rows.push(v);
    }
    let span = Subspace::span(nf.field(), basis.len(), rows)?;
    Ok(if span == ann2 {
        match nf.shape {
            Shape::WZ => I2Shape::SquareAndMixed,
            Shape::W => I2Shape::Mixed,
        }
    } else {
        I2Shape::Other
    })
}

/// The full pipeline on a validated normal form.
pub fn analyze(nf: NormalForm, opts: AnalyzeOptions) -> Result<Analysis> {
    let j = nf.socle;
    if let Some(m) = opts.max_degree {
        if m < j + 2 {
            return Err(Error::DegreeOutOfRange { degree: m, max: j + 2 });
        }
    }
    let all: Vec<usize> = (0..nf.nvars()).collect();
    let sys_i = InverseSystem::new(nf.nvars(), nf.field(), &all, vec![nf.form.clone()])?;
    let hilbert_ri = sys_i.hilbert();
    let bound_i = opts.max_degree.unwrap_or(j + 2);
    let nu_i = sys_i.generator_counts(bound_i)?;
    if let Some(d) = (j + 2..=bound_i).find(|&d| nu_i[d as usize] != 0) {
        return Err(Error::Truncation { degree: d });
    }
    let counts_i = GeneratorCounts::from_nu(nu_i);
    let sanity = sanity_from_hilbert(nf.nvars(), hilbert_ri.clone());

    let (beta, g) = find_beta_g(&nf)?;
    let bound_j = opts.max_degree.unwrap_or(0).max(j + 3).max(2 * beta + 2);
    let jideal = compute_j(&nf, bound_j)?;
    let rc = count_r(&nf, &jideal, &g)?;

    let n = nf.n();
    let mu_i = counts_i.mu;
    let mu_j = jideal.counts.mu;
    let identity_ok = mu_i + rc.r == mu_j + n + 1;
    if !identity_ok {
        return Err(Error::Consistency(format!(
            "μ(I) = {mu_i} but μ(J) + n + 1 - r = {mu_j} + {} - {} ({} of the g·x_i are nonzero modulo 𝔫J)",
            n + 1,
            rc.r,
            rc.flagged
        )));
    }
    let verdict = GenericityVerdict {
        beta,
        g,
        r: rc.r,
        flagged: rc.flagged,
        flags: rc.flags,
        mu_i,
        mu_j,
        n,
        generic: rc.r == 0,
        generic_by_count: mu_i == mu_j + n + 1,
        identity_ok,
    };
    let difference = hilbert_difference(&hilbert_ri, &jideal.hilbert, beta);
    let j_unimodal = unimodal(&jideal.hilbert);
    let dim_i2 = sanity.dim_i2;
    let profile = IdealProfile {
        socle: j,
        nvars: nf.nvars(),
        shape: nf.shape,
        hilbert_ri,
        hilbert_rj: jideal.hilbert,
        counts_i,
        counts_j: jideal.counts,
        dim_i2,
        i2_shape: i2_shape(&nf, dim_i2)?,
        hilbert_symmetric: sanity.symmetric,
    };
    Ok(Analysis {
        normal: nf,
        profile,
        verdict,
        difference,
        j_unimodal,
    })
}
