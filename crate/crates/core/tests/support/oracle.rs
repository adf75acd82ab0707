//! Generator counts straight from the definitions: `I_d` is the kernel of
//! the catalecticant, `J_d` the part of it free of `w`, and
//! `ν_d = dim I_d - dim R_1·I_{d-1}`. Nothing here calls the library's
//! linear algebra.

use num_bigint::BigInt;
use num_integer::Integer;

use apolar::dp::DualForm;

use super::bareiss::{rank, reduce, Domain, ModP};

fn monomials(nv: usize, d: u32) -> Vec<Vec<u32>> {
    fn go(nv: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() + 1 == nv {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e);
            go(nv, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(nv, d, &mut Vec::new(), &mut out);
    out
}

fn position(basis: &[Vec<u32>]) -> std::collections::HashMap<Vec<u32>, usize> {
    basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect()
}

/// Integer coefficients proportional to those of a form over Q.
pub fn integer_terms(form: &DualForm) -> Vec<(Vec<u32>, BigInt)> {
    let q: Vec<_> = form
        .terms()
        .map(|(e, c)| (e.as_slice().to_vec(), c.as_rational().expect("form over Q").clone()))
        .collect();
    let l = q.iter().fold(BigInt::from(1), |acc, (_, c)| acc.lcm(c.denom()));
    q.into_iter().map(|(e, c)| (e, c.numer() * (&l / c.denom()))).collect()
}

pub fn modp_terms(form: &DualForm) -> Vec<(Vec<u32>, ModP)> {
    form.terms()
        .map(|(e, c)| {
            let q = c.as_rational().expect("form over Q");
            (e.as_slice().to_vec(), ModP::from_ratio(q.numer(), q.denom()))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleCounts {
    pub hilbert: Vec<usize>,
    pub nu_i: Vec<usize>,
    pub nu_j: Vec<usize>,
    pub mu_i: usize,
    pub mu_j: usize,
}

impl OracleCounts {
    /// `μ(I) = μ(J) + n + 1`, where `n + 1` is the number of variables.
    pub fn generic(&self, nvars: usize) -> bool {
        self.mu_i == self.mu_j + nvars
    }
}

struct Slices<R> {
    nv: usize,
    /// Basis of the slice in degree `d`, as coordinate vectors over the
    /// monomials of degree `d` in all variables.
    slices: Vec<Vec<Vec<R>>>,
}

/// `(ann F)_d`, keeping only monomials with `keep`.
fn kernel_slice<R: Domain>(
    terms: &[(Vec<u32>, R)],
    nv: usize,
    j: u32,
    d: u32,
    keep: &dyn Fn(&[u32]) -> bool,
) -> Vec<Vec<R>> {
    let basis = monomials(nv, d);
    let cols: Vec<usize> = (0..basis.len()).filter(|&i| keep(&basis[i])).collect();
    if d > j {
        return cols
            .iter()
            .map(|&c| {
                let mut v = vec![R::zero(); basis.len()];
                v[c] = R::one();
                v
            })
            .collect();
    }
    let coeff: std::collections::HashMap<&[u32], &R> = terms.iter().map(|(e, c)| (e.as_slice(), c)).collect();
    let rows: Vec<Vec<R>> = monomials(nv, j - d)
        .into_iter()
        .map(|q| {
            cols.iter()
                .map(|&c| {
                    let m: Vec<u32> = basis[c].iter().zip(&q).map(|(a, b)| a + b).collect();
                    coeff.get(m.as_slice()).map_or(R::zero(), |&x| x.clone())
                })
                .collect()
        })
        .collect();
    reduce(rows, cols.len())
        .kernel()
        .into_iter()
        .map(|k| {
            let mut v = vec![R::zero(); basis.len()];
            for (x, &c) in k.into_iter().zip(&cols) {
                v[c] = x;
            }
            v
        })
        .collect()
}

/// `ν_d` for `d = 0..=top` of the ideal with the given slices, multiplying
/// only by the variables in `mult`.
fn nu<R: Domain>(s: &Slices<R>, mult: &[usize]) -> Vec<usize> {
    let mut out = vec![0];
    for d in 1..s.slices.len() {
        let lower = monomials(s.nv, d as u32 - 1);
        let basis = monomials(s.nv, d as u32);
        let at = position(&basis);
        let mut rows = Vec::new();
        for v in &s.slices[d - 1] {
            for &x in mult {
                let mut row = vec![R::zero(); basis.len()];
                for (i, c) in v.iter().enumerate() {
                    if !c.is_zero() {
                        let mut m = lower[i].clone();
                        m[x] += 1;
                        row[at[&m]] = c.clone();
                    }
                }
                rows.push(row);
            }
        }
        let products = if rows.is_empty() { 0 } else { rank(rows, basis.len()) };
        out.push(s.slices[d].len() - products);
    }
    out
}

/// Counts for `I = ann F` and `J = I ∩ k[all variables but w]`.
pub fn counts<R: Domain>(terms: &[(Vec<u32>, R)], nv: usize, w: usize) -> OracleCounts {
    let j = terms
        .iter()
        .map(|(e, _)| e.iter().sum::<u32>())
        .max()
        .expect("nonzero form");
    let top = j + 1;
    let all = |_: &[u32]| true;
    let no_w = |m: &[u32]| m[w] == 0;
    let si = Slices {
        nv,
        slices: (0..=top).map(|d| kernel_slice(terms, nv, j, d, &all)).collect(),
    };
    let sj = Slices {
        nv,
        slices: (0..=top).map(|d| kernel_slice(terms, nv, j, d, &no_w)).collect(),
    };
    let hilbert = (0..=j as usize)
        .map(|d| monomials(nv, d as u32).len() - si.slices[d].len())
        .collect();
    let every: Vec<usize> = (0..nv).collect();
    let rest: Vec<usize> = (0..nv).filter(|&x| x != w).collect();
    let nu_i = nu(&si, &every);
    let nu_j = nu(&sj, &rest);
    OracleCounts {
        hilbert,
        mu_i: nu_i.iter().sum(),
        mu_j: nu_j.iter().sum(),
        nu_i,
        nu_j,
    }
}

pub fn counts_q(form: &DualForm, w: usize) -> OracleCounts {
    counts(&integer_terms(form), form.nvars(), w)
}

pub fn counts_modp(form: &DualForm, w: usize) -> OracleCounts {
    counts(&modp_terms(form), form.nvars(), w)
}
