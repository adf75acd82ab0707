use crate::dp::{DualForm, Exponent};
use crate::error::{Error, Result};
use crate::io::{NormalForm, Shape};
use crate::linalg::Scalar;

/// `X^[a] G_i` with `G_i` stored as a binary form in `(Y, Z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub a: u32,
    pub form: DualForm,
    /// `(r_k, s_k)` exponent pairs of `Y^[r_k] Z^[s_k]`, in term order.
    pub pairs: Vec<(u32, u32)>,
}

impl Block {
    /// `deg G_i`, which homogeneity forces to be `j - a_i`.
    pub fn degree(&self) -> u32 {
        self.form.degree().expect("blocks are nonzero and homogeneous")
    }

    pub fn deg_y(&self) -> u32 {
        self.pairs.iter().map(|&(r, _)| r).max().unwrap_or(0)
    }

    pub fn deg_z(&self) -> u32 {
        self.pairs.iter().map(|&(_, s)| s).max().unwrap_or(0)
    }

    pub fn has_pure_z(&self) -> bool {
        self.pairs.iter().any(|&(r, _)| r == 0)
    }

    /// `Y | G_i`.
    pub fn y_divides(&self) -> bool {
        !self.has_pure_z()
    }
}

/// `F = G_0 + Σ X^[a_i] G_i + c·W Z^[j-1]` with
/// `G_0 = Σ_{t=0}^m c_{p-t} Y^[p-t] Z^[q+t]`, `c_p != 0`, `a_1 < .. < a_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormDecomposition {
    pub j: u32,
    pub p: u32,
    pub q: u32,
    pub m: u32,
    /// `(p - t, c_{p-t})` for the nonzero coefficients, highest `Y` power first.
    pub coefficients: Vec<(u32, Scalar)>,
    /// `G_0` as a binary form in `(Y, Z)`.
    pub g0: DualForm,
    pub blocks: Vec<Block>,
    pub w_coeff: Scalar,
    /// Index of `X` in the form's variables, if there is one.
    pub x: Option<usize>,
}

impl FormDecomposition {
    pub fn some_block_has_pure_z(&self) -> bool {
        self.blocks.iter().any(Block::has_pure_z)
    }

    pub fn last(&self) -> Option<&Block> {
        self.blocks.last()
    }

    /// `deg_X F`, i.e. `a_n`, or 0 without blocks.
    pub fn deg_x(&self) -> u32 {
        self.blocks.last().map_or(0, |b| b.a)
    }

    /// Rebuilds the full form in the original variables.
    pub fn reassemble(&self, nvars: usize) -> DualForm {
        let field = self.g0.field();
        let (y, z) = (nvars - 2, nvars - 1);
        let lift = |e: &Exponent, xa: u32| {
            let mut v = vec![0; nvars];
            v[y] = e.get(0);
            v[z] = e.get(1);
            if let Some(x) = self.x {
                v[x] = xa;
            }
            Exponent::new(v)
        };
        let mut out = DualForm::zero(nvars, field);
        for (e, c) in self.g0.terms() {
            out.add_term(lift(e, 0), c.clone());
        }
        for b in &self.blocks {
            for (e, c) in b.form.terms() {
                out.add_term(lift(e, b.a), c.clone());
            }
        }
        let mut w = vec![0; nvars];
        w[0] = 1;
        w[z] = self.j - 1;
        out.add_term(Exponent::new(w), self.w_coeff.clone());
        out
    }
}

/// Splits a WZ-shape normal form in `W, [X,] Y, Z` into its `X`-strata.
pub fn decompose(nf: &NormalForm) -> Result<FormDecomposition> {
    if nf.shape != Shape::WZ {
        return Err(Error::Decompose("the W term must be c·WZ^[j-1]".into()));
    }
    let nvars = nf.nvars();
    let x = match nvars {
        3 => None,
        4 => Some(1),
        _ => {
            return Err(Error::Decompose(format!(
                "needs the variables W, X, Y, Z (or W, Y, Z); found {nvars}"
            )))
        }
    };
    let (y, z) = (nvars - 2, nvars - 1);
    let field = nf.field();
    let j = nf.socle;
    let binary = |e: &Exponent| Exponent::new(vec![e.get(y), e.get(z)]);

    let mut strata: std::collections::BTreeMap<u32, DualForm> = Default::default();
    for (e, c) in nf.g.terms() {
        if e.get(0) != 0 {
            return Err(Error::Decompose("G contains W".into()));
        }
        let a = x.map_or(0, |x| e.get(x));
        strata
            .entry(a)
            .or_insert_with(|| DualForm::zero(2, field))
            .add_term(binary(e), c.clone());
    }
    let g0 = strata.remove(&0).unwrap_or_else(|| DualForm::zero(2, field));
    if g0.is_zero() {
        return Err(Error::Decompose("G_0 = 0, so there is no c_p != 0".into()));
    }
    let p = g0.deg_in_var(0)?;
    let low = g0.terms().map(|(e, _)| e.get(0)).min().expect("nonzero");
    let mut coefficients: Vec<(u32, Scalar)> = g0.terms().map(|(e, c)| (e.get(0), c.clone())).collect();
    coefficients.sort_by_key(|c| std::cmp::Reverse(c.0));

    let blocks = strata
        .into_iter()
        .map(|(a, form)| {
            let pairs = form.terms().map(|(e, _)| (e.get(0), e.get(1))).collect();
            Block { a, form, pairs }
        })
        .collect::<Vec<_>>();
    for b in &blocks {
        if b.degree() != j - b.a {
            return Err(Error::Consistency(format!(
                "block X^[{}] has degree {} instead of {}",
                b.a,
                b.degree(),
                j - b.a
            )));
        }
    }

    let dec = FormDecomposition {
        j,
        p,
        q: j - p,
        m: p - low,
        coefficients,
        g0,
        blocks,
        w_coeff: nf.w_coeff.clone(),
        x,
    };
    if dec.reassemble(nvars) != nf.form {
        return Err(Error::Consistency("decomposition does not reassemble to F".into()));
    }
    Ok(dec)
}
