//! One form's worth of library-versus-oracle comparison.

use num_bigint::BigInt;
use num_integer::Integer;

use apolar::apolarity::{ann_degree, catalecticant};
use apolar::ideal::{analyze, AnalyzeOptions};
use apolar::io::NormalForm;
use apolar::linalg::{in_span, rank, Field, Scalar};

use super::bareiss::reduce;
use super::gen::over;
use super::oracle::counts_modp;

/// Rows scaled to integers; scaling a row changes neither rank nor kernel.
fn integer_rows(rows: &[Vec<Scalar>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| {
            let qs: Vec<_> = r.iter().map(|s| s.as_rational().expect("over Q").clone()).collect();
            let l = qs.iter().fold(BigInt::from(1), |a, c| a.lcm(c.denom()));
            qs.iter().map(|c| c.numer() * (&l / c.denom())).collect()
        })
        .collect()
}

pub struct Compared {
    pub matrices: usize,
    pub mu: (usize, usize),
}

/// Catalecticant ranks and kernels against Bareiss, generator counts
/// against the oracle, and the whole analysis over `F_65537` against `Q`.
pub fn compare(nf: &NormalForm) -> Result<Compared, String> {
    let j = nf.socle;
    let form = &nf.form;
    let mut matrices = 0;
    for d in 0..=j {
        let cat = catalecticant(form, d).map_err(|e| e.to_string())?;
        let t = cat.matrix.transpose();
        let ours = rank(&cat.matrix);
        let ech = reduce(integer_rows(t.rows()), t.ncols());
        if ech.rank() != ours {
            return Err(format!("degree {d}: rank {ours}, Bareiss {}", ech.rank()));
        }
        let ker = ann_degree(form, d).map_err(|e| e.to_string())?;
        let theirs = ech.kernel();
        if ker.dim() != theirs.len() {
            return Err(format!(
                "degree {d}: kernel dimension {} against {}",
                ker.dim(),
                theirs.len()
            ));
        }
        for v in theirs {
            let v: Vec<Scalar> = v.iter().map(|x| Field::Rational.from_bigint(x)).collect();
            if !in_span(&v, &ker).map_err(|e| e.to_string())? {
                return Err(format!("degree {d}: a Bareiss kernel vector is outside the kernel"));
            }
        }
        matrices += 1;
    }
    let a = analyze(nf.clone(), AnalyzeOptions::default()).map_err(|e| e.to_string())?;
    let mu = (a.verdict.mu_i, a.verdict.mu_j);
    let o = counts_modp(form, nf.vars.w());
    if (o.mu_i, o.mu_j) != mu || o.hilbert != a.profile.hilbert_ri {
        return Err(format!(
            "μ {mu:?} and H {:?}; oracle μ ({}, {}) and H {:?}",
            a.profile.hilbert_ri, o.mu_i, o.mu_j, o.hilbert
        ));
    }
    let fp = Field::prime(65537).unwrap();
    let b = analyze(over(nf, fp), AnalyzeOptions::default()).map_err(|e| e.to_string())?;
    if (b.verdict.mu_i, b.verdict.mu_j) != mu || b.verdict.generic != a.verdict.generic {
        return Err(format!(
            "over Q μ = {mu:?}, over F_65537 μ = ({}, {})",
            b.verdict.mu_i, b.verdict.mu_j
        ));
    }
    Ok(Compared { matrices, mu })
}
