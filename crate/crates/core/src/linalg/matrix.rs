use crate::error::{Error, Result};
use crate::linalg::field::{Field, Scalar};

/// A dense matrix over one exact field, stored as a vector of rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    field: Field,
    ncols: usize,
    rows: Vec<Vec<Scalar>>,
}

impl ExactMatrix {
    pub fn zeros(field: Field, nrows: usize, ncols: usize) -> Self {
        ExactMatrix {
            field,
            ncols,
            rows: vec![vec![field.zero(); ncols]; nrows],
        }
    }

    /// Builds a matrix from rows, rejecting ragged input and mixed fields.
    pub fn from_rows(field: Field, ncols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        for row in &rows {
            if row.len() != ncols {
                return Err(Error::Ragged(ncols));
            }
            if !row.iter().all(|s| field.owns(s)) {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(ExactMatrix { field, ncols, rows })
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Result<Self> {
        let ncols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Self::from_rows(field, ncols, rows)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<Scalar>> {
        self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.rows[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert!(self.field.owns(&v), "scalars from different fields were mixed");
        self.rows[r][c] = v;
    }

    pub fn push_row(&mut self, row: Vec<Scalar>) -> Result<()> {
        if row.len() != self.ncols {
            return Err(Error::DimensionMismatch {
                expected: self.ncols,
                found: row.len(),
            });
        }
        if !row.iter().all(|s| self.field.owns(s)) {
            return Err(Error::FieldMismatch);
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut t = ExactMatrix::zeros(self.field, self.ncols, self.nrows());
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    t.rows[c][r] = v.clone();
                }
            }
        }
        t
    }

    /// `self * v`.
    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.ncols {
            return Err(Error::DimensionMismatch {
                expected: self.ncols,
                found: v.len(),
            });
        }
        Ok(self
            .rows
            .iter()
            .map(|row| {
                let mut acc = self.field.zero();
                for (a, b) in row.iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect())
    }
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: ExactMatrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// Gaussian elimination in place. Pivots are chosen as the first nonzero
/// entry of each column, scanning rows top to bottom. With `reduce_above`
/// the result is fully reduced; otherwise only entries below pivots vanish.
/// Returns the pivot columns; the first `pivots.len()` rows are the nonzero
/// echelon rows.
fn eliminate(rows: &mut [Vec<Scalar>], ncols: usize, reduce_above: bool) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(i) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(i, r);
        let mut pivot = std::mem::take(&mut rows[r]);
        if !pivot[c].is_one() {
            let inv = pivot[c].inv();
            for x in pivot[c..].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let support: Vec<usize> = (c..ncols).filter(|&k| !pivot[k].is_zero()).collect();
        let start = if reduce_above { 0 } else { r + 1 };
        for (i, row) in rows.iter_mut().enumerate().skip(start) {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for &k in &support {
                row[k].sub_mul_assign(&f, &pivot[k]);
            }
        }
        rows[r] = pivot;
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Reduced row echelon form. Deterministic for a fixed input.
pub fn rref(m: &ExactMatrix) -> Rref {
    let mut rows = m.rows.clone();
    let pivots = eliminate(&mut rows, m.ncols, true);
    let rank = pivots.len();
    Rref {
        matrix: ExactMatrix {
            field: m.field,
            ncols: m.ncols,
            rows,
        },
        pivots,
        rank,
    }
}

pub fn rank(m: &ExactMatrix) -> usize {
    let mut rows = m.rows.clone();
    eliminate(&mut rows, m.ncols, false).len()
}

/// Rank of a row set without wrapping it in a matrix first.
pub fn rank_of_rows(mut rows: Vec<Vec<Scalar>>, ncols: usize) -> usize {
    eliminate(&mut rows, ncols, false).len()
}

/// A linear subspace of `field^ambient`, held as a reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| {
                let mut v = vec![field.zero(); ambient];
                v[i] = field.one();
                v
            })
            .collect();
        Subspace {
            field,
            ambient,
            basis,
            pivots: (0..ambient).collect(),
        }
    }

    /// The span of `rows`.
    pub fn span(field: Field, ambient: usize, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let m = ExactMatrix::from_rows(field, ambient, rows)?;
        let mut rows = m.rows;
        let pivots = eliminate(&mut rows, ambient, true);
        rows.truncate(pivots.len());
        Ok(Subspace {
            field,
            ambient,
            basis: rows,
            pivots,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Normal form of `v` modulo this subspace: pivot coordinates cleared.
    pub fn reduce(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: v.len(),
            });
        }
        if !v.iter().all(|s| self.field.owns(s)) {
            return Err(Error::FieldMismatch);
        }
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let f = out[p].clone();
            for (k, x) in row.iter().enumerate().skip(p) {
                if !x.is_zero() {
                    out[k].sub_mul_assign(&f, x);
                }
            }
        }
        Ok(out)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool> {
        for v in other.basis() {
            if !in_span(v, self)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Accumulates rows one at a time, keeping only an independent subset in
/// semi-echelon form: each kept row vanishes at the pivots of the rows kept
/// before it. Memory stays at rank × ncols however many rows are pushed.
#[derive(Clone, Debug)]
pub struct RowReducer {
    field: Field,
    ncols: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl RowReducer {
    pub fn new(field: Field, ncols: usize) -> Self {
        RowReducer {
            field,
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    /// Reduces `v` against the kept rows; keeps it if something survives.
    /// Returns whether the row was independent.
    pub fn push(&mut self, mut v: Vec<Scalar>) -> Result<bool> {
        if v.len() != self.ncols {
            return Err(Error::DimensionMismatch {
                expected: self.ncols,
                found: v.len(),
            });
        }
        if !v.iter().all(|s| self.field.owns(s)) {
            return Err(Error::FieldMismatch);
        }
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (k, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    v[k].sub_mul_assign(&f, x);
                }
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return Ok(false);
        };
        let inv = v[p].inv();
        for x in v.iter_mut().skip(p) {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        Ok(true)
    }

    /// The span of everything pushed so far.
    pub fn into_subspace(self) -> Subspace {
        Subspace::span(self.field, self.ncols, self.rows).expect("rows are well formed")
    }
}

/// Right null space `{v : m v = 0}`.
pub fn kernel_basis(m: &ExactMatrix) -> Subspace {
    let Rref { matrix, pivots, .. } = rref(m);
    let n = m.ncols;
    let field = m.field;
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let vectors = (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![field.zero(); n];
            v[f] = field.one();
            for (row, &p) in matrix.rows.iter().zip(&pivots) {
                if !row[f].is_zero() {
                    v[p] = -&row[f];
                }
            }
            v
        })
        .collect();
    Subspace::span(field, n, vectors).expect("kernel vectors are well formed")
}

/// Result of [`solve`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: Option<Vec<Scalar>>,
    pub kernel: Subspace,
}

/// Solves `m x = b`. Free variables of the particular solution are zero.
pub fn solve(m: &ExactMatrix, b: &[Scalar]) -> Result<Solution> {
    if b.len() != m.nrows() {
        return Err(Error::DimensionMismatch {
            expected: m.nrows(),
            found: b.len(),
        });
    }
    if !b.iter().all(|s| m.field.owns(s)) {
        return Err(Error::FieldMismatch);
    }
    let n = m.ncols;
    let mut rows: Vec<Vec<Scalar>> = m
        .rows
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = eliminate(&mut rows, n + 1, true);
    let kernel = kernel_basis(m);
    if pivots.last() == Some(&n) {
        return Ok(Solution {
            particular: None,
            kernel,
        });
    }
    let mut x = vec![m.field.zero(); n];
    for (row, &p) in rows.iter().zip(&pivots) {
        x[p] = row[n].clone();
    }
    Ok(Solution {
        particular: Some(x),
        kernel,
    })
}

pub fn in_span(v: &[Scalar], s: &Subspace) -> Result<bool> {
    Ok(s.reduce(v)?.iter().all(Scalar::is_zero))
}

pub fn subspace_sum(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    if a.ambient != b.ambient {
        return Err(Error::DimensionMismatch {
            expected: a.ambient,
            found: b.ambient,
        });
    }
    if a.field != b.field {
        return Err(Error::FieldMismatch);
    }
    let rows = a.basis.iter().chain(&b.basis).cloned().collect();
    Subspace::span(a.field, a.ambient, rows)
}
