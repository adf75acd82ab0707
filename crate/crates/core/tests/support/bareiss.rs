//! Fraction-free Gauss-Jordan elimination, kept apart from the library's
//! elimination so the two can be compared.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// An integral domain with exact division. Bareiss only ever divides by a
/// previous pivot, and the quotient is always exact.
pub trait Domain: Clone + PartialEq + std::fmt::Debug {
    /// Division by any nonzero element is exact, so ranks may skip the
    /// fraction-free bookkeeping.
    const FIELD: bool;
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn mul(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// What `div_exact` needs to know about a divisor, computed once per
    /// pivot.
    type Divisor;
    fn divisor(o: &Self) -> Self::Divisor;
    fn div_exact(&self, o: &Self::Divisor) -> Self;
}

impl Domain for BigInt {
    const FIELD: bool = false;
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn neg(&self) -> Self {
        -self
    }
    type Divisor = BigInt;
    fn divisor(o: &Self) -> BigInt {
        o.clone()
    }
    fn div_exact(&self, o: &BigInt) -> Self {
        let (q, r) = self.div_rem(o);
        assert!(Zero::is_zero(&r), "inexact Bareiss division {self} / {o}");
        q
    }
}

/// Residues modulo the Mersenne prime `2^31 - 1`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ModP(pub u64);

pub const P: u64 = 2_147_483_647;

impl ModP {
    pub fn from_ratio(num: &BigInt, den: &BigInt) -> Self {
        let p = BigInt::from(P);
        let n = num.mod_floor(&p).to_u64_digits().1.first().copied().unwrap_or(0);
        let d = den.mod_floor(&p).to_u64_digits().1.first().copied().unwrap_or(0);
        assert!(d != 0, "denominator divisible by the oracle prime");
        ModP(n).mul(&ModP(d).inv())
    }

    fn inv(self) -> Self {
        let (mut b, mut e, mut acc) = (self.0, P - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % P;
            }
            b = b * b % P;
            e >>= 1;
        }
        ModP(acc)
    }
}

impl Domain for ModP {
    const FIELD: bool = true;
    fn zero() -> Self {
        ModP(0)
    }
    fn one() -> Self {
        ModP(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn mul(&self, o: &Self) -> Self {
        ModP(self.0 * o.0 % P)
    }
    fn sub(&self, o: &Self) -> Self {
        ModP((self.0 + P - o.0) % P)
    }
    fn neg(&self) -> Self {
        ModP((P - self.0) % P)
    }
    /// The inverse.
    type Divisor = ModP;
    fn divisor(o: &Self) -> ModP {
        assert!(o.0 != 0, "division by zero");
        o.inv()
    }
    fn div_exact(&self, o: &ModP) -> Self {
        self.mul(o)
    }
}

/// Fraction-free reduced echelon form: every pivot entry equals `det`, the
/// last pivot, and pivot columns are zero outside their pivot row.
#[derive(Clone, Debug)]
pub struct Echelon<R> {
    pub rows: Vec<Vec<R>>,
    pub pivots: Vec<usize>,
    pub det: R,
    pub ncols: usize,
}

impl<R: Domain> Echelon<R> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// One kernel vector per free column `f`: `D` at `f`, `-U[i][f]` at the
    /// pivot of row `i`.
    pub fn kernel(&self) -> Vec<Vec<R>> {
        let mut out = Vec::new();
        let mut is_pivot = vec![false; self.ncols];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        for f in (0..self.ncols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![R::zero(); self.ncols];
            v[f] = self.det.clone();
            for (i, &c) in self.pivots.iter().enumerate() {
                v[c] = self.rows[i][f].neg();
            }
            out.push(v);
        }
        out
    }
}

/// Bareiss elimination extended upward: every row other than the pivot row
/// is updated with `a_ij <- (p a_ij - a_ic a_rj) / prev`.
pub fn reduce<R: Domain>(mut a: Vec<Vec<R>>, ncols: usize) -> Echelon<R> {
    let mut prev = R::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        let Some(k) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, k);
        let pivot_row = a[r].clone();
        let p = pivot_row[c].clone();
        let by = R::divisor(&prev);
        for (i, row) in a.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c].clone();
            for j in 0..ncols {
                let t = p.mul(&row[j]);
                let t = if f.is_zero() || pivot_row[j].is_zero() {
                    t
                } else {
                    t.sub(&f.mul(&pivot_row[j]))
                };
                row[j] = t.div_exact(&by);
            }
        }
        prev = p;
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    Echelon {
        rows: a,
        pivots,
        det: prev,
        ncols,
    }
}

/// Rank by forward elimination only. Over a field each row update touches
/// just the nonzero entries of the pivot row; otherwise it is Bareiss.
pub fn rank<R: Domain>(mut a: Vec<Vec<R>>, ncols: usize) -> usize {
    let mut prev = R::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        let Some(k) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, k);
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let p = pivot_row[c].clone();
        if R::FIELD {
            let inv = R::divisor(&p);
            let support: Vec<usize> = (c..ncols).filter(|&j| !pivot_row[j].is_zero()).collect();
            for row in rest.iter_mut() {
                if row[c].is_zero() {
                    continue;
                }
                let f = row[c].div_exact(&inv);
                for &j in &support {
                    row[j] = row[j].sub(&f.mul(&pivot_row[j]));
                }
            }
        } else {
            let by = R::divisor(&prev);
            for row in rest.iter_mut() {
                let f = row[c].clone();
                for j in c..ncols {
                    let t = p.mul(&row[j]);
                    let t = if f.is_zero() || pivot_row[j].is_zero() {
                        t
                    } else {
                        t.sub(&f.mul(&pivot_row[j]))
                    };
                    row[j] = t.div_exact(&by);
                }
            }
            prev = p;
        }
        r += 1;
    }
    r
}
