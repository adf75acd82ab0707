use std::cmp::Ordering;
use std::collections::HashMap;

/// Exponent vector of a monomial, one entry per variable.
///
/// Ordered graded-lexicographically: lower total degree first, then the
/// larger exponent in the earliest variable first (`y^2 < yz < z^2`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Exponent(Vec<u32>);

impl Exponent {
    pub fn new(exps: Vec<u32>) -> Self {
        Exponent(exps)
    }

    pub fn zero(nvars: usize) -> Self {
        Exponent(vec![0; nvars])
    }

    pub fn unit(nvars: usize, var: usize) -> Self {
        let mut e = vec![0; nvars];
        e[var] = 1;
        Exponent(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, var: usize) -> u32 {
        self.0[var]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Exponent) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other - self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Exponent) -> Option<Exponent> {
        if !self.divides(other) {
            return None;
        }
        Some(Exponent(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect()))
    }

    pub fn add(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn bump(&self, var: usize, by: u32) -> Exponent {
        let mut e = self.0.clone();
        e[var] += by;
        Exponent(e)
    }

    /// Removes one from the exponent of `var`, if positive.
    pub fn lower(&self, var: usize) -> Option<Exponent> {
        if self.0[var] == 0 {
            return None;
        }
        let mut e = self.0.clone();
        e[var] -= 1;
        Some(Exponent(e))
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of total degree `d` in `nvars` variables, in increasing
/// graded-lex order. With `restrict`, only the listed variables may occur.
pub fn monomial_basis(nvars: usize, d: u32, restrict: Option<&[usize]>) -> Vec<Exponent> {
    let vars: Vec<usize> = match restrict {
        Some(r) => {
            let mut r = r.to_vec();
            r.sort_unstable();
            r.dedup();
            r
        }
        None => (0..nvars).collect(),
    };
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    fill(&vars, 0, d, &mut cur, &mut out);
    out
}

fn fill(vars: &[usize], pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Exponent>) {
    if pos + 1 >= vars.len() {
        if let Some(&v) = vars.get(pos) {
            cur[v] = left;
            out.push(Exponent(cur.clone()));
            cur[v] = 0;
        } else if left == 0 {
            out.push(Exponent(cur.clone()));
        }
        return;
    }
    let v = vars[pos];
    for e in (0..=left).rev() {
        cur[v] = e;
        fill(vars, pos + 1, left - e, cur, out);
    }
    cur[v] = 0;
}

/// Position lookup for a monomial basis.
pub fn index_map(basis: &[Exponent]) -> HashMap<Exponent, usize> {
    basis.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect()
}

/// Number of monomials of degree `d` in `nvars` variables.
pub fn count_monomials(nvars: usize, d: u32) -> usize {
    if nvars == 0 {
        return usize::from(d == 0);
    }
    // C(d + nvars - 1, nvars - 1) without overflow for our sizes.
    let k = (nvars - 1) as u64;
    let n = d as u64 + k;
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(v: &[u32]) -> Exponent {
        Exponent::new(v.to_vec())
    }

    #[test]
    fn bases() {
        assert_eq!(
            monomial_basis(3, 1, None),
            vec![e(&[1, 0, 0]), e(&[0, 1, 0]), e(&[0, 0, 1])]
        );
        assert_eq!(
            monomial_basis(3, 2, Some(&[1, 2])),
            vec![e(&[0, 2, 0]), e(&[0, 1, 1]), e(&[0, 0, 2])]
        );
        assert_eq!(monomial_basis(4, 0, None), vec![e(&[0, 0, 0, 0])]);
        assert_eq!(monomial_basis(4, 5, None).len(), count_monomials(4, 5));
    }

    #[test]
    fn basis_is_sorted() {
        let b = monomial_basis(4, 4, None);
        assert!(b.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn division() {
        assert_eq!(e(&[1, 0]).quotient_of(&e(&[3, 2])), Some(e(&[2, 2])));
        assert_eq!(e(&[1, 3]).quotient_of(&e(&[3, 2])), None);
    }
}
