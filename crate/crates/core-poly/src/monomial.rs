use std::cmp::Ordering;

/// Exponent vector aligned with a [`crate::VarSet`].
///
/// Ordered graded-lexicographically: total degree first, then the first
/// differing exponent (larger exponent on an earlier variable is larger).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Self(vec![0; arity])
    }

    pub fn from_exps(exps: Vec<u32>) -> Self {
        Self(exps)
    }

    pub fn var(arity: usize, i: usize, e: u32) -> Self {
        let mut v = vec![0; arity];
        v[i] = e;
        Self(v)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn weighted_degree(&self, w: &[u32]) -> u64 {
        self.0
            .iter()
            .zip(w)
            .map(|(&e, &wi)| u64::from(e) * u64::from(wi))
            .sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn div_of(&self, other: &Self) -> Option<Self> {
        self.divides(other)
            .then(|| Self(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect()))
    }

    pub fn gcd(&self, other: &Self) -> Self {
        Self(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    pub fn lcm(&self, other: &Self) -> Self {
        Self(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub(crate) fn set(&mut self, i: usize, e: u32) {
        self.0[i] = e;
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All exponent vectors of the given arity and exact total degree,
/// listed in decreasing lexicographic order.
pub fn monomials_of_degree(arity: usize, d: u32) -> Vec<Monomial> {
    fn rec(arity: usize, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == arity {
            cur[i] = left;
            out.push(Monomial(cur.clone()));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(arity, i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if arity == 0 {
        if d == 0 {
            out.push(Monomial(Vec::new()));
        }
        return out;
    }
    rec(arity, 0, d, &mut vec![0; arity], &mut out);
    out
}

impl Monomial {
    /// Every monomial of total degree at most `d`.
    pub fn up_to_degree(arity: usize, d: u32) -> Vec<Monomial> {
        (0..=d)
            .flat_map(|k| monomials_of_degree(arity, k))
            .collect()
    }

    pub fn of_degree(arity: usize, d: u32) -> Vec<Monomial> {
        monomials_of_degree(arity, d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grlex_order() {
        let x2 = Monomial::from_exps(vec![2, 0]);
        let xy = Monomial::from_exps(vec![1, 1]);
        let y3 = Monomial::from_exps(vec![0, 3]);
        assert!(x2 > xy);
        assert!(y3 > x2);
    }

    #[test]
    fn counts_match_binomials() {
        // C(d+n-1, n-1)
        assert_eq!(monomials_of_degree(3, 4).len(), 15);
        assert_eq!(Monomial::up_to_degree(3, 24).len(), 2925);
    }

    #[test]
    fn division() {
        let a = Monomial::from_exps(vec![1, 2]);
        let b = Monomial::from_exps(vec![3, 2]);
        assert_eq!(a.div_of(&b), Some(Monomial::from_exps(vec![2, 0])));
        assert_eq!(b.div_of(&a), None);
    }
}
