//! Resultants and exact square roots, used for eliminating a variable from
//! small symbolic systems.

use num_traits::Signed;

use crate::{Monomial, Poly, Q};

/// Sylvester resultant of `p` and `q` with respect to the variable at `i`,
/// computed by fraction-free (Bareiss) elimination.
///
/// Returns zero when either input does not involve the variable and is zero.
pub fn resultant(p: &Poly, q: &Poly, i: usize) -> Poly {
    let vars = p.vars().clone();
    let m = p.degree_in(i) as usize;
    let n = q.degree_in(i) as usize;
    if p.is_zero() || q.is_zero() {
        return Poly::zero(&vars);
    }
    if m == 0 {
        return p.pow(n as u32);
    }
    if n == 0 {
        return q.pow(m as u32);
    }
    let pc = p.coefficients_in(i);
    let qc = q.coefficients_in(i);
    let get = |c: &std::collections::BTreeMap<u32, Poly>, k: usize| {
        c.get(&(k as u32))
            .cloned()
            .unwrap_or_else(|| Poly::zero(&vars))
    };
    let size = m + n;
    let mut a: Vec<Vec<Poly>> = Vec::with_capacity(size);
    for r in 0..n {
        let mut row = vec![Poly::zero(&vars); size];
        for k in 0..=m {
            row[r + k] = get(&pc, m - k);
        }
        a.push(row);
    }
    for r in 0..m {
        let mut row = vec![Poly::zero(&vars); size];
        for k in 0..=n {
            row[r + k] = get(&qc, n - k);
        }
        a.push(row);
    }
    bareiss_det(a)
}

/// Determinant of a square matrix of polynomials.
pub fn bareiss_det(mut a: Vec<Vec<Poly>>) -> Poly {
    let n = a.len();
    let vars = a[0][0].vars().clone();
    let mut sign = false;
    let mut prev = Poly::one(&vars);
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return Poly::zero(&vars);
            };
            a.swap(k, p);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = Poly::zero(&vars);
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// The nonnegative rational square root, when it exists.
pub fn rational_sqrt(c: &Q) -> Option<Q> {
    if c.is_negative() {
        return None;
    }
    let n = c.numer().sqrt();
    let d = c.denom().sqrt();
    (&n * &n == *c.numer() && &d * &d == *c.denom()).then(|| Q::new(n, d))
}

fn monomial_sqrt(m: &Monomial) -> Option<Monomial> {
    m.exps()
        .iter()
        .map(|e| (e % 2 == 0).then_some(e / 2))
        .collect::<Option<Vec<_>>>()
        .map(Monomial::from_exps)
}

impl Poly {
    /// A polynomial `s` with `s^2 = self` and positive leading coefficient.
    pub fn sqrt_exact(&self) -> Option<Poly> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let (lm, lc) = self.leading()?;
        let s0 = Poly::term(self.vars(), monomial_sqrt(lm)?, rational_sqrt(lc)?);
        let two_lead = s0.scale(&Q::from_integer(2.into()));
        let (tlm, tlc) = {
            let (m, c) = two_lead.leading()?;
            (m.clone(), c.clone())
        };
        let mut s = s0;
        for _ in 0..=self.len() {
            let r = self - &(&s * &s);
            let Some((rm, rc)) = r.leading() else {
                return Some(s);
            };
            let qm = tlm.div_of(rm)?;
            let step = Poly::term(self.vars(), qm, rc / &tlc);
            if step.leading()?.0 >= s.leading()?.0 {
                return None;
            }
            s = &s + &step;
        }
        (&s * &s == *self).then_some(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::VarSet;

    fn vs() -> VarSet {
        VarSet::of(&["x", "a", "b"])
    }

    fn p(s: &str) -> Poly {
        Poly::parse(&vs(), s).unwrap()
    }

    #[test]
    fn resultant_of_linear_factors() {
        // Res_x((x-a)(x-b), x - 1) = (1-a)(1-b) up to sign convention
        let f = p("(x-a)*(x-b)");
        let g = p("x - 1");
        let r = resultant(&f, &g, 0);
        assert_eq!(r, p("(1-a)*(1-b)"));
    }

    #[test]
    fn resultant_detects_common_root() {
        let f = p("x^2 - a^2");
        let g = p("x - a");
        assert!(resultant(&f, &g, 0).is_zero());
    }

    #[test]
    fn square_roots() {
        assert_eq!(
            p("(b - 2*a)^2").sqrt_exact().map(|s| &s * &s),
            Some(p("(b-2*a)^2"))
        );
        assert_eq!(p("4*x^2 + 4*x*a + a^2").sqrt_exact(), Some(p("2*x + a")));
        assert!(p("x^2 + 1").sqrt_exact().is_none());
        assert!(p("2*x^2").sqrt_exact().is_none());
    }
}
