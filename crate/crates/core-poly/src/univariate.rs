//! Dense univariate polynomials over the rationals.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{fmt_q, Monomial, Poly, PolyError, VarSet, Q};

/// Coefficients from degree 0 upward, with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UPoly(Vec<Q>);

impl UPoly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self(coeffs)
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&k| Q::from_integer(k.into())).collect())
    }

    pub fn zero() -> Self {
        Self(Vec::new())
    }

    pub fn constant(c: Q) -> Self {
        Self::new(vec![c])
    }

    /// `x - r`.
    pub fn linear_root(r: &Q) -> Self {
        Self::new(vec![-r.clone(), Q::one()])
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.0
    }

    pub fn coeff(&self, k: usize) -> Q {
        self.0.get(k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Q {
        self.0.last().cloned().unwrap_or_else(Q::zero)
    }

    /// Index of the lowest nonzero coefficient (vanishing order at 0).
    pub fn order_at_zero(&self) -> Option<usize> {
        self.0.iter().position(|c| !c.is_zero())
    }

    pub fn eval(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        Self::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        Self::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Q::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, k: &Q) -> Self {
        Self::new(self.0.iter().map(|c| c * k).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(Q::one()), |acc, _| acc.mul(self))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Q::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self), PolyError> {
        let dd = d.degree().ok_or(PolyError::DivisionByZero)?;
        let lead_inv = d.lead().recip();
        let mut rem = self.0.clone();
        let mut quo = vec![Q::zero(); self.0.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let c = rem.last().cloned().unwrap() * &lead_inv;
            if !c.is_zero() {
                for (j, dc) in d.0.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
                quo[k] = c;
            }
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        Ok((Self::new(quo), Self::new(rem)))
    }

    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d).ok()?;
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lead().recip())
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn gcd_all<'a, I: IntoIterator<Item = &'a UPoly>>(it: I) -> Self {
        it.into_iter().fold(Self::zero(), |acc, p| acc.gcd(p))
    }

    /// Product of the distinct irreducible factors, made monic.
    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).expect("gcd divides").monic()
    }

    /// Distinct rational roots with their multiplicities.
    pub fn rational_roots(&self) -> Result<Vec<(Q, u32)>, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let mut out = Vec::new();
        let mut p = self.clone();
        let z = p.order_at_zero().unwrap_or(0);
        if z > 0 {
            out.push((Q::zero(), z as u32));
            p = Self::new(p.0[z..].to_vec());
        }
        let sf = p.squarefree_part();
        if sf.degree().unwrap_or(0) == 0 {
            return Ok(out);
        }
        let ints = sf.integer_coeffs();
        let a0 = ints[0].abs();
        let an = ints.last().unwrap().abs();
        let ps = divisors(&a0)?;
        let qs = divisors(&an)?;
        let mut cands: Vec<Q> = Vec::new();
        for pp in &ps {
            for qq in &qs {
                let r = Q::new(pp.clone(), qq.clone());
                if !cands.contains(&r) {
                    cands.push(r.clone());
                    cands.push(-r);
                }
            }
        }
        cands.sort();
        for r in cands {
            if sf.eval(&r).is_zero() {
                let lin = Self::linear_root(&r);
                let mut m = 0;
                while let Some(next) = p.div_exact(&lin) {
                    p = next;
                    m += 1;
                }
                out.push((r, m));
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(out)
    }

    /// Integer coefficients proportional to `self` with content 1.
    pub fn integer_coeffs(&self) -> Vec<BigInt> {
        let mut den = BigInt::one();
        for c in &self.0 {
            den = den.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .0
            .iter()
            .map(|c| (c * Q::from_integer(den.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |a, b| a.gcd(b));
        if g.is_zero() {
            return ints;
        }
        ints.into_iter().map(|c| c / &g).collect()
    }

    /// True when every root in an algebraic closure is rational.
    pub fn splits_over_q(&self) -> Result<bool, PolyError> {
        let total: u32 = self.rational_roots()?.iter().map(|(_, m)| m).sum();
        Ok(total as usize == self.degree().unwrap_or(0))
    }

    /// Reads a polynomial that involves at most the variable at `i`.
    pub fn from_poly(p: &Poly, i: usize) -> Option<Self> {
        let mut coeffs = vec![Q::zero(); p.degree_in(i) as usize + 1];
        for (m, c) in p.terms() {
            if m.exps().iter().enumerate().any(|(j, &e)| j != i && e > 0) {
                return None;
            }
            coeffs[m.exp(i) as usize] = c.clone();
        }
        Some(Self::new(coeffs))
    }

    pub fn to_poly(&self, vars: &VarSet, i: usize) -> Poly {
        Poly::from_terms(
            vars,
            self.0
                .iter()
                .enumerate()
                .map(|(k, c)| (Monomial::var(vars.len(), i, k as u32), c.clone())),
        )
    }
}

/// Positive divisors of a nonnegative integer by trial division.
fn divisors(n: &BigInt) -> Result<Vec<BigInt>, PolyError> {
    let n = n.to_u64().ok_or(PolyError::TooLarge)?;
    if n == 0 {
        return Ok(vec![BigInt::one()]);
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            small.push(BigInt::from(d));
            if d * d != n {
                large.push(BigInt::from(n / d));
            }
        }
        d += 1;
        if d > 50_000_000 {
            return Err(PolyError::TooLarge);
        }
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match k {
                0 => write!(f, "{}", fmt_q(&a))?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{}*", fmt_q(&a))?;
                    }
                    if k == 1 {
                        write!(f, "s")?;
                    } else {
                        write!(f, "s^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
