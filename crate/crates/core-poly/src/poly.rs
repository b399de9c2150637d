use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::{fmt_q, Monomial, PolyError, VarSet, Q};

/// Truncation order for jets: terms of total degree above `D` are dropped.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JetBound(u32);

impl JetBound {
    pub fn new(d: u32) -> Result<Self, PolyError> {
        if d == 0 {
            Err(PolyError::BadJetBound)
        } else {
            Ok(Self(d))
        }
    }

    pub fn degree(self) -> u32 {
        self.0
    }
}

/// Exact polynomial with rational coefficients over a [`VarSet`].
///
/// No zero coefficient is ever stored, so structural equality is
/// mathematical equality.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    vars: VarSet,
    terms: BTreeMap<Monomial, Q>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Checked binary arithmetic; fails when the operands live over different
/// variable sets.
pub fn poly_arith(p: &Poly, q: &Poly, op: ArithOp) -> Result<Poly, PolyError> {
    p.vars.check_same(&q.vars)?;
    Ok(match op {
        ArithOp::Add => p.add_impl(q),
        ArithOp::Sub => p.add_scaled(q, &-Q::one()),
        ArithOp::Mul => p.mul_impl(q),
    })
}

impl Poly {
    pub fn zero(vars: &VarSet) -> Self {
        Self {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &VarSet, c: Q) -> Self {
        Self::term(vars, Monomial::one(vars.len()), c)
    }

    pub fn one(vars: &VarSet) -> Self {
        Self::constant(vars, Q::one())
    }

    pub fn term(vars: &VarSet, m: Monomial, c: Q) -> Self {
        debug_assert_eq!(m.arity(), vars.len());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self {
            vars: vars.clone(),
            terms,
        }
    }

    /// The variable at position `i`.
    pub fn var_at(vars: &VarSet, i: usize) -> Self {
        Self::term(vars, Monomial::var(vars.len(), i, 1), Q::one())
    }

    pub fn var(vars: &VarSet, name: &str) -> Result<Self, PolyError> {
        Ok(Self::var_at(vars, vars.require(name)?))
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Q)>>(vars: &VarSet, it: I) -> Self {
        let mut p = Self::zero(vars);
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    /// Coefficient of the monomial with the given exponents.
    pub fn coeff_of(&self, exps: &[u32]) -> Q {
        self.coeff(&Monomial::from_exps(exps.to_vec()))
    }

    pub fn constant_term(&self) -> Q {
        self.coeff(&Monomial::one(self.vars.len()))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn as_constant(&self) -> Option<Q> {
        self.is_constant().then(|| self.constant_term())
    }

    pub fn leading(&self) -> Option<(&Monomial, &Q)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn add_impl(&self, other: &Self) -> Self {
        let (big, small) = if self.len() >= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    /// `self + k * other`.
    pub fn add_scaled(&self, other: &Self, k: &Q) -> Self {
        let mut out = self.clone();
        if k.is_zero() {
            return out;
        }
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c * k);
        }
        out
    }

    fn mul_impl(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, k: &Q) -> Self {
        if k.is_zero() {
            return Self::zero(&self.vars);
        }
        Self {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Self {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (t.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one(&self.vars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_impl(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_impl(&base);
            }
        }
        result
    }

    /// Largest total degree of a term; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Minimal total degree of a term.
    pub fn multiplicity_at_origin(&self) -> Result<u32, PolyError> {
        self.terms
            .keys()
            .map(Monomial::degree)
            .min()
            .ok_or(PolyError::ZeroPolynomial)
    }

    /// Minimal weighted degree over the terms.
    pub fn weighted_order(&self, weights: &[u32]) -> Result<u64, PolyError> {
        if weights.len() != self.vars.len() {
            return Err(PolyError::ArityMismatch {
                expected: self.vars.len(),
                got: weights.len(),
            });
        }
        self.terms
            .keys()
            .map(|m| m.weighted_degree(weights))
            .min()
            .ok_or(PolyError::ZeroPolynomial)
    }

    /// Drops every term of total degree above the bound.
    pub fn truncate(&self, d: JetBound) -> Self {
        self.filter(|m, _| m.degree() <= d.degree())
    }

    pub fn homogeneous_part(&self, d: u32) -> Self {
        self.filter(|m, _| m.degree() == d)
    }

    pub fn filter(&self, mut keep: impl FnMut(&Monomial, &Q) -> bool) -> Self {
        Self {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, c)| keep(m, c))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn map_coeffs(&self, mut f: impl FnMut(&Q) -> Q) -> Self {
        Self::from_terms(
            &self.vars,
            self.terms.iter().map(|(m, c)| (m.clone(), f(c))),
        )
    }

    /// Formal partial derivative with respect to the variable at `i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.exp(i);
            if e > 0 {
                let mut m2 = m.clone();
                m2.set(i, e - 1);
                out.add_term(m2, c * Q::from_integer(e.into()));
            }
        }
        out
    }

    pub fn partial_derivative(&self, name: &str) -> Result<Self, PolyError> {
        Ok(self.derivative(self.vars.require(name)?))
    }

    pub fn gradient(&self) -> Vec<Self> {
        (0..self.vars.len()).map(|i| self.derivative(i)).collect()
    }

    pub fn eval(&self, point: &[Q]) -> Result<Q, PolyError> {
        if point.len() != self.vars.len() {
            return Err(PolyError::ArityMismatch {
                expected: self.vars.len(),
                got: point.len(),
            });
        }
        let mut acc = Q::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (e, x) in m.exps().iter().zip(point) {
                if *e > 0 {
                    t *= num_traits::pow(x.clone(), *e as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Substitutes a rational value for one variable, keeping the varset.
    pub fn specialize(&self, i: usize, value: &Q) -> Self {
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.exp(i);
            let mut m2 = m.clone();
            m2.set(i, 0);
            let k = if e == 0 {
                c.clone()
            } else {
                c * num_traits::pow(value.clone(), e as usize)
            };
            out.add_term(m2, k);
        }
        out
    }

    pub fn specialize_named(&self, name: &str, value: &Q) -> Result<Self, PolyError> {
        Ok(self.specialize(self.vars.require(name)?, value))
    }

    /// `p(v + point)` expanded exactly.
    pub fn translate_origin(&self, point: &[Q]) -> Result<Self, PolyError> {
        if point.len() != self.vars.len() {
            return Err(PolyError::ArityMismatch {
                expected: self.vars.len(),
                got: point.len(),
            });
        }
        let mut s = crate::Substitution::identity(&self.vars);
        for (i, c) in point.iter().enumerate() {
            if !c.is_zero() {
                let img =
                    Self::var_at(&self.vars, i).add_impl(&Self::constant(&self.vars, c.clone()));
                s.set_at(i, img);
            }
        }
        self.substitute(&s)
    }

    /// Largest exponent of the variable at `i`.
    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(i)).max().unwrap_or(0)
    }

    /// Smallest exponent of the variable at `i` (the power of it dividing `self`).
    pub fn order_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(i)).min().unwrap_or(0)
    }

    /// Coefficients as a polynomial in the variable at `i`: `self = sum c_k * v^k`.
    pub fn coefficients_in(&self, i: usize) -> BTreeMap<u32, Self> {
        let mut out: BTreeMap<u32, Self> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exp(i);
            let mut m2 = m.clone();
            m2.set(i, 0);
            out.entry(e)
                .or_insert_with(|| Self::zero(&self.vars))
                .add_term(m2, c.clone());
        }
        out
    }

    pub fn coefficient_in(&self, i: usize, k: u32) -> Self {
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            if m.exp(i) == k {
                let mut m2 = m.clone();
                m2.set(i, 0);
                out.add_term(m2, c.clone());
            }
        }
        out
    }

    /// Greatest monomial dividing every term (the exponent-wise minimum).
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(self.vars.len()),
            Some(first) => it.fold(first.clone(), |acc, m| acc.gcd(m)),
        }
    }

    /// `self / m` if the monomial divides every term.
    pub fn div_monomial(&self, m: &Monomial) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for (t, c) in &self.terms {
            terms.insert(m.div_of(t)?, c.clone());
        }
        Some(Self {
            vars: self.vars.clone(),
            terms,
        })
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.vars != self.vars {
            return None;
        }
        let (lm, lc) = d.leading()?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quo = Self::zero(&self.vars);
        while let Some((m, c)) = rem.leading() {
            let qm = lm.div_of(m)?;
            let qc = c / &lc;
            rem = rem.add_scaled(&d.mul_monomial(&qm), &-qc.clone());
            quo.add_term(qm, qc);
        }
        Some(quo)
    }

    /// Remainder of multivariate division by a list of divisors in graded-lex
    /// order. Zero remainder certifies ideal membership; a nonzero remainder
    /// proves nothing unless the divisors form a standard basis.
    pub fn reduce_by(&self, divisors: &[Self]) -> Self {
        let divs: Vec<(Monomial, Q, &Self)> = divisors
            .iter()
            .filter_map(|d| d.leading().map(|(m, c)| (m.clone(), c.clone(), d)))
            .collect();
        let mut p = self.clone();
        let mut r = Self::zero(&self.vars);
        while let Some((m, c)) = p.leading() {
            let (m, c) = (m.clone(), c.clone());
            match divs.iter().find(|(lm, _, _)| lm.divides(&m)) {
                Some((lm, lc, d)) => {
                    let qm = lm.div_of(&m).expect("divides");
                    p = p.add_scaled(&d.mul_monomial(&qm), &-(c / lc));
                }
                None => {
                    p.terms.remove(&m);
                    r.add_term(m, c);
                }
            }
        }
        r
    }

    /// Makes the leading coefficient 1 (zero stays zero).
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    /// Normalizes a polynomial up to a nonzero rational factor: clears
    /// denominators, divides by the integer content and makes the leading
    /// coefficient positive.
    pub fn primitive(&self) -> Self {
        use num_integer::Integer;
        if self.is_zero() {
            return self.clone();
        }
        let mut den = num_bigint::BigInt::one();
        let mut num = num_bigint::BigInt::zero();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
            num = num.gcd(c.numer());
        }
        let mut k = Q::new(den, num);
        if self
            .leading()
            .map(|(_, c)| c.is_negative())
            .unwrap_or(false)
        {
            k = -k;
        }
        self.scale(&k)
    }

    /// Indices of variables that occur in some term.
    pub fn support(&self) -> Vec<usize> {
        let mut seen = vec![false; self.vars.len()];
        for m in self.terms.keys() {
            for (i, e) in m.exps().iter().enumerate() {
                if *e > 0 {
                    seen[i] = true;
                }
            }
        }
        (0..self.vars.len()).filter(|&i| seen[i]).collect()
    }

    pub fn involves(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.exp(i) > 0)
    }

    /// Rewrites the polynomial over another varset by matching names.
    pub fn embed(&self, target: &VarSet) -> Result<Self, PolyError> {
        if &self.vars == target {
            return Ok(self.clone());
        }
        let mut map = Vec::with_capacity(self.vars.len());
        for n in self.vars.names() {
            map.push(target.index(n));
        }
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target.len()];
            for (i, &k) in m.exps().iter().enumerate() {
                if k > 0 {
                    let j = map[i]
                        .ok_or_else(|| PolyError::UnknownVariable(self.vars.name(i).into()))?;
                    e[j] = k;
                }
            }
            out.add_term(Monomial::from_exps(e), c.clone());
        }
        Ok(out)
    }

    /// Same terms, new variable names of equal arity.
    pub fn with_vars(&self, vars: &VarSet) -> Result<Self, PolyError> {
        if vars.len() != self.vars.len() {
            return Err(PolyError::ArityMismatch {
                expected: self.vars.len(),
                got: vars.len(),
            });
        }
        Ok(Self {
            vars: vars.clone(),
            terms: self.terms.clone(),
        })
    }

    pub(crate) fn terms_map(&self) -> &BTreeMap<Monomial, Q> {
        &self.terms
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                assert!(
                    self.vars == rhs.vars,
                    "polynomial arithmetic across different varsets: {:?} vs {:?}",
                    self.vars,
                    rhs.vars
                );
                $body(self, rhs)
            }
        }
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &Poly, b: &Poly| a.add_impl(b));
forward_binop!(Sub, sub, |a: &Poly, b: &Poly| a.add_scaled(b, &-Q::one()));
forward_binop!(Mul, mul, |a: &Poly, b: &Poly| a.mul_impl(b));

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Q::one())
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut factors: Vec<String> = Vec::new();
            if m.is_one() || !a.is_one() {
                factors.push(fmt_q(&a));
            }
            for (i, &e) in m.exps().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.vars.name(i).to_string()),
                    _ => factors.push(format!("{}^{}", self.vars.name(i), e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}
