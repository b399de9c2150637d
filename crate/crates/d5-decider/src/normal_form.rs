use std::collections::BTreeMap;
use std::fmt;

use core_poly::{fmt_q, JetBound, Monomial, Poly, VarSet, Q};
use num_traits::{One, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::D5Error;

/// Exponents `(i, j, k)` of `y^i z^j t^k` in `phi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PhiKey(pub u32, pub u32, pub u32);

impl PhiKey {
    pub fn degree(self) -> u32 {
        self.0 + self.1 + self.2
    }

    /// `y^2`, `y z` and pure powers of `z` may not occur in `phi`.
    pub fn is_forbidden(self) -> bool {
        matches!(self, PhiKey(2, 0, 0) | PhiKey(1, 1, 0) | PhiKey(0, _, 0))
    }
}

impl fmt::Display for PhiKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a_{}_{}_{}", self.0, self.1, self.2)
    }
}

/// Coefficient record of the normal form.
///
/// `phi` holds every nonzero coefficient of total degree at least 2, so the
/// degree-2 part that separates the two cases is still visible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct D5NormalForm {
    /// `psi(z, t)` over the variables `z, t`.
    pub psi: Poly,
    pub a: Q,
    pub k: u32,
    /// Coefficient of `x t^2` in the expanded equation.
    pub b: Q,
    pub phi: BTreeMap<PhiKey, Q>,
    pub degree_bound: JetBound,
}

pub(crate) fn xyzt() -> VarSet {
    VarSet::of(&["x", "y", "z", "t"])
}

pub(crate) fn zt() -> VarSet {
    VarSet::of(&["z", "t"])
}

pub(crate) fn mono(vars: &VarSet, pairs: &[(&str, u32)]) -> Monomial {
    let mut e = vec![0; vars.len()];
    for (n, k) in pairs {
        e[vars.index(n).expect("known variable")] += k;
    }
    Monomial::from_exps(e)
}

pub(crate) fn term(vars: &VarSet, pairs: &[(&str, u32)], c: Q) -> Poly {
    Poly::term(vars, mono(vars, pairs), c)
}

impl D5NormalForm {
    /// Builds a record, setting `b` from `a` and `k` and using `k = 1` when
    /// `a = 0`.
    pub fn new(
        psi: Poly,
        a: Q,
        k: u32,
        phi: BTreeMap<PhiKey, Q>,
        degree_bound: JetBound,
    ) -> Result<Self, D5Error> {
        let k = if a.is_zero() { 1 } else { k };
        let b = if k == 1 { a.clone() } else { Q::zero() };
        let phi = phi.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let psi = psi.embed(&zt()).map_err(|_| {
            D5Error::InvalidNormalForm(format!("psi = {psi} must be a polynomial in z, t"))
        })?;
        let nf = Self {
            psi,
            a,
            k,
            b,
            phi,
            degree_bound,
        };
        nf.validate()?;
        Ok(nf)
    }

    pub fn validate(&self) -> Result<(), D5Error> {
        let bad = |m: String| Err(D5Error::InvalidNormalForm(m));
        if self.k == 0 {
            return bad("k must be at least 1".into());
        }
        if self.psi.vars() != &zt() {
            return bad(format!("psi = {} must live over z, t", self.psi));
        }
        for (key, c) in &self.phi {
            if c.is_zero() {
                return bad(format!("{key} is stored as zero"));
            }
            if key.degree() < 2 || key.is_forbidden() {
                return bad(format!("{key} may not occur in phi"));
            }
        }
        let xt2 = self.equation().coeff_of(&[1, 0, 0, 2]);
        if xt2 != self.b {
            return bad(format!(
                "b = {} but the x t^2 coefficient is {}",
                fmt_q(&self.b),
                fmt_q(&xt2)
            ));
        }
        Ok(())
    }

    pub fn coeff(&self, i: u32, j: u32, k: u32) -> Q {
        self.phi
            .get(&PhiKey(i, j, k))
            .cloned()
            .unwrap_or_else(Q::zero)
    }

    pub fn psi00(&self) -> Q {
        self.psi.constant_term()
    }

    /// `phi(y, z, t)` over `x, y, z, t`.
    pub fn phi_poly(&self) -> Poly {
        let v = xyzt();
        let mut p = Poly::zero(&v);
        for (PhiKey(i, j, k), c) in &self.phi {
            p.add_term(mono(&v, &[("y", *i), ("z", *j), ("t", *k)]), c.clone());
        }
        p
    }

    /// Degree-2 part of `phi`.
    pub fn phi2(&self) -> BTreeMap<PhiKey, Q> {
        self.phi
            .iter()
            .filter(|(k, _)| k.degree() == 2)
            .map(|(k, c)| (*k, c.clone()))
            .collect()
    }

    /// The full equation over `x, y, z, t`.
    pub fn equation(&self) -> Poly {
        let v = xyzt();
        let one = Q::one();
        let psi = self.psi.embed(&v).expect("z, t are in x, y, z, t");
        let inner = &(&term(&v, &[("x", 1), ("z", 1)], one.clone()) * &psi)
            + &term(&v, &[("x", 1), ("t", self.k)], self.a.clone());
        let inner = &inner + &self.phi_poly();
        let head = &(&term(&v, &[("x", 2)], one.clone())
            + &term(&v, &[("y", 2), ("z", 1)], one.clone()))
            + &term(&v, &[("x", 1), ("z", 2)], one.clone());
        &head + &(&term(&v, &[("t", 1)], one) * &inner)
    }
}

impl Serialize for D5NormalForm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        struct Phi<'a>(&'a BTreeMap<PhiKey, Q>);
        impl Serialize for Phi<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let mut m = s.serialize_map(Some(self.0.len()))?;
                for (k, c) in self.0 {
                    m.serialize_entry(&k.to_string(), &fmt_q(c))?;
                }
                m.end()
            }
        }
        let mut m = s.serialize_map(Some(6))?;
        m.serialize_entry("psi", &self.psi.to_string())?;
        m.serialize_entry("a", &fmt_q(&self.a))?;
        m.serialize_entry("k", &self.k)?;
        m.serialize_entry("b", &fmt_q(&self.b))?;
        m.serialize_entry("phi", &Phi(&self.phi))?;
        m.serialize_entry("degree_bound", &self.degree_bound.degree())?;
        m.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use core_poly::qi;

    fn jb() -> JetBound {
        JetBound::new(8).unwrap()
    }

    #[test]
    fn equation_of_a_record() {
        let mut phi = BTreeMap::new();
        phi.insert(PhiKey(0, 0, 3), qi(2));
        phi.insert(PhiKey(0, 2, 1), qi(1));
        let psi = Poly::parse(&zt(), "3 + z").unwrap();
        let nf = D5NormalForm::new(psi, qi(5), 1, phi, jb()).unwrap();
        assert_eq!(nf.b, qi(5));
        let want = Poly::parse(
            &xyzt(),
            "x^2 + y^2*z + x*z^2 + t*(3*x*z + x*z^2 + 5*x*t + 2*t^3 + z^2*t)",
        )
        .unwrap();
        assert_eq!(nf.equation(), want);
        assert_eq!(nf.coeff(0, 0, 3), qi(2));
        assert_eq!(nf.psi00(), qi(3));
    }

    #[test]
    fn b_follows_k() {
        let z = Poly::zero(&zt());
        let nf = D5NormalForm::new(z.clone(), qi(2), 3, BTreeMap::new(), jb()).unwrap();
        assert_eq!(nf.b, qi(0));
        let nf = D5NormalForm::new(z, qi(0), 4, BTreeMap::new(), jb()).unwrap();
        assert_eq!(nf.k, 1);
    }

    #[test]
    fn forbidden_terms_rejected() {
        for key in [
            PhiKey(2, 0, 0),
            PhiKey(1, 1, 0),
            PhiKey(0, 3, 0),
            PhiKey(0, 0, 1),
        ] {
            let mut phi = BTreeMap::new();
            phi.insert(key, qi(1));
            assert!(
                D5NormalForm::new(Poly::zero(&zt()), qi(0), 1, phi, jb()).is_err(),
                "{key}"
            );
        }
    }
}
