use core_poly::{Poly, UPoly, VarSet, Q};
use num_traits::{One, Zero};

use crate::{Ideal, IdealError};

/// A polynomially parametrized curve: one univariate image per ambient
/// variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamCurve {
    param: String,
    vars: VarSet,
    images: Vec<UPoly>,
}

impl ParamCurve {
    pub fn new(param: &str, vars: &VarSet, images: Vec<UPoly>) -> Result<Self, IdealError> {
        if images.len() != vars.len() {
            return Err(IdealError::CurveArity {
                expected: vars.len(),
                got: images.len(),
            });
        }
        if images.iter().all(|p| p.degree().unwrap_or(0) == 0) {
            return Err(IdealError::ConstantCurve);
        }
        Ok(Self {
            param: param.to_string(),
            vars: vars.clone(),
            images,
        })
    }

    /// Coordinate axis: the named variable is the parameter, all others zero.
    pub fn axis(vars: &VarSet, name: &str) -> Result<Self, IdealError> {
        let i = vars.require(name)?;
        let images = (0..vars.len())
            .map(|j| {
                if j == i {
                    UPoly::new(vec![Q::zero(), Q::one()])
                } else {
                    UPoly::zero()
                }
            })
            .collect();
        Self::new("s", vars, images)
    }

    pub fn param(&self) -> &str {
        &self.param
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn images(&self) -> &[UPoly] {
        &self.images
    }

    pub fn point_at(&self, s: &Q) -> Vec<Q> {
        self.images.iter().map(|p| p.eval(s)).collect()
    }

    /// `g(curve(s))` as a univariate polynomial.
    pub fn pullback(&self, g: &Poly) -> Result<UPoly, IdealError> {
        if g.vars() != &self.vars {
            return Err(IdealError::VarSetMismatch);
        }
        let mut powers: Vec<Vec<UPoly>> = vec![vec![UPoly::constant(Q::one())]; self.vars.len()];
        let mut acc = UPoly::zero();
        for (m, c) in g.terms() {
            let mut t = UPoly::constant(c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = &mut powers[i];
                while pw.len() <= e as usize {
                    let next = pw[pw.len() - 1].mul(&self.images[i]);
                    pw.push(next);
                }
                t = t.mul(&pw[e as usize]);
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }
}

impl Ideal {
    /// True iff every generator restricts to zero along the curve.
    pub fn contains_curve(&self, curve: &ParamCurve) -> Result<bool, IdealError> {
        for g in self.gens() {
            if !curve.pullback(g)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Convenience for [`Ideal::contains_curve`].
pub fn curve_in_locus(curve: &ParamCurve, ideal: &Ideal) -> Result<bool, IdealError> {
    ideal.contains_curve(curve)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypersurface_singular_ideal;

    #[test]
    fn singular_line_lies_in_locus() {
        let v = VarSet::of(&["x", "y", "z", "u"]);
        let f = Poly::parse(&v, "x*y + y*u + x*u").unwrap();
        let sing = hypersurface_singular_ideal(&f).unwrap();
        let line = ParamCurve::axis(&v, "z").unwrap();
        assert!(curve_in_locus(&line, &sing).unwrap());
        let other = ParamCurve::axis(&v, "x").unwrap();
        assert!(!curve_in_locus(&other, &sing).unwrap());
    }

    #[test]
    fn constant_curve_rejected() {
        let v = VarSet::of(&["x"]);
        assert_eq!(
            ParamCurve::new("s", &v, vec![UPoly::from_ints(&[3])]),
            Err(IdealError::ConstantCurve)
        );
    }
}
