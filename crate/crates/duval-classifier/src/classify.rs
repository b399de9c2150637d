use core_poly::linalg;
use core_poly::{Poly, UPoly, VarSet, Q};
use ideal_lab::{hessian_corank, hessian_matrix, milnor_number_auto};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::linear::image_of_vector;
use crate::{ClassifyError, DuValType};

/// Factorization pattern of a binary cubic form over an algebraic closure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CubicType {
    ThreeDistinct,
    DoubleSimple,
    TripleLine,
    /// The zero form, which has no factorization pattern.
    NotSplit,
}

/// Pattern of a homogeneous cubic in two variables, from the degree of
/// `gcd(p, p')` for a dehomogenization `p` of degree exactly three.
pub fn cubic_factor_type(c: &Poly) -> CubicType {
    assert_eq!(c.vars().len(), 2, "binary form expected");
    if c.is_zero() {
        return CubicType::NotSplit;
    }
    // Shear r -> r + k s until the s^3 coefficient c(1, k) is nonzero, so
    // that no root sits at infinity after setting r = 1.
    let vars = c.vars();
    let s = Poly::var_at(vars, 0);
    let r = Poly::var_at(vars, 1);
    let mut sheared = None;
    for k in 0..4 {
        let sub = core_poly::Substitution::new(vars)
            .with(vars.name(1), &r + &s.scale(&Q::from_integer(k.into())));
        let d = c.substitute(&sub).expect("same varset");
        if !d.coeff_of(&[3, 0]).is_zero() {
            sheared = Some(d);
            break;
        }
    }
    let d = sheared.expect("a nonzero cubic has at most three roots");
    let p = UPoly::from_poly(&d.specialize(1, &Q::one()), 0).expect("univariate in s");
    match p.gcd(&p.derivative()).degree() {
        Some(0) => CubicType::ThreeDistinct,
        Some(1) => CubicType::DoubleSimple,
        _ => CubicType::TripleLine,
    }
}

/// ADE type of the surface germ `f = 0` at the origin.
pub fn classify_duval(f: &Poly) -> Result<DuValType, ClassifyError> {
    let n = f.vars().len();
    if n != 3 {
        return Err(ClassifyError::WrongArity(n));
    }
    if !f.constant_term().is_zero() {
        return Err(ClassifyError::NotThroughOrigin);
    }
    if f.is_zero() {
        return Ok(DuValType::NotDuVal);
    }
    if !f.homogeneous_part(1).is_zero() {
        return Ok(DuValType::Smooth);
    }
    match hessian_corank(f)? {
        0 => Ok(DuValType::A(1)),
        1 => Ok(DuValType::A(milnor_number_auto(f, 2)?)),
        2 => {
            let h = hessian_matrix(f)?;
            let ker = linalg::kernel(&h, 3);
            let plane = VarSet::of(&["s", "r"]);
            let s = Poly::var_at(&plane, 0);
            let r = Poly::var_at(&plane, 1);
            let images: Vec<Poly> = (0..3)
                .map(|i| &s.scale(&ker[0][i]) + &r.scale(&ker[1][i]))
                .collect();
            let cubic = image_of_vector(&f.homogeneous_part(3), &images)?;
            match cubic_factor_type(&cubic) {
                CubicType::ThreeDistinct => Ok(DuValType::D(4)),
                CubicType::DoubleSimple => Ok(DuValType::D(milnor_number_auto(f, 5)?)),
                CubicType::TripleLine => match milnor_number_auto(f, 7) {
                    Ok(6) => Ok(DuValType::E6),
                    Ok(7) => Ok(DuValType::E7),
                    Ok(8) => Ok(DuValType::E8),
                    Ok(_) | Err(ideal_lab::IdealError::NotStabilized { .. }) => {
                        Ok(DuValType::NotDuVal)
                    }
                    Err(e) => Err(e.into()),
                },
                CubicType::NotSplit => Ok(DuValType::NotDuVal),
            }
        }
        _ => Ok(DuValType::NotDuVal),
    }
}
