//! Exact rational multivariate polynomials over named variables.
//!
//! Every polynomial carries the [`VarSet`] it lives over. Coefficients are
//! arbitrary precision rationals; nothing in this crate touches floating
//! point.

mod elim;
mod error;
pub mod linalg;
mod monomial;
mod parse;
mod poly;
mod subst;
pub mod univariate;
mod varset;

pub use elim::{bareiss_det, rational_sqrt, resultant};
pub use error::PolyError;
pub use monomial::Monomial;
pub use parse::{parse_vars_header, Parser};
pub use poly::{poly_arith, ArithOp, JetBound, Poly};
pub use subst::Substitution;
pub use univariate::UPoly;
pub use varset::VarSet;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// The coefficient field.
pub type Q = BigRational;

/// Rational from a pair of machine integers.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Integer as a rational.
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Formats a rational as `p` or `p/q`.
pub fn fmt_q(c: &Q) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Parses `p` or `p/q` (with optional sign) into a rational.
pub fn parse_q(s: &str) -> Result<Q, PolyError> {
    let s = s.trim();
    let bad = || PolyError::Parse {
        pos: 0,
        msg: format!("bad rational `{s}`"),
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(PolyError::DivisionByZero);
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}
