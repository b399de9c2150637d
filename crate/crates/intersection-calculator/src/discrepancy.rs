use core_poly::{fmt_q, Q};
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::IntersectionError;

/// `K_Z = p^* K_W + a F`, solved against a curve `l`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiscrepancySolution {
    #[serde(serialize_with = "ser_q")]
    pub a: Q,
    /// Denominator of `a` (fixture convention).
    pub index: u64,
}

fn ser_q<S: serde::Serializer>(c: &Q, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_q(c))
}

/// `a = (l.K_Z - l.p^*K_W) / l.F`. For a curve contracted by `p` the
/// pulled-back term is zero. The index is reported as the denominator of
/// `a`.
pub fn solve_discrepancy(
    l_kz: &Q,
    l_pullback: &Q,
    l_f: &Q,
) -> Result<DiscrepancySolution, IntersectionError> {
    if l_f.is_zero() {
        return Err(IntersectionError::DivisionByZero);
    }
    let a = (l_kz - l_pullback) / l_f;
    let index = u64::try_from(a.denom().abs()).unwrap_or(u64::MAX);
    Ok(DiscrepancySolution { a, index })
}

impl DiscrepancySolution {
    pub fn is_positive(&self) -> bool {
        self.a.is_positive()
    }
}
