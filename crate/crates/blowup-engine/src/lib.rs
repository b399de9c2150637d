//! Chart-by-chart blow-ups of affine hypersurfaces: along coordinate
//! subspaces, at weighted points, and along ideals with two generators.

mod chart;
mod coordinate;
mod divisor;
mod two_generator;

pub use chart::{BlowupSpec, Chart, ChartKind, DivisorInChart};
pub use coordinate::{blowup_coordinate_center, charts_consistent, weighted_blowup_point};
pub use divisor::{exceptional_divisors, strict_transform_of_divisor};
pub use two_generator::blowup_two_generator_ideal;

use core_poly::{Poly, PolyError};
use ideal_lab::IdealError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BlowupError {
    #[error("a coordinate center needs at least two variables")]
    CenterTooSmall,
    #[error("chart variable {0} is not part of the center")]
    ChartNotInCenter(String),
    #[error("center variable {0} is repeated")]
    RepeatedCenterVariable(String),
    #[error("weights must be positive and one per variable")]
    BadWeights,
    #[error("chart {var} has weight {weight}; only weight-1 charts are supported")]
    QuotientChartUnsupported { var: String, weight: u32 },
    #[error("the transform vanishes identically")]
    ZeroTransform,
    #[error("unsupported center: {0}")]
    UnsupportedCenter(String),
    #[error("strict transform vanishes on the whole exceptional hyperplane")]
    DegenerateRestriction,
    #[error("ratio variable {0} already exists")]
    RatioNameTaken(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
}

/// Discrepancy of the exceptional divisor when a hypersurface is blown up
/// along a smooth center of ambient codimension `c` along which it has
/// multiplicity `m`.
pub fn discrepancy_smooth_center(c: u32, m: u32) -> i64 {
    i64::from(c) - 1 - i64::from(m)
}

/// Power of `v` that divides `p`, with the quotient.
pub(crate) fn strip_variable(p: &Poly, i: usize) -> (u32, Poly) {
    let k = p.order_in(i);
    if k == 0 {
        return (0, p.clone());
    }
    let m = core_poly::Monomial::var(p.vars().len(), i, k);
    (k, p.div_monomial(&m).expect("order_in divides every term"))
}
