//! Ideals of polynomials and the local analytic invariants built on them:
//! singular loci, jet-space membership, Milnor numbers and Hessian corank.

mod curve;
mod ideal;
mod jet;

pub use curve::{curve_in_locus, ParamCurve};
pub use ideal::{hypersurface_singular_ideal, Ideal};
pub use jet::{
    hessian_corank, hessian_matrix, jet_membership, milnor_number, milnor_number_auto, JetMode,
    JetSpaceBasis, MILNOR_JET_CAP,
};

use core_poly::PolyError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("an ideal needs at least one nonzero generator")]
    Empty,
    #[error("generators live over different variable sets")]
    VarSetMismatch,
    #[error("degree {degree} exceeds the jet bound {bound}")]
    DegreeExceedsBound { degree: u32, bound: u32 },
    #[error("Jacobian span did not stabilize up to jet degree {bound}")]
    NotStabilized { bound: u32 },
    #[error("polynomial has constant or linear terms")]
    NotSingular,
    #[error("curve parametrization is constant")]
    ConstantCurve,
    #[error("curve has {got} coordinate images, expected {expected}")]
    CurveArity { expected: usize, got: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
}
