//! Recognition of DuVal (ADE) surface singularities, their minimal
//! resolution graphs, and where a smooth curve meets a `D_n` graph.

mod classify;
mod graph;
mod linear;
mod resolve;
mod series;

pub use classify::{classify_duval, cubic_factor_type, CubicType};
pub use graph::{CurvePosition, DualGraph};
pub use resolve::{
    curve_position, curve_position_param, minimal_resolution_dual_graph, resolve_with_curve,
    surface_crepant_count, MAX_DEPTH,
};

use std::fmt;

use blowup_engine::BlowupError;
use core_poly::PolyError;
use ideal_lab::IdealError;
use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DuValType {
    Smooth,
    A(u32),
    D(u32),
    E6,
    E7,
    E8,
    NotDuVal,
}

impl DuValType {
    /// The subscript, which is the Milnor number and the number of
    /// exceptional curves. Zero for smooth points.
    pub fn subscript(self) -> Option<u32> {
        match self {
            Self::Smooth => Some(0),
            Self::A(n) | Self::D(n) => Some(n),
            Self::E6 => Some(6),
            Self::E7 => Some(7),
            Self::E8 => Some(8),
            Self::NotDuVal => None,
        }
    }

    pub fn is_ade(self) -> bool {
        !matches!(self, Self::Smooth | Self::NotDuVal)
    }

    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        match s {
            "smooth" | "Smooth" => return Some(Self::Smooth),
            "E6" => return Some(Self::E6),
            "E7" => return Some(Self::E7),
            "E8" => return Some(Self::E8),
            "not-duval" | "NotDuVal" => return Some(Self::NotDuVal),
            _ => {}
        }
        let (head, n) = s.split_at(1);
        let n: u32 = n.parse().ok()?;
        match head {
            "A" if n >= 1 => Some(Self::A(n)),
            "D" if n >= 4 => Some(Self::D(n)),
            _ => None,
        }
    }
}

impl fmt::Display for DuValType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Smooth => write!(f, "Smooth"),
            Self::A(n) => write!(f, "A{n}"),
            Self::D(n) => write!(f, "D{n}"),
            Self::E6 => write!(f, "E6"),
            Self::E7 => write!(f, "E7"),
            Self::E8 => write!(f, "E8"),
            Self::NotDuVal => write!(f, "NotDuVal"),
        }
    }
}

impl Serialize for DuValType {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("expected a polynomial in 3 variables, got {0}")]
    WrongArity(usize),
    #[error("the origin is not on the surface")]
    NotThroughOrigin,
    #[error("input is not the expected normal form: {0}")]
    InputNotNormalForm(String),
    #[error("singularity is {0}, not of D type")]
    NotDType(DuValType),
    #[error("singularity is not DuVal")]
    NotDuVal,
    #[error("resolution needs points or lines not defined over Q")]
    NonRational,
    #[error("resolution exceeded depth {0}")]
    TooDeep(usize),
    #[error("curve strict transform misses the exceptional graph")]
    StrictTransformMissesGraph,
    #[error("curve meets the graph at {0}")]
    UnexpectedAttachment(String),
    #[error("curve is not a smooth germ on the surface: {0}")]
    BadCurve(String),
    #[error("resolution graph does not match {expected}: {detail}")]
    GraphMismatch { expected: DuValType, detail: String },
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Blowup(#[from] BlowupError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}
