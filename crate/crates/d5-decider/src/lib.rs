//! Normal forms for threefold germs whose general section through a marked
//! line is a `D5` point, and the decision whether the line can be
//! contracted to a terminal point.
//!
//! The normal form is
//! `x^2 + y^2 z + x z^2 + t (x z psi(z, t) + a x t^k + phi(y, z, t))`
//! with the line at `x = y = t = 0`.

mod decide;
mod normal_form;
mod reduce;
mod replay;

pub use decide::{case_split, decide_terminal, Case, ConditionReport, Verdict, Violation};
pub use normal_form::{D5NormalForm, PhiKey};
pub use reduce::{decide_input, reduce_to_normal_form, SECTION_SLOPES};
pub use replay::{
    replay_symbolic, replay_theorem_charts, ChartTrace, SingularSystemCheck, SymbolicNormalForm,
};

use blowup_engine::BlowupError;
use core_poly::PolyError;
use duval_classifier::ClassifyError;
use ideal_lab::IdealError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum D5Error {
    #[error("the general section through the line is not D5: {0}")]
    NotD5(String),
    #[error("the line sits at the end of the long arm of the D5 graph")]
    DFlPosition,
    #[error("reduction did not reach the normal form: {0}")]
    ReductionDiverged(String),
    #[error("bad input: {0}")]
    BadInput(String),
    #[error("invalid normal form: {0}")]
    InvalidNormalForm(String),
    #[error("chart replay differs from the expected trace: {0}")]
    ChartMismatch(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Blowup(#[from] BlowupError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
}
