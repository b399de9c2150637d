//! Intersection numbers of curves with divisors in blow-up charts, small
//! linear ledgers of such numbers, and the discrepancy and index they
//! determine.

mod an_index;
mod discrepancy;
mod ledger;
mod length;

pub use an_index::{an_index_fixture, an_index_report, AnIndexReport};
pub use discrepancy::{solve_discrepancy, DiscrepancySolution};
pub use ledger::{parse_relations_json, solve_ledger, IntersectionLedger, Relation};
pub use length::{an_cartier_multiple, curve_divisor_length, curve_divisor_length_at, LineInChart};

use blowup_engine::BlowupError;
use core_poly::PolyError;
use ideal_lab::IdealError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntersectionError {
    #[error("the curve lies inside the divisor")]
    CurveInsideDivisor,
    #[error("the curve is not contained in the chart")]
    CurveNotInChart,
    #[error("curve, divisor and chart must share a variable set")]
    VarSetMismatch,
    #[error("the ledger does not determine {0}")]
    Underdetermined(String),
    #[error("the ledger relations are inconsistent")]
    Inconsistent,
    #[error("bad relation: {0}")]
    BadRelation(String),
    #[error("l.F vanishes, so the discrepancy is undefined")]
    DivisionByZero,
    #[error("pipeline step failed: {0}")]
    Pipeline(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Blowup(#[from] BlowupError),
}
