use std::fmt;

use core_poly::{fmt_q, Q};
use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::normal_form::D5NormalForm;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Case {
    /// `y t` or `t^2` occurs in the degree-2 part of `phi`.
    Case1,
    Case2,
}

/// `Case1` iff `y t` or `t^2` has a nonzero coefficient in the degree-2 part
/// of `phi`.
pub fn case_split(nf: &D5NormalForm) -> Case {
    if !nf.coeff(1, 0, 1).is_zero() || !nf.coeff(0, 0, 2).is_zero() {
        Case::Case1
    } else {
        Case::Case2
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    ConditionI,
    ConditionII,
    DFl,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "tag")]
pub enum Verdict {
    TerminalExists { index: u32 },
    NoTerminalContraction { violated: Violation },
    NotApplicable { reason: String },
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::TerminalExists { index } => write!(f, "TerminalExists({index})"),
            Self::NoTerminalContraction { violated } => {
                write!(f, "NoTerminalContraction({violated:?})")
            }
            Self::NotApplicable { reason } => write!(f, "NotApplicable({reason})"),
        }
    }
}

fn ser_q<S: Serializer>(c: &Q, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_q(c))
}

/// The four quantities of condition (i) and the two of condition (ii).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub case: Case,
    /// The degree-2 part of `phi` is nonzero, so the point is `cD4`.
    pub cd4: bool,
    #[serde(serialize_with = "ser_q")]
    pub a_0_0_4: Q,
    #[serde(serialize_with = "ser_q")]
    pub a_1_0_2: Q,
    /// `2 a_0_1_2 - b psi(0, 0)`
    #[serde(serialize_with = "ser_q")]
    pub i_third: Q,
    /// `4 a_0_0_3 - b^2`
    #[serde(serialize_with = "ser_q")]
    pub i_fourth: Q,
    /// `a_0_2_1^2 - b a_0_2_1 + a_0_0_3`
    #[serde(serialize_with = "ser_q")]
    pub ii_first: Q,
    /// `a_0_1_2 - a_0_2_1 psi(0, 0)`
    #[serde(serialize_with = "ser_q")]
    pub ii_second: Q,
    pub condition_i: bool,
    pub condition_ii: bool,
    /// Remarks on borderline inputs.
    pub notes: Vec<String>,
}

impl ConditionReport {
    pub fn evaluate(nf: &D5NormalForm) -> Self {
        let b = &nf.b;
        let psi00 = nf.psi00();
        let a004 = nf.coeff(0, 0, 4);
        let a102 = nf.coeff(1, 0, 2);
        let a012 = nf.coeff(0, 1, 2);
        let a003 = nf.coeff(0, 0, 3);
        let a021 = nf.coeff(0, 2, 1);
        let two = Q::from_integer(2.into());
        let four = Q::from_integer(4.into());
        let i_third = &two * &a012 - b * &psi00;
        let i_fourth = &four * &a003 - b * b;
        let ii_first = &a021 * &a021 - b * &a021 + &a003;
        let ii_second = &a012 - &a021 * &psi00;
        let condition_i =
            a004.is_zero() && a102.is_zero() && i_third.is_zero() && i_fourth.is_zero();
        let condition_ii = ii_first.is_zero() && ii_second.is_zero();
        let case = case_split(nf);
        let cd4 = !nf.phi2().is_empty();
        let mut notes = Vec::new();
        if case == Case::Case1 && nf.coeff(1, 0, 1).is_zero() {
            notes.push("only t^2 occurs among y t, t^2 in the degree-2 part of phi".into());
        }
        if case == Case::Case2 && cd4 {
            notes.push(format!(
                "degree-2 part of phi is {} z t only",
                fmt_q(&nf.coeff(0, 1, 1))
            ));
        }
        Self {
            case,
            cd4,
            a_0_0_4: a004,
            a_1_0_2: a102,
            i_third,
            i_fourth,
            ii_first,
            ii_second,
            condition_i,
            condition_ii,
            notes,
        }
    }

    /// The six quantities in order.
    pub fn quantities(&self) -> [&Q; 6] {
        [
            &self.a_0_0_4,
            &self.a_1_0_2,
            &self.i_third,
            &self.i_fourth,
            &self.ii_first,
            &self.ii_second,
        ]
    }

    pub fn zero_pattern(&self) -> [bool; 6] {
        self.quantities().map(Zero::is_zero)
    }
}

/// A `cD4` point (nonzero degree-2 part of `phi`) always has a terminal
/// contraction. Otherwise one exists unless condition (i) or (ii) holds.
pub fn decide_terminal(nf: &D5NormalForm) -> (Verdict, ConditionReport) {
    let report = ConditionReport::evaluate(nf);
    let verdict = if report.cd4 {
        Verdict::TerminalExists { index: 4 }
    } else if report.condition_i {
        Verdict::NoTerminalContraction {
            violated: Violation::ConditionI,
        }
    } else if report.condition_ii {
        Verdict::NoTerminalContraction {
            violated: Violation::ConditionII,
        }
    } else {
        Verdict::TerminalExists { index: 4 }
    };
    (verdict, report)
}
