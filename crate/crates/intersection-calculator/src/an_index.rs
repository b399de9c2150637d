//! Index of the contraction obtained from `x y + t^k U = 0` after blowing
//! up the line `x = z = t = 0`, making `E` Q-Cartier by blowing up
//! `(x, t^k)`, and contracting the transform of `F`.

use blowup_engine::{
    blowup_coordinate_center, blowup_two_generator_ideal, exceptional_divisors,
    strict_transform_of_divisor, Chart,
};
use core_poly::{q, qi, Poly, VarSet, Q};
use ideal_lab::{Ideal, ParamCurve};
use serde::Serialize;

use crate::{
    curve_divisor_length, solve_discrepancy, solve_ledger, DiscrepancySolution, IntersectionError,
    LineInChart, Relation,
};

/// `l . (E + F)` for a line in the contracted plane.
const L_DOT_E_PLUS_F: i64 = -1;
/// `l . K_Z` for a line in the contracted plane.
const L_DOT_K: i64 = -1;

/// Every intermediate object of the pipeline.
#[derive(Clone, Debug)]
pub struct AnIndexReport {
    pub input: Poly,
    pub first_chart: Chart,
    pub e: Ideal,
    pub f: Ideal,
    /// Least `k` with `k E` Cartier at the generic point of the line.
    pub cartier_multiple: u32,
    pub second_chart: Chart,
    pub multiple_e: Ideal,
    pub f_transform: Ideal,
    pub line: LineInChart,
    pub length: usize,
    pub l_e: Q,
    pub l_f: Q,
    pub solution: DiscrepancySolution,
}

#[derive(Serialize)]
struct Summary {
    cartier_multiple: u32,
    length: usize,
    l_e: String,
    l_f: String,
    solution: DiscrepancySolution,
}

impl AnIndexReport {
    pub fn summary_json(&self) -> serde_json::Value {
        serde_json::to_value(Summary {
            cartier_multiple: self.cartier_multiple,
            length: self.length,
            l_e: core_poly::fmt_q(&self.l_e),
            l_f: core_poly::fmt_q(&self.l_f),
            solution: self.solution.clone(),
        })
        .expect("plain data")
    }
}

fn step(msg: &str) -> IntersectionError {
    IntersectionError::Pipeline(msg.to_string())
}

/// Runs the pipeline on `f` over variables including `x, y, z, t`.
pub fn an_index_report(f: &Poly) -> Result<AnIndexReport, IntersectionError> {
    let vars = f.vars();
    for v in ["x", "y", "z", "t"] {
        vars.require(v)?;
    }
    let first = blowup_coordinate_center(f, &["x", "z", "t"], "t")?;
    let y = first.strict_transform.clone();
    let cv = &first.vars;
    let want_e = Ideal::parse(cv, &["x", "t"])?;
    let want_f = Ideal::parse(cv, &["y", "t"])?;
    let divisors = exceptional_divisors(&first)?;
    let find = |want: &Ideal| {
        divisors
            .iter()
            .find(|d| d.ideal.same_generators(want))
            .map(|d| d.ideal.clone())
            .ok_or_else(|| step(&format!("no exceptional component {want}")))
    };
    let (e, f_div) = (find(&want_e)?, find(&want_f)?);

    let ix = cv.require("x")?;
    let it = cv.require("t")?;
    let on_e = y.specialize(ix, &qi(0));
    let k = on_e.order_in(it);
    if k == 0 || on_e.is_zero() {
        return Err(step("E is not contained in the exceptional fibre"));
    }
    let g1 = Poly::var(cv, "x")?;
    let g2 = Poly::var(cv, "t")?.pow(k);
    let [second, _] = blowup_two_generator_ideal(&y, &g1, &g2, "u")?;
    let zv = &second.vars;
    let multiple_e = Ideal::new(vec![
        g1.embed(zv)?,
        g2.embed(zv)?,
        second.strict_transform.clone(),
    ])?;
    let f_transform = strict_transform_of_divisor(&f_div.embed(zv)?, &second)?;

    let line = LineInChart::new(ParamCurve::axis(zv, "x")?, "F", &second)?;
    if !f_transform.contains_curve(&line.curve)? {
        return Err(step("the x axis is not in the transform of F"));
    }
    let length = curve_divisor_length(&line, &multiple_e, &second)?;
    let l_e_value = q(length as i64, i64::from(k));
    let ledger = solve_ledger(&[
        Relation::parse("E + F", &L_DOT_E_PLUS_F.to_string())?,
        Relation::parse("E", &core_poly::fmt_q(&l_e_value))?,
    ])?;
    let l_e = ledger.get("E")?;
    let l_f = ledger.get("F")?;
    let solution = solve_discrepancy(&qi(L_DOT_K), &qi(0), &l_f)?;
    Ok(AnIndexReport {
        input: f.clone(),
        first_chart: first,
        e,
        f: f_div,
        cartier_multiple: k,
        second_chart: second,
        multiple_e,
        f_transform,
        line,
        length,
        l_e,
        l_f,
        solution,
    })
}

/// Index from the pipeline on `x y + z^(n+1) + t^(n+2)` with the line
/// `x = z = t = 0`.
pub fn an_index_fixture(n: u32) -> Result<u64, IntersectionError> {
    if !(1..=4).contains(&n) {
        return Err(step(&format!("n = {n} is outside 1..=4")));
    }
    let vars = VarSet::of(&["x", "y", "z", "t"]);
    let f = Poly::parse(&vars, &format!("x*y + z^{} + t^{}", n + 1, n + 2))?;
    Ok(an_index_report(&f)?.solution.index)
}
