//! Human and JSON renderings.

use blowup_engine::{Chart, DivisorInChart};
use core_poly::{fmt_q, Poly};
use d5_decider::{ConditionReport, D5NormalForm, Verdict};
use serde_json::{json, Value};

fn strings(ps: &[Poly]) -> Vec<String> {
    ps.iter().map(Poly::to_string).collect()
}

pub fn blowup_json(input: &Poly, chart: &Chart, divisors: &[DivisorInChart]) -> Value {
    let substitution: serde_json::Map<String, Value> = chart
        .source_vars
        .names()
        .iter()
        .filter_map(|n| {
            let img = chart.substitution.image_of(n).ok()?;
            Some((n.clone(), json!(img.to_string())))
        })
        .collect();
    let divisors: Vec<Value> = divisors
        .iter()
        .map(|d| {
            json!({
                "label": d.label,
                "generators": strings(d.ideal.gens()),
                "multiplicity": d.multiplicity,
            })
        })
        .collect();
    json!({
        "schema": 1,
        "command": "blowup",
        "input": { "vars": input.vars().names(), "poly": input.to_string() },
        "chart": {
            "name": chart.name,
            "center": chart.center,
            "vars": chart.vars.names(),
            "substitution": substitution,
            "exceptional": chart.exceptional.to_string(),
            "m": chart.exceptional_multiplicity,
            "total": chart.total_transform.to_string(),
            "strict": chart.strict_transform.to_string(),
            "relations": strings(&chart.ambient_relations),
            "divisors": divisors,
        },
    })
}

pub fn blowup_text(chart: &Chart, divisors: &[DivisorInChart]) -> String {
    let mut out = format!("chart {}\n", chart.name);
    out.push_str(&format!("vars: {}\n", chart.vars.names().join(" ")));
    for n in chart.source_vars.names() {
        if let Ok(img) = chart.substitution.image_of(n) {
            if img.to_string() != *n {
                out.push_str(&format!("  {n} -> {img}\n"));
            }
        }
    }
    out.push_str(&format!("m = {}\n", chart.exceptional_multiplicity));
    out.push_str(&format!("total: {}\n", chart.total_transform));
    out.push_str(&format!("strict: {}\n", chart.strict_transform));
    for r in &chart.ambient_relations {
        out.push_str(&format!("relation: {r}\n"));
    }
    for d in divisors {
        let gens = strings(d.ideal.gens()).join(", ");
        out.push_str(&format!(
            "exceptional {}: ({gens}) mult {}\n",
            d.label, d.multiplicity
        ));
    }
    out
}

pub fn decide_text(
    verdict: &Verdict,
    nf: Option<&D5NormalForm>,
    cond: Option<&ConditionReport>,
) -> String {
    let mut out = String::new();
    if let Some(nf) = nf {
        out.push_str(&format!("normal form: {}\n", nf.equation()));
        out.push_str(&format!(
            "psi = {}, a = {}, k = {}, b = {}\n",
            nf.psi,
            fmt_q(&nf.a),
            nf.k,
            fmt_q(&nf.b)
        ));
    }
    if let Some(c) = cond {
        out.push_str(&format!("case: {:?}\n", c.case));
        let names = [
            "a_0_0_4",
            "a_1_0_2",
            "2*a_0_1_2 - b*psi(0,0)",
            "4*a_0_0_3 - b^2",
            "a_0_2_1^2 - b*a_0_2_1 + a_0_0_3",
            "a_0_1_2 - a_0_2_1*psi(0,0)",
        ];
        for (n, v) in names.iter().zip(c.quantities()) {
            out.push_str(&format!("  {n} = {}\n", fmt_q(v)));
        }
        out.push_str(&format!(
            "condition (i): {}\ncondition (ii): {}\n",
            c.condition_i, c.condition_ii
        ));
        for note in &c.notes {
            out.push_str(&format!("note: {note}\n"));
        }
    }
    out.push_str(&format!("verdict: {verdict}\n"));
    out
}
