use std::collections::BTreeMap;
use std::fmt;

use core_poly::linalg::{self, Solution};
use core_poly::{fmt_q, parse_q, Poly, VarSet, Q};
use num_traits::Zero;
use serde::Deserialize;

use crate::IntersectionError;

/// `sum coeffs[label] * (l . label) = rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub coeffs: BTreeMap<String, Q>,
    pub rhs: Q,
}

fn labels_in(text: &str) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    let b = text.as_bytes();
    let mut i = 0;
    while i < b.len() {
        if b[i].is_ascii_alphabetic() || b[i] == b'_' {
            let start = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            let id = &text[start..i];
            if !out.iter().any(|o| o == id) {
                out.push(id.to_string());
            }
        } else {
            i += 1;
        }
    }
    out
}

impl Relation {
    /// Parses a linear combination such as `E + 2*F` against a rational
    /// right-hand side.
    pub fn parse(lhs: &str, rhs: &str) -> Result<Self, IntersectionError> {
        let bad = |m: &str| IntersectionError::BadRelation(format!("{lhs} = {rhs}: {m}"));
        let labels = labels_in(lhs);
        if labels.is_empty() {
            return Err(bad("no labels"));
        }
        let names: Vec<&str> = labels.iter().map(String::as_str).collect();
        let vars = VarSet::of(&names);
        let p = Poly::parse(&vars, lhs).map_err(|e| bad(&e.to_string()))?;
        let mut rhs = parse_q(rhs).map_err(|e| bad(&e.to_string()))?;
        let mut coeffs = BTreeMap::new();
        for (m, c) in p.terms() {
            match m.degree() {
                0 => rhs -= c,
                1 => {
                    let i = m.exps().iter().position(|&e| e == 1).expect("degree one");
                    coeffs.insert(labels[i].clone(), c.clone());
                }
                _ => return Err(bad("not linear")),
            }
        }
        if coeffs.is_empty() {
            return Err(bad("no labels survive"));
        }
        Ok(Self { coeffs, rhs })
    }

    pub fn holds(&self, values: &BTreeMap<String, Q>) -> Option<bool> {
        let mut acc = Q::zero();
        for (k, c) in &self.coeffs {
            acc += c * values.get(k)?;
        }
        Some(acc == self.rhs)
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .map(|(k, c)| {
                if c == &core_poly::qi(1) {
                    format!("l.{k}")
                } else {
                    format!("{}*l.{k}", fmt_q(c))
                }
            })
            .collect();
        write!(f, "{} = {}", terms.join(" + "), fmt_q(&self.rhs))
    }
}

#[derive(Deserialize)]
struct RelationJson {
    lhs: String,
    rhs: serde_json::Value,
}

/// Reads `[{"lhs": "E + 2*F", "rhs": "-1"}, ...]`; `rhs` may also be a
/// JSON integer.
pub fn parse_relations_json(text: &str) -> Result<Vec<Relation>, IntersectionError> {
    let raw: Vec<RelationJson> =
        serde_json::from_str(text).map_err(|e| IntersectionError::BadRelation(e.to_string()))?;
    raw.iter()
        .map(|r| {
            let rhs = match &r.rhs {
                serde_json::Value::String(s) => s.clone(),
                serde_json::Value::Number(n) if n.is_i64() => n.to_string(),
                other => {
                    return Err(IntersectionError::BadRelation(format!(
                        "rhs {other} is not exact"
                    )))
                }
            };
            Relation::parse(&r.lhs, &rhs)
        })
        .collect()
}

/// Intersection numbers of a fixed curve with labelled divisors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionLedger {
    pub entries: BTreeMap<String, Q>,
    pub relations: Vec<Relation>,
    /// Labels the relations leave free.
    pub free: Vec<String>,
}

impl IntersectionLedger {
    pub fn get(&self, label: &str) -> Result<Q, IntersectionError> {
        self.entries
            .get(label)
            .cloned()
            .ok_or_else(|| IntersectionError::Underdetermined(label.to_string()))
    }
}

/// Solves the relations exactly. Labels the system does not pin down are
/// listed in `free`; asking for them gives `Underdetermined`.
pub fn solve_ledger(relations: &[Relation]) -> Result<IntersectionLedger, IntersectionError> {
    let mut labels: Vec<String> = relations
        .iter()
        .flat_map(|r| r.coeffs.keys().cloned())
        .collect();
    labels.sort();
    labels.dedup();
    let a: Vec<Vec<Q>> = relations
        .iter()
        .map(|r| {
            labels
                .iter()
                .map(|l| r.coeffs.get(l).cloned().unwrap_or_else(Q::zero))
                .collect()
        })
        .collect();
    let b: Vec<Q> = relations.iter().map(|r| r.rhs.clone()).collect();
    let Solution::Solved(values) = linalg::solve(&a, &b) else {
        return Err(IntersectionError::Inconsistent);
    };
    let mut entries = BTreeMap::new();
    let mut free = Vec::new();
    for (l, v) in labels.into_iter().zip(values) {
        match v {
            Some(v) => {
                entries.insert(l, v);
            }
            None => free.push(l),
        }
    }
    Ok(IntersectionLedger {
        entries,
        relations: relations.to_vec(),
        free,
    })
}
