use core_poly::{Monomial, Poly, Substitution, VarSet};

use crate::chart::{BlowupSpec, Chart, ChartKind};
use crate::{strip_variable, BlowupError};

fn chart_name(vars: &VarSet, chart: usize, powers: &[(usize, u32)]) -> String {
    let c = vars.name(chart);
    powers
        .iter()
        .map(|&(i, w)| {
            let v = vars.name(i);
            if w == 1 {
                format!("{v}={v}{c}")
            } else {
                format!("{v}={v}{c}^{w}")
            }
        })
        .collect::<Vec<_>>()
        .join(", ")
}

/// Chart map `v -> v * c^w(v)`, then strict transform by the largest power
/// of `c`.
fn monomial_chart(
    f: &Poly,
    chart: usize,
    powers: &[(usize, u32)],
    kind: ChartKind,
    center: Vec<String>,
) -> Result<Chart, BlowupError> {
    let vars = f.vars().clone();
    let c = Poly::var_at(&vars, chart);
    let mut sub = Substitution::new(&vars);
    for &(i, w) in powers {
        sub.set(vars.name(i), &Poly::var_at(&vars, i) * &c.pow(w));
    }
    let total = f.substitute(&sub)?;
    if total.is_zero() {
        return Err(BlowupError::ZeroTransform);
    }
    let (m, strict) = strip_variable(&total, chart);
    Ok(Chart {
        name: chart_name(&vars, chart, powers),
        kind,
        source_vars: vars.clone(),
        vars: vars.clone(),
        substitution: sub,
        exceptional_coordinate: Some(vars.name(chart).to_string()),
        exceptional: c,
        exceptional_multiplicity: m,
        strict_transform: strict,
        total_transform: total,
        ambient_relations: Vec::new(),
        center,
    })
}

/// Blow-up along the coordinate subspace where all `center` variables
/// vanish, in the chart where `chart_var` generates the center.
pub fn blowup_coordinate_center(
    f: &Poly,
    center: &[&str],
    chart_var: &str,
) -> Result<Chart, BlowupError> {
    let vars = f.vars();
    BlowupSpec::coordinate(center).validate(vars)?;
    if !center.contains(&chart_var) {
        return Err(BlowupError::ChartNotInCenter(chart_var.to_string()));
    }
    let chart = vars.require(chart_var)?;
    let powers: Vec<(usize, u32)> = center
        .iter()
        .filter(|&&v| v != chart_var)
        .map(|v| (vars.index(v).expect("validated"), 1))
        .collect();
    let out = monomial_chart(
        f,
        chart,
        &powers,
        ChartKind::Coordinate,
        center.iter().map(|s| s.to_string()).collect(),
    )?;
    debug_assert_eq!(
        out.exceptional_multiplicity,
        center_order(f, center).unwrap_or(0)
    );
    Ok(out)
}

/// Least total degree in the center variables over the terms of `f`.
fn center_order(f: &Poly, center: &[&str]) -> Option<u32> {
    let idx: Vec<usize> = center.iter().filter_map(|v| f.vars().index(v)).collect();
    f.terms()
        .map(|(m, _)| idx.iter().map(|&i| m.exp(i)).sum())
        .min()
}

/// Weighted blow-up of the origin, in the chart of a weight-1 variable.
pub fn weighted_blowup_point(
    f: &Poly,
    weights: &[u32],
    chart_var: &str,
) -> Result<Chart, BlowupError> {
    let vars = f.vars();
    BlowupSpec::WeightedPoint(weights.to_vec()).validate(vars)?;
    let chart = vars.require(chart_var)?;
    if weights[chart] != 1 {
        return Err(BlowupError::QuotientChartUnsupported {
            var: chart_var.to_string(),
            weight: weights[chart],
        });
    }
    let powers: Vec<(usize, u32)> = (0..vars.len())
        .filter(|&i| i != chart)
        .map(|i| (i, weights[i]))
        .collect();
    let out = monomial_chart(
        f,
        chart,
        &powers,
        ChartKind::Weighted,
        vars.names().to_vec(),
    )?;
    debug_assert_eq!(
        u64::from(out.exceptional_multiplicity),
        f.weighted_order(weights).unwrap_or(0)
    );
    Ok(out)
}

/// Whether two charts of one coordinate blow-up glue: the strict transform
/// of chart `b`, pulled back along the transition map into chart `a` and
/// multiplied by the matching exceptional power, equals that of chart `a`.
pub fn charts_consistent(a: &Chart, b: &Chart) -> Result<bool, BlowupError> {
    if a.kind != ChartKind::Coordinate || b.kind != ChartKind::Coordinate || a.center != b.center {
        return Err(BlowupError::UnsupportedCenter(
            "transition needs two coordinate charts of one center".into(),
        ));
    }
    let vars = a.vars.clone();
    let (Some(ia), Some(ib)) = (a.exceptional_index(), b.exceptional_index()) else {
        return Ok(false);
    };
    if ia == ib {
        return Ok(a.strict_transform == b.strict_transform);
    }
    let center: Vec<usize> = a
        .center
        .iter()
        .map(|v| vars.require(v))
        .collect::<Result<_, _>>()?;
    let m = i64::from(b.exceptional_multiplicity);
    let mut pulled = Poly::zero(&vars);
    for (mono, c) in b.strict_transform.terms() {
        let e: Vec<i64> = mono.exps().iter().map(|&x| i64::from(x)).collect();
        let others: i64 = center
            .iter()
            .filter(|&&i| i != ia && i != ib)
            .map(|&i| e[i])
            .sum();
        let mut out = e.clone();
        out[ia] = e[ib];
        out[ib] = e[ib] - e[ia] - others + m;
        if out.iter().any(|&x| x < 0) {
            return Ok(false);
        }
        pulled.add_term(
            Monomial::from_exps(out.into_iter().map(|x| x as u32).collect()),
            c.clone(),
        );
    }
    Ok(pulled == a.strict_transform)
}
