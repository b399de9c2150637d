use core_poly::{Poly, UPoly, Q};
use ideal_lab::Ideal;
use num_traits::Zero;

use crate::chart::{Chart, ChartKind, DivisorInChart};
use crate::{strip_variable, BlowupError};

/// Factors found over Q, with multiplicities: variables from the monomial
/// content, rational roots of a univariate cofactor, then whatever remains
/// as a single factor.
fn split_factors(r: &Poly) -> Vec<(Poly, u32)> {
    let vars = r.vars();
    let content = r.monomial_content();
    let mut out: Vec<(Poly, u32)> = content
        .exps()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| (Poly::var_at(vars, i), e))
        .collect();
    let h = r.div_monomial(&content).expect("content divides");
    if h.is_constant() {
        return out;
    }
    if let [j] = h.support().as_slice() {
        let u = UPoly::from_poly(&h, *j).expect("univariate");
        let mut rest = u.clone();
        if let Ok(roots) = u.rational_roots() {
            for (root, k) in roots {
                let lin = UPoly::linear_root(&root);
                out.push((lin.to_poly(vars, *j), k));
                for _ in 0..k {
                    rest = rest.div_exact(&lin).expect("root divides");
                }
            }
        }
        if rest.degree().unwrap_or(0) > 0 {
            let sqf = rest.squarefree_part();
            let mut k = 0;
            let mut left = rest.clone();
            while let Some(q) = left.div_exact(&sqf) {
                left = q;
                k += 1;
                if left.degree().unwrap_or(0) == 0 {
                    break;
                }
            }
            let k = if left.degree().unwrap_or(0) == 0 {
                k
            } else {
                1
            };
            out.push((sqf.to_poly(vars, *j).primitive(), k));
        }
        return out;
    }
    match h.sqrt_exact().or_else(|| (-&h).sqrt_exact()) {
        Some(s) => out.push((s.primitive(), 2)),
        None => out.push((h.primitive(), 1)),
    }
    out
}

/// Components of the exceptional locus on the strict transform, labelled
/// `E1`, `E2`, ... (just `E` when there is one).
///
/// For a two-generator chart the answer is the single scheme cut out by the
/// principal generator, the strict transform and the relation.
pub fn exceptional_divisors(chart: &Chart) -> Result<Vec<DivisorInChart>, BlowupError> {
    let mut comps: Vec<DivisorInChart> = Vec::new();
    match chart.kind {
        ChartKind::TwoGenerator => {
            let mut gens = vec![chart.exceptional.clone(), chart.strict_transform.clone()];
            gens.extend(chart.ambient_relations.iter().cloned());
            comps.push(DivisorInChart {
                label: String::new(),
                ideal: Ideal::new(gens)?,
                multiplicity: 1,
            });
        }
        ChartKind::Coordinate | ChartKind::Weighted => {
            let c = chart
                .exceptional_index()
                .expect("monomial charts have a coordinate");
            let r = chart.strict_transform.specialize(c, &Q::zero());
            if r.is_zero() {
                return Err(BlowupError::DegenerateRestriction);
            }
            let e = Poly::var_at(&chart.vars, c);
            for (factor, k) in split_factors(&r) {
                comps.push(DivisorInChart {
                    label: String::new(),
                    ideal: Ideal::new(vec![e.clone(), factor])?,
                    multiplicity: k,
                });
            }
        }
    }
    let n = comps.len();
    for (i, d) in comps.iter_mut().enumerate() {
        d.label = if n == 1 {
            "E".into()
        } else {
            format!("E{}", i + 1)
        };
    }
    Ok(comps)
}

/// Pushes the generators of a divisor through the chart map and removes the
/// largest power of the exceptional coordinate from each.
///
/// When the divisor is the center itself the naive transform is the unit
/// ideal; then the exceptional components that dominate the center are
/// returned instead, namely those whose equation involves another center
/// variable.
pub fn strict_transform_of_divisor(d: &Ideal, chart: &Chart) -> Result<Ideal, BlowupError> {
    let c = chart.exceptional_index();
    let mut gens = Vec::new();
    for g in d.gens() {
        let img = g.embed(&chart.vars)?.substitute(&chart.substitution)?;
        gens.push(match c {
            Some(i) => strip_variable(&img, i).1,
            None => img,
        });
    }
    gens.extend(chart.ambient_relations.iter().cloned());
    let naive = Ideal::new(gens)?;
    if chart.kind == ChartKind::TwoGenerator {
        return saturate_on_coordinates(&naive, c);
    }
    let is_unit = naive.gens().iter().any(|g| g.is_constant());
    if !(is_unit && chart.kind == ChartKind::Coordinate) {
        return Ok(naive);
    }
    let center = Ideal::new(
        chart
            .center
            .iter()
            .map(|v| Poly::var(&chart.source_vars, v))
            .collect::<Result<Vec<_>, _>>()?,
    )?;
    if !d.same_generators(&center) {
        return Ok(naive);
    }
    let chart_var = c.expect("coordinate chart");
    let others: Vec<usize> = chart
        .center
        .iter()
        .filter_map(|v| chart.vars.index(v))
        .filter(|&i| i != chart_var)
        .collect();
    let restricted = chart.strict_transform.specialize(chart_var, &Q::zero());
    let dominant: Vec<Poly> = split_factors(&restricted)
        .into_iter()
        .map(|(p, _)| p)
        .filter(|p| others.iter().any(|&i| p.involves(i)))
        .collect();
    if dominant.is_empty() {
        return Ok(naive);
    }
    let product = dominant
        .iter()
        .fold(Poly::one(&chart.vars), |acc, p| &acc * p);
    Ok(Ideal::new(vec![
        Poly::var_at(&chart.vars, chart_var),
        product,
    ])?)
}

/// One saturation pass by the exceptional coordinate: generators that are
/// single coordinates are used to set those coordinates to zero in the
/// others, and the exceptional coordinate is then divided out.
fn saturate_on_coordinates(ideal: &Ideal, c: Option<usize>) -> Result<Ideal, BlowupError> {
    let Some(c) = c else {
        return Ok(ideal.clone());
    };
    let is_coordinate = |g: &Poly| g.len() == 1 && g.total_degree() == Some(1);
    let coords: Vec<usize> = ideal
        .gens()
        .iter()
        .filter(|g| is_coordinate(g))
        .flat_map(Poly::support)
        .collect();
    let mut out = Vec::new();
    for g in ideal.gens() {
        if is_coordinate(g) {
            out.push(g.clone());
            continue;
        }
        let h = coords
            .iter()
            .fold(g.clone(), |acc, &i| acc.specialize(i, &Q::zero()));
        if !h.is_zero() {
            out.push(strip_variable(&h, c).1);
        }
    }
    Ok(Ideal::new(out)?)
}
