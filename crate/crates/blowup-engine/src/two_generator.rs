use core_poly::{Monomial, Poly, Substitution};

use crate::chart::{BlowupSpec, Chart, ChartKind};
use crate::BlowupError;

/// Terms of `p` not divisible by `m`.
fn remainder_mod_monomial(p: &Poly, m: &Monomial) -> Poly {
    p.filter(|t, _| !m.divides(t))
}

/// Writes `f = a * mono + b * other` where `mono` is a single term.
fn decompose(f: &Poly, mono: &Poly, other: &Poly) -> Option<(Poly, Poly)> {
    let (m, _) = mono.leading()?;
    let rf = remainder_mod_monomial(f, m);
    let b = if rf.is_zero() {
        Poly::zero(f.vars())
    } else {
        rf.div_exact(&remainder_mod_monomial(other, m))?
    };
    let a = (f - &(&b * other)).div_exact(mono)?;
    Some((a, b))
}

/// The variable `v` when `p` is a constant multiple of a power of `v`.
fn power_of_variable(p: &Poly) -> Option<String> {
    if p.len() != 1 {
        return None;
    }
    let (m, _) = p.leading()?;
    match p.support().as_slice() {
        [i] if m.exp(*i) > 0 => Some(p.vars().name(*i).to_string()),
        _ => None,
    }
}

/// Blow-up of the ideal `(g1, g2)` where at least one generator is a single
/// term. A new variable `ratio` is adjoined. The first chart has
/// `ratio * g1 = g2` (there `g1` generates the ideal), the second
/// `ratio * g2 = g1`.
pub fn blowup_two_generator_ideal(
    f: &Poly,
    g1: &Poly,
    g2: &Poly,
    ratio: &str,
) -> Result<[Chart; 2], BlowupError> {
    let src = f.vars();
    BlowupSpec::TwoGeneratorIdeal {
        g1: g1.clone(),
        g2: g2.clone(),
    }
    .validate(src)?;
    if src.contains(ratio) {
        return Err(BlowupError::RatioNameTaken(ratio.to_string()));
    }
    let (a, b) = if g1.len() == 1 {
        decompose(f, g1, g2)
    } else if g2.len() == 1 {
        decompose(f, g2, g1).map(|(b, a)| (a, b))
    } else {
        return Err(BlowupError::UnsupportedCenter(
            "neither generator is a monomial".into(),
        ));
    }
    .ok_or_else(|| {
        BlowupError::UnsupportedCenter(format!("{f} is not a combination of {g1} and {g2}"))
    })?;

    let vars = src.extend(&[ratio])?;
    let s = Poly::var(&vars, ratio)?;
    let (a, b, g1, g2, f) = (
        a.embed(&vars)?,
        b.embed(&vars)?,
        g1.embed(&vars)?,
        g2.embed(&vars)?,
        f.embed(&vars)?,
    );
    let make = |principal: &Poly, other: &Poly, strict: Poly| Chart {
        name: format!("{ratio}=({other})/({principal})"),
        kind: ChartKind::TwoGenerator,
        source_vars: src.clone(),
        vars: vars.clone(),
        substitution: Substitution::identity(&vars),
        exceptional_coordinate: power_of_variable(principal),
        exceptional: principal.clone(),
        exceptional_multiplicity: 1,
        strict_transform: strict,
        total_transform: f.clone(),
        ambient_relations: vec![&(&s * principal) - other],
        center: Vec::new(),
    };
    Ok([
        make(&g1, &g2, &a + &(&b * &s)),
        make(&g2, &g1, &(&a * &s) + &b),
    ])
}
