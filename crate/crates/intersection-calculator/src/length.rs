use blowup_engine::Chart;
use core_poly::{Poly, UPoly, VarSet, Q};
use ideal_lab::{Ideal, ParamCurve};

use crate::IntersectionError;

/// A parametrized curve lying on every equation of a chart.
#[derive(Clone, Debug)]
pub struct LineInChart {
    pub curve: ParamCurve,
    /// Name of the divisor the curve was taken in, for reports.
    pub inside: String,
}

impl LineInChart {
    pub fn new(curve: ParamCurve, inside: &str, chart: &Chart) -> Result<Self, IntersectionError> {
        if curve.vars() != &chart.vars {
            return Err(IntersectionError::VarSetMismatch);
        }
        for eq in chart.equations() {
            if !curve.pullback(&eq)?.is_zero() {
                return Err(IntersectionError::CurveNotInChart);
            }
        }
        Ok(Self {
            curve,
            inside: inside.to_string(),
        })
    }
}

/// Gcd of the generators of `d` pulled back along `l`.
fn gcd_along(l: &LineInChart, d: &Ideal, ambient: &Chart) -> Result<UPoly, IntersectionError> {
    if d.vars() != &ambient.vars || l.curve.vars() != &ambient.vars {
        return Err(IntersectionError::VarSetMismatch);
    }
    let pulled: Vec<UPoly> = d
        .gens()
        .iter()
        .map(|g| l.curve.pullback(g))
        .collect::<Result<_, _>>()?;
    let nonzero: Vec<&UPoly> = pulled.iter().filter(|p| !p.is_zero()).collect();
    if nonzero.is_empty() {
        return Err(IntersectionError::CurveInsideDivisor);
    }
    Ok(UPoly::gcd_all(nonzero))
}

/// Length of the scheme `l ∩ V(D)` on the affine line of the parameter:
/// the degree of the gcd of the pulled-back generators. Conjugate
/// intersection points (say over `z^3 + 1 = 0`) are counted through that
/// gcd without leaving the rationals.
pub fn curve_divisor_length(
    l: &LineInChart,
    d: &Ideal,
    ambient: &Chart,
) -> Result<usize, IntersectionError> {
    Ok(gcd_along(l, d, ambient)?.degree().unwrap_or(0))
}

/// The part of [`curve_divisor_length`] supported at the parameter value
/// `s0`: the multiplicity of `s0` as a root of the gcd.
pub fn curve_divisor_length_at(
    l: &LineInChart,
    d: &Ideal,
    ambient: &Chart,
    s0: &Q,
) -> Result<usize, IntersectionError> {
    let mut g = gcd_along(l, d, ambient)?;
    let factor = UPoly::linear_root(s0);
    let mut k = 0;
    while let Some(next) = g.div_exact(&factor) {
        g = next;
        k += 1;
    }
    Ok(k)
}

/// Equation of the Cartier divisor `n C` on the surface `x y = z^n`, where
/// `C` is the curve `(x - z^p, y - z^(n-p))` and `gcd(n, p) = 1`.
///
/// With `x = a^n`, `y = b^n`, `z = a b` the surface is the quotient of the
/// plane by `μ_n` acting with weights `(1, -1)`. The preimage of `C` is the
/// semi-invariant `b^p - a^(n-p) = 0`, so its `n`-th power descends.
pub fn an_cartier_multiple(vars: &VarSet, n: u32, p: u32) -> Result<Poly, IntersectionError> {
    let idx = |name: &str| vars.require(name);
    let (x, y, z) = (idx("x")?, idx("y")?, idx("z")?);
    if p == 0 || p >= n {
        return Err(IntersectionError::Pipeline(format!(
            "need 0 < p < n, got p={p}, n={n}"
        )));
    }
    let (n64, p64) = (u64::from(n), u64::from(p));
    let mut out = Poly::zero(vars);
    let mut binom = core_poly::qi(1);
    for k in 0..=n64 {
        // (-a^(n-p))^k (b^p)^(n-k) * C(n, k)
        let ea = (n64 - p64) * k;
        let eb = p64 * (n64 - k);
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let (common, rest_a, rest_b) = (ea.min(eb), ea - ea.min(eb), eb - ea.min(eb));
        let mut exps = vec![0u32; vars.len()];
        exps[z] = common as u32;
        exps[x] = (rest_a / n64) as u32;
        exps[y] = (rest_b / n64) as u32;
        debug_assert!(rest_a % n64 == 0 && rest_b % n64 == 0);
        out.add_term(
            core_poly::Monomial::from_exps(exps),
            &binom * core_poly::qi(sign),
        );
        binom = binom * core_poly::qi((n64 - k) as i64) / core_poly::qi((k + 1) as i64);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use blowup_engine::blowup_two_generator_ideal;
    use core_poly::VarSet;

    fn ex_chart() -> Chart {
        let v = VarSet::of(&["x", "y", "z", "t"]);
        let f = Poly::parse(&v, "x*y + z^3*t^2 + t^2").unwrap();
        let g1 = Poly::parse(&v, "x").unwrap();
        let g2 = Poly::parse(&v, "t^2").unwrap();
        let [c, _] = blowup_two_generator_ideal(&f, &g1, &g2, "u").unwrap();
        c
    }

    #[test]
    fn reduced_point_on_the_line() {
        let chart = ex_chart();
        let l = LineInChart::new(ParamCurve::axis(&chart.vars, "x").unwrap(), "F", &chart).unwrap();
        let two_e = Ideal::parse(&chart.vars, &["x", "t^2", "y + z^3*u + u"]).unwrap();
        assert_eq!(curve_divisor_length(&l, &two_e, &chart).unwrap(), 1);
        let f = Ideal::parse(&chart.vars, &["y", "t", "u"]).unwrap();
        assert_eq!(
            curve_divisor_length(&l, &f, &chart),
            Err(IntersectionError::CurveInsideDivisor)
        );
        let far = Ideal::parse(&chart.vars, &["x - 1", "z - 1"]).unwrap();
        assert_eq!(curve_divisor_length(&l, &far, &chart).unwrap(), 0);
        let y_axis = ParamCurve::axis(&chart.vars, "y").unwrap();
        assert!(matches!(
            LineInChart::new(y_axis, "F", &chart),
            Err(IntersectionError::CurveNotInChart)
        ));
    }

    #[test]
    fn cartier_multiples_on_a4() {
        let v = VarSet::of(&["x", "y", "z"]);
        let g = an_cartier_multiple(&v, 5, 1).unwrap();
        let want = Poly::parse(&v, "y - 5*z^4 + 10*x*z^3 - 10*x^2*z^2 + 5*x^3*z - x^4").unwrap();
        assert_eq!(g, want);
        // vanishes on E = (x - z, y - z^4)
        let e = ParamCurve::new(
            "s",
            &v,
            vec![
                UPoly::from_ints(&[0, 1]),
                UPoly::from_ints(&[0, 0, 0, 0, 1]),
                UPoly::from_ints(&[0, 1]),
            ],
        )
        .unwrap();
        assert!(e.pullback(&g).unwrap().is_zero());
    }
}
