//! Jet-level reduction to the normal form.
//!
//! Accepted inputs: `Gamma` is given by three independent linear forms read
//! as `x, y, t` in that order, and once the quadratic and cubic parts are
//! normalized the slice `t = 0` is exactly `x^2 + y^2 z + x z^2`. Everything
//! else is reached by jet-level coordinate changes that are the identity
//! modulo `t`.

use std::collections::BTreeMap;

use core_poly::{linalg, qi, JetBound, Monomial, Poly, Substitution, VarSet, Q};
use duval_classifier::{classify_duval, curve_position, CurvePosition, DuValType};
use ideal_lab::{hessian_matrix, Ideal};
use num_traits::{One, Zero};

use crate::decide::{decide_terminal, ConditionReport, Verdict, Violation};
use crate::normal_form::{mono, term, xyzt, D5NormalForm, PhiKey};
use crate::D5Error;

/// The section through the line used for the position check is
/// `t = (3/7) x - (5/11) y`.
pub const SECTION_SLOPES: [(i64, i64); 2] = [(3, 7), (-5, 11)];

fn diverged(m: impl Into<String>) -> D5Error {
    D5Error::ReductionDiverged(m.into())
}

fn var(name: &str) -> Poly {
    Poly::var(&xyzt(), name).expect("x, y, z, t")
}

fn linear_rows(gamma: &Ideal) -> Result<Vec<Vec<Q>>, D5Error> {
    let n = gamma.vars().len();
    gamma
        .gens()
        .iter()
        .map(|g| {
            if g.terms().any(|(m, _)| m.degree() != 1) {
                return Err(D5Error::BadInput(format!("{g} is not a linear form")));
            }
            Ok((0..n).map(|i| g.coeff(&Monomial::var(n, i, 1))).collect())
        })
        .collect()
}

/// Rewrites `f` in coordinates `(x, y, z, t)` where the generators of
/// `gamma` become `x, y, t` and `z` is a leftover input coordinate.
fn to_line_coordinates(f: &Poly, gamma: &Ideal) -> Result<Poly, D5Error> {
    let vars = f.vars();
    if vars.len() != 4 {
        return Err(D5Error::BadInput(format!(
            "expected 4 variables, got {}",
            vars.len()
        )));
    }
    if gamma.vars() != vars {
        return Err(D5Error::BadInput(
            "line and equation use different variables".into(),
        ));
    }
    let rows = linear_rows(gamma)?;
    if rows.len() != 3 || linalg::rank(&rows) != 3 {
        return Err(D5Error::BadInput(
            "the line needs exactly three independent linear generators".into(),
        ));
    }
    let inv = (0..4)
        .find_map(|j| {
            let mut e = vec![Q::zero(); 4];
            e[j] = Q::one();
            let m = vec![rows[0].clone(), rows[1].clone(), e, rows[2].clone()];
            linalg::inverse(&m)
        })
        .expect("three independent rows extend to a basis");
    let target = xyzt();
    let mut s = Substitution::new(&target);
    for (i, row) in inv.iter().enumerate() {
        let mut img = Poly::zero(&target);
        for (j, c) in row.iter().enumerate() {
            img.add_term(Monomial::var(4, j, 1), c.clone());
        }
        s.set(vars.name(i), img);
    }
    let g = f.substitute(&s)?;
    let on_line = g
        .specialize(0, &Q::zero())
        .specialize(1, &Q::zero())
        .specialize(3, &Q::zero());
    if !on_line.is_zero() {
        return Err(D5Error::BadInput(
            "the line does not lie on the hypersurface".into(),
        ));
    }
    Ok(g)
}

/// The slice `t = a x + b y`, over `x, y, z`.
fn section(g: &Poly) -> Result<Poly, D5Error> {
    let v = VarSet::of(&["x", "y", "z"]);
    let [(an, ad), (bn, bd)] = SECTION_SLOPES;
    let mut img = Poly::zero(&v);
    img.add_term(Monomial::var(3, 0, 1), core_poly::q(an, ad));
    img.add_term(Monomial::var(3, 1, 1), core_poly::q(bn, bd));
    Ok(g.substitute(&Substitution::new(&v).with("t", img))?)
}

/// Checks the section type and the position of the line on it.
fn check_section(g: &Poly) -> Result<(), D5Error> {
    let s = section(g)?;
    let ty = classify_duval(&s).map_err(|e| D5Error::NotD5(e.to_string()))?;
    if ty != DuValType::D(5) {
        return Err(D5Error::NotD5(format!("section is {ty}")));
    }
    let line = Ideal::parse(s.vars(), &["x", "y"])?;
    match curve_position(&s, &line).map_err(|e| D5Error::NotD5(e.to_string()))? {
        CurvePosition::DFl => Err(D5Error::DFlPosition),
        CurvePosition::DFr => Ok(()),
    }
}

fn apply(g: &Poly, images: &[(&str, Poly)], d: JetBound) -> Result<Poly, D5Error> {
    let mut s = Substitution::new(&xyzt());
    for (n, p) in images {
        s.set(n, p.clone());
    }
    Ok(g.substitute(&s)?.truncate(d))
}

/// Makes the quadratic part `c x^2`.
fn normalize_quadratic(g: &Poly, d: JetBound) -> Result<Poly, D5Error> {
    let h = hessian_matrix(g).map_err(|_| diverged("the origin is not a singular point"))?;
    let r = linalg::rank(&h);
    if r != 1 {
        return Err(diverged(format!("quadratic part has rank {r}")));
    }
    let row = h
        .iter()
        .find(|r| r.iter().any(|c| !c.is_zero()))
        .expect("rank one");
    if row[0].is_zero() {
        return Err(diverged("quadratic part does not involve x"));
    }
    let (ly, lt) = (&row[1] / &row[0], &row[3] / &row[0]);
    let x = &(&var("x") - &var("y").scale(&ly)) - &var("t").scale(&lt);
    apply(g, &[("x", x)], d)
}

/// Makes the cubic part on `x = t = 0` equal to `c y^2 z`.
fn normalize_cubic(g: &Poly, d: JetBound) -> Result<Poly, D5Error> {
    let c = |e: [u32; 4]| g.coeff_of(&e);
    let (mu, nu) = (c([0, 2, 1, 0]), c([0, 3, 0, 0]));
    if !c([0, 1, 2, 0]).is_zero() || !c([0, 0, 3, 0]).is_zero() || mu.is_zero() {
        return Err(diverged(
            "cubic part on x = t = 0 is not y^2 times a form in z",
        ));
    }
    let z = (&var("z") - &var("y").scale(&nu)).scale(&(Q::one() / mu));
    apply(g, &[("z", z)], d)
}

/// Unit coefficients on `x^2`, `y^2 z`, `x z^2`.
fn rescale(g: &Poly, d: JetBound) -> Result<Poly, D5Error> {
    let c1 = g.coeff_of(&[2, 0, 0, 0]);
    let g = g.scale(&(Q::one() / c1));
    let c2 = g.coeff_of(&[0, 2, 1, 0]);
    let g = apply(&g, &[("z", var("z").scale(&(Q::one() / c2)))], d)?;
    let gamma = g.coeff_of(&[1, 0, 2, 0]);
    if gamma.is_zero() {
        return Err(diverged("no x z^2 term, the section is not D5"));
    }
    let g = apply(
        &g,
        &[("x", var("x").scale(&gamma)), ("y", var("y").scale(&gamma))],
        d,
    )?;
    Ok(g.scale(&(Q::one() / (&gamma * &gamma))))
}

/// Splits off `x^2 U(x, y, z, t)` and divides by the unit `U`, repeating
/// until the `x^2` coefficient is exactly 1 and no higher power of `x` is
/// left. Each round pushes the defect up by at least one degree.
fn weierstrass(g: &Poly, d: JetBound) -> Result<Poly, D5Error> {
    let mut g = g.clone();
    for _ in 0..=d.degree() + 1 {
        let mut u = Poly::zero(&xyzt());
        for (m, c) in g.terms() {
            if m.exp(0) >= 2 {
                let mut e = m.exps().to_vec();
                e[0] -= 2;
                u.add_term(Monomial::from_exps(e), c.clone());
            }
        }
        if u == Poly::one(&xyzt()) {
            return Ok(g);
        }
        let u0 = u.constant_term();
        if u0.is_zero() {
            return Err(diverged("x^2 coefficient is not a unit"));
        }
        let v = &u.scale(&(Q::one() / &u0)) - &Poly::one(&xyzt());
        // 1 / (1 + v) as a jet
        let mut inv = Poly::one(&xyzt());
        let mut p = Poly::one(&xyzt());
        for _ in 0..d.degree() {
            p = (&p * &(-&v)).truncate(d);
            if p.is_zero() {
                break;
            }
            inv = &inv + &p;
        }
        g = (&g * &inv.scale(&(Q::one() / u0))).truncate(d);
    }
    Err(diverged("Weierstrass division did not settle"))
}

/// Terms of the `x`-linear coefficient that the normal form does not allow
/// and that can be removed by `x -> x - P/2`: those with `t` and `y`, and
/// pure powers of `t` above the lowest.
fn removable_x_terms(l: &Poly) -> Poly {
    let lowest_t = l
        .terms()
        .filter(|(m, _)| m.exp(1) == 0 && m.exp(2) == 0 && m.exp(3) > 0)
        .map(|(m, _)| m.exp(3))
        .min();
    l.filter(|m, _| {
        let pure_t = m.exp(1) == 0 && m.exp(2) == 0;
        m.exp(3) > 0 && (m.exp(1) > 0 || (pure_t && Some(m.exp(3)) != lowest_t))
    })
}

/// One round of the coordinate changes that are the identity modulo `t`.
/// Returns `None` when nothing is left to remove.
fn step(g: &Poly, d: JetBound) -> Result<Option<Poly>, D5Error> {
    let g = weierstrass(g, d)?;
    let l = g.coefficient_in(0, 1);
    let r = g.coefficient_in(0, 0);

    let p = removable_x_terms(&l);
    if !p.is_zero() {
        let x = &var("x") - &p.scale(&core_poly::q(1, 2));
        return apply(&g, &[("x", x)], d).map(Some);
    }
    // y -> y - (c/2) t removes y z t
    let c = r.coeff_of(&[0, 1, 1, 1]);
    if !c.is_zero() {
        let y = &var("y") - &var("t").scale(&(c / qi(2)));
        return apply(&g, &[("y", y)], d).map(Some);
    }
    // z -> z - c t removes y^2 t
    let c = r.coeff_of(&[0, 2, 0, 1]);
    if !c.is_zero() {
        let z = &var("z") - &var("t").scale(&c);
        return apply(&g, &[("z", z)], d).map(Some);
    }
    // x -> x - c t z^(v-2) removes t z^v
    let mut shift = Poly::zero(&xyzt());
    for (m, c) in r.terms() {
        if m.exp(0) == 0 && m.exp(1) == 0 && m.exp(3) == 1 && m.exp(2) >= 2 {
            if m.exp(2) == 2 {
                return Err(diverged("t z^2 cannot be removed without touching x^2"));
            }
            shift = &shift + &term(&xyzt(), &[("z", m.exp(2) - 2), ("t", 1)], c.clone());
        }
    }
    if !shift.is_zero() {
        return apply(&g, &[("x", &var("x") - &shift)], d).map(Some);
    }
    Ok(None)
}

fn read_off(g: &Poly, d: JetBound) -> Result<D5NormalForm, D5Error> {
    let v = xyzt();
    let slice = g.specialize(3, &Q::zero());
    let head = Poly::parse(&v, "x^2 + y^2*z + x*z^2")?;
    if slice != head {
        return Err(diverged(format!(
            "slice t = 0 is {slice}, outside the accepted inputs"
        )));
    }
    if g.degree_in(0) > 2 || g.coeff_of(&[2, 0, 0, 0]) != Q::one() {
        return Err(diverged("x^2 coefficient is not 1"));
    }
    if g.terms().any(|(m, _)| m.exp(0) == 2 && m.degree() > 2) {
        return Err(diverged("x^2 coefficient is not 1"));
    }
    let l = g.coefficient_in(0, 1);
    let r = g.coefficient_in(0, 0);

    let pure_t = l.filter(|m, _| m.exp(1) == 0 && m.exp(2) == 0);
    if pure_t.len() > 1 {
        return Err(diverged("several pure powers of t multiply x"));
    }
    let (a, k) = match pure_t.leading() {
        Some((m, c)) if m.exp(3) >= 2 => (c.clone(), m.exp(3) - 1),
        Some((m, _)) => return Err(diverged(format!("x t^{} term", m.exp(3)))),
        None => (Q::zero(), 1),
    };
    let rest = &(&l - &pure_t) - &Poly::parse(&v, "z^2")?;
    if let Some((m, _)) = rest
        .terms()
        .find(|(m, _)| m.exp(1) > 0 || m.exp(2) == 0 || m.exp(3) == 0)
    {
        return Err(diverged(format!(
            "x-linear term {} is not allowed",
            Poly::term(&v, m.clone(), Q::one())
        )));
    }
    let psi = rest
        .div_monomial(&mono(&v, &[("z", 1), ("t", 1)]))
        .expect("every remaining term has z and t");

    let phi_t = &r - &Poly::parse(&v, "y^2*z")?;
    let phi = phi_t
        .div_monomial(&mono(&v, &[("t", 1)]))
        .ok_or_else(|| diverged("a t-free term survives"))?;
    let mut table = BTreeMap::new();
    for (m, c) in phi.terms() {
        let key = PhiKey(m.exp(1), m.exp(2), m.exp(3));
        if key.degree() < 2 || key.is_forbidden() {
            return Err(diverged(format!("phi still contains the {key} term")));
        }
        table.insert(key, c.clone());
    }
    let nf = D5NormalForm::new(psi, a, k, table, d)?;
    let b = g.coeff_of(&[1, 0, 0, 2]);
    if b != nf.b || nf.equation().truncate(d) != *g {
        return Err(diverged("read-off record does not rebuild the equation"));
    }
    Ok(nf)
}

/// Brings `f` with the marked line `gamma` to the normal form, working with
/// jets of degree at most `d`.
pub fn reduce_to_normal_form(
    f: &Poly,
    gamma: &Ideal,
    d: JetBound,
) -> Result<D5NormalForm, D5Error> {
    let g = to_line_coordinates(f, gamma)?;
    check_section(&g)?;
    let g = g.truncate(d);
    let g = normalize_quadratic(&g, d)?;
    let g = normalize_cubic(&g, d)?;
    let mut g = rescale(&g, d)?;
    let cap = 4 * d.degree() as usize + 8;
    for _ in 0..cap {
        match step(&g, d)? {
            Some(next) => g = next,
            None => return read_off(&weierstrass(&g, d)?, d),
        }
    }
    Err(diverged(format!("no fixed point after {cap} rounds")))
}

/// Reduction followed by the decision. A line at the end of the long arm
/// short-circuits, and an input that is not a cD5 point along the line is
/// `NotApplicable`.
pub fn decide_input(
    f: &Poly,
    gamma: &Ideal,
    d: JetBound,
) -> Result<(Verdict, Option<D5NormalForm>, Option<ConditionReport>), D5Error> {
    match reduce_to_normal_form(f, gamma, d) {
        Ok(nf) => {
            let (v, r) = decide_terminal(&nf);
            Ok((v, Some(nf), Some(r)))
        }
        Err(D5Error::DFlPosition) => Ok((
            Verdict::NoTerminalContraction {
                violated: Violation::DFl,
            },
            None,
            None,
        )),
        Err(D5Error::NotD5(reason)) => Ok((Verdict::NotApplicable { reason }, None, None)),
        Err(e) => Err(e),
    }
}
