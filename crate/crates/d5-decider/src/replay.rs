//! Replays the chain of blow-ups over a normal form and checks every
//! intermediate object against closed formulas built from the record.
//!
//! Coefficients may be extra variables ("symbolic"), in which case each
//! check is an identity of polynomials in those variables.

use std::collections::BTreeSet;

use blowup_engine::{
    blowup_coordinate_center, blowup_two_generator_ideal, exceptional_divisors, Chart,
};
use core_poly::{resultant, Monomial, Poly, Substitution, UPoly, VarSet, Q};
use ideal_lab::{jet_membership, Ideal};
use num_traits::{One, Zero};

use crate::decide::{case_split, Case};
use crate::normal_form::{D5NormalForm, PhiKey};
use crate::D5Error;

/// Normal form whose coefficients are polynomials in parameter variables.
/// The first four variables are `x, y, z, t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicNormalForm {
    pub vars: VarSet,
    /// `psi(z, t)`.
    pub psi: Poly,
    /// Free of `x, y, z, t`.
    pub a: Poly,
    pub k: u32,
    /// `phi(y, z, t)` including its degree-2 part.
    pub phi: Poly,
}

fn base_names() -> [&'static str; 4] {
    ["x", "y", "z", "t"]
}

impl From<&D5NormalForm> for SymbolicNormalForm {
    fn from(nf: &D5NormalForm) -> Self {
        let vars = VarSet::of(&base_names());
        Self {
            psi: nf.psi.embed(&vars).expect("z, t"),
            a: Poly::constant(&vars, nf.a.clone()),
            k: nf.k,
            phi: nf.phi_poly(),
            vars,
        }
    }
}

impl SymbolicNormalForm {
    /// Every coefficient is its own variable: `a`, `p_i_j` for `z^i t^j` in
    /// `psi` with `i + j <= psi_degree`, and `a_i_j_k` for every allowed
    /// monomial of `phi` of degree `2..=phi_degree` except `y t` and `t^2`.
    pub fn generic(k: u32, psi_degree: u32, phi_degree: u32) -> Self {
        let mut names: Vec<String> = base_names().iter().map(|s| s.to_string()).collect();
        names.push("a".into());
        let mut psi_keys = Vec::new();
        for d in 0..=psi_degree {
            for i in 0..=d {
                psi_keys.push((i, d - i));
                names.push(format!("p_{i}_{}", d - i));
            }
        }
        let mut phi_keys = Vec::new();
        for d in 2..=phi_degree {
            for i in 0..=d {
                for j in 0..=d - i {
                    let key = PhiKey(i, j, d - i - j);
                    if key.is_forbidden() || key == PhiKey(1, 0, 1) || key == PhiKey(0, 0, 2) {
                        continue;
                    }
                    phi_keys.push(key);
                    names.push(key.to_string());
                }
            }
        }
        let vars = VarSet::new(&names).expect("distinct identifiers");
        let n = vars.len();
        let m = |pairs: &[(usize, u32)]| {
            let mut e = vec![0; n];
            for &(i, k) in pairs {
                e[i] += k;
            }
            Monomial::from_exps(e)
        };
        let idx = |s: &str| vars.index(s).expect("declared");
        let mut psi = Poly::zero(&vars);
        for (i, j) in psi_keys {
            psi.add_term(
                m(&[(2, i), (3, j), (idx(&format!("p_{i}_{j}")), 1)]),
                Q::one(),
            );
        }
        let mut phi = Poly::zero(&vars);
        for key in phi_keys {
            let PhiKey(i, j, l) = key;
            phi.add_term(
                m(&[(1, i), (2, j), (3, l), (idx(&key.to_string()), 1)]),
                Q::one(),
            );
        }
        Self {
            a: Poly::var(&vars, "a").expect("declared"),
            vars,
            psi,
            k,
            phi,
        }
    }

    fn var(&self, name: &str) -> Poly {
        Poly::var(&self.vars, name).expect("base variable")
    }

    fn mono(&self, pairs: &[(&str, u32)]) -> Poly {
        let mut e = vec![0; self.vars.len()];
        for (n, k) in pairs {
            e[self.vars.index(n).expect("base variable")] += k;
        }
        Poly::term(&self.vars, Monomial::from_exps(e), Q::one())
    }

    pub fn equation(&self) -> Poly {
        let x = self.var("x");
        let inner = &(&(&self.mono(&[("x", 1), ("z", 1)]) * &self.psi)
            + &(&self.a * &self.mono(&[("x", 1), ("t", self.k)])))
            + &self.phi;
        &(&(&self.mono(&[("x", 2)]) + &self.mono(&[("y", 2), ("z", 1)]))
            + &(&x * &self.mono(&[("z", 2)])))
            + &(&self.var("t") * &inner)
    }

    /// Coefficient of `y^i z^j t^k` in `phi`, a polynomial in the
    /// parameters.
    pub fn phi_coeff(&self, i: u32, j: u32, k: u32) -> Poly {
        let (iy, iz, it) = (1, 2, 3);
        let mut out = Poly::zero(&self.vars);
        for (m, c) in self.phi.terms() {
            if (m.exp(iy), m.exp(iz), m.exp(it)) == (i, j, k) {
                let mut e = m.exps().to_vec();
                e[iy] = 0;
                e[iz] = 0;
                e[it] = 0;
                out.add_term(Monomial::from_exps(e), c.clone());
            }
        }
        out
    }

    /// Pieces of `(1/t) phi(y t, z, t) = a3 z + z^2 f + t (z phi1 + t phi2)`
    /// computed monomial by monomial: `y^i z^j t^k` goes to `y^i z^j
    /// t^(i+k-1)`.
    fn split_phi(&self) -> Result<PhiPieces, D5Error> {
        let v = &self.vars;
        let (iy, iz, it) = (1, 2, 3);
        let mut p = PhiPieces::zero(v);
        for (m, c) in self.phi.terms() {
            let (i, j, k) = (m.exp(iy), m.exp(iz), m.exp(it));
            if i + k == 0 {
                return Err(D5Error::InvalidNormalForm(format!("phi has z^{j}")));
            }
            let s = i + k - 1;
            let mut e = m.exps().to_vec();
            e[it] = 0;
            match s {
                0 if j == 1 && i == 0 => {
                    e[iz] = 0;
                    p.a3.add_term(Monomial::from_exps(e), c.clone());
                }
                0 if j >= 2 => {
                    e[iz] = j - 2;
                    p.f.add_term(Monomial::from_exps(e), c.clone());
                }
                1 if j >= 1 => {
                    e[iz] = j - 1;
                    p.phi1.add_term(Monomial::from_exps(e), c.clone());
                }
                s if s >= 2 => {
                    e[it] = s - 2;
                    p.phi2.add_term(Monomial::from_exps(e), c.clone());
                }
                _ => {
                    return Err(D5Error::InvalidNormalForm(format!(
                        "phi term y^{i} z^{j} t^{k} is outside the second case"
                    )))
                }
            }
        }
        Ok(p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct PhiPieces {
    a3: Poly,
    f: Poly,
    phi1: Poly,
    phi2: Poly,
}

impl PhiPieces {
    fn zero(v: &VarSet) -> Self {
        let z = Poly::zero(v);
        Self {
            a3: z.clone(),
            f: z.clone(),
            phi1: z.clone(),
            phi2: z,
        }
    }
}

/// The singular locus of the final chart along the exceptional curve over
/// `y = 0`, written in `x` (the `x`-coordinate of the point) and the ratio
/// `w`.
#[derive(Clone, Debug)]
pub struct SingularSystemCheck {
    /// 2x2 minors of the Jacobian split by powers of `w`, plus the equation
    /// of the curve.
    pub derived: Vec<Poly>,
    /// The same system written with `f(0,0)`, `psi(0,0)` and friends.
    pub expected: Vec<Poly>,
    /// `expected` at `x = -f(0,0)`; zero entries are identities.
    pub at_minus_f: Vec<Poly>,
    /// `expected` at `x = -b/2`.
    pub at_minus_half_b: Vec<Poly>,
    /// Resultant in `x` of the first and last entries of `expected`.
    pub resultant: Poly,
    /// `(4 a_0_0_3 - b^2)(a_0_2_1^2 - b a_0_2_1 + a_0_0_3)`.
    pub resultant_expected: Poly,
}

/// Everything the replay produced, over the chart variables.
#[derive(Clone, Debug)]
pub struct ChartTrace {
    pub input: Poly,
    /// Blow-up of the line, chart `x = x t, y = y t`.
    pub w_chart: Chart,
    pub e: Ideal,
    pub f: Ideal,
    /// Blow-up of `E`, chart `x = x t`.
    pub w1_chart: Chart,
    pub f1: Ideal,
    pub e_w1: Ideal,
    /// `f(y, z)`, `phi1(y, z)`, `phi2(y, z, t)` from the chart.
    pub f_piece: Poly,
    pub phi1: Poly,
    pub phi2: Poly,
    /// Second generator of the ideal of `2 E` next to `t^2`.
    pub g: Poly,
    /// Blow-up of `(t^2, g)` in the chart `w t^2 = g`.
    pub final_chart: Chart,
    /// `z = t = 0` cut with the final chart equations.
    pub curves: Vec<Poly>,
    /// Rows: the relation `g - w t^2` and the strict transform; columns
    /// `x, y, z, t, w`; evaluated at `y = z = t = 0`.
    pub jacobian: [[Poly; 5]; 2],
    pub singular: SingularSystemCheck,
    /// `(name, computed, expected)` for `f(0,0)`, `d phi2/dt`, `d phi2/dy`,
    /// `phi2(0)`, `phi1(0,0)`.
    pub dictionary: Vec<(String, Poly, Poly)>,
}

fn mismatch(what: &str, got: &Poly, want: &Poly) -> D5Error {
    D5Error::ChartMismatch(format!("{what}: computed {got}, expected {want}"))
}

fn expect_eq(what: &str, got: &Poly, want: &Poly) -> Result<(), D5Error> {
    if got == want {
        Ok(())
    } else {
        Err(mismatch(what, got, want))
    }
}

fn at_zero(p: &Poly, names: &[&str]) -> Poly {
    let mut p = p.clone();
    for n in names {
        if let Some(i) = p.vars().index(n) {
            p = p.specialize(i, &Q::zero());
        }
    }
    p
}

fn d(p: &Poly, name: &str) -> Poly {
    p.partial_derivative(name).expect("chart variable")
}

fn find_divisor(chart: &Chart, want: &Ideal, what: &str) -> Result<Ideal, D5Error> {
    let ds = exceptional_divisors(chart)?;
    ds.iter()
        .find(|d| d.ideal.same_generators(want))
        .map(|d| d.ideal.clone())
        .ok_or_else(|| {
            let got: Vec<String> = ds.iter().map(|d| d.ideal.to_string()).collect();
            D5Error::ChartMismatch(format!("{what}: expected {want}, found {}", got.join(", ")))
        })
}

/// Whether `p` and `q` generate the same ideal, checked as exact
/// combinations of bounded degree over the variables that occur.
fn same_ideal(p: &[Poly], q: &[Poly]) -> Result<bool, D5Error> {
    let mut names: BTreeSet<String> = BTreeSet::new();
    for g in p.iter().chain(q) {
        for i in g.support() {
            names.insert(g.vars().name(i).to_string());
        }
    }
    if names.is_empty() {
        return Ok(p.iter().chain(q).all(Poly::is_zero));
    }
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    let small = VarSet::of(&names);
    let emb = |s: &[Poly]| -> Result<Vec<Poly>, D5Error> {
        s.iter()
            .filter(|g| !g.is_zero())
            .map(|g| g.embed(&small).map_err(D5Error::from))
            .collect()
    };
    let (p, q) = (emb(p)?, emb(q)?);
    let bound = p
        .iter()
        .chain(&q)
        .filter_map(Poly::total_degree)
        .max()
        .unwrap_or(0)
        + 1;
    let inside = |a: &[Poly], b: &[Poly]| -> Result<bool, D5Error> {
        if b.is_empty() {
            return Ok(a.is_empty());
        }
        let ideal = Ideal::new(b.to_vec())?;
        for g in a {
            if !jet_membership(g, &ideal, bound)? {
                return Ok(false);
            }
        }
        Ok(true)
    };
    Ok(inside(&p, &q)? && inside(&q, &p)?)
}

/// Replays the charts over a numeric record.
pub fn replay_theorem_charts(nf: &D5NormalForm) -> Result<ChartTrace, D5Error> {
    if case_split(nf) == Case::Case1 {
        return Err(D5Error::InvalidNormalForm(
            "the replay needs a record without y t and t^2 in phi".into(),
        ));
    }
    replay_symbolic(&SymbolicNormalForm::from(nf))
}

pub fn replay_symbolic(nf: &SymbolicNormalForm) -> Result<ChartTrace, D5Error> {
    let v = nf.vars.clone();
    let x = nf.var("x");
    let y = nf.var("y");
    let z = nf.var("z");
    let t = nf.var("t");
    let pieces = nf.split_phi()?;
    let input = nf.equation();

    // phi(y t, z, t), and its quotient by t
    let phi_yt = nf
        .phi
        .substitute(&Substitution::new(&v).with("y", &y * &t))?;
    let phi_over_t = phi_yt
        .div_exact(&t)
        .ok_or_else(|| D5Error::InvalidNormalForm("phi(y t, z, t) is not divisible by t".into()))?;

    let w_chart = blowup_coordinate_center(&input, &["x", "y", "t"], "t")?;
    let xz_psi = &(&x * &z) * &nf.psi;
    let a_x = &nf.a * &x;
    let want_w = &(&(&(&(&nf.mono(&[("x", 2), ("t", 1)])
        + &nf.mono(&[("y", 2), ("t", 1), ("z", 1)]))
        + &nf.mono(&[("x", 1), ("z", 2)]))
        + &(&xz_psi * &t))
        + &(&a_x * &nf.mono(&[("t", nf.k + 1)])))
        + &phi_yt;
    expect_eq(
        "transform after blowing up the line",
        &w_chart.strict_transform,
        &want_w,
    )?;
    let e = find_divisor(&w_chart, &Ideal::new(vec![t.clone(), x.clone()])?, "E")?;
    let f = find_divisor(&w_chart, &Ideal::new(vec![t.clone(), z.clone()])?, "F")?;

    let w1_chart = blowup_coordinate_center(&w_chart.strict_transform, &["x", "t"], "t")?;
    let want_w1 = &(&(&(&(&nf.mono(&[("x", 2), ("t", 2)]) + &nf.mono(&[("y", 2), ("z", 1)]))
        + &nf.mono(&[("x", 1), ("z", 2)]))
        + &(&xz_psi * &t))
        + &(&a_x * &nf.mono(&[("t", nf.k + 1)])))
        + &phi_over_t;
    let eq = w1_chart.strict_transform.clone();
    expect_eq("transform after blowing up E", &eq, &want_w1)?;

    let f1 = find_divisor(&w1_chart, &Ideal::new(vec![t.clone(), z.clone()])?, "F1")?;
    let tail = at_zero(&phi_over_t, &["t"]).div_exact(&z).ok_or_else(|| {
        D5Error::ChartMismatch("phi(y t, z, t)/t at t = 0 is not divisible by z".into())
    })?;
    let e_w1_gen = &(&(&y * &y) + &(&x * &z)) + &tail;
    let e_w1 = find_divisor(
        &w1_chart,
        &Ideal::new(vec![t.clone(), e_w1_gen])?,
        "E on W1",
    )?;

    // pieces read off the chart equation
    let p = &eq.coefficient_in(0, 0) - &nf.mono(&[("y", 2), ("z", 1)]);
    let it = 3;
    let p0 = p.coefficient_in(it, 0);
    let a3 = p0.coefficient_in(2, 1).filter(|m, _| m.exp(1) == 0);
    let f_piece = (&p0 - &(&a3 * &z))
        .div_exact(&(&z * &z))
        .ok_or_else(|| D5Error::ChartMismatch("t-free part is not a3 z + z^2 f".into()))?;
    let phi1 = p
        .coefficient_in(it, 1)
        .div_exact(&z)
        .ok_or_else(|| D5Error::ChartMismatch("t-linear part is not divisible by z".into()))?;
    let phi2 = (&(&p - &p0) - &(&p.coefficient_in(it, 1) * &t))
        .div_exact(&(&t * &t))
        .expect("remaining terms carry t^2");
    expect_eq("a3", &a3, &pieces.a3)?;
    expect_eq("f", &f_piece, &pieces.f)?;
    expect_eq("phi1", &phi1, &pieces.phi1)?;
    expect_eq("phi2", &phi2, &pieces.phi2)?;

    let t2 = &t * &t;
    let g = &(&(&(&(&(&y * &y) + &(&x * &z)) + &a3) + &(&(&x * &t) * &nf.psi)) + &(&z * &f_piece))
        + &(&t * &phi1);
    let a_term = &a_x * &nf.mono(&[("t", nf.k - 1)]);
    let big_phi = &(&(&x * &x) + &a_term) + &phi2;
    expect_eq("z g + t^2 Phi", &eq, &(&(&z * &g) + &(&t2 * &big_phi)))?;

    let [final_chart, _] = blowup_two_generator_ideal(&eq, &t2, &g, "w")?;
    let cv = final_chart.vars.clone();
    let up = |p: &Poly| p.embed(&cv).expect("chart extends the variables");
    let w = Poly::var(&cv, "w")?;
    let rel = &up(&g) - &(&w * &up(&t2));
    let want_rel = -&final_chart.ambient_relations[0].clone();
    expect_eq("relation", &rel, &want_rel)?;
    let want_strict = &(&(&up(&x) * &up(&x)) + &(&w * &up(&z))) + &(&up(&a_term) + &up(&phi2));
    expect_eq(
        "final strict transform",
        &final_chart.strict_transform,
        &want_strict,
    )?;

    let curves: Vec<Poly> = [&rel, &final_chart.strict_transform]
        .iter()
        .map(|p| at_zero(p, &["z", "t"]))
        .collect();
    let want_curves = [
        &(&up(&y) * &up(&y)) + &up(&a3),
        &(&up(&x) * &up(&x))
            + &(&at_zero(&up(&a_term), &["t"]) + &at_zero(&up(&phi2), &["z", "t"])),
    ];
    expect_eq("curve equation in y", &curves[0], &want_curves[0])?;
    expect_eq("curve equation in x", &curves[1], &want_curves[1])?;

    // Jacobian on the curve over y = 0, which needs a3 = 0
    if !a3.is_zero() && a3.is_constant() {
        return Err(D5Error::InvalidNormalForm(format!(
            "a3 = {a3} is nonzero, so the point is cD4"
        )));
    }
    let mut kill = vec!["y", "z", "t"];
    let a3_names: Vec<String> = a3
        .support()
        .into_iter()
        .map(|i| a3.vars().name(i).to_string())
        .collect();
    kill.extend(a3_names.iter().map(String::as_str));
    let rows = [&rel, &final_chart.strict_transform];
    let cols = ["x", "y", "z", "t", "w"];
    let jacobian: [[Poly; 5]; 2] = rows.map(|r| cols.map(|c| at_zero(&d(r, c), &kill)));

    let fz = |p: &Poly| at_zero(&up(p), &kill);
    let f00 = fz(&f_piece);
    let psi00 = fz(&nf.psi);
    let phi1_00 = fz(&phi1);
    let phi2_0 = fz(&phi2);
    let d_phi2 = |c: &str| fz(&d(&phi2, c));
    let b = if nf.k == 1 {
        fz(&nf.a)
    } else {
        Poly::zero(&cv)
    };
    let c2 = if nf.k == 2 {
        fz(&nf.a)
    } else {
        Poly::zero(&cv)
    };
    let xx = up(&x);
    let a_big = &xx + &f00;
    let b_big = &(&xx * &psi00) + &phi1_00;
    let zero = Poly::zero(&cv);
    let want_j = [
        [
            zero.clone(),
            zero.clone(),
            a_big.clone(),
            b_big.clone(),
            zero.clone(),
        ],
        [
            &(&xx * &Poly::constant(&cv, Q::from_integer(2.into()))) + &b,
            d_phi2("y"),
            &w + &d_phi2("z"),
            &(&c2 * &xx) + &d_phi2("t"),
            zero.clone(),
        ],
    ];
    for (i, (got, want)) in jacobian.iter().zip(&want_j).enumerate() {
        for (j, (g0, w0)) in got.iter().zip(want).enumerate() {
            expect_eq(&format!("Jacobian entry ({i}, {})", cols[j]), g0, w0)?;
        }
    }

    let on_curve = at_zero(&final_chart.strict_transform, &kill);
    let wi = cv.index("w").expect("ratio");
    let mut derived = Vec::new();
    for i in 0..5 {
        for j in i + 1..5 {
            let m = &(&jacobian[0][i] * &jacobian[1][j]) - &(&jacobian[0][j] * &jacobian[1][i]);
            for (_, c) in m.coefficients_in(wi) {
                if !c.is_zero() && !derived.contains(&c) {
                    derived.push(c);
                }
            }
        }
    }
    derived.push(on_curve.clone());
    let two = Poly::constant(&cv, Q::from_integer(2.into()));
    let e1 = &(&(&two * &xx) + &b) * &a_big;
    let e5 = &(&(&xx * &xx) + &(&b * &xx)) + &phi2_0;
    let expected = vec![
        e1.clone(),
        &(&(&c2 * &xx) + &d_phi2("t")) * &a_big,
        &d_phi2("y") * &a_big,
        b_big.clone(),
        e5.clone(),
    ];
    if on_curve != e5 {
        return Err(mismatch("point on the curve", &on_curve, &e5));
    }
    if !same_ideal(&derived, &expected)? {
        return Err(D5Error::ChartMismatch(format!(
            "minors [{}] do not generate the expected system",
            derived
                .iter()
                .map(Poly::to_string)
                .collect::<Vec<_>>()
                .join(", ")
        )));
    }

    let ix = cv.index("x").expect("x");
    let subst_x = |val: &Poly| -> Result<Vec<Poly>, D5Error> {
        let s = Substitution::new(&cv).with("x", val.clone());
        expected
            .iter()
            .map(|p| p.substitute(&s).map_err(D5Error::from))
            .collect()
    };
    let at_minus_f = subst_x(&-&f00)?;
    let half_b = b.scale(&core_poly::q(-1, 2));
    let at_minus_half_b = subst_x(&half_b)?;
    let res = resultant(&e1, &e5, ix);
    let four = Poly::constant(&cv, Q::from_integer(4.into()));
    let resultant_expected =
        &(&(&four * &phi2_0) - &(&b * &b)) * &(&(&(&f00 * &f00) - &(&b * &f00)) + &phi2_0);
    if res != resultant_expected {
        return Err(mismatch("resultant", &res, &resultant_expected));
    }

    let dictionary = vec![
        ("f(0,0)".to_string(), f00, nf.phi_coeff(0, 2, 1)),
        (
            "d phi2/dt (0)".to_string(),
            d_phi2("t"),
            nf.phi_coeff(0, 0, 4),
        ),
        (
            "d phi2/dy (0)".to_string(),
            d_phi2("y"),
            nf.phi_coeff(1, 0, 2),
        ),
        ("phi2(0)".to_string(), phi2_0, nf.phi_coeff(0, 0, 3)),
        ("phi1(0,0)".to_string(), phi1_00, nf.phi_coeff(0, 1, 2)),
    ];
    let dictionary: Vec<(String, Poly, Poly)> = dictionary
        .into_iter()
        .map(|(n, got, want)| (n, got, up(&want)))
        .collect();
    for (n, got, want) in &dictionary {
        expect_eq(n, got, want)?;
    }

    Ok(ChartTrace {
        input,
        w_chart,
        e,
        f,
        w1_chart,
        f1,
        e_w1,
        f_piece,
        phi1,
        phi2,
        g,
        final_chart,
        curves,
        jacobian,
        singular: SingularSystemCheck {
            derived,
            expected,
            at_minus_f,
            at_minus_half_b,
            resultant: res,
            resultant_expected,
        },
        dictionary,
    })
}

impl ChartTrace {
    /// For numeric records: an `x`-coordinate of a singular point of the
    /// final chart on the curve over `y = 0`, if any. The roots of the
    /// first equation are `-f(0,0)` and `-b/2`.
    pub fn singular_root(&self) -> Option<Q> {
        let s = &self.singular;
        let vars = s.expected[0].vars();
        let ix = vars.index("x")?;
        let e1 = UPoly::from_poly(&s.expected[0], ix)?;
        let roots = e1.rational_roots().ok()?;
        roots
            .into_iter()
            .map(|(r, _)| r)
            .find(|r| s.expected.iter().all(|p| p.specialize(ix, r).is_zero()))
    }

    /// One line per check, for reports.
    pub fn summary_lines(&self) -> Vec<String> {
        let mut out = vec![
            format!("W: {}", self.w_chart.strict_transform),
            format!("E = {}, F = {}", self.e, self.f),
            format!("W1: {}", self.w1_chart.strict_transform),
            format!("F1 = {}, E on W1 = {}", self.f1, self.e_w1),
            format!("2E generated by t^2 and {}", self.g),
            format!("final chart: {} = 0", self.final_chart.strict_transform),
            format!(
                "curves: {}",
                self.curves
                    .iter()
                    .map(Poly::to_string)
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
            format!(
                "singular system: {}",
                self.singular
                    .expected
                    .iter()
                    .map(Poly::to_string)
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
            format!("resultant in x: {}", self.singular.resultant),
        ];
        for (n, got, _) in &self.dictionary {
            out.push(format!("{n} = {got}"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decide::decide_terminal;
    use core_poly::{qi, JetBound};
    use std::collections::BTreeMap;

    #[test]
    fn generic_replay_all_k() {
        for k in 1..=3 {
            let nf = SymbolicNormalForm::generic(k, 1, 4);
            let tr = replay_symbolic(&nf).unwrap();
            assert_eq!(tr.dictionary.len(), 5);
            assert!(tr.singular.resultant == tr.singular.resultant_expected);
        }
    }

    #[test]
    fn numeric_replay_matches_conditions() {
        let zt = VarSet::of(&["z", "t"]);
        let cases: [(&str, i64, &[((u32, u32, u32), i64)]); 3] = [
            ("0", 0, &[((0, 0, 4), 1), ((0, 2, 1), 1), ((0, 0, 3), 1)]),
            ("1", 2, &[((0, 0, 3), 1), ((0, 2, 1), 1), ((0, 1, 2), 1)]),
            ("2", 0, &[((0, 2, 1), 1), ((0, 0, 3), -1), ((0, 1, 2), 2)]),
        ];
        for (psi, a, phi) in cases {
            let phi: BTreeMap<PhiKey, Q> = phi
                .iter()
                .map(|&((i, j, l), c)| (PhiKey(i, j, l), qi(c)))
                .collect();
            let nf = D5NormalForm::new(
                Poly::parse(&zt, psi).unwrap(),
                qi(a),
                1,
                phi,
                JetBound::new(8).unwrap(),
            )
            .unwrap();
            let (_, r) = decide_terminal(&nf);
            let tr = replay_theorem_charts(&nf).unwrap();
            assert_eq!(
                tr.singular_root().is_some(),
                r.condition_i || r.condition_ii
            );
        }
    }
}
