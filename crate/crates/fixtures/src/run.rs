//! Step interpreter and expectation checks.

use std::collections::BTreeMap;

use blowup_engine::{
    blowup_coordinate_center, blowup_two_generator_ideal, charts_consistent, exceptional_divisors,
    strict_transform_of_divisor, weighted_blowup_point, Chart,
};
use core_poly::{fmt_q, parse_q, JetBound, Poly, Substitution, UPoly, VarSet, Q};
use d5_decider::{
    decide_input, replay_symbolic, replay_theorem_charts, ChartTrace, D5NormalForm,
    SymbolicNormalForm,
};
use duval_classifier::{classify_duval, curve_position, minimal_resolution_dual_graph};
use ideal_lab::{
    curve_in_locus, hypersurface_singular_ideal, milnor_number_auto, Ideal, ParamCurve,
};
use intersection_calculator::{
    an_cartier_multiple, an_index_report, curve_divisor_length_at, solve_discrepancy, solve_ledger,
    LineInChart, Relation,
};

use crate::format::{parse_ideal, split_list, ExpectOp, Expectation, Fixture, Step};

/// A field of a computed value.
#[derive(Clone, Debug)]
pub enum Field {
    Poly(Poly),
    Ideal(Ideal),
    Ideals(Vec<Ideal>),
    Num(Q),
    Text(String),
}

impl Field {
    fn render(&self) -> String {
        match self {
            Self::Poly(p) => p.to_string(),
            Self::Ideal(i) => render_ideal(i),
            Self::Ideals(is) => is.iter().map(render_ideal).collect::<Vec<_>>().join("; "),
            Self::Num(q) => fmt_q(q),
            Self::Text(t) => t.clone(),
        }
    }
}

fn render_ideal(i: &Ideal) -> String {
    let gens: Vec<String> = i.canonical().iter().map(Poly::to_string).collect();
    format!("({})", gens.join(", "))
}

#[derive(Clone, Debug, Default)]
struct Value {
    poly: Option<Poly>,
    chart: Option<Chart>,
    nf: Option<D5NormalForm>,
    fields: BTreeMap<String, Field>,
}

impl Value {
    fn of_poly(p: Poly) -> Self {
        let mut v = Self {
            poly: Some(p.clone()),
            ..Self::default()
        };
        v.set("value", Field::Poly(p));
        v
    }

    fn set(&mut self, k: &str, f: Field) {
        self.fields.insert(k.to_string(), f);
    }
}

type Env = BTreeMap<String, Value>;

fn get<'a>(env: &'a Env, name: &str) -> Result<&'a Value, String> {
    env.get(name)
        .ok_or_else(|| format!("unknown value `{name}`"))
}

fn source<'a>(env: &'a Env, step: &Step, i: usize) -> Result<&'a Value, String> {
    let name = step
        .sources
        .get(i)
        .ok_or_else(|| format!("`{}` needs {} source value(s)", step.op, i + 1))?;
    get(env, name)
}

fn source_poly(env: &Env, step: &Step) -> Result<Poly, String> {
    source(env, step, 0)?
        .poly
        .clone()
        .ok_or_else(|| format!("`{}` has no polynomial", step.sources[0]))
}

fn source_chart<'a>(env: &'a Env, step: &Step, i: usize) -> Result<&'a Chart, String> {
    source(env, step, i)?
        .chart
        .as_ref()
        .ok_or_else(|| format!("`{}` is not a chart", step.sources[i]))
}

fn arg<'a>(step: &'a Step, key: &str) -> Result<&'a str, String> {
    step.args
        .get(key)
        .map(String::as_str)
        .ok_or_else(|| format!("`{}` needs `{key}=`", step.op))
}

fn num(text: &str) -> Result<Q, String> {
    parse_q(text).map_err(|e| format!("{text}: {e}"))
}

fn uint(step: &Step, key: &str, default: u32) -> Result<u32, String> {
    match step.args.get(key) {
        Some(v) => v
            .parse()
            .map_err(|_| format!("`{key}` must be a count, got {v}")),
        None => Ok(default),
    }
}

fn e<E: std::fmt::Display>(x: E) -> String {
    x.to_string()
}

fn chart_value(c: Chart) -> Result<Value, String> {
    let mut v = Value {
        poly: Some(c.strict_transform.clone()),
        ..Value::default()
    };
    v.set("strict", Field::Poly(c.strict_transform.clone()));
    v.set("total", Field::Poly(c.total_transform.clone()));
    v.set("exceptional", Field::Poly(c.exceptional.clone()));
    v.set(
        "m",
        Field::Num(Q::from_integer(c.exceptional_multiplicity.into())),
    );
    v.set("equations", Field::Ideal(c.equations_ideal().map_err(e)?));
    if !c.ambient_relations.is_empty() {
        v.set(
            "relations",
            Field::Ideal(Ideal::new(c.ambient_relations.clone()).map_err(e)?),
        );
    }
    v.set("name", Field::Text(c.name.clone()));
    v.chart = Some(c);
    Ok(v)
}

fn trace_value(tr: &ChartTrace) -> Result<Value, String> {
    let mut v = Value::default();
    v.set("w", Field::Poly(tr.w_chart.strict_transform.clone()));
    v.set("w1", Field::Poly(tr.w1_chart.strict_transform.clone()));
    v.set("e", Field::Ideal(tr.e.clone()));
    v.set("f", Field::Ideal(tr.f.clone()));
    v.set("f1", Field::Ideal(tr.f1.clone()));
    v.set("e_w1", Field::Ideal(tr.e_w1.clone()));
    v.set("g", Field::Poly(tr.g.clone()));
    v.set(
        "final",
        Field::Ideal(tr.final_chart.equations_ideal().map_err(e)?),
    );
    v.set(
        "curves",
        Field::Ideal(Ideal::new(tr.curves.clone()).map_err(e)?),
    );
    v.set("resultant", Field::Poly(tr.singular.resultant.clone()));
    v.set(
        "resultant_expected",
        Field::Poly(tr.singular.resultant_expected.clone()),
    );
    v.set(
        "system",
        Field::Ideal(Ideal::new(tr.singular.expected.clone()).map_err(e)?),
    );
    let identities = tr
        .singular
        .at_minus_f
        .iter()
        .filter(|p| p.is_zero())
        .count();
    v.set(
        "vanish_at_minus_f",
        Field::Num(Q::from_integer(identities.into())),
    );
    v.set(
        "singular_root",
        Field::Text(match tr.singular_root() {
            Some(r) => fmt_q(&r),
            None => "none".into(),
        }),
    );
    for (name, got, want) in &tr.dictionary {
        let key = ident(name);
        v.set(&format!("dict_{key}"), Field::Poly(got.clone()));
        v.set(&format!("dict_{key}_expected"), Field::Poly(want.clone()));
    }
    Ok(v)
}

/// `d phi2/dt (0)` becomes `d_phi2_dt_0`.
fn ident(name: &str) -> String {
    name.split(|c: char| !c.is_alphanumeric())
        .filter(|s| !s.is_empty())
        .collect::<Vec<_>>()
        .join("_")
}

fn drop_var(g: &Poly, var: &str) -> Result<Poly, String> {
    let keep: Vec<&str> = g
        .vars()
        .names()
        .iter()
        .map(String::as_str)
        .filter(|n| *n != var)
        .collect();
    g.embed(&VarSet::of(&keep)).map_err(e)
}

fn curve_of(step: &Step, fx: &Fixture, vars: &VarSet) -> Result<Ideal, String> {
    match step.args.get("curve") {
        Some(text) => parse_ideal(vars, &text.replace(',', ", ")),
        None => fx
            .curve
            .clone()
            .ok_or_else(|| "no curve given and none in the header".to_string())?
            .embed(vars)
            .map_err(e),
    }
}

fn run_step(step: &Step, fx: &Fixture, env: &Env) -> Result<Value, String> {
    match step.op.as_str() {
        "poly" => {
            let p = Poly::parse(&fx.vars, &step.rest).map_err(e)?;
            Ok(Value::of_poly(p))
        }
        "blowup" => {
            let f = source_poly(env, step)?;
            let center: Vec<&str> = arg(step, "center")?.split(',').collect();
            chart_value(blowup_coordinate_center(&f, &center, arg(step, "chart")?).map_err(e)?)
        }
        "weighted" => {
            let f = source_poly(env, step)?;
            let w = arg(step, "weights")?
                .split(',')
                .map(|s| s.parse::<u32>().map_err(|_| format!("bad weight {s}")))
                .collect::<Result<Vec<_>, _>>()?;
            chart_value(weighted_blowup_point(&f, &w, arg(step, "chart")?).map_err(e)?)
        }
        "blowup2" => {
            let f = source_poly(env, step)?;
            let gens: Vec<&str> = arg(step, "gens")?.split(';').collect();
            let [g1, g2] = gens.as_slice() else {
                return Err("`gens=` takes two generators separated by `;`".into());
            };
            let g1 = Poly::parse(f.vars(), g1).map_err(e)?;
            let g2 = Poly::parse(f.vars(), g2).map_err(e)?;
            let idx = uint(step, "chart", 0)? as usize;
            let charts =
                blowup_two_generator_ideal(&f, &g1, &g2, arg(step, "ratio")?).map_err(e)?;
            let chart = charts
                .into_iter()
                .nth(idx)
                .ok_or_else(|| format!("chart {idx} does not exist"))?;
            chart_value(chart)
        }
        "restrict" => {
            let f = source_poly(env, step)?;
            let var = arg(step, "var")?;
            let g = f
                .specialize_named(var, &num(arg(step, "value")?)?)
                .map_err(e)?;
            Ok(Value::of_poly(drop_var(&g, var)?))
        }
        "section" => {
            let f = source_poly(env, step)?;
            let var = arg(step, "var")?;
            let by = Poly::parse(f.vars(), arg(step, "by")?).map_err(e)?;
            if by.involves(f.vars().require(var).map_err(e)?) {
                return Err(format!("the section must not involve {var}"));
            }
            let g = f
                .substitute(&Substitution::new(f.vars()).with(var, by))
                .map_err(e)?;
            Ok(Value::of_poly(drop_var(&g, var)?))
        }
        "divisors" => {
            let c = source_chart(env, step, 0)?;
            let comps = exceptional_divisors(c).map_err(e)?;
            let mut v = Value::default();
            v.set(
                "components",
                Field::Ideals(comps.iter().map(|d| d.ideal.clone()).collect()),
            );
            v.set("count", Field::Num(Q::from_integer(comps.len().into())));
            for d in &comps {
                v.set(
                    &format!("mult_{}", render_ideal(&d.ideal)),
                    Field::Num(Q::from_integer(d.multiplicity.into())),
                );
            }
            Ok(v)
        }
        "transform" => {
            let c = source_chart(env, step, 0)?;
            let d = parse_ideal(&c.source_vars, &arg(step, "divisor")?.replace(',', ", "))?;
            let mut v = Value::default();
            v.set(
                "ideal",
                Field::Ideal(strict_transform_of_divisor(&d, c).map_err(e)?),
            );
            Ok(v)
        }
        "consistent" => {
            let a = source_chart(env, step, 0)?;
            let b = source_chart(env, step, 1)?;
            let mut v = Value::default();
            v.set(
                "result",
                Field::Text(charts_consistent(a, b).map_err(e)?.to_string()),
            );
            Ok(v)
        }
        "locus" => {
            let f = source_poly(env, step)?;
            let ideal = hypersurface_singular_ideal(&f).map_err(e)?;
            let mut v = Value::default();
            if let Some(axis) = step.args.get("axis") {
                let curve = ParamCurve::axis(f.vars(), axis).map_err(e)?;
                let inside = curve_in_locus(&curve, &ideal).map_err(e)?;
                v.set("contains_axis", Field::Text(inside.to_string()));
            }
            v.set("ideal", Field::Ideal(ideal));
            Ok(v)
        }
        "classify" => {
            let f = source_poly(env, step)?;
            let ty = classify_duval(&f).map_err(e)?;
            let mut v = Value::default();
            v.set("type", Field::Text(ty.to_string()));
            if let Some(n) = ty.subscript().filter(|_| ty.is_ade()) {
                let mu = milnor_number_auto(&f, n).map_err(e)?;
                v.set("mu", Field::Num(Q::from_integer(mu.into())));
                let g = minimal_resolution_dual_graph(&f, ty).map_err(e)?;
                v.set("nodes", Field::Num(Q::from_integer(g.node_count().into())));
            }
            if step.args.contains_key("curve") {
                let gamma = curve_of(step, fx, f.vars())?;
                let pos = curve_position(&f, &gamma).map_err(e)?;
                v.set("position", Field::Text(pos.to_string()));
            }
            Ok(v)
        }
        "decide" => {
            let f = source_poly(env, step)?;
            let gamma = curve_of(step, fx, f.vars())?;
            let jet = JetBound::new(uint(step, "jet", 8)?).map_err(e)?;
            let (verdict, nf, report) = decide_input(&f, &gamma, jet).map_err(e)?;
            let mut v = Value::default();
            v.set("verdict", Field::Text(verdict.to_string()));
            if let Some(r) = &report {
                v.set("case", Field::Text(format!("{:?}", r.case)));
                let names = [
                    "a_0_0_4",
                    "a_1_0_2",
                    "i_third",
                    "i_fourth",
                    "ii_first",
                    "ii_second",
                ];
                for (n, q) in names.iter().zip(r.quantities()) {
                    v.set(n, Field::Num(q.clone()));
                }
            }
            if let Some(nf) = &nf {
                v.set("psi", Field::Poly(nf.psi.clone()));
                v.set("a", Field::Num(nf.a.clone()));
                v.set("k", Field::Num(Q::from_integer(nf.k.into())));
                v.set("b", Field::Num(nf.b.clone()));
                v.set("normal_form", Field::Poly(nf.equation()));
                for (key, c) in &nf.phi {
                    v.set(&key.to_string(), Field::Num(c.clone()));
                }
            }
            v.nf = nf;
            Ok(v)
        }
        "d5_replay" => {
            let tr = if step.sources.is_empty() {
                let nf = SymbolicNormalForm::generic(
                    uint(step, "k", 1)?,
                    uint(step, "psi", 1)?,
                    uint(step, "phi", 4)?,
                );
                replay_symbolic(&nf).map_err(e)?
            } else {
                let nf = source(env, step, 0)?
                    .nf
                    .as_ref()
                    .ok_or_else(|| format!("`{}` holds no normal form", step.sources[0]))?;
                replay_theorem_charts(nf).map_err(e)?
            };
            trace_value(&tr)
        }
        "an_index" => {
            let f = source_poly(env, step)?;
            let r = an_index_report(&f).map_err(e)?;
            let mut v = Value::default();
            v.set("k", Field::Num(Q::from_integer(r.cartier_multiple.into())));
            v.set("length", Field::Num(Q::from_integer(r.length.into())));
            v.set("l_e", Field::Num(r.l_e.clone()));
            v.set("l_f", Field::Num(r.l_f.clone()));
            v.set("a", Field::Num(r.solution.a.clone()));
            v.set(
                "index",
                Field::Num(Q::from_integer(r.solution.index.into())),
            );
            v.set("first", Field::Poly(r.first_chart.strict_transform.clone()));
            v.set(
                "second",
                Field::Ideal(r.second_chart.equations_ideal().map_err(e)?),
            );
            v.set("multiple_e", Field::Ideal(r.multiple_e.clone()));
            v.set("f_transform", Field::Ideal(r.f_transform.clone()));
            Ok(v)
        }
        "length" => {
            let f = source_poly(env, step)?;
            let vars = f.vars().clone();
            let chart = Chart::identity(&f);
            let mult: Vec<u32> = arg(step, "multiple")?
                .split(',')
                .map(|s| s.parse().map_err(|_| format!("bad multiple {s}")))
                .collect::<Result<_, String>>()?;
            let [n, p] = mult.as_slice() else {
                return Err("`multiple=` reads `n,p`".into());
            };
            let divisor = Ideal::new(vec![
                an_cartier_multiple(&vars, *n, *p).map_err(e)?,
                f.clone(),
            ])
            .map_err(e)?;
            let sv = VarSet::of(&["s"]);
            let images = split_list(arg(step, "curve")?)
                .into_iter()
                .map(|s| {
                    let p = Poly::parse(&sv, s).map_err(e)?;
                    UPoly::from_poly(&p, 0).ok_or_else(|| format!("{s} is not a polynomial in s"))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let curve = ParamCurve::new("s", &vars, images).map_err(e)?;
            let line = LineInChart::new(curve, "curve", &chart).map_err(e)?;
            let at = num(step.args.get("at").map_or("0", String::as_str))?;
            let len = curve_divisor_length_at(&line, &divisor, &chart, &at).map_err(e)?;
            let mut v = Value::default();
            v.set("length", Field::Num(Q::from_integer(len.into())));
            Ok(v)
        }
        "ledger" => {
            let rels = arg(step, "rels")?
                .split(';')
                .map(|r| {
                    let (lhs, rhs) = r
                        .rsplit_once(':')
                        .ok_or_else(|| format!("relation `{r}` reads `lhs:rhs`"))?;
                    Relation::parse(lhs, rhs).map_err(e)
                })
                .collect::<Result<Vec<_>, _>>()?;
            let ledger = solve_ledger(&rels).map_err(e)?;
            let mut v = Value::default();
            for (label, q) in &ledger.entries {
                v.set(label, Field::Num(q.clone()));
            }
            if let Some(label) = step.args.get("contract") {
                let lk = num(arg(step, "lk")?)?;
                let lp = num(step.args.get("lpk").map_or("0", String::as_str))?;
                let s = solve_discrepancy(&lk, &lp, &ledger.get(label).map_err(e)?).map_err(e)?;
                v.set("a", Field::Num(s.a));
                v.set("index", Field::Num(Q::from_integer(s.index.into())));
            }
            Ok(v)
        }
        other => Err(format!("unknown op `{other}`")),
    }
}

/// Result of one expectation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub line: usize,
    pub text: String,
    pub tag: String,
    pub ok: bool,
    pub actual: String,
}

fn ideal_list(vars: &VarSet, text: &str) -> Result<Vec<Ideal>, String> {
    text.split(';').map(|t| parse_ideal(vars, t)).collect()
}

fn compare(ex: &Expectation, got: &Field, env: &Env) -> Result<bool, String> {
    let rhs_field = match ex.rhs.strip_prefix('$') {
        Some(r) => {
            let (t, f) = r
                .split_once('.')
                .ok_or_else(|| format!("reference `{r}` reads `$NAME.field`"))?;
            Some(field_of(env, t, f)?.clone())
        }
        None => None,
    };
    let same_ideal = |a: &Ideal, b: &Ideal| a.same_generators(b);
    Ok(match (ex.op, got) {
        (ExpectOp::Equals, Field::Poly(p)) => {
            let want = match rhs_field {
                Some(Field::Poly(q)) => q.embed(p.vars()).map_err(e)?,
                Some(_) => return Err("reference is not a polynomial".into()),
                None => Poly::parse(p.vars(), &ex.rhs).map_err(e)?,
            };
            *p == want
        }
        (ExpectOp::Equals, Field::Ideal(i)) => {
            let want = match rhs_field {
                Some(Field::Ideal(j)) => j,
                Some(_) => return Err("reference is not an ideal".into()),
                None => parse_ideal(i.vars(), &ex.rhs)?,
            };
            same_ideal(i, &want)
        }
        (ExpectOp::Contains, Field::Ideals(is)) => {
            let vars = is.first().map(|i| i.vars().clone());
            match vars {
                Some(v) => {
                    let want = parse_ideal(&v, &ex.rhs)?;
                    is.iter().any(|i| same_ideal(i, &want))
                }
                None => false,
            }
        }
        (ExpectOp::Equals, Field::Ideals(is)) => {
            let Some(v) = is.first().map(|i| i.vars().clone()) else {
                return Ok(ex.rhs.trim().is_empty());
            };
            let want = ideal_list(&v, &ex.rhs)?;
            want.len() == is.len() && want.iter().all(|w| is.iter().any(|i| same_ideal(i, w)))
        }
        (ExpectOp::Equals, Field::Num(q)) => match rhs_field {
            Some(Field::Num(r)) => *q == r,
            Some(_) => return Err("reference is not a number".into()),
            None => *q == num(&ex.rhs)?,
        },
        (ExpectOp::Equals, Field::Text(t)) => match rhs_field {
            Some(f) => *t == f.render(),
            None => t.trim() == ex.rhs.trim(),
        },
        (ExpectOp::Contains, _) => return Err("`contains` needs a list of ideals".into()),
    })
}

fn field_of<'a>(env: &'a Env, target: &str, field: &str) -> Result<&'a Field, String> {
    get(env, target)?
        .fields
        .get(field)
        .ok_or_else(|| format!("`{target}` has no field `{field}`"))
}

/// Runs the pipeline, then checks every expectation in file order. A failing
/// step ends the run with its error.
pub(crate) fn execute(fx: &Fixture) -> Result<Vec<Check>, (usize, String)> {
    let mut env = Env::new();
    if let Some(eq) = &fx.equation {
        env.insert("equation".into(), Value::of_poly(eq.clone()));
    }
    for step in &fx.steps {
        let v = run_step(step, fx, &env).map_err(|m| (step.line, format!("{}: {m}", step.name)))?;
        env.insert(step.name.clone(), v);
    }
    let mut out = Vec::new();
    for ex in &fx.expectations {
        let (ok, actual) = match field_of(&env, &ex.target, &ex.field) {
            Ok(got) => match compare(ex, got, &env) {
                Ok(ok) => (ok, got.render()),
                Err(m) => (false, format!("error: {m}")),
            },
            Err(m) => (false, format!("error: {m}")),
        };
        out.push(Check {
            line: ex.line,
            text: ex.to_string(),
            tag: ex.tag.to_string(),
            ok,
            actual,
        });
    }
    Ok(out)
}
