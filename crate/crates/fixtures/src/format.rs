//! Parser for fixture files.
//!
//! ```text
//! id: ex2.10
//! about: one line of description
//! vars: x y z u
//! equation: x^2 + y^2*z + x*z^5 + u^3
//! curve: x, y, u
//!
//! pipeline:
//!   W = blowup equation center=x,y,u chart=u
//!
//! expect:
//!   W.strict = x^2*u + y^2*z*u + x*z^5 + u^2  @worked
//! ```
//!
//! Step arguments are whitespace-free `key=value` tokens; other tokens name
//! earlier values. Each expectation ends with a provenance tag.

use std::collections::BTreeMap;
use std::fmt;

use core_poly::{parse_vars_header, Poly, VarSet};
use ideal_lab::Ideal;

use crate::FixtureError;

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Provenance {
    /// Displayed in the worked computation being replayed.
    Worked,
    /// Immediate from the definitions.
    Direct,
    /// Engine output, checked by hand once and frozen.
    Computed,
}

impl Provenance {
    fn parse(tag: &str) -> Option<Self> {
        match tag {
            "@worked" => Some(Self::Worked),
            "@direct" => Some(Self::Direct),
            "@computed" => Some(Self::Computed),
            _ => None,
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Worked => "worked",
            Self::Direct => "direct",
            Self::Computed => "computed",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Step {
    pub line: usize,
    pub name: String,
    pub op: String,
    pub sources: Vec<String>,
    pub args: BTreeMap<String, String>,
    /// Everything after the op, for ops that take free text.
    pub rest: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpectOp {
    Equals,
    Contains,
}

#[derive(Clone, Debug)]
pub struct Expectation {
    pub line: usize,
    pub target: String,
    pub field: String,
    pub op: ExpectOp,
    pub rhs: String,
    pub tag: Provenance,
}

impl fmt::Display for Expectation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.op {
            ExpectOp::Equals => "=",
            ExpectOp::Contains => "contains",
        };
        write!(f, "{}.{} {} {}", self.target, self.field, op, self.rhs)
    }
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub id: String,
    pub about: String,
    pub vars: VarSet,
    pub equation: Option<Poly>,
    pub curve: Option<Ideal>,
    pub steps: Vec<Step>,
    pub expectations: Vec<Expectation>,
}

#[derive(PartialEq)]
enum Block {
    Header,
    Pipeline,
    Expect,
}

fn err(line: usize, msg: impl Into<String>) -> FixtureError {
    FixtureError::Parse {
        line,
        msg: msg.into(),
    }
}

/// Splits on commas outside parentheses.
pub(crate) fn split_list(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(text[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(text[start..].trim());
    out.retain(|s| !s.is_empty());
    out
}

pub(crate) fn parse_ideal(vars: &VarSet, text: &str) -> Result<Ideal, String> {
    let gens = split_list(text)
        .into_iter()
        .map(|g| Poly::parse(vars, g).map_err(|e| format!("{g}: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    Ideal::new(gens).map_err(|e| e.to_string())
}

fn parse_step(line: usize, text: &str) -> Result<Step, FixtureError> {
    let (name, rhs) = text
        .split_once('=')
        .ok_or_else(|| err(line, "a step reads `NAME = op ...`"))?;
    let name = name.trim();
    if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
        return Err(err(line, format!("bad value name `{name}`")));
    }
    let rhs = rhs.trim();
    let (op, rest) = rhs.split_once(char::is_whitespace).unwrap_or((rhs, ""));
    let mut sources = Vec::new();
    let mut args = BTreeMap::new();
    for tok in rest.split_whitespace() {
        match tok.split_once('=') {
            Some((k, v)) => {
                if args.insert(k.to_string(), v.to_string()).is_some() {
                    return Err(err(line, format!("argument `{k}` given twice")));
                }
            }
            None => sources.push(tok.to_string()),
        }
    }
    Ok(Step {
        line,
        name: name.to_string(),
        op: op.to_string(),
        sources,
        args,
        rest: rest.trim().to_string(),
    })
}

fn parse_expectation(line: usize, text: &str) -> Result<Expectation, FixtureError> {
    let (body, tag) = text
        .rsplit_once('@')
        .ok_or_else(|| err(line, "expectation without a provenance tag"))?;
    let tag = Provenance::parse(&format!("@{}", tag.trim()))
        .ok_or_else(|| err(line, format!("unknown provenance tag `@{}`", tag.trim())))?;
    let (lhs, op, rhs) = if let Some((l, r)) = body.split_once(" contains ") {
        (l, ExpectOp::Contains, r)
    } else if let Some((l, r)) = body.split_once('=') {
        (l, ExpectOp::Equals, r)
    } else {
        return Err(err(line, "expectation needs `=` or `contains`"));
    };
    let (target, field) = lhs
        .trim()
        .split_once('.')
        .ok_or_else(|| err(line, "expectation target reads `NAME.field`"))?;
    Ok(Expectation {
        line,
        target: target.to_string(),
        field: field.to_string(),
        op,
        rhs: rhs.trim().to_string(),
        tag,
    })
}

pub fn parse_fixture(text: &str) -> Result<Fixture, FixtureError> {
    let mut block = Block::Header;
    let mut header: BTreeMap<&str, (usize, &str)> = BTreeMap::new();
    let mut steps = Vec::new();
    let mut expectations = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        match content {
            "pipeline:" => {
                if block != Block::Header {
                    return Err(err(line, "`pipeline:` must follow the header"));
                }
                block = Block::Pipeline;
                continue;
            }
            "expect:" => {
                if block == Block::Expect {
                    return Err(err(line, "second `expect:` block"));
                }
                block = Block::Expect;
                continue;
            }
            _ => {}
        }
        match block {
            Block::Header => {
                let (k, v) = content
                    .split_once(':')
                    .ok_or_else(|| err(line, "header lines read `key: value`"))?;
                if header.insert(k.trim(), (line, v.trim())).is_some() {
                    return Err(err(line, format!("header `{}` given twice", k.trim())));
                }
            }
            Block::Pipeline => steps.push(parse_step(line, content)?),
            Block::Expect => expectations.push(parse_expectation(line, content)?),
        }
    }
    for k in header.keys() {
        if !["id", "about", "vars", "equation", "curve"].contains(k) {
            let (line, _) = header[k];
            return Err(err(line, format!("unknown header `{k}`")));
        }
    }
    let (_, id) = header.get("id").ok_or_else(|| err(1, "missing `id:`"))?;
    let (vline, vtext) = header
        .get("vars")
        .ok_or_else(|| err(1, "missing `vars:`"))?;
    let vars =
        parse_vars_header(&format!("vars: {vtext}")).map_err(|e| err(*vline, e.to_string()))?;
    let equation = match header.get("equation") {
        Some((line, t)) => Some(Poly::parse(&vars, t).map_err(|e| err(*line, e.to_string()))?),
        None => None,
    };
    let curve = match header.get("curve") {
        Some((line, t)) => Some(parse_ideal(&vars, t).map_err(|e| err(*line, e))?),
        None => None,
    };
    let mut names = vec!["equation".to_string()];
    for s in &steps {
        for src in &s.sources {
            if !names.contains(src) && s.op != "poly" {
                return Err(err(s.line, format!("`{src}` is used before it is defined")));
            }
        }
        if names.contains(&s.name) {
            return Err(err(s.line, format!("`{}` is defined twice", s.name)));
        }
        names.push(s.name.clone());
    }
    Ok(Fixture {
        id: id.to_string(),
        about: header
            .get("about")
            .map(|(_, a)| a.to_string())
            .unwrap_or_default(),
        vars,
        equation,
        curve,
        steps,
        expectations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_steps_and_expectations() {
        let f = parse_fixture(
            "id: t\nvars: x y\nequation: x*y\n# note\npipeline:\n  A = blowup equation center=x,y chart=x\nexpect:\n  A.strict = y  @computed\n  A.m = 1 @direct\n",
        )
        .unwrap();
        assert_eq!(f.id, "t");
        assert_eq!(f.steps[0].sources, vec!["equation"]);
        assert_eq!(f.steps[0].args["chart"], "x");
        assert_eq!(f.expectations.len(), 2);
        assert_eq!(f.expectations[1].tag, Provenance::Direct);
    }

    #[test]
    fn missing_tag_and_forward_reference() {
        assert!(parse_fixture("id: t\nvars: x\nexpect:\n  A.m = 1\n").is_err());
        let e = parse_fixture("id: t\nvars: x\npipeline:\n  A = divisors B\n").unwrap_err();
        assert!(e.to_string().contains("line 4"), "{e}");
    }

    #[test]
    fn lists_respect_parentheses() {
        assert_eq!(
            split_list("x, (y + z)*(t), u"),
            vec!["x", "(y + z)*(t)", "u"]
        );
    }
}
