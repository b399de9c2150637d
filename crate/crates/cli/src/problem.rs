//! Problem files.
//!
//! ```text
//! vars: x y z t u
//! poly f = u*z^2 + x*y + z^3 + t^3
//! curve gamma = x, z, t
//! pipeline:
//!   Y = blowup f center=x,z,t chart=t
//! expect:
//!   Y.m = 2  @direct
//! ```
//!
//! `ideal` and `curve` are synonyms. A generator or a poly body may be the
//! bare name of an earlier poly. The optional `pipeline:`/`expect:` blocks
//! use the fixture step syntax and are run by `duval run`.

use std::collections::BTreeMap;

use core_poly::{parse_vars_header, Poly, VarSet};
use ideal_lab::Ideal;

#[derive(Debug)]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.msg)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug)]
pub struct ProblemFile {
    pub vars: VarSet,
    /// In file order.
    pub polys: Vec<(String, Poly)>,
    pub ideals: Vec<(String, Ideal)>,
    /// Raw `pipeline:` and `expect:` lines, kept for the fixture runner.
    pub script: Vec<String>,
    ideal_text: BTreeMap<String, String>,
}

fn err(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError {
        line,
        msg: msg.into(),
    }
}

fn valid_name(s: &str) -> bool {
    !s.is_empty()
        && s.chars().all(|c| c.is_alphanumeric() || c == '_')
        && !s.starts_with(|c: char| c.is_ascii_digit())
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut vars: Option<VarSet> = None;
        let mut polys: Vec<(String, Poly)> = Vec::new();
        let mut ideals: Vec<(String, Ideal)> = Vec::new();
        let mut ideal_text = BTreeMap::new();
        let mut script = Vec::new();
        let mut in_script = false;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if in_script || content == "pipeline:" || content == "expect:" {
                in_script = true;
                script.push(raw.to_string());
                continue;
            }
            if content.starts_with("vars:") {
                if vars.is_some() {
                    return Err(err(line, "second `vars:` header"));
                }
                vars = Some(parse_vars_header(content).map_err(|e| err(line, e.to_string()))?);
                continue;
            }
            let v = vars
                .as_ref()
                .ok_or_else(|| err(line, "`vars:` must come first"))?;
            let (kind, rest) = content
                .split_once(char::is_whitespace)
                .ok_or_else(|| err(line, "expected `poly NAME = ...` or `curve NAME = ...`"))?;
            let (name, body) = rest
                .split_once('=')
                .ok_or_else(|| err(line, "missing `=`"))?;
            let (name, body) = (name.trim(), body.trim());
            if !valid_name(name) {
                return Err(err(line, format!("bad name `{name}`")));
            }
            if v.index(name).is_some() {
                return Err(err(line, format!("`{name}` shadows a variable")));
            }
            if polys.iter().any(|(n, _)| n == name) || ideals.iter().any(|(n, _)| n == name) {
                return Err(err(line, format!("`{name}` is defined twice")));
            }
            let term = |s: &str| -> Result<Poly, ParseError> {
                if let Some((_, p)) = polys.iter().find(|(n, _)| n == s) {
                    return Ok(p.clone());
                }
                if valid_name(s) && v.index(s).is_none() {
                    return Err(err(line, format!("`{s}` is not defined")));
                }
                Poly::parse(v, s).map_err(|e| err(line, format!("{s}: {e}")))
            };
            match kind {
                "poly" => {
                    let p = term(body)?;
                    polys.push((name.to_string(), p));
                }
                "ideal" | "curve" => {
                    let gens = split_list(body)
                        .into_iter()
                        .map(term)
                        .collect::<Result<Vec<_>, _>>()?;
                    let gens_text: Vec<String> = gens.iter().map(Poly::to_string).collect();
                    let id = Ideal::new(gens).map_err(|e| err(line, e.to_string()))?;
                    ideal_text.insert(name.to_string(), gens_text.join(", "));
                    ideals.push((name.to_string(), id));
                }
                other => return Err(err(line, format!("unknown entry kind `{other}`"))),
            }
        }
        let vars = vars.ok_or_else(|| err(1, "missing `vars:` header"))?;
        Ok(Self {
            vars,
            polys,
            ideals,
            script,
            ideal_text,
        })
    }

    /// The named poly, or the only one, or the one called `f`.
    pub fn poly(&self, name: Option<&str>) -> Result<&Poly, String> {
        pick(&self.polys, name, "polynomial")
    }

    pub fn ideal(&self, name: Option<&str>) -> Result<&Ideal, String> {
        pick(&self.ideals, name, "curve")
    }

    /// The file as fixture text: polys become `poly` steps and the chosen
    /// poly and curve fill the `equation:` and `curve:` headers.
    pub fn to_fixture_text(&self, id: &str, poly: Option<&str>, curve: Option<&str>) -> String {
        let mut out = format!("id: {id}\nvars: {}\n", self.vars.names().join(" "));
        if let Ok(p) = self.poly(poly) {
            out.push_str(&format!("equation: {p}\n"));
        }
        if let Ok(name) = pick_name(&self.ideals, curve) {
            out.push_str(&format!("curve: {}\n", self.ideal_text[name]));
        }
        out.push_str("pipeline:\n");
        for (n, p) in &self.polys {
            out.push_str(&format!("  {n} = poly {p}\n"));
        }
        for l in &self.script {
            if l.trim() != "pipeline:" {
                out.push_str(l);
                out.push('\n');
            }
        }
        out
    }
}

fn pick_name<'a, T>(items: &'a [(String, T)], name: Option<&str>) -> Result<&'a str, ()> {
    match name {
        Some(n) => items
            .iter()
            .find(|(k, _)| k == n)
            .map(|(k, _)| k.as_str())
            .ok_or(()),
        None if items.len() == 1 => Ok(&items[0].0),
        None => items
            .iter()
            .find(|(k, _)| k == "f" || k == "gamma")
            .map(|(k, _)| k.as_str())
            .ok_or(()),
    }
}

fn pick<'a, T>(items: &'a [(String, T)], name: Option<&str>, what: &str) -> Result<&'a T, String> {
    match pick_name(items, name) {
        Ok(n) => Ok(&items.iter().find(|(k, _)| k == n).unwrap().1),
        Err(()) => Err(match name {
            Some(n) => format!("no {what} named `{n}`"),
            None if items.is_empty() => format!("the file defines no {what}"),
            None => format!("several {what}s defined; choose one by name"),
        }),
    }
}

/// Splits on commas outside parentheses.
pub fn split_list(text: &str) -> Vec<&str> {
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
