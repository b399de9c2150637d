//! Replayable scripts of the worked computations.
//!
//! Each fixture is a small text file: a header with variables, an equation
//! and a curve, a pipeline of named steps driving the engines, and a list of
//! expected outputs tagged with where they come from. [`replay`] runs one
//! and reports the first divergence.
//!
//! The built-in set is compiled in; setting `DUVAL_FIXTURE_DIR` makes the
//! runner read `<id>.fix` files from that directory instead.

mod format;
mod run;

use std::fmt;
use std::path::PathBuf;

use thiserror::Error;

pub use format::{parse_fixture, ExpectOp, Expectation, Fixture, Provenance, Step};
pub use run::{Check, Field};

pub const FIXTURE_DIR_ENV: &str = "DUVAL_FIXTURE_DIR";

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown fixture `{0}`")]
    Unknown(String),
    #[error("{path}: {msg}")]
    Io { path: String, msg: String },
    #[error("file declares id `{found}` but was loaded as `{wanted}`")]
    IdMismatch { wanted: String, found: String },
}

const BUILTIN: &[(&str, &str)] = &[
    ("cor3.5-n1", include_str!("../data/cor3.5-n1.fix")),
    ("cor3.5-n2", include_str!("../data/cor3.5-n2.fix")),
    ("cor3.5-n3", include_str!("../data/cor3.5-n3.fix")),
    ("cor3.5-n4", include_str!("../data/cor3.5-n4.fix")),
    ("d5-position", include_str!("../data/d5-position.fix")),
    ("empty", include_str!("../data/empty.fix")),
    ("ex2.1", include_str!("../data/ex2.1.fix")),
    ("ex2.10", include_str!("../data/ex2.10.fix")),
    ("ex2.16", include_str!("../data/ex2.16.fix")),
    ("ex3.7", include_str!("../data/ex3.7.fix")),
    ("local-a4", include_str!("../data/local-a4.fix")),
    ("thm3.6-case1", include_str!("../data/thm3.6-case1.fix")),
    ("thm3.6-case2", include_str!("../data/thm3.6-case2.fix")),
    ("thm3.6-dfl", include_str!("../data/thm3.6-dfl.fix")),
    (
        "thm3.6-symbolic",
        include_str!("../data/thm3.6-symbolic.fix"),
    ),
];

fn override_dir() -> Option<PathBuf> {
    std::env::var_os(FIXTURE_DIR_ENV).map(PathBuf::from)
}

/// Fixture ids, sorted.
pub fn fixture_ids() -> Result<Vec<String>, FixtureError> {
    match override_dir() {
        None => Ok(BUILTIN.iter().map(|(id, _)| id.to_string()).collect()),
        Some(dir) => {
            let io = |e: std::io::Error| FixtureError::Io {
                path: dir.display().to_string(),
                msg: e.to_string(),
            };
            let mut ids = Vec::new();
            for entry in std::fs::read_dir(&dir).map_err(io)? {
                let path = entry.map_err(io)?.path();
                if path.extension().is_some_and(|x| x == "fix") {
                    if let Some(stem) = path.file_stem() {
                        ids.push(stem.to_string_lossy().into_owned());
                    }
                }
            }
            ids.sort();
            Ok(ids)
        }
    }
}

pub fn fixture_source(id: &str) -> Result<String, FixtureError> {
    match override_dir() {
        None => BUILTIN
            .iter()
            .find(|(k, _)| *k == id)
            .map(|(_, text)| text.to_string())
            .ok_or_else(|| FixtureError::Unknown(id.to_string())),
        Some(dir) => {
            let path = dir.join(format!("{id}.fix"));
            if !path.is_file() {
                return Err(FixtureError::Unknown(id.to_string()));
            }
            std::fs::read_to_string(&path).map_err(|e| FixtureError::Io {
                path: path.display().to_string(),
                msg: e.to_string(),
            })
        }
    }
}

pub fn load(id: &str) -> Result<Fixture, FixtureError> {
    let fx = parse_fixture(&fixture_source(id)?)?;
    if fx.id != id {
        return Err(FixtureError::IdMismatch {
            wanted: id.to_string(),
            found: fx.id,
        });
    }
    Ok(fx)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail { divergence: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub id: String,
    pub about: String,
    pub outcome: Outcome,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.outcome {
            Outcome::Pass => writeln!(f, "PASS {} ({} checks)", self.id, self.checks.len())?,
            Outcome::Fail { divergence } => writeln!(f, "FAIL {}: {divergence}", self.id)?,
        }
        for c in &self.checks {
            let mark = if c.ok { "ok  " } else { "FAIL" };
            writeln!(f, "  {mark} [{}] line {}: {}", c.tag, c.line, c.text)?;
            if !c.ok {
                writeln!(f, "         got {}", c.actual)?;
            }
        }
        Ok(())
    }
}

/// Runs a parsed fixture.
pub fn run_fixture(fx: &Fixture) -> Report {
    let (outcome, checks) = match run::execute(fx) {
        Err((line, msg)) => (
            Outcome::Fail {
                divergence: format!("step at line {line} failed: {msg}"),
            },
            Vec::new(),
        ),
        Ok(checks) => {
            let outcome = match checks.iter().find(|c| !c.ok) {
                None => Outcome::Pass,
                Some(c) => Outcome::Fail {
                    divergence: format!("line {}: {} (got {})", c.line, c.text, c.actual),
                },
            };
            (outcome, checks)
        }
    };
    Report {
        id: fx.id.clone(),
        about: fx.about.clone(),
        outcome,
        checks,
    }
}

pub fn replay(id: &str) -> Result<Report, FixtureError> {
    Ok(run_fixture(&load(id)?))
}

/// Every fixture, run in parallel, reported in id order.
pub fn replay_all() -> Result<Vec<Report>, FixtureError> {
    let fixtures = fixture_ids()?
        .iter()
        .map(|id| load(id))
        .collect::<Result<Vec<_>, _>>()?;
    let reports = std::thread::scope(|s| {
        let handles: Vec<_> = fixtures
            .iter()
            .map(|fx| s.spawn(move || run_fixture(fx)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("fixture thread panicked"))
            .collect()
    });
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_ids_are_sorted_and_parse() {
        let ids: Vec<&str> = BUILTIN.iter().map(|(id, _)| *id).collect();
        let mut sorted = ids.clone();
        sorted.sort();
        assert_eq!(ids, sorted);
        for (id, text) in BUILTIN {
            let fx = parse_fixture(text).unwrap_or_else(|e| panic!("{id}: {e}"));
            assert_eq!(fx.id, *id);
        }
    }

    #[test]
    fn empty_pipeline_passes() {
        let fx = parse_fixture("id: nothing\nvars: x\n").unwrap();
        let r = run_fixture(&fx);
        assert!(r.passed());
        assert!(r.checks.is_empty());
    }

    #[test]
    fn first_divergence_is_reported() {
        let fx = parse_fixture(
            "id: t\nvars: x y\nequation: x*y\npipeline:\n  A = blowup equation center=x,y chart=x\nexpect:\n  A.m = 3 @direct\n  A.strict = x @direct\n",
        )
        .unwrap();
        let r = run_fixture(&fx);
        match &r.outcome {
            Outcome::Fail { divergence } => {
                assert!(divergence.starts_with("line 7"), "{divergence}")
            }
            Outcome::Pass => panic!("should fail"),
        }
        assert_eq!(r.checks.iter().filter(|c| !c.ok).count(), 2);
    }

    #[test]
    fn failing_step_is_a_divergence() {
        let fx = parse_fixture(
            "id: t\nvars: x y\nequation: x*y\npipeline:\n  A = blowup equation center=x,y chart=z\n",
        )
        .unwrap();
        assert!(!run_fixture(&fx).passed());
    }
}
