//! `duval`: blow-ups, Du Val classification, the D5 decision procedure and
//! fixture replay from the command line.
//!
//! Exit codes: 0 success, 1 a fixture failed, 2 usage or parse error,
//! 3 the mathematics refused the input.

mod problem;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use blowup_engine::{blowup_coordinate_center, exceptional_divisors, weighted_blowup_point};
use clap::{Parser, Subcommand};
use core_poly::JetBound;
use d5_decider::{decide_input, Verdict};
use duval_classifier::{classify_duval, curve_position, minimal_resolution_dual_graph, DuValType};
use ideal_lab::milnor_number_auto;
use serde_json::json;

use problem::ProblemFile;

#[derive(Parser)]
#[command(
    name = "duval",
    version,
    about = "Exact blow-up and Du Val computations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Blow up a coordinate center or a weighted point and print one chart.
    Blowup {
        file: PathBuf,
        /// Comma-separated center variables.
        #[arg(long, conflicts_with = "weights", required_unless_present = "weights")]
        center: Option<String>,
        /// Comma-separated weights, one per variable, for a weighted blow-up of the origin.
        #[arg(long)]
        weights: Option<String>,
        #[arg(long)]
        chart: String,
        /// Name of the polynomial to blow up.
        #[arg(long)]
        poly: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Classify a surface singularity at the origin.
    Classify {
        file: PathBuf,
        #[arg(long)]
        poly: Option<String>,
        /// Name of a curve whose position on a D_n graph is reported.
        #[arg(long)]
        curve: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether a cD5 point along a line admits a terminal contraction.
    Decide {
        file: PathBuf,
        #[arg(long)]
        poly: Option<String>,
        #[arg(long)]
        curve: Option<String>,
        #[arg(long, default_value_t = 8)]
        jet_bound: u32,
        #[arg(long)]
        json: bool,
    },
    /// Replay built-in fixtures (or those under $DUVAL_FIXTURE_DIR).
    Replay {
        #[arg(required_unless_present = "all", conflicts_with = "all")]
        id: Option<String>,
        #[arg(long)]
        all: bool,
        /// Print every check, not only the verdict line.
        #[arg(long, short)]
        verbose: bool,
    },
    /// Run the pipeline and expectations of a problem file.
    Run {
        file: PathBuf,
        #[arg(long)]
        poly: Option<String>,
        #[arg(long)]
        curve: Option<String>,
    },
}

enum Failure {
    /// A replayed fixture disagreed with its expectations.
    Check(String),
    Usage(String),
    Math(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Self::Check(_) => 1,
            Self::Usage(_) => 2,
            Self::Math(_) => 3,
        }
    }
}

type Outcome = Result<String, Failure>;

fn usage(e: impl ToString) -> Failure {
    Failure::Usage(e.to_string())
}

fn math(e: impl ToString) -> Failure {
    Failure::Math(e.to_string())
}

fn read_problem(path: &Path) -> Result<ProblemFile, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    ProblemFile::parse(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize") + "\n"
}

fn cmd_blowup(
    file: &Path,
    center: Option<&str>,
    weights: Option<&str>,
    chart: &str,
    poly: Option<&str>,
    as_json: bool,
) -> Outcome {
    let pf = read_problem(file)?;
    let f = pf.poly(poly).map_err(usage)?;
    let chart = match (center, weights) {
        (Some(c), _) => {
            let names: Vec<&str> = c.split(',').map(str::trim).collect();
            for n in &names {
                pf.vars.require(n).map_err(usage)?;
            }
            if !names.contains(&chart) {
                return Err(Failure::Usage(format!(
                    "chart variable `{chart}` is not in the center {c}"
                )));
            }
            blowup_coordinate_center(f, &names, chart).map_err(math)?
        }
        (None, Some(w)) => {
            let weights = w
                .split(',')
                .map(|s| s.trim().parse::<u32>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| Failure::Usage(format!("--weights {w}: {e}")))?;
            if weights.len() != pf.vars.len() {
                return Err(Failure::Usage(format!(
                    "--weights needs {} entries, one per variable",
                    pf.vars.len()
                )));
            }
            pf.vars.require(chart).map_err(usage)?;
            weighted_blowup_point(f, &weights, chart).map_err(math)?
        }
        (None, None) => return Err(usage("give --center or --weights")),
    };
    let divisors = exceptional_divisors(&chart).map_err(math)?;
    Ok(if as_json {
        pretty(&report::blowup_json(f, &chart, &divisors))
    } else {
        report::blowup_text(&chart, &divisors)
    })
}

fn cmd_classify(file: &Path, poly: Option<&str>, curve: Option<&str>, as_json: bool) -> Outcome {
    let pf = read_problem(file)?;
    let f = pf.poly(poly).map_err(usage)?;
    if f.vars().len() != 3 {
        return Err(Failure::Usage(format!(
            "classify needs 3 variables, the file declares {}",
            f.vars().len()
        )));
    }
    let gamma = match curve {
        Some(_) => Some(pf.ideal(curve).map_err(usage)?),
        None => pf.ideal(None).ok(),
    };
    let ty = classify_duval(f).map_err(math)?;
    let mu = match ty {
        DuValType::Smooth => 0,
        _ => milnor_number_auto(f, ty.subscript().unwrap_or(1)).map_err(math)?,
    };
    let graph = if ty.is_ade() {
        Some(minimal_resolution_dual_graph(f, ty).map_err(math)?)
    } else {
        None
    };
    let position = match (ty, gamma) {
        (DuValType::D(_), Some(g)) => Some(curve_position(f, g).map_err(math)?),
        _ => None,
    };
    if as_json {
        let mut v = json!({
            "schema": 1,
            "command": "classify",
            "vars": pf.vars.names(),
            "input": f.to_string(),
            "type": ty.to_string(),
            "mu": mu,
        });
        if let Some(g) = &graph {
            v["graph"] = json!({ "nodes": g.nodes, "edges": g.edges });
        }
        if let Some(p) = position {
            v["position"] = json!(p.to_string());
        }
        return Ok(pretty(&v));
    }
    let mut out = format!("{ty}, mu={mu}");
    if let Some(p) = position {
        out.push_str(&format!(", position={p}"));
    }
    out.push('\n');
    if let Some(g) = &graph {
        out.push_str(&format!("nodes: {}\n", g.nodes.join(" ")));
        let edges: Vec<String> = g.edges.iter().map(|(a, b)| format!("{a}-{b}")).collect();
        out.push_str(&format!("edges: {}\n", edges.join(" ")));
    }
    Ok(out)
}

fn cmd_decide(
    file: &Path,
    poly: Option<&str>,
    curve: Option<&str>,
    jet_bound: u32,
    as_json: bool,
) -> Outcome {
    let pf = read_problem(file)?;
    let f = pf.poly(poly).map_err(usage)?;
    let gamma = pf.ideal(curve).map_err(usage)?;
    let jet = JetBound::new(jet_bound).map_err(usage)?;
    let (verdict, nf, cond) = decide_input(f, gamma, jet).map_err(math)?;
    let out = if as_json {
        pretty(&json!({
            "schema": 1,
            "command": "decide",
            "vars": pf.vars.names(),
            "input": f.to_string(),
            "verdict": verdict,
            "normal_form": nf,
            "normal_form_equation": nf.as_ref().map(|n| n.equation().to_string()),
            "conditions": cond,
        }))
    } else {
        report::decide_text(&verdict, nf.as_ref(), cond.as_ref())
    };
    if let Verdict::NotApplicable { reason } = &verdict {
        eprint!("{out}");
        return Err(Failure::Math(format!("not applicable: {reason}")));
    }
    Ok(out)
}

fn cmd_replay(id: Option<&str>, verbose: bool) -> Outcome {
    let reports = match id {
        Some(id) => vec![duval_fixtures::replay(id).map_err(usage)?],
        None => duval_fixtures::replay_all().map_err(usage)?,
    };
    let mut out = String::new();
    for r in &reports {
        if verbose {
            out.push_str(&r.to_string());
        } else {
            out.push_str(r.to_string().lines().next().unwrap_or_default());
            out.push('\n');
        }
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    if failed > 0 {
        print!("{out}");
        return Err(Failure::Check(format!(
            "{failed} of {} fixtures failed",
            reports.len()
        )));
    }
    Ok(out)
}

fn cmd_run(file: &Path, poly: Option<&str>, curve: Option<&str>) -> Outcome {
    let pf = read_problem(file)?;
    let id = file
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "problem".into());
    let fx = duval_fixtures::parse_fixture(&pf.to_fixture_text(&id, poly, curve))
        .map_err(|e| Failure::Usage(format!("{}: pipeline {e}", file.display())))?;
    let r = duval_fixtures::run_fixture(&fx);
    let out = r.to_string();
    if r.passed() {
        Ok(out)
    } else {
        print!("{out}");
        Err(Failure::Check(format!("{id} failed")))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Blowup {
            file,
            center,
            weights,
            chart,
            poly,
            json,
        } => cmd_blowup(
            file,
            center.as_deref(),
            weights.as_deref(),
            chart,
            poly.as_deref(),
            *json,
        ),
        Command::Classify {
            file,
            poly,
            curve,
            json,
        } => cmd_classify(file, poly.as_deref(), curve.as_deref(), *json),
        Command::Decide {
            file,
            poly,
            curve,
            jet_bound,
            json,
        } => cmd_decide(file, poly.as_deref(), curve.as_deref(), *jet_bound, *json),
        Command::Replay {
            id,
            all: _,
            verbose,
        } => cmd_replay(id.as_deref(), *verbose),
        Command::Run { file, poly, curve } => cmd_run(file, poly.as_deref(), curve.as_deref()),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            let (Failure::Check(msg) | Failure::Usage(msg) | Failure::Math(msg)) = &f;
            eprintln!("duval: {msg}");
            ExitCode::from(f.code())
        }
    }
}
