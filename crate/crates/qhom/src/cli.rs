//! Command-line interface: `analyze`, `check-point`, and `sweep`.

use crate::analyzer::CurveInput;
use crate::config::{AnalysisConfig, OutputFormat};
use crate::error::{Error, Result};
use crate::families::{family_generators, family_usage, Params, FAMILY_NAMES};
use crate::parser::{parse_polynomial, parse_polynomial_file};
use crate::point::ProjectivePoint;
use crate::report::{analyze_curve, check_point, point_record_json, point_record_text};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "qhom",
    about = "Quasi-homogeneity of plane curve singularities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonOpts {
    /// Emit a JSON report instead of text.
    #[arg(long)]
    json: bool,
    /// Path to a key=value configuration file (default: $QHOM_CONFIG).
    #[arg(long)]
    config: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one curve given as an expression, a file path, or a family.
    Analyze {
        /// Polynomial expression in x0, x1, x2 (or x, y, z), or a file path.
        input: Option<String>,
        /// Build the curve from a named family instead.
        #[arg(long)]
        family: Option<String>,
        /// Family parameter, repeatable: --params m=2 --params a=1,2
        #[arg(long = "params")]
        params: Vec<String>,
        /// Skip the local Milnor/Tjurina oracle at each point.
        #[arg(long)]
        no_oracle: bool,
        /// Allow the rank criterion on 3-syzygy curves (conjectural).
        #[arg(long)]
        experiment: bool,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Rank test and local invariants at one rational point a:b:c.
    CheckPoint {
        input: String,
        point: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Analyze a family over integer parameter ranges.
    Sweep {
        #[arg(long)]
        family: String,
        /// Inclusive range, repeatable: --range m=2..5
        #[arg(long = "range")]
        ranges: Vec<String>,
        #[arg(long)]
        no_oracle: bool,
        #[arg(long)]
        experiment: bool,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// List the available curve families.
    Families,
}

fn parse_params(pairs: &[String]) -> Result<Params> {
    let mut out = Params::new();
    for pair in pairs {
        let (k, v) = pair.split_once('=').ok_or_else(|| {
            Error::InvalidFamilyParams(format!("expected key=value, got '{}'", pair))
        })?;
        out.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(out)
}

/// An expression, or a path to a UTF-8 file holding one expression with
/// optional `#` comments.
fn load_input(raw: &str) -> Result<CurveInput> {
    let f = if std::path::Path::new(raw).is_file() {
        let contents =
            std::fs::read_to_string(raw).map_err(|e| Error::Io(format!("{}: {}", raw, e)))?;
        parse_polynomial_file(&contents)?
    } else {
        parse_polynomial(raw)?
    };
    let degree = f.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
    Ok(CurveInput {
        f,
        degree,
        label: None,
        declared_points: Vec::new(),
    })
}

fn resolve_input(
    input: &Option<String>,
    family: &Option<String>,
    params: &[String],
) -> Result<CurveInput> {
    match (input, family) {
        (Some(_), Some(_)) => Err(Error::InvalidFamilyParams(
            "give either an expression or --family, not both".into(),
        )),
        (Some(raw), None) => load_input(raw),
        (None, Some(name)) => family_generators(name, &parse_params(params)?),
        (None, None) => Err(Error::InvalidFamilyParams(
            "no input: give an expression, a file, or --family".into(),
        )),
    }
}

fn load_config(common: &CommonOpts, experiment: bool) -> Result<AnalysisConfig> {
    let mut cfg = AnalysisConfig::load(common.config.as_deref())?;
    if experiment {
        cfg.experiment = true;
    }
    if common.json {
        cfg.output = OutputFormat::Json;
    }
    Ok(cfg)
}

fn print_error(e: &Error, json: bool) {
    if json {
        let v = json!({ "error": { "code": e.code(), "message": e.to_string() } });
        println!("{}", serde_json::to_string_pretty(&v).unwrap());
    } else {
        eprintln!("error: {}", e);
    }
}

fn exit_code(e: &Error) -> i32 {
    if e.is_rejection() {
        2
    } else {
        1
    }
}

/// Inclusive integer range "key=lo..hi".
fn parse_range(raw: &str) -> Result<(String, u32, u32)> {
    let bad = || Error::InvalidFamilyParams(format!("expected key=lo..hi, got '{}'", raw));
    let (k, span) = raw.split_once('=').ok_or_else(bad)?;
    let (lo, hi) = span.split_once("..").ok_or_else(bad)?;
    let lo: u32 = lo.trim().parse().map_err(|_| bad())?;
    let hi: u32 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((k.trim().to_string(), lo, hi))
}

/// Cartesian product of the ranges, row-major in the order given.
fn instances(ranges: &[(String, u32, u32)]) -> Vec<Params> {
    let mut out = vec![Params::new()];
    for (key, lo, hi) in ranges {
        let mut next = Vec::new();
        for params in &out {
            for v in *lo..=*hi {
                let mut p = params.clone();
                p.insert(key.clone(), v.to_string());
                next.push(p);
            }
        }
        out = next;
    }
    out
}

fn run_analyze(
    input: &Option<String>,
    family: &Option<String>,
    params: &[String],
    no_oracle: bool,
    experiment: bool,
    common: &CommonOpts,
) -> i32 {
    let cfg = match load_config(common, experiment) {
        Ok(c) => c,
        Err(e) => {
            print_error(&e, common.json);
            return exit_code(&e);
        }
    };
    let json = cfg.output == OutputFormat::Json;
    let curve = match resolve_input(input, family, params) {
        Ok(c) => c,
        Err(e) => {
            print_error(&e, json);
            return exit_code(&e);
        }
    };
    match analyze_curve(&curve, &cfg, !no_oracle) {
        Ok(rep) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&rep.to_json()).unwrap());
            } else {
                print!("{}", rep.to_text(true));
            }
            0
        }
        Err(e) => {
            print_error(&e, json);
            exit_code(&e)
        }
    }
}

fn run_check_point(input: &str, point: &str, common: &CommonOpts) -> i32 {
    let cfg = match load_config(common, false) {
        Ok(c) => c,
        Err(e) => {
            print_error(&e, common.json);
            return exit_code(&e);
        }
    };
    let json = cfg.output == OutputFormat::Json;
    let run = || -> Result<String> {
        let curve = load_input(input)?;
        let p = ProjectivePoint::parse(point)?;
        let rec = check_point(&curve, &p, &cfg)?;
        Ok(if json {
            serde_json::to_string_pretty(&point_record_json(&rec)).unwrap()
        } else {
            point_record_text(&rec)
        })
    };
    match run() {
        Ok(s) => {
            println!("{}", s);
            0
        }
        Err(e) => {
            print_error(&e, json);
            exit_code(&e)
        }
    }
}

fn run_sweep(
    family: &str,
    ranges: &[String],
    no_oracle: bool,
    experiment: bool,
    common: &CommonOpts,
) -> i32 {
    let cfg = match load_config(common, experiment) {
        Ok(c) => c,
        Err(e) => {
            print_error(&e, common.json);
            return exit_code(&e);
        }
    };
    let json = cfg.output == OutputFormat::Json;
    let parsed: Result<Vec<_>> = ranges.iter().map(|r| parse_range(r)).collect();
    let parsed = match parsed {
        Ok(p) if !p.is_empty() => p,
        Ok(_) => {
            let e = Error::InvalidFamilyParams("sweep needs at least one --range".into());
            print_error(&e, json);
            return exit_code(&e);
        }
        Err(e) => {
            print_error(&e, json);
            return exit_code(&e);
        }
    };
    let grid = instances(&parsed);

    // run concurrently, report in parameter order
    let results: Vec<Result<crate::report::CurveReport>> = std::thread::scope(|scope| {
        let handles: Vec<_> = grid
            .iter()
            .map(|params| {
                let cfg = cfg.clone();
                scope.spawn(move || {
                    let curve = family_generators(family, params)?;
                    analyze_curve(&curve, &cfg, !no_oracle)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });

    let mut rows = Vec::new();
    let mut agreed = 0usize;
    let mut compared = 0usize;
    let mut max_q: Option<(usize, i64)> = None;
    let mut internal = false;
    for (params, res) in grid.iter().zip(&results) {
        let tag: Vec<String> = params.iter().map(|(k, v)| format!("{}={}", k, v)).collect();
        match res {
            Ok(rep) => {
                for rec in &rep.points {
                    if let Some(a) = rec.agreement {
                        compared += 1;
                        if a {
                            agreed += 1;
                        }
                    }
                }
                if let Ok(q) = &rep.qh {
                    if let Some(deg) = q.scheme_degree {
                        let r2 = (rep.curve.r as i64) * (rep.curve.r as i64);
                        if max_q.map_or(true, |(best, _)| deg > best) {
                            max_q = Some((deg, r2));
                        }
                    }
                }
                rows.push((tag, Ok(rep)));
            }
            Err(e) => {
                if !e.is_rejection() {
                    internal = true;
                }
                rows.push((tag, Err(e.clone())));
            }
        }
    }

    let rate = if compared == 0 {
        1.0
    } else {
        agreed as f64 / compared as f64
    };
    if json {
        let instances: Vec<serde_json::Value> = rows
            .iter()
            .map(|(tag, res)| match res {
                Ok(rep) => json!({ "params": tag, "report": rep.to_json() }),
                Err(e) => json!({
                    "params": tag,
                    "error": { "code": e.code(), "message": e.to_string() },
                }),
            })
            .collect();
        let summary = json!({
            "agreement": { "agreed": agreed, "compared": compared },
            "max_scheme_degree": max_q.map(|(q, _)| q),
            "r_squared_bound": max_q.map(|(_, r2)| r2),
        });
        let v = json!({ "family": family, "instances": instances, "summary": summary });
        println!("{}", serde_json::to_string_pretty(&v).unwrap());
    } else {
        for (tag, res) in &rows {
            println!("--- {} {} ---", family, tag.join(" "));
            match res {
                Ok(rep) => print!("{}", rep.to_text(true)),
                Err(e) => println!("error: {}", e),
            }
        }
        println!(
            "summary: criterion/oracle agreement {}/{} ({:.0}%)",
            agreed,
            compared,
            rate * 100.0
        );
        if let Some((q, r2)) = max_q {
            println!("summary: max scheme degree q = {} vs bound r^2 = {}", q, r2);
        }
    }
    if internal {
        1
    } else {
        0
    }
}

pub fn run() -> i32 {
    let cli = Cli::parse();
    match &cli.command {
        Command::Analyze {
            input,
            family,
            params,
            no_oracle,
            experiment,
            common,
        } => run_analyze(input, family, params, *no_oracle, *experiment, common),
        Command::CheckPoint {
            input,
            point,
            common,
        } => run_check_point(input, point, common),
        Command::Sweep {
            family,
            ranges,
            no_oracle,
            experiment,
            common,
        } => run_sweep(family, ranges, *no_oracle, *experiment, common),
        Command::Families => {
            for name in FAMILY_NAMES {
                println!("{:<18} {}", name, family_usage(name).unwrap_or(""));
            }
            0
        }
    }
}
