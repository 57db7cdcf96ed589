use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use lndlab::derivation::{nilpotency_index, verify_regular, Nilpotency};
use lndlab::divisor::{fiber_solve, validate_fiber, Divisor, DivisorError};
use lndlab::fixtures::{
    bundle_skew, check_automorphism, check_surface_relations, involution, load_fixture, Fixture,
};
use lndlab::io::DerivationDescriptor;
use lndlab::picard::{intersection_counts, is_positive, pic_rank, standard_form};
use lndlab::semigroup::{homogeneous_lnd_obstruction, membership};
use lndlab::{CurveGraph, FibrationPresentation, LatticePoint, PicardElement, SemigroupPresentation};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::io::Write;
use std::process::ExitCode;

const DEFAULT_MAX_ITER: usize = 64;

#[derive(Parser)]
#[command(name = "lndlab", version, about = "Exact checks for derivations, divisors and Picard classes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Substitute the chart into every relation of a fixture.
    CheckSurface {
        #[arg(long, default_value = "surface-S")]
        fixture: String,
        /// Replace a relation before checking, as LABEL:LHS=RHS.
        #[arg(long)]
        perturb: Vec<String>,
    },
    /// Check that a generator map preserves the relations.
    CheckAutomorphism {
        #[arg(long, default_value = "surface-S")]
        fixture: String,
        /// JSON {"generators": {...}, "chart": {...}}, inline or a path.
        /// Defaults to the built-in involution.
        #[arg(long)]
        map: Option<String>,
    },
    /// Obstruction to homogeneous lnds on a monomial algebra.
    GradedLnd(LatticeArgs),
    /// Regularity and nilpotency of a derivation.
    CheckDerivation {
        #[arg(long, conflicts_with = "descriptor")]
        m: Option<u32>,
        #[arg(long, conflicts_with = "descriptor")]
        n: Option<u32>,
        /// Derivation descriptor JSON, inline or a path.
        #[arg(long)]
        descriptor: Option<String>,
    },
    /// Kernel of the pairing conditions on a set of curves.
    FiberSolve {
        #[command(flatten)]
        graph: GraphArgs,
        /// Comma-separated vertices carrying an equation.
        #[arg(long, value_delimiter = ',', required = true)]
        fiber: Vec<String>,
        /// Free boundary vertex, optionally with extra neighbours: NAME or NAME:V1,V2.
        #[arg(long)]
        boundary: Vec<String>,
    },
    /// Numerical fiber test for a divisor.
    ValidateFiber {
        #[command(flatten)]
        graph: GraphArgs,
        /// Divisor JSON such as {"A1":"1","A2":"2"}, inline or a path.
        #[arg(long, conflicts_with = "fiber")]
        divisor: Option<String>,
        /// Name of a fiber stored in the fixture.
        #[arg(long)]
        fiber: Option<String>,
    },
    /// Blow down a (-1)-curve.
    Contract {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        vertex: String,
    },
    /// Standard form and positivity of a Picard class.
    PicardReduce {
        /// Fibration JSON, inline or a path.
        #[arg(long, conflicts_with = "fixture")]
        fibration: Option<String>,
        #[arg(long)]
        fixture: Option<String>,
        /// Element JSON {"m":0,"coeffs":[[0],[-2]]}, inline or a path.
        #[arg(long, conflicts_with = "class")]
        element: Option<String>,
        /// Name of a class stored in the fixture.
        #[arg(long)]
        class: Option<String>,
    },
    /// Intersection-count table for degree N and vanishing order r.
    Counts {
        #[arg(long = "N")]
        n: i64,
        #[arg(long = "r")]
        r: i64,
    },
    /// Bounded membership test for a lattice point.
    Membership {
        #[command(flatten)]
        lattice: LatticeArgs,
        /// The point as R,S.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, default_value_t = 8)]
        bound: u32,
    },
}

#[derive(Args)]
struct LatticeArgs {
    #[arg(long, conflicts_with = "lattice", default_value = "graded-R")]
    fixture: String,
    /// Generator list JSON [[r,s],...], inline or a path.
    #[arg(long)]
    lattice: Option<String>,
}

#[derive(Args)]
struct GraphArgs {
    /// Graph JSON, inline or a path.
    #[arg(long, conflicts_with = "fixture")]
    graph: Option<String>,
    #[arg(long)]
    fixture: Option<String>,
}

enum Outcome {
    Pass(Value),
    Fail(Value),
}

fn verdict(pass: bool, report: Value) -> Outcome {
    if pass {
        Outcome::Pass(report)
    } else {
        Outcome::Fail(report)
    }
}

/// Inline JSON when the text looks like JSON, otherwise a file path.
fn read_json<T: serde::de::DeserializeOwned>(arg: &str) -> Result<T> {
    let trimmed = arg.trim_start();
    let text = if trimmed.starts_with('{') || trimmed.starts_with('[') || trimmed.starts_with('"') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?
    };
    serde_json::from_str(&text).with_context(|| format!("parsing {arg}"))
}

fn max_iter() -> Result<usize> {
    match std::env::var("LNDLAB_MAX_ITER") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| anyhow!("LNDLAB_MAX_ITER must be a nonnegative integer, got `{v}`")),
        Err(_) => Ok(DEFAULT_MAX_ITER),
    }
}

fn fixture(name: &str) -> Result<Fixture> {
    Ok(load_fixture(name)?)
}

fn graph_of(args: &GraphArgs) -> Result<(CurveGraph, Option<Fixture>)> {
    match (&args.graph, &args.fixture) {
        (Some(path), _) => Ok((read_json(path)?, None)),
        (None, name) => {
            let fx = fixture(name.as_deref().unwrap_or("divisor-graph-S"))?;
            let g = fx
                .graph
                .clone()
                .ok_or_else(|| anyhow!("fixture `{}` has no graph", fx.name))?;
            Ok((g, Some(fx)))
        }
    }
}

fn lattice_of(args: &LatticeArgs) -> Result<SemigroupPresentation> {
    match &args.lattice {
        Some(src) => read_json(src),
        None => Ok(fixture(&args.fixture)?.semigroup()?),
    }
}

fn run(cmd: Command) -> Result<Outcome> {
    match cmd {
        Command::CheckSurface { fixture: name, perturb } => {
            let mut fx = fixture(&name)?;
            for p in &perturb {
                let (label, rel) = p
                    .split_once(':')
                    .ok_or_else(|| anyhow!("--perturb expects LABEL:LHS=RHS, got `{p}`"))?;
                fx = fx.perturbed(label, rel)?;
            }
            let report = check_surface_relations(&fx)?;
            Ok(verdict(
                report.is_pass(),
                json!({ "fixture": fx.name, "pass": report.is_pass(), "report": report }),
            ))
        }
        Command::CheckAutomorphism { fixture: name, map } => {
            let fx = fixture(&name)?;
            let (gens, chart) = match map {
                Some(src) => {
                    #[derive(serde::Deserialize)]
                    struct MapSpec {
                        #[serde(default)]
                        generators: BTreeMap<String, String>,
                        chart: Option<BTreeMap<String, String>>,
                    }
                    let spec: MapSpec = read_json(&src)?;
                    (spec.generators, spec.chart)
                }
                None => {
                    let (g, c) = involution();
                    (g, Some(c))
                }
            };
            let report = check_automorphism(&fx, &gens, chart.as_ref())?;
            Ok(verdict(
                report.is_pass(),
                json!({ "fixture": fx.name, "pass": report.is_pass(), "report": report }),
            ))
        }
        Command::GradedLnd(args) => {
            let sg = lattice_of(&args)?;
            let report = homogeneous_lnd_obstruction(&sg)?;
            Ok(Outcome::Pass(json!({ "generators": sg.generators(), "report": report })))
        }
        Command::CheckDerivation { m, n, descriptor } => check_derivation(m, n, descriptor),
        Command::FiberSolve { graph, fiber, boundary } => {
            let (g, _) = graph_of(&graph)?;
            let mut bmap = BTreeMap::new();
            for b in boundary {
                let (name, extra) = match b.split_once(':') {
                    Some((n, rest)) => (n.to_string(), rest.split(',').map(|s| s.trim().to_string()).collect()),
                    None => (b, Vec::new()),
                };
                bmap.insert(name, extra);
            }
            let sol = fiber_solve(&g, &fiber, &bmap)?;
            Ok(Outcome::Pass(serde_json::to_value(sol)?))
        }
        Command::ValidateFiber { graph, divisor, fiber } => {
            let (g, fx) = graph_of(&graph)?;
            let d: Divisor = match (divisor, fiber) {
                (Some(src), _) => read_json(&src)?,
                (None, Some(name)) => fx
                    .as_ref()
                    .and_then(|f| f.fiber(&name).cloned())
                    .ok_or_else(|| anyhow!("no stored fiber `{name}`"))?,
                (None, None) => bail!("give --divisor or --fiber"),
            };
            let report = validate_fiber(&g, &d);
            Ok(verdict(
                report.is_pass(),
                json!({ "divisor": d, "pass": report.is_pass(), "report": report }),
            ))
        }
        Command::Contract { graph, vertex } => {
            let (g, _) = graph_of(&graph)?;
            match g.contract(&vertex) {
                Ok(h) => Ok(Outcome::Pass(json!({ "pass": true, "graph": h }))),
                Err(e @ (DivisorError::NotMinusOne { .. } | DivisorError::ContractionMultiEdge(..))) => {
                    Ok(Outcome::Fail(json!({ "pass": false, "reason": e.to_string() })))
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::PicardReduce {
            fibration,
            fixture: name,
            element,
            class,
        } => {
            let fx = match (&fibration, &name) {
                (None, n) => Some(fixture(n.as_deref().unwrap_or("fibration-b"))?),
                _ => None,
            };
            let fib: FibrationPresentation = match (&fibration, &fx) {
                (Some(src), _) => read_json(src)?,
                (None, Some(f)) => f
                    .fibration
                    .clone()
                    .ok_or_else(|| anyhow!("fixture `{}` has no fibration", f.name))?,
                (None, None) => unreachable!(),
            };
            let l: PicardElement = match (element, class) {
                (Some(src), _) => read_json(&src)?,
                (None, Some(c)) => fx
                    .as_ref()
                    .and_then(|f| f.class(&c).cloned())
                    .ok_or_else(|| anyhow!("no stored class `{c}`"))?,
                (None, None) => bail!("give --element or --class"),
            };
            let standard = standard_form(&l, &fib)?;
            Ok(Outcome::Pass(json!({
                "rank": pic_rank(&fib),
                "input": l,
                "standard": standard,
                "positive": is_positive(&l, &fib)?,
            })))
        }
        Command::Counts { n, r } => Ok(Outcome::Pass(serde_json::to_value(intersection_counts(n, r)?)?)),
        Command::Membership { lattice, point, bound } => {
            let sg = lattice_of(&lattice)?;
            let p = parse_point(&point)?;
            Ok(Outcome::Pass(json!({ "point": p, "membership": membership(p, &sg, bound) })))
        }
    }
}

fn parse_point(text: &str) -> Result<LatticePoint> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [r, s] => Ok(LatticePoint::new(
            r.parse().with_context(|| format!("bad coordinate `{r}`"))?,
            s.parse().with_context(|| format!("bad coordinate `{s}`"))?,
        )),
        _ => bail!("--point expects R,S, got `{text}`"),
    }
}

fn check_derivation(m: Option<u32>, n: Option<u32>, descriptor: Option<String>) -> Result<Outcome> {
    let bound = max_iter()?;
    let resolved = match descriptor {
        Some(src) => read_json::<DerivationDescriptor>(&src)?.resolve()?,
        None => {
            let (dm, dn) = lndlab::fixtures::DEFAULT_SKEW;
            let fx = bundle_skew(m.unwrap_or(dm), n.unwrap_or(dn))?;
            let df = fx.derivation.expect("skew fixture carries a derivation");
            lndlab::io::ResolvedDerivation {
                elements: fx.chart.generators().to_vec(),
                derivation: df.derivation,
                witnesses: Some(df.witnesses),
            }
        }
    };
    let d = &resolved.derivation;
    let regularity = match &resolved.witnesses {
        Some(w) => Some(verify_regular(d, w)?),
        None => None,
    };
    let mut nilpotency = serde_json::Map::new();
    let mut all_certified = true;
    for (name, p) in &resolved.elements {
        let result = nilpotency_index(d, p, bound)?;
        all_certified &= matches!(result, Nilpotency::Certified(_));
        let summary = match &result {
            Nilpotency::Certified(c) => json!({ "result": "certified", "index": c.index }),
            Nilpotency::NotWithinBound { bound } => json!({ "result": "not_within_bound", "bound": bound }),
        };
        nilpotency.insert(name.clone(), summary);
    }
    let regular = regularity.as_ref().is_none_or(|r| r.is_pass());
    let pass = regular && all_certified;
    Ok(verdict(
        pass,
        json!({
            "images": d.format_images(),
            "pass": pass,
            "regularity": regularity,
            "nilpotency": nilpotency,
        }),
    ))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (code, value) = match run(cli.command) {
        Ok(Outcome::Pass(v)) => (0, v),
        Ok(Outcome::Fail(v)) => (1, v),
        Err(e) => {
            eprintln!("error: {e:#}");
            (2, json!({ "error": format!("{e:#}") }))
        }
    };
    let text = serde_json::to_string_pretty(&value).expect("reports serialize");
    let mut out = std::io::stdout().lock();
    if writeln!(out, "{text}").is_err() {
        // closed pipe; the exit code still carries the verdict
    }
    ExitCode::from(code)
}
