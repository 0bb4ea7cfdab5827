//! `bvl`: build, inspect, verify, search, certify and census finite
//! p-groups for Beauville structures.
//!
//! Exit status: 0 verified/found, 1 certified or exhausted with no
//! structure, 2 inconclusive, 3 usage or input error.

mod pcg;
mod wordexpr;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use bvl_core::catalog::{
    build_group, list_families, validate_family, FamilySpec, ValidationReport,
};
use bvl_core::census::{run_census, Suite};
use bvl_core::fingerprint::abelian_invariants;
use bvl_core::search::{certify_non_beauville, search_structure, SearchMode};
use bvl_core::sigma::sigma;
use bvl_core::verify::verify_structure;
use bvl_core::{Group, Verdict};

use wordexpr::evaluate_word;

#[derive(Parser)]
#[command(
    name = "bvl",
    version,
    about = "Beauville p-group toolkit",
    disable_help_subcommand = true
)]
struct Cli {
    /// Worker threads for parallel phases (results are identical for any
    /// count).
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Emit canonical JSON (sorted keys, deterministic bytes).
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the catalog families.
    List,
    /// Build a catalog group, re-validate its defining relations, and
    /// report its profile.
    Build(BuildArgs),
    /// Verify a proposed Beauville structure.
    Verify {
        /// Catalog reference (`family:key=value,...`) or a `.pcg` file path.
        group: String,
        /// First generating pair, e.g. "x,y".
        #[arg(long)]
        s1: String,
        /// Second generating pair, e.g. "x*y^2,x*y^3".
        #[arg(long)]
        s2: String,
    },
    /// Search for a Beauville structure.
    Search {
        group: String,
        /// Exhaustive search over generating pairs (the default).
        #[arg(long, conflicts_with_all = ["heuristic", "seed", "budget"])]
        complete: bool,
        /// Seeded sampling; a miss is inconclusive, not a proof.
        #[arg(long, requires = "seed")]
        heuristic: bool,
        /// RNG seed for --heuristic (required there; no implicit seeding).
        #[arg(long)]
        seed: Option<u64>,
        /// Sample budget for --heuristic.
        #[arg(long, default_value_t = 10_000)]
        budget: u64,
    },
    /// Certify that a group has no Beauville structure.
    Certify { group: String },
    /// Compute the Σ-set of a pair of elements.
    Sigma {
        group: String,
        /// The pair, e.g. "x,y".
        #[arg(long)]
        pair: String,
    },
    /// Run a census suite over catalog groups of order p^3..p^6.
    Census {
        /// One of p3, p4, p5, p6.
        #[arg(long)]
        suite: String,
        #[arg(long)]
        p: u64,
    },
}

#[derive(Args)]
struct BuildArgs {
    #[arg(long)]
    family: String,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    r: Option<u64>,
    #[arg(long)]
    i: Option<u64>,
    #[arg(long)]
    j: Option<u64>,
    #[arg(long)]
    k: Option<u64>,
    #[arg(long)]
    l: Option<u64>,
    /// Extra parameters as key=value (e.g. --param e1=2 --param e2=1).
    #[arg(long = "param", value_name = "KEY=VALUE")]
    params: Vec<String>,
    /// Also write the presentation to this `.pcg` file.
    #[arg(long, value_name = "PATH")]
    emit_pcg: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(3),
            };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    if cli.jobs == 0 {
        bail!("--jobs must be at least 1");
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build_global()
        .context("initializing the worker pool")?;

    match cli.command {
        Command::List => {
            let families = list_families();
            if cli.json {
                let rows: Vec<_> = families
                    .iter()
                    .map(|f| json!({"id": f.id, "params": f.params, "summary": f.summary}))
                    .collect();
                emit_json(&rows)?;
            } else {
                for f in families {
                    println!("{:18} {:32} {}", f.id, f.params, f.summary);
                }
            }
            Ok(0)
        }
        Command::Build(args) => cmd_build(args, cli.json),
        Command::Verify { group, s1, s2 } => {
            let (name, g) = resolve_group(&group)?;
            let p1 = parse_pair(&g, &s1).context("parsing --s1")?;
            let p2 = parse_pair(&g, &s2).context("parsing --s2")?;
            let verdict = verify_structure(&g, p1, p2);
            report_verdict(&name, &g, &verdict, cli.json)
        }
        Command::Search {
            group,
            complete: _,
            heuristic,
            seed,
            budget,
        } => {
            let (name, g) = resolve_group(&group)?;
            let mode = if heuristic {
                let seed = seed.expect("clap enforces --seed with --heuristic");
                SearchMode::Heuristic { seed, budget }
            } else {
                SearchMode::Complete
            };
            let verdict = search_structure(&g, mode)?;
            report_verdict(&name, &g, &verdict, cli.json)
        }
        Command::Certify { group } => {
            let (name, g) = resolve_group(&group)?;
            let verdict = certify_non_beauville(&g);
            report_verdict(&name, &g, &verdict, cli.json)
        }
        Command::Sigma { group, pair } => {
            let (name, g) = resolve_group(&group)?;
            let (x, y) = parse_pair(&g, &pair).context("parsing --pair")?;
            let s = sigma(&g, x, y);
            if cli.json {
                let elements: Vec<Vec<u32>> = s
                    .elements()
                    .iter()
                    .map(|&e| g.element(e).exponents)
                    .collect();
                emit_json(&json!({
                    "group": name,
                    "pair": [g.element(x).word, g.element(y).word],
                    "size": s.len(),
                    "class_count": s.class_ids().len(),
                    "elements": elements,
                }))?;
            } else {
                println!(
                    "Σ({}, {}) in {}: {} elements across {} conjugacy classes",
                    g.element(x).word,
                    g.element(y).word,
                    name,
                    s.len(),
                    s.class_ids().len()
                );
            }
            Ok(0)
        }
        Command::Census { suite, p } => {
            let suite = Suite::parse(&suite)
                .ok_or_else(|| anyhow!("unknown suite `{suite}` (expected p3, p4, p5 or p6)"))?;
            let report = run_census(suite, p)?;
            if cli.json {
                emit_json(&report)?;
            } else {
                println!(
                    "census {} at p = {}: {} fingerprint-distinct classes, {} Beauville (lower bounds)",
                    report.suite, report.p, report.distinct_classes, report.beauville_count
                );
                if let Some(expected) = report.conjectured_beauville {
                    println!("conjectured Beauville count: {expected}");
                }
                for row in &report.rows {
                    println!(
                        "  {:16} order {:>8}  members {:>3}  {}  [{}]",
                        row.label,
                        row.order,
                        row.members,
                        if row.beauville { "Beauville    " } else { "not Beauville" },
                        describe_verdict(&row.verdict)
                    );
                }
            }
            Ok(0)
        }
    }
}

fn cmd_build(args: BuildArgs, json: bool) -> Result<u8> {
    let mut spec = FamilySpec::new(&args.family);
    for (key, value) in [
        ("p", args.p),
        ("n", args.n),
        ("r", args.r),
        ("i", args.i),
        ("j", args.j),
        ("k", args.k),
        ("l", args.l),
    ] {
        if let Some(v) = value {
            spec = spec.with(key, v);
        }
    }
    for item in &args.params {
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| anyhow!("--param `{item}` is not of the form key=value"))?;
        let value: u64 = value
            .parse()
            .with_context(|| format!("--param `{item}` has a non-integer value"))?;
        spec = spec.with(key, value);
    }

    let g = build_group(&spec)?;
    let report = validate_family(&g, &spec)?;
    if let Some(path) = &args.emit_pcg {
        pcg::write_group(path, g.pres())?;
    }
    if json {
        emit_json(&json!({
            "group": spec.reference(),
            "order": g.order(),
            "exponent": g.exponent(),
            "center_order": g.center().len(),
            "conjugacy_classes": g.num_classes(),
            "frattini_rank": g.frattini_rank(),
            "abelian_invariants": abelian_invariants(&g),
            "validation": validation_json(&report),
        }))?;
    } else {
        println!(
            "{}: order {}, exponent {}, center {}, {} classes, Frattini rank {:?}",
            spec.reference(),
            g.order(),
            g.exponent(),
            g.center().len(),
            g.num_classes(),
            g.frattini_rank()
        );
        println!(
            "validation: {} ({} relation checks, order {} expected {})",
            if report.all_pass() { "all relations hold" } else { "FAILURES" },
            report.checks.len(),
            report.actual_order,
            report.expected_order
        );
        for check in report.checks.iter().filter(|c| !c.holds) {
            println!("  FAILED: {}", check.relation);
        }
    }
    Ok(if report.all_pass() { 0 } else { 1 })
}

fn validation_json(report: &ValidationReport) -> serde_json::Value {
    json!({
        "family": report.family,
        "all_pass": report.all_pass(),
        "expected_order": report.expected_order.to_string(),
        "actual_order": report.actual_order.to_string(),
        "checks": report.checks,
        "notes": report.notes,
    })
}

/// A group argument is a `.pcg` file path or a catalog reference
/// `family:key=value,...`.
fn resolve_group(arg: &str) -> Result<(String, Group)> {
    let path = Path::new(arg);
    if arg.ends_with(".pcg") || path.is_file() {
        let pres = pcg::read_group(path)?;
        let g = Group::from_presentation(pres)
            .with_context(|| format!("collecting the group from {arg}"))?;
        Ok((arg.to_string(), g))
    } else {
        let spec = FamilySpec::parse_reference(arg)?;
        let g = build_group(&spec)?;
        Ok((spec.reference(), g))
    }
}

/// Split "w1,w2" at the top-level comma (commas inside brackets or
/// parentheses belong to the words) and evaluate both words.
fn parse_pair(g: &Group, text: &str) -> Result<(u32, u32)> {
    let mut depth = 0usize;
    for (pos, c) in text.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                let first = evaluate_word(g, &text[..pos])?;
                let second = evaluate_word(g, &text[pos + 1..])?;
                return Ok((first, second));
            }
            _ => {}
        }
    }
    bail!("expected two comma-separated words, got `{text}`")
}

fn report_verdict(name: &str, g: &Group, verdict: &Verdict, json: bool) -> Result<u8> {
    if json {
        emit_json(&json!({
            "group": name,
            "order": g.order(),
            "result": verdict,
        }))?;
    } else {
        println!("{name}: {}", describe_verdict(verdict));
    }
    Ok(verdict.exit_code() as u8)
}

fn describe_verdict(v: &Verdict) -> String {
    let pair = |p: &bvl_core::Pair| format!("({}, {})", p.x.word, p.y.word);
    match v {
        Verdict::BeauvilleVerified {
            structure,
            sigma_size_first,
            sigma_size_second,
        } => format!(
            "beauville_verified {{{}, {}}} with |Σ₁| = {sigma_size_first}, |Σ₂| = {sigma_size_second}",
            pair(&structure.first),
            pair(&structure.second)
        ),
        Verdict::NotAStructure { reasons } => {
            let parts: Vec<String> = reasons
                .iter()
                .map(|r| match r {
                    bvl_core::Reason::FirstPairNotGenerating => {
                        "first pair does not generate".to_string()
                    }
                    bvl_core::Reason::SecondPairNotGenerating => {
                        "second pair does not generate".to_string()
                    }
                    bvl_core::Reason::SigmaOverlap { witness, class_rep } => format!(
                        "Σ-sets overlap: witness {} (class of {})",
                        witness.word, class_rep.word
                    ),
                })
                .collect();
            format!("not_a_structure: {}", parts.join("; "))
        }
        Verdict::Found {
            structure,
            generating_pairs,
            distinct_sigma_sets,
        } => format!(
            "found {{{}, {}}} ({generating_pairs} generating pairs, {distinct_sigma_sets} distinct Σ-sets)",
            pair(&structure.first),
            pair(&structure.second)
        ),
        Verdict::ExhaustedNone {
            generating_pairs,
            distinct_sigma_sets,
        } => format!(
            "exhausted_none: no structure among {generating_pairs} generating pairs ({distinct_sigma_sets} distinct Σ-sets)"
        ),
        Verdict::Certified { certificate } => match certificate {
            bvl_core::Certificate::NotTwoGenerated { frattini_rank } => {
                format!("certified non-Beauville: Frattini rank {frattini_rank} ≠ 2")
            }
            bvl_core::Certificate::UniversalElement {
                element,
                gen_pairs_scanned,
                candidates_tried,
            } => format!(
                "certified non-Beauville: {} lies in Σ of every generating pair \
                 ({gen_pairs_scanned} pairs scanned, {candidates_tried} candidates tried)",
                element.word
            ),
            bvl_core::Certificate::ExhaustiveScan {
                generating_pairs,
                distinct_sigma_sets,
            } => format!(
                "certified non-Beauville: every pair of the {distinct_sigma_sets} distinct \
                 Σ-sets overlaps ({generating_pairs} generating pairs)"
            ),
        },
        Verdict::Inconclusive { detail } => format!("inconclusive: {detail}"),
    }
}

/// Canonical JSON: routed through `serde_json::Value`, whose object maps
/// are sorted, so equal inputs give byte-identical output for any worker
/// count.
fn emit_json<T: serde::Serialize>(value: &T) -> Result<()> {
    let v = serde_json::to_value(value)?;
    println!("{}", serde_json::to_string_pretty(&v)?);
    Ok(())
}
