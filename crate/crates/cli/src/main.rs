//! `strata`: every pipeline stage behind a subcommand. JSON goes to stdout
//! (or `--out`), human summaries to stderr.
//!
//! Exit status: 0 on success, 2 when the only results are undecided, 1 on
//! error.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use strata_core::catalog::{filter, locate_catalog, read_catalog_file, Predicate, VerdictCache};
use strata_core::planner::{build_q_dn_sing, flag_extension, plan};
use strata_core::presentation::{realization_presentation, stratum_presentation, Presentation};
use strata_core::reduction::reduce;
use strata_core::smoothness::{classify, Verdict};
use strata_core::subset::{self, Subset};
use strata_core::tropical::{corank_vector, star_subdivision, witness_valuations};
use strata_core::{fixtures, Config, Matroid, MatroidJson};

#[derive(Parser)]
#[command(name = "strata", version, about = "Realization spaces of matroids: presentations, reduction, smoothness and corank subdivisions")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Matroid JSON file, or a built-in name: qsing, gaussian9, curve10,
    /// planes10, cube, singular:D:N.
    #[arg(long, global = true)]
    matroid: Option<String>,
    /// Catalog file for `batch`; defaults to the one found via STRATA_CATALOG_DIR.
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
    /// Write JSON here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[arg(long, global = true)]
    max_degree: Option<u32>,
    #[arg(long, global = true)]
    max_basis: Option<usize>,
    /// Reduction step budget.
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// JSONL verdict cache for `batch`.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Stratum,
    Realization,
}

#[derive(Subcommand)]
enum Command {
    /// Structure flags, lines or planes, and cyclic flats.
    Info,
    /// Stratum or realization-space presentation.
    Present {
        #[arg(long, value_enum, default_value = "realization")]
        kind: Kind,
        /// Reference circuit (realization) or basis (stratum), e.g. "1,2,3,4".
        #[arg(long)]
        reference: Option<String>,
    },
    /// Reduce the realization presentation and print the trace.
    Reduce {
        #[arg(long)]
        reference: Option<String>,
    },
    /// Realizability, smoothness and component count.
    Classify,
    /// Staged catalog filter with per-stage counts.
    Batch {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        /// Comma-separated predicates; defaults depend on (d, n).
        #[arg(long)]
        predicates: Option<String>,
    },
    /// Corank vector in colex order.
    Corank,
    /// Star subdivision of a connected paving matroid.
    Star,
    /// t-adic witnesses for the corank vector of the singular (d, n) matroid.
    Witness {
        #[arg(long, default_value_t = 3)]
        d: usize,
        #[arg(long, default_value_t = 12)]
        n: usize,
    },
    /// Reduction plan by deletions, dualization and coextension peels.
    Plan,
    /// The flag of matroids Q_1, …, Q_{n-1} through Q.
    Flag,
}

fn config(g: &Global) -> Result<Config> {
    let mut cfg = Config::default();
    if let Some(v) = g.workers {
        cfg.workers = v;
    }
    if let Some(v) = g.max_degree {
        cfg.max_degree = v;
    }
    if let Some(v) = g.max_basis {
        cfg.max_basis = v;
    }
    if let Some(v) = g.budget {
        cfg.budget = v;
    }
    cfg.cache = g.cache.clone();
    cfg.catalogs = g.catalog.iter().cloned().collect();
    cfg.validate()?;
    Ok(cfg)
}

fn builtin(name: &str) -> Result<Option<Matroid>> {
    if let Some(m) = fixtures::by_name(name) {
        return Ok(Some(m));
    }
    match name.strip_prefix("singular:").and_then(|r| r.split_once(':')) {
        Some((d, n)) => Ok(Some(build_q_dn_sing(d.parse()?, n.parse()?)?)),
        None => Ok(None),
    }
}

fn load_matroid(g: &Global) -> Result<Matroid> {
    let source = g.matroid.as_deref().context("--matroid is required for this command")?;
    if let Some(m) = builtin(source)? {
        return Ok(m);
    }
    let text = fs::read_to_string(source).with_context(|| format!("reading {source}"))?;
    let j: MatroidJson = serde_json::from_str(&text).with_context(|| format!("parsing matroid JSON in {source}"))?;
    Ok(j.to_matroid()?)
}

fn reference(source: Option<&str>, n: usize) -> Result<Option<Subset>> {
    match source {
        None => Ok(None),
        Some(s) => Ok(Matroid::parse_sets(&[s], n)?.first().copied()),
    }
}

fn sets(v: impl IntoIterator<Item = Subset>) -> Vec<Vec<usize>> {
    v.into_iter().map(subset::to_one_based).collect()
}

fn default_predicates(d: usize, n: usize) -> Vec<Predicate> {
    use Predicate::*;
    match (d, n) {
        (3, 10) => vec![Simple, ThreeLines],
        (4, _) => vec![Simple, Connected, FourPlanes, Realizable],
        _ => vec![Simple, Realizable],
    }
}

fn catalog_path(g: &Global, d: usize, n: usize) -> Result<PathBuf> {
    if let Some(p) = &g.catalog {
        return Ok(p.clone());
    }
    match locate_catalog(d, n) {
        Some(p) => Ok(p),
        None => bail!("no catalog for ({d},{n}): pass --catalog or set STRATA_CATALOG_DIR"),
    }
}

fn presentation(q: &Matroid, kind: Kind, reference_arg: Option<&str>) -> Result<Presentation> {
    let r = reference(reference_arg, q.ground_size())?;
    Ok(match kind {
        Kind::Stratum => stratum_presentation(q, r)?,
        Kind::Realization => realization_presentation(q, r)?,
    })
}

/// Runs one command; the flag reports an undecided-only result.
fn execute(cli: &Cli) -> Result<(Value, bool)> {
    let g = &cli.global;
    let cfg = config(g)?;
    let out = match &cli.command {
        Command::Info => {
            let q = load_matroid(g)?;
            let flats = |r: strata_core::Result<Vec<strata_core::Flat>>| r.ok().map(|v| sets(v.into_iter().map(|f| f.set)));
            let cyclic: Vec<Value> = q.cyclic_flats().iter().map(|f| json!({"rank": f.rank, "elements": subset::to_one_based(f.set)})).collect();
            eprintln!("rank {} on {} elements, paving: {}", q.rank_d(), q.ground_size(), q.is_paving());
            json!({
                "d": q.rank_d(),
                "n": q.ground_size(),
                "flags": q.structure_flags(),
                "paving": q.is_paving(),
                "lines": flats(q.lines()),
                "planes": flats(q.planes()),
                "cyclic_flats": cyclic,
            })
        }
        Command::Present { kind, reference } => {
            let q = load_matroid(g)?;
            let p = presentation(&q, *kind, reference.as_deref())?;
            eprintln!("{} variables, {} ideal generators, {} semigroup generators", p.nvars(), p.ideal.len(), p.semigroup.len());
            serde_json::to_value(p.to_json())?
        }
        Command::Reduce { reference } => {
            let q = load_matroid(g)?;
            let p = presentation(&q, Kind::Realization, reference.as_deref())?;
            let t = reduce(&p, cfg.budget, &cfg.limits())?;
            eprintln!("variables: {} -> {} in {} steps", t.input.nvars(), t.output.nvars(), t.steps.len());
            json!({"variables_before": t.input.nvars(), "variables_after": t.output.nvars(), "trace": t.to_json()})
        }
        Command::Classify => {
            let q = load_matroid(g)?;
            let r = classify(&q, &cfg)?;
            eprintln!(
                "realizable: {:?}, smooth: {:?}, components: {}, nodes: {}",
                r.realizable,
                r.smooth,
                r.component_count.map_or("?".into(), |c| c.to_string()),
                r.nodes()
            );
            let undecided = r.realizable == Verdict::Undecided || r.smooth == Verdict::Undecided;
            return Ok((serde_json::to_value(&r)?, undecided));
        }
        Command::Batch { d, n, predicates } => {
            let preds = match predicates {
                Some(s) => s.split(',').map(|p| Predicate::parse(p.trim())).collect::<strata_core::Result<Vec<_>>>()?,
                None => default_predicates(*d, *n),
            };
            let path = catalog_path(g, *d, *n)?;
            let entries = read_catalog_file(&path, *d, *n).with_context(|| format!("reading {}", path.display()))?;
            let cache = match &cfg.cache {
                Some(p) => VerdictCache::open(p)?,
                None => VerdictCache::disabled(),
            };
            let report = filter(&entries, &preds, &cfg, &cache)?;
            cache.flush()?;
            let mut line = format!("{} matroids", report.total);
            for s in &report.stages {
                line += &format!(" -> {} {}", s.passed, s.predicate.name());
                if s.undecided > 0 {
                    line += &format!(" ({} undecided)", s.undecided);
                }
            }
            eprintln!("{line}");
            let undecided_only = report.survivors.is_empty() && report.stages.iter().any(|s| s.undecided > 0);
            return Ok((serde_json::to_value(&report)?, undecided_only));
        }
        Command::Corank => serde_json::to_value(corank_vector(&load_matroid(g)?))?,
        Command::Star => {
            let s = star_subdivision(&load_matroid(g)?)?;
            eprintln!("{} leaves, covered: {}", s.leaves.len(), s.covered);
            serde_json::to_value(&s)?
        }
        Command::Witness { d, n } => {
            let r = witness_valuations(*d, *n)?;
            eprintln!("valuations match corank: {}", r.all_match);
            serde_json::to_value(&r)?
        }
        Command::Plan => {
            let p = plan(&load_matroid(g)?);
            eprintln!("{} moves, {} terminals", p.moves.len(), p.terminals.len());
            serde_json::to_value(&p)?
        }
        Command::Flag => {
            let chain = flag_extension(&load_matroid(g)?)?;
            serde_json::to_value(chain.iter().map(Matroid::to_json).collect::<Vec<_>>())?
        }
    };
    Ok((out, false))
}

fn emit(v: &Value, out: Option<&Path>) -> Result<()> {
    let text = serde_json::to_string_pretty(v)? + "\n";
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => match io::stdout().lock().write_all(text.as_bytes()) {
            Err(e) if e.kind() == io::ErrorKind::BrokenPipe => {}
            r => r.context("writing stdout")?,
        },
    }
    Ok(())
}

fn main() -> ExitCode {
    // usage errors exit 1; clap's own code 2 would read as "undecided"
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::FAILURE } else { ExitCode::SUCCESS };
        }
    };
    match execute(&cli).and_then(|(v, undecided)| emit(&v, cli.global.out.as_deref()).map(|_| undecided)) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
