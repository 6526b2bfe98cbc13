//! `tautring`: command-line front end.
//!
//! Every command prints one JSON document (to stdout or `--out`) that echoes
//! the run configuration. Exit codes: 0 success, 1 a property check failed,
//! 2 a resource cap was hit, 3 usage error.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use tautring::cache::RelationCache;
use tautring::kappa::KappaPoly;
use tautring::partition::Partition;
use tautring::relations::{
    closed_formula_checks, enumerate_k_plans, enumerate_plans, enumerate_plans_with, generate_relations,
    hyperelliptic_classes, hyperelliptic_cuts, plane_quintic_classes, plane_quintic_cuts, CutResult, DiagonalPlan,
    EngineConfig, RelationRecord,
};
use tautring::ring::{
    check_properties, minimal_presentation, window_top, GradedBasis, GradedQuotient, PropertyReport, RingPresentation,
    SocleRing,
};
use tautring::socle::{closed_socle_formulas, kappa1_top_coefficient, solve_proportionalities};
use tautring::tau::{conjectural_e_lists, verify_conjectural_identity, verify_theorem2_identity, TauTable};
use tautring::{linalg, Error, Execution, ENGINE_VERSION};

#[derive(Parser, Debug)]
#[command(name = "tautring", version, about = "Exact computations in the tautological ring of M_g")]
struct Cli {
    /// Worker threads (1 runs everything sequentially).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Cap on live stratum terms in the relation engines.
    #[arg(long, global = true, default_value_t = 500_000)]
    max_terms: usize,
    /// Wall-clock cap in seconds; exceeding it exits with code 2.
    #[arg(long, global = true)]
    max_seconds: Option<u64>,
    /// Write the JSON result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate relations for genus g.
    Relations {
        g: u32,
        /// Codimensions to generate (repeatable); default 1 to 2(g-2).
        #[arg(long)]
        codim: Vec<u32>,
        /// Restrict to one block structure, e.g. `3,2`.
        #[arg(long)]
        alpha: Option<String>,
        /// Also use monomials carrying K factors.
        #[arg(long)]
        k_monomials: bool,
        /// Also use diagonal products that leave points uncovered.
        #[arg(long)]
        uncovered: bool,
    },
    /// Build R*(M_g), its presentation and the property checks.
    Ring {
        g: u32,
        #[arg(long, value_enum, default_value_t = Source::Auto)]
        source: Source,
    },
    /// Solve the top-degree proportionalities.
    Socle { g: u32 },
    /// A Witten–Kontsevich number.
    Tau { indices: Vec<u32> },
    /// Check an identity or formula.
    Verify {
        #[command(subcommand)]
        kind: VerifyKind,
    },
    /// Cut-and-push examples of Brill–Noether classes.
    BnClass {
        #[arg(value_enum)]
        example: BnExample,
        /// Genus for the hyperelliptic example.
        #[arg(long, default_value_t = 3)]
        g: u32,
    },
    /// Inspect or clear the relation cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyKind {
    /// The genus-g tau identity behind the nonvanishing of κ_{g-2}.
    Theorem2 { g: u32 },
    /// The k-point identity; all valid e-lists when none is given.
    Conjectural {
        g: u32,
        /// `e_1 … e_k`, space or comma separated.
        #[arg(value_delimiter = ',')]
        e: Vec<u32>,
    },
    /// Closed top-degree formulas.
    Formulas { g: u32 },
}

#[derive(Subcommand, Debug)]
enum CacheAction {
    Ls,
    Clear,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Source {
    /// Relations for g <= 6, pairing data above.
    Auto,
    Relations,
    Socle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BnExample {
    Quintic,
    Hyperelliptic,
}

/// Outcome of a command: its JSON body and whether all checks passed.
struct Outcome {
    body: Value,
    finding: bool,
}

impl Outcome {
    fn ok(body: Value) -> Self {
        Outcome { body, finding: false }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    #[cfg(feature = "parallel")]
    if cli.jobs > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
    }
    let cfg = EngineConfig {
        exec: if cli.jobs == 1 { Execution::Sequential } else { Execution::Parallel },
        max_terms: Some(cli.max_terms),
    };
    if let Some(secs) = cli.max_seconds {
        std::thread::spawn(move || {
            std::thread::sleep(Duration::from_secs(secs));
            eprintln!("error: resource limit exceeded: wall time over {secs} s");
            std::process::exit(2);
        });
    }
    let run_config = json!({
        "command": format!("{:?}", cli.command),
        "jobs": cli.jobs,
        "max_terms": cli.max_terms,
        "max_seconds": cli.max_seconds,
        "cache_dir": std::env::var_os(tautring::cache::CACHE_ENV).map(|p| PathBuf::from(p).display().to_string()),
        "out": cli.out.as_ref().map(|p| p.display().to_string()),
        "engine_version": ENGINE_VERSION,
    });
    let outcome = match run(&cli.command, &cfg) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(match e {
                Error::ResourceLimit { .. } => 2,
                Error::InvalidArgument(_) | Error::Parse(_) => 3,
                _ => 1,
            });
        }
    };
    let mut doc = serde_json::Map::new();
    doc.insert("config".into(), run_config);
    doc.insert("result".into(), outcome.body);
    let text = serde_json::to_string_pretty(&Value::Object(doc)).expect("JSON values serialize") + "\n";
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(if outcome.finding { 1 } else { 0 })
}

fn run(command: &Command, cfg: &EngineConfig) -> tautring::Result<Outcome> {
    match command {
        Command::Relations {
            g,
            codim,
            alpha,
            k_monomials,
            uncovered,
        } => cmd_relations(*g, codim, alpha.as_deref(), *k_monomials, *uncovered, cfg),
        Command::Ring { g, source } => cmd_ring(*g, *source, cfg),
        Command::Socle { g } => cmd_socle(*g, cfg),
        Command::Tau { indices } => cmd_tau(indices),
        Command::Verify { kind } => cmd_verify(kind, cfg),
        Command::BnClass { example, g } => cmd_bn_class(*example, *g, cfg),
        Command::Cache { action } => cmd_cache(action),
    }
}

fn check_genus(g: u32, min: u32) -> tautring::Result<()> {
    if g < min {
        return Err(Error::InvalidArgument(format!("genus must be at least {min}, got {g}")));
    }
    Ok(())
}

fn plans_for(
    g: u32,
    codims: &[u32],
    alpha: Option<&str>,
    k_monomials: bool,
    uncovered: bool,
) -> tautring::Result<Vec<DiagonalPlan>> {
    let alpha = alpha.map(str::parse::<Partition>).transpose()?;
    let mut plans = Vec::new();
    for &c in codims {
        if c == 0 {
            return Err(Error::InvalidArgument("codimension must be positive".into()));
        }
        plans.extend(if uncovered { enumerate_plans_with(g, c, 1) } else { enumerate_plans(g, c) });
        if k_monomials {
            plans.extend(enumerate_k_plans(g, c));
        }
    }
    if let Some(a) = alpha {
        if a.degree() != 2 * g - 1 {
            return Err(Error::InvalidArgument(format!("alpha {a} must sum to {}", 2 * g - 1)));
        }
        plans.retain(|p| p.alpha == a);
    }
    Ok(plans)
}

fn all_relations(g: u32, cfg: &EngineConfig) -> tautring::Result<Vec<RelationRecord>> {
    let plans = plans_for(g, &(1..=window_top(g)).collect::<Vec<_>>(), None, false, false)?;
    generate_relations(g, &plans, cfg, RelationCache::from_env().as_ref())
}

fn cmd_relations(
    g: u32,
    codim: &[u32],
    alpha: Option<&str>,
    k_monomials: bool,
    uncovered: bool,
    cfg: &EngineConfig,
) -> tautring::Result<Outcome> {
    check_genus(g, 2)?;
    let codims: Vec<u32> = if codim.is_empty() { (1..=window_top(g)).collect() } else { codim.to_vec() };
    let plans = plans_for(g, &codims, alpha, k_monomials, uncovered)?;
    let records = generate_relations(g, &plans, cfg, RelationCache::from_env().as_ref())?;
    let mut summary = BTreeMap::new();
    for &c in &codims {
        let polys: Vec<&KappaPoly> = records.iter().filter(|r| r.codim() == c).map(|r| &r.relation).collect();
        let basis = GradedBasis::new(g, c);
        let rows: Vec<_> = polys.iter().map(|p| basis.vector(p)).collect();
        summary.insert(
            c.to_string(),
            json!({
                "count": polys.len(),
                "nonzero": polys.iter().filter(|p| !p.is_zero()).count(),
                "rank": linalg::rank(&rows, basis.len()),
            }),
        );
    }
    let relations: Vec<Value> = records
        .iter()
        .map(|r| {
            json!({
                "plan": r.plan.to_string(),
                "alpha": r.plan.alpha,
                "k_powers": r.plan.k_powers,
                "j": r.plan.j,
                "codim": r.codim(),
                "relation": r.relation,
                "text": r.relation.to_string(),
            })
        })
        .collect();
    Ok(Outcome::ok(json!({
        "g": g,
        "count": records.len(),
        "by_codim": summary,
        "relations": relations,
    })))
}

fn presentation_json(p: &RingPresentation) -> Value {
    json!({
        "generator_degrees": p.generator_degrees,
        "relations": p.relations,
        "relations_text": p.relations.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        "eliminations": p.eliminations.iter().map(|(n, v)| (format!("k{n}"), v.to_string())).collect::<BTreeMap<_, _>>(),
        "dims": p.dims,
        "socle": p.socle,
    })
}

fn cmd_ring(g: u32, source: Source, cfg: &EngineConfig) -> tautring::Result<Outcome> {
    check_genus(g, 2)?;
    let source = match source {
        Source::Auto if g <= 6 => Source::Relations,
        Source::Auto => Source::Socle,
        s => s,
    };
    let quotient = match source {
        Source::Relations => GradedQuotient::new(g, &all_relations(g, cfg)?, cfg.exec),
        _ => {
            check_genus(g, 3)?;
            GradedQuotient::from_socle(&solve_proportionalities(g, cfg.exec)?, cfg.exec)
        }
    };
    let dims = quotient.dims();
    let window = quotient.window_vanishes();
    let mut body = json!({
        "g": g,
        "source": source,
        "dims": dims,
        "window_vanishes": window,
    });
    if !window {
        return Ok(Outcome {
            body,
            finding: true,
        });
    }
    let presentation = minimal_presentation(&quotient)?;
    body["presentation"] = presentation_json(&presentation);
    let mut finding = false;
    if g >= 3 {
        let report: PropertyReport = check_properties(&presentation.socle, &quotient.bases(), cfg.exec);
        finding |= !report.all_pass();
        // cross-check the derived functional against the bracket recipes
        let solved = solve_proportionalities(g, cfg.exec)?;
        let agrees = solved == presentation.socle;
        finding |= !agrees;
        body["checks"] = json!({
            "gorenstein": report.gorenstein,
            "hard_lefschetz": report.hard_lefschetz,
            "hodge_positive": report.hodge_positive,
            "socle_matches_brackets": agrees,
            "degrees": report.degrees,
        });
    }
    Ok(Outcome { body, finding })
}

fn cmd_socle(g: u32, cfg: &EngineConfig) -> tautring::Result<Outcome> {
    check_genus(g, 3)?;
    let table = solve_proportionalities(g, cfg.exec)?;
    let ring = SocleRing::new(table.clone(), cfg.exec);
    let report = check_properties(&table, &ring.bases, cfg.exec);
    let top = table.value(&Partition::ones(g as usize - 2));
    let top_ok = top == kappa1_top_coefficient(g);
    Ok(Outcome {
        body: json!({
            "g": g,
            "coefficients": table,
            "dims": ring.dims(),
            "kappa1_top": {"value": top.to_string(), "formula": kappa1_top_coefficient(g).to_string(), "ok": top_ok},
            "closed_formulas": closed_socle_formulas(g),
            "checks": report,
        }),
        finding: !top_ok || !report.all_pass(),
    })
}

/// Uses (and extends) the persisted memo when a cache is configured.
fn cmd_tau(indices: &[u32]) -> tautring::Result<Outcome> {
    let cache = RelationCache::from_env();
    let table = match &cache {
        Some(c) => c.load_tau()?,
        None => TauTable::new(),
    };
    let value = table.tau(indices);
    if let Some(c) = &cache {
        c.save_tau(&table)?;
    }
    Ok(Outcome::ok(json!({"indices": indices, "value": value.to_string()})))
}

fn cmd_verify(kind: &VerifyKind, cfg: &EngineConfig) -> tautring::Result<Outcome> {
    let table = TauTable::new();
    match kind {
        VerifyKind::Theorem2 { g } => {
            check_genus(*g, 2)?;
            let check = verify_theorem2_identity(&table, *g);
            Ok(Outcome {
                finding: !check.ok,
                body: json!({"g": g, "identity": "theorem2", "check": check}),
            })
        }
        VerifyKind::Conjectural { g, e } => {
            check_genus(*g, 2)?;
            let cases = if e.is_empty() { conjectural_e_lists(*g) } else { vec![e.clone()] };
            let mut checks = Vec::new();
            let mut finding = false;
            for e in cases {
                let check = verify_conjectural_identity(&table, *g, &e)?;
                finding |= !check.ok;
                checks.push(json!({"e": e, "check": check}));
            }
            Ok(Outcome {
                finding,
                body: json!({"g": g, "identity": "conjectural", "checks": checks}),
            })
        }
        VerifyKind::Formulas { g } => {
            let checks = closed_formula_checks(*g, cfg)?;
            Ok(Outcome {
                finding: checks.iter().any(|c| !c.ok),
                body: json!({"g": g, "formulas": checks}),
            })
        }
    }
}

fn cut_json(results: &[CutResult]) -> Vec<Value> {
    results
        .iter()
        .map(|c| {
            json!({
                "divisors": c.divisors.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
                "multiplicity": c.multiplicity,
                "pushforward": c.pushforward.to_string(),
                "class": c.class.to_string(),
            })
        })
        .collect()
}

fn cmd_bn_class(example: BnExample, g: u32, cfg: &EngineConfig) -> tautring::Result<Outcome> {
    match example {
        BnExample::Quintic => {
            let results = plane_quintic_classes(cfg)?;
            let table = solve_proportionalities(6, cfg.exec)?;
            let paired: Vec<String> = results
                .iter()
                .map(|c| table.evaluate(&(&c.class * &KappaPoly::kappa(1))).to_string())
                .collect();
            let agree = paired.windows(2).all(|w| w[0] == w[1]);
            Ok(Outcome {
                finding: !agree,
                body: json!({
                    "locus": "plane quintics, g = 6, d = 5, r = 2",
                    "cuts": cut_json(&results),
                    "expected_multiplicities": plane_quintic_cuts().iter().map(|c| c.1).collect::<Vec<_>>(),
                    "class_times_kappa1_in_socle": paired,
                    "classes_agree": agree,
                }),
            })
        }
        BnExample::Hyperelliptic => {
            check_genus(g, 3)?;
            let results = hyperelliptic_classes(g, cfg)?;
            let table = solve_proportionalities(g, cfg.exec)?;
            let formula = closed_socle_formulas(g).hyperelliptic;
            let values: Vec<_> = results.iter().map(|c| table.evaluate(&c.class)).collect();
            let agree = values.iter().all(|v| *v == formula);
            let values: Vec<String> = values.iter().map(ToString::to_string).collect();
            Ok(Outcome {
                finding: !agree,
                body: json!({
                    "locus": format!("hyperelliptic, g = {g}, d = 2, r = 1"),
                    "cuts": cut_json(&results),
                    "expected_multiplicities": hyperelliptic_cuts(g).iter().map(|c| c.1).collect::<Vec<_>>(),
                    "class_in_socle": values,
                    "closed_formula": formula.to_string(),
                    "classes_agree": agree,
                }),
            })
        }
    }
}

fn cmd_cache(action: &CacheAction) -> tautring::Result<Outcome> {
    let cache = RelationCache::from_env().ok_or_else(|| {
        Error::InvalidArgument(format!("set {} to use the cache", tautring::cache::CACHE_ENV))
    })?;
    match action {
        CacheAction::Ls => {
            let docs = cache.list()?;
            let entries: Vec<Value> = docs
                .iter()
                .map(|(path, doc)| {
                    json!({
                        "path": path.strip_prefix(cache.root()).unwrap_or(path).display().to_string(),
                        "g": doc.g,
                        "plan": doc.plan.to_string(),
                        "status": doc.status,
                    })
                })
                .collect();
            Ok(Outcome::ok(json!({"root": cache.root().display().to_string(), "entries": entries})))
        }
        CacheAction::Clear => {
            cache.clear()?;
            Ok(Outcome::ok(json!({"root": cache.root().display().to_string(), "cleared": true})))
        }
    }
}
