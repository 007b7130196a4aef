//! `iwachar`: orbit counts, Brauer characters, Koszul homology and Euler
//! characteristics of graded modules over `Sym(V) # H`.
//!
//! Exit codes: 0 success, 2 usage or schema error, 3 mathematical failure,
//! 4 resource bound (group too large, cutoff too small).

mod corpus;
mod report;
mod source;

use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use iwachar::exec::Exec;
use iwachar::fixtures;
use iwachar::groups::catalog::builtin_groups;
use iwachar::groups::finite::DEFAULT_MAX_ORDER;
use iwachar::groups::perm::cycle_string;
use iwachar::groups::{galois_orbits, hall_check, normal_p_subgroups, FiniteGroup};
use iwachar::io::ExampleDoc;
use iwachar::reps::{brauer_value, BrauerContext, ModelGN};
use iwachar::skewgraded::{
    build_module, rank_harness, vanishing_check, verify_key_formula, verify_main_formula, zeta_rational, GradedModule,
    ModuleAnalysis, Settings,
};

use report::{
    BrauerReport, HallEntry, HallOutput, ModuleVerdict, OrbitsReport, PsiReport, PsiRow, RankOutput, Report, RhoReport,
    RhoRow, TorReport, TorRow, ValueRow, Verdict, ZetaReport, ZetaRow,
};
use source::{NamedModule, Source};

/// A malformed command line or input document.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

/// A verification ran to completion and some identity failed.
#[derive(Debug)]
struct Failed(String);

impl std::fmt::Display for Failed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Failed {}

#[derive(Debug, Parser)]
#[command(name = "iwachar", version, about = "Brauer characters and Koszul Euler characteristics over Sym(V) # H")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Absolute top degree of the computed window.
    #[arg(long, global = true)]
    cutoff: Option<i64>,
    /// Guard window for rational reconstruction.
    #[arg(long, global = true)]
    guard: Option<u32>,
    /// Largest group order accepted when closing generators.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ORDER)]
    max_group_order: usize,
    /// Run every inner loop on one thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
enum Which {
    KeyFormula,
    MainFormula,
    Vanishing,
    RankBound,
    Hall,
    Properties,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Orbits of conjugation and `g -> g^q` on the p-regular elements.
    Orbits {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        q: Option<u64>,
    },
    /// Brauer character of a representation at the orbit representatives.
    Brauer {
        #[command(flatten)]
        source: Source,
    },
    /// `Psi(g)` and centralizer dimensions of a model.
    Psi {
        #[command(flatten)]
        source: Source,
    },
    /// Graded `Tor` of a module with its stabilization certificate.
    Tor {
        #[command(flatten)]
        source: Source,
    },
    /// Rational graded Brauer characters of a module.
    Zeta {
        #[command(flatten)]
        source: Source,
    },
    /// Euler characteristic `rho` of a module.
    Rho {
        #[command(flatten)]
        source: Source,
    },
    /// Run a named check; exits 3 if it fails.
    Verify {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum)]
        which: Which,
        /// Filtration index for `rank_bound`.
        #[arg(long, default_value_t = 0)]
        i: i64,
        /// Seed for `properties`.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Multiplies the instance counts of `properties`.
        #[arg(long, default_value_t = 1)]
        rounds: usize,
        /// For `hall`: every built-in group of order at most 48 with p in {2, 3}.
        #[arg(long)]
        corpus: bool,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        q: Option<u64>,
    },
    /// Emit a built-in example as a model document with its module catalog.
    Example {
        /// e.g. `heisenberg(1,3,3)`, `dihedral_abelian(3,3)`, `s3_reflection(4)`, `cyclic(7,2,2)`.
        id: String,
    },
    /// Rank of `rho` over catalog modules of dimension at most `i` against the orbit bound.
    Rank {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        i: i64,
        /// Restrict to these catalog modules.
        #[arg(long, value_delimiter = ',')]
        modules: Vec<String>,
    },
}

struct Ctx {
    format: Format,
    settings: Settings,
    max_order: usize,
}

impl Ctx {
    fn settings_for(&self, m: &NamedModule) -> Settings {
        Settings { cutoff: self.settings.cutoff.or(m.cutoff), ..self.settings }
    }

    fn build(&self, model: &Arc<ModelGN>, m: &NamedModule) -> Result<(GradedModule, Settings)> {
        let settings = self.settings_for(m);
        Ok((build_module(Arc::clone(model), &m.presentation, &settings)?, settings))
    }

    fn analyse(&self, model: &Arc<ModelGN>, m: &NamedModule) -> Result<ModuleAnalysis> {
        let (module, settings) = self.build(model, m)?;
        Ok(ModuleAnalysis::run(&module, &settings)?)
    }

    fn emit<R: Report>(&self, report: &R) -> Result<()> {
        match self.format {
            Format::Json => println!("{}", serde_json::to_string_pretty(report)?),
            Format::Table => print!("{}", report.table()),
        }
        Ok(())
    }
}

fn cycles(group: &FiniteGroup, g: usize) -> String {
    cycle_string(group.element(g))
}

fn single(modules: Vec<NamedModule>) -> Result<NamedModule> {
    modules.into_iter().next().ok_or_else(|| anyhow!(UsageError("no module selected".into())))
}

fn cmd_orbits(ctx: &Ctx, source: &Source, p: Option<u64>, q: Option<u64>) -> Result<()> {
    let group = source.group(ctx.max_order)?;
    let (p, q) = match (source.example()?, p, q) {
        (_, Some(p), Some(q)) => (p, q),
        (Some(ex), None, None) => (ex.model.p(), ex.model.q()),
        _ => bail!(UsageError("--p and --q are required together unless --example supplies them".into())),
    };
    let orbits = galois_orbits(&group, p, q)?;
    ctx.emit(&OrbitsReport {
        group_order: group.order(),
        p,
        q,
        m: group.p_prime_exponent(p),
        orbit_count: orbits.len(),
        blocks: orbits.report(&group),
    })
}

fn cmd_brauer(ctx: &Ctx, source: &Source) -> Result<()> {
    let rep = source.rep(ctx.max_order)?;
    let group = rep.group();
    let field = rep.field();
    let p = u64::from(field.characteristic());
    let q = u64::from(field.order());
    let m = group.p_prime_exponent(p);
    let bctx = BrauerContext::new(field, m)?;
    let orbits = galois_orbits(group, p, q)?;
    let values = orbits
        .representatives()
        .into_iter()
        .enumerate()
        .map(|(block, g)| {
            Ok(ValueRow { block, representative: g, cycles: cycles(group, g), value: brauer_value(&bctx, &rep, g)? })
        })
        .collect::<Result<Vec<_>>>()?;
    ctx.emit(&BrauerReport { dim: rep.dim(), p, q, m, values })
}

fn cmd_psi(ctx: &Ctx, source: &Source) -> Result<()> {
    let model = ModelGN::new(source.rep(ctx.max_order)?)?;
    let group = model.group();
    let rows = model
        .orbits()
        .representatives()
        .into_iter()
        .enumerate()
        .map(|(block, g)| {
            Ok(PsiRow {
                block,
                representative: g,
                cycles: cycles(group, g),
                centralizer_dim: model.centralizer_dim(g)?,
                psi: model.psi(g)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    ctx.emit(&PsiReport { d: model.d(), m: model.m(), rows })
}

fn cmd_tor(ctx: &Ctx, source: &Source) -> Result<()> {
    let (model, modules) = source.modules(ctx.max_order, false)?;
    let named = single(modules)?;
    let (module, settings) = ctx.build(&model, &named)?;
    let tor = iwachar::skewgraded::graded_tor(&module, settings.exec)?;
    let reps = model.orbits().representatives();
    let pieces = tor
        .pieces
        .values()
        .map(|piece| {
            let character =
                reps.iter().map(|&g| brauer_value(model.context(), &piece.rep, g)).collect::<iwachar::Result<_>>()?;
            Ok(TorRow { j: piece.j, degree: piece.degree, dim: piece.rep.dim(), character })
        })
        .collect::<Result<Vec<_>>>()?;
    ctx.emit(&TorReport {
        module: named.name,
        lowest: tor.lowest,
        top: tor.top,
        representatives: reps,
        certificate: tor.certificate.clone(),
        pieces,
    })
}

fn cmd_zeta(ctx: &Ctx, source: &Source) -> Result<()> {
    let (model, modules) = source.modules(ctx.max_order, false)?;
    let named = single(modules)?;
    let (module, settings) = ctx.build(&model, &named)?;
    let guard = settings.guard(&model);
    let dimension = iwachar::skewgraded::dimension(&module, guard, settings.exec)?;
    let rows = model
        .orbits()
        .representatives()
        .into_iter()
        .map(|g| {
            Ok(ZetaRow {
                representative: g,
                cycles: cycles(model.group(), g),
                zeta: zeta_rational(&module, g, guard, settings.exec)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    ctx.emit(&ZetaReport { module: named.name, dimension, guard, top: module.top_degree(), rows })
}

fn cmd_rho(ctx: &Ctx, source: &Source) -> Result<()> {
    let (model, modules) = source.modules(ctx.max_order, false)?;
    let named = single(modules)?;
    let analysis = ctx.analyse(&model, &named)?;
    let rows = analysis
        .representatives
        .iter()
        .zip(&analysis.rho)
        .map(|(&g, rho)| {
            Ok(RhoRow {
                representative: g,
                cycles: cycles(model.group(), g),
                centralizer_dim: model.centralizer_dim(g)?,
                rho: rho.clone(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    ctx.emit(&RhoReport { module: named.name, dimension: analysis.dimension, rows })
}

fn fail_unless(passed: bool, what: &str) -> Result<()> {
    if passed {
        Ok(())
    } else {
        Err(Failed(format!("{what} failed")).into())
    }
}

fn rank_output(ctx: &Ctx, source: &Source, i: i64, wanted: &[String]) -> Result<RankOutput> {
    let (model, modules) = source.modules(ctx.max_order, true)?;
    let mut names = Vec::new();
    let mut skipped = Vec::new();
    let mut analyses = Vec::new();
    for named in modules.iter().filter(|m| wanted.is_empty() || wanted.contains(&m.name)) {
        let analysis = ctx.analyse(&model, named)?;
        // An explicit selection is passed through so the harness reports the violation.
        if wanted.is_empty() && analysis.dimension > i {
            skipped.push(named.name.clone());
        } else {
            names.push(named.name.clone());
            analyses.push(analysis);
        }
    }
    let report = rank_harness(&model, &analyses, i)?;
    Ok(RankOutput { modules: names, skipped, report })
}

fn hall_entries(group_name: &str, group: &FiniteGroup, p: u64, q: u64) -> Vec<HallEntry> {
    normal_p_subgroups(group, p)
        .into_iter()
        .map(|u| {
            let (report, error) = match hall_check(group, &u, p, q) {
                Ok(r) => (Some(r), None),
                Err(e) => (None, Some(e.to_string())),
            };
            HallEntry {
                group: format!("{group_name}, p = {p}, q = {q}"),
                subgroup: u.elements().to_vec(),
                passed: error.is_none(),
                report,
                error,
            }
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    ctx: &Ctx,
    source: &Source,
    which: Which,
    i: i64,
    seed: u64,
    rounds: usize,
    corpus: bool,
    p: Option<u64>,
    q: Option<u64>,
) -> Result<()> {
    match which {
        Which::KeyFormula | Which::MainFormula => {
            let (model, modules) = source.modules(ctx.max_order, true)?;
            let mut verdicts = Vec::new();
            for named in &modules {
                let a = ctx.analyse(&model, named)?;
                let checks =
                    if which == Which::KeyFormula { verify_key_formula(&a)? } else { verify_main_formula(&a)? };
                verdicts.push(ModuleVerdict::new(named.name.clone(), a.dimension, checks));
            }
            let name = if which == Which::KeyFormula { "key_formula" } else { "main_formula" };
            let verdict = Verdict::new(name, verdicts);
            ctx.emit(&verdict)?;
            fail_unless(verdict.passed, name)
        }
        Which::Vanishing => {
            let (model, modules) = source.modules(ctx.max_order, true)?;
            let mut verdicts = Vec::new();
            for named in &modules {
                let a = ctx.analyse(&model, named)?;
                verdicts.push(ModuleVerdict::new(named.name.clone(), a.dimension, vanishing_check(&model, &a)?));
            }
            let verdict = Verdict::new("vanishing", verdicts);
            ctx.emit(&verdict)?;
            fail_unless(verdict.passed, "vanishing")
        }
        Which::RankBound => {
            let out = rank_output(ctx, source, i, &[])?;
            ctx.emit(&out)?;
            fail_unless(out.report.holds, "rank_bound")
        }
        Which::Hall => {
            let mut entries = Vec::new();
            if corpus {
                for (name, group) in builtin_groups().into_iter().filter(|(_, g)| g.order() <= 48) {
                    for p in [2u64, 3] {
                        entries.extend(hall_entries(&name, &group, p, p));
                    }
                }
            } else {
                let group = source.group(ctx.max_order)?;
                let (p, q) = match (source.example()?, p, q) {
                    (_, Some(p), Some(q)) => (p, q),
                    (Some(ex), None, None) => (ex.model.p(), ex.model.q()),
                    _ => bail!(UsageError("--p and --q are required together unless --example supplies them".into())),
                };
                entries.extend(hall_entries(&format!("|G| = {}", group.order()), &group, p, q));
            }
            let out = HallOutput { passed: entries.iter().all(|e| e.passed), entries };
            ctx.emit(&out)?;
            fail_unless(out.passed, "hall")
        }
        Which::Properties => {
            let out = corpus::run(seed, rounds.max(1));
            ctx.emit(&out)?;
            fail_unless(out.passed, "properties")
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let exec = if cli.sequential { Exec::Sequential } else { Exec::default() };
    let ctx = Ctx {
        format: cli.format,
        settings: Settings { cutoff: cli.cutoff, guard: cli.guard, exec },
        max_order: cli.max_group_order,
    };
    match &cli.command {
        Command::Orbits { source, p, q } => cmd_orbits(&ctx, source, *p, *q),
        Command::Brauer { source } => cmd_brauer(&ctx, source),
        Command::Psi { source } => cmd_psi(&ctx, source),
        Command::Tor { source } => cmd_tor(&ctx, source),
        Command::Zeta { source } => cmd_zeta(&ctx, source),
        Command::Rho { source } => cmd_rho(&ctx, source),
        Command::Verify { source, which, i, seed, rounds, corpus, p, q } => {
            cmd_verify(&ctx, source, *which, *i, *seed, *rounds, *corpus, *p, *q)
        }
        Command::Example { id } => ctx.emit(&ExampleDoc::from_example(&fixtures::by_id(id)?)?),
        Command::Rank { source, i, modules } => {
            let out = rank_output(&ctx, source, *i, modules)?;
            ctx.emit(&out)
        }
    }
}

#[derive(Serialize)]
struct Diagnostic {
    error: String,
    message: String,
    exit_code: u8,
}

fn classify(err: &anyhow::Error) -> (String, u8) {
    use iwachar::Error as E;
    if err.downcast_ref::<UsageError>().is_some() {
        return ("Usage".into(), 2);
    }
    if err.downcast_ref::<Failed>().is_some() {
        return ("VerificationFailed".into(), 3);
    }
    if err.downcast_ref::<serde_json::Error>().is_some() {
        return ("Serialization".into(), 3);
    }
    let Some(e) = err.downcast_ref::<E>() else {
        return ("Unknown".into(), 3);
    };
    let name = format!("{e:?}").split(['(', ' ']).next().unwrap_or_default().to_string();
    let code = match e {
        E::InvalidInput(_)
        | E::DimMismatch(_)
        | E::NonPrime(_)
        | E::BadCharacteristic { .. }
        | E::NotSubgroup
        | E::NotNormal
        | E::NotPGroup(_)
        | E::FieldMismatch(_)
        | E::DimensionTooLarge { .. } => 2,
        E::TooLarge(_) | E::WindowTooSmall { .. } | E::NotStabilized(_) | E::InsufficientData(_) => 4,
        E::NoSuchRoot { .. }
        | E::NotARoot
        | E::NotSemisimple { .. }
        | E::PoleAtOne(_)
        | E::BijectionFailure(_)
        | E::Internal(_) => 3,
    };
    (name, code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let (error, exit_code) = classify(&err);
            let diag = Diagnostic { error, message: format!("{err:#}"), exit_code };
            eprintln!("{}", serde_json::to_string(&diag).unwrap_or_else(|_| diag.message.clone()));
            ExitCode::from(exit_code)
        }
    }
}
