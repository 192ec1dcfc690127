use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use airyqc_core::cache;
use airyqc_core::correlator::CorrelatorTable;
use airyqc_core::eo::eo_table;
use airyqc_core::poly::omega::{big_omega_orbits, omega_from_correlators};
use airyqc_core::poly::render::{orbits_json, render_inverse_z, render_symmetric, ExponentUnit};
use airyqc_core::verify::{run_suite, Params, Suite};
use airyqc_core::wkb::{s_term, Branch, QuantumCurveReport, WkbForm, WkbSeries};
use airyqc_core::Error;

#[derive(Parser)]
#[command(name = "airyqc", version, about = "Exact Airy-curve invariants and their recursions")]
struct Cli {
    /// Correlator cache file
    #[arg(long, global = true, env = "AIRYQC_CACHE")]
    cache: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads for table precomputation
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    /// Print correlator-table hit/miss counts to stderr
    #[arg(long, global = true)]
    stats: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Kind {
    #[value(name = "W")]
    W,
    #[value(name = "omega")]
    Omega,
    #[value(name = "Omega")]
    BigOmega,
}

#[derive(Subcommand)]
enum Command {
    /// <tau_{a_1} ... tau_{a_n}>_g
    Correlator {
        g: u32,
        /// Comma-separated exponents, e.g. 2,0
        #[arg(allow_hyphen_values = true)]
        a: String,
    },
    /// Print W_{g,n}, omega_{g,n} or Omega_{g,n}
    Table { kind: Kind, g: u32, n: usize },
    /// The WKB term S_N
    Sn {
        n: u32,
        #[arg(long, default_value = "+", allow_hyphen_values = true)]
        branch: String,
    },
    /// Per-order residuals of the quantum curve equation through order N
    Report {
        n: u32,
        #[arg(long, default_value = "+", allow_hyphen_values = true)]
        branch: String,
    },
    /// Run a verification suite
    Verify {
        /// dvv-eo, omega-rec, Omega-rec, d-lemma, quantum-curve or t-rec
        suite: String,
        #[arg(long)]
        max_chi: Option<u32>,
        #[arg(long, default_value_t = 10)]
        order: u32,
        #[arg(long, default_value_t = 50)]
        max_m: u32,
    },
    /// Save or load the correlator cache
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand)]
enum CacheAction {
    /// Fill all shells up to --max-chi and write them
    Save {
        path: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        max_chi: u32,
    },
    /// Validate a cache file
    Load { path: Option<PathBuf> },
}

enum Failure {
    Counterexample,
    Engine(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Counterexample) => ExitCode::from(1),
        Err(Failure::Engine(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_format() { 3 } else { 2 })
        }
    }
}

fn open_table(cli: &Cli) -> Result<CorrelatorTable, Error> {
    match &cli.cache {
        Some(p) if p.exists() => cache::load(p),
        _ => Ok(CorrelatorTable::new()),
    }
}

fn cache_path(cli: &Cli, explicit: &Option<PathBuf>) -> Result<PathBuf, Error> {
    explicit
        .clone()
        .or_else(|| cli.cache.clone())
        .ok_or_else(|| Error::InvalidArgument("no cache path: pass one or set AIRYQC_CACHE".into()))
}

fn parse_exponents(s: &str) -> Result<Vec<i64>, Error> {
    if s.trim().is_empty() {
        return Err(Error::EmptyCorrelator);
    }
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<i64>()
                .map_err(|_| Error::InvalidArgument(format!("bad exponent {x:?}")))
        })
        .collect()
}

fn emit(cli: &Cli, text: &[String], value: Value) {
    match cli.format {
        Format::Text => {
            for line in text {
                println!("{line}");
            }
        }
        Format::Json => println!("{value}"),
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let table = open_table(cli)?;
    let result = dispatch(cli, &table);
    if cli.stats {
        eprintln!(
            "correlators: {} entries, {} hits, {} misses",
            table.len(),
            table.hits(),
            table.misses()
        );
    }
    result
}

fn dispatch(cli: &Cli, table: &CorrelatorTable) -> Result<(), Failure> {
    match &cli.command {
        Command::Correlator { g, a } => {
            let a = parse_exponents(a)?;
            let v = table.correlator(*g, &a)?;
            emit(cli, &[v.to_string()], json!({ "g": g, "a": a, "value": v.to_string() }));
        }
        Command::Table { kind, g, n } => table_cmd(cli, table, *kind, *g, *n)?,
        Command::Sn { n, branch } => {
            let branch: Branch = branch.parse()?;
            let t = s_term(*n, branch, table)?;
            let mut text = format!("S_{n} = {t}");
            let mut value = json!({ "n": n, "branch": branch.to_string() });
            match (&t.form, t.w_form()) {
                (WkbForm::Monomial { coeff, power }, Some(w)) => {
                    let (e, c) = w.terms().next().expect("monomial");
                    let wp = ExponentUnit::Half.render(e[0]);
                    text.push_str(&format!(" = {c} w^{wp}"));
                    value["coeff"] = json!(coeff.to_string());
                    value["z_power"] = json!(power);
                    value["w_coeff"] = json!(c.to_string());
                    value["w_power"] = json!(wp);
                }
                (WkbForm::Log { coeff }, _) => value["log_coeff"] = json!(coeff.to_string()),
                _ => unreachable!(),
            }
            emit(cli, &[text], value);
        }
        Command::Report { n, branch } => {
            let branch: Branch = branch.parse()?;
            if *n < 2 {
                return Err(Error::InvalidArgument("the report needs N >= 2".into()).into());
            }
            let rep = QuantumCurveReport::from_series(&WkbSeries::compute(*n, branch, table)?);
            let text: Vec<String> = rep
                .orders
                .iter()
                .map(|o| format!("order {} ({}): {}", o.order, branch, o.residual))
                .collect();
            emit(cli, &text, rep.to_json());
            if !rep.passes() {
                return Err(Failure::Counterexample);
            }
        }
        Command::Verify {
            suite,
            max_chi,
            order,
            max_m,
        } => {
            let suite: Suite = suite.parse()?;
            let params = Params {
                max_chi: max_chi.unwrap_or(suite.default_max_chi()),
                order: *order,
                max_m: *max_m,
                jobs: cli.jobs.max(1),
            };
            if params.jobs > 1 {
                table.fill_shell(params.max_chi, params.jobs)?;
            }
            let out = run_suite(suite, &params, table)?;
            let text = match &out.counterexample {
                None => vec![format!("{suite}: pass ({} checks)", out.checks)],
                Some(c) => vec![format!("{suite}: FAIL after {} checks", out.checks), format!("  {c}")],
            };
            let cx = out.counterexample.as_ref().map(|c| {
                json!({ "identity": c.identity, "location": c.location, "detail": c.detail })
            });
            emit(
                cli,
                &text,
                json!({ "suite": suite.name(), "passed": out.passed(), "checks": out.checks, "counterexample": cx }),
            );
            if !out.passed() {
                return Err(Failure::Counterexample);
            }
        }
        Command::Cache { action } => match action {
            CacheAction::Save { path, max_chi } => {
                let path = cache_path(cli, path)?;
                table.fill_shell(*max_chi, cli.jobs.max(1))?;
                cache::save(table, &path)?;
                emit(
                    cli,
                    &[format!("saved {} records to {}", table.len(), path.display())],
                    json!({ "saved": table.len(), "path": path.display().to_string() }),
                );
            }
            CacheAction::Load { path } => {
                let path = cache_path(cli, path)?;
                let loaded = cache::load(&path)?;
                emit(
                    cli,
                    &[format!("loaded {} records from {}", loaded.len(), path.display())],
                    json!({ "loaded": loaded.len(), "path": path.display().to_string() }),
                );
            }
        },
    }
    Ok(())
}

fn table_cmd(cli: &Cli, table: &CorrelatorTable, kind: Kind, g: u32, n: usize) -> Result<(), Error> {
    match kind {
        Kind::W => {
            let chi = 2 * g as i64 - 2 + n as i64;
            if chi <= 0 {
                return Err(Error::Unstable { g, n });
            }
            let w = eo_table(chi as u32, cli.jobs.max(1))?.remove(&(g, n)).expect("cell computed");
            emit(cli, &render_inverse_z(&w), orbits_json(&w, ExponentUnit::Whole));
        }
        Kind::Omega => {
            let s = omega_from_correlators(g, n, table)?;
            emit(cli, &render_symmetric(&s, "w", ExponentUnit::Whole), orbits_json(&s, ExponentUnit::Whole));
        }
        Kind::BigOmega => {
            let s = big_omega_orbits(g, n, table)?;
            emit(cli, &render_symmetric(&s, "w", ExponentUnit::Half), orbits_json(&s, ExponentUnit::Half));
        }
    }
    Ok(())
}
