use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};

use tracelab::chartable::CharacterTable;
use tracelab::config::{Format, RunConfig};
use tracelab::group::named::{resolve_group, resolve_subgroup};
use tracelab::report::{self, Render};
use tracelab::{Error, GroupTable, Result};

/// Character tables, induction, Brauer decompositions, trace formulas and Weyl characters.
#[derive(Parser, Debug)]
#[command(name = "tracelab", version)]
struct Cli {
    /// Seed for every randomized check.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output format: json, csv or pretty.
    #[arg(long, global = true)]
    format: Option<Format>,
    /// Identity tolerance on the float path.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Largest group order accepted.
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Random functions per randomized check.
    #[arg(long, global = true)]
    trials: Option<usize>,
    /// Configuration file layered over the built-in defaults.
    #[arg(long, global = true, env = "TRACELAB_CONFIG")]
    config: Option<PathBuf>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Character table with class data.
    Chartable { group: String },
    /// Induce an irreducible character of a subgroup.
    Induce { group: String, subgroup: String, character: usize },
    /// Subgroup catalog and the integer decomposition of the unit character.
    Brauer { group: String },
    /// Local and global trace formulas on random functions.
    Trace { group: String, subgroup: String },
    /// Finite Poisson summation on an abelian group.
    Poisson { group: String, subgroup: String },
    /// Theta inversion on the real line.
    Theta {
        #[arg(long)]
        a: f64,
        #[arg(long = "N", default_value_t = 20)]
        n: u32,
    },
    /// Root system, Weyl group and character data for a highest weight.
    Weyl {
        cartan_type: String,
        /// Comma-separated fundamental-weight coordinates.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        highest: Vec<i64>,
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Every identity suite on a group and optional subgroup.
    VerifyAll { group: String, subgroup: Option<String> },
    /// Character table, class data and invariants written to a file.
    Report { group: String },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Identity(_) | Error::Computation(_) => 1,
        _ => 2,
    }
}

fn config(cli: &Cli) -> Result<RunConfig> {
    let mut c = RunConfig::from_env(cli.config.as_deref())?;
    if let Some(s) = cli.seed {
        c.seed = s;
    }
    if let Some(f) = cli.format {
        c.format = f;
    }
    if let Some(t) = cli.tol {
        c.tolerance.identity = t;
    }
    if let Some(cap) = cli.cap {
        c.caps.group_order = cap;
    }
    if let Some(t) = cli.trials {
        c.trials = t;
    }
    c.validate()?;
    Ok(c)
}

fn group(spec: &str, c: &RunConfig) -> Result<Arc<GroupTable>> {
    Ok(Arc::new(resolve_group(spec, c.caps.group_order)?))
}

fn table(spec: &str, c: &RunConfig) -> Result<CharacterTable> {
    CharacterTable::compute_with_seed(&group(spec, c)?, c.seed)
}

fn default_report_path(spec: &str, format: Format) -> PathBuf {
    let stem: String = spec.chars().map(|ch| if ch.is_ascii_alphanumeric() { ch } else { '_' }).collect();
    let ext = match format {
        Format::Json => "json",
        Format::Csv => "csv",
        Format::Pretty => "txt",
    };
    PathBuf::from(format!("report-{stem}.{ext}"))
}

/// Rendered output and whether every identity in it held.
fn run(cli: &Cli, c: &RunConfig) -> Result<(String, bool)> {
    let f = c.format;
    Ok(match &cli.command {
        Command::Chartable { group } => {
            let r = report::chartable_report(&table(group, c)?);
            let ok = r.checks.square && r.checks.sum_of_squares && r.checks.first_orthogonality;
            (r.render(f)?, ok && r.checks.second_orthogonality && r.checks.degrees_divide_order)
        }
        Command::Induce { group, subgroup, character } => {
            let t = table(group, c)?;
            let gamma = resolve_subgroup(t.group(), subgroup)?;
            let r = report::induce_report(&t, &gamma, *character)?;
            (r.render(f)?, r.frobenius_holds && r.averaged_formula_agrees)
        }
        Command::Brauer { group } => {
            let r = report::brauer_report(&table(group, c)?, c.caps.subgroup_catalog)?;
            let ok = r.residual_zero && r.virtual_character_rows.iter().all(|v| v.global && v.by_restriction);
            (r.render(f)?, ok)
        }
        Command::Trace { group, subgroup } => {
            let t = table(group, c)?;
            let gamma = resolve_subgroup(t.group(), subgroup)?;
            let r = report::trace_report(&t, &gamma, c)?;
            (r.render(f)?, r.all_agree && r.dimension_count as usize == r.index)
        }
        Command::Poisson { group, subgroup } => {
            let t = table(group, c)?;
            let gamma = resolve_subgroup(t.group(), subgroup)?;
            let r = report::poisson_report(&t, &gamma, c)?;
            (r.render(f)?, r.all_agree)
        }
        Command::Theta { a, n } => {
            let r = report::theta_report(*a, *n)?;
            (r.render(f)?, r.within_bound)
        }
        Command::Weyl { cartan_type, highest, grid } => {
            let highest = if highest.is_empty() { vec![0; rank_of(cartan_type)?] } else { highest.clone() };
            let r = report::weyl_report(cartan_type, &highest, *grid, c)?;
            (r.render(f)?, r.passed)
        }
        Command::VerifyAll { group, subgroup } => {
            let t = table(group, c)?;
            let gamma = subgroup.as_deref().map(|s| resolve_subgroup(t.group(), s)).transpose()?;
            let r = report::verify_all(&t, gamma.as_ref(), c)?;
            (r.render(f)?, r.passed)
        }
        Command::Report { group } => {
            let r = report::group_report(&table(group, c)?);
            let path = cli.out.clone().unwrap_or_else(|| default_report_path(group, f));
            std::fs::write(&path, r.render(f)?)?;
            (format!("{}\n", path.display()), r.table.checks.sum_of_squares)
        }
    })
}

fn rank_of(cartan_type: &str) -> Result<usize> {
    Ok(tracelab::weyl::build_root_system(cartan_type)?.rank)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = config(&cli).and_then(|c| run(&cli, &c));
    match result {
        Ok((text, ok)) => {
            // `report` has already written its file and prints the path
            let written = match (&cli.out, &cli.command) {
                (Some(path), command) if !matches!(command, Command::Report { .. }) => std::fs::write(path, &text),
                _ => {
                    print!("{text}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: identity check failed");
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
