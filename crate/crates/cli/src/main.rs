use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use sympar::matgroup::Limits;
use sympar_cli::imprimitive::{imprimitive, KindArg, Selector};
use sympar_cli::render::Render;
use sympar_cli::verify::{verify, VerifyMode};
use sympar_cli::{chain, report, CliError, Settings, VectorAction};

#[derive(Parser)]
#[command(name = "sympar", version, about = "Verify parabolic subgroups of finite symplectic reflection groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for every randomized step.
    #[arg(long, global = true, env = "SEED", default_value_t = 0)]
    seed: u64,
    /// Largest group that may be enumerated element by element.
    #[arg(long, global = true, env = "CAP_ENUMERATION", default_value_t = 100_000)]
    cap_enumeration: usize,
    /// Largest orbit that may be computed.
    #[arg(long, global = true, env = "CAP_ORBIT", default_value_t = 10_000_000)]
    cap_orbit: usize,
    /// Write the report here and print only the summary.
    #[arg(long, global = true, env = "OUT")]
    out: Option<PathBuf>,
    #[arg(long, global = true, env = "FORMAT", value_enum)]
    format: Option<Format>,
    /// Include wall-clock timings (reports are then no longer reproducible).
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Order of a catalogue group.
    Order {
        #[arg(long, env = "GROUP")]
        group: String,
    },
    /// Stabilizer of a vector, with the Steinberg check and recognition.
    Stabilizer {
        #[arg(long, env = "GROUP")]
        group: String,
        /// Comma-separated entries, e.g. "1, {i}+1, 0, 1/2*{s5}".
        #[arg(long, env = "VECTOR", allow_hyphen_values = true)]
        vector: String,
        /// Whether the vector is fixed as a row (v g = v, as in the tables) or a column.
        #[arg(long, value_enum, default_value = "row")]
        action: ActionArg,
    },
    /// Reproduce the table of maximal parabolic subgroups.
    Verify {
        #[arg(long, env = "GROUP")]
        group: String,
        #[arg(long, env = "MODE", value_enum)]
        mode: Option<ModeArg>,
        /// Lift the enumeration cap for full-lattice mode on large groups.
        #[arg(long)]
        force_full_lattice: bool,
        /// Fail unless every row works as printed, without corrections.
        #[arg(long)]
        strict: bool,
    },
    /// The parabolic subgroups behind the non-existence of resolutions.
    Chain {
        #[arg(long)]
        strict: bool,
    },
    /// Stabilizers in G_n(K, H) against their predicted block structure.
    Imprimitive {
        /// cyclic:m, binary-dihedral:m, binary-tetrahedral, binary-octahedral or binary-icosahedral.
        #[arg(long)]
        k: KindArg,
        #[arg(long, value_enum, default_value = "full")]
        h: Selector,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Md,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    FullLattice,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum ActionArg {
    Row,
    Column,
}

fn emit<R: Render>(report: &R, format: Format, out: Option<&PathBuf>, pass: bool) -> Result<ExitCode, CliError> {
    let text = match format {
        Format::Json => report.json(),
        Format::Md => report.markdown(),
    };
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            println!("{}", report.summary());
        }
        None => {
            print!("{text}");
            eprintln!("{}", report.summary());
        }
    }
    Ok(if pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let mut settings = Settings {
        seed: cli.seed,
        limits: Limits { enumeration: cli.cap_enumeration, orbit: cli.cap_orbit },
        timings: cli.timings,
    };
    let format = cli.format.unwrap_or(Format::Json);
    let out = cli.out.as_ref();
    match cli.command {
        Command::Order { group } => {
            let r = report::order(&group, &settings)?;
            match cli.format {
                None if out.is_none() => {
                    println!("{}", r.computed_order);
                    Ok(if r.pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
                }
                _ => emit(&r, format, out, r.pass),
            }
        }
        Command::Stabilizer { group, vector, action } => {
            let action = match action {
                ActionArg::Row => VectorAction::Row,
                ActionArg::Column => VectorAction::Column,
            };
            let r = report::stabilizer(&group, &vector, action, &settings)?;
            emit(&r, format, out, r.pass)
        }
        Command::Verify { group, mode, force_full_lattice, strict } => {
            let mode = match mode {
                Some(ModeArg::FullLattice) => VerifyMode::FullLattice,
                Some(ModeArg::Table) => VerifyMode::TableVectors,
                None => VerifyMode::default_for(&group),
            };
            if force_full_lattice && mode == VerifyMode::FullLattice {
                eprintln!("warning: full-lattice mode without an enumeration cap may need many gigabytes for large groups");
                settings.limits.enumeration = usize::MAX;
            }
            let r = verify(&group, mode, &settings)?;
            let pass = if strict { r.summary.pass_as_printed } else { r.summary.pass };
            emit(&r, format, out, pass)
        }
        Command::Chain { strict } => {
            let r = chain::chain(&settings)?;
            let pass = if strict { r.pass_as_printed } else { r.pass };
            emit(&r, format, out, pass)
        }
        Command::Imprimitive { k, h, n, trials } => {
            let r = imprimitive(k, h, n, trials, &settings)?;
            emit(&r, format, out, r.pass)
        }
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
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
