//! `gyrokit`: verification and construction of finite gyrogroups and their
//! extensions from the command line.
//!
//! Exit status is 0 when every requested check passes, 1 when a check fails
//! and 2 when the input is malformed.

mod commands;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "gyrokit",
    version,
    about = "Gyrogroup extensions, factor systems and semi cross products"
)]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,

    /// Seed for randomized checks (printed with the report).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Integer window radius for rule-backed structures.
    #[arg(long, global = true, default_value_t = gyrokit::rule::DEFAULT_RADIUS)]
    window: i64,

    /// Worker threads for parallel checks.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

/// A structure given by builtin name or by table file.
#[derive(Args, Clone, Debug)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Builtin name (see `gyrokit builtin --list`).
    #[arg(long)]
    builtin: Option<String>,

    /// Cayley table file; `.json` files use the export format.
    #[arg(long)]
    table: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the four gyrogroup axioms.
    Verify(Source),
    /// Check the standard gyrogroup identities.
    Identities(Source),
    /// List the nontrivial gyroautomorphisms.
    Gyrtab {
        #[command(flatten)]
        source: Source,
        /// Include trivial ones.
        #[arg(long)]
        all: bool,
    },
    /// Normality, cosets and quotient by a subgroup.
    Quotient {
        #[command(flatten)]
        source: Source,
        /// Comma-separated element indices.
        #[arg(long)]
        subset: String,
    },
    /// Factor system of an extension relative to a section.
    Extract {
        #[arg(long)]
        extension: PathBuf,
        /// Section file; defaults to the extension file's section, else a
        /// seeded random one.
        #[arg(long)]
        section: Option<PathBuf>,
        /// Use a seeded random section even if the file has one.
        #[arg(long)]
        random: bool,
    },
    /// Build the extension of a factor system.
    Build {
        #[arg(long = "factor-system")]
        factor_system: PathBuf,
        /// Write the table here and an extension file next to it.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Validate σ and build the semi cross product.
    Semicross {
        /// Group H: builtin name or table file.
        #[arg(long)]
        h: String,
        /// Gyrogroup K: builtin name or table file.
        #[arg(long)]
        k: String,
        /// σ file; trivial when absent.
        #[arg(long)]
        sigma: Option<PathBuf>,
    },
    /// Count every valid σ: K → Aut(H).
    EnumerateSigma {
        #[arg(long)]
        h: String,
        #[arg(long)]
        k: String,
        /// Print each valid σ.
        #[arg(long)]
        list: bool,
    },
    /// Search for a homomorphic section.
    Split {
        #[arg(long)]
        extension: PathBuf,
    },
    /// Check an extension morphism and its induced factor-system morphism.
    Morphism {
        #[arg(long)]
        source: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        morphism: PathBuf,
    },
    /// Transport between the factor systems of two sections.
    SectionChange {
        #[arg(long)]
        extension: PathBuf,
        #[arg(long)]
        s: Option<PathBuf>,
        #[arg(long)]
        t: Option<PathBuf>,
        /// Seeded random pairs when `--s`/`--t` are absent.
        #[arg(long, default_value_t = 20)]
        pairs: usize,
    },
    /// The (x⊕y)⊕y table.
    Xyy(Source),
    /// Describe a builtin structure.
    Builtin {
        name: Option<String>,
        #[arg(long)]
        list: bool,
    },
    /// Print a Cayley table in the interchange format.
    Export(Source),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let ctx = commands::Context {
        seed: cli.seed,
        window: cli.window,
    };
    use commands as c;
    let result = match &cli.command {
        Command::Verify(s) => c::verify(&ctx, s),
        Command::Identities(s) => c::identities(&ctx, s),
        Command::Gyrtab { source, all } => c::gyrtab(source, *all),
        Command::Quotient { source, subset } => c::quotient(source, subset),
        Command::Extract {
            extension,
            section,
            random,
        } => c::extract(&ctx, extension, section.as_deref(), *random),
        Command::Build { factor_system, out } => c::build(factor_system, out.as_deref()),
        Command::Semicross { h, k, sigma } => c::semicross(h, k, sigma.as_deref()),
        Command::EnumerateSigma { h, k, list } => c::enumerate_sigma(h, k, *list),
        Command::Split { extension } => c::split(extension),
        Command::Morphism {
            source,
            target,
            morphism,
        } => c::morphism(&ctx, source, target, morphism),
        Command::SectionChange {
            extension,
            s,
            t,
            pairs,
        } => c::section_change(&ctx, extension, s.as_deref(), t.as_deref(), *pairs),
        Command::Xyy(s) => c::xyy(s),
        Command::Builtin { name, list } => c::builtin(name.as_deref(), *list),
        Command::Export(s) => c::export(s),
    };
    match result {
        Ok(outcome) => {
            let body = if cli.json {
                serde_json::to_string_pretty(&outcome.json).expect("json")
            } else {
                outcome.text
            };
            // a closed pipe is not an error for a report
            let _ = writeln!(std::io::stdout().lock(), "{body}");
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let code = report::exit_code(&e);
            if cli.json {
                let _ = writeln!(std::io::stdout().lock(), "{}", report::error_json(&e));
            }
            eprintln!("error: {e}");
            ExitCode::from(code)
        }
    }
}
