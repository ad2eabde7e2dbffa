use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use chowseries::catalog::{
    euler_chow_pn, mcdonald_e0, ruled_series, scroll3_printed_formula, PrintedSign, RuledSurfaceSpec,
};
use chowseries::dsl::{self, CommandResult};
use chowseries::grading::auto_functional;
use chowseries::selftest::{self, SelftestOptions};
use chowseries::series::expand;
use chowseries::{GradingFunctional, ProductForm, TruncationSpec};
use clap::{Parser, Subcommand, ValueEnum};

mod output;

use output::Format;

#[derive(Parser, Debug)]
#[command(name = "chowseries", version, about = "Exact Euler-Chow series expansion and pushforward checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a series script; exits 1 if any compare finds a difference.
    Run {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Expand a catalog series.
    Catalog {
        #[arg(value_enum)]
        entry: Entry,
        #[arg(long, allow_negative_numbers = true)]
        n: Option<i64>,
        #[arg(long, allow_negative_numbers = true)]
        p: Option<i64>,
        #[arg(long, allow_negative_numbers = true)]
        g: Option<i64>,
        #[arg(long, allow_negative_numbers = true)]
        e: Option<i64>,
        #[arg(long, allow_negative_numbers = true)]
        h: Option<i64>,
        #[arg(long, allow_negative_numbers = true)]
        chi: Option<i64>,
        /// Sign in front of h in the mixed scroll monomials.
        #[arg(long, value_parser = parse_sign, default_value = "-", allow_hyphen_values = true)]
        sign: PrintedSign,
        #[arg(long)]
        order: i64,
        /// Comma-separated grading weights; defaults to an automatic choice.
        #[arg(long, value_delimiter = ',')]
        functional: Option<Vec<i64>>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Run the built-in verification suite.
    Selftest {
        #[arg(long, hide = true, value_enum)]
        inject_fault: Option<Fault>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Entry {
    Pn,
    Mcdonald,
    Ruled,
    Scroll3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Fault {
    Sign,
}

fn parse_sign(s: &str) -> Result<PrintedSign, String> {
    match s {
        "+" | "plus" => Ok(PrintedSign::Plus),
        "-" | "minus" => Ok(PrintedSign::Minus),
        _ => Err(format!("expected `+` or `-`, got `{s}`")),
    }
}

fn require(value: Option<i64>, flag: &str, entry: Entry) -> anyhow::Result<i64> {
    value.with_context(|| format!("catalog entry {entry:?} requires --{flag}"))
}

fn catalog_form(entry: Entry, cmd: &Command) -> anyhow::Result<ProductForm> {
    let Command::Catalog { n, p, g, e, h, chi, sign, .. } = cmd else { unreachable!() };
    let form = match entry {
        Entry::Pn => euler_chow_pn(require(*n, "n", entry)?, require(*p, "p", entry)?)?,
        Entry::Mcdonald => mcdonald_e0(require(*chi, "chi", entry)?),
        Entry::Ruled => {
            let s = RuledSurfaceSpec::new(require(*g, "g", entry)?, require(*e, "e", entry)?)?;
            ruled_series(s, require(*p, "p", entry)?)?
        }
        Entry::Scroll3 => scroll3_printed_formula(
            require(*n, "n", entry)?,
            require(*h, "h", entry)?,
            require(*p, "p", entry)?,
            *sign,
        )?,
    };
    Ok(form)
}

fn cmd_catalog(cmd: &Command, out: &mut impl Write) -> anyhow::Result<()> {
    let Command::Catalog { entry, order, functional, format, .. } = cmd else { unreachable!() };
    let form = catalog_form(*entry, cmd)?;
    let functional = match functional {
        Some(w) => GradingFunctional::new(w.clone())?,
        None => {
            let monomials: Vec<_> = form.monomials().cloned().collect();
            if monomials.is_empty() {
                GradingFunctional::ones(form.rank())
            } else {
                auto_functional(&monomials)?
            }
        }
    };
    if functional.rank() != form.rank() {
        bail!("functional has rank {}, series has rank {}", functional.rank(), form.rank());
    }
    let series = expand(&form, &TruncationSpec::new(functional, *order)?)?;
    output::write_series(out, &series, *format)?;
    Ok(())
}

fn cmd_run(file: &PathBuf, format: Format, out: &mut impl Write) -> ExitCode {
    let text = match std::fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", file.display());
            return ExitCode::from(2);
        }
    };
    let results = match dsl::run(&text) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("{}:{e}", file.display());
            return ExitCode::from(2);
        }
    };
    let mut all_equal = true;
    for r in &results {
        if let CommandResult::Compare { report, .. } = r {
            all_equal &= report.is_equal();
        }
        if let Err(e) = output::write_result(out, r, format) {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    if all_equal {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_selftest(fault: Option<Fault>, out: &mut impl Write) -> ExitCode {
    let options = SelftestOptions { ignore_scroll_sign: fault == Some(Fault::Sign) };
    let outcomes = selftest::run_all(options);
    let _ = write!(out, "{}", selftest::render_summary(&outcomes));
    match outcomes.iter().find(|o| !o.passed) {
        None => ExitCode::SUCCESS,
        Some(o) => {
            eprintln!("selftest failed: acceptance #{} ({})", o.id, o.title);
            ExitCode::from(1)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match &cli.command {
        Command::Run { file, format } => cmd_run(file, *format, &mut out),
        Command::Catalog { .. } => match cmd_catalog(&cli.command, &mut out) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e:#}");
                ExitCode::from(2)
            }
        },
        Command::Selftest { inject_fault } => cmd_selftest(*inject_fault, &mut out),
    }
}
