mod bounds_table;
mod field_cmds;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use formstrength::algebra::{FieldSpec, Gf, Rationals};
use formstrength::json::Verdict;
use formstrength::oracle::Budget;
use formstrength::quadforms::Backend;
use formstrength::suites::{run_suite, SuiteOptions, SUITES};
use formstrength::Error;

use output::{Format, Outcome};

#[derive(Parser, Debug)]
#[command(name = "formstrength", version, about = "Strength, collapse and subalgebra computations for forms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args, Debug, Clone)]
struct Global {
    /// Coefficient field: q, gf:p or gf:2^e.
    #[arg(long, global = true, default_value = "q")]
    field: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Treat skipped checks as failures.
    #[arg(long, global = true)]
    strict: bool,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Groebner pair limit.
    #[arg(long, global = true)]
    budget_pairs: Option<usize>,
    /// Groebner degree limit.
    #[arg(long, global = true)]
    budget_degree: Option<u32>,
    /// Limit on enumerated candidates (combinations, subspaces).
    #[arg(long, global = true)]
    budget_candidates: Option<u64>,
}

impl Global {
    fn budget(&self) -> Budget {
        let mut b = Budget::default();
        if let Some(p) = self.budget_pairs {
            b.max_pairs = p;
        }
        if let Some(d) = self.budget_degree {
            b.max_degree = d;
        }
        if let Some(c) = self.budget_candidates {
            b.max_candidates = c;
        }
        b
    }
}

/// Polynomials given inline or one per line in a file.
#[derive(Args, Debug, Clone)]
pub struct Input {
    /// Polynomials in the text grammar, e.g. 'x1*x2 + 3*x3^2'.
    polys: Vec<String>,
    /// Read polynomials from a file, one per line; `-` reads stdin.
    #[arg(long, short = 'i')]
    file: Option<PathBuf>,
    /// Number of variables (defaults to the largest index used).
    #[arg(long)]
    nvars: Option<usize>,
}

impl Input {
    pub fn text(&self) -> anyhow::Result<String> {
        match &self.file {
            Some(p) if p.as_os_str() == "-" => std::io::read_to_string(std::io::stdin()).context("reading stdin"),
            Some(p) => std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
            None if self.polys.is_empty() => bail!("no polynomials given"),
            None => Ok(self.polys.join("\n")),
        }
    }

    pub fn nvars(&self) -> Option<usize> {
        self.nvars
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rank and normal form of quadrics.
    Rank(Input),
    /// Rank, strength and J-rank of quadrics.
    Strength(Input),
    /// A collapse into at most k products, or null.
    Collapse {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        k: usize,
    },
    /// Least and greatest rank of a space of quadrics and whether all of it factors.
    Classify {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = BackendArg::Enumerate)]
        backend: BackendArg,
    },
    /// Tables of bound functions.
    Bounds(bounds_table::BoundsArgs),
    /// A subalgebra generated by a regular sequence containing the given forms.
    Subalgebra {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        eta: Option<u32>,
        /// Write the certificate here and print the summary.
        #[arg(long, short = 'o')]
        out: Option<PathBuf>,
        /// Run the containment, count and regular-sequence checks.
        #[arg(long)]
        verify: bool,
    },
    /// Groebner basis, dimension, Hilbert function and regularity.
    Gb {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = OrderArg::Grevlex)]
        order: OrderArg,
        /// Hilbert function up to this degree.
        #[arg(long, default_value_t = 6)]
        hf: u32,
        /// Also compute the height of the forms plus their Jacobian minors.
        #[arg(long)]
        singular: bool,
    },
    /// Run a verification suite.
    Verify {
        /// Suite name; `list` prints the available suites.
        suite: String,
        #[arg(long)]
        trials: Option<usize>,
        /// Number of variables (exact or upper limit, per suite).
        #[arg(long = "N")]
        nvars: Option<usize>,
        /// Number of forms in the fixture.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum BackendArg {
    Enumerate,
    Closure,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Self {
        match b {
            BackendArg::Enumerate => Backend::Enumerate,
            BackendArg::Closure => Backend::Closure,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum OrderArg {
    Grevlex,
    Lex,
}

/// What a command leaves for `main` to print.
fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    let g = &cli.global;
    let budget = g.budget();
    match &cli.command {
        Command::Bounds(args) => return bounds_table::run(args, g.format),
        Command::Verify { suite, trials, nvars, n, k } => {
            if suite == "list" {
                let lines: Vec<String> = SUITES
                    .iter()
                    .map(|s| format!("{:<15} criterion {:>2}  {}", s.name, s.criterion, s.about))
                    .collect();
                return Ok(Outcome::text(lines.join("\n") + "\n"));
            }
            let field = if g.field == "q" { None } else { Some(g.field.parse::<FieldSpec>()?) };
            let opts = SuiteOptions {
                seed: g.seed,
                trials: *trials,
                field,
                nvars: *nvars,
                n: *n,
                k: *k,
                budget,
            };
            let report = run_suite(suite, &opts)?;
            let verdict = report.verdict(g.strict);
            return output::report(&report, verdict, g.format);
        }
        _ => {}
    }
    if g.format != Format::Json {
        bail!(Error::InvalidArgument("csv output is only available for bounds and verify".into()));
    }
    let spec: FieldSpec = g.field.parse()?;
    match spec {
        FieldSpec::Rationals => field_cmds::run(&Rationals, &cli.command, &budget),
        other => field_cmds::run(&Gf::from_spec(&other)?, &cli.command, &budget),
    }
}

/// 2 for bad input, 3 for computations that could not finish.
fn error_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::Unsupported(_) | Error::BudgetExceeded(_) | Error::EmptyVariety) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            outcome.emit();
            match outcome.verdict {
                Verdict::Fail => ExitCode::from(1),
                Verdict::Skipped if cli.global.strict => ExitCode::from(1),
                _ => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(error_code(&e))
        }
    }
}
