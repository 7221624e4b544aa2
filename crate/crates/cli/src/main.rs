use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use conductor_core::local::{
    beta_p, count_conductor, disc_lower_bound_data, disc_upper_bound, disc_upper_bound_exact, rho,
};
use conductor_core::oracle::{brute_d, DEFAULT_CAP};
use conductor_core::verify::verify;
use conductor_core::{Error, FiniteAbelianGroup, LocalField};

mod render;

use render::{CountRecord, DiscRecord, Format, VerifyRecord};

/// Exact counts of abelian extensions of F_q((t)) with bounded conductor.
#[derive(Debug, Parser)]
#[command(name = "conductor", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Z(F, G; n) with its decomposition.
    Count {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        group: String,
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Z(F, G; n) for n = 1..=n-max.
    Sweep {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        group: String,
        #[arg(long)]
        n_max: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check the closed forms against the brute-force oracle.
    Verify {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        group: String,
        #[arg(long)]
        n_max: u64,
        /// Largest explicit model, in elements.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Discriminant bounds for a p-group.
    Disc {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        group: String,
        #[arg(long)]
        n: u64,
        /// Largest explicit model, in elements.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Args)]
struct FieldArgs {
    /// Characteristic of the residue field.
    #[arg(long, required_unless_present = "q")]
    p: Option<u64>,
    /// Residue degree, q = p^f.
    #[arg(long, requires = "p")]
    f: Option<u32>,
    /// Residue field size, factored into p and f.
    #[arg(long, conflicts_with_all = ["p", "f"])]
    q: Option<u64>,
}

impl FieldArgs {
    fn resolve(&self) -> Result<LocalField, Failure> {
        let field = match (self.p, self.q) {
            (_, Some(q)) => LocalField::from_q(q),
            (Some(p), None) => LocalField::new(p, self.f.unwrap_or(1)),
            (None, None) => unreachable!("clap requires --p or --q"),
        };
        field.map_err(Failure::from)
    }
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    #[arg(long)]
    csv: bool,
    /// Write to FILE instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

impl OutputArgs {
    fn format(&self) -> Format {
        if self.json {
            Format::Json
        } else if self.csv {
            Format::Csv
        } else {
            Format::Text
        }
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Io(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Io(_) => 2,
            Failure::Verification(_) => 3,
        }
    }
}

fn parse_group(s: &str) -> Result<FiniteAbelianGroup, Failure> {
    s.parse().map_err(Failure::from)
}

fn emit(output: &OutputArgs, text: &str) -> Result<(), Failure> {
    match &output.out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| Failure::Io(format!("stdout: {e}")))
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Count {
            field,
            group,
            n,
            output,
        } => {
            let field = field.resolve()?;
            let g = parse_group(&group)?;
            let b = count_conductor(&field, &g, n)?;
            let record = CountRecord::new(&field, &g, &b);
            emit(&output, &render::count(&record, output.format())?)
        }
        Command::Sweep {
            field,
            group,
            n_max,
            output,
        } => {
            let field = field.resolve()?;
            let g = parse_group(&group)?;
            if n_max < 1 {
                return Err(Failure::Usage("--n-max must be at least 1".into()));
            }
            let rows = (1..=n_max)
                .map(|n| Ok(CountRecord::new(&field, &g, &count_conductor(&field, &g, n)?)))
                .collect::<Result<Vec<_>, Failure>>()?;
            emit(&output, &render::sweep(&rows, output.format())?)
        }
        Command::Verify {
            field,
            group,
            n_max,
            cap,
            output,
        } => {
            let field = field.resolve()?;
            let g = parse_group(&group)?;
            let report = verify(&field, &g, n_max, cap)?;
            let record = VerifyRecord::new(&field, &g, n_max, cap, &report);
            emit(&output, &render::verify(&record, output.format())?)?;
            match report.failures().count() {
                0 => Ok(()),
                k => Err(Failure::Verification(format!("{k} check(s) failed"))),
            }
        }
        Command::Disc {
            field,
            group,
            n,
            cap,
            output,
        } => {
            let field = field.resolve()?;
            let g = parse_group(&group)?;
            if !g.is_p_group(field.p()) {
                return Err(Failure::Usage(format!(
                    "discriminant bounds need a {}-group, got {g}",
                    field.p()
                )));
            }
            let (t, _) = g.split_at(field.p())?;
            let beta = beta_p(&t)?;
            let lower = disc_lower_bound_data(&field, &t, n)?;
            let exact = match brute_d(&field, &g, n, cap) {
                Ok(d) => Some(d),
                Err(Error::ResourceLimit { .. }) => None,
                Err(e) => return Err(e.into()),
            };
            let record = DiscRecord {
                p: field.p(),
                f: field.f(),
                q: field.q().to_string(),
                group: g.invariant_factors().to_vec(),
                n,
                rho: rho(&t),
                beta_p: beta,
                upper_bound_exact: disc_upper_bound_exact(&t, n),
                upper_bound: disc_upper_bound(&t, n),
                lower,
                brute_d: exact,
            };
            emit(&output, &render::disc(&record, output.format())?)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            match &failure {
                Failure::Usage(m) | Failure::Io(m) | Failure::Verification(m) => {
                    eprintln!("error: {m}")
                }
            }
            ExitCode::from(failure.code())
        }
    }
}
