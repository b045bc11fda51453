use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use subdirac::config::{FileConfig, Jet, Overrides, Suite, SuiteConfig};
use subdirac::{dump, run_suite, shapes, ChartDocument, CliError};

#[derive(Parser)]
#[command(
    name = "subdirac",
    version,
    about = "Verification suites for submanifold Dirac operators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and write a JSON report.
    Run {
        #[arg(long, value_enum)]
        suite: Option<Suite>,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Comma-separated grid sizes (samples per axis, at least 8).
        #[arg(long, value_delimiter = ',')]
        grids: Option<Vec<usize>>,
        #[arg(long, value_enum)]
        jet: Option<Jet>,
        /// Report path; the report goes to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        /// Coarse finite differences and non-conformal charts become errors.
        #[arg(long)]
        strict: bool,
    },
    /// Write per-sample fields of one shape as CSV.
    Dump {
        #[arg(long, required_unless_present = "chart", conflicts_with = "chart")]
        shape: Option<String>,
        /// JSON chart document with shape, params, grid and jet.
        #[arg(long, conflicts_with_all = ["grid", "jet"])]
        chart: Option<PathBuf>,
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum)]
        jet: Option<Jet>,
    },
    /// Print the shape catalog.
    ListShapes,
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Run {
            suite,
            config,
            grids,
            jet,
            out,
            seed,
            strict,
        } => {
            let file = match &config {
                Some(p) => FileConfig::load(p)?,
                None => FileConfig::default(),
            };
            let flags = Overrides {
                suite,
                grids,
                jet,
                out,
                strict,
                seed,
            };
            let cfg = SuiteConfig::resolve(file, flags)?;
            let report = run_suite(&cfg);
            match &cfg.output {
                Some(path) => {
                    std::fs::write(path, report.to_json()).map_err(|e| CliError::io(path, e))?;
                    print!("{}", report.summary());
                }
                None => print!("{}", report.to_json()),
            }
            Ok(report.passed())
        }
        Command::Dump {
            shape,
            chart,
            grid,
            out,
            jet,
        } => {
            let (label, table) = match (shape, chart) {
                (_, Some(path)) => {
                    let c = ChartDocument::load(&path)?.resolve()?;
                    (c.entry.label.clone(), dump::field_table_on(&c.entry, &c.grid, c.jet)?)
                }
                (Some(text), None) => {
                    let entry = shapes::parse_shape(&text)?;
                    let table = dump::field_table(&entry, grid.unwrap_or(64), jet.unwrap_or(Jet::Analytic))?;
                    (entry.label, table)
                }
                (None, None) => unreachable!("clap requires --shape or --chart"),
            };
            let rows = dump::table_to_path(&table, &out)?;
            eprintln!("wrote {rows} samples of {label} to {}", out.display());
            Ok(true)
        }
        Command::ListShapes => {
            print!("{}", shapes::list_shapes());
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
