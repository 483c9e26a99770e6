use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cvtele::phase_space::io::write_csv;
use cvtele_cli::axis::AxisSpec;
use cvtele_cli::backtest::backtest;
use cvtele_cli::config::{Artifact, Engine, Scenario};
use cvtele_cli::error::{CliError, Result};
use cvtele_cli::figure::{figure, Figure};
use cvtele_cli::scenario::{report_fields, run_scenario};
use cvtele_cli::svg;
use cvtele_cli::sweep::sweep;
use cvtele_cli::table::Format;

#[derive(Parser)]
#[command(
    name = "cvtele",
    version,
    about = "Negativity teleportation calculator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Override the scenario engine.
    #[arg(long, global = true, value_enum)]
    engine: Option<Engine>,

    /// Grid nodes per axis (power of two).
    #[arg(long, global = true)]
    grid_size: Option<usize>,

    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Output encoding; reports default to json, tables to csv.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(Subcommand)]
enum Command {
    /// Scenario files.
    Scenario {
        #[command(subcommand)]
        action: ScenarioAction,
    },
    /// Dataset behind one of the figures.
    Figure {
        name: String,
        /// Replace a default axis: key=a:b:n or key=v1,v2.
        #[arg(long = "range")]
        ranges: Vec<AxisSpec>,
        /// Also render an SVG plot to this path.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Cartesian sweep over a scenario template.
    Sweep {
        file: PathBuf,
        /// key=a:b:n or key=v1,v2; keys s, eta, epsilon, r, noise.
        #[arg(long = "axis", required = true)]
        axes: Vec<AxisSpec>,
    },
    /// Pinned experimental back-test.
    Backtest,
}

#[derive(Subcommand)]
enum ScenarioAction {
    Run { file: PathBuf },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn sink(out: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn sibling(out: &Path, suffix: &str) -> PathBuf {
    let stem = out.file_stem().and_then(|s| s.to_str()).unwrap_or("report");
    out.with_file_name(format!("{stem}-{suffix}"))
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Scenario {
            action: ScenarioAction::Run { file },
        } => {
            let scenario = Scenario::load(&file)?
                .with_engine(cli.engine)
                .with_grid_size(cli.grid_size);
            let extra = scenario.outputs.iter().any(|a| *a != Artifact::Report);
            if extra && cli.out.is_none() {
                return Err(CliError::field("outputs", "grid artifacts need --out"));
            }
            let run = run_scenario(&scenario)?;
            let mut w = sink(&cli.out)?;
            match cli.format.unwrap_or(Format::Json) {
                Format::Json => writeln!(w, "{}", serde_json::to_string_pretty(&run.report)?)?,
                Format::Csv => {
                    writeln!(w, "field,value")?;
                    for (k, v) in report_fields(&run.report) {
                        writeln!(w, "{k},{v}")?;
                    }
                }
            }
            w.flush()?;
            if let Some(out) = &cli.out {
                for artifact in &scenario.outputs {
                    match artifact {
                        Artifact::Report => {}
                        Artifact::InputWigner | Artifact::OutputWigner => {
                            let (grid, name) = if *artifact == Artifact::InputWigner {
                                (&run.input_grid, "input-wigner.csv")
                            } else {
                                (&run.output_grid, "output-wigner.csv")
                            };
                            let grid = grid.as_ref().expect("grid engine ran");
                            let f = BufWriter::new(File::create(sibling(out, name))?);
                            write_csv(grid, f).map_err(|e| CliError::Output(e.to_string()))?;
                        }
                        Artifact::Comparison => {
                            let cmp = run.comparison(&scenario.params)?.expect("grid engine ran");
                            let mut f =
                                BufWriter::new(File::create(sibling(out, "comparison.json"))?);
                            writeln!(f, "{}", serde_json::to_string_pretty(&cmp)?)?;
                        }
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Figure {
            name,
            ranges,
            svg: svg_path,
        } => {
            let fig: Figure = name.parse()?;
            let table = figure(fig, &ranges)?;
            table.write(cli.format.unwrap_or(Format::Csv), sink(&cli.out)?)?;
            if let Some(path) = svg_path {
                let keys: Vec<&str> = table.columns[..fig.default_axes().len()]
                    .iter()
                    .map(String::as_str)
                    .collect();
                let (x, series) = keys.split_last().expect("figures have axes");
                let doc = svg::render(&table, x, fig.y_column(), series, fig.name());
                std::fs::write(path, doc)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Sweep { file, axes } => {
            let scenario = Scenario::load(&file)?
                .with_engine(cli.engine)
                .with_grid_size(cli.grid_size);
            sweep(
                &scenario,
                &axes,
                cli.format.unwrap_or(Format::Csv),
                sink(&cli.out)?,
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Backtest => {
            let report = backtest(cli.engine.or(Some(Engine::Both)), cli.grid_size)?;
            let mut w = sink(&cli.out)?;
            writeln!(w, "{}", serde_json::to_string_pretty(&report)?)?;
            w.flush()?;
            for c in &report.checks {
                eprintln!(
                    "{} {}: {:.6} (target {} ± {:e})",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.name,
                    c.value,
                    c.target,
                    c.tolerance
                );
            }
            Ok(if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            })
        }
    }
}
