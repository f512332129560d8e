use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use setsize::pair::parse_rational;
use setsize::report::{self, Input, RunConfig, Sweep};
use setsize::MValue;

/// Scale-dependent set size: measure, fit dimensions, compare and check.
#[derive(Parser)]
#[command(name = "setsize", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Size pairs of each input at the requested scales.
    Measure(RunArgs),
    /// Log-log dimension fit over a scale sweep.
    Dim(RunArgs),
    /// Graduation-1 equality of two inputs, plus optional per-scale counts.
    Compare(RunArgs),
    /// Evaluate a pair expression such as "(1/2,3)+(1/2,4)".
    Algebra { expr: String },
    /// The tower of infinities and the CH record.
    Infinity {
        #[arg(long, default_value_t = 4)]
        n: usize,
    },
    /// Run the outer-measure property suite.
    Check {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
}

#[derive(Args)]
struct RunArgs {
    /// CSV point file; repeat for several inputs.
    #[arg(long)]
    input: Vec<PathBuf>,
    /// IFS preset: cantor or sierpinski.
    #[arg(long)]
    preset: Vec<String>,
    /// Generate this many uniform samples of the unit cube.
    #[arg(long)]
    uniform: Option<usize>,
    /// Ambient dimension for --uniform.
    #[arg(long, default_value_t = 1)]
    dim: usize,
    /// Scale p/q or decimal; repeatable.
    #[arg(long, value_parser = rational)]
    scale: Vec<BigRational>,
    /// Geometric sweep r0:s:k.
    #[arg(long)]
    sweep: Option<Sweep>,
    #[arg(long, default_value = "1")]
    graduation: MValue,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// CSV field delimiter.
    #[arg(long, default_value_t = ',')]
    delimiter: char,
    /// The CSV files start with a header row.
    #[arg(long)]
    header: bool,
}

fn rational(s: &str) -> Result<BigRational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

impl RunArgs {
    fn config(self) -> Result<RunConfig, String> {
        if !self.delimiter.is_ascii() {
            return Err(format!("delimiter `{}` is not ASCII", self.delimiter));
        }
        let mut inputs: Vec<Input> = self.input.into_iter().map(Input::Csv).collect();
        inputs.extend(self.preset.into_iter().map(Input::Preset));
        if let Some(n) = self.uniform {
            inputs.push(Input::Uniform { n, dim: self.dim });
        }
        Ok(RunConfig {
            inputs,
            scales: self.scale,
            sweep: self.sweep,
            graduation: self.graduation,
            seed: self.seed,
            workers: self.workers,
            delimiter: self.delimiter as u8,
            header: self.header,
            ..RunConfig::default()
        })
    }
}

fn run(command: Command) -> Result<(String, bool), String> {
    let err = |e: setsize::Error| e.to_string();
    Ok(match command {
        Command::Measure(a) => (
            report::to_json(&report::cmd_measure(&a.config()?).map_err(err)?),
            true,
        ),
        Command::Dim(a) => (
            report::to_json(&report::cmd_dim(&a.config()?).map_err(err)?),
            true,
        ),
        Command::Compare(a) => (
            report::to_json(&report::cmd_compare(&a.config()?).map_err(err)?),
            true,
        ),
        Command::Algebra { expr } => (
            report::to_json(&report::cmd_algebra(&expr).map_err(err)?),
            true,
        ),
        Command::Infinity { n } => {
            let cfg = RunConfig {
                n,
                ..RunConfig::default()
            };
            (
                report::to_json(&report::cmd_infinity(&cfg).map_err(err)?),
                true,
            )
        }
        Command::Check { seed, trials } => {
            let cfg = RunConfig {
                seed,
                trials,
                ..RunConfig::default()
            };
            let rep = report::cmd_check(&cfg).map_err(err)?;
            (report::to_json(&rep), rep.passed)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (json, passed) = match run(cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &json) {
                eprintln!("error: writing {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{json}"),
    }
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
