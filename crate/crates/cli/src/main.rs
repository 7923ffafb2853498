//! Command-line front end: run built-in presets or user spec files and
//! emit the report as a text table or JSON.
//!
//! Exit codes: 0 when every comparison passes (or there was nothing to
//! compare), 1 when some comparison fails, 2 on input errors.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use gda::field::{FieldSpec, RatLit};
use gda::report::Report;
use gda::scenarios::{self, RunOptions};
use gda::specfile::{RunKind, SpecFile};

#[derive(Parser)]
#[command(name = "gda", version, about = "Exact computations with graded differential algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a built-in preset and compare against its expected table.
    Run {
        /// Preset name (see `gda list`).
        preset: String,
        #[command(flatten)]
        flags: RunFlags,
    },
    /// List the built-in presets.
    List {
        /// Output format: text or json.
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Cohomology of a CDGA described by a spec file.
    Cohomology {
        #[arg(long)]
        spec: PathBuf,
        #[command(flatten)]
        flags: RunFlags,
    },
    /// Degreewise dimensions of an amalgamated free product.
    Amalgam {
        #[arg(long)]
        spec: PathBuf,
        #[command(flatten)]
        flags: RunFlags,
    },
    /// Tor slices of a Koszul complex.
    Tor {
        #[arg(long)]
        spec: PathBuf,
        #[command(flatten)]
        flags: RunFlags,
    },
}

#[derive(Args)]
struct RunFlags {
    /// Coefficient field: `q` or `fp:<p>`. Defaults to the preset's or
    /// file's own field.
    #[arg(long)]
    field: Option<String>,
    /// Maximum degree reported on (default: 12 for presets, the file's
    /// truncation for spec files).
    #[arg(long)]
    max_degree: Option<u32>,
    /// The nonzero rational run parameter, e.g. `1`, `-3`, `7/2`.
    #[arg(long, default_value = "1")]
    k: String,
    /// Output format: text or json.
    #[arg(long, default_value = "text")]
    format: String,
    /// Include representative cocycles in the report.
    #[arg(long)]
    representatives: bool,
    /// Seed for the sampling validation stage.
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
}

impl RunFlags {
    fn options(&self) -> Result<RunOptions, gda::Error> {
        let field = match &self.field {
            None => None,
            Some(text) => Some(FieldSpec::parse(text)?),
        };
        Ok(RunOptions {
            field,
            k: RatLit::parse(&self.k)?,
            max_degree: self.max_degree,
            representatives: self.representatives,
            seed: self.seed,
        })
    }

    fn format(&self) -> Result<Format, gda::Error> {
        match self.format.as_str() {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            other => Err(gda::Error::Input(format!(
                "unknown format `{other}` (expected text or json)"
            ))),
        }
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Format {
    Text,
    Json,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode, gda::Error> {
    match cli.command {
        Command::Run { preset, flags } => {
            let report = scenarios::run_preset(&preset, &flags.options()?)?;
            emit(&report, flags.format()?)
        }
        Command::List { format } => list(&format),
        Command::Cohomology { spec, flags } => run_file(&spec, RunKind::Cdga, &flags),
        Command::Amalgam { spec, flags } => run_file(&spec, RunKind::Amalgam, &flags),
        Command::Tor { spec, flags } => run_file(&spec, RunKind::Koszul, &flags),
    }
}

fn run_file(path: &PathBuf, expect_kind: RunKind, flags: &RunFlags) -> Result<ExitCode, gda::Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| gda::Error::Input(format!("cannot read {}: {e}", path.display())))?;
    let mut file = SpecFile::from_json(&text)?;
    if file.kind != expect_kind {
        return Err(gda::Error::Input(format!(
            "spec file has kind `{}`, expected `{}` for this subcommand",
            file.kind.as_str(),
            expect_kind.as_str()
        )));
    }
    if file.name.is_none() {
        file.name = Some(path.display().to_string());
    }
    let report = scenarios::run_spec_file(&file, &flags.options()?)?;
    emit(&report, flags.format()?)
}

/// Writes to stdout, treating a closed pipe as a clean stop.
fn out(text: &str) {
    let _ = std::io::stdout().write_all(text.as_bytes());
}

fn emit(report: &Report, format: Format) -> Result<ExitCode, gda::Error> {
    match format {
        Format::Text => out(&report.render_text()),
        Format::Json => out(&format!("{}\n", report.to_json())),
    }
    if let Some(elapsed) = report.elapsed {
        eprintln!("elapsed: {elapsed:?}");
    }
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn list(format: &str) -> Result<ExitCode, gda::Error> {
    let presets = scenarios::list_presets();
    match format {
        "text" => {
            let mut text = String::new();
            for p in &presets {
                text.push_str(&format!("{}  [{}] over {}\n", p.name, p.kind, p.default_field));
                text.push_str(&format!("    {}\n", p.description));
                text.push_str(&format!("    source: {}\n", p.anchor));
            }
            out(&text);
        }
        "json" => {
            let entries: Vec<serde_json::Value> = presets
                .iter()
                .map(|p| {
                    serde_json::json!({
                        "name": p.name,
                        "kind": p.kind,
                        "default_field": p.default_field.to_string(),
                        "description": p.description,
                        "anchor": p.anchor,
                    })
                })
                .collect();
            let text = serde_json::to_string_pretty(&entries).expect("serializes");
            out(&format!("{text}\n"));
        }
        other => {
            return Err(gda::Error::Input(format!(
                "unknown format `{other}` (expected text or json)"
            )))
        }
    }
    Ok(ExitCode::SUCCESS)
}
