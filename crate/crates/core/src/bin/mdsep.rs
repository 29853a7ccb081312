//! mdsep: separability analysis of three-qubit states.
//!
//! Usage:
//!   mdsep analyze [FILE | --builtin NAME | --state FAMILY --p P] [--mode 1|2|3|best] [--json PATH] [--ensemble PATH]
//!   mdsep decompose [SOURCE] --form l1|l1-rotated|l2|bisep|hosvd|noisy [--mode M] [--json PATH] [--ensemble PATH]
//!   mdsep hosvd [SOURCE] [--mode M] [--json PATH]
//!   mdsep state FAMILY P [--out PATH] [--json PATH] [--ensemble PATH]
//!
//! Examples:
//!   mdsep analyze --builtin example-1
//!   mdsep analyze --state w --p 0.15 --json -
//!   mdsep decompose tensor.json --form bisep --ensemble ensemble.json
//!
//! `--json -` prints the JSON report to stdout in place of the text table.
//!
//! Exit status: 0 analysis completed, 1 ensemble failed verification,
//! 2 bad input (including a tensor that is not a density matrix),
//! 3 refused (criterion above threshold).

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use mdsep::criteria::CriterionResult;
use mdsep::ensembles::SeparableEnsemble;
use mdsep::input::{tensor_to_json, TensorInput};
use mdsep::report::{analyze, decompose, hosvd_report, sig, to_json, Builtin, Form, ModeSel, Source, Verdict};
use mdsep::states::{noisy_hs, Family, NoisyStateSpec};
use mdsep::Error;

#[derive(Parser)]
#[command(name = "mdsep", version, about = "Separability criteria for three-qubit MDS states")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validity, spectrum, criteria ladder and verdict.
    Analyze {
        #[command(flatten)]
        src: SourceArgs,
        /// Unfolding mode for slice criteria.
        #[arg(long, default_value = "best")]
        mode: ModeSel,
        /// Write the JSON report here ("-" for stdout instead of text).
        #[arg(long)]
        json: Option<PathBuf>,
        /// Write the certifying ensemble here.
        #[arg(long)]
        ensemble: Option<PathBuf>,
    },
    /// Build and verify one explicit ensemble.
    Decompose {
        #[command(flatten)]
        src: SourceArgs,
        #[arg(long)]
        form: Form,
        /// Mode for l1-rotated / hosvd, grouping for l2.
        #[arg(long, default_value = "best")]
        mode: ModeSel,
        /// Write the decomposition report here ("-" for stdout).
        #[arg(long)]
        json: Option<PathBuf>,
        /// Write the ensemble file here.
        #[arg(long)]
        ensemble: Option<PathBuf>,
    },
    /// Factors, core and core criteria of the higher-order SVD.
    Hosvd {
        #[command(flatten)]
        src: SourceArgs,
        /// Selects the mode of the reported core criterion.
        #[arg(long, default_value = "best")]
        mode: ModeSel,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Coefficient tensor of a noisy GHZ or W state, then its analysis.
    State {
        family: Family,
        p: f64,
        /// Write the tensor file here.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "best")]
        mode: ModeSel,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        ensemble: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SourceArgs {
    /// Tensor JSON file.
    file: Option<PathBuf>,
    /// Bundled tensor: example-1 or example-2.
    #[arg(long, conflicts_with_all = ["file", "state"])]
    builtin: Option<Builtin>,
    /// Noisy state family: ghz or w.
    #[arg(long, requires = "p", conflicts_with = "file")]
    state: Option<Family>,
    /// Noise weight for --state.
    #[arg(long, requires = "state")]
    p: Option<f64>,
    /// Multiply an MDS tensor by this factor.
    #[arg(long)]
    scale: Option<f64>,
}

impl SourceArgs {
    fn load(&self) -> Result<Source, Error> {
        let src = match (&self.file, self.builtin, self.state, self.p) {
            (Some(path), _, _, _) => Source::file(path)?,
            (None, Some(b), _, _) => Source::builtin(b),
            (None, None, Some(family), Some(p)) => Source::State(NoisyStateSpec::new(family, p)?),
            _ => return Err(Error::Input("give a tensor file, --builtin or --state with --p".into())),
        };
        match self.scale {
            Some(k) => src.scaled(k),
            None => Ok(src),
        }
    }
}

#[derive(Serialize)]
struct EnsembleFile<'a> {
    form: Form,
    criterion: &'a CriterionResult<f64>,
    residual: f64,
    ensemble: &'a SeparableEnsemble<f64>,
}

fn write(path: &Path, text: &str) -> Result<(), Error> {
    std::fs::write(path, text).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

/// Prints `text`, or writes `json` to a path; `-` sends the JSON to stdout alone.
fn emit(text: &str, json: &str, path: Option<&Path>) -> Result<(), Error> {
    match path {
        Some(p) if p == Path::new("-") => print!("{json}"),
        Some(p) => {
            write(p, json)?;
            print!("{text}");
        }
        None => print!("{text}"),
    }
    Ok(())
}

enum Outcome {
    Done,
    NotDensity,
    Unverified,
}

fn run_analyze(src: &Source, mode: ModeSel, json: Option<&Path>, ensemble: Option<&Path>) -> Result<Outcome, Error> {
    let report = analyze(src, mode)?;
    emit(&report.render(), &to_json(&report), json)?;
    if let Some(path) = ensemble {
        match (&report.certificate, &report.ensemble) {
            (Some(c), Some(e)) => {
                let crit = report
                    .criteria
                    .iter()
                    .find(|r| r.name == c.criterion && r.mode.map(|q| q.mode()) == c.mode)
                    .expect("certificate criterion is in the report");
                let file = EnsembleFile {
                    form: c.form,
                    criterion: crit,
                    residual: c.check.residual,
                    ensemble: e,
                };
                write(path, &to_json(&file))?;
            }
            _ => eprintln!("no certified ensemble; {} not written", path.display()),
        }
    }
    Ok(if report.verdict == Verdict::NotDensity {
        Outcome::NotDensity
    } else {
        Outcome::Done
    })
}

fn run(cli: Cli) -> Result<Outcome, Error> {
    match cli.cmd {
        Cmd::Analyze {
            src,
            mode,
            json,
            ensemble,
        } => run_analyze(&src.load()?, mode, json.as_deref(), ensemble.as_deref()),
        Cmd::Decompose {
            src,
            form,
            mode,
            json,
            ensemble,
        } => {
            let d = decompose(&src.load()?, form, mode)?;
            if let Some(path) = ensemble {
                let file = EnsembleFile {
                    form: d.form,
                    criterion: &d.criterion,
                    residual: d.check.residual,
                    ensemble: &d.ensemble,
                };
                write(&path, &to_json(&file))?;
            }
            emit(&d.render(), &to_json(&d), json.as_deref())?;
            Ok(if d.check.ok { Outcome::Done } else { Outcome::Unverified })
        }
        Cmd::Hosvd { src, mode, json } => {
            let r = hosvd_report(&src.load()?, mode)?;
            emit(&r.render(), &to_json(&r), json.as_deref())?;
            Ok(Outcome::Done)
        }
        Cmd::State {
            family,
            p,
            out,
            mode,
            json,
            ensemble,
        } => {
            let spec = NoisyStateSpec::new(family, p)?;
            let hs = noisy_hs(&spec);
            let name = format!("{family} p={p}");
            if let Some(path) = out {
                write(&path, &tensor_to_json(&TensorInput::General(hs), Some(&name)))?;
            }
            let to_stdout = json.as_deref() == Some(Path::new("-"));
            if !to_stdout {
                let terms: Vec<String> = hs
                    .iter()
                    .filter(|(_, v)| *v != 0.0)
                    .map(|([m, n, k], v)| format!("{m}{n}{k}: {}", sig(v)))
                    .collect();
                println!("coefficients: {}", terms.join("  "));
            }
            run_analyze(&Source::State(spec), mode, json.as_deref(), ensemble.as_deref())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::NotDensity) => ExitCode::from(2),
        Ok(Outcome::Unverified) => {
            eprintln!("error: ensemble failed verification");
            ExitCode::from(1)
        }
        Err(Error::Refused {
            criterion,
            value,
            threshold,
        }) => {
            eprintln!("refused: {criterion} = {value} exceeds threshold {threshold}");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
