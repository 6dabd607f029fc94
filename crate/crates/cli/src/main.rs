//! `persist-lift`: decompose persistence modules over local Artinian rings and
//! check lift witnesses. Reports go to stdout as JSON; the exit code is 0 for
//! pass, 1 for failure or invalid input, 2 for undecided.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::Value;

use persist_lift::artin::extension_chain;
use persist_lift::battery::{battery_report, run_battery, DEFAULT_BATTERY_SIZE};
use persist_lift::catmod::hom_basis;
use persist_lift::decomp::{decompose, end_algebra, verify_theorem};
use persist_lift::io::fixtures::{builtin, expected_reports, FIXTURE_NAMES};
use persist_lift::io::report::{self, exit_code, to_text};
use persist_lift::io::{barcode, load_instance, render_barcode, Instance, IoError};
use persist_lift::rng::DEFAULT_SEED;

#[derive(Parser)]
#[command(name = "persist-lift", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Load and fully validate an instance file.
    Validate { instance: PathBuf },
    /// Split a module into indecomposable summands.
    Decompose {
        instance: PathBuf,
        module: String,
        /// Seed for randomized splitting (default 0x9E3779B97F4A7C15).
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Endomorphism algebra of a module: basis and structure constants.
    Endring { instance: PathBuf, module: String },
    /// Basis of the natural transformations between two modules.
    Hom {
        instance: PathBuf,
        source: String,
        target: String,
    },
    /// The chain of small extensions from the instance's ring down to k.
    Chain { instance: PathBuf },
    /// Interval decomposition of a module over a linearly oriented quiver.
    Barcode {
        instance: PathBuf,
        module: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Decompose a lift and match its summands with those of the base.
    VerifyTheorem {
        instance: PathBuf,
        lift: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Run the randomized witness battery.
    Battery {
        #[arg(long, default_value_t = DEFAULT_BATTERY_SIZE)]
        count: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Worker threads; 0 uses one per core. Output does not depend on it.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Write the built-in instances and their expected reports.
    Fixtures {
        #[arg(long, default_value = "fixtures")]
        out: PathBuf,
        /// Compare against the files in `out` instead of writing them.
        #[arg(long)]
        check: bool,
    },
}

fn with_instance(path: &Path, f: impl FnOnce(&Instance) -> Result<Value, IoError>) -> Result<Value, IoError> {
    f(&load_instance(path)?)
}

fn run(command: Command) -> Result<Value, IoError> {
    match command {
        Command::Validate { instance } => with_instance(&instance, |inst| Ok(report::validate_report(inst))),
        Command::Decompose { instance, module, seed } => with_instance(&instance, |inst| {
            let d = decompose(inst.module(&module)?, seed)?;
            Ok(report::decompose_report(&module, &d, seed))
        }),
        Command::Endring { instance, module } => with_instance(&instance, |inst| {
            let m = inst.module(&module)?;
            let e = end_algebra(m)?;
            Ok(report::endring_report(&module, &e, m.algebra().length()))
        }),
        Command::Hom {
            instance,
            source,
            target,
        } => with_instance(&instance, |inst| {
            let h = hom_basis(inst.module(&source)?, inst.module(&target)?)?;
            Ok(report::hom_report(&source, &target, &h))
        }),
        Command::Chain { instance } => with_instance(&instance, |inst| {
            let chain = extension_chain(&inst.algebra)?;
            Ok(report::chain_report(&inst.algebra, &chain))
        }),
        Command::Barcode { instance, module, seed } => with_instance(&instance, |inst| {
            let m = inst.module(&module)?;
            let bars = barcode(m, seed)?;
            let text = render_barcode(&bars, m.quiver().vertices());
            Ok(report::barcode_report(&module, &bars, &text, seed))
        }),
        Command::VerifyTheorem { instance, lift, seed } => with_instance(&instance, |inst| {
            let r = verify_theorem(inst.lift(&lift)?, seed)?;
            Ok(report::theorem_report(&lift, &r, seed))
        }),
        Command::Battery { count, seed, jobs } => Ok(battery_report(&run_battery(count, seed, jobs)?, seed)),
        Command::Fixtures { out, check } => fixtures(&out, check),
    }
}

fn io_err(path: &Path, e: std::io::Error) -> IoError {
    IoError::Io(format!("{}: {e}", path.display()))
}

fn fixtures(out: &Path, check: bool) -> Result<Value, IoError> {
    let mut mismatches = Vec::new();
    let mut written = Vec::new();
    for name in FIXTURE_NAMES {
        let inst = builtin(name).expect("listed fixtures exist");
        let dir = out.join("expected").join(name);
        let mut files = vec![(out.join(format!("{name}.json")), inst.to_canonical_string())];
        for (file, text) in expected_reports(&inst, DEFAULT_SEED)? {
            files.push((dir.join(file), text));
        }
        if !check {
            std::fs::create_dir_all(&dir).map_err(|e| io_err(&dir, e))?;
        }
        for (path, text) in files {
            if check {
                if std::fs::read_to_string(&path).ok().as_deref() != Some(text.as_str()) {
                    mismatches.push(path.display().to_string());
                }
            } else {
                std::fs::write(&path, &text).map_err(|e| io_err(&path, e))?;
                written.push(path.display().to_string());
            }
        }
    }
    Ok(serde_json::json!({
        "command": "fixtures",
        "check": check,
        "written": written,
        "mismatches": mismatches,
        "verdict": if mismatches.is_empty() { "pass" } else { "fail" },
    }))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(report) => {
            print!("{}", to_text(&report));
            let code = exit_code(report["verdict"].as_str().unwrap_or("fail"));
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(report::EXIT_FAIL as u8)
        }
    }
}
