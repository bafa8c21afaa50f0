use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use weber_splitter::config::RunConfig;
use weber_splitter::output::{self, RunMetadata, Summary};
use weber_splitter::scenario::Prepared;
use weber_splitter::{validate, Error};

#[derive(Parser)]
#[command(name = "weber", version, about = "Cold-atom splitting by vector Weber beams")]
struct Cli {
    /// TOML run configuration; every key is optional.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Overrides cloud.seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Overrides output.directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Irradiance and ψ on a grid.
    FieldMap,
    /// u_M against the order a.
    UmCurve,
    /// Atomic cloud through the beam.
    Simulate,
    /// Numerical self-checks; exit status 2 if any fails.
    Validate,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    let mut cfg = match &cli.config {
        Some(p) => RunConfig::from_path(p)?,
        None => RunConfig::default(),
    };
    if let Some(s) = cli.seed {
        cfg.cloud.seed = s;
    }
    if let Some(o) = cli.out {
        cfg.output.directory = o;
    }
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(Error::InvalidParameter("--threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    }
    let dir = cfg.output.directory.clone();
    match cli.command {
        Command::FieldMap => {
            let run = Prepared::new(&cfg)?;
            let csv = output::field_map_csv(&run.spec, run.ctx.field().as_ref(), &cfg.field_map)?;
            output::write_file(&dir, "field_map.csv", &csv)?;
            write_meta(&dir, "field-map", &cfg, run.spec.amplitude_scale)?;
        }
        Command::UmCurve => {
            let pts = output::um_curve(&cfg.beam, &cfg.um_curve)?;
            output::write_file(&dir, "um_curve.csv", &output::um_curve_csv(&pts))?;
            write_meta(&dir, "um-curve", &cfg, cfg.beam.amplitude_scale)?;
        }
        Command::Simulate => {
            let run = Prepared::new(&cfg)?;
            let result = run.run()?;
            let mut summary = Summary::new(&run, &result);
            if cfg.sim.validation_stride > 0 {
                summary.validation = Some(run.revalidate(&result, cfg.sim.validation_stride)?);
            }
            if cfg.output.trajectories {
                let csv = output::trajectories_csv(&result, &cfg.setup, run.a_scale);
                output::write_file(&dir, "trajectories.csv", &csv)?;
            }
            output::write_file(&dir, "summary.json", &output::to_json(&summary))?;
            write_meta(&dir, "simulate", &cfg, run.spec.amplitude_scale)?;
            println!(
                "{} atoms, {} failures; results in {}",
                summary.atoms,
                summary.diagnostics.failures.len(),
                dir.display()
            );
        }
        Command::Validate => {
            let checks = validate::run_checks(&cfg)?;
            let text = validate::report(&checks);
            print!("{text}");
            output::write_file(&dir, "validation.txt", &text)?;
            write_meta(&dir, "validate", &cfg, 0.0)?;
            if checks.iter().any(|c| !c.passed) {
                return Ok(2);
            }
        }
    }
    Ok(0)
}

fn write_meta(dir: &std::path::Path, command: &str, cfg: &RunConfig, scale: f64) -> Result<(), Error> {
    output::write_file(dir, "metadata.json", &output::to_json(&RunMetadata::new(command, cfg, scale)))?;
    output::write_file(dir, "config.toml", &cfg.emit())
}
