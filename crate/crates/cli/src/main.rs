//! `dyncp`: sweep runner and oracle validation.
//!
//! Exit codes: 0 success, 1 usage or config error, 2 evaluation failure,
//! 3 validation failure.

mod config;
mod run;
mod validate;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use config::ScenarioConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Run,
    Validate,
}

#[derive(Debug, Parser)]
#[command(name = "dyncp", version, about = "Dynamical three-body Casimir-Polder sweeps and oracle checks")]
struct Args {
    /// Scenario file (TOML).
    #[arg(long)]
    config: PathBuf,
    /// Output CSV; overrides `output` in the config.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Mode::Run)]
    mode: Mode,
    /// Relative quadrature tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// Worker threads; defaults to the number of cores.
    #[arg(long)]
    threads: Option<usize>,
    /// Seed vector for the box oracle's polarization basis, `x,y,z`.
    #[arg(long, value_parser = parse_seed)]
    seed: Option<[f64; 3]>,
}

fn parse_seed(s: &str) -> Result<[f64; 3], String> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<Result<_, _>>()?;
    let v: [f64; 3] = parts.try_into().map_err(|_| "expected three comma-separated numbers".to_string())?;
    if v.iter().all(|x| *x == 0.0) || v.iter().any(|x| !x.is_finite()) {
        return Err("seed must be finite and nonzero".into());
    }
    Ok(v)
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(1)
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    if let Some(t) = args.tol {
        if !(t > 0.0 && t < 1.0) {
            return usage(format!("--tol must be in (0, 1), got {t}"));
        }
    }
    let cfg = match ScenarioConfig::load(&args.config) {
        Ok(c) => c,
        Err(e) => return usage(e),
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = args.threads {
        if n == 0 {
            return usage("--threads must be at least 1");
        }
        pool = pool.num_threads(n);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => return usage(e),
    };
    let spec = cfg.quadrature_spec(args.tol);
    if let Err(e) = spec.validate() {
        return usage(e);
    }
    let out = args.out.or_else(|| cfg.output.clone());

    match args.mode {
        Mode::Run => {
            let Some(out) = out else { return usage("no output path: pass --out or set `output`") };
            let rows = pool.install(|| run::sweep(&cfg, &spec));
            if let Err(e) = run::write_csv(&out, &cfg, &rows) {
                eprintln!("error: writing {}: {e}", out.display());
                return ExitCode::from(2);
            }
            print!("{}", run::summary(&rows));
            if rows.iter().any(|r| r.error.is_some()) {
                return ExitCode::from(2);
            }
        }
        Mode::Validate => {
            let checks = match pool.install(|| validate::validate(&cfg, &spec, args.seed)) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            print!("{}", validate::render(&checks));
            if let Some(out) = out {
                if let Err(e) = validate::write_report(&out, &checks) {
                    eprintln!("error: writing {}: {e}", out.display());
                    return ExitCode::from(2);
                }
            }
            if checks.iter().any(validate::Check::failed) {
                return ExitCode::from(3);
            }
        }
    }
    ExitCode::SUCCESS
}
