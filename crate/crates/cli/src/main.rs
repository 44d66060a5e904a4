//! `qprop` — propagate Gaussian-class quasi-distribution functions under
//! quadratic Hamiltonians from a JSON run configuration.

mod config;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_complex::Complex64;

use config::RunConfig;
use qprop::eom::{assemble, LieCoefficients};
use qprop::error::{Error, Result};
use qprop::gridfile;
use qprop::oracle::{evolve_rho, rho_to_qdf, AnalyticCase, FockDensityMatrix};
use qprop::ordering::named_orderings;
use qprop::phasegrid::{convert_ordering, propagate_piecewise_trace};
use qprop::states::initial_grid;
use qprop::weinorman::WnTrajectory;

#[derive(Parser)]
#[command(name = "qprop", version, about = "Quasi-distribution propagator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Propagate an initial state and write initial/final grids plus the
    /// factor-coefficient trajectory.
    Propagate { config: PathBuf },
    /// Convert a state between orderings (uses ordering_from/ordering_to).
    Convert { config: PathBuf },
    /// Integrate the factor-coefficient equations and write w1..w9 over time.
    Wn { config: PathBuf },
    /// Write the equation-of-motion coefficients a1..a9 on a time mesh.
    Coeffs { config: PathBuf },
    /// Run the pipeline against an oracle and write an error report.
    Compare {
        config: PathBuf,
        /// Oracle id: "fock" or an analytic case (free-wigner,
        /// free-standard-ground, free-q-ground, ho-wigner-map,
        /// ho-standard-01, ho-standard-cat, ho-nan-map,
        /// tdep-standard-ground).
        #[arg(long)]
        oracle: String,
    },
    /// List the named orderings and their kernel parameters.
    Orderings,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let (code, label) = classify(&e);
            eprintln!("qprop: error[{label}]: {e}");
            ExitCode::from(code)
        }
    }
}

/// Error classes with stable exit codes: 2 config, 3 blow-up, 4 stability.
fn classify(e: &Error) -> (u8, &'static str) {
    match e {
        Error::Config(_)
        | Error::UnknownOrdering(_)
        | Error::MissingOrderingParameter
        | Error::Grid(_)
        | Error::GridFile(_)
        | Error::Representation(_)
        | Error::Json(_) => (2, "config"),
        Error::Blowup { .. } => (3, "blowup"),
        Error::Stability { .. } | Error::State(_) => (4, "stability"),
        Error::CutoffLeakage { .. } => (1, "oracle"),
        Error::Io(_) => (1, "io"),
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Propagate { config } => cmd_propagate(&RunConfig::load(&config)?),
        Command::Convert { config } => cmd_convert(&RunConfig::load(&config)?),
        Command::Wn { config } => cmd_wn(&RunConfig::load(&config)?),
        Command::Coeffs { config } => cmd_coeffs(&RunConfig::load(&config)?),
        Command::Compare { config, oracle } => cmd_compare(&RunConfig::load(&config)?, &oracle),
        Command::Orderings => {
            print_orderings();
            Ok(())
        }
    }
}

fn out_dir(cfg: &RunConfig) -> Result<PathBuf> {
    let dir = PathBuf::from(&cfg.output.path);
    std::fs::create_dir_all(&dir)?;
    Ok(dir)
}

fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

fn cmd_propagate(cfg: &RunConfig) -> Result<()> {
    let dir = out_dir(cfg)?;
    let model = cfg.model()?;
    let g = cfg.ordering()?;
    let initial = initial_grid(&cfg.state, g, cfg.grid)?;
    let (final_grid, trajectories) = propagate_piecewise_trace(
        &initial,
        &model,
        g,
        cfg.time.t_final,
        cfg.slices(),
        &cfg.integrator(),
    )?;
    gridfile::write_grid(&dir.join("initial"), &initial, g, 0.0)?;
    gridfile::write_grid(&dir.join("final"), &final_grid, g, cfg.time.t_final)?;
    std::fs::write(
        dir.join("weinorman.csv"),
        trajectory_csv(&trajectories, cfg.time.t_final),
    )?;
    let norm0 = initial.normalization();
    let norm1 = final_grid.normalization();
    write_json(
        &dir.join("run.json"),
        &serde_json::json!({
            "command": "propagate",
            "T": cfg.time.t_final,
            "slices": cfg.slices(),
            "dt": cfg.integrator().dt,
            "ordering": g,
            "normalization_initial": [norm0.re, norm0.im],
            "normalization_final": [norm1.re, norm1.im],
        }),
    )
}

fn cmd_convert(cfg: &RunConfig) -> Result<()> {
    let dir = out_dir(cfg)?;
    let (from, to) = cfg.ordering_pair()?;
    let input = initial_grid(&cfg.state, from, cfg.grid)?;
    let output = convert_ordering(&input, from, to)?;
    gridfile::write_grid(&dir.join("input"), &input, from, 0.0)?;
    gridfile::write_grid(&dir.join("output"), &output, to, 0.0)?;
    Ok(())
}

fn cmd_wn(cfg: &RunConfig) -> Result<()> {
    let dir = out_dir(cfg)?;
    let model = cfg.model()?;
    let g = cfg.ordering()?;
    let coeffs = assemble(&model, g)?;
    let trajectory = qprop::weinorman::integrate(&coeffs, cfg.time.t_final, &cfg.integrator())?;
    std::fs::write(
        dir.join("weinorman.csv"),
        trajectory_csv(std::slice::from_ref(&trajectory), cfg.time.t_final),
    )?;
    Ok(())
}

fn cmd_coeffs(cfg: &RunConfig) -> Result<()> {
    let dir = out_dir(cfg)?;
    let model = cfg.model()?;
    let g = cfg.ordering()?;
    let coeffs = assemble(&model, g)?;
    std::fs::write(dir.join("coeffs.csv"), coeffs_csv(&coeffs, cfg))?;
    Ok(())
}

fn cmd_compare(cfg: &RunConfig, oracle_id: &str) -> Result<()> {
    let dir = out_dir(cfg)?;
    let model = cfg.model()?;
    let g = cfg.ordering()?;
    let t_final = cfg.time.t_final;
    let initial = initial_grid(&cfg.state, g, cfg.grid)?;
    let (pipeline, _) = propagate_piecewise_trace(
        &initial,
        &model,
        g,
        t_final,
        cfg.slices(),
        &cfg.integrator(),
    )?;

    let oracle_grid = if oracle_id.eq_ignore_ascii_case("fock") {
        let cutoff = cfg.oracle.cutoff.unwrap_or(40);
        let dt = cfg.oracle.dt.unwrap_or(1e-3);
        let rho0 = FockDensityMatrix::from_state(&cfg.state, cutoff);
        let rho = evolve_rho(&rho0, &model, t_final, dt)?;
        rho_to_qdf(&rho, g, cfg.grid)?
    } else {
        let alpha = cfg.state.alpha().unwrap_or(Complex64::ZERO);
        let (epsilon, delta) = cfg.mass_parameters();
        AnalyticCase::parse(oracle_id, alpha, epsilon, delta)?.sample(cfg.grid, t_final)
    };

    gridfile::write_grid(&dir.join("pipeline"), &pipeline, g, t_final)?;
    gridfile::write_grid(&dir.join("oracle"), &oracle_grid, g, t_final)?;
    let na = pipeline.normalization();
    let nb = oracle_grid.normalization();
    write_json(
        &dir.join("report.json"),
        &serde_json::json!({
            "oracle": oracle_id,
            "l2": pipeline.l2_diff(&oracle_grid),
            "linf": pipeline.max_abs_diff(&oracle_grid),
            "normalization_a": [na.re, na.im],
            "normalization_b": [nb.re, nb.im],
        }),
    )
}

fn print_orderings() {
    println!("name            g1      g2      g3");
    for (name, g) in named_orderings() {
        if g.g1.is_nan() {
            println!("{name:<14}  s/4     s/4     0");
        } else {
            println!("{name:<14}  {:<6}  {:<6}  {:<6}", g.g1, g.g2, g.g3);
        }
    }
}

/// CSV rows (t, Re w1, Im w1, ..., Im w9) for one or more propagation
/// slices; slice-local times are offset to absolute run time.
fn trajectory_csv(trajectories: &[WnTrajectory], t_final: f64) -> String {
    let mut out = String::new();
    out.push('t');
    for i in 1..=9 {
        let _ = write!(out, ",re_w{i},im_w{i}");
    }
    out.push('\n');
    let slices = trajectories.len();
    for (s, trajectory) in trajectories.iter().enumerate() {
        let t0 = t_final * s as f64 / slices as f64;
        for state in &trajectory.states {
            let _ = write!(out, "{}", fmt17(t0 + state.t));
            for w in &state.w {
                let _ = write!(out, ",{},{}", fmt17(w.re), fmt17(w.im));
            }
            out.push('\n');
        }
    }
    out
}

/// CSV rows (t, Re a1, Im a1, ..., Im a9) on the configured time mesh.
fn coeffs_csv(coeffs: &LieCoefficients, cfg: &RunConfig) -> String {
    let mut out = String::new();
    out.push('t');
    for i in 1..=9 {
        let _ = write!(out, ",re_a{i},im_a{i}");
    }
    out.push('\n');
    let dt = cfg.integrator().dt;
    let steps = (cfg.time.t_final / dt).ceil() as usize;
    for s in 0..=steps {
        let t = (s as f64 * dt).min(cfg.time.t_final);
        let _ = write!(out, "{}", fmt17(t));
        for a in coeffs.eval(t) {
            let _ = write!(out, ",{},{}", fmt17(a.re), fmt17(a.im));
        }
        out.push('\n');
        if t >= cfg.time.t_final {
            break;
        }
    }
    out
}

fn write_json(path: &Path, value: &serde_json::Value) -> Result<()> {
    std::fs::write(path, serde_json::to_string_pretty(value)?)?;
    Ok(())
}
