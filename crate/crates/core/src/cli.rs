//! Command-line front end.
//!
//! Configuration is a flat `key = value` file (`#` starts a comment);
//! `--set key=value` overrides are applied afterwards, in order.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::csv::Table;
use crate::dynamics::{simulate_semiclassical, StateVector};
use crate::error::{Error, Result};
use crate::figures::{figure_table, Figure};
use crate::grid::FrequencyGrid;
use crate::params::{derive_operating_point, Branch, LaserParams};
use crate::polarimeter::{c12_spectrum, c23_spectrum, photocurrent_noise_spectra, PolarimeterSetting};
use crate::spectra::{quadrature_spectra, stokes_from_quadratures, SpectrumMode};
use crate::steady_state::{relaxation_frequencies, stability_eigenvalues, Stability};
use crate::verify::{verify, CHECKED_CHANNELS};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_PHYSICS: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "spinflip", version, about = "Polarization quantum-noise spectra of spin-flip VCSELs")]
pub struct Cli {
    /// key=value configuration file
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output file (stdout when absent)
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// as_printed | canonical
    #[arg(long, global = true)]
    pub mode: Option<String>,
    /// Override a configuration key (repeatable)
    #[arg(long = "set", value_name = "KEY=VALUE", global = true)]
    pub set: Vec<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Operating point, stability and relaxation frequencies
    Steady,
    /// Quadrature and Stokes spectra
    Spectra,
    /// Normalized photocurrent spectra at phi_deg, theta_deg
    Polarimeter,
    /// Detector cross-correlation spectrum at phi_deg, theta_deg
    C12,
    /// S2-S3 cross-correlation spectrum
    C23,
    /// Semiclassical trajectory
    Simulate,
    /// Closed forms against the resolvent computation, plus property checks
    Verify,
    /// Figure preset sweep: 4a, 4b, 4c, 5a, 5b or 6
    Figure { name: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridKind {
    /// Zero followed by log-spaced points.
    Standard,
    Log,
    Linear,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimInit {
    Steady,
    /// Both circular amplitudes scaled by `1 + eps`.
    PerturbTotal,
    /// `a_+` scaled by `1 + eps`, `a_-` by `1 - eps`.
    PerturbDiff,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub params: LaserParams,
    pub omega_min: f64,
    pub omega_max: f64,
    pub omega_points: usize,
    pub grid_kind: GridKind,
    pub phi_deg: f64,
    pub theta_deg: f64,
    pub mode: SpectrumMode,
    pub out: Option<PathBuf>,
    pub sim_duration: f64,
    pub sim_step: f64,
    pub sim_init: SimInit,
    pub sim_perturbation: f64,
    pub sim_stride: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            params: LaserParams::default(),
            omega_min: 0.01,
            omega_max: 1000.0,
            omega_points: 2000,
            grid_kind: GridKind::Standard,
            phi_deg: 45.0,
            theta_deg: 0.0,
            mode: SpectrumMode::Canonical,
            out: None,
            sim_duration: 10.0,
            sim_step: 1e-4,
            sim_init: SimInit::PerturbTotal,
            sim_perturbation: 0.01,
            sim_stride: 10,
        }
    }
}

fn num(key: &str, v: &str) -> Result<f64> {
    v.parse::<f64>().map_err(|_| Error::Config(format!("{key}: '{v}' is not a number")))
}

fn count(key: &str, v: &str) -> Result<usize> {
    v.parse::<usize>().map_err(|_| Error::Config(format!("{key}: '{v}' is not a non-negative integer")))
}

impl RunConfig {
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let p = &mut self.params;
        match key {
            "kappa" => p.kappa = num(key, value)?,
            "kappa_a" => p.kappa_a = num(key, value)?,
            "omega_p" => p.omega_p = num(key, value)?,
            "alpha" => p.alpha = num(key, value)?,
            "gamma" => p.gamma = num(key, value)?,
            "gamma_s" => p.gamma_s = num(key, value)?,
            "r" => p.r = num(key, value)?,
            "p" => p.p = num(key, value)?,
            "i_sat" => p.i_sat = num(key, value)?,
            "omega_min" => self.omega_min = num(key, value)?,
            "omega_max" => self.omega_max = num(key, value)?,
            "omega_points" => self.omega_points = count(key, value)?,
            "grid_kind" => {
                self.grid_kind = match value {
                    "standard" => GridKind::Standard,
                    "log" => GridKind::Log,
                    "linear" => GridKind::Linear,
                    o => return Err(Error::Config(format!("grid_kind: unknown '{o}'"))),
                }
            }
            "phi_deg" => self.phi_deg = num(key, value)?,
            "theta_deg" => self.theta_deg = num(key, value)?,
            "mode" => self.mode = value.parse()?,
            "out" => self.out = Some(PathBuf::from(value)),
            "sim_duration" => self.sim_duration = num(key, value)?,
            "sim_step" => self.sim_step = num(key, value)?,
            "sim_init" => {
                self.sim_init = match value {
                    "steady" => SimInit::Steady,
                    "perturb_total" => SimInit::PerturbTotal,
                    "perturb_diff" => SimInit::PerturbDiff,
                    o => return Err(Error::Config(format!("sim_init: unknown '{o}'"))),
                }
            }
            "sim_perturbation" => self.sim_perturbation = num(key, value)?,
            "sim_stride" => self.sim_stride = count(key, value)?.max(1),
            other => return Err(Error::Config(format!("unknown key '{other}'"))),
        }
        Ok(())
    }

    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", n + 1)))?;
            self.set(k.trim(), v.trim()).map_err(|e| match e {
                Error::Config(m) => Error::Config(format!("line {}: {m}", n + 1)),
                e => e,
            })?;
        }
        Ok(())
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut c = RunConfig::default();
        c.apply_text(text)?;
        Ok(c)
    }

    pub fn apply_override(&mut self, kv: &str) -> Result<()> {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("--set expects key=value, got '{kv}'")))?;
        self.set(k.trim(), v.trim())
    }

    pub fn grid(&self) -> Result<FrequencyGrid> {
        match self.grid_kind {
            GridKind::Standard => {
                let log = FrequencyGrid::log(self.omega_min, self.omega_max, self.omega_points)?;
                let mut v = vec![0.0];
                v.extend_from_slice(log.values());
                FrequencyGrid::from_values(v)
            }
            GridKind::Log => FrequencyGrid::log(self.omega_min, self.omega_max, self.omega_points),
            GridKind::Linear => FrequencyGrid::linear(self.omega_min, self.omega_max, self.omega_points),
        }
    }

    /// Rejects invalid parameters as configuration errors; threshold is
    /// checked separately by each command.
    pub fn validate(&self) -> Result<()> {
        let v = self.params.validate();
        if !v.is_empty() {
            let msg: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            return Err(Error::Config(format!("invalid parameters: {}", msg.join("; "))));
        }
        self.grid()?;
        PolarimeterSetting::from_degrees(self.phi_deg, self.theta_deg)?;
        Ok(())
    }
}

/// Builds the configuration from the parsed command line.
pub fn resolve_config(cli: &Cli) -> Result<RunConfig> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        cfg.apply_text(&text)?;
    }
    for kv in &cli.set {
        cfg.apply_override(kv)?;
    }
    if let Some(m) = &cli.mode {
        cfg.mode = m.parse()?;
    }
    if let Some(o) = &cli.out {
        cfg.out = Some(o.clone());
    }
    cfg.validate()?;
    Ok(cfg)
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::BelowThreshold { .. } | Error::Diverged { .. } => EXIT_PHYSICS,
        _ => EXIT_CONFIG,
    }
}

/// Output of one command: the payload and the exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub text: String,
    pub code: i32,
    /// Secondary CSV (the residual table of `verify`).
    pub attachment: Option<String>,
}

fn ok(text: String) -> Outcome {
    Outcome { text, code: EXIT_OK, attachment: None }
}

pub fn execute(cfg: &RunConfig, command: &Command) -> Result<Outcome> {
    let params = cfg.params;
    let op = derive_operating_point(&params, Branch::X)?;
    let grid = cfg.grid()?;
    let setting = PolarimeterSetting::from_degrees(cfg.phi_deg, cfg.theta_deg)?;
    match command {
        Command::Steady => steady_report(cfg),
        Command::Spectra => {
            let set = quadrature_spectra(&params, &op, &grid, cfg.mode)?;
            let st = stokes_from_quadratures(&op, &set);
            let mut t = Table::new();
            t.push("omega_ghz", set.omega.clone());
            t.push("sxx", set.sxx);
            t.push("sxy", set.sxy);
            t.push("syy", set.syy);
            t.push("cxy", set.cxy);
            t.push("s0", st.s0);
            t.push("s2", st.s2);
            t.push("s3", st.s3);
            t.push("c23", st.c23);
            Ok(ok(t.to_csv()))
        }
        Command::Polarimeter => {
            let pc = photocurrent_noise_spectra(&params, &op, &setting, &grid, cfg.mode)?;
            let mut t = Table::new();
            t.push("omega_ghz", pc.omega);
            if let Some(n1) = pc.n1 {
                t.push("n1", n1);
            }
            if let Some(n2) = pc.n2 {
                t.push("n2", n2);
            }
            t.push("nminus", pc.nminus);
            t.push("nplus", pc.nplus);
            Ok(ok(t.to_csv()))
        }
        Command::C12 => {
            let c = c12_spectrum(&params, &op, &setting, &grid, cfg.mode)?;
            let mut t = Table::new();
            t.push("omega_ghz", c.omega);
            t.push("c12", c.values);
            Ok(ok(t.to_csv()))
        }
        Command::C23 => {
            let c = c23_spectrum(&params, &op, &grid, cfg.mode)?;
            let mut t = Table::new();
            t.push("omega_ghz", c.omega);
            t.push("c23", c.values);
            Ok(ok(t.to_csv()))
        }
        Command::Simulate => {
            let base = StateVector::steady(&op);
            let e = cfg.sim_perturbation;
            let init = match cfg.sim_init {
                SimInit::Steady => base,
                SimInit::PerturbTotal => base.scaled(1.0 + e, 1.0 + e),
                SimInit::PerturbDiff => base.scaled(1.0 + e, 1.0 - e),
            };
            let tr = simulate_semiclassical(&params, init, cfg.sim_duration, cfg.sim_step)?;
            Ok(ok(tr.to_csv(cfg.sim_stride)))
        }
        Command::Verify => {
            let rep = verify(&params, &op, &grid)?;
            let mut text = String::new();
            for c in &rep.checks {
                let _ = writeln!(text, "{c}");
            }
            let code = if rep.all_pass() { EXIT_OK } else { EXIT_VERIFY };
            let _ = writeln!(text, "{}", if code == EXIT_OK { "verify: all checks passed" } else { "verify: FAILED" });
            let mut channels = CHECKED_CHANNELS.to_vec();
            channels.push(crate::spectra::Channel::Syy);
            Ok(Outcome { text, code, attachment: Some(rep.residuals.to_csv(&channels)) })
        }
        Command::Figure { name } => {
            let fig: Figure = name.parse()?;
            Ok(ok(figure_table(fig, &params, &grid, cfg.mode)?.to_csv()))
        }
    }
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| "none".to_string(), |x| format!("{x:.12}"))
}

fn steady_report(cfg: &RunConfig) -> Result<Outcome> {
    let params = cfg.params;
    let op = derive_operating_point(&params, Branch::X)?;
    let stab = stability_eigenvalues(&op, &params)?;
    let freqs = relaxation_frequencies(&op, &params)?;
    let op_y = derive_operating_point(&params, Branch::Y).ok();
    let mut s = String::new();
    let _ = writeln!(s, "q2 = {}", op.q2);
    let _ = writeln!(s, "q = {}", op.q);
    let _ = writeln!(s, "d_big0 = {}", op.d_big0);
    let _ = writeln!(s, "d_small0 = {}", op.d_small0);
    let _ = writeln!(s, "delta_x = {}", op.delta);
    let _ = writeln!(s, "r_th_x = {}", op.r_th);
    if let Some(y) = op_y {
        let _ = writeln!(s, "delta_y = {}", y.delta);
        let _ = writeln!(s, "r_th_y = {}", y.r_th);
    }
    let _ = writeln!(s, "c_sat = {}", op.c_sat);
    let _ = writeln!(s, "gamma_big = {}", op.gamma_big);
    let _ = writeln!(s, "gamma_big_s = {}", op.gamma_big_s);
    for (i, z) in stab.x.iter().enumerate() {
        let _ = writeln!(s, "eig_x{i} = {:.12} {:+.12}i", z.re, z.im);
    }
    for (i, z) in stab.y.iter().enumerate() {
        let _ = writeln!(s, "eig_y{i} = {:.12} {:+.12}i", z.re, z.im);
    }
    let _ = writeln!(s, "stability = {:?}", stab.verdict);
    let _ = writeln!(s, "omega1 = {}", opt(freqs.omega1));
    let _ = writeln!(s, "omega2 = {}", opt(freqs.omega2));
    let _ = writeln!(s, "omega2_full = {}", opt(freqs.omega2_full));
    let code = if stab.verdict == Stability::Unstable { EXIT_PHYSICS } else { EXIT_OK };
    Ok(Outcome { text: s, code, attachment: None })
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(Error::from),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(Error::from)
        }
    }
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    let cfg = match resolve_config(cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_CONFIG;
        }
    };
    let outcome = match execute(&cfg, &cli.command) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code_for(&e);
        }
    };
    let res = match (&cli.command, &outcome.attachment) {
        (Command::Verify, Some(csv)) => {
            print!("{}", outcome.text);
            cfg.out.as_deref().map_or(Ok(()), |p| write_out(Some(p), csv))
        }
        _ => write_out(cfg.out.as_deref(), &outcome.text),
    };
    if let Err(e) = res {
        eprintln!("error: {e}");
        return EXIT_CONFIG;
    }
    outcome.code
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_whitespace() {
        let c = RunConfig::from_text("# reference\nkappa_a = 10  # dichroism\n\nr=3\nmode = as_printed\n").unwrap();
        assert_eq!(c.params.kappa_a, 10.0);
        assert_eq!(c.params.r, 3.0);
        assert_eq!(c.mode, SpectrumMode::AsPrinted);
    }

    #[test]
    fn unknown_keys_rejected() {
        let e = RunConfig::from_text("kapa = 3\n").unwrap_err();
        assert_eq!(e, Error::Config("line 1: unknown key 'kapa'".into()));
        assert!(RunConfig::from_text("kappa 3").is_err());
        assert!(RunConfig::from_text("kappa = fast").is_err());
    }

    #[test]
    fn default_grid_is_standard() {
        assert_eq!(RunConfig::default().grid().unwrap().values(), FrequencyGrid::standard().values());
    }

    #[test]
    fn below_threshold_steady_is_physics_error() {
        let mut c = RunConfig::default();
        c.set("r", "0.5").unwrap();
        let e = execute(&c, &Command::Steady).unwrap_err();
        assert_eq!(exit_code_for(&e), EXIT_PHYSICS);
    }

    #[test]
    fn degenerate_c12_is_config_error() {
        let mut c = RunConfig::default();
        c.set("phi_deg", "0").unwrap();
        let e = execute(&c, &Command::C12).unwrap_err();
        assert_eq!(exit_code_for(&e), EXIT_CONFIG);
    }

    #[test]
    fn overrides_apply_in_order() {
        let mut c = RunConfig::default();
        c.apply_override("p=0").unwrap();
        c.apply_override("p = 0.5").unwrap();
        assert_eq!(c.params.p, 0.5);
        assert!(c.apply_override("p").is_err());
    }
}
