//! Parameter sweeps reproducing the published figure series.
//!
//! Every preset starts from a base parameter set (normally the reference
//! set) and overrides only the swept quantity.

use std::fmt;
use std::str::FromStr;

use crate::csv::Table;
use crate::error::{Error, Result};
use crate::grid::FrequencyGrid;
use crate::params::{derive_operating_point, Branch, LaserParams};
use crate::polarimeter::{c12_from_set, c23_from_set, stokes_noise_from_set, PolarimeterSetting, StokesPreset};
use crate::spectra::{quadrature_spectra, SpectrumMode};

/// Dichroism values of the three-panel series.
pub const DICHROISM_SWEEP: [f64; 3] = [0.0, 10.0, 50.0];
/// Pump-statistics values of the C12 inset.
pub const PUMP_STATISTICS_SWEEP: [f64; 3] = [0.0, 0.5, 1.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    /// Normalized Stokes noise spectra, no dichroism.
    F4a,
    /// Same, `kappa_a = 10`.
    F4b,
    /// Same, `kappa_a = 50`.
    F4c,
    /// C12 at the balanced split, with the pump-statistics sweep.
    F5a,
    /// C12 over the dichroism sweep.
    F5b,
    /// C23 over the dichroism sweep.
    F6,
}

impl Figure {
    pub const ALL: [Figure; 6] = [Figure::F4a, Figure::F4b, Figure::F4c, Figure::F5a, Figure::F5b, Figure::F6];

    pub fn name(self) -> &'static str {
        match self {
            Figure::F4a => "4a",
            Figure::F4b => "4b",
            Figure::F4c => "4c",
            Figure::F5a => "5a",
            Figure::F5b => "5b",
            Figure::F6 => "6",
        }
    }
}

impl FromStr for Figure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Figure::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown figure '{s}' (expected 4a, 4b, 4c, 5a, 5b or 6)")))
    }
}

impl fmt::Display for Figure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn tag(v: f64) -> String {
    format!("{v}").replace('.', "_")
}

/// Normalized S1, S2, S3 measurement spectra.
pub fn stokes_panel(params: &LaserParams, grid: &FrequencyGrid, mode: SpectrumMode) -> Result<Table> {
    let op = derive_operating_point(params, Branch::X)?;
    let set = quadrature_spectra(params, &op, grid, mode)?;
    let mut t = Table::new();
    t.push("omega_ghz", grid.values().to_vec());
    for (preset, name) in [(StokesPreset::S1, "s1_norm"), (StokesPreset::S2, "s2_norm"), (StokesPreset::S3, "s3_norm")] {
        t.push(name, stokes_noise_from_set(params, &op, &set, preset));
    }
    Ok(t)
}

fn c12_balanced_values(params: &LaserParams, grid: &FrequencyGrid, mode: SpectrumMode) -> Result<Vec<f64>> {
    let op = derive_operating_point(params, Branch::X)?;
    let set = quadrature_spectra(params, &op, grid, mode)?;
    let s = PolarimeterSetting::from_degrees(45.0, 0.0)?;
    Ok(c12_from_set(params, &set, &s)?.values)
}

fn c23_values(params: &LaserParams, grid: &FrequencyGrid, mode: SpectrumMode) -> Result<Vec<f64>> {
    let op = derive_operating_point(params, Branch::X)?;
    let set = quadrature_spectra(params, &op, grid, mode)?;
    Ok(c23_from_set(&op, &set).values)
}

pub fn figure_table(fig: Figure, base: &LaserParams, grid: &FrequencyGrid, mode: SpectrumMode) -> Result<Table> {
    let with_ka = |ka: f64| LaserParams { kappa_a: ka, ..*base };
    match fig {
        Figure::F4a => stokes_panel(&with_ka(DICHROISM_SWEEP[0]), grid, mode),
        Figure::F4b => stokes_panel(&with_ka(DICHROISM_SWEEP[1]), grid, mode),
        Figure::F4c => stokes_panel(&with_ka(DICHROISM_SWEEP[2]), grid, mode),
        Figure::F5a => {
            let mut t = Table::new();
            t.push("omega_ghz", grid.values().to_vec());
            let p0 = with_ka(0.0);
            t.push("c12", c12_balanced_values(&p0, grid, mode)?);
            for p in PUMP_STATISTICS_SWEEP {
                t.push(format!("c12_p{}", tag(p)), c12_balanced_values(&LaserParams { p, ..p0 }, grid, mode)?);
            }
            Ok(t)
        }
        Figure::F5b | Figure::F6 => {
            let mut t = Table::new();
            t.push("omega_ghz", grid.values().to_vec());
            for ka in DICHROISM_SWEEP {
                let p = with_ka(ka);
                if fig == Figure::F5b {
                    t.push(format!("c12_ka{}", tag(ka)), c12_balanced_values(&p, grid, mode)?);
                } else {
                    t.push(format!("c23_ka{}", tag(ka)), c23_values(&p, grid, mode)?);
                }
            }
            Ok(t)
        }
    }
}
