//! Virtual polarimeter: a compensator (phase `theta` between the x and y
//! field components) followed by a polarizing beam splitter at angle `phi`
//! and two ideal detectors (unit quantum efficiency, unit charge).

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::grid::FrequencyGrid;
use crate::params::{LaserParams, OperatingPoint};
use crate::spectra::{quadrature_spectra, stokes_from_quadratures, SpectrumMode, SpectrumSet, StokesVector};

const SNAP: f64 = 1e-15;

fn snap(v: f64) -> f64 {
    if v.abs() < SNAP {
        0.0
    } else if (v.abs() - 1.0).abs() < SNAP {
        v.signum()
    } else {
        v
    }
}

/// `(cos x, sin x)` with values within `1e-15` of 0 or ±1 rounded onto them,
/// so right-angle settings select channels exactly.
pub fn exact_cos_sin(x: f64) -> (f64, f64) {
    let (s, c) = x.sin_cos();
    (snap(c), snap(s))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarimeterSetting {
    /// Beam-splitter transmission axis (radians).
    pub phi: f64,
    /// Compensator phase difference (radians).
    pub theta: f64,
    /// Detector quantum efficiency; always 1.
    pub eta: f64,
}

impl PolarimeterSetting {
    pub fn from_degrees(phi_deg: f64, theta_deg: f64) -> Result<Self> {
        if !phi_deg.is_finite() || !theta_deg.is_finite() {
            return Err(Error::InvalidParams("polarimeter angles must be finite".into()));
        }
        Ok(PolarimeterSetting { phi: phi_deg.to_radians(), theta: theta_deg.to_radians(), eta: 1.0 })
    }

    fn cos2_sin2_phi(&self) -> (f64, f64) {
        let (c2, _) = exact_cos_sin(2.0 * self.phi);
        (snap(0.5 * (1.0 + c2)), snap(0.5 * (1.0 - c2)))
    }
}

/// The three Stokes measurement configurations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StokesPreset {
    S1,
    S2,
    S3,
}

impl StokesPreset {
    pub const ALL: [StokesPreset; 3] = [StokesPreset::S1, StokesPreset::S2, StokesPreset::S3];

    pub fn setting(self) -> PolarimeterSetting {
        let (phi, theta) = match self {
            StokesPreset::S1 => (0.0, 0.0),
            StokesPreset::S2 => (45.0, 0.0),
            StokesPreset::S3 => (45.0, 90.0),
        };
        PolarimeterSetting::from_degrees(phi, theta).expect("finite preset")
    }

    pub fn name(self) -> &'static str {
        match self {
            StokesPreset::S1 => "s1",
            StokesPreset::S2 => "s2",
            StokesPreset::S3 => "s3",
        }
    }
}

impl FromStr for StokesPreset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "s1" => Ok(StokesPreset::S1),
            "s2" => Ok(StokesPreset::S2),
            "s3" => Ok(StokesPreset::S3),
            o => Err(Error::Config(format!("unknown Stokes preset '{o}'"))),
        }
    }
}

impl fmt::Display for StokesPreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanCurrents {
    pub i1: f64,
    pub i2: f64,
    pub i_plus: f64,
}

pub fn mean_photocurrents(op: &OperatingPoint, setting: &PolarimeterSetting) -> Result<MeanCurrents> {
    op.require_x()?;
    let (c2, s2) = setting.cos2_sin2_phi();
    let kappa = 0.5 * (op.kappa_x + op.kappa_y);
    let total = 2.0 * op.q2 * kappa;
    Ok(MeanCurrents { i1: total * c2, i2: total * s2, i_plus: total })
}

/// Inverts the four classical polarimeter readings (first-detector currents
/// at `(phi, theta)` = (0,0), (45,0), (90,0), (45,90) degrees).
pub fn classical_stokes_from_measurements(i_00: f64, i_45_0: f64, i_90_0: f64, i_45_90: f64) -> StokesVector {
    let s0 = i_00 + i_90_0;
    StokesVector { s0, s1: i_00 - i_90_0, s2: 2.0 * i_45_0 - s0, s3: 2.0 * i_45_90 - s0 }
}

/// `cos^2(theta) sxy - 2 sin(theta) cos(theta) cxy + sin^2(theta) syy`
pub fn x_theta_spectrum(set: &SpectrumSet, theta: f64) -> Vec<f64> {
    let (c, s) = exact_cos_sin(2.0 * theta);
    let (cc, ss) = (snap(0.5 * (1.0 + c)), snap(0.5 * (1.0 - c)));
    (0..set.len())
        .map(|i| cc * set.sxy[i] - s * set.cxy[i] + ss * set.syy[i])
        .collect()
}

/// Photocurrent spectra normalized to their shot-noise levels.
#[derive(Debug, Clone, PartialEq)]
pub struct PhotocurrentSpectra {
    pub omega: Vec<f64>,
    /// Detector 1, normalized to its own mean; absent when that arm is dark.
    pub n1: Option<Vec<f64>>,
    pub n2: Option<Vec<f64>>,
    /// Difference current, normalized to the sum mean.
    pub nminus: Vec<f64>,
    /// Sum current, normalized to the sum mean.
    pub nplus: Vec<f64>,
}

/// Normalized photocurrent spectra from precomputed quadrature spectra.
pub fn photocurrent_spectra_from_set(
    params: &LaserParams,
    set: &SpectrumSet,
    setting: &PolarimeterSetting,
) -> PhotocurrentSpectra {
    let k8 = 8.0 * params.kappa;
    let xt = x_theta_spectrum(set, setting.theta);
    let (c2, s2) = setting.cos2_sin2_phi();
    let (cos4, _) = exact_cos_sin(4.0 * setting.phi);
    let (cc2, ss2) = (snap(0.5 * (1.0 + cos4)), snap(0.5 * (1.0 - cos4)));
    let arm = |a: f64, b: f64| -> Option<Vec<f64>> {
        (a >= SNAP).then(|| (0..set.len()).map(|i| 1.0 + k8 * (a * set.sxx[i] + b * xt[i])).collect())
    };
    PhotocurrentSpectra {
        omega: set.omega.clone(),
        n1: arm(c2, s2),
        n2: arm(s2, c2),
        nminus: (0..set.len()).map(|i| 1.0 + k8 * (cc2 * set.sxx[i] + ss2 * xt[i])).collect(),
        nplus: set.sxx.iter().map(|s| 1.0 + k8 * s).collect(),
    }
}

pub fn photocurrent_noise_spectra(
    params: &LaserParams,
    op: &OperatingPoint,
    setting: &PolarimeterSetting,
    grid: &FrequencyGrid,
    mode: SpectrumMode,
) -> Result<PhotocurrentSpectra> {
    let set = quadrature_spectra(params, op, grid, mode)?;
    Ok(photocurrent_spectra_from_set(params, &set, setting))
}

/// `1 + (kappa / Q^2) (dS_mu^2)` for the chosen Stokes component.
pub fn stokes_noise_from_set(params: &LaserParams, op: &OperatingPoint, set: &SpectrumSet, preset: StokesPreset) -> Vec<f64> {
    let st = stokes_from_quadratures(op, set);
    let s = match preset {
        StokesPreset::S1 => &st.s0,
        StokesPreset::S2 => &st.s2,
        StokesPreset::S3 => &st.s3,
    };
    let f = params.kappa / op.q2;
    s.iter().map(|v| 1.0 + f * v).collect()
}

pub fn stokes_noise_measurement(
    params: &LaserParams,
    op: &OperatingPoint,
    preset: StokesPreset,
    grid: &FrequencyGrid,
    mode: SpectrumMode,
) -> Result<Vec<f64>> {
    let set = quadrature_spectra(params, op, grid, mode)?;
    let out = stokes_noise_from_set(params, op, &set, preset);
    debug_assert!({
        let pc = photocurrent_spectra_from_set(params, &set, &preset.setting());
        out.iter().zip(&pc.nminus).all(|(a, b)| (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1e-300))
    });
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorrelationKind {
    C12,
    C23,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationSpectrum {
    pub kind: CorrelationKind,
    pub omega: Vec<f64>,
    pub values: Vec<f64>,
    /// Grid indices where the normalization vanishes or is not positive;
    /// `values` is NaN there.
    pub undefined: Vec<usize>,
}

impl CorrelationSpectrum {
    fn from_parts(kind: CorrelationKind, omega: Vec<f64>, num: &[f64], den_sq: &[f64]) -> Self {
        let mut undefined = Vec::new();
        let values = num
            .iter()
            .zip(den_sq)
            .enumerate()
            .map(|(i, (&n, &d))| {
                if d > 0.0 && d.is_finite() {
                    n / d.sqrt()
                } else {
                    undefined.push(i);
                    f64::NAN
                }
            })
            .collect();
        CorrelationSpectrum { kind, omega, values, undefined }
    }

    /// Value at the grid point closest to `omega`.
    pub fn at(&self, omega: f64) -> f64 {
        let i = self
            .omega
            .iter()
            .enumerate()
            .min_by(|a, b| (a.1 - omega).abs().total_cmp(&(b.1 - omega).abs()))
            .map(|(i, _)| i)
            .expect("non-empty spectrum");
        self.values[i]
    }
}

fn split_angles(setting: &PolarimeterSetting) -> Result<(f64, f64, f64)> {
    let (_, s2p) = exact_cos_sin(2.0 * setting.phi);
    if s2p.abs() < 1e-12 {
        return Err(Error::DegenerateSplit);
    }
    let (c2, s2) = setting.cos2_sin2_phi();
    Ok((c2, s2, 0.5 * s2p))
}

/// Normalized cross-correlation of the two detector currents.
pub fn c12_from_set(params: &LaserParams, set: &SpectrumSet, setting: &PolarimeterSetting) -> Result<CorrelationSpectrum> {
    let (c2, s2, cs) = split_angles(setting)?;
    let k8 = 8.0 * params.kappa;
    let xt = x_theta_spectrum(set, setting.theta);
    let num: Vec<f64> = (0..set.len()).map(|i| k8 * cs * (set.sxx[i] - xt[i])).collect();
    let den: Vec<f64> = (0..set.len())
        .map(|i| (1.0 + k8 * (c2 * set.sxx[i] + s2 * xt[i])) * (1.0 + k8 * (s2 * set.sxx[i] + c2 * xt[i])))
        .collect();
    Ok(CorrelationSpectrum::from_parts(CorrelationKind::C12, set.omega.clone(), &num, &den))
}

pub fn c12_spectrum(
    params: &LaserParams,
    op: &OperatingPoint,
    setting: &PolarimeterSetting,
    grid: &FrequencyGrid,
    mode: SpectrumMode,
) -> Result<CorrelationSpectrum> {
    split_angles(setting)?;
    let set = quadrature_spectra(params, op, grid, mode)?;
    c12_from_set(params, &set, setting)
}

/// `4 kappa (sxx - sxy) / (1 + 4 kappa (sxx + sxy))`, the balanced-split,
/// no-compensator special case.
pub fn c12_balanced(params: &LaserParams, set: &SpectrumSet) -> Vec<f64> {
    let k4 = 4.0 * params.kappa;
    (0..set.len())
        .map(|i| k4 * (set.sxx[i] - set.sxy[i]) / (1.0 + k4 * (set.sxx[i] + set.sxy[i])))
        .collect()
}

/// C12 from the variance of the sum current and of each detector current:
/// `(V+ - V1 - V2) / (2 sqrt(V1 V2))`.
pub fn c12_from_photocurrents(
    op: &OperatingPoint,
    setting: &PolarimeterSetting,
    spectra: &PhotocurrentSpectra,
) -> Result<CorrelationSpectrum> {
    split_angles(setting)?;
    let m = mean_photocurrents(op, setting)?;
    let (n1, n2) = match (&spectra.n1, &spectra.n2) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::DegenerateSplit),
    };
    let n = spectra.omega.len();
    let v1: Vec<f64> = n1.iter().map(|x| m.i1 * x).collect();
    let v2: Vec<f64> = n2.iter().map(|x| m.i2 * x).collect();
    let num: Vec<f64> = (0..n).map(|i| 0.5 * (m.i_plus * spectra.nplus[i] - v1[i] - v2[i])).collect();
    let den: Vec<f64> = (0..n).map(|i| v1[i] * v2[i]).collect();
    Ok(CorrelationSpectrum::from_parts(CorrelationKind::C12, spectra.omega.clone(), &num, &den))
}

/// Normalized cross-correlation of the S2 and S3 Stokes fluctuations.
pub fn c23_from_set(op: &OperatingPoint, set: &SpectrumSet) -> CorrelationSpectrum {
    let st = stokes_from_quadratures(op, set);
    let den: Vec<f64> = st.s2.iter().zip(&st.s3).map(|(a, b)| a * b).collect();
    CorrelationSpectrum::from_parts(CorrelationKind::C23, set.omega.clone(), &st.c23, &den)
}

pub fn c23_spectrum(
    params: &LaserParams,
    op: &OperatingPoint,
    grid: &FrequencyGrid,
    mode: SpectrumMode,
) -> Result<CorrelationSpectrum> {
    Ok(c23_from_set(op, &quadrature_spectra(params, op, grid, mode)?))
}

/// The three measured spectra needed to reconstruct C23: the difference
/// current at `(phi, theta)` = (45, 0), (45, 90) and (45, 45) degrees.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossMeasurements {
    pub omega: Vec<f64>,
    pub m45_0: Vec<f64>,
    pub m45_90: Vec<f64>,
    pub m45_45: Vec<f64>,
}

pub fn cross_measurements(params: &LaserParams, set: &SpectrumSet) -> CrossMeasurements {
    let run = |theta: f64| {
        let s = PolarimeterSetting::from_degrees(45.0, theta).expect("finite");
        photocurrent_spectra_from_set(params, set, &s).nminus
    };
    CrossMeasurements { omega: set.omega.clone(), m45_0: run(0.0), m45_90: run(90.0), m45_45: run(45.0) }
}

/// C23 from the three measured spectra alone, using
/// `dS2dS3 = (dS2^2 + dS3^2)/2 - (Q^2/kappa)(m45_45 - 1)`.
pub fn c23_reconstructed(params: &LaserParams, op: &OperatingPoint, m: &CrossMeasurements) -> CorrelationSpectrum {
    let f = op.q2 / params.kappa;
    let n = m.omega.len();
    let s2: Vec<f64> = m.m45_0.iter().map(|v| f * (v - 1.0)).collect();
    let s3: Vec<f64> = m.m45_90.iter().map(|v| f * (v - 1.0)).collect();
    let s23: Vec<f64> = (0..n).map(|i| 0.5 * (s2[i] + s3[i]) - f * (m.m45_45[i] - 1.0)).collect();
    let den: Vec<f64> = (0..n).map(|i| s2[i] * s3[i]).collect();
    CorrelationSpectrum::from_parts(CorrelationKind::C23, m.omega.clone(), &s23, &den)
}

/// Classical Stokes vector recovered from the mean first-detector currents of
/// the four polarimeter settings (currents divided by the cavity loss rate).
pub fn synthetic_mean_stokes(op: &OperatingPoint) -> Result<StokesVector> {
    let i = |phi: f64, theta: f64| -> Result<f64> {
        let s = PolarimeterSetting::from_degrees(phi, theta)?;
        Ok(mean_photocurrents(op, &s)?.i1 / (0.5 * (op.kappa_x + op.kappa_y)))
    };
    Ok(classical_stokes_from_measurements(i(0.0, 0.0)?, i(45.0, 0.0)?, i(90.0, 0.0)?, i(45.0, 90.0)?))
}
