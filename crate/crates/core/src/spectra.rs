//! Closed-form quadrature spectral densities of the x-polarized laser and
//! the Stokes-parameter spectra derived from them.
//!
//! All spectra are normally ordered and in GHz^-1; they may be negative.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::grid::FrequencyGrid;
use crate::oracle::{build_linear_model, oracle_spectra};
use crate::params::{lasing_x, LaserParams, OperatingPoint};
use crate::steady_state::char_poly_values;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Channel {
    Sxx,
    Sxy,
    Syy,
    Cxy,
}

impl Channel {
    pub const ALL: [Channel; 4] = [Channel::Sxx, Channel::Sxy, Channel::Syy, Channel::Cxy];

    pub fn name(self) -> &'static str {
        match self {
            Channel::Sxx => "sxx",
            Channel::Sxy => "sxy",
            Channel::Syy => "syy",
            Channel::Cxy => "cxy",
        }
    }
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Quadrature spectra on a frequency grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumSet {
    pub omega: Vec<f64>,
    /// Amplitude quadrature of the lasing mode.
    pub sxx: Vec<f64>,
    /// Amplitude quadrature of the orthogonal mode.
    pub sxy: Vec<f64>,
    /// Phase quadrature of the orthogonal mode.
    pub syy: Vec<f64>,
    /// Symmetrized cross spectrum of the orthogonal-mode quadratures.
    pub cxy: Vec<f64>,
}

impl SpectrumSet {
    pub fn with_capacity(omega: Vec<f64>) -> Self {
        let n = omega.len();
        SpectrumSet {
            omega,
            sxx: Vec::with_capacity(n),
            sxy: Vec::with_capacity(n),
            syy: Vec::with_capacity(n),
            cxy: Vec::with_capacity(n),
        }
    }

    pub fn len(&self) -> usize {
        self.omega.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omega.is_empty()
    }

    pub fn channel(&self, ch: Channel) -> &[f64] {
        match ch {
            Channel::Sxx => &self.sxx,
            Channel::Sxy => &self.sxy,
            Channel::Syy => &self.syy,
            Channel::Cxy => &self.cxy,
        }
    }

    pub fn channel_mut(&mut self, ch: Channel) -> &mut Vec<f64> {
        match ch {
            Channel::Sxx => &mut self.sxx,
            Channel::Sxy => &mut self.sxy,
            Channel::Syy => &mut self.syy,
            Channel::Cxy => &mut self.cxy,
        }
    }

    pub fn to_csv(&self) -> String {
        crate::csv::table(
            &["omega_ghz", "sxx", "sxy", "syy", "cxy"],
            &[&self.omega, &self.sxx, &self.sxy, &self.syy, &self.cxy],
        )
    }
}

/// How the orthogonal-mode phase spectrum `syy` is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SpectrumMode {
    /// Every channel from the closed-form coefficients exactly as written,
    /// including the squared bracket in `B_Y`.
    AsPrinted,
    /// `syy` from the matrix-resolvent computation; the other channels from
    /// the closed forms.
    #[default]
    Canonical,
}

impl SpectrumMode {
    pub fn name(self) -> &'static str {
        match self {
            SpectrumMode::AsPrinted => "as_printed",
            SpectrumMode::Canonical => "canonical",
        }
    }
}

impl FromStr for SpectrumMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "as_printed" => Ok(SpectrumMode::AsPrinted),
            "canonical" => Ok(SpectrumMode::Canonical),
            other => Err(Error::Config(format!("unknown mode '{other}' (expected as_printed or canonical)"))),
        }
    }
}

impl fmt::Display for SpectrumMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Frequency-independent coefficients of the closed-form spectra.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedForm {
    params: LaserParams,
    op: OperatingPoint,
    pub a_x: f64,
    pub b_x: f64,
    pub a_y: f64,
    pub b_y: f64,
}

impl ClosedForm {
    pub fn new(params: &LaserParams, op: &OperatingPoint) -> Result<Self> {
        lasing_x(params, op)?;
        let LaserParams { kappa: k, kappa_a: ka, omega_p: wp, alpha: a, gamma: g, gamma_s: gs, r, .. } = *params;
        let gr = g * (r - 1.0);
        let a_x = (2.0 * ka - gr).powi(2) + (2.0 * wp + a * gr).powi(2) - 4.0 * k * gr
            + gs * (gs + gr * (a * a + 2.0));
        let b_x = (ka * gs - k * gr).powi(2)
            + (wp * gs + a * k * gr).powi(2)
            + gs * gr * (a * ka + wp).powi(2);
        let a_y = 4.0 * (ka * ka + wp * wp) + gs * gs + gr * (4.0 * a * wp + gs);
        let b_y = gs * gs * (ka * ka + wp * wp)
            + gs * gr * (wp * wp * (a * a + 2.0) + ka * ka).powi(2)
            + wp * wp * gr * gr * (a * a + 1.0);
        Ok(ClosedForm { params: *params, op: *op, a_x, b_x, a_y, b_y })
    }

    fn dens(&self, omega: f64) -> (f64, f64) {
        let (dx, dy) = char_poly_values(&self.op, &self.params, omega);
        (dx.norm_sqr(), dy.norm_sqr())
    }

    pub fn sxx(&self, omega: f64) -> f64 {
        let p = &self.params;
        let w2 = omega * omega;
        let num = w2 + p.gamma * p.gamma * p.r * (1.0 - (p.r - 1.0) * p.p / 2.0);
        self.op.kappa_x * num / self.dens(omega).0
    }

    pub fn sxy(&self, omega: f64) -> f64 {
        let w2 = omega * omega;
        self.op.kappa_x * (w2 * w2 + self.a_x * w2 + 4.0 * self.b_x) / (2.0 * self.dens(omega).1)
    }

    pub fn syy(&self, omega: f64) -> f64 {
        let w2 = omega * omega;
        self.op.kappa_x * (w2 * w2 + self.a_y * w2 + 4.0 * self.b_y) / (2.0 * self.dens(omega).1)
    }

    pub fn cxy(&self, omega: f64) -> f64 {
        let LaserParams { kappa: k, kappa_a: ka, omega_p: wp, alpha: a, gamma: g, gamma_s: gs, r, .. } = self.params;
        let kx = self.op.kappa_x;
        let gr = g * (r - 1.0);
        let brace = a * kx * omega * omega
            + 2.0 * k * wp * gr * (a * a + 1.0)
            + 2.0 * gs * (k * (a * ka + wp) + a * ka * (ka - a * wp));
        -kx * gr * brace / (2.0 * self.dens(omega).1)
    }
}

/// Quadrature spectra on `grid` in the requested mode.
pub fn quadrature_spectra(
    params: &LaserParams,
    op: &OperatingPoint,
    grid: &FrequencyGrid,
    mode: SpectrumMode,
) -> Result<SpectrumSet> {
    let cf = ClosedForm::new(params, op)?;
    let mut set = SpectrumSet::with_capacity(grid.values().to_vec());
    for &w in grid.values() {
        set.sxx.push(cf.sxx(w));
        set.sxy.push(cf.sxy(w));
        set.cxy.push(cf.cxy(w));
    }
    set.syy = match mode {
        SpectrumMode::AsPrinted => grid.values().iter().map(|&w| cf.syy(w)).collect(),
        SpectrumMode::Canonical => {
            let model = build_linear_model(params, op)?;
            oracle_spectra(&model, grid).set.syy
        }
    };
    Ok(set)
}

/// Stokes-parameter spectra in photons^2 GHz^-1. `s0` and `s1` coincide.
#[derive(Debug, Clone, PartialEq)]
pub struct StokesSpectra {
    pub omega: Vec<f64>,
    pub s0: Vec<f64>,
    pub s2: Vec<f64>,
    pub s3: Vec<f64>,
    pub c23: Vec<f64>,
}

impl StokesSpectra {
    pub fn s1(&self) -> &[f64] {
        &self.s0
    }

    pub fn to_csv(&self) -> String {
        crate::csv::table(
            &["omega_ghz", "s0", "s2", "s3", "c23"],
            &[&self.omega, &self.s0, &self.s2, &self.s3, &self.c23],
        )
    }
}

/// Scales a quadrature set by `8 Q^2`.
pub fn stokes_from_quadratures(op: &OperatingPoint, set: &SpectrumSet) -> StokesSpectra {
    let f = 8.0 * op.q2;
    let scale = |v: &[f64]| v.iter().map(|x| f * x).collect::<Vec<_>>();
    StokesSpectra {
        omega: set.omega.clone(),
        s0: scale(&set.sxx),
        s2: scale(&set.sxy),
        s3: scale(&set.syy),
        c23: scale(&set.cxy),
    }
}

pub fn stokes_spectra(
    params: &LaserParams,
    op: &OperatingPoint,
    grid: &FrequencyGrid,
    mode: SpectrumMode,
) -> Result<StokesSpectra> {
    Ok(stokes_from_quadratures(op, &quadrature_spectra(params, op, grid, mode)?))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StokesVector {
    pub s0: f64,
    pub s1: f64,
    pub s2: f64,
    pub s3: f64,
}

impl StokesVector {
    pub fn as_array(&self) -> [f64; 4] {
        [self.s0, self.s1, self.s2, self.s3]
    }
}

/// Mean Stokes vector of the x-polarized state.
pub fn mean_stokes(op: &OperatingPoint) -> Result<StokesVector> {
    op.require_x()?;
    let n = 2.0 * op.q2;
    Ok(StokesVector { s0: n, s1: n, s2: 0.0, s3: 0.0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{derive_operating_point, Branch};

    fn cf(p: LaserParams) -> (OperatingPoint, ClosedForm) {
        let op = derive_operating_point(&p, Branch::X).unwrap();
        (op, ClosedForm::new(&p, &op).unwrap())
    }

    #[test]
    fn zero_frequency_squeezing() {
        let (_, c) = cf(LaserParams::default());
        assert!((c.sxx(0.0) + 9.0e-4).abs() < 1e-16);
        assert!((1.0 + 800.0 * c.sxx(0.0) - 0.28).abs() < 1e-12);
    }

    #[test]
    fn high_frequency_asymptotics() {
        for ka in [0.0, 10.0, 50.0] {
            let (op, c) = cf(LaserParams { kappa_a: ka, ..Default::default() });
            let w = 1e6;
            assert!((c.sxx(w) * w * w / op.kappa_x - 1.0).abs() < 1e-6);
            assert!((c.sxy(w) * w * w * 2.0 / op.kappa_x - 1.0).abs() < 1e-6);
            assert!((c.syy(w) * w * w * 2.0 / op.kappa_x - 1.0).abs() < 1e-3);
            assert!(c.cxy(w).abs() * w * w < 1e-3);
        }
    }

    #[test]
    fn pump_statistics_difference_at_zero() {
        let base = LaserParams::default();
        let (op, c1) = cf(base);
        let (_, c0) = cf(LaserParams { p: 0.0, ..base });
        let want = op.kappa_x * base.gamma.powi(2) * base.r * (base.r - 1.0) / 2.0 / 1000f64.powi(2);
        let got = c0.sxx(0.0) - c1.sxx(0.0);
        assert!(got > 0.0);
        assert!((got - want).abs() < 1e-15);
    }

    #[test]
    fn spectra_are_even() {
        let (_, c) = cf(LaserParams { kappa_a: 10.0, ..Default::default() });
        for w in [0.1, 3.0, 31.0, 400.0] {
            assert_eq!(c.sxx(w), c.sxx(-w));
            assert_eq!(c.sxy(w), c.sxy(-w));
            assert_eq!(c.syy(w), c.syy(-w));
            assert_eq!(c.cxy(w), c.cxy(-w));
        }
    }

    #[test]
    fn zero_frequency_formula_over_sweep() {
        for r in [2.0, 6.0, 20.0] {
            for p in [0.0, 0.5, 1.0] {
                for ka in [0.0, 10.0, 50.0] {
                    let params = LaserParams { r, p, kappa_a: ka, ..Default::default() };
                    let (op, c) = cf(params);
                    let got = 1.0 + 8.0 * params.kappa * c.sxx(0.0);
                    let want = 1.0
                        + 2.0 * (params.kappa / op.kappa_x) * r * (1.0 - (r - 1.0) * p / 2.0) / (r - 1.0).powi(2);
                    assert!((got - want).abs() <= 1e-12 * want.abs());
                }
            }
        }
    }

    #[test]
    fn large_pump_limit() {
        for ka in [0.0, 10.0, 50.0] {
            for p in [0.0, 0.5, 1.0] {
                let params = LaserParams { r: 1e6, p, kappa_a: ka, ..Default::default() };
                let (op, c) = cf(params);
                let got = 1.0 + 8.0 * params.kappa * c.sxx(0.0);
                assert!((got - (1.0 - p * params.kappa / op.kappa_x)).abs() < 1e-4);
            }
        }
    }

    #[test]
    fn affine_decreasing_in_p() {
        let v: Vec<f64> = [0.0, 0.5, 1.0]
            .iter()
            .map(|&p| {
                let (_, c) = cf(LaserParams { p, ..Default::default() });
                1.0 + 800.0 * c.sxx(0.0)
            })
            .collect();
        assert!(v[0] > v[1] && v[1] > v[2]);
        assert!(((v[0] - v[1]) - (v[1] - v[2])).abs() < 1e-12);
    }

    #[test]
    fn stokes_factor_and_saturation_scale() {
        let grid = FrequencyGrid::log(0.1, 100.0, 50).unwrap();
        let p = LaserParams::default();
        let op = derive_operating_point(&p, Branch::X).unwrap();
        let q = quadrature_spectra(&p, &op, &grid, SpectrumMode::Canonical).unwrap();
        let s = stokes_spectra(&p, &op, &grid, SpectrumMode::Canonical).unwrap();
        for i in 0..grid.len() {
            assert!((s.s2[i] / q.sxy[i] - 40.0).abs() < 1e-12);
        }
        let p2 = LaserParams { i_sat: 2.0, ..p };
        let op2 = derive_operating_point(&p2, Branch::X).unwrap();
        let q2 = quadrature_spectra(&p2, &op2, &grid, SpectrumMode::Canonical).unwrap();
        let s2 = stokes_spectra(&p2, &op2, &grid, SpectrumMode::Canonical).unwrap();
        for i in 0..grid.len() {
            assert!((q2.sxx[i] - q.sxx[i]).abs() <= 1e-12 * q.sxx[i].abs());
            assert!((q2.syy[i] - q.syy[i]).abs() <= 1e-9 * q.syy[i].abs());
            assert!((s2.s0[i] - 2.0 * s.s0[i]).abs() <= 1e-12 * s.s0[i].abs());
        }
    }

    #[test]
    fn mean_stokes_reference() {
        let op = derive_operating_point(&LaserParams::default(), Branch::X).unwrap();
        assert_eq!(mean_stokes(&op).unwrap().as_array(), [10.0, 10.0, 0.0, 0.0]);
        let op1 = derive_operating_point(&LaserParams { r: 1.0, ..Default::default() }, Branch::X).unwrap();
        assert_eq!(mean_stokes(&op1).unwrap().as_array(), [0.0; 4]);
    }

    #[test]
    fn below_threshold_rejected() {
        let p = LaserParams { r: 1.0, ..Default::default() };
        let op = derive_operating_point(&p, Branch::X).unwrap();
        let grid = FrequencyGrid::standard();
        assert_eq!(
            quadrature_spectra(&p, &op, &grid, SpectrumMode::AsPrinted),
            Err(Error::BelowThreshold { r: 1.0 })
        );
    }

    #[test]
    fn mode_parsing() {
        assert_eq!("as_printed".parse::<SpectrumMode>().unwrap(), SpectrumMode::AsPrinted);
        assert_eq!("canonical".parse::<SpectrumMode>().unwrap(), SpectrumMode::Canonical);
        assert!("fixed".parse::<SpectrumMode>().is_err());
    }
}
