//! Physical parameters of the spin-flip laser model and the stationary
//! linearly polarized operating point derived from them.
//!
//! All rates share one unit (GHz, i.e. inverse nanoseconds). Populations and
//! photon numbers scale with the saturation intensity `i_sat`; every
//! shot-noise normalized observable is independent of it.

use std::fmt;

use crate::error::{Error, Result};

/// User-facing parameters of the model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaserParams {
    /// Cavity damping.
    pub kappa: f64,
    /// Linear dichroism (may be zero).
    pub kappa_a: f64,
    /// Linear birefringence.
    pub omega_p: f64,
    /// Linewidth enhancement factor.
    pub alpha: f64,
    /// Upper-level decay rate.
    pub gamma: f64,
    /// Spin relaxation rate, `gamma + 2 * gamma_c`.
    pub gamma_s: f64,
    /// Pump ratio `R / R_th`.
    pub r: f64,
    /// Pump statistics: 1 regular, 0 Poissonian, negative super-Poissonian.
    pub p: f64,
    /// Saturation intensity in photons; sets the absolute photon scale.
    pub i_sat: f64,
}

impl Default for LaserParams {
    /// The reference set used throughout the figures (no dichroism).
    fn default() -> Self {
        LaserParams {
            kappa: 100.0,
            kappa_a: 0.0,
            omega_p: 40.0,
            alpha: -3.0,
            gamma: 1.0,
            gamma_s: 50.0,
            r: 6.0,
            p: 1.0,
            i_sat: 1.0,
        }
    }
}

/// A violated parameter invariant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    NonFinite(&'static str),
    KappaNotPositive,
    TotalLossNotPositive,
    GammaNotPositive,
    GammaSBelowGamma,
    PumpStatisticsAboveOne,
    SaturationNotPositive,
    BelowThreshold,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonFinite(name) => write!(f, "{name} must be finite"),
            Violation::KappaNotPositive => f.write_str("kappa > 0"),
            Violation::TotalLossNotPositive => f.write_str("kappa + kappa_a > 0"),
            Violation::GammaNotPositive => f.write_str("gamma > 0"),
            Violation::GammaSBelowGamma => f.write_str("gamma_s >= gamma"),
            Violation::PumpStatisticsAboveOne => f.write_str("p <= 1"),
            Violation::SaturationNotPositive => f.write_str("i_sat > 0"),
            Violation::BelowThreshold => f.write_str("below threshold (r > 1 required)"),
        }
    }
}

impl LaserParams {
    fn fields(&self) -> [(&'static str, f64); 9] {
        [
            ("kappa", self.kappa),
            ("kappa_a", self.kappa_a),
            ("omega_p", self.omega_p),
            ("alpha", self.alpha),
            ("gamma", self.gamma),
            ("gamma_s", self.gamma_s),
            ("r", self.r),
            ("p", self.p),
            ("i_sat", self.i_sat),
        ]
    }

    /// Lists every violated invariant; an empty list means the set is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out: Vec<Violation> = self
            .fields()
            .iter()
            .filter(|(_, v)| !v.is_finite())
            .map(|(name, _)| Violation::NonFinite(name))
            .collect();
        if !out.is_empty() {
            return out;
        }
        if self.kappa <= 0.0 {
            out.push(Violation::KappaNotPositive);
        }
        if self.kappa + self.kappa_a <= 0.0 {
            out.push(Violation::TotalLossNotPositive);
        }
        if self.gamma <= 0.0 {
            out.push(Violation::GammaNotPositive);
        }
        if self.gamma_s < self.gamma {
            out.push(Violation::GammaSBelowGamma);
        }
        if self.p > 1.0 {
            out.push(Violation::PumpStatisticsAboveOne);
        }
        if self.i_sat <= 0.0 {
            out.push(Violation::SaturationNotPositive);
        }
        out
    }

    /// Like [`validate`](Self::validate), additionally requiring operation
    /// above threshold.
    pub fn validate_lasing(&self) -> Vec<Violation> {
        let mut out = self.validate();
        if self.r.is_finite() && self.r <= 1.0 {
            out.push(Violation::BelowThreshold);
        }
        out
    }

    /// Saturation coefficient `c = gamma / (2 I_s)`.
    pub fn c_sat(&self) -> f64 {
        self.gamma / (2.0 * self.i_sat)
    }

    pub fn kappa_x(&self) -> f64 {
        self.kappa + self.kappa_a
    }

    pub fn kappa_y(&self) -> f64 {
        self.kappa - self.kappa_a
    }

    pub(crate) fn check(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            let msg: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            Err(Error::InvalidParams(msg.join("; ")))
        }
    }
}

/// Which linearly polarized stationary solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    X,
    Y,
}

/// Stationary lasing state and the shorthands the spectra consume.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatingPoint {
    pub branch: Branch,
    pub kappa_x: f64,
    pub kappa_y: f64,
    /// Circular-mode field amplitude; `q * q` photons per circular mode.
    pub q: f64,
    pub q2: f64,
    pub d_big0: f64,
    pub d_small0: f64,
    /// Optical frequency detuning of the branch.
    pub delta: f64,
    /// Threshold pump rate of the branch.
    pub r_th: f64,
    pub c_sat: f64,
    /// `gamma * r`
    pub gamma_big: f64,
    /// `gamma_s + gamma * (r - 1)`
    pub gamma_big_s: f64,
}

impl OperatingPoint {
    /// Loss rate of the lasing mode of this branch.
    pub fn kappa_lasing(&self) -> f64 {
        match self.branch {
            Branch::X => self.kappa_x,
            Branch::Y => self.kappa_y,
        }
    }

    pub(crate) fn require_x(&self) -> Result<()> {
        match self.branch {
            Branch::X => Ok(()),
            b => Err(Error::WrongBranch(b)),
        }
    }
}

/// Stationary solution of the deterministic model on the requested branch.
///
/// `r == 1` is accepted and yields the threshold point `q = 0`.
pub fn derive_operating_point(params: &LaserParams, branch: Branch) -> Result<OperatingPoint> {
    params.check()?;
    if params.r < 1.0 {
        return Err(Error::BelowThreshold { r: params.r });
    }
    let kappa_x = params.kappa_x();
    let kappa_y = params.kappa_y();
    let kappa_l = match branch {
        Branch::X => kappa_x,
        Branch::Y => kappa_y,
    };
    if kappa_l <= 0.0 {
        return Err(Error::InvalidParams(format!(
            "lasing-mode loss must be positive on branch {branch:?}"
        )));
    }
    let c = params.c_sat();
    let q2 = params.i_sat * (params.r - 1.0);
    let delta = match branch {
        Branch::X => -(kappa_x * params.alpha + params.omega_p),
        Branch::Y => -(kappa_y * params.alpha - params.omega_p),
    };
    Ok(OperatingPoint {
        branch,
        kappa_x,
        kappa_y,
        q: q2.sqrt(),
        q2,
        d_big0: kappa_l / c,
        d_small0: 0.0,
        delta,
        r_th: params.gamma * kappa_l / c,
        c_sat: c,
        gamma_big: params.gamma * params.r,
        gamma_big_s: params.gamma_s + params.gamma * (params.r - 1.0),
    })
}

/// Operating point on the x branch, rejecting `r <= 1`.
pub(crate) fn lasing_x(params: &LaserParams, op: &OperatingPoint) -> Result<()> {
    op.require_x()?;
    if params.r <= 1.0 {
        return Err(Error::BelowThreshold { r: params.r });
    }
    Ok(())
}
