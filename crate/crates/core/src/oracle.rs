//! Frequency-domain reference computation of the fluctuation spectra.
//!
//! The linearized drift matrices and the Langevin diffusion matrices are
//! assembled directly, and for each frequency the spectral matrix
//! `S = G D G^H` with `G = (-i omega I - A)^-1` is formed (Fourier kernel
//! `e^{+i omega t}`). Nothing here reuses the closed-form coefficients, which
//! is what makes it usable as a check on them.


use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::grid::FrequencyGrid;
use crate::linalg::{det2, det3, inv2, inv3, norm_inf, resolvent_operator, sandwich, Mat2, Mat3};
use crate::params::{lasing_x, LaserParams, OperatingPoint};
use crate::spectra::{Channel, SpectrumSet};

/// Resolvent condition numbers above this are reported as singular.
pub const MAX_CONDITION: f64 = 1e14;

/// Drift and diffusion matrices of the two decoupled subsystems.
///
/// x: state `(dX_x, dD)`, forces `(R_x, F_D)`.
/// y: state `(dX_y, dY_y, dd)`, forces `(R_y, T_y, F_d)`.
///
/// The diffusion matrices are symmetric but not positive semidefinite in
/// general: `det(diff_x) < 0` for regular pumping above `r = 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearModel {
    pub a_x: [[f64; 2]; 2],
    pub diff_x: [[f64; 2]; 2],
    pub a_y: [[f64; 3]; 3],
    pub diff_y: [[f64; 3]; 3],
}

pub fn build_linear_model(params: &LaserParams, op: &OperatingPoint) -> Result<LinearModel> {
    lasing_x(params, op)?;
    let s2 = std::f64::consts::SQRT_2;
    let (c, q, kx) = (op.c_sat, op.q, op.kappa_x);
    let (ka, wp, alpha) = (params.kappa_a, params.omega_p, params.alpha);
    let a_x = [[0.0, s2 * c * q], [-2.0 * s2 * kx * q, -op.gamma_big]];
    let diff_x = [
        [kx, -s2 * kx * q],
        [-s2 * kx * q, kx / c * op.gamma_big * (1.0 - params.p / 2.0)],
    ];
    let a_y = [
        [2.0 * ka, -2.0 * wp, -s2 * alpha * c * q],
        [2.0 * wp, 2.0 * ka, -s2 * c * q],
        [0.0, 2.0 * s2 * kx * q, -op.gamma_big_s],
    ];
    let diff_y = [
        [kx, 0.0, 0.0],
        [0.0, kx, -s2 * kx * q],
        [0.0, -s2 * kx * q, kx / c * op.gamma_big_s],
    ];
    Ok(LinearModel { a_x, diff_x, a_y, diff_y })
}

impl LinearModel {
    /// `det(-i omega I - A_x)`
    pub fn resolvent_det_x(&self, omega: f64) -> C64 {
        det2(&resolvent_operator(&self.a_x, omega))
    }

    /// `det(-i omega I - A_y)`
    pub fn resolvent_det_y(&self, omega: f64) -> C64 {
        det3(&resolvent_operator(&self.a_y, omega))
    }

    /// Spectral matrix of the x-subsystem, or `None` if the resolvent is
    /// numerically singular.
    pub fn spectral_matrix_x(&self, omega: f64) -> Option<Mat2> {
        let m = resolvent_operator(&self.a_x, omega);
        let g = inv2(&m)?;
        (norm_inf(&m) * norm_inf(&g) <= MAX_CONDITION).then(|| sandwich(&g, &self.diff_x))
    }

    pub fn spectral_matrix_y(&self, omega: f64) -> Option<Mat3> {
        let m = resolvent_operator(&self.a_y, omega);
        let g = inv3(&m)?;
        (norm_inf(&m) * norm_inf(&g) <= MAX_CONDITION).then(|| sandwich(&g, &self.diff_y))
    }
}

/// Oracle spectra plus the diagnostics that come with them.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleSpectra {
    pub set: SpectrumSet,
    /// `Im S_y[0][1]`: the antisymmetric part of the cross spectrum, which
    /// the symmetrized `cxy` drops.
    pub cross_antisymmetric: Vec<f64>,
    /// Largest `|Im|` over the diagonal entries, relative to the entry.
    pub max_diag_imag: f64,
    /// Largest `|Im|` of the symmetrized cross element, relative to the
    /// largest spectral-matrix entry at that frequency.
    pub max_sym_cross_imag: f64,
    /// Grid frequencies where the resolvent was too ill-conditioned; the
    /// spectra hold NaN there.
    pub singular: Vec<f64>,
}

pub fn oracle_spectra(model: &LinearModel, grid: &FrequencyGrid) -> OracleSpectra {
    let n = grid.len();
    let mut set = SpectrumSet::with_capacity(grid.values().to_vec());
    let mut anti = Vec::with_capacity(n);
    let mut singular = Vec::new();
    let mut max_diag_imag: f64 = 0.0;
    let mut max_sym_cross_imag: f64 = 0.0;
    for &w in grid.values() {
        match (model.spectral_matrix_x(w), model.spectral_matrix_y(w)) {
            (Some(sx), Some(sy)) => {
                let sym = (sy[0][1] + sy[1][0]) * 0.5;
                let scale = sy.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max);
                for z in [sx[0][0], sy[0][0], sy[1][1]] {
                    max_diag_imag = max_diag_imag.max(z.im.abs() / z.norm().max(f64::MIN_POSITIVE));
                }
                max_sym_cross_imag = max_sym_cross_imag.max(sym.im.abs() / scale.max(f64::MIN_POSITIVE));
                set.sxx.push(sx[0][0].re);
                set.sxy.push(sy[0][0].re);
                set.syy.push(sy[1][1].re);
                set.cxy.push(sym.re);
                anti.push(((sy[0][1] - sy[1][0]) * 0.5).im);
            }
            _ => {
                singular.push(w);
                for ch in Channel::ALL {
                    set.channel_mut(ch).push(f64::NAN);
                }
                anti.push(f64::NAN);
            }
        }
    }
    OracleSpectra { set, cross_antisymmetric: anti, max_diag_imag, max_sym_cross_imag, singular }
}

/// Per-channel residual between two spectrum sets on the same grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelResidual {
    pub channel: Channel,
    pub max_rel: f64,
    pub worst_omega: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport {
    pub rel_tol: f64,
    pub abs_floor: f64,
    pub channels: Vec<ChannelResidual>,
    omega: Vec<f64>,
    rows: Vec<(Channel, Vec<(f64, f64, f64)>)>,
}

/// `|a - b| / max(|a|, |b|, floor)`
pub fn relative_residual(a: f64, b: f64, floor: f64) -> f64 {
    let d = (a - b).abs();
    if d == 0.0 {
        return 0.0;
    }
    d / a.abs().max(b.abs()).max(floor)
}

pub fn compare(closed: &SpectrumSet, oracle: &SpectrumSet, rel_tol: f64, abs_floor: f64) -> Result<ResidualReport> {
    if closed.omega.len() != oracle.omega.len()
        || closed.omega.iter().zip(&oracle.omega).any(|(a, b)| a != b)
    {
        return Err(Error::GridMismatch { left: closed.omega.len(), right: oracle.omega.len() });
    }
    let mut channels = Vec::new();
    let mut rows = Vec::new();
    for ch in Channel::ALL {
        let (a, b) = (closed.channel(ch), oracle.channel(ch));
        let mut per_point = Vec::with_capacity(a.len());
        let mut worst = (0.0f64, closed.omega.first().copied().unwrap_or(0.0));
        for (i, (&x, &y)) in a.iter().zip(b).enumerate() {
            let rel = if x.is_nan() || y.is_nan() { f64::NAN } else { relative_residual(x, y, abs_floor) };
            if rel > worst.0 {
                worst = (rel, closed.omega[i]);
            }
            per_point.push((x, y, rel));
        }
        channels.push(ChannelResidual {
            channel: ch,
            max_rel: worst.0,
            worst_omega: worst.1,
            pass: worst.0 <= rel_tol,
        });
        rows.push((ch, per_point));
    }
    Ok(ResidualReport { rel_tol, abs_floor, channels, omega: closed.omega.clone(), rows })
}

impl ResidualReport {
    pub fn channel(&self, ch: Channel) -> &ChannelResidual {
        self.channels.iter().find(|c| c.channel == ch).expect("all channels compared")
    }

    /// Per-point residuals of one channel as `(omega, closed, oracle, rel)`.
    pub fn points(&self, ch: Channel) -> impl Iterator<Item = (f64, f64, f64, f64)> + '_ {
        let rows = &self.rows.iter().find(|(c, _)| *c == ch).expect("all channels compared").1;
        self.omega.iter().zip(rows).map(|(&w, &(a, b, r))| (w, a, b, r))
    }

    /// CSV with header `omega_ghz,channel,closed,oracle,rel_residual`.
    pub fn to_csv(&self, channels: &[Channel]) -> String {
        use crate::csv::fmt_f64;
        let rows = channels.iter().flat_map(|&ch| {
            self.points(ch)
                .into_iter()
                .map(move |(w, a, b, r)| [fmt_f64(w), ch.name().to_string(), fmt_f64(a), fmt_f64(b), fmt_f64(r)])
        });
        crate::csv::records(&["omega_ghz", "channel", "closed", "oracle", "rel_residual"], rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{derive_operating_point, Branch};
    use crate::steady_state::char_poly_values;

    fn model(p: &LaserParams) -> (OperatingPoint, LinearModel) {
        let op = derive_operating_point(p, Branch::X).unwrap();
        (op, build_linear_model(p, &op).unwrap())
    }

    #[test]
    fn no_dichroism_no_antidamping() {
        let (_, m) = model(&LaserParams::default());
        assert_eq!(m.a_y[0][0], 0.0);
        assert_eq!(m.a_y[1][1], 0.0);
    }

    #[test]
    fn x_diffusion_indefinite_for_regular_pump() {
        let (_, m) = model(&LaserParams::default());
        let det = m.diff_x[0][0] * m.diff_x[1][1] - m.diff_x[0][1] * m.diff_x[1][0];
        assert!((det - 100.0f64.powi(2) * (6.0 - 10.0)).abs() < 1e-8);
        assert!(det < 0.0);
    }

    #[test]
    fn poissonian_pump_raises_population_noise() {
        let (_, m1) = model(&LaserParams::default());
        let p0 = LaserParams { p: 0.0, ..Default::default() };
        let (op0, m0) = model(&p0);
        assert_eq!(m0.diff_x[1][1], op0.kappa_x / op0.c_sat * op0.gamma_big);
        assert!(m0.diff_x[1][1] > m1.diff_x[1][1]);
    }

    #[test]
    fn requires_lasing_x_branch() {
        let p = LaserParams { r: 1.0, ..Default::default() };
        let op = derive_operating_point(&p, Branch::X).unwrap();
        assert_eq!(build_linear_model(&p, &op), Err(Error::BelowThreshold { r: 1.0 }));
        let op_y = derive_operating_point(&LaserParams::default(), Branch::Y).unwrap();
        assert!(matches!(build_linear_model(&LaserParams::default(), &op_y), Err(Error::WrongBranch(_))));
    }

    #[test]
    fn zero_frequency_amplitude_spectrum() {
        let (_, m) = model(&LaserParams::default());
        let grid = FrequencyGrid::from_values(vec![0.0]).unwrap();
        let o = oracle_spectra(&m, &grid);
        assert!((o.set.sxx[0] + 9.0e-4).abs() < 1e-15);
    }

    #[test]
    fn spectral_matrix_hermitian() {
        for ka in [0.0, 10.0, 50.0] {
            let (_, m) = model(&LaserParams { kappa_a: ka, ..Default::default() });
            for w in [0.0, 0.5, 12.0, 80.0, 900.0] {
                let sy = m.spectral_matrix_y(w).unwrap();
                let scale = sy.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max);
                for i in 0..3 {
                    for j in 0..3 {
                        assert!((sy[i][j] - sy[j][i].conj()).norm() <= 1e-12 * scale);
                    }
                }
                let sx = m.spectral_matrix_x(w).unwrap();
                assert!(sx[0][0].im.abs() <= 1e-12 * sx[0][0].norm());
            }
        }
    }

    #[test]
    fn resolvent_determinants_match_denominators() {
        for ka in [0.0, 10.0, 50.0] {
            let p = LaserParams { kappa_a: ka, ..Default::default() };
            let (op, m) = model(&p);
            for &w in FrequencyGrid::standard().values().iter().step_by(37) {
                let (dx, dy) = char_poly_values(&op, &p, w);
                assert!((m.resolvent_det_x(w).norm() - dx.norm()).abs() <= 1e-10 * dx.norm());
                assert!((m.resolvent_det_y(w).norm() - dy.norm()).abs() <= 1e-10 * dy.norm());
            }
        }
    }

    #[test]
    fn high_frequency_decay() {
        let (_, m) = model(&LaserParams::default());
        let o = oracle_spectra(&m, &FrequencyGrid::from_values(vec![1e4]).unwrap());
        for ch in Channel::ALL {
            assert!(o.set.channel(ch)[0].abs() < 1e-5);
        }
    }

    #[test]
    fn diagnostics_are_clean() {
        let (_, m) = model(&LaserParams { kappa_a: 10.0, ..Default::default() });
        let o = oracle_spectra(&m, &FrequencyGrid::standard());
        assert!(o.singular.is_empty());
        assert!(o.max_diag_imag < 1e-12);
        assert!(o.max_sym_cross_imag < 1e-12);
        assert_eq!(o.cross_antisymmetric[0], 0.0);
    }

    #[test]
    fn self_comparison_is_exact() {
        let (_, m) = model(&LaserParams::default());
        let o = oracle_spectra(&m, &FrequencyGrid::standard());
        let r = compare(&o.set, &o.set, 1e-9, 1e-15).unwrap();
        for c in &r.channels {
            assert_eq!(c.max_rel, 0.0);
            assert!(c.pass);
        }
    }

    #[test]
    fn mismatched_grids_are_rejected() {
        let (_, m) = model(&LaserParams::default());
        let a = oracle_spectra(&m, &FrequencyGrid::linear(0.0, 1.0, 5).unwrap());
        let b = oracle_spectra(&m, &FrequencyGrid::linear(0.0, 1.0, 6).unwrap());
        assert_eq!(compare(&a.set, &b.set, 1e-9, 0.0), Err(Error::GridMismatch { left: 5, right: 6 }));
    }

    #[test]
    fn residual_floor() {
        assert_eq!(relative_residual(0.0, 0.0, 1e-15), 0.0);
        assert!((relative_residual(1e-20, 0.0, 1e-15) - 1e-5).abs() < 1e-18);
        assert!((relative_residual(1.0, 1.1, 1e-15) - 0.1 / 1.1).abs() < 1e-15);
    }
}
