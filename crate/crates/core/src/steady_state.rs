//! Linear stability of the x-polarized operating point and the
//! relaxation-oscillation frequencies read off the characteristic
//! polynomials of the two decoupled fluctuation subsystems.

use nalgebra::{Matrix2, Matrix3};
use num_complex::Complex64 as C64;

use crate::error::Result;
use crate::oracle::build_linear_model;
use crate::params::{lasing_x, LaserParams, OperatingPoint};

/// Real parts inside this band count as marginal.
pub const MARGINAL_RE: f64 = 1e-9;

/// Characteristic denominators `D_x(omega)` (GHz^2) and `D_y(omega)` (GHz^3).
pub fn char_poly_values(op: &OperatingPoint, params: &LaserParams, omega: f64) -> (C64, C64) {
    let i = C64::i();
    let w = C64::new(omega, 0.0);
    let pump = 2.0 * op.kappa_x * params.gamma * (params.r - 1.0);
    let dx = -i * w * (op.gamma_big - i * w) + pump;
    let two_ka = 2.0 * params.kappa_a;
    let two_wp = 2.0 * params.omega_p;
    let dy = (op.gamma_big_s - i * w) * (two_wp * two_wp + (two_ka + i * w) * (two_ka + i * w))
        + pump * (2.0 * params.alpha * params.omega_p - two_ka - i * w);
    (dx, dy)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stability {
    Stable,
    Marginal,
    Unstable,
}

impl Stability {
    fn classify(max_re: f64) -> Self {
        if max_re < -MARGINAL_RE {
            Stability::Stable
        } else if max_re <= MARGINAL_RE {
            Stability::Marginal
        } else {
            Stability::Unstable
        }
    }

    fn worst(self, other: Self) -> Self {
        use Stability::*;
        match (self, other) {
            (Unstable, _) | (_, Unstable) => Unstable,
            (Marginal, _) | (_, Marginal) => Marginal,
            _ => Stable,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StabilityReport {
    /// Eigenvalues of the (dX_x, dD) drift matrix.
    pub x: [C64; 2],
    /// Eigenvalues of the (dX_y, dY_y, dd) drift matrix.
    pub y: [C64; 3],
    pub x_verdict: Stability,
    pub y_verdict: Stability,
    pub verdict: Stability,
}

impl StabilityReport {
    /// Smallest damping rate (negated largest real part) of the y-subsystem.
    pub fn y_damping(&self) -> f64 {
        -self.y.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn x_damping(&self) -> f64 {
        -self.x.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max)
    }
}

fn sort_eigs<const N: usize>(mut v: [C64; N]) -> [C64; N] {
    v.sort_by(|a, b| b.re.total_cmp(&a.re).then(a.im.total_cmp(&b.im)));
    v
}

pub fn stability_eigenvalues(op: &OperatingPoint, params: &LaserParams) -> Result<StabilityReport> {
    let model = build_linear_model(params, op)?;
    let ax = Matrix2::from_fn(|i, j| model.a_x[i][j]);
    let ay = Matrix3::from_fn(|i, j| model.a_y[i][j]);
    let ex = ax.complex_eigenvalues();
    let ey = ay.complex_eigenvalues();
    let x = sort_eigs([ex[0], ex[1]]);
    let y = sort_eigs([ey[0], ey[1], ey[2]]);
    let max_re = |s: &[C64]| s.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max);
    let x_verdict = Stability::classify(max_re(&x));
    let y_verdict = Stability::classify(max_re(&y));
    Ok(StabilityReport { x, y, x_verdict, y_verdict, verdict: x_verdict.worst(y_verdict) })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelaxationFrequencies {
    /// Minimum of `|D_x|^2` on `omega > 0`.
    pub omega1: Option<f64>,
    /// Minimum of `|D_y|^2` with the non-oscillating real pole divided out.
    pub omega2: Option<f64>,
    /// Minimum of the full `|D_y|^2`, when it has one.
    pub omega2_full: Option<f64>,
}

/// Locates the relaxation-oscillation frequencies.
///
/// `|D_y|^2` contains the factor `omega^2 + lambda_r^2` of the real eigenvalue
/// `lambda_r`, which can mask the oscillatory minimum entirely (it does at the
/// reference parameters), so `omega2` minimizes `|D_y / (-i omega - lambda_r)|^2`.
/// For the two-dimensional x-subsystem both constructions coincide.
pub fn relaxation_frequencies(op: &OperatingPoint, params: &LaserParams) -> Result<RelaxationFrequencies> {
    lasing_x(params, op)?;
    let lo = 1e-3 * params.gamma;
    let hi = 1e3 * params.kappa;
    let omega1 = interior_minimum(|w| char_poly_values(op, params, w).0.norm_sqr(), lo, hi);
    let omega2_full = interior_minimum(|w| char_poly_values(op, params, w).1.norm_sqr(), lo, hi);

    let stab = stability_eigenvalues(op, params)?;
    let real_pole = stab
        .y
        .iter()
        .min_by(|a, b| a.im.abs().total_cmp(&b.im.abs()))
        .copied()
        .expect("three eigenvalues");
    let has_pair = stab.y.iter().any(|z| z.im.abs() > 1e-9 * (1.0 + z.norm()));
    let omega2 = if has_pair {
        let pole = real_pole.re;
        interior_minimum(
            |w| char_poly_values(op, params, w).1.norm_sqr() / (w * w + pole * pole),
            lo,
            hi,
        )
    } else {
        None
    };
    Ok(RelaxationFrequencies { omega1, omega2, omega2_full })
}

const COARSE_POINTS: usize = 600;
const GOLDEN_REL_WIDTH: f64 = 1e-10;

/// Coarse log scan followed by golden-section refinement. Returns `None` when
/// the smallest sample sits on either end of the scan.
pub fn interior_minimum<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64) -> Option<f64> {
    let (llo, lhi) = (lo.ln(), hi.ln());
    let xs: Vec<f64> = (0..COARSE_POINTS)
        .map(|i| (llo + (lhi - llo) * i as f64 / (COARSE_POINTS - 1) as f64).exp())
        .collect();
    let ys: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    let (imin, _) = ys
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))?;
    if imin == 0 || imin == COARSE_POINTS - 1 {
        return None;
    }
    Some(golden_section(&f, xs[imin - 1], xs[imin + 1]))
}

fn golden_section<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if (b - a) <= GOLDEN_REL_WIDTH * 0.5 * (a + b) {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{derive_operating_point, Branch};

    fn setup(ka: f64) -> (LaserParams, OperatingPoint) {
        let p = LaserParams { kappa_a: ka, ..Default::default() };
        let op = derive_operating_point(&p, Branch::X).unwrap();
        (p, op)
    }

    #[test]
    fn zero_frequency_denominators() {
        let (p, op) = setup(0.0);
        let (dx, dy) = char_poly_values(&op, &p, 0.0);
        assert_eq!(dx, C64::new(1000.0, 0.0));
        assert!((dy - C64::new(112000.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn denominators_conjugate_symmetric() {
        let (p, op) = setup(10.0);
        for w in [0.3, 7.0, 31.0, 250.0] {
            let (a, b) = char_poly_values(&op, &p, w);
            let (c, d) = char_poly_values(&op, &p, -w);
            assert!((a - c.conj()).norm() <= 1e-12 * a.norm());
            assert!((b - d.conj()).norm() <= 1e-12 * b.norm());
        }
    }

    #[test]
    fn denominators_high_frequency_growth() {
        let (p, op) = setup(0.0);
        let w = 1e6;
        let (dx, dy) = char_poly_values(&op, &p, w);
        assert!((dx.norm_sqr() / w.powi(4) - 1.0).abs() < 1e-6);
        assert!((dy.norm_sqr() / w.powi(6) - 1.0).abs() < 1e-6);
    }

    #[test]
    fn reference_point_is_stable() {
        let (p, op) = setup(0.0);
        let s = stability_eigenvalues(&op, &p).unwrap();
        assert_eq!(s.verdict, Stability::Stable);
        let trace: C64 = s.x.iter().sum();
        assert!((trace.re + op.gamma_big).abs() < 1e-12);
        assert!(trace.im.abs() < 1e-12);
    }

    #[test]
    fn dichroism_reduces_y_damping() {
        let (p0, op0) = setup(0.0);
        let (p1, op1) = setup(10.0);
        let d0 = stability_eigenvalues(&op0, &p0).unwrap().y_damping();
        let d1 = stability_eigenvalues(&op1, &p1).unwrap().y_damping();
        assert!(d1 < d0);
    }

    #[test]
    fn omega1_matches_closed_root() {
        for (ka, r) in [(0.0, 6.0), (10.0, 3.0), (50.0, 20.0)] {
            let p = LaserParams { kappa_a: ka, r, ..Default::default() };
            let op = derive_operating_point(&p, Branch::X).unwrap();
            let f = relaxation_frequencies(&op, &p).unwrap();
            let want = (2.0 * op.kappa_x * p.gamma * (r - 1.0) - op.gamma_big.powi(2) / 2.0).sqrt();
            let got = f.omega1.unwrap();
            assert!((got - want).abs() <= 1e-6 * want, "{got} vs {want}");
        }
    }

    #[test]
    fn reference_relaxation_frequencies() {
        let (p, op) = setup(0.0);
        let f = relaxation_frequencies(&op, &p).unwrap();
        assert!((f.omega1.unwrap() - 982f64.sqrt()).abs() < 1e-6);
        // the full cubic is monotone here; the oscillatory factor is not
        assert_eq!(f.omega2_full, None);
        assert!(f.omega2.unwrap() > f.omega1.unwrap());
    }

    #[test]
    fn omega2_equals_pair_formula() {
        let (p, op) = setup(0.0);
        let f = relaxation_frequencies(&op, &p).unwrap();
        let s = stability_eigenvalues(&op, &p).unwrap();
        let pair = s.y.iter().find(|z| z.im > 1.0).unwrap();
        let want = (pair.im * pair.im - pair.re * pair.re).sqrt();
        assert!((f.omega2.unwrap() - want).abs() < 1e-6 * want);
    }

    #[test]
    fn strong_dichroism_removes_omega2() {
        let (p, op) = setup(50.0);
        assert_eq!(relaxation_frequencies(&op, &p).unwrap().omega2, None);
    }

    #[test]
    fn overdamped_function_has_no_interior_minimum() {
        assert_eq!(interior_minimum(|x| x * x, 1.0, 10.0), None);
        let m = interior_minimum(|x| (x - 3.0).powi(2), 0.1, 100.0).unwrap();
        assert!((m - 3.0).abs() < 1e-6);
    }
}
