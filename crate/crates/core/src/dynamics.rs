//! Deterministic (noise-free) integration of the nonlinear laser equations
//! in the laboratory frame, and ringdown analysis of the resulting
//! relaxation oscillations.

use std::f64::consts::PI;
use std::str::FromStr;

use num_complex::Complex64 as C64;
use rustfft::FftPlanner;

use crate::csv::fmt_f64;
use crate::error::{Error, Result};
use crate::params::{Branch, LaserParams, OperatingPoint};

/// Circular field amplitudes and the total / difference inversions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateVector {
    pub a_plus: C64,
    pub a_minus: C64,
    pub d_big: f64,
    pub d_small: f64,
}

impl StateVector {
    /// The stationary state of the given branch at `t = 0` (real `a_+`).
    pub fn steady(op: &OperatingPoint) -> Self {
        let a = C64::new(op.q, 0.0);
        let a_minus = match op.branch {
            Branch::X => a,
            Branch::Y => -a,
        };
        StateVector { a_plus: a, a_minus, d_big: op.d_big0, d_small: op.d_small0 }
    }

    /// Scales the two circular amplitudes independently.
    pub fn scaled(self, plus: f64, minus: f64) -> Self {
        StateVector { a_plus: self.a_plus * plus, a_minus: self.a_minus * minus, ..self }
    }

    /// `|a_x|^2 / 2` with `a_x = (a_+ + a_-) / sqrt 2`.
    pub fn x_photons_per_mode(&self) -> f64 {
        (self.a_plus + self.a_minus).norm_sqr() / 4.0
    }

    pub fn total_intensity(&self) -> f64 {
        self.a_plus.norm_sqr() + self.a_minus.norm_sqr()
    }

    pub fn intensity_difference(&self) -> f64 {
        self.a_plus.norm_sqr() - self.a_minus.norm_sqr()
    }

    fn max_abs(&self) -> f64 {
        self.a_plus.norm().max(self.a_minus.norm()).max(self.d_big.abs()).max(self.d_small.abs())
    }

    fn is_finite(&self) -> bool {
        self.a_plus.is_finite() && self.a_minus.is_finite() && self.d_big.is_finite() && self.d_small.is_finite()
    }

    fn axpy(&self, h: f64, k: &StateVector) -> StateVector {
        StateVector {
            a_plus: self.a_plus + k.a_plus * h,
            a_minus: self.a_minus + k.a_minus * h,
            d_big: self.d_big + k.d_big * h,
            d_small: self.d_small + k.d_small * h,
        }
    }
}

/// Right-hand side of the semiclassical equations.
#[derive(Debug, Clone, Copy)]
pub struct Model {
    kappa: f64,
    mix: C64,
    gain: C64,
    c: f64,
    pump: f64,
    gamma: f64,
    gamma_s: f64,
}

impl Model {
    /// Pump `R = r * gamma * (kappa + kappa_a) / c`.
    pub fn new(params: &LaserParams) -> Result<Self> {
        params.check()?;
        let c = params.c_sat();
        Ok(Model {
            kappa: params.kappa,
            mix: C64::new(params.kappa_a, params.omega_p),
            gain: C64::new(c, -c * params.alpha),
            c,
            pump: params.r * params.gamma * params.kappa_x() / c,
            gamma: params.gamma,
            gamma_s: params.gamma_s,
        })
    }

    pub fn derivative(&self, s: &StateVector) -> StateVector {
        let p = s.a_plus.norm_sqr();
        let m = s.a_minus.norm_sqr();
        let (sum, diff) = (p + m, p - m);
        StateVector {
            a_plus: -self.kappa * s.a_plus - self.mix * s.a_minus + self.gain * (s.d_big + s.d_small) * s.a_plus,
            a_minus: -self.kappa * s.a_minus - self.mix * s.a_plus + self.gain * (s.d_big - s.d_small) * s.a_minus,
            d_big: self.pump - self.gamma * s.d_big - self.c * sum * s.d_big - self.c * diff * s.d_small,
            d_small: -self.gamma_s * s.d_small - self.c * diff * s.d_big - self.c * sum * s.d_small,
        }
    }

    pub fn rk4_step(&self, s: &StateVector, h: f64) -> StateVector {
        let k1 = self.derivative(s);
        let k2 = self.derivative(&s.axpy(h / 2.0, &k1));
        let k3 = self.derivative(&s.axpy(h / 2.0, &k2));
        let k4 = self.derivative(&s.axpy(h, &k3));
        StateVector {
            a_plus: s.a_plus + (k1.a_plus + 2.0 * k2.a_plus + 2.0 * k3.a_plus + k4.a_plus) * (h / 6.0),
            a_minus: s.a_minus + (k1.a_minus + 2.0 * k2.a_minus + 2.0 * k3.a_minus + k4.a_minus) * (h / 6.0),
            d_big: s.d_big + (k1.d_big + 2.0 * k2.d_big + 2.0 * k3.d_big + k4.d_big) * (h / 6.0),
            d_small: s.d_small + (k1.d_small + 2.0 * k2.d_small + 2.0 * k3.d_small + k4.d_small) * (h / 6.0),
        }
    }
}

/// Largest derivative residual at the stationary state, with the field
/// derivatives taken in the frame rotating at the branch detuning
/// (`da/dt - i delta a`).
pub fn steady_state_residual(params: &LaserParams, op: &OperatingPoint) -> Result<f64> {
    let model = Model::new(params)?;
    let s = StateVector::steady(op);
    let d = model.derivative(&s);
    let rot = C64::new(0.0, op.delta);
    Ok((d.a_plus - rot * s.a_plus)
        .norm()
        .max((d.a_minus - rot * s.a_minus).norm())
        .max(d.d_big.abs())
        .max(d.d_small.abs()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub step: f64,
    pub method: &'static str,
    pub states: Vec<StateVector>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn time(&self, i: usize) -> f64 {
        i as f64 * self.step
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len()).map(|i| self.time(i))
    }

    pub fn last(&self) -> &StateVector {
        self.states.last().expect("trajectory has at least one sample")
    }

    /// CSV with columns `t,re_a_plus,im_a_plus,re_a_minus,im_a_minus,D,d`,
    /// writing every `stride`-th sample.
    pub fn to_csv(&self, stride: usize) -> String {
        let rows = self.states.iter().enumerate().step_by(stride.max(1)).map(|(i, s)| {
            [self.time(i), s.a_plus.re, s.a_plus.im, s.a_minus.re, s.a_minus.im, s.d_big, s.d_small].map(fmt_f64)
        });
        crate::csv::records(&["t", "re_a_plus", "im_a_plus", "re_a_minus", "im_a_minus", "D", "d"], rows)
    }
}

/// Fixed-step classical RK4 over `[0, duration]`, handing every sample
/// (including the initial one) to `visit` instead of storing it. Returns the
/// final state.
pub fn integrate<F: FnMut(usize, &StateVector)>(
    params: &LaserParams,
    initial: StateVector,
    duration: f64,
    step: f64,
    mut visit: F,
) -> Result<StateVector> {
    if !(step > 0.0) || !step.is_finite() || !(duration >= step) || !duration.is_finite() {
        return Err(Error::InvalidParams(format!(
            "need step > 0 and duration >= step (got step {step}, duration {duration})"
        )));
    }
    if !initial.is_finite() {
        return Err(Error::InvalidParams("initial state must be finite".into()));
    }
    let model = Model::new(params)?;
    let limit = 1e12 * params.i_sat.sqrt();
    let n = (duration / step).round() as usize;
    let mut s = initial;
    visit(0, &s);
    for i in 1..=n {
        s = model.rk4_step(&s, step);
        if !s.is_finite() || s.max_abs() > limit {
            return Err(Error::Diverged { t: i as f64 * step });
        }
        visit(i, &s);
    }
    Ok(s)
}

/// Fixed-step classical RK4 over `[0, duration]`, keeping every sample.
pub fn simulate_semiclassical(
    params: &LaserParams,
    initial: StateVector,
    duration: f64,
    step: f64,
) -> Result<Trajectory> {
    let mut states = Vec::new();
    integrate(params, initial, duration, step, |_, s| states.push(*s))?;
    Ok(Trajectory { step, method: "rk4", states })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Observable {
    /// `|a_+|^2 + |a_-|^2`
    TotalIntensity,
    /// `|a_+|^2 - |a_-|^2`
    IntensityDifference,
}

impl FromStr for Observable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "total_intensity" => Ok(Observable::TotalIntensity),
            "intensity_difference" => Ok(Observable::IntensityDifference),
            o => Err(Error::Config(format!("unknown observable '{o}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ringdown {
    /// Angular frequency of the dominant oscillation (GHz).
    pub omega: f64,
    /// Exponential decay rate of the envelope (1/ns); NaN with fewer than
    /// two envelope maxima.
    pub decay_rate: f64,
}

const BURN_IN: f64 = 0.1;
const TAIL: f64 = 0.1;
const ZERO_PAD: usize = 16;

/// Dominant oscillation frequency and envelope decay of a ringdown.
///
/// The first 10% of samples are skipped, the mean of the last 10% is
/// subtracted, and the Hann-windowed, 16x zero-padded DFT magnitude peak is
/// refined by parabolic interpolation. The decay rate is a least-squares fit
/// of `ln |x|` at the local maxima of `|x|`.
pub fn ringdown_analysis(traj: &Trajectory, observable: Observable) -> Result<Ringdown> {
    let series: Vec<f64> = traj
        .states
        .iter()
        .map(|s| match observable {
            Observable::TotalIntensity => s.total_intensity(),
            Observable::IntensityDifference => s.intensity_difference(),
        })
        .collect();
    let start = (series.len() as f64 * BURN_IN) as usize;
    let seg = &series[start..];
    if seg.len() < 4 {
        return Err(Error::NoOscillation);
    }
    let tail = ((seg.len() as f64 * TAIL) as usize).max(1);
    let baseline = seg[seg.len() - tail..].iter().sum::<f64>() / tail as f64;
    let x: Vec<f64> = seg.iter().map(|v| v - baseline).collect();
    let peak_abs = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let scale = seg.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(f64::MIN_POSITIVE);
    if peak_abs <= 1e-14 * scale {
        return Err(Error::NoOscillation);
    }

    let n = x.len() * ZERO_PAD;
    let last = (x.len() - 1) as f64;
    let mut buf: Vec<C64> = x
        .iter()
        .enumerate()
        .map(|(i, &v)| C64::new(v * 0.5 * (1.0 - (2.0 * PI * i as f64 / last).cos()), 0.0))
        .collect();
    buf.resize(n, C64::new(0.0, 0.0));
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let mag: Vec<f64> = buf[..n / 2 + 1].iter().map(|z| z.norm()).collect();
    let (k, _) = mag
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("non-empty spectrum");
    if k == 0 {
        return Err(Error::NoOscillation);
    }
    let shift = if k + 1 < mag.len() {
        let (a, b, c) = (mag[k - 1], mag[k], mag[k + 1]);
        let den = a - 2.0 * b + c;
        if den != 0.0 { 0.5 * (a - c) / den } else { 0.0 }
    } else {
        0.0
    };
    let freq = (k as f64 + shift) / (n as f64 * traj.step);
    let omega = 2.0 * PI * freq;

    let floor = 1e-9 * peak_abs;
    let (mut st, mut sy, mut stt, mut sty, mut cnt) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for j in 1..x.len() - 1 {
        let (l, m, r) = (x[j - 1].abs(), x[j].abs(), x[j + 1].abs());
        if m > l && m >= r && m > floor {
            let t = traj.time(start + j);
            let y = m.ln();
            st += t;
            sy += y;
            stt += t * t;
            sty += t * y;
            cnt += 1.0;
        }
    }
    let decay_rate = if cnt >= 2.0 {
        -(cnt * sty - st * sy) / (cnt * stt - st * st)
    } else {
        f64::NAN
    };
    Ok(Ringdown { omega, decay_rate })
}
