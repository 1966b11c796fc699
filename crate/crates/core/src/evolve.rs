//! Time integration of the Cauchy problem and front diagnostics.
//!
//! Two schemes are provided. The u-form works on the half line `[0, L]` using the
//! symmetry of the data, with `u = 0` beyond `L`. The W-form evolves `W = log u`
//! on a periodic domain of length `L` centred on the origin; it keeps the
//! exponentially small precursor ahead of the front representable.

use crate::error::{domain, Error, Result};
use crate::fit::linear_fit;
use crate::kernel::{window_integrals, Field, Grid1D, PeriodicConvolver, Representation};

/// Floor applied to `log u` where the initial data vanish.
pub const LOG_FLOOR: f64 = -700.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitialKind {
    /// `(1−2x)²(1+2x)²` on `|x| ≤ 1/2`.
    CompactBump,
    /// `exp(−x²/w²)`.
    Gaussian { width: f64 },
}

/// Initial condition `u₀ = A·g(x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialData {
    pub kind: InitialKind,
    pub amplitude: f64,
}

impl InitialData {
    pub fn compact_bump(amplitude: f64) -> Result<Self> {
        if !(amplitude > 0.0) {
            return domain("amplitude must be positive");
        }
        Ok(Self {
            kind: InitialKind::CompactBump,
            amplitude,
        })
    }

    pub fn gaussian(amplitude: f64, width: f64) -> Result<Self> {
        if !(amplitude > 0.0) || !(width > 0.0) {
            return domain("amplitude and width must be positive");
        }
        Ok(Self {
            kind: InitialKind::Gaussian { width },
            amplitude,
        })
    }

    pub fn value(&self, x: f64) -> f64 {
        match self.kind {
            InitialKind::CompactBump => {
                if x.abs() <= 0.5 {
                    let a = (1.0 - 2.0 * x) * (1.0 + 2.0 * x);
                    self.amplitude * a * a
                } else {
                    0.0
                }
            }
            InitialKind::Gaussian { width } => self.amplitude * (-(x / width).powi(2)).exp(),
        }
    }

    /// `log u₀(x)`, exact for the Gaussian and floored where the bump vanishes.
    pub fn log_value(&self, x: f64) -> f64 {
        match self.kind {
            InitialKind::Gaussian { width } => self.amplitude.ln() - (x / width).powi(2),
            InitialKind::CompactBump => {
                let v = self.value(x);
                if v > 0.0 {
                    v.ln().max(LOG_FLOOR)
                } else {
                    LOG_FLOOR
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    UForm,
    WForm,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvolveConfig {
    pub d: f64,
    /// Half-length for the u-form, period for the W-form.
    pub length: f64,
    pub n: usize,
    pub t_end: f64,
    pub dt_max: f64,
    /// Bound on the per-step nodal change.
    pub max_change: f64,
    pub scheme: Scheme,
    /// Spacing of diagnostic samples.
    pub output_interval: f64,
    /// Times at which full fields are recorded.
    pub snapshot_times: Vec<f64>,
}

impl EvolveConfig {
    pub fn new(d: f64, length: f64, n: usize, t_end: f64, scheme: Scheme) -> Self {
        Self {
            d,
            length,
            n,
            t_end,
            dt_max: 0.05,
            max_change: 1e-2,
            scheme,
            output_interval: (t_end / 200.0).max(1e-3),
            snapshot_times: Vec::new(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.d > 0.0) || !self.d.is_finite() {
            return domain("D must be positive");
        }
        if !(self.length > 0.0) || self.n < 8 {
            return domain("domain length must be positive and n ≥ 8");
        }
        if !(self.t_end >= 0.0) || !(self.dt_max > 0.0) || !(self.max_change > 0.0) {
            return domain("t_end, dt_max and max_change must be positive");
        }
        if !(self.output_interval > 0.0) {
            return domain("output interval must be positive");
        }
        match self.scheme {
            Scheme::UForm if self.length < 1.0 => Err(Error::GridTooSmall),
            Scheme::WForm if self.length < 1.0 => Err(Error::PeriodTooShort),
            _ => Ok(()),
        }
    }

    pub fn grid(&self) -> Grid1D {
        match self.scheme {
            Scheme::UForm => Grid1D {
                x_left: 0.0,
                dx: self.length / (self.n - 1) as f64,
                n: self.n,
                periodic: false,
            },
            Scheme::WForm => Grid1D {
                x_left: -0.5 * self.length,
                dx: self.length / self.n as f64,
                n: self.n,
                periodic: true,
            },
        }
    }

    /// Diffusive stability cap on the time step.
    pub fn dt_cap(&self) -> f64 {
        let dx = self.grid().dx;
        // The five-point Laplacian has a larger spectral radius than the three-point one.
        let c = match self.scheme {
            Scheme::UForm => 0.4,
            Scheme::WForm => 0.3,
        };
        self.dt_max.min(c * dx * dx / self.d)
    }
}

/// Sampled diagnostics of a run.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct EvolveDiagnostics {
    pub times: Vec<f64>,
    pub front_position: Vec<f64>,
    pub wavelength: Vec<Option<f64>>,
    pub u_max: Vec<f64>,
    pub mass: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvolveOutput {
    pub diagnostics: EvolveDiagnostics,
    pub final_field: Field,
    pub snapshots: Vec<(f64, Field)>,
    pub steps: usize,
}

trait Stepper {
    fn step(&mut self, state: &[f64], dt: f64, out: &mut [f64]);
    fn change(&self, old: &[f64], new: &[f64]) -> f64;
    /// State-dependent stability bound on the step.
    fn dt_limit(&mut self, _state: &[f64]) -> f64 {
        f64::INFINITY
    }
}

/// Midpoint stepper for the half-line u-form.
struct UStepper {
    d: f64,
    dx: f64,
    mirror: Vec<f64>,
    conv: Vec<f64>,
    k1: Vec<f64>,
    half: Vec<f64>,
}

impl UStepper {
    fn new(d: f64, dx: f64, n: usize) -> Self {
        Self {
            d,
            dx,
            mirror: vec![0.0; 2 * n - 1],
            conv: vec![0.0; 2 * n - 1],
            k1: vec![0.0; n],
            half: vec![0.0; n],
        }
    }

    fn rhs(&mut self, u: &[f64], out: &mut [f64]) {
        let n = u.len();
        for (k, m) in self.mirror.iter_mut().enumerate() {
            *m = u[(k as isize - (n as isize - 1)).unsigned_abs()];
        }
        window_integrals(&self.mirror, self.dx, &mut self.conv);
        let c = self.d / (self.dx * self.dx);
        for j in 0..n {
            let left = if j == 0 { u[1] } else { u[j - 1] };
            let right = if j + 1 < n { u[j + 1] } else { 0.0 };
            out[j] = c * (left - 2.0 * u[j] + right) + u[j] * (1.0 - self.conv[n - 1 + j]);
        }
    }
}

impl Stepper for UStepper {
    fn step(&mut self, u: &[f64], dt: f64, out: &mut [f64]) {
        let mut k1 = std::mem::take(&mut self.k1);
        let mut half = std::mem::take(&mut self.half);
        self.rhs(u, &mut k1);
        for ((h, &a), &k) in half.iter_mut().zip(u).zip(&k1) {
            *h = a + 0.5 * dt * k;
        }
        self.rhs(&half, &mut k1);
        for ((o, &a), &k) in out.iter_mut().zip(u).zip(&k1) {
            *o = (a + dt * k).max(0.0);
        }
        self.k1 = k1;
        self.half = half;
    }

    fn change(&self, old: &[f64], new: &[f64]) -> f64 {
        old.iter().zip(new).fold(0.0, |m, (a, b)| {
            let c = (a - b).abs();
            if c.is_nan() {
                f64::INFINITY
            } else {
                m.max(c)
            }
        })
    }
}

/// Fourth-order periodic first and second differences.
fn periodic_derivatives(w: &[f64], dx: f64, wx: &mut [f64], wxx: &mut [f64]) {
    let n = w.len();
    let idx = |j: isize| w[j.rem_euclid(n as isize) as usize];
    for j in 0..n {
        let j = j as isize;
        let (m2, m1, c, p1, p2) = (idx(j - 2), idx(j - 1), idx(j), idx(j + 1), idx(j + 2));
        wx[j as usize] = (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * dx);
        wxx[j as usize] = (-m2 + 16.0 * m1 - 30.0 * c + 16.0 * p1 - p2) / (12.0 * dx * dx);
    }
}

/// Midpoint stepper for `W = log u` on a periodic grid.
struct WStepper {
    d: f64,
    dx: f64,
    conv: PeriodicConvolver,
    expw: Vec<f64>,
    phi: Vec<f64>,
    wx: Vec<f64>,
    wxx: Vec<f64>,
    k1: Vec<f64>,
    half: Vec<f64>,
}

impl WStepper {
    fn new(d: f64, dx: f64, n: usize) -> Result<Self> {
        Ok(Self {
            d,
            dx,
            conv: PeriodicConvolver::new(n, dx)?,
            expw: vec![0.0; n],
            phi: vec![0.0; n],
            wx: vec![0.0; n],
            wxx: vec![0.0; n],
            k1: vec![0.0; n],
            half: vec![0.0; n],
        })
    }

    fn rhs(&mut self, w: &[f64], out: &mut [f64]) {
        for (e, &v) in self.expw.iter_mut().zip(w) {
            *e = v.exp();
        }
        self.conv.apply(&self.expw, &mut self.phi);
        periodic_derivatives(w, self.dx, &mut self.wx, &mut self.wxx);
        for (j, o) in out.iter_mut().enumerate() {
            *o = self.d * (self.wxx[j] + self.wx[j] * self.wx[j]) + 1.0 - self.phi[j];
        }
    }
}

impl Stepper for WStepper {
    fn step(&mut self, w: &[f64], dt: f64, out: &mut [f64]) {
        let mut k1 = std::mem::take(&mut self.k1);
        let mut half = std::mem::take(&mut self.half);
        self.rhs(w, &mut k1);
        for ((h, &a), &k) in half.iter_mut().zip(w).zip(&k1) {
            *h = a + 0.5 * dt * k;
        }
        self.rhs(&half, &mut k1);
        for ((o, &a), &k) in out.iter_mut().zip(w).zip(&k1) {
            *o = a + dt * k;
        }
        self.k1 = k1;
        self.half = half;
    }

    /// The `D(W_x)²` term advects with speed `2D|W_x|`.
    fn dt_limit(&mut self, w: &[f64]) -> f64 {
        periodic_derivatives(w, self.dx, &mut self.wx, &mut self.wxx);
        let speed = 2.0 * self.d * self.wx.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        0.3 * self.dx / speed.max(1e-300)
    }

    /// Change in `u` where `u < 1` and in `log u` where `u ≥ 1`, so spikes
    /// are controlled in relative terms and the precursor in absolute terms.
    fn change(&self, old: &[f64], new: &[f64]) -> f64 {
        old.iter().zip(new).fold(0.0, |m, (&a, &b)| {
            let dw = (a - b).abs();
            if dw.is_nan() {
                return f64::INFINITY;
            }
            let du = (a.exp() - b.exp()).abs();
            m.max(dw.min(du))
        })
    }
}

fn check_finite(values: &[f64], t: f64) -> Result<()> {
    if values.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::BlowUp { t })
    }
}

/// One explicit midpoint step of the u-form.
pub fn step_u(state: &Field, cfg: &EvolveConfig, dt: f64) -> Result<Field> {
    let g = state.grid;
    if g.periodic || state.representation != Representation::U {
        return domain("step_u needs a non-periodic u field");
    }
    if g.span() < 1.0 {
        return Err(Error::GridTooSmall);
    }
    if !(dt > 0.0) || dt > cfg.dt_max.min(0.4 * g.dx * g.dx / cfg.d) * (1.0 + 1e-12) {
        return domain("dt exceeds the stability cap");
    }
    let mut s = UStepper::new(cfg.d, g.dx, g.n);
    let mut out = vec![0.0; g.n];
    s.step(&state.values, dt, &mut out);
    check_finite(&out, dt)?;
    Ok(Field {
        grid: g,
        values: out,
        representation: Representation::U,
    })
}

/// One explicit midpoint step of the W-form.
pub fn step_w(state: &Field, cfg: &EvolveConfig, dt: f64) -> Result<Field> {
    let g = state.grid;
    if !g.periodic || state.representation != Representation::LogU {
        return domain("step_w needs a periodic log-u field");
    }
    if !(dt > 0.0) || dt > cfg.dt_max.min(0.3 * g.dx * g.dx / cfg.d) * (1.0 + 1e-12) {
        return domain("dt exceeds the stability cap");
    }
    let mut s = WStepper::new(cfg.d, g.dx, g.n)?;
    let mut out = vec![0.0; g.n];
    s.step(&state.values, dt, &mut out);
    check_finite(&out, dt)?;
    Ok(Field {
        grid: g,
        values: out,
        representation: Representation::LogU,
    })
}

/// Largest `x` at which `u` crosses 1/2 downwards, linearly interpolated.
pub fn front_position(x: &[f64], u: &[f64]) -> Option<f64> {
    (0..u.len().saturating_sub(1)).rev().find_map(|j| {
        (u[j] >= 0.5 && u[j + 1] < 0.5).then(|| {
            let f = (u[j] - 0.5) / (u[j] - u[j + 1]);
            x[j] + f * (x[j + 1] - x[j])
        })
    })
}

/// Mean spacing of the local maxima with `u > 1/2` in `[2, front − 2]`,
/// each refined by a parabola; `None` with fewer than four maxima.
pub fn trailing_wavelength(x: &[f64], u: &[f64], front: f64) -> Option<f64> {
    let (lo, hi) = (2.0, front - 2.0);
    if hi <= lo {
        return None;
    }
    let mut peaks = Vec::new();
    for j in 1..u.len().saturating_sub(1) {
        if x[j] < lo || x[j] > hi {
            continue;
        }
        if u[j] > 0.5 && u[j] > u[j - 1] && u[j] >= u[j + 1] {
            let curv = u[j - 1] - 2.0 * u[j] + u[j + 1];
            let off = if curv < 0.0 {
                0.5 * (u[j - 1] - u[j + 1]) / curv
            } else {
                0.0
            };
            peaks.push(x[j] + off * (x[j + 1] - x[j]));
        }
    }
    (peaks.len() >= 4).then(|| (peaks[peaks.len() - 1] - peaks[0]) / (peaks.len() - 1) as f64)
}

/// Front location predicted by the far-field Gaussian solution.
pub fn front_predictor_xf(t: f64, amplitude: f64, width: f64, d: f64) -> Result<f64> {
    let s = width * width + 4.0 * d * t;
    let radicand = t + (amplitude * width).ln() - 0.5 * s.ln();
    if !(radicand >= 0.0) || !(s > 0.0) {
        return Err(Error::PredictorUndefined);
    }
    Ok(s.sqrt() * radicand.sqrt())
}

/// Upper bound `(t+t₀)^{−1/2} e^{t+t₀} e^{−x²/4D(t+t₀)}` with `t₀ = w²/4D`.
pub fn gaussian_bound(x: f64, t: f64, width: f64, d: f64) -> f64 {
    let s = t + width * width / (4.0 * d);
    (s - x * x / (4.0 * d * s) - 0.5 * s.ln()).exp()
}

/// Diagnostic view of a state: nodes `x ≥ 0` and `u` there.
fn half_line_view(scheme: Scheme, grid: &Grid1D, values: &[f64]) -> (Vec<f64>, Vec<f64>) {
    match scheme {
        Scheme::UForm => (grid.nodes(), values.to_vec()),
        Scheme::WForm => {
            let start = (0..grid.n)
                .find(|&i| grid.x(i) >= -1e-12 * grid.dx)
                .unwrap_or(0);
            let x = (start..grid.n).map(|i| grid.x(i)).collect();
            let u = values[start..].iter().map(|w| w.exp()).collect();
            (x, u)
        }
    }
}

fn record(diag: &mut EvolveDiagnostics, t: f64, scheme: Scheme, grid: &Grid1D, values: &[f64]) {
    let (x, u) = half_line_view(scheme, grid, values);
    let front = front_position(&x, &u);
    let u_max = u.iter().cloned().fold(0.0, f64::max);
    let mass = match scheme {
        Scheme::UForm => 2.0 * crate::quad::trapezoid(&u, grid.dx),
        Scheme::WForm => values.iter().map(|w| w.exp()).sum::<f64>() * grid.dx,
    };
    diag.times.push(t);
    diag.front_position.push(front.unwrap_or(0.0));
    diag.wavelength
        .push(front.and_then(|f| trailing_wavelength(&x, &u, f)));
    diag.u_max.push(u_max);
    diag.mass.push(mass);
}

fn output_times(cfg: &EvolveConfig) -> Vec<f64> {
    let mut times: Vec<f64> = Vec::new();
    let m = (cfg.t_end / cfg.output_interval).floor() as usize;
    for k in 0..=m {
        times.push(k as f64 * cfg.output_interval);
    }
    if times
        .last()
        .map_or(true, |&t| cfg.t_end - t > 1e-9 * cfg.t_end.max(1.0))
    {
        times.push(cfg.t_end);
    }
    times
}

/// Integrates from `init` to `cfg.t_end` with adaptive steps.
pub fn run(init: &InitialData, cfg: &EvolveConfig) -> Result<EvolveOutput> {
    cfg.validate()?;
    let grid = cfg.grid();
    let (mut state, repr) = match cfg.scheme {
        Scheme::UForm => (
            grid.nodes()
                .iter()
                .map(|&x| init.value(x))
                .collect::<Vec<_>>(),
            Representation::U,
        ),
        Scheme::WForm => (
            grid.nodes().iter().map(|&x| init.log_value(x)).collect(),
            Representation::LogU,
        ),
    };
    let mut stepper: Box<dyn Stepper> = match cfg.scheme {
        Scheme::UForm => Box::new(UStepper::new(cfg.d, grid.dx, grid.n)),
        Scheme::WForm => Box::new(WStepper::new(cfg.d, grid.dx, grid.n)?),
    };
    let cap = cfg.dt_cap();
    let mut dt = cap;
    let mut diag = EvolveDiagnostics::default();
    let mut snapshots = Vec::new();
    let outputs = output_times(cfg);
    let mut snaps: Vec<f64> = cfg
        .snapshot_times
        .iter()
        .cloned()
        .filter(|&s| s >= 0.0 && s <= cfg.t_end)
        .collect();
    snaps.sort_by(f64::total_cmp);
    let mut stops: Vec<f64> = outputs.iter().chain(snaps.iter()).cloned().collect();
    stops.sort_by(f64::total_cmp);
    stops.dedup_by(|a, b| (*a - *b).abs() < 1e-12);

    let mut t = 0.0;
    let mut steps = 0usize;
    let mut next = vec![0.0; grid.n];
    let mut out_i = 0;
    let mut snap_i = 0;
    let mut emit =
        |t: f64, state: &[f64], diag: &mut EvolveDiagnostics, snapshots: &mut Vec<(f64, Field)>| {
            while out_i < outputs.len() && (outputs[out_i] - t).abs() < 1e-9 {
                record(diag, t, cfg.scheme, &grid, state);
                out_i += 1;
            }
            while snap_i < snaps.len() && (snaps[snap_i] - t).abs() < 1e-9 {
                snapshots.push((
                    t,
                    Field {
                        grid,
                        values: state.to_vec(),
                        representation: repr,
                    },
                ));
                snap_i += 1;
            }
        };
    for &stop in &stops {
        while stop - t > 1e-12 * stop.max(1.0) {
            let h = dt.min(stepper.dt_limit(&state)).min(stop - t);
            stepper.step(&state, h, &mut next);
            let change = stepper.change(&state, &next);
            if !change.is_finite() && h < 1e-14 {
                return Err(Error::BlowUp { t });
            }
            if change > cfg.max_change {
                if h < 1e-12 {
                    return Err(Error::StepUnderflow { t });
                }
                dt = 0.5 * h;
                continue;
            }
            check_finite(&next, t + h)?;
            std::mem::swap(&mut state, &mut next);
            t = if h == stop - t { stop } else { t + h };
            steps += 1;
            if change < 0.4 * cfg.max_change && h == dt {
                dt = (2.0 * dt).min(cap);
            }
        }
        t = stop;
        emit(t, &state, &mut diag, &mut snapshots);
    }
    let final_field = Field {
        grid,
        values: state,
        representation: repr,
    };
    Ok(EvolveOutput {
        diagnostics: diag,
        final_field,
        snapshots,
        steps,
    })
}

/// Fitted slope of the front position over the times in `[t_from, t_to]`.
pub fn front_speed(diag: &EvolveDiagnostics, t_from: f64, t_to: f64) -> Option<f64> {
    let (t, x): (Vec<f64>, Vec<f64>) = diag
        .times
        .iter()
        .zip(&diag.front_position)
        .filter(|(t, _)| **t >= t_from && **t <= t_to)
        .map(|(t, x)| (*t, *x))
        .unzip();
    linear_fit(&t, &x).map(|f| f.slope)
}

/// The equilibrium a perturbation is applied to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Equilibrium {
    Zero,
    One,
}

/// Growth rate of `u_e + ε cos(kx)` measured from direct simulation.
///
/// Runs the periodic u-equation on `2πm/k` (the smallest `m` making the period at
/// least 1) and fits the log of the Fourier-`k` amplitude against time while it
/// stays below `1e-3`.
pub fn measure_growth_rate(k: f64, d: f64, about: Equilibrium) -> Result<f64> {
    if !(k > 0.0) || !(d > 0.0) {
        return domain("k and D must be positive");
    }
    let m = (k / (2.0 * std::f64::consts::PI)).ceil().max(1.0) as usize;
    let period = 2.0 * std::f64::consts::PI * m as f64 / k;
    let n = 64 * m;
    let dx = period / n as f64;
    let ue = match about {
        Equilibrium::Zero => 0.0,
        Equilibrium::One => 1.0,
    };
    let eps = 1e-6;
    let x: Vec<f64> = (0..n).map(|j| j as f64 * dx).collect();
    let cosk: Vec<f64> = x.iter().map(|&v| (k * v).cos()).collect();
    let mut u: Vec<f64> = cosk.iter().map(|c| ue + eps * c).collect();
    let mut conv = PeriodicConvolver::new(n, dx)?;
    let dt = 0.02f64.min(0.3 * dx * dx / d);
    let (mut phi, mut wx, mut wxx) = (vec![0.0; n], vec![0.0; n], vec![0.0; n]);
    let mut rhs = |u: &[f64], out: &mut [f64]| {
        conv.apply(u, &mut phi);
        periodic_derivatives(u, dx, &mut wx, &mut wxx);
        for j in 0..n {
            out[j] = d * wxx[j] + u[j] * (1.0 - phi[j]);
        }
    };
    let amplitude =
        |u: &[f64]| 2.0 / n as f64 * u.iter().zip(&cosk).map(|(a, c)| (a - ue) * c).sum::<f64>();
    let (mut k1, mut half) = (vec![0.0; n], vec![0.0; n]);
    let (mut ts, mut logs) = (vec![0.0], vec![eps.ln()]);
    let t_max = 200.0;
    let mut t = 0.0;
    while t < t_max {
        rhs(&u, &mut k1);
        for j in 0..n {
            half[j] = u[j] + 0.5 * dt * k1[j];
        }
        rhs(&half, &mut k1);
        for j in 0..n {
            u[j] += dt * k1[j];
        }
        t += dt;
        let a = amplitude(&u);
        if !a.is_finite() {
            return Err(Error::BlowUp { t });
        }
        if a >= 1e-3 || a <= 1e-12 {
            break;
        }
        ts.push(t);
        logs.push(a.ln());
    }
    if ts.len() < 20 {
        return Err(Error::NonlinearRegime);
    }
    linear_fit(&ts, &logs)
        .map(|f| f.slope)
        .ok_or(Error::NonlinearRegime)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bump_profile() {
        let b = InitialData::compact_bump(1.0).unwrap();
        assert_eq!(b.value(0.0), 1.0);
        assert_eq!(b.value(0.5), 0.0);
        assert_eq!(b.value(0.7), 0.0);
    }

    #[test]
    fn front_interpolates() {
        let x = [0.0, 1.0, 2.0, 3.0];
        let u = [1.0, 0.8, 0.2, 0.0];
        assert!((front_position(&x, &u).unwrap() - 1.5).abs() < 1e-15);
    }

    #[test]
    fn predictor_rejects_negative_radicand() {
        assert_eq!(
            front_predictor_xf(0.0, 0.01, 0.1, 1e-3),
            Err(Error::PredictorUndefined)
        );
    }

    #[test]
    fn wavelength_needs_four_peaks() {
        let x: Vec<f64> = (0..2000).map(|i| i as f64 * 0.005).collect();
        let u: Vec<f64> = x
            .iter()
            .map(|&v| 1.0 + 0.5 * (2.0 * std::f64::consts::PI * v / 0.7).cos())
            .collect();
        let l = trailing_wavelength(&x, &u, 9.0).unwrap();
        assert!((l - 0.7).abs() < 1e-4);
        assert!(trailing_wavelength(&x, &u, 4.5).is_none());
    }
}
