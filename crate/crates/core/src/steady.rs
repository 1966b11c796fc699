//! Even periodic steady states `D F'' + F (1 − φ*F) = 0` and their continuation.
//!
//! A state is stored on the half period `[0, λ/2]`; the full profile is its even
//! periodic extension, so translation invariance is removed without a phase
//! condition. The window integral of the piecewise-linear interpolant is a fixed
//! linear map `W`, assembled once per `(λ, n)`.

use std::f64::consts::PI;

use faer::Mat;
use rayon::prelude::*;

use crate::dispersion::{kernel_hat, omega_membership, tongue_boundaries, w1};
use crate::error::{domain, Error, Result};
use crate::fit::linear_fit;
use crate::linalg::{damped_newton, max_norm, solve_dense, NewtonOptions, NewtonProblem};
use crate::quad::trapezoid;
use crate::roots::bisect;

/// A converged (or trial) even periodic state.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicState {
    pub lambda: f64,
    pub d: f64,
    /// Values on `n` uniform nodes of `[0, λ/2]`.
    pub half_profile: Vec<f64>,
    /// Peak-to-trough amplitude.
    pub alpha: f64,
    pub u_max: f64,
    /// `∫₀^λ F`.
    pub mass: f64,
    pub newton_iters: usize,
    pub residual: f64,
}

impl PeriodicState {
    pub fn from_profile(lambda: f64, d: f64, half_profile: Vec<f64>) -> Self {
        let h = 0.5 * lambda / (half_profile.len() - 1) as f64;
        let max = half_profile.iter().cloned().fold(f64::MIN, f64::max);
        let min = half_profile.iter().cloned().fold(f64::MAX, f64::min);
        let mass = 2.0 * trapezoid(&half_profile, h);
        Self {
            lambda,
            d,
            half_profile,
            alpha: max - min,
            u_max: max,
            mass,
            newton_iters: 0,
            residual: f64::NAN,
        }
    }

    pub fn n(&self) -> usize {
        self.half_profile.len()
    }

    pub fn h(&self) -> f64 {
        0.5 * self.lambda / (self.n() - 1) as f64
    }

    pub fn nodes(&self) -> Vec<f64> {
        let h = self.h();
        (0..self.n()).map(|j| j as f64 * h).collect()
    }

    pub fn min(&self) -> f64 {
        self.half_profile.iter().cloned().fold(f64::MAX, f64::min)
    }

    /// One full period on `[−λ/2, λ/2]`.
    pub fn full_period(&self) -> (Vec<f64>, Vec<f64>) {
        let h = self.h();
        let n = self.n();
        let mut x = Vec::with_capacity(2 * n - 1);
        let mut f = Vec::with_capacity(2 * n - 1);
        for k in 0..2 * n - 1 {
            let j = (k as isize - (n as isize - 1)).unsigned_abs();
            x.push((k as f64 - (n - 1) as f64) * h);
            f.push(self.half_profile[j]);
        }
        (x, f)
    }

    /// Piecewise-linear evaluation of the even periodic extension.
    pub fn eval(&self, x: f64) -> f64 {
        let n = self.n();
        let s = (x.rem_euclid(self.lambda) / self.h()).min(2.0 * (n - 1) as f64);
        let s = if s > (n - 1) as f64 {
            2.0 * (n - 1) as f64 - s
        } else {
            s
        };
        let j = (s.floor() as usize).min(n - 2);
        let t = s - j as f64;
        self.half_profile[j] * (1.0 - t) + self.half_profile[j + 1] * t
    }
}

/// Continuation record.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchPoint {
    pub lambda: f64,
    pub d: f64,
    pub alpha: f64,
    pub u_max: f64,
    pub converged: bool,
    pub newton_iters: usize,
}

/// Starting guess for [`solve_at`].
#[derive(Debug, Clone, PartialEq)]
pub enum Seed {
    State(PeriodicState),
    WeaklyNonlinear,
}

/// Default number of half-period nodes: enough to resolve decay at rate `1/√D`.
pub fn default_nodes(lambda: f64, d: f64) -> usize {
    ((2.0 * lambda / d.sqrt()).ceil() as usize).clamp(256, 4000)
}

/// Window-integral matrix on the half-period grid: `(W F)_j = ∫_{x_j−½}^{x_j+½} F`.
pub fn window_matrix(lambda: f64, n: usize) -> Mat<f64> {
    let h = 0.5 * lambda / (n - 1) as f64;
    let period = 2 * (n - 1) as i64;
    let fold = |m: i64| -> usize {
        let r = m.rem_euclid(period);
        (if r <= (n - 1) as i64 { r } else { period - r }) as usize
    };
    let half = 0.5 / h;
    let mut w = Mat::<f64>::zeros(n, n);
    for j in 0..n {
        let sa = j as f64 - half;
        let sb = j as f64 + half;
        let m0 = sa.floor() as i64;
        let m1 = sb.ceil() as i64;
        for m in m0..m1 {
            let t0 = (sa - m as f64).max(0.0);
            let t1 = (sb - m as f64).min(1.0);
            if t1 <= t0 {
                continue;
            }
            let q = 0.5 * (t1 * t1 - t0 * t0);
            w[(j, fold(m))] += h * ((t1 - t0) - q);
            w[(j, fold(m + 1))] += h * q;
        }
    }
    w
}

struct SteadyProblem {
    d: f64,
    h: f64,
    w: Mat<f64>,
}

impl SteadyProblem {
    fn new(lambda: f64, d: f64, n: usize) -> Self {
        Self {
            d,
            h: 0.5 * lambda / (n - 1) as f64,
            w: window_matrix(lambda, n),
        }
    }

    /// `1 − φ*F` evaluated as `φ*(1 − F)`, which vanishes exactly at `F ≡ 1`
    /// whatever the round-off in the window weights.
    fn deficit(&self, f: &[f64]) -> Vec<f64> {
        let n = f.len();
        (0..n)
            .map(|i| (0..n).map(|j| self.w[(i, j)] * (1.0 - f[j])).sum())
            .collect()
    }
}

impl NewtonProblem for SteadyProblem {
    fn residual(&self, f: &[f64]) -> Vec<f64> {
        let n = f.len();
        let def = self.deficit(f);
        let c = self.d / (self.h * self.h);
        (0..n)
            .map(|j| {
                let left = if j == 0 { f[1] } else { f[j - 1] };
                let right = if j + 1 == n { f[n - 2] } else { f[j + 1] };
                c * (left - 2.0 * f[j] + right) + f[j] * def[j]
            })
            .collect()
    }

    fn newton_step(&self, f: &[f64], r: &[f64]) -> Option<Vec<f64>> {
        let n = f.len();
        let def = self.deficit(f);
        let c = self.d / (self.h * self.h);
        let mut j = Mat::<f64>::from_fn(n, n, |i, k| -f[i] * self.w[(i, k)]);
        for i in 0..n {
            j[(i, i)] += -2.0 * c + def[i];
            if i == 0 {
                j[(0, 1)] += 2.0 * c;
            } else if i + 1 == n {
                j[(i, i - 1)] += 2.0 * c;
            } else {
                j[(i, i - 1)] += c;
                j[(i, i + 1)] += c;
            }
        }
        let rhs: Vec<f64> = r.iter().map(|v| -v).collect();
        solve_dense(&j, &rhs)
    }
}

/// Residual of the discretised steady equation for `state`.
pub fn residual(state: &PeriodicState) -> Vec<f64> {
    SteadyProblem::new(state.lambda, state.d, state.n()).residual(&state.half_profile)
}

/// Amplitude `α₀ = 2a` of the weakly nonlinear state `1 + a cos(2πx/λ)`.
///
/// Outside the tongue the returned value is the magnitude of the formal
/// square-root law, which still gives a usable seed.
pub fn weakly_nonlinear_amplitude(lambda: f64, d: f64) -> f64 {
    let k = 2.0 * PI / lambda;
    let p1 = kernel_hat(k);
    let p2 = kernel_hat(2.0 * k);
    let g = -0.5 * p1 * (1.0 + p1) - 0.25 * p1 * (p2 + p1) / w1(2.0 * k, d);
    2.0 * (w1(k, d) / g).abs().sqrt()
}

/// Weakly nonlinear seed profile on `n` half-period nodes.
pub fn weakly_nonlinear_seed(lambda: f64, d: f64, n: usize) -> Vec<f64> {
    let a = 0.5 * weakly_nonlinear_amplitude(lambda, d);
    let h = 0.5 * lambda / (n - 1) as f64;
    (0..n)
        .map(|j| 1.0 + a * (2.0 * PI * j as f64 * h / lambda).cos())
        .collect()
}

fn newton_opts() -> NewtonOptions {
    NewtonOptions {
        tol: 1e-9,
        max_iter: 40,
        max_halvings: 8,
    }
}

/// Damped Newton from an arbitrary profile, with no triviality check.
pub fn newton_solve(lambda: f64, d: f64, seed: Vec<f64>) -> Result<PeriodicState> {
    let n = seed.len();
    if n < 64 {
        return domain("steady solves need at least 64 nodes");
    }
    let p = SteadyProblem::new(lambda, d, n);
    let mut f = seed;
    let rep = damped_newton(&p, &mut f, newton_opts())?;
    let mut s = PeriodicState::from_profile(lambda, d, f);
    s.newton_iters = rep.iterations;
    s.residual = rep.residual;
    Ok(s)
}

fn is_trivial(s: &PeriodicState) -> bool {
    s.alpha < 10.0 * s.h() * s.h()
}

fn resample(profile: &[f64], n: usize) -> Vec<f64> {
    let m = profile.len();
    (0..n)
        .map(|j| {
            let s = j as f64 * (m - 1) as f64 / (n - 1) as f64;
            let i = (s.floor() as usize).min(m - 2);
            let t = s - i as f64;
            profile[i] * (1.0 - t) + profile[i + 1] * t
        })
        .collect()
}

fn nontrivial(lambda: f64, d: f64, seed: Vec<f64>) -> Result<PeriodicState> {
    let s = newton_solve(lambda, d, seed)?;
    if is_trivial(&s) {
        Err(Error::TrivialAttractor)
    } else {
        Ok(s)
    }
}

/// Nontrivial steady state at `(λ, D)` on `n` half-period nodes.
///
/// With the weakly nonlinear seed, points far from the tongue boundary are reached
/// by continuation in `D` from just inside the boundary at this `λ`.
pub fn solve_at(lambda: f64, d: f64, n: usize, seed: Seed) -> Result<PeriodicState> {
    if omega_membership(lambda, d).tongue_index.is_none() {
        return domain(format!(
            "(λ, D) = ({lambda}, {d}) lies outside every tongue"
        ));
    }
    match seed {
        Seed::State(s) => nontrivial(lambda, d, resample(&s.half_profile, n)),
        Seed::WeaklyNonlinear => {
            if weakly_nonlinear_amplitude(lambda, d) < 0.3 {
                if let Ok(s) = nontrivial(lambda, d, weakly_nonlinear_seed(lambda, d, n)) {
                    return Ok(s);
                }
            }
            homotopy_in_d(lambda, d, n)
        }
    }
}

fn homotopy_in_d(lambda: f64, d: f64, n: usize) -> Result<PeriodicState> {
    let d_boundary = crate::dispersion::delta_of(2.0 * PI / lambda)?;
    let target_amp = 0.1;
    let d_start = bisect(
        |x| weakly_nonlinear_amplitude(lambda, x) - target_amp,
        d,
        d_boundary * (1.0 - 1e-12),
        1e-14 * d_boundary,
    )
    .unwrap_or(d);
    let mut state = nontrivial(lambda, d_start, weakly_nonlinear_seed(lambda, d_start, n))?;
    let (s_end, mut s_cur) = (d.ln(), d_start.ln());
    let mut prev: Option<(f64, Vec<f64>)> = None;
    let mut step = (s_end - s_cur) / 16.0;
    while s_cur > s_end {
        let s_next = (s_cur + step).max(s_end);
        let seed: Vec<f64> = match &prev {
            Some((s_prev, f_prev)) => {
                let r = (s_next - s_cur) / (s_cur - s_prev);
                state
                    .half_profile
                    .iter()
                    .zip(f_prev)
                    .map(|(a, b)| a + r * (a - b))
                    .collect()
            }
            None => state.half_profile.clone(),
        };
        match nontrivial(lambda, s_next.exp(), seed) {
            Ok(next) => {
                let fast = next.newton_iters <= 4;
                prev = Some((s_cur, std::mem::replace(&mut state, next).half_profile));
                s_cur = s_next;
                if fast {
                    step = (1.5 * step).max(-1.0);
                }
            }
            Err(e) => {
                step *= 0.5;
                if step.abs() < 1e-6 {
                    return Err(e);
                }
            }
        }
    }
    Ok(state)
}

/// Natural-parameter continuation across tongue `i` at fixed `D`.
///
/// The branch starts and ends a relative distance `5e-5` inside the tongue
/// edges, where the amplitude is small. Steps grow geometrically up to
/// `width/λ_steps` away from the edges and shrink again on the approach to the far edge.
/// A step whose amplitude jumps by more than half the previous amplitude is
/// taken to have left the branch and is retried with half the step.
pub fn continue_branch(
    i: usize,
    d: f64,
    lambda_steps: usize,
    n: usize,
) -> Result<Vec<BranchPoint>> {
    let (lm, lp) = tongue_boundaries(i, d)?;
    let width = lp - lm;
    let base = width / lambda_steps.max(2) as f64;
    let edge = 5e-5 * width;
    let mut out = Vec::new();
    let mut lambda = lm + edge;
    let mut last: Option<PeriodicState> = None;
    let mut step = edge;
    loop {
        let seed = last.clone().map_or(Seed::WeaklyNonlinear, Seed::State);
        let on_branch = |s: &PeriodicState| {
            last.as_ref()
                .map_or(true, |p| (s.alpha - p.alpha).abs() <= 0.5 * p.alpha + 0.1)
        };
        match solve_at(lambda, d, n, seed).and_then(|s| {
            if on_branch(&s) {
                Ok(s)
            } else {
                Err(Error::TrivialAttractor)
            }
        }) {
            Ok(s) => {
                out.push(BranchPoint {
                    lambda,
                    d,
                    alpha: s.alpha,
                    u_max: s.u_max,
                    converged: true,
                    newton_iters: s.newton_iters,
                });
                last = Some(s);
                step = (2.0 * step).min(base);
            }
            Err(_) if step > edge && last.is_some() => {
                lambda -= step;
                step *= 0.5;
            }
            Err(_) => {
                out.push(BranchPoint {
                    lambda,
                    d,
                    alpha: f64::NAN,
                    u_max: f64::NAN,
                    converged: false,
                    newton_iters: 0,
                });
                last = None;
            }
        }
        let gap = lp - lambda;
        if gap <= 1.5 * edge {
            break;
        }
        lambda = if gap <= 2.0 * edge {
            lp - edge
        } else {
            lambda + step.min(0.5 * gap).max(edge)
        };
    }
    Ok(out)
}

/// Growth of the mode `cos(2πx/λ)` about `F ≡ 1` for the discrete operator.
pub fn discrete_growth(lambda: f64, d: f64, n: usize) -> f64 {
    let h = 0.5 * lambda / (n - 1) as f64;
    let k = 2.0 * PI / lambda;
    let w = window_matrix(lambda, n);
    let phi: f64 = (0..n).map(|j| w[(0, j)] * (k * j as f64 * h).cos()).sum();
    d * (2.0 * (k * h).cos() - 2.0) / (h * h) - phi
}

/// Edge of tongue `i` for the discrete operator, near the exact boundary.
pub fn discrete_boundary(i: usize, d: f64, n: usize, upper: bool) -> Result<f64> {
    let (lm, lp) = tongue_boundaries(i, d)?;
    let width = lp - lm;
    let centre = if upper { lp } else { lm };
    let span = 0.02 * width;
    bisect(
        |l| discrete_growth(l, d, n),
        centre - span,
        centre + span,
        1e-15,
    )
}

/// Exponent `p` and prefactor `C` of `α ≈ C |λ − λ_b|^p` near one edge of tongue `i`.
pub fn fit_bifurcation_exponent(i: usize, d: f64, n: usize, upper: bool) -> Result<(f64, f64)> {
    let (lm, lp) = tongue_boundaries(i, d)?;
    let width = lp - lm;
    let edge = discrete_boundary(i, d, n, upper)?;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for frac in [1e-4, 2e-4, 4e-4, 8e-4, 1.6e-3] {
        let dist = frac * width;
        let lambda = if upper { edge - dist } else { edge + dist };
        let s = solve_at(lambda, d, n, Seed::WeaklyNonlinear)?;
        xs.push(dist.ln());
        ys.push(s.alpha.ln());
    }
    let f = linear_fit(&xs, &ys).ok_or_else(|| Error::Domain("degenerate exponent fit".into()))?;
    Ok((f.slope, f.intercept.exp()))
}

/// `(D, u_max·√D)` at `λ = ½ + λ̄√D` for each `D`.
pub fn spike_scaling(lambda_bar: f64, d_list: &[f64]) -> Result<Vec<(f64, f64)>> {
    d_list
        .par_iter()
        .map(|&d| {
            let lambda = 0.5 + lambda_bar * d.sqrt();
            let s = solve_at(lambda, d, default_nodes(lambda, d), Seed::WeaklyNonlinear)?;
            Ok((d, s.u_max * d.sqrt()))
        })
        .collect()
}

/// Max-norm of the residual, for convergence reporting.
pub fn residual_norm(state: &PeriodicState) -> f64 {
    max_norm(&residual(state))
}
