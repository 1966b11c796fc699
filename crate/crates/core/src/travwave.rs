//! Minimum-speed travelling waves and the exponents governing their rear tail.
//!
//! The wave `u(z)`, `z = x − vt`, solves
//! `D u'' + v u' + u (1 − φ*u) = 0` with `u → 1` behind and `u → 0` ahead.
//! Unknowns are stored as `q = u − o`, where the offset `o` is 1 behind the
//! origin and 0 ahead of it, so both tails keep full relative precision.
//! Translation invariance is removed by the phase condition `u(0) = ½`, which
//! replaces the Dirichlet condition at the right end.

use std::f64::consts::PI;

use faer::Mat;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{domain, Error, Result};
use crate::fit::{lstsq, prony1, prony2};
use crate::kernel::window_integrals;
use crate::linalg::{damped_newton, solve_dense, NewtonOptions, NewtonProblem};
use crate::roots::newton_bracketed;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailClass {
    Oscillatory,
    Monotone,
}

/// A converged travelling wave.
#[derive(Debug, Clone, PartialEq)]
pub struct TwProfile {
    pub d: f64,
    pub v: f64,
    pub z: Vec<f64>,
    pub u: Vec<f64>,
    /// `u − 1` behind the origin, `u` ahead of it, at full precision.
    pub deviation: Vec<f64>,
    pub tail_class: TailClass,
    /// Set when the root structure and the residual test disagree.
    pub ambiguous: bool,
    /// Rear decay rate `a` in `u − 1 ∝ e^{a z}`.
    pub rear_rate: f64,
    /// Rear oscillation frequency `b`, zero for a monotone tail.
    pub rear_frequency: f64,
    /// Fitted amplitude of the rear tail model at `z = 0`.
    pub rear_amplitude: Option<f64>,
    /// Linear front rates `(λ₊, λ₋)`.
    pub front_rates: (f64, f64),
    /// Decay rate of the computed leading edge.
    pub fitted_front_rate: Option<f64>,
    pub newton_iters: usize,
}

impl TwProfile {
    pub fn min_u(&self) -> f64 {
        self.u.iter().cloned().fold(f64::MAX, f64::min)
    }

    /// Linear interpolation of `u`, with the far-field limits outside the grid.
    pub fn eval(&self, z: f64) -> f64 {
        let h = self.z[1] - self.z[0];
        let s = (z - self.z[0]) / h;
        if s <= 0.0 {
            return 1.0;
        }
        let n = self.u.len();
        if s >= (n - 1) as f64 {
            return 0.0;
        }
        let j = s.floor() as usize;
        let t = s - j as f64;
        self.u[j] * (1.0 - t) + self.u[j + 1] * t
    }
}

/// Truncation of the travelling-wave problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwConfig {
    pub l_minus: f64,
    pub l_plus: f64,
    /// Target grid spacing.
    pub h: f64,
}

impl TwConfig {
    /// Domain long enough for the leading edge to reach its linear regime.
    pub fn for_diffusivity(d: f64) -> Self {
        Self {
            l_minus: 10.0,
            l_plus: 0.5 + 45.0 * d.sqrt(),
            h: (d.sqrt() / 10.0).min(0.01),
        }
    }
}

struct TwProblem {
    d: f64,
    v: f64,
    h: f64,
    n: usize,
    j0: usize,
    /// `1 − φ*o`, exact.
    c: Vec<f64>,
    /// Band of window weights for `φ*q`; row `j` covers columns `j − half..=j + half + 1`.
    weights: Vec<Vec<(usize, f64)>>,
}

impl TwProblem {
    fn new(d: f64, v: f64, h: f64, n: usize, j0: usize) -> Self {
        let z0 = -(j0 as f64) * h;
        let zl = z0 + (j0 as f64 - 1.0) * h;
        let ramp = |z: f64| -> f64 {
            if z <= zl {
                0.0
            } else if z <= zl + h {
                (z - zl).powi(2) / (2.0 * h)
            } else {
                0.5 * h + (z - zl - h)
            }
        };
        let c = (0..n)
            .map(|j| {
                let z = z0 + j as f64 * h;
                ramp(z + 0.5) - ramp(z - 0.5)
            })
            .collect();
        let half = 0.5 / h;
        let weights = (0..n)
            .map(|j| {
                let sa = j as f64 - half;
                let sb = j as f64 + half;
                let mut row: Vec<(usize, f64)> = Vec::new();
                let mut add = |k: i64, w: f64| {
                    if k >= 0 && (k as usize) < n {
                        match row.last_mut() {
                            Some(last) if last.0 == k as usize => last.1 += w,
                            _ => row.push((k as usize, w)),
                        }
                    }
                };
                for m in sa.floor() as i64..sb.ceil() as i64 {
                    let t0 = (sa - m as f64).max(0.0);
                    let t1 = (sb - m as f64).min(1.0);
                    if t1 <= t0 {
                        continue;
                    }
                    let q = 0.5 * (t1 * t1 - t0 * t0);
                    add(m, h * ((t1 - t0) - q));
                    add(m + 1, h * q);
                }
                row
            })
            .collect();
        Self {
            d,
            v,
            h,
            n,
            j0,
            c,
            weights,
        }
    }

    fn offset(&self, j: usize) -> f64 {
        if j < self.j0 {
            1.0
        } else {
            0.0
        }
    }

    fn window_q(&self, q: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.n];
        window_integrals(q, self.h, &mut out);
        out
    }
}

impl NewtonProblem for TwProblem {
    fn residual(&self, q: &[f64]) -> Vec<f64> {
        let n = self.n;
        let nq = self.window_q(q);
        let (cd, cv) = (self.d / (self.h * self.h), self.v / (2.0 * self.h));
        let mut r = vec![0.0; n];
        r[0] = q[0];
        for j in 1..n - 1 {
            let lap_o = self.offset(j - 1) - 2.0 * self.offset(j) + self.offset(j + 1);
            let grad_o = self.offset(j + 1) - self.offset(j - 1);
            let lap = lap_o + (q[j - 1] - 2.0 * q[j] + q[j + 1]);
            let grad = grad_o + (q[j + 1] - q[j - 1]);
            r[j] = cd * lap + cv * grad + (self.offset(j) + q[j]) * (self.c[j] - nq[j]);
        }
        r[n - 1] = q[self.j0] - 0.5;
        r
    }

    fn newton_step(&self, q: &[f64], r: &[f64]) -> Option<Vec<f64>> {
        let n = self.n;
        let nq = self.window_q(q);
        let (cd, cv) = (self.d / (self.h * self.h), self.v / (2.0 * self.h));
        let mut jac = Mat::<f64>::zeros(n, n);
        jac[(0, 0)] = 1.0;
        for j in 1..n - 1 {
            let u = self.offset(j) + q[j];
            for &(k, w) in &self.weights[j] {
                jac[(j, k)] -= u * w;
            }
            jac[(j, j - 1)] += cd - cv;
            jac[(j, j)] += -2.0 * cd + self.c[j] - nq[j];
            jac[(j, j + 1)] += cd + cv;
        }
        jac[(n - 1, self.j0)] = 1.0;
        let rhs: Vec<f64> = r.iter().map(|x| -x).collect();
        solve_dense(&jac, &rhs)
    }
}

/// Linear decay rates `λ± = −(v ± √(v²−4D))/(2D)` of the leading edge.
pub fn front_decay_rates(v: f64, d: f64) -> Result<(f64, f64)> {
    if !(d > 0.0) {
        return domain("D must be positive");
    }
    let disc = v * v - 4.0 * d;
    if v < 0.0 || disc < -1e-14 * 4.0 * d {
        return Err(Error::NoPositiveFront);
    }
    let s = disc.max(0.0).sqrt();
    Ok((-(v + s) / (2.0 * d), -(v - s) / (2.0 * d)))
}

struct TailFitResult {
    class: TailClass,
    ambiguous: bool,
    rate: f64,
    frequency: f64,
    amplitude: Option<f64>,
}

fn classify_rear_tail(z: &[f64], q: &[f64], h: f64) -> Option<TailFitResult> {
    let roots = prony2(q)?;
    let complex = roots[0].im.abs() > 1e-9 * roots[0].norm();
    let (rate, frequency) = if complex {
        (roots[0].norm().ln() / h, roots[0].arg().abs() / h)
    } else {
        let r = roots
            .iter()
            .map(|r| r.re)
            .filter(|r| *r > 1.0)
            .fold(f64::MAX, f64::min);
        if r == f64::MAX {
            return None;
        }
        (r.ln() / h, 0.0)
    };
    let env: Vec<f64> = z.iter().map(|zz| (-rate * zz).exp()).collect();
    let y: Vec<f64> = q.iter().zip(&env).map(|(a, b)| a * b).collect();
    let exp_rate = prony1(q)
        .filter(|p| *p > 0.0)
        .map(|p| p.ln() / h)
        .unwrap_or(rate);
    let col_exp: Vec<f64> = z
        .iter()
        .zip(&env)
        .map(|(zz, e)| (exp_rate * zz).exp() * e)
        .collect();
    let (_, rss_exp) = lstsq(&[col_exp], &y)?;
    let (amplitude, rss_osc) = if complex {
        let c1: Vec<f64> = z.iter().map(|zz| (frequency * zz).cos()).collect();
        let c2: Vec<f64> = z.iter().map(|zz| (frequency * zz).sin()).collect();
        let (coef, rss) = lstsq(&[c1, c2], &y)?;
        (Some(coef[0].hypot(coef[1])), rss)
    } else {
        let (coef, rss) = lstsq(&[vec![1.0; y.len()]], &y)?;
        (Some(coef[0].abs()), rss)
    };
    let decisive = rss_exp >= 10.0 * rss_osc;
    let class = if complex && decisive {
        TailClass::Oscillatory
    } else {
        TailClass::Monotone
    };
    Some(TailFitResult {
        class,
        ambiguous: complex && !decisive,
        rate,
        frequency,
        amplitude,
    })
}

/// Prony fit of the leading edge once the window has cleared the bulk.
fn fit_front(z: &[f64], u: &[f64], h: f64, d: f64) -> Option<f64> {
    let z_end = z[z.len() - 1] - 5.0 * h;
    let samples: Vec<f64> = z
        .iter()
        .zip(u)
        .filter(|(zz, uu)| **zz > 0.5 + 20.0 * d.sqrt() && **zz < z_end && **uu > 0.0)
        .map(|(_, uu)| *uu)
        .collect();
    let roots = prony2(&samples)?;
    let mean = (roots[0].ln().re + roots[1].ln().re) / (2.0 * h);
    Some(mean)
}

fn logistic_seed(z: &[f64], d: f64) -> Vec<f64> {
    let w = d.sqrt().max(0.05);
    z.iter().map(|zz| 1.0 / (1.0 + (zz / w).exp())).collect()
}

fn tw_newton(
    d: f64,
    v: f64,
    cfg: &TwConfig,
    seed_u: &dyn Fn(&[f64]) -> Vec<f64>,
) -> Result<TwProfile> {
    let j0 = (cfg.l_minus / cfg.h).round() as usize;
    let h = cfg.l_minus / j0 as f64;
    let n = j0 + (cfg.l_plus / h).round() as usize + 1;
    let z: Vec<f64> = (0..n).map(|j| (j as f64 - j0 as f64) * h).collect();
    let p = TwProblem::new(d, v, h, n, j0);
    let u0 = seed_u(&z);
    let mut q: Vec<f64> = (0..n).map(|j| u0[j] - p.offset(j)).collect();
    q[0] = 0.0;
    let opts = NewtonOptions {
        tol: 1e-11,
        max_iter: 60,
        max_halvings: 10,
    };
    let rep = damped_newton(&p, &mut q, opts)?;
    let u: Vec<f64> = (0..n).map(|j| p.offset(j) + q[j]).collect();
    let (zs, qs): (Vec<f64>, Vec<f64>) = z
        .iter()
        .zip(&q)
        .filter(|(zz, _)| **zz >= -cfg.l_minus + 1.0 && **zz <= -5.0)
        .map(|(a, b)| (*a, *b))
        .unzip();
    let tail = classify_rear_tail(&zs, &qs, h)
        .ok_or_else(|| Error::Domain("rear tail fit failed".into()))?;
    Ok(TwProfile {
        d,
        v,
        fitted_front_rate: fit_front(&z, &u, h, d),
        z,
        u,
        deviation: q,
        tail_class: tail.class,
        ambiguous: tail.ambiguous,
        rear_rate: tail.rate,
        rear_frequency: tail.frequency,
        rear_amplitude: tail.amplitude,
        front_rates: front_decay_rates(v, d)?,
        newton_iters: rep.iterations,
    })
}

/// Solves the travelling-wave problem at speed `v ≥ 2√D`.
pub fn solve_tptw(d: f64, v: f64, cfg: &TwConfig) -> Result<TwProfile> {
    if !(d > 0.0) {
        return domain("D must be positive");
    }
    front_decay_rates(v, d)?;
    if cfg.l_minus < 10.0 || !(cfg.l_plus > 0.0) || !(cfg.h > 0.0) {
        return domain("travelling-wave domain needs L_m ≥ 10 and positive L_p, h");
    }
    let direct = tw_newton(d, v, cfg, &|z| logistic_seed(z, d));
    if direct.is_ok() {
        return direct;
    }
    // Continuation in D from a monotone wave at larger diffusivity.
    let speed_ratio = v / (2.0 * d.sqrt());
    let mut cur_d = 0.05f64.max(2.0 * d);
    let mut cur = tw_newton(
        cur_d,
        speed_ratio * 2.0 * cur_d.sqrt(),
        &TwConfig::for_diffusivity(cur_d),
        &|z| logistic_seed(z, cur_d),
    )?;
    let mut factor = 0.7f64;
    while cur_d > d {
        let next_d = (cur_d * factor).max(d);
        let next_cfg = if next_d == d {
            *cfg
        } else {
            TwConfig::for_diffusivity(next_d)
        };
        let next_v = if next_d == d {
            v
        } else {
            speed_ratio * 2.0 * next_d.sqrt()
        };
        let prev = cur.clone();
        match tw_newton(next_d, next_v, &next_cfg, &|z| {
            z.iter().map(|zz| prev.eval(*zz)).collect()
        }) {
            Ok(p) => {
                cur = p;
                cur_d = next_d;
                factor = (factor * 0.8).max(0.3);
            }
            Err(e) => {
                factor = factor.sqrt();
                if factor > 0.999 {
                    return Err(e);
                }
            }
        }
    }
    Ok(cur)
}

/// `2 sinh(σ/2)/σ` with its series near zero.
fn sinhc(s: Complex64) -> Complex64 {
    if s.norm() < 1e-3 {
        let s2 = s * s;
        1.0 + s2 / 24.0 + s2 * s2 / 1920.0
    } else {
        2.0 * (s / 2.0).sinh() / s
    }
}

fn sinhc_prime(s: Complex64) -> Complex64 {
    if s.norm() < 1e-3 {
        s / 12.0 + s * s * s / 480.0
    } else {
        (s / 2.0).cosh() / s - 2.0 * (s / 2.0).sinh() / (s * s)
    }
}

/// `Dσ² + 2√Dσ − (2/σ) sinh(σ/2)`.
pub fn sigma_residual(s: Complex64, d: f64) -> Complex64 {
    d * s * s + 2.0 * d.sqrt() * s - sinhc(s)
}

fn sigma_dsigma(s: Complex64, d: f64) -> Complex64 {
    2.0 * d * s + 2.0 * d.sqrt() - sinhc_prime(s)
}

fn sigma_dd(s: Complex64, d: f64) -> Complex64 {
    s * s + s / d.sqrt()
}

/// Magnitude of the terms of [`sigma_residual`], the natural scale of its round-off.
pub fn sigma_scale(s: Complex64, d: f64) -> f64 {
    1.0 + (d * s * s).norm() + (2.0 * d.sqrt() * s).norm() + sinhc(s).norm()
}

fn complex_newton(mut s: Complex64, d: f64) -> Option<Complex64> {
    let accept = |s: Complex64| sigma_residual(s, d).norm() < 1e-10 * sigma_scale(s, d);
    for _ in 0..100 {
        let f = sigma_residual(s, d);
        if f.norm() < 1e-14 * sigma_scale(s, d) {
            return Some(s);
        }
        let ds = f / sigma_dsigma(s, d);
        s -= ds;
        if !s.re.is_finite() || !s.im.is_finite() {
            return None;
        }
        if ds.norm() < 1e-15 * (1.0 + s.norm()) {
            return accept(s).then_some(s);
        }
    }
    accept(s).then_some(s)
}

/// Sampled root path `σₙ(D)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexRootPath {
    pub n: i32,
    pub samples: Vec<(f64, Complex64)>,
}

/// Small-D asymptote `2nπi − (−1)ⁿ 8n²π²√D`.
pub fn sigma_small_d(n: i32, d: f64) -> Complex64 {
    let nf = n as f64;
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    Complex64::new(-sign * 8.0 * nf * nf * PI * PI * d.sqrt(), 2.0 * nf * PI)
}

/// Point `(σ, D)` where two real rear exponents coalesce.
pub fn collision_point(sigma_seed: f64, d_seed: f64) -> Result<(f64, f64)> {
    let (mut s, mut d) = (sigma_seed, d_seed);
    for _ in 0..100 {
        let rd = d.sqrt();
        let (sh, ch) = ((0.5 * s).sinh(), (0.5 * s).cosh());
        let f1 = d * s.powi(3) + 2.0 * rd * s * s - 2.0 * sh;
        let f2 = 3.0 * d * s * s + 4.0 * rd * s - ch;
        if f1.abs() < 1e-14 && f2.abs() < 1e-14 {
            return Ok((s, d));
        }
        let a11 = f2;
        let a12 = s.powi(3) + s * s / rd;
        let a21 = 6.0 * d * s + 4.0 * rd - 0.5 * sh;
        let a22 = 3.0 * s * s + 2.0 * s / rd;
        let det = a11 * a22 - a12 * a21;
        if det == 0.0 || !det.is_finite() {
            return Err(Error::Root("singular Jacobian in threshold solve".into()));
        }
        let ds = (f1 * a22 - f2 * a12) / det;
        let dd = (a11 * f2 - a21 * f1) / det;
        s -= ds;
        d -= dd;
        if !(d > 0.0) || !s.is_finite() {
            return Err(Error::Root(
                "threshold Newton left the admissible region".into(),
            ));
        }
        if ds.abs() < 1e-15 * s.abs() && dd.abs() < 1e-15 * d {
            return Ok((s, d));
        }
    }
    Err(Error::Root("threshold Newton did not converge".into()))
}

/// `(σ₊, D₊)`: below `D₊` the rear tail oscillates.
pub fn find_oscillation_threshold() -> Result<(f64, f64)> {
    collision_point(4.4, 0.028)
}

fn real_root(n: i32, d: f64, sc: f64) -> Result<f64> {
    let g = |s: f64| {
        let z = Complex64::new(s, 0.0);
        (sigma_residual(z, d).re, sigma_dsigma(z, d).re)
    };
    let outward = |start: f64, dir: f64| -> Result<f64> {
        let mut b = start + dir;
        let mut step = 1.0;
        while g(b).0 > 0.0 {
            step *= 2.0;
            b += dir * step;
            if b.abs() > 1e4 {
                return Err(Error::Root("no real rear exponent found".into()));
            }
        }
        Ok(b)
    };
    let tiny = 1e-9 * sc.abs();
    match n {
        1 => newton_bracketed(g, tiny, sc, 1e-14),
        -1 => newton_bracketed(g, sc, outward(sc, 1.0)?, 1e-14),
        2 => newton_bracketed(g, sc, -tiny, 1e-14),
        -2 => newton_bracketed(g, outward(sc, -1.0)?, sc, 1e-14),
        _ => unreachable!(),
    }
}

/// One predictor-corrector step of a complex root from `D = d0` to `d1`.
/// The step is subdivided when the corrector lands far from the tangent
/// prediction or crosses the real axis.
fn advance(s0: Complex64, d0: f64, d1: f64) -> Option<Complex64> {
    let (mut s, mut d) = (s0, d0);
    let mut h = d1 - d0;
    let min_h = (d1 - d0) * 2f64.powi(-20);
    while d < d1 {
        let h_try = h.min(d1 - d);
        let pred = s - sigma_dd(s, d) / sigma_dsigma(s, d) * h_try;
        let scale = (pred - s).norm();
        let next = complex_newton(pred, d + h_try).filter(|t| {
            (t - pred).norm() <= 10.0 * scale + 1e-10 && !(s.im != 0.0 && t.im * s.im < 0.0)
        });
        match next {
            Some(t) => {
                s = t;
                d += h_try;
                h = 2.0 * h_try;
            }
            None if h_try > min_h => h = 0.5 * h_try,
            None => return None,
        }
    }
    Some(s)
}

/// Follows `σₙ(D)` along an increasing grid of `D`, starting from `σₙ(0⁺) = 2nπi`.
///
/// For `|n| ≤ 2` the pair `σ_{±n}` meets on the real axis; past that point the
/// path continues along the real root selected by its index.
pub fn sigma_path(n: i32, d_grid: &[f64]) -> Result<ComplexRootPath> {
    if n == 0 {
        return domain("root index must be nonzero");
    }
    if d_grid.is_empty()
        || d_grid.iter().any(|d| !(*d > 0.0))
        || d_grid.windows(2).any(|w| w[1] <= w[0])
    {
        return domain("D grid must be positive and increasing");
    }
    let collision = match n.abs() {
        1 => Some(find_oscillation_threshold()?),
        2 => Some(collision_point(-8.1, 0.22)?),
        _ => None,
    };
    let im_sign = n.signum() as f64;
    let mut samples: Vec<(f64, Complex64)> = Vec::with_capacity(d_grid.len());
    for &d in d_grid {
        if let Some((sc, dc)) = collision {
            if d >= dc {
                samples.push((d, Complex64::new(real_root(n, d, sc)?, 0.0)));
                continue;
            }
            if d > 0.8 * dc {
                // Square-root branch near the coalescence.
                let z = Complex64::new(sc, 0.0);
                let fss = {
                    let e = 1e-5;
                    (sigma_dsigma(z + e, dc) - sigma_dsigma(z - e, dc)) / (2.0 * e)
                };
                let ratio = 2.0 * sigma_dd(z, dc) * (dc - d) / fss;
                let mut off = ratio.sqrt();
                if off.im * im_sign < 0.0 {
                    off = -off;
                }
                let s = complex_newton(z + off, d).ok_or(Error::BranchJump { d })?;
                if s.im * im_sign <= 0.0 {
                    return Err(Error::BranchJump { d });
                }
                samples.push((d, s));
                continue;
            }
        }
        let s = match samples.last() {
            None => complex_newton(sigma_small_d(n, d), d).ok_or(Error::BranchJump { d })?,
            Some(&(dp, sp)) => advance(sp, dp, d).ok_or(Error::BranchJump { d })?,
        };
        samples.push((d, s));
    }
    Ok(ComplexRootPath { n, samples })
}

/// Root paths for several indices, computed in parallel.
pub fn sigma_paths(indices: &[i32], d_grid: &[f64]) -> Result<Vec<ComplexRootPath>> {
    indices.par_iter().map(|&n| sigma_path(n, d_grid)).collect()
}

/// Geometric grid of `m` values from `a` to `b`.
pub fn log_grid(a: f64, b: f64, m: usize) -> Vec<f64> {
    if m == 1 {
        return vec![a];
    }
    (0..m)
        .map(|k| a * (b / a).powf(k as f64 / (m - 1) as f64))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn threshold_reference() {
        let (s, d) = find_oscillation_threshold().unwrap();
        assert!((s - 4.436_918_623_312_223).abs() < 1e-9);
        assert!((d - 0.028_246_197_032_629_302).abs() < 1e-12);
    }

    #[test]
    fn decay_rates_double_root() {
        let d: f64 = 0.01;
        let (a, b) = front_decay_rates(2.0 * d.sqrt(), d).unwrap();
        assert!((a + 10.0).abs() < 1e-6 && (b + 10.0).abs() < 1e-6);
        assert_eq!(front_decay_rates(0.1, d), Err(Error::NoPositiveFront));
    }

    #[test]
    fn series_branch_is_continuous() {
        let a = sinhc(Complex64::new(0.99e-3, 0.0));
        let b = sinhc(Complex64::new(1.01e-3, 0.0));
        assert!((a - b).norm() < 1e-7);
    }

    #[test]
    fn sigma_one_reference() {
        let p = sigma_path(1, &log_grid(1e-8, 0.01, 60)).unwrap();
        let (_, s) = *p.samples.last().unwrap();
        assert!((s.re - 3.42292).abs() < 1e-4 && (s.im - 3.51736).abs() < 1e-4);
    }
}
