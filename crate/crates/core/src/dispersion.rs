//! Linear stability of the equilibria and the bifurcation loci of periodic states.
//!
//! Perturbations behave like `e^{ikx − wt}`, so negative `w` means growth.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{domain, Error, Result};
use crate::roots::newton_bracketed;

const ROOT_TOL: f64 = 1e-15;

/// A sampled growth relation value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionPoint {
    pub k: f64,
    pub w: f64,
}

/// `Δ(X) = −(2/X³) sin(X/2)`.
pub fn delta_of(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return domain(format!("Δ(X) needs X > 0, got {x}"));
    }
    Ok(delta_raw(x))
}

#[inline]
fn delta_raw(x: f64) -> f64 {
    -2.0 * (0.5 * x).sin() / (x * x * x)
}

#[inline]
fn delta_prime(x: f64) -> f64 {
    (6.0 * (0.5 * x).sin() - x * (0.5 * x).cos()) / x.powi(4)
}

/// The `n`-th turning point of Δ, the root of `tan(X/2) = X/6` in `(2nπ, 2(n+1)π)`.
pub fn turning_point(n: usize) -> Result<f64> {
    if n == 0 {
        return domain("turning points are indexed from 1");
    }
    // 6 sin(X/2) − X cos(X/2) changes sign between 2nπ and (2n+1)π.
    let g = |x: f64| {
        let (s, c) = (0.5 * x).sin_cos();
        (6.0 * s - x * c, 2.0 * c + 0.5 * x * s)
    };
    let a = 2.0 * n as f64 * PI;
    newton_bracketed(g, a, a + PI, ROOT_TOL * a)
}

/// A turning point of Δ: location and value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum {
    pub n: usize,
    pub location: f64,
    pub value: f64,
}

/// Turning points `δ_1..δ_{2 r_max}` of Δ; odd `n` are the maxima `Δ_r = Δ(δ_{2r−1})`.
pub fn delta_extrema(r_max: usize) -> Result<Vec<Extremum>> {
    if r_max == 0 {
        return domain("r_max must be at least 1");
    }
    (1..=2 * r_max)
        .map(|n| {
            let x = turning_point(n)?;
            Ok(Extremum {
                n,
                location: x,
                value: delta_raw(x),
            })
        })
        .collect()
}

/// The `r`-th local maximum `Δ_r` and its location `δ_{2r−1}`.
pub fn delta_max(r: usize) -> Result<(f64, f64)> {
    if r == 0 {
        return domain("tongue indices start at 1");
    }
    let x = turning_point(2 * r - 1)?;
    Ok((delta_raw(x), x))
}

/// Growth relation about `u = 0`: `w₀ = Dk² − 1`.
pub fn w0(k: f64, d: f64) -> f64 {
    d * k * k - 1.0
}

/// `φ̂(k) = (2/k) sin(k/2)`, the kernel transform, with its Taylor series near 0.
pub fn kernel_hat(k: f64) -> f64 {
    if k.abs() < 1e-4 {
        let k2 = k * k;
        1.0 - k2 / 24.0 + k2 * k2 / 1920.0 - k2 * k2 * k2 / 322_560.0
    } else {
        2.0 * (0.5 * k).sin() / k
    }
}

/// Growth relation about `u = 1`: `w₁ = Dk² + (2/k) sin(k/2)`.
pub fn w1(k: f64, d: f64) -> f64 {
    d * k * k + kernel_hat(k)
}

/// `∂w₁/∂k`.
pub fn w1_prime(k: f64, d: f64) -> f64 {
    if k.abs() < 1e-4 {
        return 2.0 * d * k - k / 12.0 + k * k * k / 480.0;
    }
    let (s, c) = (0.5 * k).sin_cos();
    2.0 * d * k + c / k - 2.0 * s / (k * k)
}

/// `k₀`, the smallest positive root of `tan(k/2) = k/2`, lying in `(2π, 3π)`.
pub fn k0() -> f64 {
    let g = |k: f64| {
        let (s, c) = (0.5 * k).sin_cos();
        (s - 0.5 * k * c, 0.25 * k * s)
    };
    newton_bracketed(g, 2.0 * PI, 3.0 * PI, ROOT_TOL).expect("k0 bracket is valid")
}

/// Most unstable wavenumber about `u = 1` and the corresponding `w₁`.
pub fn most_unstable_k(d: f64) -> Result<(f64, f64)> {
    if !(d > 0.0) {
        return domain("D must be positive");
    }
    let (delta1, delta1_at) = delta_max(1)?;
    if d >= delta1 {
        return Err(Error::EquilibriumStable);
    }
    // g(k) = 2Dk³ − 2 sin(k/2) + k cos(k/2) is k² times ∂w₁/∂k.
    let g = |k: f64| {
        let (s, c) = (0.5 * k).sin_cos();
        (
            2.0 * d * k * k * k - 2.0 * s + k * c,
            6.0 * d * k * k - 0.5 * k * s,
        )
    };
    let upper = k0().max(delta1_at);
    let lower = 2.0 * PI;
    let km = newton_bracketed(g, lower, upper, 1e-14)?;
    Ok((km, w1(km, d)))
}

/// Boundaries `(λᵢ⁻, λᵢ⁺)` of tongue `i` at diffusivity `D`.
pub fn tongue_boundaries(i: usize, d: f64) -> Result<(f64, f64)> {
    if i == 0 {
        return domain("tongue indices start at 1");
    }
    if !(d >= 0.0) {
        return domain("D must be non-negative");
    }
    let (delta_i, peak) = delta_max(i)?;
    if d >= delta_i {
        return Err(Error::TongueClosed);
    }
    let i_f = i as f64;
    if d == 0.0 {
        return Ok((1.0 / (2.0 * i_f), 1.0 / (2.0 * i_f - 1.0)));
    }
    let g = |x: f64| (delta_raw(x) - d, delta_prime(x));
    let lo = 2.0 * (2.0 * i_f - 1.0) * PI;
    let hi = 4.0 * i_f * PI;
    let x_plus = newton_bracketed(g, lo, peak, 1e-16)?;
    let x_minus = newton_bracketed(g, peak, hi, 1e-16)?;
    Ok((2.0 * PI / x_minus, 2.0 * PI / x_plus))
}

/// Boundary curves of one tongue sampled on a D grid.
#[derive(Debug, Clone, PartialEq)]
pub struct TongueCurve {
    pub index: usize,
    pub threshold: f64,
    pub peak_location: f64,
    /// `(D, λ⁻, λ⁺)` with increasing `D`.
    pub samples: Vec<(f64, f64, f64)>,
}

/// Sampled tongue boundaries for tongues `1..=i_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct TongueAtlas {
    pub tongues: Vec<TongueCurve>,
}

impl TongueAtlas {
    /// Samples each tongue on `D = 0` plus a geometric grid dense near zero.
    pub fn build(i_max: usize, samples: usize) -> Result<Self> {
        if i_max == 0 || samples < 2 {
            return domain("atlas needs at least one tongue and two samples");
        }
        let tongues = (1..=i_max)
            .into_par_iter()
            .map(|i| {
                let (threshold, peak_location) = delta_max(i)?;
                let mut pts = Vec::with_capacity(samples);
                let m = samples - 1;
                for s in 0..samples {
                    let d = if s == 0 {
                        0.0
                    } else {
                        let e = -8.0 + 8.0 * (s - 1) as f64 / (m - 1).max(1) as f64;
                        threshold * 10f64.powf(e) * (1.0 - 1e-9)
                    };
                    let (lm, lp) = tongue_boundaries(i, d)?;
                    pts.push((d, lm, lp));
                }
                Ok(TongueCurve {
                    index: i,
                    threshold,
                    peak_location,
                    samples: pts,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { tongues })
    }

    /// Linear interpolation of the sampled boundaries; `None` when outside the sampled range.
    pub fn interpolate(&self, i: usize, d: f64) -> Option<(f64, f64)> {
        let t = self.tongues.iter().find(|t| t.index == i)?;
        let s = &t.samples;
        let j = s.windows(2).position(|w| w[0].0 <= d && d <= w[1].0)?;
        let (d0, a0, b0) = s[j];
        let (d1, a1, b1) = s[j + 1];
        let f = if d1 > d0 { (d - d0) / (d1 - d0) } else { 0.0 };
        Some((a0 + f * (a1 - a0), b0 + f * (b1 - b0)))
    }
}

/// A point of the `(λ, D)` plane with the tongue containing it, if any.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OmegaPoint {
    pub lambda: f64,
    pub d: f64,
    pub tongue_index: Option<usize>,
}

/// Locates `(λ, D)` in the union of tongues. Tongue `i` lies over `1/λ ∈ (2i−1, 2i)`.
pub fn omega_membership(lambda: f64, d: f64) -> OmegaPoint {
    let mut pt = OmegaPoint {
        lambda,
        d,
        tongue_index: None,
    };
    if !(lambda > 0.0) || !(d > 0.0) {
        return pt;
    }
    let q = 1.0 / lambda;
    let i = (0.5 * q).ceil().max(1.0) as usize;
    if !(q > 2.0 * i as f64 - 1.0 && q < 2.0 * i as f64) {
        return pt;
    }
    if let Ok((lm, lp)) = tongue_boundaries(i, d) {
        if lm < lambda && lambda < lp {
            pt.tongue_index = Some(i);
        }
    }
    pt
}

/// Complex residual `4π²D − 2iπvλ + (λ³/π) sin(π/λ)` for a periodic wave of
/// wavelength `λ` moving at speed `v`.
pub fn periodic_tw_residual(d: f64, lambda: f64, v: f64) -> Complex64 {
    Complex64::new(
        4.0 * PI * PI * d + lambda.powi(3) / PI * (PI / lambda).sin(),
        -2.0 * PI * v * lambda,
    )
}

/// Zeros of [`periodic_tw_residual`] with `v ≠ 0` on the given grids.
///
/// The imaginary part vanishes only for `v = 0`, so the result is empty.
pub fn periodic_tw_bifurcation_check(d: f64, lambdas: &[f64], speeds: &[f64]) -> Vec<(f64, f64)> {
    let mut zeros = Vec::new();
    for &l in lambdas {
        for &v in speeds.iter().filter(|v| **v != 0.0) {
            let r = periodic_tw_residual(d, l, v);
            if r.norm() == 0.0 {
                zeros.push((l, v));
            }
        }
    }
    zeros
}
