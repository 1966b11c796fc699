//! Top-hat convolution `(φ*u)(x) = ∫_{x-1/2}^{x+1/2} u(y) dy` on uniform grids.

use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{domain, Error, Result};

/// Uniform grid. A periodic grid covers one period `n·dx` without repeating the endpoint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    pub x_left: f64,
    pub dx: f64,
    pub n: usize,
    pub periodic: bool,
}

impl Grid1D {
    pub fn new(x_left: f64, dx: f64, n: usize, periodic: bool) -> Result<Self> {
        if !(dx > 0.0) || !dx.is_finite() || !x_left.is_finite() {
            return domain("grid spacing must be positive and finite");
        }
        if n < 3 {
            return domain("grid needs at least 3 nodes");
        }
        Ok(Self {
            x_left,
            dx,
            n,
            periodic,
        })
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x_left + i as f64 * self.dx
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.x(i)).collect()
    }

    /// Distance between the first and last node.
    pub fn span(&self) -> f64 {
        (self.n - 1) as f64 * self.dx
    }

    pub fn period(&self) -> f64 {
        self.n as f64 * self.dx
    }
}

/// What the nodal values of a [`Field`] hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Representation {
    U,
    LogU,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    pub grid: Grid1D,
    pub values: Vec<f64>,
    pub representation: Representation,
}

impl Field {
    pub fn new(grid: Grid1D, values: Vec<f64>, representation: Representation) -> Result<Self> {
        if values.len() != grid.n {
            return domain(format!(
                "field has {} values for {} nodes",
                values.len(),
                grid.n
            ));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return domain("field values must be finite");
        }
        if representation == Representation::U && values.iter().any(|&v| v < 0.0) {
            return domain("u-representation requires non-negative values");
        }
        Ok(Self {
            grid,
            values,
            representation,
        })
    }

    /// Nodal values of `u`, exponentiating when stored as `log u`.
    pub fn u_values(&self) -> Vec<f64> {
        match self.representation {
            Representation::U => self.values.clone(),
            Representation::LogU => self.values.iter().map(|w| w.exp()).collect(),
        }
    }
}

/// The unit top-hat kernel; its half-width is fixed.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct TopHatKernel;

impl TopHatKernel {
    pub const HALF_WIDTH: f64 = 0.5;

    pub fn half_width(&self) -> f64 {
        Self::HALF_WIDTH
    }

    /// Fourier coefficient of the kernel for mode `m` on a period `l`.
    pub fn symbol(&self, m: f64, l: f64) -> f64 {
        if m == 0.0 {
            1.0
        } else {
            let a = std::f64::consts::PI * m / l;
            a.sin() / a
        }
    }
}

/// Integral of the piecewise-linear interpolant of `u` from node 0 to index-coordinate `s`,
/// with `u = 0` outside the nodes. `cum[j]` is the integral up to node `j`.
#[inline]
fn antiderivative(u: &[f64], cum: &[f64], dx: f64, s: f64) -> f64 {
    let last = u.len() - 1;
    if s <= 0.0 {
        return 0.0;
    }
    if s >= last as f64 {
        return cum[last];
    }
    let j = s.floor() as usize;
    let t = s - j as f64;
    cum[j] + dx * t * (u[j] + 0.5 * (u[j + 1] - u[j]) * t)
}

/// Unit-window integrals of the piecewise-linear interpolant of `u` at every node,
/// treating `u` as zero outside the grid.
pub fn window_integrals(u: &[f64], dx: f64, out: &mut [f64]) {
    let n = u.len();
    let mut cum = vec![0.0; n];
    for j in 1..n {
        cum[j] = cum[j - 1] + 0.5 * dx * (u[j - 1] + u[j]);
    }
    let w = TopHatKernel::HALF_WIDTH / dx;
    for (i, o) in out.iter_mut().enumerate() {
        let s = i as f64;
        *o = antiderivative(u, &cum, dx, s + w) - antiderivative(u, &cum, dx, s - w);
    }
}

/// Non-periodic top-hat convolution by exact integration of the linear interpolant.
pub fn convolve_trapezium(f: &Field, k: &TopHatKernel) -> Result<Field> {
    let g = f.grid;
    if g.span() < 2.0 * k.half_width() {
        return Err(Error::GridTooSmall);
    }
    let u = f.u_values();
    let mut out = vec![0.0; g.n];
    window_integrals(&u, g.dx, &mut out);
    Ok(Field {
        grid: Grid1D {
            periodic: false,
            ..g
        },
        values: out,
        representation: Representation::U,
    })
}

/// Reusable spectral convolver for a fixed periodic grid.
pub struct PeriodicConvolver {
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    symbol: Vec<f64>,
    buffer: Vec<Complex64>,
    scratch: Vec<Complex64>,
}

impl PeriodicConvolver {
    pub fn new(n: usize, dx: f64) -> Result<Self> {
        let period = n as f64 * dx;
        if period < 2.0 * TopHatKernel::HALF_WIDTH {
            return Err(Error::PeriodTooShort);
        }
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(n);
        let inverse = planner.plan_fft_inverse(n);
        let k = TopHatKernel;
        let symbol = (0..n)
            .map(|j| {
                let m = if j <= n / 2 {
                    j as f64
                } else {
                    j as f64 - n as f64
                };
                k.symbol(m, period) / n as f64
            })
            .collect();
        let len = forward
            .get_inplace_scratch_len()
            .max(inverse.get_inplace_scratch_len());
        Ok(Self {
            forward,
            inverse,
            symbol,
            buffer: vec![Complex64::new(0.0, 0.0); n],
            scratch: vec![Complex64::new(0.0, 0.0); len],
        })
    }

    /// Writes `φ*u` for nodal values `u` into `out`.
    pub fn apply(&mut self, u: &[f64], out: &mut [f64]) {
        for (b, &v) in self.buffer.iter_mut().zip(u) {
            *b = Complex64::new(v, 0.0);
        }
        self.forward
            .process_with_scratch(&mut self.buffer, &mut self.scratch);
        for (b, s) in self.buffer.iter_mut().zip(&self.symbol) {
            *b *= *s;
        }
        self.inverse
            .process_with_scratch(&mut self.buffer, &mut self.scratch);
        for (o, b) in out.iter_mut().zip(&self.buffer) {
            *o = b.re;
        }
    }
}

/// Periodic top-hat convolution with the exact kernel symbol.
pub fn convolve_periodic(f: &Field, _k: &TopHatKernel) -> Result<Field> {
    let g = f.grid;
    if !g.periodic {
        return domain("convolve_periodic requires a periodic grid");
    }
    let mut conv = PeriodicConvolver::new(g.n, g.dx)?;
    let u = f.u_values();
    let mut out = vec![0.0; g.n];
    conv.apply(&u, &mut out);
    Ok(Field {
        grid: g,
        values: out,
        representation: Representation::U,
    })
}
