use std::f64::consts::PI;

use nlfkpp::kernel::{
    convolve_periodic, convolve_trapezium, Field, Grid1D, Representation, TopHatKernel,
};
use nlfkpp::Error;
use proptest::prelude::*;

fn line_field(x_left: f64, dx: f64, values: Vec<f64>) -> Field {
    let grid = Grid1D::new(x_left, dx, values.len(), false).unwrap();
    Field::new(grid, values, Representation::U).unwrap()
}

fn periodic_field(period: f64, values: Vec<f64>) -> Field {
    let n = values.len();
    let grid = Grid1D::new(0.0, period / n as f64, n, true).unwrap();
    Field::new(grid, values, Representation::U).unwrap()
}

fn cos_window(lambda: f64) -> f64 {
    lambda / PI * (PI / lambda).sin()
}

#[test]
fn constant_interior_is_one() {
    let f = line_field(-5.0, 0.01, vec![1.0; 1001]);
    let g = convolve_trapezium(&f, &TopHatKernel).unwrap();
    for i in 100..900 {
        assert!((g.values[i] - 1.0).abs() < 1e-12);
    }
}

#[test]
fn narrow_grid_is_rejected() {
    let f = line_field(0.0, 0.01, vec![1.0; 50]);
    assert_eq!(
        convolve_trapezium(&f, &TopHatKernel).unwrap_err(),
        Error::GridTooSmall
    );
    let grid = Grid1D::new(0.0, 0.01, 50, true).unwrap();
    let f = Field::new(grid, vec![1.0; 50], Representation::U).unwrap();
    assert_eq!(
        convolve_periodic(&f, &TopHatKernel).unwrap_err(),
        Error::PeriodTooShort
    );
}

fn trapezium_cos_error(dx: f64) -> f64 {
    let lambda = 0.75;
    let n = (8.0 / dx).round() as usize + 1;
    let xs: Vec<f64> = (0..n).map(|i| -4.0 + i as f64 * dx).collect();
    let f = line_field(
        -4.0,
        dx,
        xs.iter()
            .map(|x| 1.0 + (2.0 * PI * x / lambda).cos())
            .collect(),
    );
    let g = convolve_trapezium(&f, &TopHatKernel).unwrap();
    xs.iter()
        .zip(&g.values)
        .filter(|(x, _)| x.abs() < 3.0)
        .map(|(x, v)| (v - 1.0 - cos_window(lambda) * (2.0 * PI * x / lambda).cos()).abs())
        .fold(0.0, f64::max)
}

#[test]
fn trapezium_cosine_second_order() {
    let e1 = trapezium_cos_error(0.0123);
    let e2 = trapezium_cos_error(0.0123 / 2.0);
    assert!(e1 < 1e-3);
    let order = (e1 / e2).log2();
    assert!((order - 2.0).abs() < 0.2, "order {order}");
}

#[test]
fn bump_mass_matches_quadrature() {
    // Bump of support width 0.8 centred on a node: the window covers all of it.
    let dx = 1e-3;
    let n = 4001;
    let bump = |x: f64| {
        if x.abs() < 0.4 {
            (1.0 - (x / 0.4).powi(2)).powi(3)
        } else {
            0.0
        }
    };
    let f = line_field(
        -2.0,
        dx,
        (0..n).map(|i| bump(-2.0 + i as f64 * dx)).collect(),
    );
    let g = convolve_trapezium(&f, &TopHatKernel).unwrap();
    // Exact mass of (1 − s²)³ scaled to half-width 0.4 is 0.4 · 32/35.
    let mass = 0.4 * 32.0 / 35.0;
    assert!((g.values[2000] - mass).abs() < 1e-6);
}

#[test]
fn periodic_cosine_and_constant() {
    let period = 6.0;
    let n = 600;
    let lambda = 0.75;
    let xs: Vec<f64> = (0..n).map(|i| i as f64 * period / n as f64).collect();
    let f = periodic_field(
        period,
        xs.iter()
            .map(|x| 1.0 + (2.0 * PI * x / lambda).cos())
            .collect(),
    );
    let g = convolve_periodic(&f, &TopHatKernel).unwrap();
    for (x, v) in xs.iter().zip(&g.values) {
        assert!((v - 1.0 - cos_window(lambda) * (2.0 * PI * x / lambda).cos()).abs() < 1e-12);
    }
    let c = periodic_field(period, vec![2.5; n]);
    let g = convolve_periodic(&c, &TopHatKernel).unwrap();
    assert!(g.values.iter().all(|v| (v - 2.5).abs() < 1e-13));
}

#[test]
fn log_field_is_exponentiated() {
    let n = 256;
    let grid = Grid1D::new(0.0, 4.0 / n as f64, n, true).unwrap();
    let f = Field::new(grid, vec![0.0; n], Representation::LogU).unwrap();
    let g = convolve_periodic(&f, &TopHatKernel).unwrap();
    assert!(g.values.iter().all(|v| (v - 1.0).abs() < 1e-13));
}

/// Direct O(n²) discrete Fourier transform with the exact window factor
/// `sin(k/2)/(k/2)` on each mode.
fn direct_periodic(values: &[f64], period: f64) -> Vec<f64> {
    let n = values.len();
    let modes: Vec<(f64, f64)> = (0..n)
        .map(|j| {
            let m = if j <= n / 2 {
                j as f64
            } else {
                j as f64 - n as f64
            };
            let (mut re, mut im) = (0.0, 0.0);
            for (i, v) in values.iter().enumerate() {
                let th = -2.0 * PI * (j * i) as f64 / n as f64;
                re += v * th.cos();
                im += v * th.sin();
            }
            let half = PI * m / period;
            let w = if m == 0.0 { 1.0 } else { half.sin() / half };
            (re * w / n as f64, im * w / n as f64)
        })
        .collect();
    (0..n)
        .map(|i| {
            modes
                .iter()
                .enumerate()
                .map(|(j, (re, im))| {
                    let th = 2.0 * PI * (j * i) as f64 / n as f64;
                    re * th.cos() - im * th.sin()
                })
                .sum()
        })
        .collect()
}

#[test]
fn periodic_matches_direct_quadrature_on_smooth_data() {
    let n = 256;
    let period = 3.0;
    let values: Vec<f64> = (0..n)
        .map(|i| {
            let x = 2.0 * PI * i as f64 / n as f64;
            1.0 + 0.3 * x.sin() + 0.2 * (2.0 * x).cos() + 0.05 * (3.0 * x + 0.4).sin()
        })
        .collect();
    let f = periodic_field(period, values.clone());
    let g = convolve_periodic(&f, &TopHatKernel).unwrap();
    let oracle = direct_periodic(&values, period);
    for (a, b) in g.values.iter().zip(&oracle) {
        assert!((a - b).abs() <= 1e-10 * b.abs(), "{a} vs {b}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn periodic_mass_positivity_equivariance(
        raw in proptest::collection::vec(0.0f64..5.0, 64..200),
        shift in 0usize..64,
        period in 1.5f64..8.0,
    ) {
        let n = raw.len();
        let f = periodic_field(period, raw.clone());
        let g = convolve_periodic(&f, &TopHatKernel).unwrap();
        let mean_u: f64 = raw.iter().sum::<f64>() / n as f64;
        let mean_g: f64 = g.values.iter().sum::<f64>() / n as f64;
        prop_assert!((mean_u - mean_g).abs() <= 1e-12 * mean_u.max(1.0));
        prop_assert!(g.values.iter().all(|v| *v >= -1e-12 * mean_u.max(1.0)));
        let s = shift % n;
        let shifted: Vec<f64> = (0..n).map(|i| raw[(i + n - s) % n]).collect();
        let gs = convolve_periodic(&periodic_field(period, shifted), &TopHatKernel).unwrap();
        for i in 0..n {
            prop_assert!((gs.values[i] - g.values[(i + n - s) % n]).abs() <= 1e-12 * mean_u.max(1.0));
        }
    }

    #[test]
    fn trapezium_positivity(raw in proptest::collection::vec(0.0f64..3.0, 150..300)) {
        let f = line_field(0.0, 0.01, raw);
        let g = convolve_trapezium(&f, &TopHatKernel).unwrap();
        prop_assert!(g.values.iter().all(|v| *v >= 0.0));
    }
}
