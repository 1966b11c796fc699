use std::f64::consts::PI;

use nlfkpp::dispersion::tongue_boundaries;
use nlfkpp::steady::*;

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

fn assert_bounds(s: &PeriodicState) {
    assert!(s.min() > 0.0, "B1 at λ={}", s.lambda);
    assert!(s.u_max > 1.0, "B2 at λ={}", s.lambda);
    assert!(s.min() < 1.0, "B3 at λ={}", s.lambda);
}

#[test]
fn trivial_state_has_zero_residual() {
    for &(lambda, d, n) in &[
        (0.75, 1e-3, 64),
        (0.6, 2e-4, 257),
        (0.3, 1e-5, 300),
        (1.7, 0.05, 101),
    ] {
        let s = PeriodicState::from_profile(lambda, d, vec![1.0; n]);
        assert_eq!(max_abs(&residual(&s)), 0.0);
    }
}

#[test]
fn neutral_mode_is_nearly_stationary() {
    let d = 1e-3;
    let (_, lp) = tongue_boundaries(1, d).unwrap();
    let n = 512;
    let h = 0.5 * lp / (n - 1) as f64;
    let f: Vec<f64> = (0..n)
        .map(|j| 1.0 + 1e-6 * (2.0 * PI * j as f64 * h / lp).cos())
        .collect();
    let r = max_abs(&residual(&PeriodicState::from_profile(lp, d, f)));
    // Quadratic term is 1e-12; the linear part only sees the O(h²) truncation error.
    assert!(r < 1e-10, "{r}");
}

fn subsample(f: &[f64], stride: usize) -> Vec<f64> {
    f.iter().step_by(stride).cloned().collect()
}

#[test]
fn truncation_error_is_second_order() {
    let (lambda, d) = (0.75, 1e-4);
    let fine = solve_at(lambda, d, 4 * 256 - 3, Seed::WeaklyNonlinear).unwrap();
    let r1 = max_abs(&residual(&PeriodicState::from_profile(
        lambda,
        d,
        subsample(&fine.half_profile, 4),
    )));
    let r2 = max_abs(&residual(&PeriodicState::from_profile(
        lambda,
        d,
        subsample(&fine.half_profile, 2),
    )));
    let ratio = r1 / r2;
    assert!(ratio > 3.0 && ratio < 5.0, "ratio {ratio}");
}

#[test]
fn converged_state_properties() {
    let s = solve_at(0.75, 1e-3, 512, Seed::WeaklyNonlinear).unwrap();
    assert_bounds(&s);
    assert!(s.residual < 1e-9);
    let (x, f) = s.full_period();
    let m = f.len();
    for k in 0..m {
        assert_eq!(f[k], f[m - 1 - k]);
        assert!((x[k] + x[m - 1 - k]).abs() < 1e-15);
    }
    let p = &s.half_profile;
    let h = s.h();
    let n = p.len();
    let scale = s.alpha / s.lambda;
    let left = (-3.0 * p[0] + 4.0 * p[1] - p[2]) / (2.0 * h);
    let right = (3.0 * p[n - 1] - 4.0 * p[n - 2] + p[n - 3]) / (2.0 * h);
    assert!(
        left.abs() < 1e-3 * scale && right.abs() < 1e-3 * scale,
        "{left} {right}"
    );
}

#[test]
fn outside_tongue_is_rejected_and_collapses() {
    assert!(solve_at(0.75, 0.01, 256, Seed::WeaklyNonlinear).is_err());
    let d = 1e-3;
    let (lm, lp) = tongue_boundaries(1, d).unwrap();
    let mut points: Vec<(f64, f64)> = (0..5).map(|j| (0.55 + 0.1 * j as f64, 0.004)).collect();
    // Outside tongue 1 but over its base interval 1/λ ∈ (1, 2).
    points.extend([
        (lm - 0.01, d),
        (0.5 * (0.5 + lm), d),
        (lp + 0.01, d),
        (0.5 * (lp + 1.0), d),
        (0.99, d),
    ]);
    for (lambda, d) in points {
        let s = newton_solve(lambda, d, weakly_nonlinear_seed(lambda, d, 256)).unwrap();
        // Trivial up to the discretisation floor used by the solver.
        assert!(
            s.alpha < 10.0 * s.h() * s.h(),
            "λ={lambda} D={d}: α={}",
            s.alpha
        );
        assert!((s.u_max - 1.0).abs() < 1e-6);
    }
}

#[test]
fn no_second_state_from_varied_seeds() {
    let (lambda, d, n) = (0.75, 1e-3, 256);
    let reference = solve_at(lambda, d, n, Seed::WeaklyNonlinear).unwrap();
    let h = 0.5 * lambda / (n - 1) as f64;
    for (a, b) in [(0.5, 0.0), (1.5, 0.3), (3.0, -0.5), (0.2, 0.1), (2.0, 1.0)] {
        let seed: Vec<f64> = (0..n)
            .map(|j| {
                let th = 2.0 * PI * j as f64 * h / lambda;
                (1.0 + a * th.cos() + b * (2.0 * th).cos()).max(0.05)
            })
            .collect();
        if let Ok(s) = newton_solve(lambda, d, seed) {
            let trivial = s.alpha < 1e-8;
            let same = (s.alpha - reference.alpha).abs() < 1e-6;
            // A shift by half a period is the same state seen from its trough.
            let shifted = (s.u_max - reference.u_max).abs() < 1e-6
                && (s.min() - reference.min()).abs() < 1e-6;
            assert!(trivial || same || shifted, "a={a} b={b}: α={}", s.alpha);
        }
    }
}

#[test]
fn branch_is_single_peaked() {
    let branch = continue_branch(1, 2e-3, 40, 256).unwrap();
    let pts: Vec<&BranchPoint> = branch.iter().filter(|p| p.converged).collect();
    assert!(pts.len() >= 30);
    let alphas: Vec<f64> = pts.iter().map(|p| p.alpha).collect();
    let peak = alphas
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .unwrap()
        .0;
    assert!(peak > 0 && peak < alphas.len() - 1);
    assert!(alphas[..=peak].windows(2).all(|w| w[1] > w[0]));
    assert!(alphas[peak..].windows(2).all(|w| w[1] < w[0]));
    assert!(
        alphas[0] < 0.05 && *alphas.last().unwrap() < 0.05,
        "{} {}",
        alphas[0],
        alphas.last().unwrap()
    );
    for p in &pts {
        assert!(p.u_max > 1.0);
    }
}

#[test]
fn peak_amplitude_grows_as_d_falls() {
    let peaks: Vec<f64> = [1e-3, 1e-4, 1e-5]
        .iter()
        .map(|&d| {
            let n = default_nodes(0.75, d);
            continue_branch(1, d, 12, n)
                .unwrap()
                .iter()
                .filter(|p| p.converged)
                .map(|p| p.alpha)
                .fold(0.0, f64::max)
        })
        .collect();
    assert!(peaks[1] > peaks[0] && peaks[2] > peaks[1], "{peaks:?}");
}

#[test]
fn bifurcation_is_square_root() {
    for upper in [false, true] {
        let (p, c) = fit_bifurcation_exponent(1, 1e-3, 256, upper).unwrap();
        assert!((p - 0.5).abs() < 0.05, "upper={upper}: {p}");
        assert!(c > 0.0);
    }
}

#[test]
fn spike_height_scales_with_root_d() {
    let rows = spike_scaling(10.0, &[1e-3, 1e-4]).unwrap();
    let (a, b) = (rows[0].1, rows[1].1);
    assert!((a / b - 1.0).abs() < 0.1, "{a} {b}");
}
