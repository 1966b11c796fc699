//! Acceptance suite. Prints one PASS/FAIL line per check and a summary.
//! Exits non-zero on failure only when `NLFKPP_ACCEPTANCE_STRICT=1`.

use std::f64::consts::PI;
use std::time::Instant;

use nlfkpp::asymptote;
use nlfkpp::cli;
use nlfkpp::dispersion;
use nlfkpp::evolve::{self, Equilibrium, EvolveConfig, EvolveOutput, InitialData, Scheme};
use nlfkpp::kernel::{convolve_periodic, Field, Grid1D, Representation, TopHatKernel};
use nlfkpp::roots;
use nlfkpp::steady;
use nlfkpp::travwave::{self, TailClass, TwConfig};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rayon::prelude::*;

#[derive(Default)]
struct Suite {
    passed: usize,
    failed: Vec<String>,
}

impl Suite {
    fn check(&mut self, name: &str, pass: bool, detail: impl std::fmt::Display) {
        println!("{} {name}: {detail}", if pass { "PASS" } else { "FAIL" });
        if pass {
            self.passed += 1;
        } else {
            self.failed.push(name.to_string());
        }
    }

    fn timed(&mut self, name: &str, budget_s: f64, start: Instant) {
        let t = start.elapsed().as_secs_f64();
        self.check(
            &format!("{name} runtime"),
            t <= budget_s,
            format!("{t:.1} s (budget {budget_s} s)"),
        );
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a / b - 1.0).abs()
}

fn constants(s: &mut Suite) {
    let start = Instant::now();
    let (d1, _) = dispersion::delta_max(1).unwrap();
    s.check("C1 Delta_1", (d1 - 0.00297).abs() <= 2e-5, format!("{d1}"));

    let k0 = dispersion::k0();
    let g = |k: f64| (0.5 * k).tan() - 0.5 * k;
    let refined = roots::bisect(g, 2.0 * PI + 1e-3, 3.0 * PI - 1e-3, 1e-14).unwrap();
    s.check(
        "C1 k_0",
        k0 > 2.0 * PI && k0 < 3.0 * PI && g(k0).abs() < 1e-10 && (k0 - refined).abs() < 1e-10,
        format!("{k0}, residual {:e}, refined {refined}", g(k0)),
    );

    let (sp, dp) = travwave::find_oscillation_threshold().unwrap();
    s.check(
        "C1 (sigma_+, D_+)",
        (sp - 4.437).abs() <= 1e-3 && (dp - 2.824e-2).abs() <= 1e-3,
        format!("({sp}, {dp})"),
    );

    let (i_t, v_t) = (asymptote::sech2_eigenvalue(), asymptote::sech2_limit(0.0));
    s.check(
        "C1 closed-form spike",
        rel(i_t, 1.0 / 72.0) < 1e-14 && rel(v_t, 1.0 / 48.0) < 1e-14,
        format!("I = {i_t}, v(0) = {v_t}"),
    );
    let spike = asymptote::solve_spike(0.25, None).unwrap();
    let dev = asymptote::sech2_deviation(&spike);
    s.check(
        "C1 spike at lambda_bar = 0.25 vs sech2",
        dev <= 0.05,
        format!("relative max-norm {dev}"),
    );
    s.timed("C1", 5.0, start);
}

fn transition_layer(s: &mut Suite) {
    let start = Instant::now();
    let layer = asymptote::solve_transition_layer(8.0, 6.0, 4000).unwrap();
    let target = asymptote::L_STAR_REFERENCE;
    s.check(
        "C2 l*",
        rel(layer.l, target) < 0.01,
        format!("{} vs {target}", layer.l),
    );
    s.timed("C2", 30.0, start);
}

fn front(out: &EvolveOutput) -> f64 {
    *out.diagnostics.front_position.last().unwrap()
}

/// Returns the D = 0.001 wavelength and the D = 0.003 run for later criteria.
fn moderate(s: &mut Suite) -> (Option<f64>, EvolveOutput) {
    let start = Instant::now();
    let mut runs: Vec<(f64, EvolveOutput)> = [0.001, 0.002, 0.003]
        .par_iter()
        .map(|&d: &f64| {
            let cfg = EvolveConfig::new(d, 10.0, 1000, 4.5 / d.sqrt(), Scheme::UForm);
            (
                d,
                evolve::run(&InitialData::compact_bump(0.01).unwrap(), &cfg).unwrap(),
            )
        })
        .collect();
    for (d, out) in &runs {
        let t_end = *out.diagnostics.times.last().unwrap();
        let v = evolve::front_speed(&out.diagnostics, 0.5 * t_end, t_end).unwrap_or(f64::NAN);
        let c = 2.0 * d.sqrt();
        s.check(
            &format!("C3 front speed D = {d}"),
            rel(v, c) <= 0.05,
            format!("{v} vs {c}"),
        );
    }
    let (_, out3) = runs.pop().unwrap();
    let x = out3.final_field.grid.nodes();
    let u = out3.final_field.u_values();
    let f = front(&out3);
    let dev = x
        .iter()
        .zip(&u)
        .filter(|(x, _)| **x >= 0.0 && **x <= f - 2.0)
        .map(|(_, u)| (u - 1.0).abs())
        .fold(0.0, f64::max);
    s.check(
        "C3 trailing state D = 0.003",
        dev < 0.02,
        format!("max |u - 1| = {dev} on [0, front - 2]"),
    );
    let w1 = runs[0].1.diagnostics.wavelength.last().copied().flatten();
    s.check(
        "C3 trailing wavelength D = 0.001",
        w1.is_some_and(|w| (w - 0.7).abs() <= 0.1),
        format!("{w1:?}"),
    );
    s.timed("C3", 300.0, start);
    (w1, out3)
}

fn small_d(s: &mut Suite, w_moderate: Option<f64>) {
    let start = Instant::now();
    let d = 1e-5;
    let (cfg, out) = cli::small_d_run(d).unwrap();
    let w = out.diagnostics.wavelength.last().copied().flatten();
    s.check(
        "C4 trailing wavelength D = 1e-5",
        w.is_some_and(|w| (0.5..=0.62).contains(&w) && w_moderate.is_some_and(|m| w < m)),
        format!("{w:?} (D = 0.001: {w_moderate:?})"),
    );
    let dev = cli::predictor_deviation(&out.diagnostics, d, cfg.t_end).unwrap();
    s.check(
        "C4 front vs x_f over final third",
        dev <= 0.03,
        format!("largest relative gap {dev}"),
    );
    s.timed("C4", 1200.0, start);
}

fn steady_states(s: &mut Suite) {
    let start = Instant::now();
    let (lambda, d) = (0.75, 1e-6);
    let st = steady::solve_at(lambda, d, 1500, steady::Seed::WeaklyNonlinear).unwrap();
    let amp = 2.0 * PI;
    s.check(
        "C5 u_max at (3/4, 1e-6)",
        rel(st.u_max, amp) <= 0.03,
        format!(
            "{} vs {amp} ({:+.2}%)",
            st.u_max,
            100.0 * (st.u_max / amp - 1.0)
        ),
    );
    let mass = 1.0 - PI * PI * d / (lambda - 0.5).powi(2);
    s.check(
        "C5 period mass at (3/4, 1e-6)",
        (st.mass - mass).abs() <= 5e-5,
        format!("{} vs {mass}", st.mass),
    );
    s.timed("C5 point", 120.0, start);
    for upper in [false, true] {
        let (p, _) = steady::fit_bifurcation_exponent(1, 1e-3, 256, upper).unwrap();
        let edge = if upper { "lambda_+" } else { "lambda_-" };
        s.check(
            &format!("C5 bifurcation exponent at {edge}"),
            (p - 0.5).abs() <= 0.05,
            format!("{p}"),
        );
    }
}

fn spike_scaling(s: &mut Suite) {
    let rows = steady::spike_scaling(10.0, &[1e-3, 1e-4, 1e-5]).unwrap();
    let vals: Vec<f64> = rows.iter().map(|r| r.1).collect();
    let (lo, hi) = vals
        .iter()
        .fold((f64::MAX, f64::MIN), |(a, b), v| (a.min(*v), b.max(*v)));
    s.check(
        "C6 u_max sqrt(D) constant",
        hi / lo - 1.0 <= 0.1,
        format!("{rows:?}"),
    );
    let v0 = asymptote::solve_spike(10.0, None).unwrap().v0;
    let worst = vals.iter().map(|v| rel(*v, v0)).fold(0.0, f64::max);
    s.check(
        "C6 agreement with spike solve",
        worst <= 0.05,
        format!("v(0) = {v0}, largest relative gap {worst}"),
    );
}

fn travelling_waves(s: &mut Suite, out3: &EvolveOutput) {
    let grid = travwave::log_grid(0.005, 0.1, 12);
    let classes: Vec<TailClass> = grid
        .par_iter()
        .map(|&d| {
            travwave::solve_tptw(d, 2.0 * d.sqrt(), &TwConfig::for_diffusivity(d))
                .unwrap()
                .tail_class
        })
        .collect();
    let flips = classes.windows(2).filter(|w| w[0] != w[1]).count();
    s.check(
        "C7 tail class flips once",
        flips == 1,
        format!("{classes:?}"),
    );

    let d = 0.01f64;
    let p = travwave::solve_tptw(d, 2.0 * d.sqrt(), &TwConfig::for_diffusivity(d)).unwrap();
    let s1 = travwave::sigma_path(1, &travwave::log_grid(1e-6, d, 60))
        .unwrap()
        .samples
        .last()
        .unwrap()
        .1;
    s.check(
        "C7 rear frequency D = 0.01",
        rel(p.rear_frequency, s1.im) <= 0.05,
        format!("{} vs {}", p.rear_frequency, s1.im),
    );

    let d = 0.003f64;
    let tw = travwave::solve_tptw(d, 2.0 * d.sqrt(), &TwConfig::for_diffusivity(d)).unwrap();
    let x = out3.final_field.grid.nodes();
    let dev = cli::front_shape_deviation(&x, &out3.final_field.u_values(), front(out3), &tw);
    s.check(
        "C7 wave vs evolution D = 0.003",
        dev < 0.05,
        format!("max-norm {dev}"),
    );
}

fn properties(s: &mut Suite) {
    let start = Instant::now();
    let mut runner = TestRunner::new(Config {
        cases: 64,
        failure_persistence: None,
        ..Config::default()
    });
    let strategy = (
        proptest::collection::vec(0.0f64..5.0, 64..200),
        0usize..64,
        1.5f64..8.0,
    );
    let conv = runner.run(&strategy, |(raw, shift, period)| {
        let n = raw.len();
        let grid = Grid1D::new(0.0, period / n as f64, n, true).unwrap();
        let g = convolve_periodic(
            &Field::new(grid, raw.clone(), Representation::U).unwrap(),
            &TopHatKernel,
        )
        .unwrap();
        let scale = raw.iter().sum::<f64>() / n as f64;
        let mean_g = g.values.iter().sum::<f64>() / n as f64;
        prop_assert!((scale - mean_g).abs() <= 1e-12 * scale.max(1.0));
        prop_assert!(g.values.iter().all(|v| *v >= -1e-12 * scale.max(1.0)));
        let k = shift % n;
        let shifted: Vec<f64> = (0..n).map(|i| raw[(i + n - k) % n]).collect();
        let gs = convolve_periodic(
            &Field::new(grid, shifted, Representation::U).unwrap(),
            &TopHatKernel,
        )
        .unwrap();
        for i in 0..n {
            prop_assert!(
                (gs.values[i] - g.values[(i + n - k) % n]).abs() <= 1e-12 * scale.max(1.0)
            );
        }
        Ok(())
    });
    s.check(
        "C8 convolution mass/positivity/equivariance",
        conv.is_ok(),
        format!("{conv:?}"),
    );

    let zeros = (1..=20)
        .map(|n| dispersion::delta_of(2.0 * PI * n as f64).unwrap().abs())
        .fold(0.0, f64::max);
    let maxima: Vec<f64> = (1..=10)
        .map(|r| dispersion::delta_max(r).unwrap().0)
        .collect();
    s.check(
        "C8 Delta zeros and decreasing maxima",
        zeros < 1e-12 && maxima.windows(2).all(|w| w[1] < w[0] && w[1] > 0.0),
        format!("largest |Delta(2n pi)| = {zeros:e}"),
    );

    let (km, wm) = dispersion::most_unstable_k(0.002).unwrap();
    let cases = [
        (1.0, 0.01, Equilibrium::Zero, -dispersion::w0(1.0, 0.01)),
        (3.0, 0.01, Equilibrium::Zero, -dispersion::w0(3.0, 0.01)),
        (km, 0.002, Equilibrium::One, -wm),
    ];
    let worst = cases
        .par_iter()
        .map(|&(k, d, e, target)| rel(evolve::measure_growth_rate(k, d, e).unwrap(), target))
        .reduce(|| 0.0, f64::max);
    s.check(
        "C8 growth rates vs linear theory",
        worst <= 0.02,
        format!("largest relative gap {worst}"),
    );

    let pts = steady::continue_branch(1, 2e-3, 40, 256).unwrap();
    let bad: Vec<f64> = pts
        .iter()
        .filter(|b| b.converged)
        .filter_map(|b| {
            let st = steady::solve_at(b.lambda, b.d, 256, steady::Seed::WeaklyNonlinear).ok()?;
            let ok = st.min() > 0.0 && st.u_max > 1.0 && st.min() < 1.0;
            (!ok).then_some(b.lambda)
        })
        .collect();
    let n_conv = pts.iter().filter(|b| b.converged).count();
    s.check(
        "C8 B1-B3 on converged branch states",
        bad.is_empty() && n_conv > 0,
        format!("{n_conv} states, violations at {bad:?}"),
    );

    let grid = travwave::log_grid(1e-6, 10.0, 80);
    let paths = travwave::sigma_paths(&[3, -3, 4, -4], &grid).unwrap();
    let mut asym: f64 = 0.0;
    for n in [3, 4] {
        let a = paths.iter().find(|p| p.n == n).unwrap();
        let b = paths.iter().find(|p| p.n == -n).unwrap();
        for (x, y) in a.samples.iter().zip(&b.samples) {
            asym = asym.max((x.1 - y.1.conj()).norm() / (1.0 + x.1.norm()));
        }
    }
    s.check(
        "C8 sigma-path conjugate symmetry",
        asym < 1e-10,
        format!("largest relative gap {asym:e}"),
    );
    s.timed("C8", 60.0, start);
}

fn main() {
    let mut s = Suite::default();
    constants(&mut s);
    transition_layer(&mut s);
    let (w_moderate, out3) = moderate(&mut s);
    small_d(&mut s, w_moderate);
    steady_states(&mut s);
    spike_scaling(&mut s);
    travelling_waves(&mut s, &out3);
    properties(&mut s);
    println!("\n{} passed, {} failed", s.passed, s.failed.len());
    for f in &s.failed {
        println!("  failed: {f}");
    }
    if std::env::var("NLFKPP_ACCEPTANCE_STRICT").as_deref() == Ok("1") && !s.failed.is_empty() {
        std::process::exit(1);
    }
}
