//! Linear solvers and a damped Newton driver shared by the boundary-value solvers.

use faer::prelude::*;
use faer::Mat;

use crate::error::{Error, Result};

/// Solve `A x = b` with a partially pivoted LU factorisation.
pub fn solve_dense(a: &Mat<f64>, b: &[f64]) -> Option<Vec<f64>> {
    let n = b.len();
    let rhs = Mat::<f64>::from_fn(n, 1, |i, _| b[i]);
    let x = a.partial_piv_lu().solve(&rhs);
    let out: Vec<f64> = (0..n).map(|i| x[(i, 0)]).collect();
    out.iter().all(|v| v.is_finite()).then_some(out)
}

/// Thomas algorithm for a tridiagonal system; `lower[0]` and `upper[n-1]` are ignored.
pub fn solve_tridiagonal(lower: &[f64], diag: &[f64], upper: &[f64], rhs: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    let mut beta = diag[0];
    c[0] = upper[0] / beta;
    d[0] = rhs[0] / beta;
    for i in 1..n {
        beta = diag[i] - lower[i] * c[i - 1];
        c[i] = if i + 1 < n { upper[i] / beta } else { 0.0 };
        d[i] = (rhs[i] - lower[i] * d[i - 1]) / beta;
    }
    for i in (0..n - 1).rev() {
        d[i] -= c[i] * d[i + 1];
    }
    d
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Right-preconditioned restarted GMRES for `A x = b` starting from zero.
///
/// Returns the solution when the relative residual drops below `rtol`.
pub fn gmres<A, M>(
    apply: A,
    precond: M,
    b: &[f64],
    rtol: f64,
    restart: usize,
    max_iter: usize,
) -> Option<Vec<f64>>
where
    A: Fn(&[f64]) -> Vec<f64>,
    M: Fn(&[f64]) -> Vec<f64>,
{
    let n = b.len();
    let bnorm = norm(b);
    let mut x = vec![0.0; n];
    if bnorm == 0.0 {
        return Some(x);
    }
    let mut total = 0;
    while total < max_iter {
        let ax = apply(&x);
        let r: Vec<f64> = b.iter().zip(&ax).map(|(p, q)| p - q).collect();
        let beta = norm(&r);
        if beta <= rtol * bnorm {
            return Some(x);
        }
        let mut v: Vec<Vec<f64>> = vec![r.iter().map(|t| t / beta).collect()];
        let mut z: Vec<Vec<f64>> = Vec::new();
        let mut h = vec![vec![0.0; restart]; restart + 1];
        let (mut cs, mut sn) = (vec![0.0; restart], vec![0.0; restart]);
        let mut g = vec![0.0; restart + 1];
        g[0] = beta;
        let mut k_used = 0;
        for k in 0..restart {
            total += 1;
            let zk = precond(&v[k]);
            let mut w = apply(&zk);
            z.push(zk);
            for j in 0..=k {
                h[j][k] = dot(&w, &v[j]);
                for (wi, vi) in w.iter_mut().zip(&v[j]) {
                    *wi -= h[j][k] * vi;
                }
            }
            h[k + 1][k] = norm(&w);
            for j in 0..k {
                let t = cs[j] * h[j][k] + sn[j] * h[j + 1][k];
                h[j + 1][k] = -sn[j] * h[j][k] + cs[j] * h[j + 1][k];
                h[j][k] = t;
            }
            let rho = (h[k][k] * h[k][k] + h[k + 1][k] * h[k + 1][k]).sqrt();
            if rho == 0.0 {
                return None;
            }
            cs[k] = h[k][k] / rho;
            sn[k] = h[k + 1][k] / rho;
            h[k][k] = rho;
            h[k + 1][k] = 0.0;
            g[k + 1] = -sn[k] * g[k];
            g[k] *= cs[k];
            k_used = k + 1;
            let hk1 = norm(&w);
            if g[k + 1].abs() <= rtol * bnorm || total >= max_iter || hk1 == 0.0 {
                break;
            }
            v.push(w.iter().map(|t| t / hk1).collect());
        }
        let mut y = vec![0.0; k_used];
        for i in (0..k_used).rev() {
            let mut s = g[i];
            for j in i + 1..k_used {
                s -= h[i][j] * y[j];
            }
            y[i] = s / h[i][i];
        }
        for (j, yj) in y.iter().enumerate() {
            for (xi, zi) in x.iter_mut().zip(&z[j]) {
                *xi += yj * zi;
            }
        }
    }
    let ax = apply(&x);
    let res: Vec<f64> = b.iter().zip(&ax).map(|(p, q)| p - q).collect();
    (norm(&res) <= rtol * bnorm).then_some(x)
}

/// Settings for [`damped_newton`].
#[derive(Debug, Clone, Copy)]
pub struct NewtonOptions {
    /// Convergence threshold on the residual max-norm.
    pub tol: f64,
    pub max_iter: usize,
    /// Step halvings allowed when the full step increases the residual.
    pub max_halvings: usize,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_iter: 50,
            max_halvings: 8,
        }
    }
}

/// Outcome of a converged Newton solve.
#[derive(Debug, Clone, PartialEq)]
pub struct NewtonReport {
    pub iterations: usize,
    pub residual: f64,
    pub history: Vec<f64>,
}

/// A nonlinear system `R(x) = 0` with a linearised solve.
pub trait NewtonProblem {
    fn residual(&self, x: &[f64]) -> Vec<f64>;
    /// Returns `δ` with `J(x) δ = −r`.
    fn newton_step(&self, x: &[f64], r: &[f64]) -> Option<Vec<f64>>;
}

pub fn max_norm(v: &[f64]) -> f64 {
    v.iter().fold(
        0.0f64,
        |m, x| if x.is_nan() { f64::NAN } else { m.max(x.abs()) },
    )
}

/// Damped Newton iteration with step halving on residual increase.
pub fn damped_newton<P: NewtonProblem + ?Sized>(
    problem: &P,
    x: &mut [f64],
    opts: NewtonOptions,
) -> Result<NewtonReport> {
    let mut r = problem.residual(x);
    let mut rn = max_norm(&r);
    let mut history = vec![rn];
    let fail = |it: usize, res: f64, history: Vec<f64>| Error::NewtonFailure {
        iterations: it,
        residual: res,
        history,
    };
    for it in 0..opts.max_iter {
        if !rn.is_finite() {
            return Err(fail(it, rn, history));
        }
        if rn < opts.tol {
            return Ok(NewtonReport {
                iterations: it,
                residual: rn,
                history,
            });
        }
        let delta = problem
            .newton_step(x, &r)
            .ok_or_else(|| fail(it, rn, history.clone()))?;
        let mut s = 1.0;
        let mut accepted = None;
        for _ in 0..=opts.max_halvings {
            let trial: Vec<f64> = x.iter().zip(&delta).map(|(a, d)| a + s * d).collect();
            let rt = problem.residual(&trial);
            let rtn = max_norm(&rt);
            if rtn.is_finite() && rtn < rn {
                accepted = Some((trial, rt, rtn));
                break;
            }
            s *= 0.5;
        }
        let Some((trial, rt, rtn)) = accepted else {
            return Err(fail(it + 1, rn, history));
        };
        x.copy_from_slice(&trial);
        r = rt;
        rn = rtn;
        history.push(rn);
    }
    if rn < opts.tol {
        return Ok(NewtonReport {
            iterations: opts.max_iter,
            residual: rn,
            history,
        });
    }
    Err(fail(opts.max_iter, rn, history))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dense_solve_small() {
        let a = Mat::<f64>::from_fn(3, 3, |i, j| if i == j { 4.0 } else { 1.0 });
        let x = solve_dense(&a, &[6.0, 6.0, 6.0]).unwrap();
        for v in x {
            assert!((v - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn tridiagonal_matches_dense() {
        let n = 6;
        let lower: Vec<f64> = (0..n).map(|i| 0.3 + i as f64 * 0.1).collect();
        let upper: Vec<f64> = (0..n).map(|i| -0.7 + i as f64 * 0.05).collect();
        let diag = vec![3.0; n];
        let rhs: Vec<f64> = (0..n).map(|i| (i as f64).sin()).collect();
        let a = Mat::<f64>::from_fn(n, n, |i, j| {
            if i == j {
                diag[i]
            } else if j + 1 == i {
                lower[i]
            } else if i + 1 == j {
                upper[i]
            } else {
                0.0
            }
        });
        let x1 = solve_tridiagonal(&lower, &diag, &upper, &rhs);
        let x2 = solve_dense(&a, &rhs).unwrap();
        for (p, q) in x1.iter().zip(&x2) {
            assert!((p - q).abs() < 1e-13);
        }
    }

    #[test]
    fn gmres_solves_nonsymmetric() {
        let n = 40;
        let apply = |v: &[f64]| -> Vec<f64> {
            (0..n)
                .map(|i| {
                    let mut s = 4.0 * v[i];
                    if i > 0 {
                        s -= v[i - 1];
                    }
                    if i + 1 < n {
                        s -= 2.0 * v[i + 1];
                    }
                    s + 0.01 * v.iter().sum::<f64>()
                })
                .collect()
        };
        let b: Vec<f64> = (0..n).map(|i| (i as f64 * 0.3).cos()).collect();
        let x = gmres(apply, |v: &[f64]| v.to_vec(), &b, 1e-12, 30, 500).unwrap();
        let ax = apply(&x);
        for (p, q) in ax.iter().zip(&b) {
            assert!((p - q).abs() < 1e-10);
        }
    }

    struct Quadratic;
    impl NewtonProblem for Quadratic {
        fn residual(&self, x: &[f64]) -> Vec<f64> {
            vec![x[0] * x[0] - 2.0, x[1] - x[0]]
        }
        fn newton_step(&self, x: &[f64], r: &[f64]) -> Option<Vec<f64>> {
            let d0 = -r[0] / (2.0 * x[0]);
            Some(vec![d0, -r[1] + d0])
        }
    }

    #[test]
    fn newton_converges() {
        let mut x = vec![3.0, 0.0];
        let rep = damped_newton(&Quadratic, &mut x, NewtonOptions::default()).unwrap();
        assert!((x[0] - 2f64.sqrt()).abs() < 1e-12 && rep.residual < 1e-10);
    }
}
