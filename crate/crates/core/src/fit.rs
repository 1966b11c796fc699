//! Small least-squares fits used by the diagnostics.

use num_complex::Complex64;

/// Straight-line fit `y ≈ slope·x + intercept`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    pub rss: f64,
}

pub fn linear_fit(x: &[f64], y: &[f64]) -> Option<LineFit> {
    let n = x.len();
    if n < 2 || y.len() != n {
        return None;
    }
    let mx = x.iter().sum::<f64>() / n as f64;
    let my = y.iter().sum::<f64>() / n as f64;
    let sxx: f64 = x.iter().map(|&v| (v - mx) * (v - mx)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = x.iter().zip(y).map(|(&a, &b)| (a - mx) * (b - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss = x
        .iter()
        .zip(y)
        .map(|(&a, &b)| (b - slope * a - intercept).powi(2))
        .sum();
    Some(LineFit {
        slope,
        intercept,
        rss,
    })
}

/// Least squares `y ≈ Σ c_k·cols[k]` by modified Gram-Schmidt.
/// Returns coefficients and the residual sum of squares.
pub fn lstsq(cols: &[Vec<f64>], y: &[f64]) -> Option<(Vec<f64>, f64)> {
    let m = cols.len();
    let n = y.len();
    if m == 0 || n < m || cols.iter().any(|c| c.len() != n) {
        return None;
    }
    let mut q: Vec<Vec<f64>> = cols.to_vec();
    let mut r = vec![vec![0.0; m]; m];
    for k in 0..m {
        for j in 0..k {
            let d: f64 = q[j].iter().zip(&q[k]).map(|(a, b)| a * b).sum();
            r[j][k] = d;
            let qj = q[j].clone();
            for (v, w) in q[k].iter_mut().zip(&qj) {
                *v -= d * w;
            }
        }
        let norm = q[k].iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return None;
        }
        r[k][k] = norm;
        for v in q[k].iter_mut() {
            *v /= norm;
        }
    }
    let mut rhs: Vec<f64> = (0..m)
        .map(|k| q[k].iter().zip(y).map(|(a, b)| a * b).sum())
        .collect();
    for k in (0..m).rev() {
        for j in k + 1..m {
            rhs[k] -= r[k][j] * rhs[j];
        }
        rhs[k] /= r[k][k];
    }
    let rss = (0..n)
        .map(|i| {
            let model: f64 = (0..m).map(|k| rhs[k] * cols[k][i]).sum();
            (y[i] - model).powi(2)
        })
        .sum();
    Some((rhs, rss))
}

/// Order-1 linear prediction `s[k+1] ≈ p·s[k]`; returns `p`.
pub fn prony1(s: &[f64]) -> Option<f64> {
    if s.len() < 2 {
        return None;
    }
    let num: f64 = s.windows(2).map(|w| w[0] * w[1]).sum();
    let den: f64 = s[..s.len() - 1].iter().map(|v| v * v).sum();
    (den > 0.0).then(|| num / den)
}

/// Order-2 linear prediction `s[k+2] ≈ p1·s[k+1] + p2·s[k]`.
/// Returns the two roots of `r² − p1·r − p2`.
pub fn prony2(s: &[f64]) -> Option<[Complex64; 2]> {
    if s.len() < 4 {
        return None;
    }
    let n = s.len() - 2;
    let c1: Vec<f64> = s[1..n + 1].to_vec();
    let c0: Vec<f64> = s[..n].to_vec();
    let (p, _) = lstsq(&[c1, c0], &s[2..])?;
    let disc = Complex64::new(p[0] * p[0] + 4.0 * p[1], 0.0).sqrt();
    Some([(p[0] + disc) / 2.0, (p[0] - disc) / 2.0])
}
