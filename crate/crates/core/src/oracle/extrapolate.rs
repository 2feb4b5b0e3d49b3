//! Polynomial extrapolation of W_N in 1/N toward the continuum.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

/// Largest polynomial degree in 1/N.
pub const MAX_DEGREE: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlicedValue {
    pub n: usize,
    pub value: f64,
    /// 0 for deterministic values
    pub stderr: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Extrapolation {
    pub limit: f64,
    /// √(stderr² + systematic²), systematic = max(loo_spread, order_change);
    /// raised to the last step when the sequence is not monotone
    pub error_estimate: f64,
    /// statistical error propagated through the fit
    pub stderr: f64,
    /// largest change of the limit when one point is left out
    pub loo_spread: f64,
    /// |limit − limit of the fit one degree lower|
    pub order_change: f64,
    pub degree: usize,
    pub monotone: bool,
    /// limit = Σ λ_i value_i
    pub lambdas: Vec<f64>,
}

/// Least squares by Householder QR; returns the intercept.
fn intercept(h: &[f64], y: &[f64], degree: usize) -> f64 {
    let rows = h.len();
    let cols = degree + 1;
    let mut a: Vec<Vec<f64>> = (0..rows)
        .map(|r| {
            let mut row: Vec<f64> = (0..cols).map(|k| h[r].powi(k as i32)).collect();
            row.push(y[r]);
            row
        })
        .collect();
    for k in 0..cols {
        let norm = (k..rows).map(|r| a[r][k] * a[r][k]).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let alpha = if a[k][k] > 0.0 { -norm } else { norm };
        let mut v: Vec<f64> = (k..rows).map(|r| a[r][k]).collect();
        v[0] -= alpha;
        let vv: f64 = v.iter().map(|x| x * x).sum();
        if vv == 0.0 {
            continue;
        }
        for c in k..=cols {
            let dot: f64 = (k..rows).map(|r| v[r - k] * a[r][c]).sum();
            let f = 2.0 * dot / vv;
            for r in k..rows {
                a[r][c] -= f * v[r - k];
            }
        }
    }
    let mut coef = vec![0.0; cols];
    for k in (0..cols).rev() {
        let mut s = a[k][cols];
        for j in k + 1..cols {
            s -= a[k][j] * coef[j];
        }
        coef[k] = s / a[k][k];
    }
    coef[0]
}

fn fit(points: &[SlicedValue], degree: usize) -> (f64, Vec<f64>, f64) {
    let h: Vec<f64> = points.iter().map(|p| 1.0 / p.n as f64).collect();
    let y: Vec<f64> = points.iter().map(|p| p.value).collect();
    let limit = intercept(&h, &y, degree);
    let lambdas: Vec<f64> = (0..points.len())
        .map(|i| {
            let mut e = vec![0.0; points.len()];
            e[i] = 1.0;
            intercept(&h, &e, degree)
        })
        .collect();
    let stderr = lambdas
        .iter()
        .zip(points)
        .map(|(l, p)| (l * p.stderr).powi(2))
        .sum::<f64>()
        .sqrt();
    (limit, lambdas, stderr)
}

/// Unweighted least-squares polynomial of degree min(3, n−2) in 1/N,
/// evaluated at 1/N = 0. The systematic error is the larger of the
/// leave-one-out spread and the change from the fit one degree lower; the
/// standard errors are propagated through the linear fit.
pub fn continuum_extrapolate(values: &[SlicedValue]) -> Result<Extrapolation> {
    if values.len() < 3 {
        return Err(Error::Size(alloc::format!("extrapolation needs at least 3 values, got {}", values.len())));
    }
    let mut pts = values.to_vec();
    pts.sort_by_key(|p| p.n);
    if pts.windows(2).any(|w| w[0].n == w[1].n) || pts[0].n == 0 {
        return Err(Error::Domain("slice counts must be positive and distinct".into()));
    }
    if pts.iter().any(|p| !p.value.is_finite() || !(p.stderr >= 0.0)) {
        return Err(Error::Domain("values must be finite with non-negative stderr".into()));
    }
    let degree = MAX_DEGREE.min(pts.len() - 2);
    let (limit, lambdas, stderr) = fit(&pts, degree);
    let mut loo_spread = 0.0f64;
    for skip in 0..pts.len() {
        let rest: Vec<SlicedValue> = pts.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, p)| *p).collect();
        let d = degree.min(rest.len() - 1);
        loo_spread = loo_spread.max((fit(&rest, d).0 - limit).abs());
    }
    let order_change = if degree > 0 { (fit(&pts, degree - 1).0 - limit).abs() } else { 0.0 };
    let steps: Vec<f64> = pts.windows(2).map(|w| w[1].value - w[0].value).collect();
    let monotone = steps.iter().all(|d| *d >= 0.0) || steps.iter().all(|d| *d <= 0.0);
    let mut error_estimate = stderr.hypot(loo_spread.max(order_change));
    if !monotone {
        error_estimate = error_estimate.max(steps[steps.len() - 1].abs());
    }
    // lambdas back in the caller's order
    let mut ordered = vec![0.0; values.len()];
    for (p, l) in pts.iter().zip(&lambdas) {
        let k = values.iter().position(|v| v.n == p.n).unwrap_or(0);
        ordered[k] = *l;
    }
    Ok(Extrapolation {
        limit,
        error_estimate,
        stderr,
        loo_spread,
        order_change,
        degree,
        monotone,
        lambdas: ordered,
    })
}
