//! Combinatorial helpers, gamma-function wrappers and the real Gauss
//! hypergeometric function.

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

pub fn gamma(x: f64) -> f64 {
    libm::tgamma(x)
}

pub fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}

/// n! as f64 (exact for n ≤ 22, correctly rounded products beyond).
pub fn factorial(n: usize) -> f64 {
    let mut acc = 1.0;
    for k in 2..=n {
        acc *= k as f64;
    }
    acc
}

pub fn ln_factorial(n: usize) -> f64 {
    if n < 30 {
        factorial(n).ln()
    } else {
        ln_gamma(n as f64 + 1.0)
    }
}

/// Exact binomial coefficient, `None` on u64 overflow.
pub fn binomial_u64(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    match binomial_u64(n as u64, k as u64) {
        Some(v) => v as f64,
        None => (ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)).exp(),
    }
}

/// Rising factorial (x)_n. Direct product for moderate n, log-gamma beyond.
pub fn pochhammer(x: f64, n: usize) -> f64 {
    if n <= 64 || x <= 0.0 {
        let mut acc = 1.0;
        for k in 0..n {
            acc *= x + k as f64;
        }
        acc
    } else {
        (ln_gamma(x + n as f64) - ln_gamma(x)).exp()
    }
}

/// ln (x)_n for x > 0.
pub fn ln_pochhammer(x: f64, n: usize) -> f64 {
    if n == 0 {
        return 0.0;
    }
    if n <= 32 {
        let mut acc = 0.0;
        for k in 0..n {
            acc += (x + k as f64).ln();
        }
        acc
    } else {
        ln_gamma(x + n as f64) - ln_gamma(x)
    }
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}

fn hyp2f1_series(a: f64, b: f64, c: f64, x: f64) -> Result<f64> {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..200_000usize {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * x;
        sum += term;
        if term == 0.0 || term.abs() <= 1e-17 * sum.abs() {
            return Ok(sum);
        }
    }
    Err(Error::Convergence {
        what: "hypergeometric series",
        achieved: term.abs(),
    })
}

/// Gauss hypergeometric ₂F₁(a, b; c; x) for real x ≤ 1 on the principal branch.
///
/// |x| ≤ 1/2 uses the power series, 1/2 < x < 1 the 1−x connection formula,
/// x < −1/2 the Pfaff transformation and x = 1 Gauss's summation.
pub fn hyp2f1(a: f64, b: f64, c: f64, x: f64) -> Result<f64> {
    if is_nonpositive_integer(c) {
        return Err(Error::Domain("2F1: c is a non-positive integer".into()));
    }
    if is_nonpositive_integer(a) || is_nonpositive_integer(b) {
        // terminating polynomial
        return hyp2f1_series(a, b, c, x);
    }
    if x > 1.0 {
        return Err(Error::Domain("2F1: argument above the branch point x = 1".into()));
    }
    if x == 1.0 {
        let s = c - a - b;
        if s <= 0.0 {
            return Err(Error::Domain("2F1(x=1) diverges for c-a-b <= 0".into()));
        }
        return Ok(gamma(c) * gamma(s) / (gamma(c - a) * gamma(c - b)));
    }
    if x.abs() <= 0.5 {
        return hyp2f1_series(a, b, c, x);
    }
    if x < -0.5 {
        let y = x / (x - 1.0);
        return Ok((1.0 - x).powf(-a) * hyp2f1(a, c - b, c, y)?);
    }
    let s = c - a - b;
    if s == s.round() {
        // integer c-a-b: the connection formula is degenerate
        return hyp2f1_series(a, b, c, x);
    }
    let y = 1.0 - x;
    let t1 = gamma(c) * gamma(s) / (gamma(c - a) * gamma(c - b)) * hyp2f1_series(a, b, 1.0 - s, y)?;
    let t2 = y.powf(s) * gamma(c) * gamma(-s) / (gamma(a) * gamma(b))
        * hyp2f1_series(c - a, c - b, 1.0 + s, y)?;
    Ok(t1 + t2)
}

/// Neville polynomial extrapolation of (x_i, y_i) to x = 0.
pub fn neville_at_zero(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len();
    let mut p: alloc::vec::Vec<f64> = ys.to_vec();
    for level in 1..n {
        for i in 0..n - level {
            let (xi, xj) = (xs[i], xs[i + level]);
            p[i] = (xj * p[i] - xi * p[i + 1]) / (xj - xi);
        }
    }
    p[0]
}
