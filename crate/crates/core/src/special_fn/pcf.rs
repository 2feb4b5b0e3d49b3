//! Parabolic cylinder functions of negative half-integer order,
//!
//!   D_{−m−1/2}(z) = e^{−z²/4}/Γ(m+1/2) ∫₀^∞ x^{m−1/2} e^{−x²/2 − zx} dx,
//!
//! and the scaled form 𝒟_ν(z) = z^{−ν} e^{z²/4} D_ν(z). For z > 1 the
//! substitution x = s/z gives 𝒟_{−m−1/2}(z) = ∫₀^∞ s^{m−1/2} e^{−s − s²/(2z²)} ds / Γ(m+1/2),
//! evaluated in log space, so no e^{±z²/4} factor is ever formed.

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{domain, Error, Result};
use crate::math::{factorial, hyp2f1, ln_gamma, pochhammer};
use crate::quadrature::exp_sinh;

const QUAD_TOL: f64 = 1e-14;

/// Index of D_{−m−ρ−1/2−extra}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PcfIndex {
    pub m: usize,
    pub rho: usize,
    pub extra: usize,
}

impl PcfIndex {
    pub fn new(m: usize, rho: usize, extra: usize) -> Result<Self> {
        if rho > 1 {
            return Err(domain("parity shift rho must be 0 or 1"));
        }
        Ok(PcfIndex { m, rho, extra })
    }

    /// Integer part k of ν = −k − 1/2.
    pub fn order(&self) -> usize {
        self.m + self.rho + self.extra
    }

    pub fn nu(&self) -> f64 {
        -(self.order() as f64) - 0.5
    }
}

/// k such that ν = −k − 1/2.
fn half_integer_order(nu: f64) -> Result<usize> {
    let k = -nu - 0.5;
    if !(k >= 0.0) || k != k.round() || k > 1e6 {
        return Err(domain("order must be a negative half-integer -m-1/2"));
    }
    Ok(k as usize)
}

/// ln ∫₀^∞ x^{m−1/2} e^{−x²/2 − zx} dx.
fn ln_integral_x(m: usize, z: f64) -> Result<f64> {
    let p = m as f64 - 0.5;
    let peak = if m >= 1 {
        2.0 * p / (z + (z * z + 4.0 * p).sqrt())
    } else {
        1.0
    };
    let logf = |x: f64| p * x.ln() - 0.5 * x * x - z * x;
    let l0 = logf(peak);
    let v = exp_sinh(|x| (logf(x) - l0).exp(), peak, QUAD_TOL)?;
    Ok(l0 + v.ln())
}

/// ln ∫₀^∞ s^{m−1/2} e^{−s − s²/(2z²)} ds, z > 0.
fn ln_integral_s(m: usize, z: f64) -> Result<f64> {
    let p = m as f64 - 0.5;
    let z2 = z * z;
    let peak = if m >= 1 {
        2.0 * p / (1.0 + (1.0 + 4.0 * p / z2).sqrt())
    } else {
        z.min(1.0)
    };
    let logf = |s: f64| p * s.ln() - s - s * s / (2.0 * z2);
    let l0 = logf(peak);
    let v = exp_sinh(|s| (logf(s) - l0).exp(), peak, QUAD_TOL)?;
    Ok(l0 + v.ln())
}

/// ln 𝒟_{−m−1/2}(z) for z > 0.
pub fn pcf_scaled_ln(m: usize, z: f64) -> Result<f64> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(domain("log of the scaled function needs z > 0"));
    }
    let lg = ln_gamma(m as f64 + 0.5);
    if z > 1.0 {
        Ok(ln_integral_s(m, z)? - lg)
    } else {
        Ok((m as f64 + 0.5) * z.ln() + ln_integral_x(m, z)? - lg)
    }
}

/// D_ν(z) for ν = −m − 1/2, z ≥ 0.
pub fn pcf_d(nu: f64, z: f64) -> Result<f64> {
    let m = half_integer_order(nu)?;
    if !(z >= 0.0) || !z.is_finite() {
        return Err(domain("pcf_D requires finite z >= 0"));
    }
    let lg = ln_gamma(m as f64 + 0.5);
    if z <= 1.0 {
        Ok((-0.25 * z * z + ln_integral_x(m, z)? - lg).exp())
    } else {
        Ok((ln_integral_s(m, z)? - lg - 0.25 * z * z - (m as f64 + 0.5) * z.ln()).exp())
    }
}

/// 𝒟_ν(z) = z^{−ν} e^{z²/4} D_ν(z) for ν = −m − 1/2, z ≥ 0.
pub fn pcf_scaled(nu: f64, z: f64) -> Result<f64> {
    let m = half_integer_order(nu)?;
    if !(z >= 0.0) || !z.is_finite() {
        return Err(domain("pcf_scaled requires finite z >= 0"));
    }
    if z == 0.0 {
        return Ok(0.0);
    }
    let v = pcf_scaled_ln(m, z)?.exp();
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Domain("scaled parabolic cylinder value overflows".into()))
    }
}

/// Truncated Poincaré-type expansion of 𝒟_{−ν−1/2}(z),
/// Σ_{j≤J} (−1)^j (ν+1/2)_{2j} / (j! (2z²)^j), with the Olver/Temme
/// remainder bound.
pub fn pcf_poincare(nu: f64, z: f64, j_max: usize) -> Result<(f64, f64)> {
    let z2 = z * z;
    if !(z2 > 2.0 * nu.abs()) {
        return Err(domain("Poincare expansion requires z^2 > 2|nu|"));
    }
    let a = nu + 0.5;
    let mut value = 0.0;
    let mut last = 0.0;
    for j in 0..=j_max {
        let t = pochhammer(a, 2 * j) / (factorial(j) * (2.0 * z2).powi(j as i32));
        let s = if j % 2 == 0 { t } else { -t };
        value += s;
        last = t;
    }
    let jf = j_max as f64;
    let arg = 1.0 - 4.0 * jf * jf / (z2 * z2);
    let pre = 2.0 * z2 / (z2 + 2.0 * nu);
    let f1 = hyp2f1(0.5 * jf, 0.5, 0.5 * jf + 1.0, arg)?;
    let f2 = hyp2f1(0.5, 0.5, 1.5, arg)?;
    let bound = pre * last.abs() * f1 * (pre * 2.0 / z2 * f2).exp();
    Ok((value, bound))
}

fn cauchy_sum<F: FnMut(usize) -> Result<f64>>(mut term: F, terms: usize, what: &'static str) -> Result<f64> {
    let mut sum = 0.0;
    if terms > 0 {
        for k in 0..terms {
            sum += term(k)?;
        }
        return Ok(sum);
    }
    let mut quiet = 0;
    for k in 0..4000 {
        let t = term(k)?;
        sum += t;
        if t.abs() <= 1e-16 * sum.abs() {
            quiet += 1;
            if quiet >= 3 {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::Convergence { what, achieved: 0.0 })
}

/// e^{x²/4} Σ_{k<terms} (ν)_k/k! t^k D_{−ν−k}(x), the left side of the
/// Taylor shift identity; `terms == 0` sums adaptively.
pub fn pcf_taylor_shift(nu: f64, x: f64, t: f64, terms: usize) -> Result<f64> {
    half_integer_order(-nu)?;
    if !(x >= 0.0) {
        return Err(domain("Taylor shift requires x >= 0"));
    }
    let mut coef = 1.0;
    cauchy_sum(
        |k| {
            if k > 0 {
                coef *= (nu + (k - 1) as f64) / k as f64 * t;
            }
            let order = -nu - k as f64;
            let d = if x == 0.0 {
                pcf_d(order, 0.0)?
            } else {
                x.powf(order) * pcf_scaled(order, x)?
            };
            Ok(coef * d)
        },
        terms,
        "parabolic cylinder Taylor shift",
    )
}

/// Σ_{k<terms} (ν)_k/k! t^k 𝒟_{−ν−k}(z), which sums to (1−t)^{−ν} 𝒟_{−ν}(z(1−t)).
pub fn pcf_scaled_taylor_shift(nu: f64, z: f64, t: f64, terms: usize) -> Result<f64> {
    half_integer_order(-nu)?;
    let mut coef = 1.0;
    cauchy_sum(
        |k| {
            if k > 0 {
                coef *= (nu + (k - 1) as f64) / k as f64 * t;
            }
            Ok(coef * pcf_scaled(-nu - k as f64, z)?)
        },
        terms,
        "scaled Taylor shift",
    )
}
