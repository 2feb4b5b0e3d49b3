//! The one-dimensional integral I₁(a, b, c) = ∫ exp(−(a x⁴ + b x² + c x)) dx,
//! evaluated by direct quadrature, by the parabolic cylinder series, and by
//! the Hermite generating-function route.

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{domain, Error, Result};
use crate::math::{ln_factorial, ln_gamma};
use crate::quadrature::integrate_gk;
use crate::special_fn::{pcf_d, pcf_scaled_ln, pcf_taylor_shift};
use core::f64::consts::PI;

/// Terms below this fraction of the partial sum count as negligible.
const SERIES_TOL: f64 = 1e-16;
/// Hard cap on the number of series terms.
const SERIES_CAP: usize = 400;

fn check_a(a: f64) -> Result<()> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(domain("quartic integral requires a > 0"));
    }
    Ok(())
}

/// Global minimum of g(x) = a x⁴ + b x² + c x.
fn minimizer(a: f64, b: f64, c: f64) -> f64 {
    let g = |x: f64| a * x.powi(4) + b * x * x + c * x;
    // stationary points solve 4a x³ + 2b x + c = 0; polish a few starts with Newton
    let scale = (b.abs() / a).sqrt().max((c.abs() / a).cbrt()).max(1.0);
    let mut best = 0.0;
    let mut gbest = g(0.0);
    for start in [-scale, -0.5 * scale, 0.0, 0.5 * scale, scale] {
        let mut x: f64 = start;
        for _ in 0..100 {
            let d1 = 4.0 * a * x.powi(3) + 2.0 * b * x + c;
            let d2 = 12.0 * a * x * x + 2.0 * b;
            if d2 <= 0.0 {
                x -= d1.signum() * 0.1 * scale;
                continue;
            }
            let step = d1 / d2;
            x -= step;
            if step.abs() <= 1e-15 * x.abs().max(1.0) {
                break;
            }
        }
        if g(x) < gbest {
            gbest = g(x);
            best = x;
        }
    }
    best
}

/// Direct adaptive quadrature over the real line.
///
/// The integrand is shifted by its maximum and the range truncated where it
/// falls below e^{−45} of the peak.
pub fn i1_quadrature(a: f64, b: f64, c: f64) -> Result<f64> {
    check_a(a)?;
    let g = |x: f64| a * x.powi(4) + b * x * x + c * x;
    let x0 = minimizer(a, b, c);
    let g0 = g(x0);
    let cut = 45.0;
    // expand outward until the exponent clears the cut on both sides
    let mut r = 1.0;
    while g(x0 + r) - g0 < cut || g(x0 - r) - g0 < cut {
        r *= 1.5;
    }
    let mut knots = alloc::vec![x0 - r, x0, x0 + r];
    if (x0 - r..x0 + r).contains(&0.0) && x0 != 0.0 {
        knots.push(0.0);
    }
    // second well of a double-well potential
    let xm = -x0;
    if b < 0.0 && (x0 - r..x0 + r).contains(&xm) {
        knots.push(xm);
    }
    knots.sort_by(|p, q| p.partial_cmp(q).unwrap());
    let mut total = 0.0;
    let mut err = 0.0;
    for w in knots.windows(2) {
        let (v, e) = integrate_gk(|x| (g0 - g(x)).exp(), w[0], w[1], 1e-14, 0.0)?;
        total += v;
        err += e;
    }
    if err > 1e-12 * total {
        return Err(Error::Convergence {
            what: "quartic integral quadrature",
            achieved: err / total,
        });
    }
    Ok(total * (-g0).exp())
}

/// Sum terms until three consecutive increments are negligible.
fn cauchy_series<F: FnMut(usize) -> Result<f64>>(mut term: F, cap: usize, what: &'static str) -> Result<f64> {
    let mut sum = 0.0;
    let mut quiet = 0;
    let mut last = f64::INFINITY;
    for m in 0..=cap {
        let t = term(m)?;
        sum += t;
        last = t.abs();
        if last <= SERIES_TOL * sum.abs() {
            quiet += 1;
            if quiet >= 3 {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::Convergence {
        what,
        achieved: last / sum.abs(),
    })
}

/// e^{z²/4} D_{−m−1/2}(z), in log form, for z ≥ 0.
fn ln_scaled_d(m: usize, z: f64) -> Result<f64> {
    if z == 0.0 {
        Ok(pcf_d(-(m as f64) - 0.5, 0.0)?.ln())
    } else {
        Ok(pcf_scaled_ln(m, z)? - (m as f64 + 0.5) * z.ln())
    }
}

/// Parabolic cylinder series
/// Γ(1/2)(2a)^{−1/4} e^{z²/4} Σ_m ξ^m/m! D_{−m−1/2}(z), ξ = c²/(4√(2a)), z = b/√(2a).
///
/// `m_max` caps the number of terms; the sum stops earlier once converged.
pub fn i1_series(a: f64, b: f64, c: f64, m_max: usize) -> Result<f64> {
    check_a(a)?;
    if b < 0.0 {
        return Err(domain("series form needs b >= 0 (z >= 0); use quadrature for b < 0"));
    }
    let sum = cauchy_series(
        |m| series_term(a, b, c, m),
        m_max.min(SERIES_CAP),
        "quartic integral series",
    )?;
    Ok(PI.sqrt() * (2.0 * a).powf(-0.25) * sum)
}

/// m-th term ξ^m/m! e^{z²/4} D_{−m−1/2}(z) of the series, without the prefactor.
fn series_term(a: f64, b: f64, c: f64, m: usize) -> Result<f64> {
    let s2a = (2.0 * a).sqrt();
    let xi = c * c / (4.0 * s2a);
    let z = b / s2a;
    if m > 0 && xi == 0.0 {
        return Ok(0.0);
    }
    let lx = if m == 0 { 0.0 } else { m as f64 * xi.ln() };
    Ok((lx - ln_factorial(m) + ln_scaled_d(m, z)?).exp())
}

/// The first `count` partial sums of the series (prefactor included).
pub fn i1_series_partial_sums(a: f64, b: f64, c: f64, count: usize) -> Result<alloc::vec::Vec<f64>> {
    check_a(a)?;
    if b < 0.0 {
        return Err(domain("series form needs b >= 0 (z >= 0); use quadrature for b < 0"));
    }
    let pre = PI.sqrt() * (2.0 * a).powf(-0.25);
    let mut acc = 0.0;
    (0..count)
        .map(|m| {
            acc += series_term(a, b, c, m)?;
            Ok(pre * acc)
        })
        .collect()
}

/// Hermite generating-function route:
/// (2a)^{−1/4} Σ_μ (c²/√(2a))^μ/(2μ)! Γ(μ+1/2) Σ_j (−z)^j/j! (μ+1/2)_j D_{−j−μ−1/2}(0),
/// with the inner j-sum evaluated as the Taylor shift of D around 0.
pub fn i1_hermite_method(a: f64, b: f64, c: f64, mu_max: usize) -> Result<f64> {
    check_a(a)?;
    if !(b > 0.0) {
        return Err(domain("Hermite method requires b > 0"));
    }
    let s2a = (2.0 * a).sqrt();
    let z = b / s2a;
    let w = c * c / s2a;
    let sum = cauchy_series(
        |mu| {
            if mu > 0 && w == 0.0 {
                return Ok(0.0);
            }
            let nu = mu as f64 + 0.5;
            let inner = pcf_taylor_shift(nu, 0.0, -z, 0)?;
            let lw = if mu == 0 { 0.0 } else { mu as f64 * w.ln() };
            Ok((lw - ln_factorial(2 * mu) + ln_gamma(nu)).exp() * inner)
        },
        mu_max.min(SERIES_CAP),
        "quartic integral Hermite route",
    )?;
    Ok((2.0 * a).powf(-0.25) * sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::gamma;

    #[test]
    fn pure_quartic_closed_form() {
        let r = gamma(0.25) / 2.0;
        assert!((i1_quadrature(1.0, 0.0, 0.0).unwrap() / r - 1.0).abs() < 1e-10);
        assert!((i1_series(1.0, 0.0, 0.0, 100).unwrap() / r - 1.0).abs() < 1e-12);
    }

    #[test]
    fn symmetric_in_c() {
        let p = i1_quadrature(0.7, 0.3, 1.1).unwrap();
        let q = i1_quadrature(0.7, 0.3, -1.1).unwrap();
        assert!((p / q - 1.0).abs() < 1e-13);
    }

    #[test]
    fn double_well_is_finite_and_positive() {
        let v = i1_quadrature(0.5, -1.0, 0.3).unwrap();
        assert!(v.is_finite() && v > 0.0);
        assert!(i1_series(0.5, -1.0, 0.3, 100).is_err());
    }

    #[test]
    fn methods_agree() {
        let q = i1_quadrature(1.0, 1.0, 1.0).unwrap();
        let s = i1_series(1.0, 1.0, 1.0, 200).unwrap();
        assert!((s / q - 1.0).abs() < 1e-9, "{s} {q}");
        let h = i1_hermite_method(1.0, 2.0, 0.7, 200).unwrap();
        let q = i1_quadrature(1.0, 2.0, 0.7).unwrap();
        assert!((h / q - 1.0).abs() < 1e-8, "{h} {q}");
        let h = i1_hermite_method(2.0, 0.5, 1.2, 200).unwrap();
        let s = i1_series(2.0, 0.5, 1.2, 200).unwrap();
        assert!((h / s - 1.0).abs() < 1e-8, "{h} {s}");
        let h = i1_hermite_method(1.0, 1.0, 0.0, 200).unwrap();
        let s = i1_series(1.0, 1.0, 0.0, 200).unwrap();
        assert!((h / s - 1.0).abs() < 1e-12);
    }

    #[test]
    fn odd_moment_vanishes() {
        let h = 1e-4;
        let d = (i1_quadrature(1.0, 0.5, h).unwrap() - i1_quadrature(1.0, 0.5, -h).unwrap()) / (2.0 * h);
        assert!(d.abs() < 1e-9);
    }
}
