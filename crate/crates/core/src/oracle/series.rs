//! The exact multi-sum for W_N, N ∈ {2, 3}: the cross terms (c_i/Δ)φ_{i−1}φ_i
//! are Taylor-expanded, every interior integral becomes a scaled parabolic
//! cylinder function, and the summation runs over ρ ∈ {0, 1} and n₀…n_{N−1}:
//!
//!   W_N = (2πΔ/c₀)^{−1/2} e^{−E_bnd} Σ_ρ Σ_n (c₁φ₀√σ₁/Δ)^{2n₀+ρ}/(2n₀+ρ)!
//!         × Π_{i=1}^{N−1} r_i L_i (n_i+ρ+1/2)_{n_{i−1}} 𝒟_{−n_{i−1}−n_i−ρ−1/2}(z_i),
//!
//! with r_i = (c_iσ_i/(2Δ))^{1/2}, L_i = Σ_i^{n_i+ρ/2}/n_i! for i < N−1 and
//! L_{N−1} = (c_Nφ_N√σ_{N−1}/(2Δ))^{2n+ρ}/n!.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use super::{GaussianBridge, SlicedModel};
use crate::error::{Error, Result};
use crate::math::{ln_factorial, ln_pochhammer};
use crate::oscillator_ode::CoefficientModel;
use crate::special_fn::pcf_scaled_ln;

const FIRST_CAP: usize = 16;
/// Largest per-index cap tried by [`wn_series_auto`].
pub const MAX_CAP: usize = 256;

#[derive(Debug, Clone, PartialEq)]
pub struct SeriesResult {
    pub value: f64,
    /// Bound on the omitted terms, from the a ≡ 0 majorant (𝒟 ≤ 1).
    pub tail_bound: f64,
    pub caps: Vec<usize>,
}

/// k·ln|x| with 0⁰ = 1; None when the power vanishes.
fn ln_pow(x: f64, k: usize) -> Option<f64> {
    if k == 0 {
        Some(0.0)
    } else if x == 0.0 {
        None
    } else {
        Some(k as f64 * x.abs().ln())
    }
}

struct Tables {
    /// ln|first link| and ln|link i| per (n, ρ); None for a vanishing power
    links: Vec<Vec<[Option<f64>; 2]>>,
    /// Σ_i ln r_i
    ln_r: f64,
    /// ln 𝒟 per node, indexed by n_{i−1}+n_i+ρ
    ln_d: Vec<Vec<f64>>,
    /// ln (k+1/2)_p per node, indexed by [k = n_i+ρ][p = n_{i−1}]
    ln_poch: Vec<Vec<Vec<f64>>>,
}

fn tables(s: &SlicedModel, caps: &[usize]) -> Result<Tables> {
    let n = s.n;
    let dl = s.delta;
    let mut links = Vec::with_capacity(n);
    let x0 = s.c[1] * s.phi0 * s.sigma[1].sqrt() / dl;
    links.push(
        (0..=caps[0])
            .map(|k| core::array::from_fn(|rho| ln_pow(x0, 2 * k + rho).map(|v| v - ln_factorial(2 * k + rho))))
            .collect(),
    );
    for i in 1..n {
        let last = i == n - 1;
        let base = if last {
            s.c[n] * s.phi_n * s.sigma[n - 1].sqrt() / (2.0 * dl)
        } else {
            s.big_sigma[i].sqrt()
        };
        links.push(
            (0..=caps[i])
                .map(|k| core::array::from_fn(|rho| ln_pow(base, 2 * k + rho).map(|v| v - ln_factorial(k))))
                .collect(),
        );
    }
    let ln_r = (1..n).map(|i| 0.5 * (s.c[i] * s.sigma[i] / (2.0 * dl)).ln()).sum();
    let mut ln_d = Vec::with_capacity(n - 1);
    for i in 1..n {
        let top = caps[i - 1] + caps[i] + 1;
        let z = s.z[i];
        let col = if z.is_infinite() {
            vec![0.0; top + 1]
        } else {
            (0..=top).map(|m| pcf_scaled_ln(m, z)).collect::<Result<Vec<_>>>()?
        };
        ln_d.push(col);
    }
    let ln_poch = (1..n)
        .map(|i| {
            (0..=caps[i] + 1)
                .map(|k| (0..=caps[i - 1]).map(|p| ln_pochhammer(k as f64 + 0.5, p)).collect())
                .collect()
        })
        .collect();
    Ok(Tables {
        links,
        ln_r,
        ln_d,
        ln_poch,
    })
}

/// Σ over n with the 𝒟 factors (`with_d`) or without them (majorant),
/// returning the ρ = 0 and ρ = 1 partial sums of |terms|.
fn partial_sums(t: &Tables, caps: &[usize], with_d: bool) -> [f64; 2] {
    let mut out = [0.0; 2];
    for (rho, o) in out.iter_mut().enumerate() {
        for n0 in 0..=caps[0] {
            if let Some(l0) = t.links[0][n0][rho] {
                *o += descend(t, caps, with_d, rho, 1, n0, l0);
            }
        }
    }
    out
}

fn descend(t: &Tables, caps: &[usize], with_d: bool, rho: usize, i: usize, prev: usize, acc: f64) -> f64 {
    let last = i == caps.len() - 1;
    let mut sum = 0.0;
    for ni in 0..=caps[i] {
        let Some(li) = t.links[i][ni][rho] else { continue };
        let mut v = acc + li + t.ln_poch[i - 1][ni + rho][prev];
        if with_d {
            v += t.ln_d[i - 1][prev + ni + rho];
        }
        sum += if last { v.exp() } else { descend(t, caps, with_d, rho, i + 1, ni, v) };
    }
    sum
}

/// The multi-sum with fixed per-index caps n_i ≤ caps[i], i = 0…N−1.
pub fn wn_series_with_caps(
    model: &CoefficientModel,
    phi0: f64,
    phi_n: f64,
    n: usize,
    caps: &[usize],
) -> Result<SeriesResult> {
    if !(2..=3).contains(&n) {
        return Err(Error::Size(alloc::format!("exact multi-sum covers N in {{2, 3}}, got {n}")));
    }
    if caps.len() != n {
        return Err(Error::Size(alloc::format!("expected {n} caps, got {}", caps.len())));
    }
    let s = SlicedModel::new(model, n, phi0, phi_n)?;
    if s.a.iter().any(|&a| a < 0.0) {
        return Err(Error::InvalidModel("quartic coefficient must be non-negative".into()));
    }
    let t = tables(&s, caps)?;
    let ln_pre = -0.5 * (2.0 * core::f64::consts::PI * s.delta / s.c[0]).ln() - s.boundary_energy() + t.ln_r;
    let pre = ln_pre.exp();
    let sums = partial_sums(&t, caps, true);
    let sign1 = if (phi0 < 0.0) != (phi_n < 0.0) { -1.0 } else { 1.0 };
    let value = pre * (sums[0] + sign1 * sums[1]);

    // majorant: the a ≡ 0 integral at (|φ₀|, |φ_N|), in the same normalization
    let abs = SlicedModel::new(model, n, phi0.abs(), phi_n.abs())?;
    let bridge = GaussianBridge::new(&abs)?;
    let major = partial_sums(&t, caps, false);
    let total_major = (bridge.ln_gaussian - ln_pre).exp();
    let tail = (total_major - major[0] - major[1]).max(0.0);
    Ok(SeriesResult {
        value,
        tail_bound: pre * tail,
        caps: caps.to_vec(),
    })
}

/// The multi-sum with caps doubled until tail_bound ≤ tol·|value|.
pub fn wn_series_auto(model: &CoefficientModel, phi0: f64, phi_n: f64, n: usize, tol: f64) -> Result<SeriesResult> {
    let mut cap = FIRST_CAP;
    loop {
        let r = wn_series_with_caps(model, phi0, phi_n, n, &vec![cap; n])?;
        if r.tail_bound <= tol * r.value.abs() {
            return Ok(r);
        }
        if cap >= MAX_CAP {
            return Err(Error::Convergence {
                what: "exact multi-sum caps",
                achieved: r.tail_bound / r.value.abs(),
            });
        }
        cap *= 2;
    }
}

/// The multi-sum with the given caps; fails if the tail bound exceeds
/// tol·|value|.
pub fn wn_series_exact(
    model: &CoefficientModel,
    phi0: f64,
    phi_n: f64,
    n: usize,
    caps: &[usize],
    tol: f64,
) -> Result<SeriesResult> {
    let r = wn_series_with_caps(model, phi0, phi_n, n, caps)?;
    if r.tail_bound > tol * r.value.abs() {
        return Err(Error::Convergence {
            what: "exact multi-sum caps",
            achieved: r.tail_bound / r.value.abs(),
        });
    }
    Ok(r)
}
