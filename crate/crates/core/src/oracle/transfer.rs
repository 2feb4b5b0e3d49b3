//! Deterministic evaluation of W_N as a product of transfer operators on
//! composite Gauss–Legendre grids, one grid per interior node.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use super::{GaussianBridge, SlicedModel};
use crate::error::{Error, Result};
use crate::oscillator_ode::CoefficientModel;
use crate::quadrature::gauss_legendre;

/// Gauss points per panel.
pub const PANEL_ORDER: usize = 16;
/// Half-width of the integration box in Gaussian standard deviations.
pub const BOX_SDS: f64 = 9.5;
/// Relative change between panel doublings accepted as converged.
pub const REFINE_TOL: f64 = 1e-13;
const MIN_PANELS: usize = 4;
const MAX_PANELS: usize = 256;
/// Largest accepted bound on the discarded tail relative to W_N.
pub const TAIL_TOL: f64 = 1e-12;
/// Largest slice count of [`wn_quadrature`].
pub const QUADRATURE_MAX_N: usize = 5;

/// Integration box [center − half_width, center + half_width] of one node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Radius {
    pub center: f64,
    pub half_width: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    /// one entry per interior node
    pub radii: Vec<Radius>,
    pub panels: usize,
    /// bound on the mass outside the boxes relative to W_N
    pub tail_bound: f64,
    /// |value − value at half the panels| / value
    pub refinement_change: f64,
}

/// Boxes of ±[`BOX_SDS`] marginal standard deviations of the Gaussian
/// bridge, and a bound on the discarded mass relative to W_N: the quartic
/// factor is at most 1, so each slab misses at most erfc(BOX_SDS/√2) of the
/// Gaussian integral.
fn boxes(s: &SlicedModel) -> Result<(Vec<Radius>, f64)> {
    let bridge = GaussianBridge::new(s)?;
    let sd = bridge.marginal_sd();
    let radii = bridge
        .mean
        .iter()
        .zip(&sd)
        .map(|(&center, &sd)| Radius {
            center,
            half_width: BOX_SDS * sd,
        })
        .collect();
    let per_slab = libm::erfc(BOX_SDS / core::f64::consts::SQRT_2);
    Ok((radii, (s.n - 1) as f64 * per_slab * bridge.ln_gaussian.exp()))
}

fn grid(r: &Radius, panels: usize, x: &[f64], w: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let h = 2.0 * r.half_width / panels as f64;
    let mut xs = Vec::with_capacity(panels * x.len());
    let mut ws = Vec::with_capacity(panels * x.len());
    for p in 0..panels {
        let lo = r.center - r.half_width + p as f64 * h;
        for (xi, wi) in x.iter().zip(w) {
            xs.push(lo + 0.5 * h * (xi + 1.0));
            ws.push(0.5 * h * wi);
        }
    }
    (xs, ws)
}

fn log_sum_exp(terms: impl Iterator<Item = f64> + Clone) -> f64 {
    let m = terms.clone().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + terms.map(|t| (t - m).exp()).sum::<f64>().ln()
}

/// ln W_N on the given boxes and panel count.
fn transfer(s: &SlicedModel, radii: &[Radius], panels: usize) -> f64 {
    let (gx, gw) = gauss_legendre(PANEL_ORDER);
    let mut prev_x = vec![s.phi0];
    let mut prev_lnw = vec![0.0];
    let mut prev_lnv = vec![0.0];
    for (k, r) in radii.iter().enumerate() {
        let i = k + 1;
        let (xs, ws) = grid(r, panels, &gx, &gw);
        let lnv: Vec<f64> = xs
            .iter()
            .map(|&y| {
                let t = prev_x
                    .iter()
                    .zip(&prev_lnw)
                    .zip(&prev_lnv)
                    .map(|((&x, &lw), &lv)| lw + lv - s.link_energy(i, x, y));
                log_sum_exp(t) - s.node_energy(i, y)
            })
            .collect();
        prev_lnw = ws.iter().map(|w| w.ln()).collect();
        prev_x = xs;
        prev_lnv = lnv;
    }
    let n = s.n;
    let t = prev_x
        .iter()
        .zip(&prev_lnw)
        .zip(&prev_lnv)
        .map(|((&x, &lw), &lv)| lw + lv - s.link_energy(n, x, s.phi_n));
    s.ln_measure() + log_sum_exp(t) - s.node_energy(n, s.phi_n)
}

/// W_N for any N ≤ 512 by panel doubling until the relative change is
/// below [`REFINE_TOL`].
pub fn wn_iterated(model: &CoefficientModel, phi0: f64, phi_n: f64, n: usize) -> Result<QuadratureResult> {
    let s = SlicedModel::new(model, n, phi0, phi_n)?;
    if s.a.iter().any(|&a| a < 0.0) {
        return Err(Error::InvalidModel("quartic coefficient must be non-negative".into()));
    }
    let (radii, tail_mass) = boxes(&s)?;
    let mut panels = MIN_PANELS;
    let mut prev = transfer(&s, &radii, panels);
    loop {
        panels *= 2;
        let cur = transfer(&s, &radii, panels);
        let tail_bound = tail_mass / cur.exp();
        if !(tail_bound <= TAIL_TOL) {
            return Err(Error::Convergence {
                what: "quadrature tail truncation",
                achieved: tail_bound,
            });
        }
        let change = (cur - prev).exp_m1().abs();
        if change <= REFINE_TOL || n == 1 {
            return Ok(QuadratureResult {
                value: cur.exp(),
                radii,
                panels,
                tail_bound,
                refinement_change: change,
            });
        }
        if panels >= MAX_PANELS {
            return Err(Error::Convergence {
                what: "quadrature panel refinement",
                achieved: change,
            });
        }
        prev = cur;
    }
}

/// W_N for 1 ≤ N ≤ 5; N = 1 is the closed form with no integration.
pub fn wn_quadrature(model: &CoefficientModel, phi0: f64, phi_n: f64, n: usize) -> Result<QuadratureResult> {
    if !(1..=QUADRATURE_MAX_N).contains(&n) {
        return Err(Error::Size(alloc::format!(
            "quadrature oracle covers 1 <= N <= {QUADRATURE_MAX_N}, got {n}"
        )));
    }
    wn_iterated(model, phi0, phi_n, n)
}
