//! Per-slice symbols of the time-sliced integral.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::oscillator_ode::CoefficientModel;

/// Largest slice count accepted by the oracle.
pub const MAX_SLICES: usize = 512;

/// Coefficients sampled at τ_i = iΔ, i = 0…N, and the derived symbols.
///
/// Per-node vectors (σ, z, ψ) have length N and are indexed by the node
/// i = 1…N−1; entry 0 is unused. Ω, d have length N−1 (i = 0…N−2) and Q has
/// length N (i = 0…N−1); Q_i approximates Q(τ_{i+1}).
#[derive(Debug, Clone, PartialEq)]
pub struct SlicedModel {
    pub n: usize,
    pub delta: f64,
    pub phi0: f64,
    pub phi_n: f64,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub c: Vec<f64>,
    pub sigma: Vec<f64>,
    /// Σ_i = (c_{i+1}/(2Δ))²σ_iσ_{i+1}, i = 1…N−2
    pub big_sigma: Vec<f64>,
    /// z_i = 1/(σ_i√(2a_iΔ)); +∞ where a_i = 0
    pub z: Vec<f64>,
    pub psi: Vec<f64>,
    pub omega: Vec<f64>,
    pub q: Vec<f64>,
    pub d: Vec<f64>,
    pub x: f64,
    pub y: f64,
}

impl SlicedModel {
    pub fn new(model: &CoefficientModel, n: usize, phi0: f64, phi_n: f64) -> Result<Self> {
        if n == 0 || n > MAX_SLICES {
            return Err(Error::Size(alloc::format!("slice count must lie in 1..={MAX_SLICES}, got {n}")));
        }
        model.validate()?;
        if !phi0.is_finite() || !phi_n.is_finite() {
            return Err(Error::Domain("boundary values must be finite".into()));
        }
        let delta = model.beta / n as f64;
        let sample = |f: &crate::oscillator_ode::Coefficient| -> Vec<f64> {
            (0..=n).map(|i| f.value(i as f64 * delta)).collect()
        };
        let (a, b, c) = (sample(&model.a), sample(&model.b), sample(&model.c));

        let mut sigma = vec![f64::NAN; n];
        let mut z = vec![f64::NAN; n];
        let mut psi = vec![f64::NAN; n];
        for i in 1..n {
            let inv = (c[i] + c[i + 1]) / (2.0 * delta) + b[i] * delta;
            if !(inv > 0.0) {
                return Err(Error::DegenerateCovariance(alloc::format!(
                    "slice {i}: (c_i+c_(i+1))/(2Δ) + b_iΔ = {inv:e} is not positive"
                )));
            }
            sigma[i] = 1.0 / inv;
            z[i] = if a[i] > 0.0 { inv / (2.0 * a[i] * delta).sqrt() } else { f64::INFINITY };
            psi[i] = sigma[i] * c[i + 1] / (2.0 * delta);
        }
        let mut big_sigma = vec![f64::NAN; n.saturating_sub(1)];
        for i in 1..n.saturating_sub(1) {
            let k = c[i + 1] / (2.0 * delta);
            big_sigma[i] = k * k * sigma[i] * sigma[i + 1];
        }

        let mut omega = vec![1.0; n - 1];
        for i in 1..n - 1 {
            omega[i] = 1.0 - big_sigma[i] / omega[i - 1];
        }
        let mut q = vec![delta; n];
        for i in 0..n - 1 {
            q[i + 1] = omega[i] * q[i] / psi[i + 1];
        }

        let mut d = vec![0.0; n - 1];
        let mut x = 0.0;
        if n >= 2 {
            let lead = q[0] * q[1] / (2.0 * delta * delta);
            for (i, di) in d.iter_mut().enumerate() {
                *di = lead * c[1] * c[2] / 2.0 * phi0 * phi0 * delta / (c[i + 2] * q[i + 1] * q[i]);
            }
            x = lead.sqrt() * (c[1] * c[2]).sqrt() / q[n - 1] * phi0 * phi_n;
        }
        let y = d.iter().sum();
        Ok(SlicedModel {
            n,
            delta,
            phi0,
            phi_n,
            a,
            b,
            c,
            sigma,
            big_sigma,
            z,
            psi,
            omega,
            q,
            d,
            x,
            y,
        })
    }

    /// D = d_p + … + d_{q−1}.
    pub fn d_range(&self, p: usize, q: usize) -> f64 {
        self.d[p..q].iter().sum()
    }

    /// Q_0 = Δ, Q_1 = Δ/ψ_1 and
    /// c_{i+2}Q_{i+1} = (c_{i+2}+c_{i+1}+2b_{i+1}Δ²)Q_i − c_{i+1}Q_{i−1}.
    pub fn q_difference(&self) -> Vec<f64> {
        let (n, dl) = (self.n, self.delta);
        let mut q = vec![dl; n];
        if n >= 2 {
            q[1] = dl / self.psi[1];
        }
        for i in 1..n.saturating_sub(1) {
            let c = &self.c;
            q[i + 1] = ((c[i + 2] + c[i + 1] + 2.0 * self.b[i + 1] * dl * dl) * q[i] - c[i + 1] * q[i - 1]) / c[i + 2];
        }
        q
    }

    /// (2πΔ/c₀)^{−1/2} Π_{i=1}^{N−1} (2πΔ/c_i)^{−1/2}, in log form.
    pub fn ln_measure(&self) -> f64 {
        let tp = 2.0 * core::f64::consts::PI * self.delta;
        -0.5 * (0..self.n).map(|i| (tp / self.c[i]).ln()).sum::<f64>()
    }

    /// The φ-independent part of E_N: c₁φ₀²/(2Δ) + (c_N/(2Δ)+b_NΔ)φ_N² + a_NΔφ_N⁴.
    pub fn boundary_energy(&self) -> f64 {
        let (n, dl) = (self.n, self.delta);
        let (p0, pn) = (self.phi0, self.phi_n);
        if n == 1 {
            return self.link_energy(1, p0, pn) + self.node_energy(1, pn);
        }
        self.c[1] * p0 * p0 / (2.0 * dl) + (self.c[n] / (2.0 * dl) + self.b[n] * dl) * pn * pn + self.a[n] * dl * pn.powi(4)
    }

    /// c_i(φ_i − φ_{i−1})²/(2Δ).
    pub fn link_energy(&self, i: usize, prev: f64, cur: f64) -> f64 {
        let d = cur - prev;
        self.c[i] * d * d / (2.0 * self.delta)
    }

    /// Δ(b_iφ² + a_iφ⁴).
    pub fn node_energy(&self, i: usize, phi: f64) -> f64 {
        let p2 = phi * phi;
        self.delta * (self.b[i] * p2 + self.a[i] * p2 * p2)
    }

    /// E_N for interior values φ_1…φ_{N−1}.
    pub fn energy(&self, interior: &[f64]) -> f64 {
        debug_assert_eq!(interior.len(), self.n - 1);
        let mut e = 0.0;
        let mut prev = self.phi0;
        for (k, &p) in interior.iter().chain(core::iter::once(&self.phi_n)).enumerate() {
            let i = k + 1;
            e += self.link_energy(i, prev, p) + self.node_energy(i, p);
            prev = p;
        }
        e
    }
}
