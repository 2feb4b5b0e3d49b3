//! Gaussian bridge of the kinetic plus harmonic part of E_N, used for the
//! closed-form a ≡ 0 value and as the importance density for Monte Carlo.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;

use super::SlicedModel;
use crate::error::{Error, Result};

/// Samples drawn per random sub-stream.
pub const CHUNK_SAMPLES: usize = 65536;
/// Identifier of the random generator recorded in output metadata.
pub const RNG_NAME: &str = "chacha20";

/// Interior quadratic form ½xᵀAx − hᵀx with A = LLᵀ, L lower bidiagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianBridge {
    pub mean: Vec<f64>,
    /// diagonal of L
    pub l_diag: Vec<f64>,
    /// sub-diagonal of L, l_sub[i] = L_{i+1,i}
    pub l_sub: Vec<f64>,
    /// ln W_N with a ≡ 0 in the interior (a_N φ_N⁴ kept)
    pub ln_gaussian: f64,
    /// a_iΔ per interior node
    quartic: Vec<f64>,
}

impl GaussianBridge {
    pub fn new(s: &SlicedModel) -> Result<Self> {
        let m = s.n - 1;
        let dl = s.delta;
        let mut diag: Vec<f64> = (1..s.n).map(|i| 2.0 / s.sigma[i]).collect();
        let off: Vec<f64> = (1..m).map(|i| -s.c[i + 1] / dl).collect();
        let mut h = vec![0.0; m];
        if m > 0 {
            h[0] += s.c[1] * s.phi0 / dl;
            h[m - 1] += s.c[s.n] * s.phi_n / dl;
        }
        let mut l_sub = vec![0.0; m.saturating_sub(1)];
        for i in 0..m {
            if i > 0 {
                l_sub[i - 1] = off[i - 1] / diag[i - 1];
                diag[i] -= l_sub[i - 1] * l_sub[i - 1];
            }
            if !(diag[i] > 0.0) {
                return Err(Error::DegenerateCovariance(alloc::format!(
                    "quadratic form is not positive definite at node {}",
                    i + 1
                )));
            }
            diag[i] = diag[i].sqrt();
        }
        let l_diag = diag;
        // A m = h: forward then backward substitution
        let mut y = h.clone();
        for i in 0..m {
            if i > 0 {
                y[i] -= l_sub[i - 1] * y[i - 1];
            }
            y[i] /= l_diag[i];
        }
        let mut mean = y;
        for i in (0..m).rev() {
            if i + 1 < m {
                mean[i] -= l_sub[i] * mean[i + 1];
            }
            mean[i] /= l_diag[i];
        }
        let half_hm: f64 = 0.5 * h.iter().zip(&mean).map(|(a, b)| a * b).sum::<f64>();
        let ln_det: f64 = 2.0 * l_diag.iter().map(|v| v.ln()).sum::<f64>();
        let ln_gaussian = s.ln_measure() - s.boundary_energy()
            + 0.5 * m as f64 * (2.0 * core::f64::consts::PI).ln()
            - 0.5 * ln_det
            + half_hm;
        let quartic = (1..s.n).map(|i| s.a[i] * dl).collect();
        Ok(GaussianBridge {
            mean,
            l_diag,
            l_sub,
            ln_gaussian,
            quartic,
        })
    }

    pub fn dim(&self) -> usize {
        self.mean.len()
    }

    /// Marginal standard deviations √(A⁻¹)_ii.
    pub fn marginal_sd(&self) -> Vec<f64> {
        // (A⁻¹)_ii = Σ_k (L⁻¹)_{ki}²; column i of L⁻¹ by forward substitution
        let m = self.dim();
        (0..m)
            .map(|i| {
                let mut v = 1.0 / self.l_diag[i];
                let mut acc = v * v;
                for k in i + 1..m {
                    v = -self.l_sub[k - 1] * v / self.l_diag[k];
                    acc += v * v;
                }
                acc.sqrt()
            })
            .collect()
    }

    /// x = mean + L⁻ᵀ z.
    pub fn sample_into(&self, z: &[f64], x: &mut [f64]) {
        let m = self.dim();
        for i in (0..m).rev() {
            let mut v = z[i];
            if i + 1 < m {
                v -= self.l_sub[i] * x[i + 1];
            }
            x[i] = v / self.l_diag[i];
        }
        for (xi, mi) in x.iter_mut().zip(&self.mean) {
            *xi += mi;
        }
    }

    /// exp(−Σ a_iΔ x_i⁴).
    pub fn weight(&self, x: &[f64]) -> f64 {
        let s: f64 = x.iter().zip(&self.quartic).map(|(v, q)| q * v.powi(4)).sum();
        (-s).exp()
    }

    /// Weight statistics of `count` samples from sub-stream `stream` of `seed`.
    pub fn chunk(&self, seed: u64, stream: u64, count: usize) -> Welford {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        let m = self.dim();
        let mut z = vec![0.0; m];
        let mut x = vec![0.0; m];
        let mut acc = Welford::default();
        for _ in 0..count {
            for zi in z.iter_mut() {
                *zi = rng.sample(StandardNormal);
            }
            self.sample_into(&z, &mut x);
            acc.push(self.weight(&x));
        }
        acc
    }
}

/// Running count, mean and sum of squared deviations.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Welford {
    pub count: u64,
    pub mean: f64,
    pub m2: f64,
}

impl Welford {
    pub fn push(&mut self, v: f64) {
        self.count += 1;
        let d = v - self.mean;
        self.mean += d / self.count as f64;
        self.m2 += d * (v - self.mean);
    }

    /// Pairwise combination; the result depends on the order of calls.
    pub fn merge(&mut self, o: &Welford) {
        if o.count == 0 {
            return;
        }
        if self.count == 0 {
            *self = *o;
            return;
        }
        let n = (self.count + o.count) as f64;
        let d = o.mean - self.mean;
        self.mean += d * o.count as f64 / n;
        self.m2 += o.m2 + d * d * self.count as f64 * o.count as f64 / n;
        self.count += o.count;
    }

    /// Standard error of the mean.
    pub fn stderr(&self) -> f64 {
        if self.count < 2 {
            return f64::INFINITY;
        }
        (self.m2 / (self.count - 1) as f64 / self.count as f64).sqrt()
    }
}

/// Sizes of the sub-streams covering `samples` draws.
pub fn chunk_sizes(samples: usize) -> Vec<usize> {
    let mut v = vec![CHUNK_SAMPLES; samples / CHUNK_SAMPLES];
    if samples % CHUNK_SAMPLES != 0 {
        v.push(samples % CHUNK_SAMPLES);
    }
    v
}

/// Combines per-chunk statistics in stream order and scales by the
/// Gaussian normalization.
pub fn finish_estimate(bridge: &GaussianBridge, chunks: &[Welford]) -> (f64, f64) {
    let mut acc = Welford::default();
    for c in chunks {
        acc.merge(c);
    }
    let g = bridge.ln_gaussian.exp();
    (g * acc.mean, g * acc.stderr())
}
