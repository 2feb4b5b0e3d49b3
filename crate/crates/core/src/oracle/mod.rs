//! Ground truth for the propagator: the time-sliced integral
//!
//!   W_N = (2πΔ/c₀)^{−1/2} ∫ Π_{i=1}^{N−1} dφ_i (2πΔ/c_i)^{−1/2} e^{−E_N},
//!   E_N = Σ_{i=1}^{N} Δ[c_i(φ_i−φ_{i−1})²/(2Δ²) + b_iφ_i² + a_iφ_i⁴],
//!
//! evaluated by deterministic quadrature, Gaussian-bridge Monte Carlo and,
//! for N ≤ 3, the exact Taylor/parabolic-cylinder multi-sum, plus
//! extrapolation in 1/N.

mod bridge;
mod extrapolate;
mod series;
mod sliced;
mod transfer;

pub use bridge::{chunk_sizes, finish_estimate, GaussianBridge, Welford, CHUNK_SAMPLES, RNG_NAME};
pub use extrapolate::{continuum_extrapolate, Extrapolation, SlicedValue};
pub use series::{wn_series_auto, wn_series_exact, wn_series_with_caps, SeriesResult};
pub use sliced::{SlicedModel, MAX_SLICES};
pub use transfer::{wn_iterated, wn_quadrature, QuadratureResult, Radius, BOX_SDS, QUADRATURE_MAX_N};

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::oscillator_ode::CoefficientModel;

/// Smallest sample count accepted by [`wn_montecarlo`].
pub const MIN_SAMPLES: usize = 10_000;

/// W_N of the model with a ≡ 0 in the interior, in closed form; a_Nφ_N⁴ is kept.
pub fn wn_gaussian(model: &CoefficientModel, phi0: f64, phi_n: f64, n: usize) -> Result<f64> {
    let s = SlicedModel::new(model, n, phi0, phi_n)?;
    Ok(GaussianBridge::new(&s)?.ln_gaussian.exp())
}

/// Bridge for the Monte Carlo estimate, with the argument checks.
pub fn montecarlo_bridge(model: &CoefficientModel, phi0: f64, phi_n: f64, n: usize, samples: usize) -> Result<GaussianBridge> {
    if samples < MIN_SAMPLES {
        return Err(Error::Size(alloc::format!("at least {MIN_SAMPLES} samples required, got {samples}")));
    }
    let s = SlicedModel::new(model, n, phi0, phi_n)?;
    if s.a.iter().any(|&a| a < 0.0) {
        return Err(Error::InvalidModel("quartic coefficient must be non-negative".into()));
    }
    GaussianBridge::new(&s)
}

/// Importance-sampled W_N: Gaussian-bridge draws reweighted by
/// exp(−Σ a_iΔφ_i⁴). Chunk k of [`CHUNK_SAMPLES`] draws uses stream k of a
/// ChaCha20 generator seeded with `seed`; chunks are combined in stream
/// order. Returns (mean, stderr).
pub fn wn_montecarlo(model: &CoefficientModel, phi0: f64, phi_n: f64, n: usize, samples: usize, seed: u64) -> Result<(f64, f64)> {
    let bridge = montecarlo_bridge(model, phi0, phi_n, n, samples)?;
    let chunks: Vec<Welford> = chunk_sizes(samples)
        .iter()
        .enumerate()
        .map(|(k, &count)| bridge.chunk(seed, k as u64, count))
        .collect();
    Ok(finish_estimate(&bridge, &chunks))
}
