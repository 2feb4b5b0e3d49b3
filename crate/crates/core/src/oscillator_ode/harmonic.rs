#[allow(unused_imports)]
use num_traits::Float;

use super::solution::{regularized_y, OscillatorSolution};
use crate::error::{Error, Result};
use core::f64::consts::{PI, SQRT_2};

/// Endpoint values and the reduced variables φ̂₀ = c(0)φ(0)/√2,
/// φ̂_β = φ(β)/(√2 Q(β)).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryData {
    pub phi0: f64,
    pub phi_b: f64,
    pub beta: f64,
    pub phi0_hat: f64,
    pub phi_b_hat: f64,
    pub gamma: f64,
}

impl BoundaryData {
    pub fn new(sol: &OscillatorSolution, phi0: f64, phi_b: f64) -> Result<Self> {
        let qb = sol.q_beta();
        if !(qb != 0.0) {
            return Err(Error::FocalPoint);
        }
        Ok(BoundaryData {
            phi0,
            phi_b,
            beta: sol.beta(),
            phi0_hat: sol.c0() * phi0 / SQRT_2,
            phi_b_hat: phi_b / (SQRT_2 * qb),
            gamma: 0.25,
        })
    }
}

/// Harmonic part of the propagator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HarmonicPart {
    /// 1/√f(β)
    pub prefactor: f64,
    pub exponent: f64,
    pub value: f64,
}

/// prefactor·e^{exponent} with exponent
/// 𝒴_reg c(0)²φ(0)²/2 + c(0)φ(0)φ(β)/Q(β) − (Q̇(β)/Q(β)) c(β)φ(β)²/2.
pub fn harmonic_propagator(sol: &OscillatorSolution, bd: &BoundaryData) -> Result<HarmonicPart> {
    let y = regularized_y(sol)?;
    let fb = sol.f_beta();
    if !(fb > 0.0) {
        return Err(Error::Domain(alloc::format!(
            "f(beta) = {fb} is not positive (caustic)"
        )));
    }
    let c0 = sol.c0();
    let cb = sol.model.c.value(sol.beta());
    let (qb, qdb) = (sol.q_beta(), sol.qdot_beta());
    let (p0, pb) = (bd.phi0, bd.phi_b);
    let exponent = y * c0 * c0 * p0 * p0 / 2.0 + c0 * p0 * pb / qb - qdb / qb * cb * pb * pb / 2.0;
    let prefactor = 1.0 / fb.sqrt();
    Ok(HarmonicPart {
        prefactor,
        exponent,
        value: prefactor * exponent.exp(),
    })
}

/// Mehler kernel (k/(2π sinh ν))^{1/2} exp{−k(x_i²+x_f²)/(2 tanh ν) + k x_i x_f/sinh ν}.
pub fn mehler_reference(k: f64, nu: f64, x_i: f64, x_f: f64) -> f64 {
    let s = nu.sinh();
    let pre = (k / (2.0 * PI * s)).sqrt();
    pre * (-k * (x_i * x_i + x_f * x_f) / (2.0 * nu.tanh()) + k * x_i * x_f / s).exp()
}
