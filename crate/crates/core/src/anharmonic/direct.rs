//! Direct evaluation of W(μ), μ ≤ 2, from the ξ-derivative representation
//! W(μ) = ∫_{τ₁<…<τ_μ} Π a_iQ_i⁴ ∂^4_{ξ₂}⋯∂^4_{ξ_μ} H_{4μ}(2u, v)|_{ξ=1},
//! with its own panel quadrature, independent of the element tables.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::jet::Jet1;
use crate::math::factorial;
use crate::oscillator_ode::{kernel_i, BoundaryData, OscillatorSolution};
use crate::quadrature::gauss_legendre;
use crate::special_fn::hermite2;

const PANELS: usize = 24;
const NODES: usize = 12;

/// Composite Gauss–Legendre nodes and weights on [a, b].
fn panel_rule(a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(NODES);
    let h = (b - a) / PANELS as f64;
    let mut xs = Vec::with_capacity(PANELS * NODES);
    let mut ws = Vec::with_capacity(PANELS * NODES);
    for p in 0..PANELS {
        let lo = a + p as f64 * h;
        for (xi, wi) in x.iter().zip(&w) {
            xs.push(lo + 0.5 * h * (xi + 1.0));
            ws.push(0.5 * h * wi);
        }
    }
    (xs, ws)
}

/// a(τ)Q(τ)⁴ and ℐ(τ).
fn weight_and_kernel(sol: &OscillatorSolution, t: f64) -> Result<(f64, f64)> {
    let q = sol.q_at(t).0;
    Ok((sol.model.a.value(t) * q.powi(4), kernel_i(sol, t)?))
}

/// H_n(x, y) on jets via H_{k+1} = x H_k + 2k y H_{k−1}.
fn hermite2_jet(n: usize, x: Jet1<5>, y: Jet1<5>) -> Jet1<5> {
    let mut h0 = Jet1::constant(1.0);
    if n == 0 {
        return h0;
    }
    let mut h1 = x;
    for k in 1..n {
        let h2 = x.mul(h1).add(y.mul(h0).scale(2.0 * k as f64));
        h0 = h1;
        h1 = h2;
    }
    h1
}

/// ∂⁴_ξ H_8(2u, v) at ξ = 1 for the ordered pair ℐ₁ = ℐ(τ₁), ℐ₂ = ℐ(τ₂), τ₁ < τ₂.
fn xi_derivative(bd: &BoundaryData, i1: f64, i2: f64) -> f64 {
    let (pb, p0) = (bd.phi_b_hat, bd.phi0_hat);
    // ξ = 1 + ε
    let u = Jet1::from_coeffs(&[p0 * i1 + pb, p0 * i2 + pb]);
    let v = Jet1::from_coeffs(&[i1, 2.0 * i2, i2]);
    let h = hermite2_jet(8, u.scale(2.0), v);
    h.0[4] * factorial(4)
}

/// W(μ) for μ ∈ {1, 2} from the ξ-derivative representation.
pub fn w_mu_direct(sol: &OscillatorSolution, bd: &BoundaryData, mu: usize) -> Result<f64> {
    if !sol.q_positive {
        return Err(Error::FocalPoint);
    }
    let beta = sol.beta();
    let (ts, ws) = panel_rule(0.0, beta);
    match mu {
        1 => {
            let mut acc = 0.0;
            for (&t, &w) in ts.iter().zip(&ws) {
                let (aq, i) = weight_and_kernel(sol, t)?;
                let x = 2.0 * (bd.phi_b_hat + bd.phi0_hat * i);
                acc += w * aq * hermite2(4, x, i)?;
            }
            Ok(acc)
        }
        2 => {
            let (us, uw) = panel_rule(0.0, 1.0);
            let mut acc = 0.0;
            for (&s, &ws_) in ts.iter().zip(&ws) {
                let (aq1, i1) = weight_and_kernel(sol, s)?;
                if aq1 == 0.0 {
                    continue;
                }
                let jac = beta - s;
                let mut inner = 0.0;
                for (&u, &wu) in us.iter().zip(&uw) {
                    let t2 = s + jac * u;
                    let (aq2, i2) = weight_and_kernel(sol, t2)?;
                    inner += wu * aq2 * xi_derivative(bd, i1, i2);
                }
                acc += ws_ * aq1 * jac * inner;
            }
            Ok(acc)
        }
        _ => Err(Error::Domain(alloc::format!(
            "direct representation covers mu in {{1, 2}}, got {mu}"
        ))),
    }
}
