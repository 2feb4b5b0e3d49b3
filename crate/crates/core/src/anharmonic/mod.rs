//! The anharmonic correction series: ordered simplex integrals of aQ⁴ℐ^κ,
//! the 𝒟 recurrence over incomplete Hermite polynomials, the order-μ terms
//! W(μ), the truncated propagator and the 𝒫₁ diagnostic series.

mod direct;
mod poly;

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::math::factorial;
use crate::oscillator_ode::{harmonic_propagator, BoundaryData, CoefficientModel, OscillatorSolution};

pub use direct::w_mu_direct;
pub use poly::Poly2;

/// Default truncation order of the series.
pub const DEFAULT_MU_MAX: usize = 3;
/// Largest supported order (the κ-sum has 5^μ terms).
pub const MU_CAP: usize = 4;

/// Indices κ₁…κ_μ, each in [0, 4], in time order (κ₁ at the earliest time).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KappaVector(Vec<u8>);

impl KappaVector {
    pub fn new(kappas: &[u8]) -> Result<Self> {
        if kappas.iter().any(|&k| k > 4) {
            return Err(Error::Domain("kappa entries must lie in [0, 4]".into()));
        }
        Ok(KappaVector(kappas.to_vec()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }

    /// Position in the base-5 enumeration, first entry most significant.
    fn code(&self) -> usize {
        self.0.iter().fold(0, |acc, &k| 5 * acc + k as usize)
    }

    fn from_code(mut code: usize, mu: usize) -> Self {
        let mut v = vec![0u8; mu];
        for i in (0..mu).rev() {
            v[i] = (code % 5) as u8;
            code /= 5;
        }
        KappaVector(v)
    }

    fn reversed(&self) -> Self {
        KappaVector(self.0.iter().rev().copied().collect())
    }
}

fn check_order(mu: usize) -> Result<()> {
    if mu > MU_CAP {
        Err(Error::CapExceeded {
            requested: mu,
            cap: MU_CAP,
        })
    } else {
        Ok(())
    }
}

fn require_positive(sol: &OscillatorSolution) -> Result<()> {
    if sol.q_positive {
        Ok(())
    } else {
        Err(Error::FocalPoint)
    }
}

/// Weight (4!/(4μ)!)(−1)^μ(1/4)^μ of W(μ) in the propagator series, μ ≥ 1;
/// the leading term μ = 0 carries weight 1.
pub fn series_coefficient(mu: usize) -> f64 {
    if mu == 0 {
        return 1.0;
    }
    let sign = if mu % 2 == 0 { 1.0 } else { -1.0 };
    sign * factorial(4) / factorial(4 * mu) * 0.25f64.powi(mu as i32)
}

/// h_κ = −4·4!·𝓗_{4−κ,κ}(φ̂_β, φ̂₀ | γ) as a polynomial in (φ̂_β, φ̂₀).
fn h_poly(kappa: u8, gamma: f64) -> Poly2 {
    Poly2::incomplete_hermite(4 - kappa as usize, kappa as usize, gamma).scale(-96.0)
}

/// h_κ at the boundary point.
pub fn h_kappa(kappa: u8, bd: &BoundaryData) -> Result<f64> {
    if kappa > 4 {
        return Err(Error::Domain("kappa must lie in [0, 4]".into()));
    }
    Ok(h_poly(kappa, bd.gamma).eval(bd.phi_b_hat, bd.phi0_hat))
}

/// Ô_κ P = Σ_{n=0}^{4} (∂ⁿ_{φ̂₀} h_κ)(∂ⁿ_{φ̂_β} P)/(2ⁿ n!); `skip_zero` drops
/// n = 0, giving Â_κ = Ô_κ − h_κ.
fn apply_operator(kappa: u8, gamma: f64, p: &Poly2, skip_zero: bool) -> Poly2 {
    let h = h_poly(kappa, gamma);
    let mut r = Poly2::zero();
    let start = if skip_zero { 1 } else { 0 };
    for n in start..=4 {
        let hn = h.dy(n);
        if hn.is_zero() {
            continue;
        }
        let pn = p.dx(n);
        if pn.is_zero() {
            continue;
        }
        r.add_assign(&hn.mul(&pn).scale(1.0 / (2f64.powi(n as i32) * factorial(n))));
    }
    r
}

fn chain_poly(kv: &KappaVector, gamma: f64, skip_zero: bool) -> Poly2 {
    let k = kv.as_slice();
    let mut p = h_poly(k[k.len() - 1], gamma);
    for &kappa in k[..k.len() - 1].iter().rev() {
        p = apply_operator(kappa, gamma, &p, skip_zero);
    }
    p
}

/// (−4)^μ(4!)^μ 𝒟(κ₁,…,κ_μ) = Ô_{κ₁}⋯Ô_{κ_{μ−1}} h_{κ_μ} at the boundary point.
pub fn d_function(kv: &KappaVector, bd: &BoundaryData) -> Result<f64> {
    if kv.is_empty() {
        return Err(Error::Domain("d_function needs mu >= 1".into()));
    }
    Ok(chain_poly(kv, bd.gamma, false).eval(bd.phi_b_hat, bd.phi0_hat))
}

/// 𝒵_{μ,μ−1} = Â_{κ₁}⋯Â_{κ_{μ−1}} h_{κ_μ} at the boundary point.
pub fn z_function(kv: &KappaVector, bd: &BoundaryData) -> Result<f64> {
    if kv.is_empty() {
        return Err(Error::Domain("z_function needs mu >= 1".into()));
    }
    Ok(chain_poly(kv, bd.gamma, true).eval(bd.phi_b_hat, bd.phi0_hat))
}

/// a(τ)Q(τ)⁴ℐ(τ)^κ at the element points, κ = 0…4.
fn integrand_tables(sol: &OscillatorSolution) -> [Vec<f64>; 5] {
    let base: Vec<f64> = sol
        .elements
        .points
        .iter()
        .zip(&sol.q_points)
        .map(|(&t, &q)| sol.model.a.value(t) * q.powi(4))
        .collect();
    core::array::from_fn(|k| {
        base.iter()
            .zip(&sol.i_points)
            .map(|(b, i)| b * i.powi(k as i32))
            .collect()
    })
}

/// Ordered integral ∫₀^β aQ⁴ℐ^{κ₁} ∫_{τ₁}^β aQ⁴ℐ^{κ₂} ⋯ ∫_{τ_{μ−1}}^β aQ⁴ℐ^{κ_μ}.
pub fn nested_integral(sol: &OscillatorSolution, kv: &KappaVector) -> Result<f64> {
    require_positive(sol)?;
    check_order(kv.len())?;
    if kv.is_empty() {
        return Ok(1.0);
    }
    let f = integrand_tables(sol);
    let k = kv.as_slice();
    let mut inner: Option<Vec<f64>> = None;
    for j in (0..k.len()).rev() {
        let g: Vec<f64> = match &inner {
            Some(t) => f[k[j] as usize].iter().zip(t).map(|(a, b)| a * b).collect(),
            None => f[k[j] as usize].clone(),
        };
        if j == 0 {
            return Ok(sol.elements.integrate(&g));
        }
        inner = Some(sol.elements.tail_integrals(&g).0);
    }
    unreachable!()
}

/// All 5^μ nested integrals, indexed by the base-5 code of κ.
pub fn all_nested_integrals(sol: &OscillatorSolution, mu: usize) -> Result<Vec<f64>> {
    require_positive(sol)?;
    check_order(mu)?;
    if mu == 0 {
        return Ok(vec![1.0]);
    }
    let f = integrand_tables(sol);
    let mut out = vec![0.0; 5usize.pow(mu as u32)];
    fill_suffix(sol, &f, mu, mu - 1, None, 0, &mut out);
    Ok(out)
}

/// Depth-first over shared suffixes κ_{j+1..μ}; `suffix_code` holds their
/// base-5 digits in the low positions.
fn fill_suffix(
    sol: &OscillatorSolution,
    f: &[Vec<f64>; 5],
    mu: usize,
    j: usize,
    inner: Option<&[f64]>,
    suffix_code: usize,
    out: &mut [f64],
) {
    let place = 5usize.pow((mu - 1 - j) as u32);
    for k in 0..5 {
        let g: Vec<f64> = match inner {
            Some(t) => f[k].iter().zip(t).map(|(a, b)| a * b).collect(),
            None => f[k].clone(),
        };
        let code = suffix_code + k * place;
        if j == 0 {
            out[code] = sol.elements.integrate(&g);
        } else {
            let tail = sol.elements.tail_integrals(&g).0;
            fill_suffix(sol, f, mu, j - 1, Some(&tail), code, out);
        }
    }
}

/// The μ-th order term coef_μ·W(μ) = Σ_κ I_{reverse κ}·(Ô_{κ₁}⋯h_{κ_μ}).
///
/// The outermost operator belongs to the latest time, so the d-chain in
/// operator order pairs with the nested integral in reversed time order.
fn order_term(sol: &OscillatorSolution, bd: &BoundaryData, mu: usize, skip_zero: bool) -> Result<f64> {
    let nested = all_nested_integrals(sol, mu)?;
    let mut total = 0.0;
    for code in 0..nested.len() {
        let kv = KappaVector::from_code(code, mu);
        let i = nested[kv.reversed().code()];
        let d = chain_poly(&kv, bd.gamma, skip_zero).eval(bd.phi_b_hat, bd.phi0_hat);
        total += i * d;
    }
    Ok(total)
}

/// W(μ), normalized so that the propagator is
/// W_harm/√f(β)·Σ_μ (4!/(4μ)!)(−1)^μ(1/4)^μ W(μ); W(0) = 1.
pub fn w_mu(sol: &OscillatorSolution, bd: &BoundaryData, mu: usize) -> Result<f64> {
    check_order(mu)?;
    require_positive(sol)?;
    if mu == 0 {
        return Ok(1.0);
    }
    Ok(order_term(sol, bd, mu, false)? / series_coefficient(mu))
}

/// Partial sums of 𝒫₁ = Σ_μ Σ_κ 𝒵_{μ,μ−1}(κ) I_κ.
#[derive(Debug, Clone, PartialEq)]
pub struct P1Series {
    pub value: f64,
    /// partial_sums[k] includes orders 1…k+1
    pub partial_sums: Vec<f64>,
}

pub fn p1_series(sol: &OscillatorSolution, bd: &BoundaryData, mu_max: usize) -> Result<P1Series> {
    check_order(mu_max)?;
    require_positive(sol)?;
    let mut acc = 0.0;
    let mut partial_sums = Vec::with_capacity(mu_max);
    for mu in 1..=mu_max {
        acc += order_term(sol, bd, mu, true)?;
        partial_sums.push(acc);
    }
    Ok(P1Series {
        value: acc,
        partial_sums,
    })
}

/// Harmonic part, per-order terms and the truncated total.
#[derive(Debug, Clone, PartialEq)]
pub struct PropagatorBreakdown {
    /// e^{exponent} of the harmonic part
    pub harmonic_value: f64,
    pub f_beta: f64,
    /// W(μ), μ = 0…μ_max
    pub w_mu_terms: Vec<f64>,
    /// (4!/(4μ)!)(−1)^μ(1/4)^μ
    pub series_coefficients: Vec<f64>,
    pub total: f64,
    pub p1: f64,
    /// |last included term| of the total
    pub truncation_estimate: f64,
}

impl PropagatorBreakdown {
    /// harmonic_value/√f(β).
    pub fn scale(&self) -> f64 {
        self.harmonic_value / self.f_beta.sqrt()
    }

    /// Totals truncated after each order.
    pub fn cumulative_totals(&self) -> Vec<f64> {
        let s = self.scale();
        let mut acc = 0.0;
        self.series_coefficients
            .iter()
            .zip(&self.w_mu_terms)
            .map(|(c, w)| {
                acc += c * w;
                s * acc
            })
            .collect()
    }
}

/// Assembles the harmonic part and the series up to `mu_max` from an
/// existing solution.
pub fn propagator_from_solution(sol: &OscillatorSolution, bd: &BoundaryData, mu_max: usize) -> Result<PropagatorBreakdown> {
    check_order(mu_max)?;
    require_positive(sol)?;
    let harm = harmonic_propagator(sol, bd)?;
    let harmonic_value = harm.exponent.exp();
    let f_beta = sol.f_beta();
    let mut w_mu_terms = Vec::with_capacity(mu_max + 1);
    let mut series_coefficients = Vec::with_capacity(mu_max + 1);
    for mu in 0..=mu_max {
        w_mu_terms.push(w_mu(sol, bd, mu)?);
        series_coefficients.push(series_coefficient(mu));
    }
    let scale = harmonic_value / f_beta.sqrt();
    let sum: f64 = series_coefficients.iter().zip(&w_mu_terms).map(|(c, w)| c * w).sum();
    let last = series_coefficients[mu_max] * w_mu_terms[mu_max];
    let p1 = if mu_max >= 1 { p1_series(sol, bd, mu_max)?.value } else { 0.0 };
    Ok(PropagatorBreakdown {
        harmonic_value,
        f_beta,
        w_mu_terms,
        series_coefficients,
        total: scale * sum,
        p1,
        truncation_estimate: (scale * last).abs(),
    })
}

/// Solves the ODEs on `grid_n` steps and evaluates the truncated propagator.
pub fn propagator(
    model: &CoefficientModel,
    phi0: f64,
    phi_b: f64,
    mu_max: usize,
    grid_n: usize,
) -> Result<PropagatorBreakdown> {
    check_order(mu_max)?;
    let sol = OscillatorSolution::new(model, grid_n)?;
    require_positive(&sol)?;
    let bd = BoundaryData::new(&sol, phi0, phi_b)?;
    propagator_from_solution(&sol, &bd, mu_max)
}
