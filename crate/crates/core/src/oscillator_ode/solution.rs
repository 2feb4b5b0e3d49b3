use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use super::coefficient::CoefficientModel;
use crate::error::{Error, Result};
use crate::math::neville_at_zero;
use crate::quadrature::{gauss_legendre, integrate_gk, ElementGrid};

pub const DEFAULT_GRID_N: usize = 256;
pub const MIN_GRID_N: usize = 64;
/// Gauss points per grid interval for the kernel tables.
pub const ELEMENT_ORDER: usize = 8;
/// Required agreement of the two regularizations of 𝒴.
pub const Y_REG_TOL: f64 = 1e-6;

/// Solution of one second-order linear ODE on the uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct OdeTrack {
    pub grid: Vec<f64>,
    pub y: Vec<f64>,
    pub ydot: Vec<f64>,
    /// max over the grid of |y_{h/2} − y_h|/15
    pub richardson: f64,
}

/// Classical RK4 for y'' = rhs(t, y, y') with `steps` equal steps.
fn rk4<F: Fn(f64, f64, f64) -> f64>(rhs: &F, y0: f64, v0: f64, beta: f64, steps: usize) -> (Vec<f64>, Vec<f64>) {
    let h = beta / steps as f64;
    let mut y = Vec::with_capacity(steps + 1);
    let mut v = Vec::with_capacity(steps + 1);
    let (mut yc, mut vc) = (y0, v0);
    y.push(yc);
    v.push(vc);
    for k in 0..steps {
        let t = k as f64 * h;
        let k1y = vc;
        let k1v = rhs(t, yc, vc);
        let k2y = vc + 0.5 * h * k1v;
        let k2v = rhs(t + 0.5 * h, yc + 0.5 * h * k1y, k2y);
        let k3y = vc + 0.5 * h * k2v;
        let k3v = rhs(t + 0.5 * h, yc + 0.5 * h * k2y, k3y);
        let k4y = vc + h * k3v;
        let k4v = rhs(t + h, yc + h * k3y, k4y);
        yc += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
        vc += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        y.push(yc);
        v.push(vc);
    }
    (y, v)
}

fn solve_track<F: Fn(f64, f64, f64) -> f64>(
    model: &CoefficientModel,
    grid_n: usize,
    rhs: F,
    y0: f64,
    v0: f64,
) -> Result<OdeTrack> {
    if grid_n < MIN_GRID_N {
        return Err(Error::Size(alloc::format!("grid_n {grid_n} below minimum {MIN_GRID_N}")));
    }
    model.validate()?;
    let beta = model.beta;
    let (yc, vc) = rk4(&rhs, y0, v0, beta, grid_n);
    let (yf, vf) = rk4(&rhs, y0, v0, beta, 2 * grid_n);
    let mut y = vec![0.0; grid_n + 1];
    let mut ydot = vec![0.0; grid_n + 1];
    let mut richardson: f64 = 0.0;
    for k in 0..=grid_n {
        y[k] = (16.0 * yf[2 * k] - yc[k]) / 15.0;
        ydot[k] = (16.0 * vf[2 * k] - vc[k]) / 15.0;
        richardson = richardson.max((yf[2 * k] - yc[k]).abs() / 15.0);
    }
    if !y.iter().chain(&ydot).all(|v| v.is_finite()) {
        return Err(Error::Convergence {
            what: "fixed-step ODE integration",
            achieved: f64::INFINITY,
        });
    }
    let grid = (0..=grid_n).map(|k| beta * k as f64 / grid_n as f64).collect();
    Ok(OdeTrack {
        grid,
        y,
        ydot,
        richardson,
    })
}

/// Q̈ + (∂τ ln c) Q̇ − (2b/c) Q = 0 with Q(0) = 0, Q̇(0) = 1.
pub fn solve_q(model: &CoefficientModel, grid_n: usize) -> Result<OdeTrack> {
    let rhs = |t: f64, y: f64, v: f64| {
        let (l1, _) = model.log_c_derivatives(t);
        -l1 * v + 2.0 * model.b.value(t) / model.c.value(t) * y
    };
    solve_track(model, grid_n, rhs, 0.0, 1.0)
}

/// f̈ − (∂τ ln c) ḟ − (2b/c + ∂τ² ln c) f = 0 with f(0) = 0, ḟ(0) = 2π/c(0).
pub fn solve_f(model: &CoefficientModel, grid_n: usize) -> Result<OdeTrack> {
    let rhs = |t: f64, y: f64, v: f64| {
        let (l1, l2) = model.log_c_derivatives(t);
        l1 * v + (2.0 * model.b.value(t) / model.c.value(t) + l2) * y
    };
    let c0 = model.c.value(0.0);
    solve_track(model, grid_n, rhs, 0.0, 2.0 * core::f64::consts::PI / c0)
}

/// Gridded Q, f, the kernel ℐ and the regularized boundary integral.
#[derive(Debug, Clone)]
pub struct OscillatorSolution {
    pub model: CoefficientModel,
    pub grid: Vec<f64>,
    pub q: Vec<f64>,
    pub qdot: Vec<f64>,
    /// Q̈ from the ODE, used by the quintic interpolant
    pub qddot: Vec<f64>,
    pub f: Vec<f64>,
    pub fdot: Vec<f64>,
    /// ℐ(τ) on the grid; +∞ at τ = 0, NaN when Q has a zero
    pub i_of_tau: Vec<f64>,
    /// analytic-subtraction value of 𝒴_reg (NaN when Q has a zero)
    pub y_reg: f64,
    pub q_positive: bool,
    pub richardson_q: f64,
    pub richardson_f: f64,
    /// Gauss points of every grid interval
    pub elements: ElementGrid,
    pub q_points: Vec<f64>,
    pub i_points: Vec<f64>,
    /// ∫_{grid[k]}^β [1/(cQ²) − 1/(c₀τ²)] dτ
    g_tail: Vec<f64>,
}

impl OscillatorSolution {
    pub fn new(model: &CoefficientModel, grid_n: usize) -> Result<Self> {
        let qt = solve_q(model, grid_n)?;
        let ft = solve_f(model, grid_n)?;
        let grid = qt.grid.clone();
        let qddot: Vec<f64> = grid
            .iter()
            .zip(qt.y.iter().zip(&qt.ydot))
            .map(|(&t, (&y, &v))| {
                let (l1, _) = model.log_c_derivatives(t);
                -l1 * v + 2.0 * model.b.value(t) / model.c.value(t) * y
            })
            .collect();
        let q_positive = qt.y[1..].iter().all(|&q| q > 0.0);
        let elements = ElementGrid::new(grid.clone(), ELEMENT_ORDER);
        let mut sol = OscillatorSolution {
            model: model.clone(),
            grid,
            q: qt.y,
            qdot: qt.ydot,
            qddot,
            f: ft.y,
            fdot: ft.ydot,
            i_of_tau: Vec::new(),
            y_reg: f64::NAN,
            q_positive,
            richardson_q: qt.richardson,
            richardson_f: ft.richardson,
            elements,
            q_points: Vec::new(),
            i_points: Vec::new(),
            g_tail: Vec::new(),
        };
        sol.q_points = sol.elements.points.iter().map(|&t| sol.q_at(t).0).collect();
        let n = sol.grid.len();
        if !q_positive {
            sol.i_of_tau = vec![f64::NAN; n];
            sol.i_points = vec![f64::NAN; sol.q_points.len()];
            return Ok(sol);
        }
        let c0 = sol.c0();
        let beta = model.beta;
        let g: Vec<f64> = sol
            .elements
            .points
            .iter()
            .zip(&sol.q_points)
            .map(|(&t, &q)| 1.0 / (model.c.value(t) * q * q) - 1.0 / (c0 * t * t))
            .collect();
        let (tail_pts, tail_nodes) = sol.elements.tail_integrals(&g);
        sol.i_points = sol
            .elements
            .points
            .iter()
            .zip(&tail_pts)
            .map(|(&t, &r)| 1.0 / (c0 * t) - 1.0 / (c0 * beta) + r)
            .collect();
        sol.i_of_tau = sol
            .grid
            .iter()
            .zip(&tail_nodes)
            .map(|(&t, &r)| {
                if t == 0.0 {
                    f64::INFINITY
                } else {
                    1.0 / (c0 * t) - 1.0 / (c0 * beta) + r
                }
            })
            .collect();
        sol.i_of_tau[n - 1] = 0.0;
        let cdot0 = model.c.jet(0.0)[1];
        sol.y_reg = -1.0 / (c0 * beta) + tail_nodes[0] - cdot0 / (2.0 * c0 * c0);
        sol.g_tail = tail_nodes;
        Ok(sol)
    }

    pub fn c0(&self) -> f64 {
        self.model.c.value(0.0)
    }

    pub fn beta(&self) -> f64 {
        self.model.beta
    }

    pub fn q_beta(&self) -> f64 {
        self.q[self.q.len() - 1]
    }

    pub fn qdot_beta(&self) -> f64 {
        self.qdot[self.qdot.len() - 1]
    }

    pub fn f_beta(&self) -> f64 {
        self.f[self.f.len() - 1]
    }

    fn require_positive(&self) -> Result<()> {
        if self.q_positive {
            Ok(())
        } else {
            Err(Error::FocalPoint)
        }
    }

    /// (Q, Q̇) at any τ ∈ [0, β] by quintic Hermite interpolation.
    pub fn q_at(&self, t: f64) -> (f64, f64) {
        let n = self.grid.len() - 1;
        let h = self.model.beta / n as f64;
        let k = ((t / h).floor() as isize).clamp(0, n as isize - 1) as usize;
        let s = (t - self.grid[k]) / h;
        let (s2, s3) = (s * s, s * s * s);
        let (s4, s5) = (s3 * s, s3 * s2);
        let basis = [
            1.0 - 10.0 * s3 + 15.0 * s4 - 6.0 * s5,
            s - 6.0 * s3 + 8.0 * s4 - 3.0 * s5,
            0.5 * (s2 - 3.0 * s3 + 3.0 * s4 - s5),
            10.0 * s3 - 15.0 * s4 + 6.0 * s5,
            -4.0 * s3 + 7.0 * s4 - 3.0 * s5,
            0.5 * (s3 - 2.0 * s4 + s5),
        ];
        let dbasis = [
            -30.0 * s2 + 60.0 * s3 - 30.0 * s4,
            1.0 - 18.0 * s2 + 32.0 * s3 - 15.0 * s4,
            0.5 * (2.0 * s - 9.0 * s2 + 12.0 * s3 - 5.0 * s4),
            30.0 * s2 - 60.0 * s3 + 30.0 * s4,
            -12.0 * s2 + 28.0 * s3 - 15.0 * s4,
            0.5 * (3.0 * s2 - 8.0 * s3 + 5.0 * s4),
        ];
        let vals = [
            self.q[k],
            h * self.qdot[k],
            h * h * self.qddot[k],
            self.q[k + 1],
            h * self.qdot[k + 1],
            h * h * self.qddot[k + 1],
        ];
        let q = basis.iter().zip(&vals).map(|(b, v)| b * v).sum();
        let qd: f64 = dbasis.iter().zip(&vals).map(|(b, v)| b * v).sum();
        (q, qd / h)
    }
}

/// ℐ(τ) = ∫_τ^β ds/(c Q²), written as 1/(c₀τ) − 1/(c₀β) + ∫_τ^β [1/(cQ²) − 1/(c₀s²)] ds.
pub fn kernel_i(sol: &OscillatorSolution, tau: f64) -> Result<f64> {
    sol.require_positive()?;
    let beta = sol.beta();
    if !(tau > 0.0) || tau > beta {
        return Err(Error::Domain(alloc::format!(
            "kernel I is defined for 0 < tau <= beta, got {tau}"
        )));
    }
    if tau == beta {
        return Ok(0.0);
    }
    let c0 = sol.c0();
    let k = sol.elements.locate(tau);
    let right = sol.grid[k + 1];
    let (x, w) = gauss_legendre(16);
    let half = 0.5 * (right - tau);
    let mid = 0.5 * (right + tau);
    let mut part = 0.0;
    for (xi, wi) in x.iter().zip(&w) {
        let t = mid + half * xi;
        let q = sol.q_at(t).0;
        part += wi * (1.0 / (sol.model.c.value(t) * q * q) - 1.0 / (c0 * t * t));
    }
    Ok(1.0 / (c0 * tau) - 1.0 / (c0 * beta) + half * part + sol.g_tail[k + 1])
}

/// Both regularizations of lim_{ε→0}[∫_ε^β dτ/(cQ²) − 1/(c(0)ε)] plus the
/// finite remnant of a non-constant c.
///
/// Route (i) is the analytic subtraction stored in the solution. Route (ii)
/// extrapolates B(ε) = Q̇(ε) ∫_ε^β dτ/(cQ²) − 1/(c(ε)Q(ε)) to ε = 0 over
/// ε = β·2^{−k}; B(ε) tends to the same limit without any subtraction.
pub fn regularized_y_routes(sol: &OscillatorSolution) -> Result<(f64, f64)> {
    sol.require_positive()?;
    let beta = sol.beta();
    let c = &sol.model.c;
    let mut eps = Vec::new();
    let mut vals = Vec::new();
    for k in 2..=8 {
        let e = beta * 0.5f64.powi(k);
        let (i_direct, _) = integrate_gk(
            |t| {
                let q = sol.q_at(t).0;
                1.0 / (c.value(t) * q * q)
            },
            e,
            beta,
            1e-14,
            1e-15,
        )?;
        let (q, qd) = sol.q_at(e);
        eps.push(e);
        vals.push(qd * i_direct - 1.0 / (c.value(e) * q));
    }
    Ok((sol.y_reg, neville_at_zero(&eps, &vals)))
}

/// 𝒴_reg after checking that both regularization routes agree to 1e−6.
pub fn regularized_y(sol: &OscillatorSolution) -> Result<f64> {
    let (first, second) = regularized_y_routes(sol)?;
    if (first - second).abs() > Y_REG_TOL * first.abs().max(1.0) {
        return Err(Error::Disagreement { first, second });
    }
    Ok(first)
}
