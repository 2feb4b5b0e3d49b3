//! Quadrature rules: Gauss–Legendre nodes, adaptive Gauss–Kronrod on finite
//! intervals, exp-sinh double-exponential rule on the half line, and a
//! spectral-element layout for cumulative integrals.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

/// Gauss–Legendre nodes and weights on [−1, 1], ascending nodes.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut xs = vec![0.0; n];
    let mut ws = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        xs[i] = -x;
        xs[n - 1 - i] = x;
        ws[i] = w;
        ws[n - 1 - i] = w;
    }
    (xs, ws)
}

/// P_n(x) and P_n'(x).
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Legendre values P_0..=P_n at x.
fn legendre_all(n: usize, x: f64) -> Vec<f64> {
    let mut p = vec![0.0; n + 1];
    p[0] = 1.0;
    if n >= 1 {
        p[1] = x;
    }
    for k in 2..=n {
        let kf = k as f64;
        p[k] = ((2.0 * kf - 1.0) * x * p[k - 1] - (kf - 1.0) * p[k - 2]) / kf;
    }
    p
}

const K15_X: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const K15_W: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const G7_W: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * K15_W[7];
    let mut g = fc * G7_W[3];
    for i in 0..7 {
        let dx = h * K15_X[i];
        let s = f(c - dx) + f(c + dx);
        k += K15_W[i] * s;
        if i % 2 == 1 {
            g += G7_W[i / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

/// Adaptive Gauss–Kronrod (7/15) integration of f over [a, b].
pub fn integrate_gk<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_tol: f64,
) -> Result<(f64, f64)> {
    let mut segs: Vec<(f64, f64, f64, f64)> = Vec::new();
    let (v, e) = gk15(&mut f, a, b);
    segs.push((a, b, v, e));
    let mut total = v;
    let mut err = e;
    for _ in 0..4000 {
        if err <= abs_tol.max(rel_tol * total.abs()) {
            return Ok((total, err));
        }
        let (idx, _) = segs
            .iter()
            .enumerate()
            .fold((0, -1.0), |acc, (i, s)| if s.3 > acc.1 { (i, s.3) } else { acc });
        let (sa, sb, sv, se) = segs.swap_remove(idx);
        let m = 0.5 * (sa + sb);
        let (v1, e1) = gk15(&mut f, sa, m);
        let (v2, e2) = gk15(&mut f, m, sb);
        total += v1 + v2 - sv;
        err += e1 + e2 - se;
        segs.push((sa, m, v1, e1));
        segs.push((m, sb, v2, e2));
    }
    // recompute sums to avoid drift before reporting
    total = segs.iter().map(|s| s.2).sum();
    err = segs.iter().map(|s| s.3).sum();
    if err <= abs_tol.max(rel_tol * total.abs()) {
        Ok((total, err))
    } else {
        Err(Error::Convergence {
            what: "adaptive Gauss-Kronrod",
            achieved: err,
        })
    }
}

/// Exp-sinh rule for ∫₀^∞ f(x) dx with x = scale·exp(π/2·sinh t).
///
/// Levels halve the step until two successive estimates agree to `rel_tol`.
pub fn exp_sinh<F: FnMut(f64) -> f64>(mut f: F, scale: f64, rel_tol: f64) -> Result<f64> {
    const T_MAX: f64 = 4.5;
    let eval = |f: &mut F, t: f64| -> f64 {
        let u = 0.5 * PI * t.sinh();
        let x = scale * u.exp();
        if !x.is_finite() || x == 0.0 {
            return 0.0;
        }
        let dx = x * 0.5 * PI * t.cosh();
        let v = f(x) * dx;
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    let mut h = 0.5;
    let mut sum = eval(&mut f, 0.0);
    let mut k = 1;
    loop {
        let t = k as f64 * h;
        if t > T_MAX {
            break;
        }
        sum += eval(&mut f, t) + eval(&mut f, -t);
        k += 1;
    }
    let mut prev = sum * h;
    for _level in 0..12 {
        h *= 0.5;
        let mut k = 1;
        loop {
            let t = k as f64 * h;
            if t > T_MAX {
                break;
            }
            sum += eval(&mut f, t) + eval(&mut f, -t);
            k += 2;
        }
        let est = sum * h;
        let diff = (est - prev).abs();
        if diff <= rel_tol * est.abs() || (est == 0.0 && prev == 0.0) {
            return Ok(est);
        }
        prev = est;
    }
    Err(Error::Convergence {
        what: "exp-sinh quadrature",
        achieved: 0.0,
    })
}

/// Spectral-element layout: each interval of a grid carries `p`
/// Gauss–Legendre points, with an integration matrix for tail integrals.
#[derive(Debug, Clone)]
pub struct ElementGrid {
    pub nodes: Vec<f64>,
    pub p: usize,
    ref_x: Vec<f64>,
    ref_w: Vec<f64>,
    /// s[j*p + i] = ∫_{x_j}^{1} ℓ_i(x) dx
    s: Vec<f64>,
    /// all interior evaluation points, element-major
    pub points: Vec<f64>,
}

impl ElementGrid {
    pub fn new(nodes: Vec<f64>, p: usize) -> Self {
        let (ref_x, ref_w) = gauss_legendre(p);
        let mut s = vec![0.0; p * p];
        for j in 0..p {
            let pj = legendre_all(p, ref_x[j]);
            for i in 0..p {
                let pi = legendre_all(p, ref_x[i]);
                let mut acc = 0.5 * (1.0 - ref_x[j]);
                for n in 1..p {
                    acc += 0.5 * pi[n] * (pj[n - 1] - pj[n + 1]);
                }
                s[j * p + i] = ref_w[i] * acc;
            }
        }
        let mut points = Vec::with_capacity((nodes.len() - 1) * p);
        for k in 0..nodes.len() - 1 {
            let (a, b) = (nodes[k], nodes[k + 1]);
            for x in &ref_x {
                points.push(0.5 * (a + b) + 0.5 * (b - a) * x);
            }
        }
        ElementGrid {
            nodes,
            p,
            ref_x,
            ref_w,
            s,
            points,
        }
    }

    pub fn elements(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn ref_nodes(&self) -> (&[f64], &[f64]) {
        (&self.ref_x, &self.ref_w)
    }

    /// Tail integrals ∫_τ^{end} g for τ at every point, plus the values at the
    /// element boundaries (`boundary[k]` = ∫_{nodes[k]}^{end} g).
    pub fn tail_integrals(&self, g: &[f64]) -> (Vec<f64>, Vec<f64>) {
        let p = self.p;
        let ne = self.elements();
        let mut at_points = vec![0.0; ne * p];
        let mut boundary = vec![0.0; ne + 1];
        let mut acc = 0.0;
        for k in (0..ne).rev() {
            let half = 0.5 * (self.nodes[k + 1] - self.nodes[k]);
            let gk = &g[k * p..(k + 1) * p];
            for j in 0..p {
                let row = &self.s[j * p..(j + 1) * p];
                let part: f64 = row.iter().zip(gk).map(|(s, v)| s * v).sum();
                at_points[k * p + j] = acc + half * part;
            }
            let full: f64 = self.ref_w.iter().zip(gk).map(|(w, v)| w * v).sum();
            acc += half * full;
            boundary[k] = acc;
        }
        (at_points, boundary)
    }

    /// ∫ over the whole grid.
    pub fn integrate(&self, g: &[f64]) -> f64 {
        let p = self.p;
        let mut acc = 0.0;
        for k in 0..self.elements() {
            let half = 0.5 * (self.nodes[k + 1] - self.nodes[k]);
            let full: f64 = self
                .ref_w
                .iter()
                .zip(&g[k * p..(k + 1) * p])
                .map(|(w, v)| w * v)
                .sum();
            acc += half * full;
        }
        acc
    }

    /// Index of the element containing t (clamped).
    pub fn locate(&self, t: f64) -> usize {
        let ne = self.elements();
        match self
            .nodes
            .binary_search_by(|x| x.partial_cmp(&t).unwrap_or(core::cmp::Ordering::Less))
        {
            Ok(i) => i.min(ne - 1),
            Err(i) => i.saturating_sub(1).min(ne - 1),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let (x, w) = gauss_legendre(8);
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(14)).sum();
        assert!((s - 2.0 / 15.0).abs() < 1e-15);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn gk_and_exp_sinh() {
        let (v, _) = integrate_gk(|x| x.exp(), 0.0, 2.0, 1e-14, 0.0).unwrap();
        assert!((v - (2f64.exp() - 1.0)).abs() < 1e-13);
        let v = exp_sinh(|x| (-x).exp() / x.sqrt(), 1.0, 1e-14).unwrap();
        assert!((v - PI.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn element_tail_integrals() {
        let nodes: Vec<f64> = (0..=10).map(|k| k as f64 * 0.2).collect();
        let eg = ElementGrid::new(nodes, 8);
        let g: Vec<f64> = eg.points.iter().map(|t| t.cos()).collect();
        let (tail, bnd) = eg.tail_integrals(&g);
        for (t, v) in eg.points.iter().zip(&tail) {
            assert!((v - (2f64.sin() - t.sin())).abs() < 1e-14);
        }
        assert!((bnd[0] - 2f64.sin()).abs() < 1e-14);
        assert!((eg.integrate(&g) - 2f64.sin()).abs() < 1e-14);
        assert_eq!(eg.locate(0.0), 0);
        assert_eq!(eg.locate(0.3), 1);
        assert_eq!(eg.locate(2.0), 9);
    }
}
