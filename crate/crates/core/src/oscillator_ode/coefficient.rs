use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Natural cubic spline through strictly increasing knots.
#[derive(Debug, Clone, PartialEq)]
pub struct Spline {
    x: Vec<f64>,
    y: Vec<f64>,
    /// second derivatives at the knots
    m: Vec<f64>,
}

impl Spline {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        let n = x.len();
        if n < 2 || y.len() != n {
            return Err(Error::InvalidModel(format!(
                "tabulated coefficient needs >= 2 matching samples, got {} and {}",
                n,
                y.len()
            )));
        }
        if x.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidModel("tabulated tau must be strictly increasing".into()));
        }
        let mut m = vec![0.0; n];
        if n > 2 {
            // tridiagonal system for interior second derivatives (Thomas algorithm)
            let k = n - 2;
            let mut diag = vec![0.0; k];
            let mut rhs = vec![0.0; k];
            let mut upper = vec![0.0; k];
            for i in 0..k {
                let h0 = x[i + 1] - x[i];
                let h1 = x[i + 2] - x[i + 1];
                diag[i] = 2.0 * (h0 + h1);
                upper[i] = h1;
                rhs[i] = 6.0 * ((y[i + 2] - y[i + 1]) / h1 - (y[i + 1] - y[i]) / h0);
            }
            for i in 1..k {
                let lower = x[i + 1] - x[i];
                let w = lower / diag[i - 1];
                diag[i] -= w * upper[i - 1];
                rhs[i] -= w * rhs[i - 1];
            }
            m[k] = rhs[k - 1] / diag[k - 1];
            for i in (0..k - 1).rev() {
                m[i + 1] = (rhs[i] - upper[i] * m[i + 2]) / diag[i];
            }
        }
        Ok(Spline { x, y, m })
    }

    pub fn range(&self) -> (f64, f64) {
        (self.x[0], self.x[self.x.len() - 1])
    }

    /// Value and first two derivatives at t (cubic extension beyond the ends).
    pub fn eval(&self, t: f64) -> [f64; 3] {
        let n = self.x.len();
        let i = match self.x.binary_search_by(|v| v.partial_cmp(&t).unwrap_or(core::cmp::Ordering::Less)) {
            Ok(i) => i.min(n - 2),
            Err(i) => i.saturating_sub(1).min(n - 2),
        };
        let h = self.x[i + 1] - self.x[i];
        let a = (self.x[i + 1] - t) / h;
        let b = (t - self.x[i]) / h;
        let (m0, m1) = (self.m[i], self.m[i + 1]);
        let (y0, y1) = (self.y[i], self.y[i + 1]);
        let v = a * y0 + b * y1 + ((a * a * a - a) * m0 + (b * b * b - b) * m1) * h * h / 6.0;
        let d1 = (y1 - y0) / h + ((1.0 - 3.0 * a * a) * m0 + (3.0 * b * b - 1.0) * m1) * h / 6.0;
        let d2 = a * m0 + b * m1;
        [v, d1, d2]
    }
}

/// A coefficient function of τ.
#[derive(Debug, Clone, PartialEq)]
pub enum Coefficient {
    Constant(f64),
    /// c₀ + c₁τ + c₂τ² + …
    Polynomial(Vec<f64>),
    Tabulated(Spline),
}

impl Coefficient {
    /// Value and first two τ-derivatives.
    pub fn jet(&self, t: f64) -> [f64; 3] {
        match self {
            Coefficient::Constant(v) => [*v, 0.0, 0.0],
            Coefficient::Polynomial(cs) => {
                let (mut v, mut d1, mut d2) = (0.0, 0.0, 0.0);
                for (k, c) in cs.iter().enumerate().rev() {
                    let kf = k as f64;
                    v = v * t + c;
                    if k >= 1 {
                        d1 = d1 * t + kf * c;
                    }
                    if k >= 2 {
                        d2 = d2 * t + kf * (kf - 1.0) * c;
                    }
                }
                [v, d1, d2]
            }
            Coefficient::Tabulated(s) => s.eval(t),
        }
    }

    pub fn value(&self, t: f64) -> f64 {
        match self {
            Coefficient::Constant(v) => *v,
            _ => self.jet(t)[0],
        }
    }

    pub fn is_constant(&self) -> bool {
        matches!(self, Coefficient::Constant(_))
    }
}

/// The coefficient functions a(τ), b(τ), c(τ) on [0, β].
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientModel {
    pub a: Coefficient,
    pub b: Coefficient,
    pub c: Coefficient,
    pub beta: f64,
}

impl CoefficientModel {
    pub fn new(a: Coefficient, b: Coefficient, c: Coefficient, beta: f64) -> Result<Self> {
        let m = CoefficientModel { a, b, c, beta };
        m.validate()?;
        Ok(m)
    }

    /// Constant coefficients.
    pub fn constant(a: f64, b: f64, c: f64, beta: f64) -> Result<Self> {
        Self::new(
            Coefficient::Constant(a),
            Coefficient::Constant(b),
            Coefficient::Constant(c),
            beta,
        )
    }

    /// Checks β > 0, table coverage, c > 0 and a ≥ 0 on a dense sample of [0, β].
    pub fn validate(&self) -> Result<()> {
        if !(self.beta > 0.0) || !self.beta.is_finite() {
            return Err(Error::InvalidModel(format!("beta must be positive, got {}", self.beta)));
        }
        for (name, coef) in [("a", &self.a), ("b", &self.b), ("c", &self.c)] {
            if let Coefficient::Tabulated(s) = coef {
                let (lo, hi) = s.range();
                let slack = 1e-12 * self.beta;
                if lo > slack || hi < self.beta - slack {
                    return Err(Error::InvalidModel(format!(
                        "table for {name} covers [{lo}, {hi}], not [0, {}]",
                        self.beta
                    )));
                }
            }
        }
        const SAMPLES: usize = 4096;
        for k in 0..=SAMPLES {
            let t = self.beta * k as f64 / SAMPLES as f64;
            let c = self.c.value(t);
            if !(c > 0.0) || !c.is_finite() {
                return Err(Error::SingularCoefficient(format!("c({t}) = {c} is not positive")));
            }
            let a = self.a.value(t);
            if !(a >= 0.0) || !a.is_finite() {
                return Err(Error::InvalidModel(format!("a({t}) = {a} is negative")));
            }
            if !self.b.value(t).is_finite() {
                return Err(Error::InvalidModel(format!("b({t}) is not finite")));
            }
        }
        Ok(())
    }

    /// The model with a(τ) multiplied by λ.
    pub fn scale_a(&self, lambda: f64) -> Self {
        let a = match &self.a {
            Coefficient::Constant(v) => Coefficient::Constant(lambda * v),
            Coefficient::Polynomial(cs) => Coefficient::Polynomial(cs.iter().map(|c| lambda * c).collect()),
            Coefficient::Tabulated(s) => Coefficient::Tabulated(Spline {
                x: s.x.clone(),
                y: s.y.iter().map(|v| lambda * v).collect(),
                m: s.m.iter().map(|v| lambda * v).collect(),
            }),
        };
        CoefficientModel { a, ..self.clone() }
    }

    /// (∂τ ln c, ∂τ² ln c).
    pub fn log_c_derivatives(&self, t: f64) -> (f64, f64) {
        let [c, d1, d2] = self.c.jet(t);
        let l1 = d1 / c;
        (l1, d2 / c - l1 * l1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_derivatives() {
        let p = Coefficient::Polynomial(vec![1.0, 2.0, -3.0, 0.5]);
        for &t in &[0.0, 0.3, -1.2] {
            let [v, d1, d2] = p.jet(t);
            assert!((v - (1.0 + 2.0 * t - 3.0 * t * t + 0.5 * t * t * t)).abs() < 1e-14);
            assert!((d1 - (2.0 - 6.0 * t + 1.5 * t * t)).abs() < 1e-13);
            assert!((d2 - (-6.0 + 3.0 * t)).abs() < 1e-13);
        }
    }

    #[test]
    fn spline_reproduces_linear_data_and_interpolates() {
        let x: Vec<f64> = (0..11).map(|k| 0.1 * k as f64).collect();
        let y: Vec<f64> = x.iter().map(|t| 2.0 - t).collect();
        let s = Spline::new(x.clone(), y).unwrap();
        let [v, d1, d2] = s.eval(0.37);
        assert!((v - 1.63).abs() < 1e-14 && (d1 + 1.0).abs() < 1e-13 && d2.abs() < 1e-12);
        let y: Vec<f64> = x.iter().map(|t| libm::sin(*t)).collect();
        let s = Spline::new(x, y).unwrap();
        assert!((s.eval(0.55)[0] - libm::sin(0.55)).abs() < 1e-4);
        assert!(Spline::new(vec![0.0, 0.0], vec![1.0, 1.0]).is_err());
    }

    #[test]
    fn validation() {
        assert!(CoefficientModel::constant(0.0, 1.0, 1.0, 1.0).is_ok());
        assert!(matches!(
            CoefficientModel::constant(0.0, 1.0, -1.0, 1.0),
            Err(Error::SingularCoefficient(_))
        ));
        assert!(CoefficientModel::constant(-0.1, 1.0, 1.0, 1.0).is_err());
        assert!(CoefficientModel::constant(0.0, 1.0, 1.0, 0.0).is_err());
        let s = Spline::new(vec![0.0, 0.5], vec![1.0, 1.0]).unwrap();
        let m = CoefficientModel::new(
            Coefficient::Constant(0.0),
            Coefficient::Constant(0.0),
            Coefficient::Tabulated(s),
            1.0,
        );
        assert!(m.is_err());
    }
}
