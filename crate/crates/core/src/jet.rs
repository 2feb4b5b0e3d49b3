//! Multivariate truncated Taylor series (jets) with a per-variable degree cap.
//!
//! Coefficients are stored densely; index = Σ_v e_v · stride_v.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    degs: Vec<usize>,
    strides: Vec<usize>,
    pub coeffs: Vec<f64>,
}

impl Jet {
    pub fn constant(degs: &[usize], c: f64) -> Self {
        let mut strides = vec![0; degs.len()];
        let mut s = 1;
        for (v, d) in degs.iter().enumerate() {
            strides[v] = s;
            s *= d + 1;
        }
        let mut coeffs = vec![0.0; s];
        coeffs[0] = c;
        Jet {
            degs: degs.to_vec(),
            strides,
            coeffs,
        }
    }

    /// The jet of `value + ε_var`.
    pub fn variable(degs: &[usize], var: usize, value: f64) -> Self {
        let mut j = Jet::constant(degs, value);
        if degs[var] >= 1 {
            j.coeffs[j.strides[var]] = 1.0;
        }
        j
    }

    fn exponents(&self, mut idx: usize) -> Vec<usize> {
        let mut e = vec![0; self.degs.len()];
        for v in 0..self.degs.len() {
            e[v] = idx % (self.degs[v] + 1);
            idx /= self.degs[v] + 1;
        }
        e
    }

    /// Coefficient of Π ε_v^{e_v}.
    pub fn coeff(&self, exps: &[usize]) -> f64 {
        let mut idx = 0;
        for (v, e) in exps.iter().enumerate() {
            if *e > self.degs[v] {
                return 0.0;
            }
            idx += e * self.strides[v];
        }
        self.coeffs[idx]
    }

    pub fn value(&self) -> f64 {
        self.coeffs[0]
    }

    pub fn add(&self, o: &Jet) -> Jet {
        let mut r = self.clone();
        for (a, b) in r.coeffs.iter_mut().zip(&o.coeffs) {
            *a += b;
        }
        r
    }

    pub fn sub(&self, o: &Jet) -> Jet {
        let mut r = self.clone();
        for (a, b) in r.coeffs.iter_mut().zip(&o.coeffs) {
            *a -= b;
        }
        r
    }

    pub fn scale(&self, s: f64) -> Jet {
        let mut r = self.clone();
        r.coeffs.iter_mut().for_each(|a| *a *= s);
        r
    }

    pub fn add_const(&self, c: f64) -> Jet {
        let mut r = self.clone();
        r.coeffs[0] += c;
        r
    }

    pub fn mul(&self, o: &Jet) -> Jet {
        let n = self.coeffs.len();
        let mut r = Jet::constant(&self.degs, 0.0);
        let nv = self.degs.len();
        let ex: Vec<Vec<usize>> = (0..n).map(|i| self.exponents(i)).collect();
        for i in 0..n {
            let a = self.coeffs[i];
            if a == 0.0 {
                continue;
            }
            'outer: for j in 0..n {
                let b = o.coeffs[j];
                if b == 0.0 {
                    continue;
                }
                let mut idx = 0;
                for v in 0..nv {
                    let e = ex[i][v] + ex[j][v];
                    if e > self.degs[v] {
                        continue 'outer;
                    }
                    idx += e * self.strides[v];
                }
                r.coeffs[idx] += a * b;
            }
        }
        r
    }

    pub fn powi(&self, n: usize) -> Jet {
        let mut r = Jet::constant(&self.degs, 1.0);
        for _ in 0..n {
            r = r.mul(self);
        }
        r
    }

    /// exp of a jet via the power series of the nilpotent part.
    pub fn exp(&self) -> Jet {
        let c0 = self.coeffs[0];
        let mut nil = self.clone();
        nil.coeffs[0] = 0.0;
        let total: usize = self.degs.iter().sum();
        let mut r = Jet::constant(&self.degs, 1.0);
        let mut term = Jet::constant(&self.degs, 1.0);
        for k in 1..=total {
            term = term.mul(&nil).scale(1.0 / k as f64);
            r = r.add(&term);
        }
        r.scale(c0.exp())
    }
}

/// Univariate jet truncated after ε^{N−1}, stored inline.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet1<const N: usize>(pub [f64; N]);

impl<const N: usize> Jet1<N> {
    pub fn constant(c: f64) -> Self {
        let mut a = [0.0; N];
        a[0] = c;
        Jet1(a)
    }

    /// c₀ + c₁ε + c₂ε² + … from the given leading coefficients.
    pub fn from_coeffs(cs: &[f64]) -> Self {
        let mut a = [0.0; N];
        for (d, s) in a.iter_mut().zip(cs) {
            *d = *s;
        }
        Jet1(a)
    }

    pub fn add(self, o: Self) -> Self {
        let mut a = self.0;
        for (x, y) in a.iter_mut().zip(o.0) {
            *x += y;
        }
        Jet1(a)
    }

    pub fn scale(self, s: f64) -> Self {
        Jet1(self.0.map(|x| x * s))
    }

    pub fn mul(self, o: Self) -> Self {
        let mut a = [0.0; N];
        for i in 0..N {
            for j in 0..N - i {
                a[i + j] += self.0[i] * o.0[j];
            }
        }
        Jet1(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_rule_and_exp() {
        let degs = [3, 2];
        let x = Jet::variable(&degs, 0, 0.5);
        let y = Jet::variable(&degs, 1, -1.0);
        // f = x^2 y -> d^2/dx^2 d/dy / (2!1!) = 1
        let f = x.mul(&x).mul(&y);
        assert!((f.coeff(&[2, 1]) - 1.0).abs() < 1e-15);
        assert!((f.coeff(&[1, 1]) - 1.0).abs() < 1e-15);
        let e = x.exp();
        assert!((e.coeff(&[3, 0]) - 0.5f64.exp() / 6.0).abs() < 1e-15);
    }

    #[test]
    fn inline_jet_matches_dense_jet() {
        let a = Jet1::<4>::from_coeffs(&[1.5, -0.5, 0.25]);
        let b = Jet1::<4>::from_coeffs(&[0.3, 2.0]);
        let p = a.mul(b).add(a.scale(2.0));
        let x = Jet::variable(&[3], 0, 0.0);
        let da = x.mul(&x).scale(0.25).add(&x.scale(-0.5)).add_const(1.5);
        let db = x.scale(2.0).add_const(0.3);
        let dp = da.mul(&db).add(&da.scale(2.0));
        for k in 0..4 {
            assert!((p.0[k] - dp.coeff(&[k])).abs() < 1e-15);
        }
    }
}
