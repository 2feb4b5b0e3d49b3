use alloc::vec;
use alloc::vec::Vec;

use crate::math::factorial;

/// Maximum total degree carried by [`Poly2`].
pub const MAX_DEGREE: usize = 16;
const STRIDE: usize = MAX_DEGREE + 1;

/// Dense bivariate polynomial Σ c_{ij} xⁱ yʲ, x = φ̂_β, y = φ̂₀.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly2 {
    c: Vec<f64>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2 {
            c: vec![0.0; STRIDE * STRIDE],
        }
    }

    pub fn one() -> Self {
        let mut p = Self::zero();
        p.c[0] = 1.0;
        p
    }

    pub fn coeff(&self, i: usize, j: usize) -> f64 {
        self.c[i * STRIDE + j]
    }

    fn add_term(&mut self, i: usize, j: usize, v: f64) {
        assert!(i + j <= MAX_DEGREE, "polynomial degree overflow");
        self.c[i * STRIDE + j] += v;
    }

    /// 𝓗_{p,q}(x, y | γ) = Σ_k x^{p−k} y^{q−k} γ^k / ((p−k)! k! (q−k)!).
    pub fn incomplete_hermite(p: usize, q: usize, gamma: f64) -> Self {
        let mut r = Self::zero();
        for k in 0..=p.min(q) {
            r.add_term(
                p - k,
                q - k,
                gamma.powi(k as i32) / (factorial(p - k) * factorial(k) * factorial(q - k)),
            );
        }
        r
    }

    pub fn scale(&self, s: f64) -> Self {
        Poly2 {
            c: self.c.iter().map(|v| v * s).collect(),
        }
    }

    pub fn add_assign(&mut self, o: &Poly2) {
        for (a, b) in self.c.iter_mut().zip(&o.c) {
            *a += b;
        }
    }

    pub fn sub(&self, o: &Poly2) -> Self {
        Poly2 {
            c: self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect(),
        }
    }

    fn terms(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.c
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != 0.0)
            .map(|(k, v)| (k / STRIDE, k % STRIDE, *v))
    }

    pub fn mul(&self, o: &Poly2) -> Self {
        let mut r = Self::zero();
        let ot: Vec<_> = o.terms().collect();
        for (i, j, a) in self.terms() {
            for &(k, l, b) in &ot {
                r.add_term(i + k, j + l, a * b);
            }
        }
        r
    }

    /// ∂ⁿ/∂xⁿ.
    pub fn dx(&self, n: usize) -> Self {
        let mut r = Self::zero();
        for (i, j, a) in self.terms() {
            if i >= n {
                r.add_term(i - n, j, a * factorial(i) / factorial(i - n));
            }
        }
        r
    }

    /// ∂ⁿ/∂yⁿ.
    pub fn dy(&self, n: usize) -> Self {
        let mut r = Self::zero();
        for (i, j, a) in self.terms() {
            if j >= n {
                r.add_term(i, j - n, a * factorial(j) / factorial(j - n));
            }
        }
        r
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|v| *v == 0.0)
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let mut acc = 0.0;
        for i in (0..STRIDE).rev() {
            let mut row = 0.0;
            for j in (0..STRIDE).rev() {
                row = row * y + self.c[i * STRIDE + j];
            }
            acc = acc * x + row;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special_fn::incomplete_hermite_pq;

    #[test]
    fn incomplete_hermite_and_index_lowering() {
        let (x, y, g) = (0.7, -1.2, 0.25);
        for p in 0..5 {
            for q in 0..5 {
                let h = Poly2::incomplete_hermite(p, q, g);
                assert!((h.eval(x, y) - incomplete_hermite_pq(p as i64, q as i64, x, y, g)).abs() < 1e-14);
                let lx = incomplete_hermite_pq(p as i64 - 1, q as i64, x, y, g);
                let ly = incomplete_hermite_pq(p as i64, q as i64 - 1, x, y, g);
                assert!((h.dx(1).eval(x, y) - lx).abs() < 1e-14);
                assert!((h.dy(1).eval(x, y) - ly).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn product_evaluates_to_product() {
        let a = Poly2::incomplete_hermite(3, 1, 0.25);
        let b = Poly2::incomplete_hermite(2, 2, 0.25);
        let (x, y) = (0.3, 1.1);
        assert!((a.mul(&b).eval(x, y) - a.eval(x, y) * b.eval(x, y)).abs() < 1e-14);
        assert!(Poly2::zero().is_zero() && !Poly2::one().is_zero());
    }
}
