//! Hermite polynomial families: ordinary H_n(x), two-variable H_n(x, y),
//! incomplete 𝓗_{p,q}(x, y | γ), and multi-index H_{n,…,n} with the coupling
//! structure of ordered Gaussian moments.

use crate::error::{Error, Result};
use crate::math::{binomial, factorial};

pub const MAX_HERMITE_DEGREE: usize = 64;

fn check_degree(n: usize) -> Result<()> {
    if n > MAX_HERMITE_DEGREE {
        Err(Error::Size(alloc::format!(
            "Hermite degree {n} exceeds {MAX_HERMITE_DEGREE}"
        )))
    } else {
        Ok(())
    }
}

/// Physicists' Hermite polynomial via H_{n+1} = 2x H_n − 2n H_{n−1}.
pub fn hermite(n: usize, x: f64) -> Result<f64> {
    check_degree(n)?;
    let (mut h0, mut h1) = (1.0, 2.0 * x);
    if n == 0 {
        return Ok(h0);
    }
    for k in 1..n {
        let h2 = 2.0 * x * h1 - 2.0 * k as f64 * h0;
        h0 = h1;
        h1 = h2;
    }
    Ok(h1)
}

/// Two-variable Hermite polynomial, generating function exp(xz + yz²),
/// via H_{n+1} = x H_n + 2n y H_{n−1}.
pub fn hermite2(n: usize, x: f64, y: f64) -> Result<f64> {
    check_degree(n)?;
    let (mut h0, mut h1) = (1.0, x);
    if n == 0 {
        return Ok(h0);
    }
    for k in 1..n {
        let h2 = x * h1 + 2.0 * k as f64 * y * h0;
        h0 = h1;
        h1 = h2;
    }
    Ok(h1)
}

/// Parameters of 𝓗_{n−κ,κ}(·,· | γ).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermiteIncompleteSpec {
    pub n: usize,
    pub kappa: usize,
    pub gamma: f64,
}

impl HermiteIncompleteSpec {
    pub fn new(n: usize, kappa: usize, gamma: f64) -> Result<Self> {
        if kappa > n {
            return Err(Error::Domain(alloc::format!("kappa {kappa} exceeds n {n}")));
        }
        check_degree(n)?;
        Ok(HermiteIncompleteSpec { n, kappa, gamma })
    }
}

/// 𝓗_{p,q}(x, y | γ) = Σ_k x^{p−k} y^{q−k} γ^k / ((p−k)! k! (q−k)!); zero if p or q < 0.
pub fn incomplete_hermite_pq(p: i64, q: i64, x: f64, y: f64, gamma: f64) -> f64 {
    if p < 0 || q < 0 {
        return 0.0;
    }
    let (p, q) = (p as usize, q as usize);
    let mut sum = 0.0;
    for k in 0..=p.min(q) {
        sum += x.powi((p - k) as i32) * y.powi((q - k) as i32) * gamma.powi(k as i32)
            / (factorial(p - k) * factorial(k) * factorial(q - k));
    }
    sum
}

/// 𝓗_{n−κ,κ}(φ_β, φ₀ | γ).
pub fn incomplete_hermite(spec: HermiteIncompleteSpec, phi_beta: f64, phi_0: f64) -> f64 {
    incomplete_hermite_pq(
        (spec.n - spec.kappa) as i64,
        spec.kappa as i64,
        phi_beta,
        phi_0,
        spec.gamma,
    )
}

/// H_{n,…,n}(x | M) for μ ∈ {1,2,3,4} equal indices: n!^μ times the
/// coefficient of Π u_i^n in exp(Σ x_i u_i + Σ m_i u_i² + Σ_{i<j} c_i u_i u_j).
///
/// `couplings[i]` couples slot i to every later slot, so `couplings.len() == μ − 1`.
pub fn multiindex_hermite(n: usize, xs: &[f64], ms: &[f64], couplings: &[f64]) -> Result<f64> {
    let mu = xs.len();
    if mu == 0 || mu > 4 {
        return Err(Error::Size(alloc::format!(
            "multi-index Hermite supports 1..=4 slots, got {mu}"
        )));
    }
    if ms.len() != mu || couplings.len() + 1 != mu {
        return Err(Error::Domain("multi-index Hermite: argument lengths disagree".into()));
    }
    if n > 8 {
        return Err(Error::Size(alloc::format!("multi-index Hermite degree {n} > 8")));
    }
    let h = |k: i64, i: usize| -> f64 {
        if k < 0 {
            0.0
        } else {
            hermite2(k as usize, xs[i], ms[i]).unwrap_or(0.0)
        }
    };
    let ni = n as i64;
    let f = |k: i64| factorial(k as usize);
    let c = |a: usize, b: usize| binomial(a, b);
    let total = match mu {
        1 => h(ni, 0),
        2 => {
            let mut s = 0.0;
            for k in 0..=n {
                s += c(n, k) * c(n, k) * f(k as i64) * couplings[0].powi(k as i32)
                    * h(ni - k as i64, 0)
                    * h(ni - k as i64, 1);
            }
            s
        }
        3 => {
            // slot 1 has k1 contractions (k1−p with slot 2, p with slot 3),
            // slots 2 and 3 share k2 more
            let (m1, m2) = (couplings[0], couplings[1]);
            let mut s = 0.0;
            for k1 in 0..=n {
                for k2 in 0..=n {
                    for p in 0..=k1 {
                        let n2 = ni - k2 as i64 - (k1 - p) as i64;
                        let n3 = ni - k2 as i64 - p as i64;
                        if n2 < 0 || n3 < 0 {
                            continue;
                        }
                        s += c(n, k1) * c(k1, p) * c(n, k2)
                            * m1.powi(k1 as i32) * m2.powi(k2 as i32)
                            * f(ni) * f(ni - k2 as i64) / (f(n2) * f(n3))
                            * h(ni - k1 as i64, 0)
                            * h(n2, 1)
                            * h(n3, 2);
                    }
                }
            }
            s
        }
        _ => {
            let (m12, m23, m34) = (couplings[0], couplings[1], couplings[2]);
            let mut s = 0.0;
            for k3 in 0..=n {
                for k2 in 0..=n {
                    for k1 in 0..=n {
                        let pre = c(n, k3) * c(n, k2) * c(n, k1)
                            * m34.powi(k3 as i32) * m23.powi(k2 as i32) * m12.powi(k1 as i32)
                            * f(ni) / f(ni - k3 as i64);
                        for m in 0..=k2 {
                            for p in 0..=k1 {
                                for q in 0..=p {
                                    let n2 = ni - k1 as i64 - k2 as i64 + p as i64;
                                    let n4 = ni - k3 as i64 - (k2 - m) as i64 - (p - q) as i64;
                                    let n3 = ni - k3 as i64 - m as i64 - q as i64;
                                    if n2 < 0 || n3 < 0 || n4 < 0 {
                                        continue;
                                    }
                                    s += pre * c(k2, m) * c(k1, p) * c(p, q)
                                        * h(ni - k1 as i64, 0)
                                        * f(ni - k2 as i64) / f(n2) * h(n2, 1)
                                        * f(ni - k3 as i64) / f(n4) * h(n4, 3)
                                        * f(ni - k3 as i64) / f(n3) * h(n3, 2);
                                }
                            }
                        }
                    }
                }
            }
            s
        }
    };
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::Jet;
    use alloc::vec::Vec;

    fn explicit_h(n: usize, x: f64) -> f64 {
        let mut s = 0.0;
        for k in 0..=n / 2 {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            s += sign * (2.0 * x).powi((n - 2 * k) as i32) / (factorial(k) * factorial(n - 2 * k));
        }
        factorial(n) * s
    }

    #[test]
    fn ordinary_hermite() {
        assert_eq!(hermite(0, 3.3).unwrap(), 1.0);
        assert_eq!(hermite(4, 0.0).unwrap(), 12.0);
        let v = hermite(6, 1.3).unwrap();
        assert!((v - explicit_h(6, 1.3)).abs() < 1e-10 * v.abs());
        assert!(hermite(65, 0.1).is_err());
    }

    #[test]
    fn two_variable_hermite() {
        assert!((hermite2(5, 1.7, 0.0).unwrap() - 1.7f64.powi(5)).abs() < 1e-13);
        assert!((hermite2(2, 0.3, -0.8).unwrap() - (0.09 - 1.6)).abs() < 1e-15);
        // generating-function Taylor coefficient via a jet in z
        let (x, y) = (1.1, -0.4);
        let z = Jet::variable(&[5], 0, 0.0);
        let g = z.scale(x).add(&z.mul(&z).scale(y)).exp();
        let r = g.coeff(&[5]) * factorial(5);
        assert!((hermite2(5, x, y).unwrap() - r).abs() < 1e-12);
        // ordinary as a special case
        assert!((hermite2(7, 2.0 * 0.6, -1.0).unwrap() - hermite(7, 0.6).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn incomplete_hermite_examples() {
        let (b, z) = (0.7, -1.3);
        let s0 = HermiteIncompleteSpec::new(4, 0, 0.25).unwrap();
        assert!((incomplete_hermite(s0, b, z) - b.powi(4) / 24.0).abs() < 1e-15);
        let s4 = HermiteIncompleteSpec::new(4, 4, 0.25).unwrap();
        assert!((incomplete_hermite(s4, b, z) - z.powi(4) / 24.0).abs() < 1e-15);
        assert!(HermiteIncompleteSpec::new(3, 4, 0.25).is_err());
        let i: f64 = 0.83;
        let sum: f64 = (0..=4)
            .map(|k| i.powi(k) * incomplete_hermite_pq(4 - k as i64, k as i64, b, z, 0.25))
            .sum();
        let r = hermite2(4, b + z * i, 0.25 * i).unwrap() / 24.0;
        assert!((sum - r).abs() < 1e-13);
    }

    fn jet_multi(n: usize, xs: &[f64], ms: &[f64], cs: &[f64]) -> f64 {
        let mu = xs.len();
        let degs: Vec<usize> = (0..mu).map(|_| n).collect();
        let u: Vec<Jet> = (0..mu).map(|i| Jet::variable(&degs, i, 0.0)).collect();
        let mut e = Jet::constant(&degs, 0.0);
        for i in 0..mu {
            e = e.add(&u[i].scale(xs[i])).add(&u[i].mul(&u[i]).scale(ms[i]));
            for j in i + 1..mu {
                e = e.add(&u[i].mul(&u[j]).scale(cs[i]));
            }
        }
        let g = e.exp();
        let exps: Vec<usize> = (0..mu).map(|_| n).collect();
        g.coeff(&exps) * factorial(n).powi(mu as i32)
    }

    #[test]
    fn multiindex_matches_jet_oracle() {
        let xs = [0.4, -0.9, 1.2, 0.3];
        let ms = [0.21, 0.15, 0.11, 0.05];
        let cs = [0.3, -0.2, 0.45];
        for mu in 1..=4 {
            for n in [1usize, 2, 4] {
                let v = multiindex_hermite(n, &xs[..mu], &ms[..mu], &cs[..mu - 1]).unwrap();
                let r = jet_multi(n, &xs[..mu], &ms[..mu], &cs[..mu - 1]);
                assert!((v - r).abs() <= 1e-10 * r.abs().max(1.0), "mu={mu} n={n}: {v} vs {r}");
            }
        }
        assert_eq!(
            multiindex_hermite(3, &[0.5], &[0.2], &[]).unwrap(),
            hermite2(3, 0.5, 0.2).unwrap()
        );
        let p = multiindex_hermite(4, &[0.5, -0.3], &[0.2, 0.1], &[0.0]).unwrap();
        let r = hermite2(4, 0.5, 0.2).unwrap() * hermite2(4, -0.3, 0.1).unwrap();
        assert!((p - r).abs() < 1e-13);
        assert!(multiindex_hermite(2, &[0.0; 5], &[0.0; 5], &[0.0; 4]).is_err());
    }
}
