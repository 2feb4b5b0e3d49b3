use num_complex::Complex64;
use proptest::prelude::*;
use quartic_core::math::{binomial, factorial};
use quartic_core::special_fn::*;

/// Physicists' Hermite recurrence in complex arithmetic.
fn hermite_c(n: usize, x: Complex64) -> Complex64 {
    let (mut h0, mut h1) = (Complex64::new(1.0, 0.0), x * 2.0);
    if n == 0 {
        return h0;
    }
    for k in 1..n {
        let h2 = x * h1 * 2.0 - h0 * (2.0 * k as f64);
        h0 = h1;
        h1 = h2;
    }
    h1
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}

proptest! {
    #[test]
    fn hermite_product_summation(n in 0usize..=10, t in -2.0f64..2.0, x in -2.0f64..2.0, y in -2.0f64..2.0) {
        let lhs: f64 = (0..=n)
            .map(|k| binomial(n, k) * t.powi(k as i32) * hermite(k, x).unwrap() * hermite(n - k, y).unwrap())
            .sum();
        let r = (t * t + 1.0).sqrt();
        let rhs = r.powi(n as i32) * hermite(n, (t * x + y) / r).unwrap();
        prop_assert!(close(lhs, rhs, 1e-9), "{} vs {}", lhs, rhs);
    }

    #[test]
    fn hermite_shift_summation(n in 0usize..=10, t in 0.2f64..2.0, sign in prop::bool::ANY, x in -2.0f64..2.0) {
        let t = if sign { t } else { -t };
        let lhs: f64 = (0..=n).map(|k| binomial(n, k) * t.powi(k as i32) * hermite(k, x).unwrap()).sum();
        let rhs = t.powi(n as i32) * hermite(n, x + 1.0 / (2.0 * t)).unwrap();
        prop_assert!(close(lhs, rhs, 1e-9), "{} vs {}", lhs, rhs);
    }

    #[test]
    fn incomplete_decomposition(n in 0usize..=8, b in -2.0f64..2.0, z in -2.0f64..2.0, i in 0.0f64..3.0) {
        let lhs = hermite2(n, b + z * i, 0.25 * i).unwrap() / factorial(n);
        let rhs: f64 = (0..=n)
            .map(|k| i.powi(k as i32) * incomplete_hermite(HermiteIncompleteSpec::new(n, k, 0.25).unwrap(), b, z))
            .sum();
        prop_assert!(close(lhs, rhs, 1e-10), "{} vs {}", lhs, rhs);
    }

    #[test]
    fn incomplete_index_lowering(n in 1usize..=8, k in 0usize..=8, b in -2.0f64..2.0, z in -2.0f64..2.0) {
        let k = k.min(n);
        let h = 1e-5;
        let f = |x: f64, y: f64| incomplete_hermite_pq((n - k) as i64, k as i64, x, y, 0.25);
        let db = (f(b + h, z) - f(b - h, z)) / (2.0 * h);
        let dz = (f(b, z + h) - f(b, z - h)) / (2.0 * h);
        let lb = incomplete_hermite_pq((n - k) as i64 - 1, k as i64, b, z, 0.25);
        let lz = incomplete_hermite_pq((n - k) as i64, k as i64 - 1, b, z, 0.25);
        prop_assert!((db - lb).abs() < 1e-6, "{} vs {}", db, lb);
        prop_assert!((dz - lz).abs() < 1e-6, "{} vs {}", dz, lz);
    }

    #[test]
    fn a_sum_matches_complex_hermite(n in 0usize..=12, d in 1e-3f64..2.0) {
        let s = Complex64::new(-d, 0.0).sqrt();
        let closed = (-s).powu(n as u32) * hermite_c(n, s);
        let v = a_sum(n, d).unwrap();
        prop_assert!(closed.im.abs() <= 1e-10 * closed.re.abs().max(1.0));
        prop_assert!(close(v, closed.re, 1e-10), "{} vs {}", v, closed.re);
    }

    #[test]
    fn poincare_remainder_is_bounded(m in 0usize..=3, zi in 0usize..3, j in 0usize..=6) {
        let z = [5.0, 10.0, 20.0][zi];
        let nu = -(m as f64) - 0.5;
        // the expansion index is nu' with 𝒟_{−nu'−1/2} = 𝒟_nu
        let (value, bound) = pcf_poincare(m as f64, z, j).unwrap();
        let exact = pcf_scaled(nu, z).unwrap();
        prop_assert!((exact - value).abs() <= bound, "m={} z={} J={}: |{} - {}| > {}", m, z, j, exact, value, bound);
    }
}

#[test]
fn a_sum_low_orders() {
    assert_eq!(a_sum(0, 0.37).unwrap(), 1.0);
    assert!((a_sum(1, 0.37).unwrap() - 0.74).abs() < 1e-15);
    let s = Complex64::new(-0.83f64, 0.0).sqrt();
    let closed = (-s).powu(7) * hermite_c(7, s);
    assert!((a_sum(7, 0.83).unwrap() - closed.re).abs() < 1e-12 * closed.re.abs());
}
