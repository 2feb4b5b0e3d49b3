//! 𝒜_j^k = 2^{2j−k} C(k, j) j! / (2j−k)!, the coefficients expanding
//! (2i)!/(2i−n)! in falling factorials of i.

use crate::error::{Error, Result};
use crate::math::{binomial, binomial_u64, factorial};

/// Exact 𝒜_j^k; zero outside the support 2j ≥ k, j ≤ k.
pub fn a_coeff(j: usize, k: usize) -> Result<u128> {
    if j > k || 2 * j < k {
        return Ok(0);
    }
    let overflow = || Error::Size(alloc::format!("A coefficient ({j},{k}) overflows u128"));
    let b = binomial_u64(k as u64, j as u64).ok_or_else(overflow)? as u128;
    let mut ratio: u128 = 1;
    for t in (2 * j - k + 1)..=j {
        ratio = ratio.checked_mul(t as u128).ok_or_else(overflow)?;
    }
    let pow = 1u128.checked_shl((2 * j - k) as u32).ok_or_else(overflow)?;
    b.checked_mul(ratio)
        .and_then(|v| v.checked_mul(pow))
        .ok_or_else(overflow)
}

pub fn a_coeff_f64(j: usize, k: usize) -> f64 {
    if j > k || 2 * j < k {
        return 0.0;
    }
    2f64.powi((2 * j - k) as i32) * binomial(k, j) * factorial(j) / factorial(2 * j - k)
}

/// Σ_i 𝒜_i^n d^i over the support of 𝒜.
pub fn a_sum(n: usize, d: f64) -> Result<f64> {
    if n > 32 {
        return Err(Error::Size(alloc::format!("a_sum order {n} > 32")));
    }
    Ok(((n + 1) / 2..=n).map(|i| a_coeff_f64(i, n) * d.powi(i as i32)).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples_and_recurrence() {
        assert_eq!(a_coeff(0, 0).unwrap(), 1);
        assert_eq!(a_coeff(1, 1).unwrap(), 2);
        assert_eq!(a_coeff(1, 3).unwrap(), 0);
        for k in 1..=20 {
            for j in 0..=k {
                let lhs = a_coeff(j, k).unwrap() as i128;
                let prev = if 2 * j + 1 >= k { a_coeff(j, k - 1).unwrap() as i128 } else { 0 };
                let prev2 = if j >= 1 { a_coeff(j - 1, k - 1).unwrap() as i128 } else { 0 };
                let rhs = (2 * j as i128 - k as i128 + 1) * prev + 2 * prev2;
                assert_eq!(lhs, rhs, "j={j} k={k}");
                assert_eq!(lhs as f64, a_coeff_f64(j, k));
            }
        }
    }

    #[test]
    fn defining_identity() {
        // (2i)!/(2i−n)! = Σ_j 𝒜_j^n i!/(i−j)!
        for n in 0..=12usize {
            for i in 0..=12usize {
                if 2 * i < n {
                    continue;
                }
                let lhs: u128 = ((2 * i - n + 1)..=2 * i).map(|t| t as u128).product();
                let rhs: u128 = (0..=n.min(i))
                    .map(|j| a_coeff(j, n).unwrap() * ((i - j + 1)..=i).map(|t| t as u128).product::<u128>())
                    .sum();
                assert_eq!(lhs, rhs, "n={n} i={i}");
            }
        }
    }

    #[test]
    fn small_sums() {
        assert_eq!(a_sum(0, 0.7).unwrap(), 1.0);
        assert!((a_sum(1, 0.7).unwrap() - 1.4).abs() < 1e-15);
    }
}
