//! Parabolic cylinder functions, Hermite families and 𝒜-coefficients.

mod acoeff;
mod hermite;
mod pcf;

pub use acoeff::{a_coeff, a_coeff_f64, a_sum};
pub use hermite::{
    hermite, hermite2, incomplete_hermite, incomplete_hermite_pq, multiindex_hermite,
    HermiteIncompleteSpec, MAX_HERMITE_DEGREE,
};
pub use pcf::{
    pcf_d, pcf_poincare, pcf_scaled, pcf_scaled_ln, pcf_scaled_taylor_shift, pcf_taylor_shift,
    PcfIndex,
};
