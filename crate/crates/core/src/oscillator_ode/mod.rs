//! The characteristic ODEs for Q and f, the kernel ℐ(τ), the regularized
//! boundary integral and the harmonic part of the propagator.

mod coefficient;
mod harmonic;
mod solution;

pub use coefficient::{Coefficient, CoefficientModel, Spline};
pub use harmonic::{harmonic_propagator, mehler_reference, BoundaryData, HarmonicPart};
pub use solution::{
    kernel_i, regularized_y, regularized_y_routes, solve_f, solve_q, OdeTrack, OscillatorSolution,
    DEFAULT_GRID_N, ELEMENT_ORDER, MIN_GRID_N, Y_REG_TOL,
};
