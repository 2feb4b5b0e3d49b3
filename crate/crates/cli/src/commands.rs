//! The subcommands as library functions, so tests can drive them directly.

use std::path::{Path, PathBuf};

use rayon::prelude::*;

use quartic_core::anharmonic::{propagator_from_solution, PropagatorBreakdown};
use quartic_core::oracle::{
    chunk_sizes, continuum_extrapolate, finish_estimate, montecarlo_bridge, wn_iterated, wn_quadrature,
    wn_series_auto, Extrapolation, SlicedValue, Welford, BOX_SDS, CHUNK_SAMPLES, QUADRATURE_MAX_N, RNG_NAME,
};
use quartic_core::oscillator_ode::{BoundaryData, OscillatorSolution};
use quartic_core::quartic_integral::{i1_hermite_method, i1_quadrature, i1_series};
use quartic_core::special_fn::{a_coeff, hermite, incomplete_hermite, pcf_d, pcf_scaled, HermiteIncompleteSpec};

use crate::config::Config;
use crate::error::{CliError, Result};
use crate::output::{real, write_file, Table};

/// Relative floor for the combined error of two deterministic values.
pub const DETERMINISTIC_FLOOR: f64 = 1e-10;
/// Series order cap used by the `i1` subcommand.
pub const I1_TERMS: usize = 400;

fn log(verbose: bool, msg: impl AsRef<str>) {
    if verbose {
        eprintln!("{}", msg.as_ref());
    }
}

#[derive(Debug, Clone)]
pub struct PropagatorReport {
    pub breakdown: PropagatorBreakdown,
    pub files: Vec<PathBuf>,
}

fn solve(cfg: &Config) -> Result<(OscillatorSolution, BoundaryData, PropagatorBreakdown)> {
    let model = cfg.model()?;
    let sol = OscillatorSolution::new(&model, cfg.grid_n)?;
    let bd = BoundaryData::new(&sol, cfg.phi0, cfg.phi_n)?;
    let breakdown = propagator_from_solution(&sol, &bd, cfg.mu_max)?;
    Ok((sol, bd, breakdown))
}

/// Writes breakdown.csv (mu, coefficient, W_mu, cumulative_total) and
/// solution.csv (tau, Q, f, I).
pub fn run_propagator(cfg: &Config, out: &Path, verbose: bool) -> Result<PropagatorReport> {
    let (sol, _, breakdown) = solve(cfg)?;
    log(verbose, format!("solved on {} steps, mu_max = {}", cfg.grid_n, cfg.mu_max));
    let mut t = Table::new(&["mu", "coefficient", "W_mu", "cumulative_total"]);
    let cumulative = breakdown.cumulative_totals();
    for (mu, ((c, w), tot)) in breakdown
        .series_coefficients
        .iter()
        .zip(&breakdown.w_mu_terms)
        .zip(&cumulative)
        .enumerate()
    {
        t.row(&[mu.to_string(), real(*c), real(*w), real(*tot)]);
    }
    let mut s = Table::new(&["tau", "Q", "f", "I"]);
    for (k, &tau) in sol.grid.iter().enumerate() {
        s.row(&[real(tau), real(sol.q[k]), real(sol.f[k]), real(sol.i_of_tau[k])]);
    }
    let files = vec![
        write_file(out, "breakdown.csv", t.as_bytes())?,
        write_file(out, "solution.csv", s.as_bytes())?,
    ];
    Ok(PropagatorReport { breakdown, files })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompareRow {
    pub method: &'static str,
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub value: f64,
    pub stderr: f64,
    pub discrepancy: f64,
}

#[derive(Debug, Clone)]
pub struct CompareReport {
    pub rows: Vec<CompareRow>,
    pub analytic: f64,
    pub truncation_estimate: f64,
    pub extrapolation: Extrapolation,
    /// |limit − analytic| / analytic
    pub relative_difference: f64,
    /// |limit − analytic| / √(error_estimate² + truncation_estimate²)
    pub sigma_discrepancy: f64,
    /// within tol.sigma combined errors or tol.relative
    pub pass: bool,
    pub files: Vec<PathBuf>,
}

fn discrepancy(a: f64, b: f64, err: f64) -> f64 {
    let floor = DETERMINISTIC_FLOOR * a.abs().max(b.abs());
    (a - b).abs() / err.max(floor)
}

/// Monte Carlo chunks on a pool of `workers` threads (0: one per core);
/// the reduction order is the stream order.
fn montecarlo_parallel(cfg: &Config, n: usize, samples: usize, seed: u64, workers: usize) -> Result<(f64, f64)> {
    let model = cfg.model()?;
    let bridge = montecarlo_bridge(&model, cfg.phi0, cfg.phi_n, n, samples)?;
    let sizes = chunk_sizes(samples);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))?;
    let chunks: Vec<Welford> = pool.install(|| {
        sizes
            .par_iter()
            .enumerate()
            .map(|(k, &count)| bridge.chunk(seed, k as u64, count))
            .collect()
    });
    Ok(finish_estimate(&bridge, &chunks))
}

/// Writes compare.csv (method, N, samples, seed, value, stderr,
/// discrepancy) and compare_meta.txt.
///
/// Rows: `quadrature` for N ≤ 5, `series` for N ∈ {2, 3} (discrepancy
/// against quadrature), `transfer` and `montecarlo` for larger N
/// (discrepancy of Monte Carlo against the deterministic transfer value at
/// the same N), `extrapolated` over the quadrature and Monte Carlo rows, and
/// `analytic`; the last two carry the continuum discrepancy.
pub fn run_compare(cfg: &Config, out: &Path, workers: usize, verbose: bool) -> Result<CompareReport> {
    let oracle = cfg.oracle()?.clone();
    if oracle.n_list.is_empty() {
        return Err(CliError::Usage("oracle.N_list is empty".into()));
    }
    let model = cfg.model()?;
    let (_, _, breakdown) = solve(cfg)?;
    let (analytic, trunc) = (breakdown.total, breakdown.truncation_estimate);
    let mut n_list = oracle.n_list.clone();
    n_list.sort_unstable();
    n_list.dedup();

    let mut rows = Vec::new();
    let mut points = Vec::new();
    let mut meta = vec![
        format!("rng={RNG_NAME}"),
        format!("chunk_samples={CHUNK_SAMPLES}"),
        format!("seed={}", oracle.seed),
        format!("samples={}", oracle.samples),
        format!("box_sds={}", real(BOX_SDS)),
    ];
    for &n in &n_list {
        let row = |method, samples, seed, value, stderr, discrepancy| CompareRow {
            method,
            n,
            samples,
            seed,
            value,
            stderr,
            discrepancy,
        };
        if n <= QUADRATURE_MAX_N {
            log(verbose, format!("quadrature N={n}"));
            let q = wn_quadrature(&model, cfg.phi0, cfg.phi_n, n)?;
            let q_err = q.value * q.tail_bound.max(q.refinement_change);
            let radii: Vec<String> = q
                .radii
                .iter()
                .map(|r| format!("{}:{}", real(r.center), real(r.half_width)))
                .collect();
            meta.push(format!("radii.{n}={}", radii.join(";")));
            rows.push(row("quadrature", 0, 0, q.value, q_err, 0.0));
            points.push(SlicedValue {
                n,
                value: q.value,
                stderr: 0.0,
            });
            if (2..=3).contains(&n) {
                log(verbose, format!("series N={n}"));
                let s = wn_series_auto(&model, cfg.phi0, cfg.phi_n, n, cfg.tol.series)?;
                let d = discrepancy(s.value, q.value, s.tail_bound.hypot(q_err));
                rows.push(row("series", 0, 0, s.value, s.tail_bound, d));
            }
        } else {
            log(verbose, format!("transfer N={n}"));
            let t = wn_iterated(&model, cfg.phi0, cfg.phi_n, n)?;
            let t_err = t.value * t.tail_bound.max(t.refinement_change);
            rows.push(row("transfer", 0, 0, t.value, t_err, 0.0));
            log(verbose, format!("montecarlo N={n}, {} samples", oracle.samples));
            let (mean, se) = montecarlo_parallel(cfg, n, oracle.samples, oracle.seed, workers)?;
            let d = discrepancy(mean, t.value, se.hypot(t_err));
            rows.push(row("montecarlo", oracle.samples, oracle.seed, mean, se, d));
            points.push(SlicedValue {
                n,
                value: mean,
                stderr: se,
            });
        }
    }
    let ex = continuum_extrapolate(&points)?;
    let combined = ex.error_estimate.hypot(trunc);
    let sigma_discrepancy = discrepancy(ex.limit, analytic, combined);
    let relative_difference = (ex.limit - analytic).abs() / analytic.abs();
    let pass = sigma_discrepancy <= cfg.tol.sigma || relative_difference <= cfg.tol.relative;
    rows.push(CompareRow {
        method: "extrapolated",
        n: 0,
        samples: 0,
        seed: 0,
        value: ex.limit,
        stderr: ex.error_estimate,
        discrepancy: sigma_discrepancy,
    });
    rows.push(CompareRow {
        method: "analytic",
        n: 0,
        samples: 0,
        seed: 0,
        value: analytic,
        stderr: trunc,
        discrepancy: sigma_discrepancy,
    });
    meta.push(format!("extrapolation_degree={}", ex.degree));
    meta.push(format!("extrapolation_monotone={}", ex.monotone));
    meta.push(format!("relative_difference={}", real(relative_difference)));

    let mut t = Table::new(&["method", "N", "samples", "seed", "value", "stderr", "discrepancy"]);
    for r in &rows {
        t.row(&[
            r.method.to_string(),
            r.n.to_string(),
            r.samples.to_string(),
            r.seed.to_string(),
            real(r.value),
            real(r.stderr),
            real(r.discrepancy),
        ]);
    }
    let mut meta_text = meta.join("\n");
    meta_text.push('\n');
    let files = vec![
        write_file(out, "compare.csv", t.as_bytes())?,
        write_file(out, "compare_meta.txt", meta_text.as_bytes())?,
    ];
    Ok(CompareReport {
        rows,
        analytic,
        truncation_estimate: trunc,
        extrapolation: ex,
        relative_difference,
        sigma_discrepancy,
        pass,
        files,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum I1Method {
    Quad,
    Series,
    Hermite,
    All,
}

/// `method,value` lines for I₁(a, b, c).
pub fn run_i1(a: f64, b: f64, c: f64, method: I1Method) -> Result<String> {
    let mut t = Table::new(&["method", "value"]);
    if matches!(method, I1Method::Quad | I1Method::All) {
        t.row(&["quadrature".to_string(), real(i1_quadrature(a, b, c)?)]);
    }
    if matches!(method, I1Method::Series | I1Method::All) {
        t.row(&["series".to_string(), real(i1_series(a, b, c, I1_TERMS)?)]);
    }
    if matches!(method, I1Method::Hermite | I1Method::All) {
        t.row(&["hermite".to_string(), real(i1_hermite_method(a, b, c, I1_TERMS)?)]);
    }
    Ok(String::from_utf8(t.as_bytes().to_vec()).expect("ascii output"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableKind {
    Pcf,
    Hermite,
    IncompleteHermite,
    ACoeff,
    I1,
}

impl TableKind {
    pub fn name(self) -> &'static str {
        match self {
            TableKind::Pcf => "pcf",
            TableKind::Hermite => "hermite",
            TableKind::IncompleteHermite => "incomplete-hermite",
            TableKind::ACoeff => "a-coeff",
            TableKind::I1 => "i1",
        }
    }
}

/// Grid and parameters of the `table` subcommand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TableParams {
    pub from: f64,
    pub to: f64,
    pub steps: usize,
    /// pcf order ν
    pub nu: f64,
    /// Hermite degree
    pub n: usize,
    pub gamma: f64,
    /// fixed second argument φ₀ of the incomplete Hermite polynomials
    pub y: f64,
    pub k_max: usize,
    pub a: f64,
    pub c: f64,
}

impl Default for TableParams {
    fn default() -> Self {
        TableParams {
            from: 0.0,
            to: 5.0,
            steps: 11,
            nu: -0.5,
            n: 4,
            gamma: 0.25,
            y: 0.5,
            k_max: 6,
            a: 1.0,
            c: 0.5,
        }
    }
}

impl TableParams {
    fn grid(&self) -> Result<Vec<f64>> {
        if self.steps < 2 || !self.from.is_finite() || !self.to.is_finite() || !(self.from < self.to) {
            return Err(CliError::Usage(format!(
                "malformed range: need finite from < to and steps >= 2, got {}..{} in {} steps",
                self.from, self.to, self.steps
            )));
        }
        let h = (self.to - self.from) / (self.steps - 1) as f64;
        Ok((0..self.steps).map(|k| self.from + k as f64 * h).collect())
    }
}

/// Builds the table for `kind` as CSV bytes.
pub fn build_table(kind: TableKind, p: &TableParams) -> Result<Vec<u8>> {
    let t = match kind {
        TableKind::Pcf => {
            let mut t = Table::new(&["z", "D", "scaled"]);
            for z in p.grid()? {
                t.row(&[real(z), real(pcf_d(p.nu, z)?), real(pcf_scaled(p.nu, z)?)]);
            }
            t
        }
        TableKind::Hermite => {
            let mut header = vec!["x".to_string()];
            header.extend((0..=p.n).map(|k| format!("H{k}")));
            let mut t = Table::new(&header);
            for x in p.grid()? {
                let mut row = vec![real(x)];
                for k in 0..=p.n {
                    row.push(real(hermite(k, x)?));
                }
                t.row(&row);
            }
            t
        }
        TableKind::IncompleteHermite => {
            let mut header = vec!["phi_beta".to_string()];
            header.extend((0..=p.n).map(|k| format!("kappa{k}")));
            let mut t = Table::new(&header);
            let specs = (0..=p.n)
                .map(|k| HermiteIncompleteSpec::new(p.n, k, p.gamma))
                .collect::<quartic_core::Result<Vec<_>>>()?;
            for x in p.grid()? {
                let mut row = vec![real(x)];
                row.extend(specs.iter().map(|s| real(incomplete_hermite(*s, x, p.y))));
                t.row(&row);
            }
            t
        }
        TableKind::ACoeff => {
            let mut t = Table::new(&["j", "k", "A"]);
            for k in 0..=p.k_max {
                for j in k.div_ceil(2)..=k {
                    t.row(&[j.to_string(), k.to_string(), a_coeff(j, k)?.to_string()]);
                }
            }
            t
        }
        TableKind::I1 => {
            let mut t = Table::new(&["b", "quadrature", "series", "hermite"]);
            for b in p.grid()? {
                t.row(&[
                    real(b),
                    real(i1_quadrature(p.a, b, p.c)?),
                    real(i1_series(p.a, b, p.c, I1_TERMS)?),
                    real(i1_hermite_method(p.a, b, p.c, I1_TERMS)?),
                ]);
            }
            t
        }
    };
    Ok(t.as_bytes().to_vec())
}

/// Writes table_<kind>.csv.
pub fn run_table(kind: TableKind, p: &TableParams, out: &Path) -> Result<PathBuf> {
    let bytes = build_table(kind, p)?;
    write_file(out, &format!("table_{}.csv", kind.name()), &bytes)
}
