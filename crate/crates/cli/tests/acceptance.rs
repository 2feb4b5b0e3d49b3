//! Acceptance suite: one pass/fail line per criterion, nonzero exit on any failure.

use std::f64::consts::PI;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use quartic_core::anharmonic::{propagator, propagator_from_solution, w_mu, w_mu_direct};
use quartic_core::oracle::{
    continuum_extrapolate, wn_montecarlo, wn_quadrature, wn_series_exact, SlicedValue,
};
use quartic_core::oscillator_ode::{
    mehler_reference, BoundaryData, Coefficient, CoefficientModel, OscillatorSolution, DEFAULT_GRID_N,
};
use quartic_core::quartic_integral::{i1_hermite_method, i1_quadrature, i1_series};
use quartic_core::special_fn::{a_sum, pcf_poincare, pcf_scaled};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

type Check = Result<String, String>;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn rng(stream: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(0x5eed_0000 + stream)
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Worst relative error; fails when it exceeds `tol`.
fn within(worst: f64, tol: f64, detail: &str) -> Check {
    if worst <= tol {
        Ok(format!("max rel err {worst:.2e} <= {tol:.0e} {detail}"))
    } else {
        Err(format!("max rel err {worst:.2e} > {tol:.0e} {detail}"))
    }
}

fn free_particle() -> Check {
    let pts = [-1.0, 0.0, 1.0];
    let mut worst: f64 = 0.0;
    for beta in [0.5, 1.0, 2.0] {
        let m = CoefficientModel::constant(0.0, 0.0, 1.0, beta).map_err(err)?;
        let sol = OscillatorSolution::new(&m, DEFAULT_GRID_N).map_err(err)?;
        for &p0 in &pts {
            for &pb in &pts {
                let bd = BoundaryData::new(&sol, p0, pb).map_err(err)?;
                let v = propagator_from_solution(&sol, &bd, 2).map_err(err)?.total;
                let r = (-(pb - p0) * (pb - p0) / (2.0 * beta)).exp() / (2.0 * PI * beta).sqrt();
                worst = worst.max(rel(v, r));
            }
        }
    }
    within(worst, 1e-8, "over 27 cases")
}

fn mehler() -> Check {
    let grid: Vec<f64> = (0..5).map(|k| -1.0 + 0.5 * k as f64).collect();
    let beta = 1.0;
    let mut worst: f64 = 0.0;
    for c in [0.5, 1.0, 2.0] {
        for b in [0.25, 1.0] {
            let m = CoefficientModel::constant(0.0, b, c, beta).map_err(err)?;
            let sol = OscillatorSolution::new(&m, DEFAULT_GRID_N).map_err(err)?;
            let (k, nu) = ((2.0 * b * c).sqrt(), beta * (2.0 * b / c).sqrt());
            for &x0 in &grid {
                for &xb in &grid {
                    let bd = BoundaryData::new(&sol, x0, xb).map_err(err)?;
                    let v = propagator_from_solution(&sol, &bd, 2).map_err(err)?.total;
                    worst = worst.max(rel(v, mehler_reference(k, nu, x0, xb)));
                }
            }
        }
    }
    within(worst, 1e-6, "over 150 cases")
}

fn f_q_proportionality() -> Check {
    let models = [
        CoefficientModel::constant(0.1, 0.5, 1.0, 1.0),
        CoefficientModel::new(
            Coefficient::Constant(0.1),
            Coefficient::Constant(0.3),
            Coefficient::Polynomial(vec![1.0, 0.5]),
            1.5,
        ),
        CoefficientModel::new(
            Coefficient::Constant(0.1),
            Coefficient::Polynomial(vec![0.5, 0.0, -0.4, 0.0, 0.03]),
            Coefficient::Constant(0.8),
            2.0,
        ),
    ];
    let mut worst: f64 = 0.0;
    for m in models {
        let m = m.map_err(err)?;
        let sol = OscillatorSolution::new(&m, DEFAULT_GRID_N).map_err(err)?;
        let c0 = m.c.value(0.0);
        for (k, &t) in sol.grid.iter().enumerate().skip(1) {
            let r = 2.0 * PI * m.c.value(t) * sol.q[k] / (c0 * c0);
            worst = worst.max(rel(sol.f[k], r));
        }
    }
    within(worst, 1e-8, "on three models")
}

fn i1_three_way() -> Check {
    let mut worst: f64 = 0.0;
    for a in [0.5, 1.0, 2.0] {
        for b in [0.25, 1.0, 2.0] {
            for c in [0.0, 0.5, 1.0] {
                let q = i1_quadrature(a, b, c).map_err(err)?;
                let s = i1_series(a, b, c, 400).map_err(err)?;
                let h = i1_hermite_method(a, b, c, 400).map_err(err)?;
                worst = worst.max(rel(s, q)).max(rel(h, q));
            }
        }
    }
    within(worst, 1e-8, "on 27 points")
}

fn poincare_bound() -> Check {
    let mut cases = 0;
    let mut tightest = f64::INFINITY;
    for z in [5.0, 10.0, 20.0] {
        for m in 0..=3usize {
            let exact = pcf_scaled(-(m as f64) - 0.5, z).map_err(err)?;
            for j in 0..=6 {
                let (v, bound) = pcf_poincare(m as f64, z, j).map_err(err)?;
                let e = (exact - v).abs();
                if e > bound {
                    return Err(format!("z={z} m={m} J={j}: |err| {e:.3e} > bound {bound:.3e}"));
                }
                cases += 1;
                if e > 0.0 {
                    tightest = tightest.min(bound / e);
                }
            }
        }
    }
    Ok(format!("{cases} cases, min bound/error ratio {tightest:.3}"))
}

/// (−√−d)ⁿ Hₙ(√−d) = yⁿ hₙ(y), y = √d, with h_{k+1} = 2y h_k + 2k h_{k−1}.
fn a_identity_reference(n: usize, d: f64) -> f64 {
    let y = d.sqrt();
    let (mut h0, mut h1) = (1.0, 2.0 * y);
    if n == 0 {
        return 1.0;
    }
    for k in 1..n {
        let h2 = 2.0 * y * h1 + 2.0 * k as f64 * h0;
        h0 = h1;
        h1 = h2;
    }
    y.powi(n as i32) * h1
}

fn a_identity() -> Check {
    let mut r = rng(6);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let d = 2.0 * (1.0 - r.random::<f64>());
        for n in 0..=12 {
            worst = worst.max(rel(a_sum(n, d).map_err(err)?, a_identity_reference(n, d)));
        }
    }
    within(worst, 1e-10, "for n <= 12, 50 values of d")
}

fn anharmonic_vs_oracle() -> Check {
    let (phi0, phib, seed) = (0.3, -0.2, 20260101);
    let m = CoefficientModel::constant(0.05, 0.5, 1.0, 1.0).map_err(err)?;
    let br = propagator(&m, phi0, phib, 2, DEFAULT_GRID_N).map_err(err)?;
    let mut pts = Vec::new();
    for n in 2..=5 {
        let q = wn_quadrature(&m, phi0, phib, n).map_err(err)?;
        pts.push(SlicedValue { n, value: q.value, stderr: 0.0 });
    }
    for n in [32, 64, 128] {
        let (v, se) = wn_montecarlo(&m, phi0, phib, n, 1_000_000, seed).map_err(err)?;
        pts.push(SlicedValue { n, value: v, stderr: se });
    }
    let ex = continuum_extrapolate(&pts).map_err(err)?;
    let diff = (ex.limit - br.total).abs();
    let combined = ex.error_estimate.hypot(br.truncation_estimate);
    let allowed = (3.0 * combined).max(0.01 * br.total.abs());
    let detail = format!(
        "analytic {:.8} extrapolated {:.8} diff {diff:.2e} allowed {allowed:.2e} ({:.2} sigma)",
        br.total,
        ex.limit,
        diff / combined
    );
    if diff <= allowed {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn random_model(r: &mut ChaCha20Rng) -> quartic_core::Result<CoefficientModel> {
    let a0 = 0.02 + 0.2 * r.random::<f64>();
    let a1 = 0.1 * r.random::<f64>();
    let b = 0.1 + 0.9 * r.random::<f64>();
    let c1 = 0.4 * (r.random::<f64>() - 0.5);
    let beta = 0.5 + r.random::<f64>();
    CoefficientModel::new(
        Coefficient::Polynomial(vec![a0, a1]),
        Coefficient::Constant(b),
        Coefficient::Polynomial(vec![1.0, c1]),
        beta,
    )
}

fn representation_equivalence() -> Check {
    let mut r = rng(8);
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let m = random_model(&mut r).map_err(err)?;
        let (p0, pb) = (2.0 * r.random::<f64>() - 1.0, 2.0 * r.random::<f64>() - 1.0);
        let sol = OscillatorSolution::new(&m, DEFAULT_GRID_N).map_err(err)?;
        let bd = BoundaryData::new(&sol, p0, pb).map_err(err)?;
        for mu in [1, 2] {
            let a = w_mu(&sol, &bd, mu).map_err(err)?;
            let d = w_mu_direct(&sol, &bd, mu).map_err(err)?;
            worst = worst.max(rel(d, a));
        }
    }
    within(worst, 1e-8, "on 10 random models, mu in {1, 2}")
}

fn order_scaling() -> Check {
    let m = CoefficientModel::new(
        Coefficient::Polynomial(vec![0.1, 0.05]),
        Coefficient::Constant(0.5),
        Coefficient::Polynomial(vec![1.0, 0.2]),
        1.0,
    )
    .map_err(err)?;
    let sol = OscillatorSolution::new(&m, DEFAULT_GRID_N).map_err(err)?;
    let bd = BoundaryData::new(&sol, 0.4, -0.3).map_err(err)?;
    let mut worst: f64 = 0.0;
    for lambda in [0.5f64, 2.0] {
        let ms = m.scale_a(lambda);
        let ss = OscillatorSolution::new(&ms, DEFAULT_GRID_N).map_err(err)?;
        let bs = BoundaryData::new(&ss, 0.4, -0.3).map_err(err)?;
        for mu in 1..=3 {
            let base = w_mu(&sol, &bd, mu).map_err(err)?;
            let scaled = w_mu(&ss, &bs, mu).map_err(err)?;
            worst = worst.max(rel(scaled, lambda.powi(mu as i32) * base));
        }
    }
    within(worst, 1e-12, "for lambda in {0.5, 2}, mu 1..3")
}

fn exact_multisum() -> Check {
    let mut r = rng(10);
    let mut worst: f64 = 0.0;
    for _ in 0..5 {
        let a = 0.02 + 0.5 * r.random::<f64>();
        let b = 0.1 + 0.9 * r.random::<f64>();
        let c = 0.5 + r.random::<f64>();
        let beta = 0.5 + r.random::<f64>();
        let (p0, pn) = (2.0 * r.random::<f64>() - 1.0, 2.0 * r.random::<f64>() - 1.0);
        let m = CoefficientModel::constant(a, b, c, beta).map_err(err)?;
        for n in [2, 3] {
            let s = wn_series_exact(&m, p0, pn, n, &vec![64; n], 1e-9).map_err(err)?;
            let q = wn_quadrature(&m, p0, pn, n).map_err(err)?;
            worst = worst.max(rel(s.value, q.value));
        }
    }
    within(worst, 1e-6, "on 5 random sets, N in {2, 3}")
}

fn determinism() -> Check {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../..");
    let cfg = root.join("configs/quartic.cfg");
    let dir = tempfile::tempdir().map_err(err)?;
    let mut outputs = Vec::new();
    for (run, workers) in [(0, "1"), (1, "1"), (2, "4")] {
        let out = dir.path().join(format!("run{run}"));
        let o = Command::new(env!("CARGO_BIN_EXE_quartic-prop"))
            .args(["--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()])
            .args(["compare", "--workers", workers])
            .output()
            .map_err(err)?;
        if !o.status.success() {
            return Err(String::from_utf8_lossy(&o.stderr).into_owned());
        }
        let mut files = Vec::new();
        for f in ["compare.csv", "compare_meta.txt"] {
            files.push(std::fs::read(out.join(f)).map_err(err)?);
        }
        files.push(o.stdout);
        outputs.push(files);
    }
    if outputs.iter().all(|o| *o == outputs[0]) {
        Ok("two runs with 1 worker and one with 4 are byte-identical".into())
    } else {
        Err("compare output differs between runs".into())
    }
}

fn main() {
    let criteria: [(&str, fn() -> Check, Option<Duration>); 11] = [
        ("free-particle identity", free_particle, Some(Duration::from_secs(1))),
        ("Mehler kernel", mehler, Some(Duration::from_secs(10))),
        ("f-Q proportionality", f_q_proportionality, None),
        ("I1 three-way agreement", i1_three_way, Some(Duration::from_secs(30))),
        ("Poincare remainder bound", poincare_bound, None),
        ("A-coefficient identity", a_identity, None),
        ("anharmonic vs time-sliced oracle", anharmonic_vs_oracle, Some(Duration::from_secs(300))),
        ("representation equivalence", representation_equivalence, None),
        ("order scaling", order_scaling, None),
        ("exact multi-sum vs quadrature", exact_multisum, None),
        ("compare determinism", determinism, None),
    ];
    let mut failures = 0;
    for (k, (name, check, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut result = check();
        let elapsed = start.elapsed();
        if let (Ok(msg), Some(b)) = (&result, budget) {
            if elapsed > *b {
                result = Err(format!("{msg}; runtime {elapsed:.2?} over budget {b:?}"));
            }
        }
        let (tag, msg) = match &result {
            Ok(m) => ("PASS", m),
            Err(m) => {
                failures += 1;
                ("FAIL", m)
            }
        };
        println!("[{tag}] {:>2} {name} ({elapsed:.2?}): {msg}", k + 1);
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
