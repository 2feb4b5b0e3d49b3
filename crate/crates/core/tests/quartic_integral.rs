use quartic_core::quartic_integral::*;

#[test]
fn three_way_agreement_on_grid() {
    for &a in &[0.5, 1.0, 2.0] {
        for &b in &[0.25, 1.0, 2.0] {
            for &c in &[0.0, 0.5, 1.0] {
                let q = i1_quadrature(a, b, c).unwrap();
                let s = i1_series(a, b, c, 400).unwrap();
                let h = i1_hermite_method(a, b, c, 400).unwrap();
                assert!((s - q).abs() <= 1e-8 * q, "series a={a} b={b} c={c}: {s} vs {q}");
                assert!((h - q).abs() <= 1e-8 * q, "hermite a={a} b={b} c={c}: {h} vs {q}");
            }
        }
    }
}

#[test]
fn series_increments_eventually_decrease() {
    let (a, b, c) = (1.0, 0.5, 2.0);
    let partial = i1_series_partial_sums(a, b, c, 40).unwrap();
    let incs: Vec<f64> = partial.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
    let tail = &incs[incs.len() / 2..];
    assert!(incs[..10].iter().all(|x| *x > 0.0));
    assert!(tail.windows(2).all(|w| w[1] <= w[0]));
}
