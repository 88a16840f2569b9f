use hwbound_core::constants::{figure_grid, kappa_at, solve_kappa, xi_closed, xi_series};

fn grid(points: usize) -> impl Iterator<Item = f64> {
    (0..points).map(move |i| 0.001 + 0.998 * (i as f64 + 0.5) / points as f64)
}

#[test]
fn series_matches_closed_form_on_dense_grid() {
    let worst = grid(1000)
        .map(|r| {
            let closed = xi_closed(r).unwrap().xi;
            (xi_series(r, 1e-14).unwrap().xi - closed).abs() / closed
        })
        .fold(0.0f64, f64::max);
    assert!(worst <= 1e-10, "max relative discrepancy {worst:e}");
}

#[test]
fn xi_is_strictly_increasing_and_above_half() {
    let values: Vec<f64> = grid(5000).map(|r| xi_closed(r).unwrap().xi).collect();
    assert!(values.iter().all(|&x| x >= 0.5 && x.is_finite()));
    assert!(values.windows(2).all(|w| w[0] < w[1]));
    // including across the small-r switch
    let small: Vec<f64> = (1..2000)
        .map(|i| xi_closed(i as f64 * 1e-7).unwrap().xi)
        .collect();
    assert!(small.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn r_star_is_the_global_max_of_the_min() {
    let k = solve_kappa(1e-12).unwrap();
    for r in grid(20_000) {
        let xi = xi_closed(r).unwrap().xi;
        assert!(r.min(1.0 / (2.0 * xi)) <= k.r_star + 1e-9, "r = {r}");
        assert!(kappa_at(r).unwrap() <= k.kappa + 1e-9);
    }
}

#[test]
fn figure_grid_maximum_converges_to_kappa() {
    let k = solve_kappa(1e-12).unwrap();
    let coarse = figure_grid(999).unwrap();
    let fine = figure_grid(99_999).unwrap();
    let max_of = |rows: &[hwbound_core::constants::FigureRow]| {
        rows.iter().map(|row| row.min_term).fold(0.0f64, f64::max)
    };
    let (c, f) = (max_of(&coarse), max_of(&fine));
    assert!(c <= k.kappa + 1e-12 && f <= k.kappa + 1e-12);
    assert!(k.kappa - f < k.kappa - c || (k.kappa - f) < 1e-12);
    assert!((f - k.kappa).abs() < 1e-5);
}
