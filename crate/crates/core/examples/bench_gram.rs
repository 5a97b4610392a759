use geodisc::pointsets::fibonacci_sphere;
use geodisc::discrepancy::gram_spectrum;
use geodisc::spectral::BallCoefficientTable;
use std::time::Instant;

fn main() {
    for (n, m) in [(1024usize, 8192usize), (2048, 4096), (8192, 1024), (8192, 2048)] {
        let ps = fibonacci_sphere(n).unwrap();
        let t = Instant::now();
        let gram = gram_spectrum(&ps, m);
        let dt = t.elapsed().as_secs_f64();
        let params = *ps.space().params();
        for r in [0.8f64, 1.6] {
            let table = BallCoefficientTable::build(&params, r, m);
            let value: f64 = gram.values().iter().zip(&table.coeffs).zip(&table.dims)
                .map(|((&s, &c), &d)| s * (c/d) * (c/d)).sum();
            println!("N={n} M={m} r={r}: value={value:.6e} remainder={:.3e} gram_time={dt:.2}s", table.parseval_remainder(m));
        }
    }
}
