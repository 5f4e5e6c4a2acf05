//! A benchmark table across all engines, as CSV, plus least-squares fits of
//! how each count grows.

use lamlab::bench::{bench_rows, poly_fit, rows_to_csv, Family, RowStatus, Strategy, DEFAULT_FUEL};

pub fn main() {
    let rows = bench_rows(Family::Term1, 1..=8, Strategy::ALL, DEFAULT_FUEL, false).unwrap();
    print!("{}", rows_to_csv(&rows));

    for &s in Strategy::ALL {
        let pts: Vec<(f64, f64)> = rows
            .iter()
            .filter(|r| r.strategy == s && r.status == RowStatus::Normalized)
            .map(|r| (f64::from(r.n), r.beta_or_interaction_count as f64))
            .collect();
        let (xs, ys): (Vec<f64>, Vec<f64>) = pts.into_iter().unzip();
        if xs.len() < 3 {
            continue;
        }
        let line = poly_fit(&xs, &ys, 1);
        println!("{s:>11}: linear fit residual {:.4}", line.relative_residual);
    }
}
