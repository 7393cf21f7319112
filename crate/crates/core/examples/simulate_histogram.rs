//! Simulate {P(θ^n)} and compare its histogram with the analytic density.
//!
//! `cargo run --release --example simulate_histogram -- 0,1,1,1 100000`

use salem_dist::density::DensityModel;
use salem_dist::poly::parse_poly;
use salem_dist::salem::quartic_fixture;
use salem_dist::sim::{compare, histogram, max_path_difference, sequence, Method};

fn main() {
    let mut args = std::env::args().skip(1);
    let poly = args.next().unwrap_or_else(|| "0,1,1,1".into());
    let n: u64 = args.next().map_or(100_000, |v| v.parse().expect("N"));
    let p = parse_poly(&poly).expect("polynomial");
    let s = quartic_fixture();
    let model = DensityModel::new(&p).expect("model");

    let small = n.min(2000);
    let exact = sequence(&s, &p, small, Method::Exact).expect("exact path");
    let conj = sequence(&s, &p, small, Method::Conjugate).expect("conjugate path");
    println!(
        "exact vs conjugate over n ≤ {small}: max difference {:.3e}",
        max_path_difference(&exact, &conj)
    );

    let run = sequence(&s, &p, n, Method::default_for(n)).expect("sequence");
    let bins = 25;
    let h = histogram(&run, bins, Some(&model)).expect("histogram");
    let avg = h.analytic_bin_avg.as_ref().unwrap();
    println!("bin      empirical  analytic");
    for (i, (got, want)) in h.normalized.iter().zip(avg).enumerate() {
        println!(
            "{:.2}-{:.2}  {got:.4}     {want:.4}",
            i as f64 / bins as f64,
            (i + 1) as f64 / bins as f64,
        );
    }
    let c = compare(&run, &model, bins).expect("comparison");
    println!(
        "KS distance {:.5} (first N/100: {:.5}), max bin error {:.4}",
        c.ks_distance, c.ks_prefix, c.max_bin_error
    );
}
