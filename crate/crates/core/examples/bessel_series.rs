//! Bessel-series density for several t, against the linear closed form at t = 2.

use salem_dist::density::dupain_fprime;
use salem_dist::special::{bessel_j0, BesselSeries, BesselSeriesParams};

fn main() {
    println!(
        "J0(2.404825557695773) = {:.3e}",
        bessel_j0(2.404_825_557_695_773)
    );
    let s2 = BesselSeries::new(BesselSeriesParams::new(2, 10_000)).unwrap();
    println!("t = 2, Cesàro, K = 10^4");
    for i in 1..10 {
        let x = i as f64 / 10.0;
        println!(
            "  x = {x:.1}: series {:.5}  linear closed form {:.5}",
            s2.eval_ratio(i, 10),
            dupain_fprime(1, x)
        );
    }
    for t in [3, 4, 10] {
        let s = BesselSeries::new(BesselSeriesParams::new(t, 2000)).unwrap();
        let vals: Vec<String> = (1..5)
            .map(|i| format!("{:.6}", s.eval_ratio(i, 10)))
            .collect();
        println!("t = {t}: {}", vals.join(" "));
    }
}
