//! Minimal polynomials of θ^m are Salem again.

use salem_dist::salem::{quartic_fixture, salem_power_minpoly, verify_salem};

fn main() {
    let s = quartic_fixture();
    let theta = s.theta_f64();
    println!("θ = {}", s.report(25).theta);
    for m in 1..=5 {
        let q = salem_power_minpoly(&s, m);
        let coeffs: Vec<String> = q.coeffs().iter().map(|c| c.to_string()).collect();
        match verify_salem(&q) {
            Ok(t) => println!(
                "m = {m}: [{}] root {:.15}, θ^m {:.15}",
                coeffs.join(", "),
                t.theta_f64(),
                theta.powi(m as i32)
            ),
            Err(e) => println!("m = {m}: [{}] rejected: {e}", coeffs.join(", ")),
        }
    }
}
