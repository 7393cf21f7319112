//! Binomial polynomials whose Q is a single power: closed form vs the
//! general model.

use salem_dist::cheb::binomial_poly;
use salem_dist::density::DensityModel;
use salem_dist::special::{xm_density_even, xm_density_odd};

fn main() {
    for m in 2..=5u32 {
        let p = binomial_poly(m as usize);
        let model = DensityModel::new(&p).expect("model");
        println!(
            "m = {m}, P = {:?}",
            p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>()
        );
        for x in [0.1, 0.25, 0.5, 0.75, 0.9] {
            let closed = if m % 2 == 1 {
                xm_density_odd(m, x)
            } else {
                xm_density_even(m, x)
            }
            .unwrap();
            let general = model.density_fprime(x).unwrap();
            println!("  x = {x:.2}: closed {closed:.12}  general {general:.12}");
        }
    }
}
