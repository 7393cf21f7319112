//! Repartition function and density of {P(θ^n)} on a grid, as CSV.
//!
//! `cargo run --example density_grid -- 0,6,5,3 20`

use salem_dist::cli::density_rows;
use salem_dist::density::DensityModel;
use salem_dist::poly::parse_poly;

fn main() {
    let mut args = std::env::args().skip(1);
    let poly = args.next().unwrap_or_else(|| "0,1,1,1".into());
    let grid: usize = args.next().map_or(20, |g| g.parse().expect("grid size"));
    let p = parse_poly(&poly).expect("polynomial");
    let model = DensityModel::new(&p).expect("nonconstant polynomial");
    let (left, right) = model.asymptotes();
    println!("# P = {poly}, M = {}", model.bound());
    println!("# asymptotes from the left {left:?}, from the right {right:?}");
    println!("x,f,fprime");
    for r in density_rows(&model, grid) {
        let fp = r.fprime.map_or("inf".to_string(), |v| format!("{v:.10}"));
        println!("{:.4},{:.10},{fp}", r.x, r.f);
    }
    println!("# ∫ f' = {:.12}", model.integrate_density(1e-10).unwrap());
}
