//! Verify a few candidate minimal polynomials.
//!
//! `cargo run --example verify_salem -- "x^4-x^3-x^2-x+1" "x^2-3x+1"`

use salem_dist::poly::parse_poly;
use salem_dist::salem::verify_salem;

fn main() {
    let mut args: Vec<String> = std::env::args().skip(1).collect();
    if args.is_empty() {
        args = vec![
            "x^4-x^3-x^2-x+1".into(),
            "x^6-x^4-x^3-x^2+1".into(),
            "x^2-3x+1".into(),
            "x^4-2x^3+x^2-x+1".into(),
            "1,-7,13,-7,1".into(),
        ];
    }
    for text in args {
        let p = match parse_poly(&text) {
            Ok(p) => p,
            Err(e) => {
                println!("{text}: parse error: {e}");
                continue;
            }
        };
        match verify_salem(&p) {
            Ok(s) => {
                let r = s.report(30);
                println!("{text}: Salem, degree {}, θ = {}", r.degree, r.theta);
                for (j, w) in r.omegas.iter().enumerate() {
                    println!("    ω_{} = {w}", j + 1);
                }
            }
            Err(e) => println!("{text}: rejected ({}): {e}", e.reason()),
        }
    }
}
