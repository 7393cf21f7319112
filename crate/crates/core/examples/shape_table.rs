//! Shape classification of cubic polynomials, side by side with the
//! closed-form critical points.

use salem_dist::cli::{table_mismatches, table_rows, TABLE_HEADER};
use salem_dist::density::{cubic_criticals, quadratic_asymptote_test};

fn main() {
    let rows = table_rows();
    println!("{}", TABLE_HEADER.join(" | "));
    for r in &rows {
        println!(
            "{} | {} | {} | {} | {} | {} | {} | {} | {}",
            r.coeffs, r.x1, r.x2, r.q1, r.q2, r.a, r.b, r.s, r.shape
        );
    }
    let diffs = table_mismatches(&rows);
    println!("{} mismatches against the stored table", diffs.len());

    println!();
    println!("closed-form critical points:");
    for (a3, a2, a1) in [(1, 1, 1), (3, 5, 6), (1, 1, 4)] {
        println!("  ({a3},{a2},{a1}): {:?}", cubic_criticals(a3, a2, a1));
    }
    println!("quadratic asymptote test:");
    for (a2, a1) in [(1, 1), (-1, 1), (1, 2), (2, 3)] {
        let p = quadratic_asymptote_test(a2, a1);
        println!("  {a2}x²+{a1}x: v = {:?}, shape {}", p.v, p.shape);
    }
}
