//! Acceptance battery. Runs every criterion, prints one line each, and exits
//! nonzero if any criterion fails.

use std::time::{Duration, Instant};

use salem_dist::cheb::binomial_poly;
use salem_dist::cli::table_rows;
use salem_dist::density::{cubic_criticals, dupain_fprime, quadratic_fprime, DensityModel};
use salem_dist::poly::IntPolynomial;
use salem_dist::roots::rat_to_f64;
use salem_dist::salem::{quartic_fixture, salem_power_minpoly, sextic_fixture, verify_salem};
use salem_dist::sim::{compare, histogram, max_path_difference, sequence, Method};
use salem_dist::special::{xm_density_even, xm_density_odd, BesselSeries, BesselSeriesParams};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn model(c: &[i64]) -> DensityModel {
    DensityModel::new(&IntPolynomial::from_i64(c)).unwrap()
}

fn within(limit: Duration, start: Instant, detail: String) -> Outcome {
    let took = start.elapsed();
    if took < limit {
        Ok(format!("{detail}; {:.2} s", took.as_secs_f64()))
    } else {
        Err(format!(
            "{detail}; took {:.2} s, limit {} s",
            took.as_secs_f64(),
            limit.as_secs()
        ))
    }
}

/// Reference rows: coefficients, x1, x2, Q(x1), Q(x2), A, B, S, shape.
const REFERENCE: [[&str; 9]; 9] = [
    [
        "1,1,1",
        "-0.61",
        "0.27",
        "-0.11",
        "2.63",
        ".89,0,1",
        ".63,0,1",
        "∅",
        "∪⌣∪",
    ],
    [
        "3,5,6",
        "-0.68",
        "0.12",
        "4.22",
        "10.39",
        ".22,0,1",
        ".39,0,1",
        "∅",
        "⌊∪⌋",
    ],
    [
        "3,3,10", "-0.17", "-0.17", "6.11", "6.11", "0,1", "0,1", ".11", "∪∪",
    ],
    [
        "1,-1,-2", "-0.5", "0.83", "-5", "4.48", "0,1", ".48,0,1", "∅", "∪⌋",
    ],
    [
        "1,2,3", "-0.67", "0", "2.82", "4", ".82,0,1", "0,1", "∅", "⌊∪",
    ],
    [
        "1,-2,-2", "-0.39", "1.06", "-6.21", "", ".79", "0,1", "∅", "⌣∪",
    ],
    [
        "1,2,-2", "-1.06", "0.39", "", "6.21", "0,1", ".21", "∅", "∪⌣",
    ],
    ["1,0,0", "-0.5", "0.5", "-2", "2", "0,1", "0,1", "∅", "∪"],
    ["1,1,4", "∉R", "∉R", "", "", "0,1", "0,1", "∅", "∪"],
];

/// `Q(w) = -2 (a1 T1 + a2 T2 + a3 T3)(w)` written out.
fn cubic_q(a3: i64, a2: i64, a1: i64, w: f64) -> f64 {
    let (a3, a2, a1) = (a3 as f64, a2 as f64, a1 as f64);
    -2.0 * (a1 * w + a2 * (2.0 * w * w - 1.0) + a3 * (4.0 * w * w * w - 3.0 * w))
}

fn table() -> Outcome {
    let start = Instant::now();
    let rows = table_rows();
    let names = [
        "coeffs", "x1", "x2", "Q(x1)", "Q(x2)", "A", "B", "S", "shape",
    ];
    let mut bad = Vec::new();
    for (row, want) in rows.iter().zip(REFERENCE) {
        let got = [
            &row.coeffs,
            &row.x1,
            &row.x2,
            &row.q1,
            &row.q2,
            &row.a,
            &row.b,
            &row.s,
            &row.shape,
        ];
        for i in 0..9 {
            if got[i] != want[i] {
                bad.push(format!(
                    "{} {}: got {} want {}",
                    want[0], names[i], got[i], want[i]
                ));
            }
        }
    }
    // independent look at the critical values behind any mismatch
    let mut notes = Vec::new();
    for want in REFERENCE
        .iter()
        .filter(|w| bad.iter().any(|b| b.starts_with(&format!("{} ", w[0]))))
    {
        let c: Vec<i64> = want[0].split(',').map(|v| v.parse().unwrap()).collect();
        if let Some((x1, x2)) = cubic_criticals(c[0], c[1], c[2]) {
            notes.push(format!(
                "direct Q at criticals of {}: {:.6}, {:.6}",
                want[0],
                cubic_q(c[0], c[1], c[2], x1),
                cubic_q(c[0], c[1], c[2], x2)
            ));
        }
    }
    if rows.len() != 9 {
        bad.push(format!("{} rows", rows.len()));
    }
    let took = start.elapsed();
    if took >= Duration::from_secs(1) {
        bad.push(format!("took {:.2} s", took.as_secs_f64()));
    }
    if bad.is_empty() {
        Ok(format!("9 rows, 81 cells; {:.3} s", took.as_secs_f64()))
    } else {
        Err(format!("{} [{}]", bad.join("; "), notes.join("; ")))
    }
}

fn grid_99() -> impl Iterator<Item = f64> {
    (1..=99).map(|i| i as f64 / 100.0)
}

fn closed_forms() -> Outcome {
    let start = Instant::now();
    let mut worst_lin: f64 = 0.0;
    for a1 in [1, 2, 3] {
        let m = model(&[0, a1]);
        for x in grid_99() {
            worst_lin = worst_lin.max((m.density_fprime(x).unwrap() - dupain_fprime(a1, x)).abs());
        }
    }
    let mut worst_quad: f64 = 0.0;
    let mut skipped = 0;
    for (a2, a1) in [(1, 0), (1, 1), (-1, 1), (2, 3)] {
        let m = model(&[0, a1, a2]);
        for x in grid_99() {
            match m.density_fprime(x) {
                Ok(v) => worst_quad = worst_quad.max((v - quadratic_fprime(a2, a1, x)).abs()),
                Err(_) => skipped += 1,
            }
        }
    }
    let detail = format!(
        "linear sup {worst_lin:.2e}, quadratic sup {worst_quad:.2e} ({skipped} grid points on asymptotes)"
    );
    if worst_lin < 1e-9 && worst_quad < 1e-9 {
        within(Duration::from_secs(10), start, detail)
    } else {
        Err(detail)
    }
}

fn battery_polys() -> Vec<Vec<i64>> {
    let mut v: Vec<Vec<i64>> = REFERENCE
        .iter()
        .map(|r| {
            let c: Vec<i64> = r[0].split(',').map(|v| v.parse().unwrap()).collect();
            vec![0, c[2], c[1], c[0]]
        })
        .collect();
    v.push(vec![0, 1]);
    v.push(vec![0, 0, 1]);
    v.push(vec![0, 3, 0, 1]);
    v
}

fn normalization() -> Outcome {
    let start = Instant::now();
    let mut worst_end: f64 = 0.0;
    let mut worst_mass: f64 = 0.0;
    for c in battery_polys() {
        let m = model(&c);
        let f0 = m.repartition_f(0.0).unwrap();
        let f1 = m.repartition_f(1.0).unwrap();
        worst_end = worst_end.max(f0.abs()).max((f1 - 1.0).abs());
        let mut last = f64::NEG_INFINITY;
        for i in 0..1000 {
            let f = m.repartition_f(i as f64 / 999.0).unwrap();
            if f < last {
                return Err(format!("{c:?}: f decreases at x = {}", i as f64 / 999.0));
            }
            last = f;
        }
        let mass = m.integrate_density(1e-9).unwrap();
        worst_mass = worst_mass.max((mass - 1.0).abs());
    }
    let detail =
        format!("12 polynomials; endpoint error {worst_end:.1e}, |∫f' - 1| {worst_mass:.1e}");
    if worst_end < 1e-9 && worst_mass < 1e-6 {
        within(Duration::from_secs(60), start, detail)
    } else {
        Err(detail)
    }
}

fn derivative() -> Outcome {
    let h = 1e-5;
    let mut worst: f64 = 0.0;
    for c in battery_polys() {
        let m = model(&c);
        let (l, r) = m.asymptotes();
        let asym: Vec<f64> = l.iter().chain(r).copied().collect();
        let pts: Vec<f64> = (0..300)
            .map(|i| (i as f64 + 0.37) / 300.0)
            .filter(|x| asym.iter().all(|v| (x - v).abs() > 0.005))
            .filter(|x| *x > h && *x < 1.0 - h)
            .take(200)
            .collect();
        if pts.len() < 200 {
            return Err(format!("{c:?}: only {} usable points", pts.len()));
        }
        for x in pts {
            let fd =
                (m.repartition_f(x + h).unwrap() - m.repartition_f(x - h).unwrap()) / (2.0 * h);
            let fp = m.density_fprime(x).unwrap();
            let tol = (1e-4 * fp.abs()).max(1e-6);
            worst = worst.max((fd - fp).abs() / tol);
        }
    }
    let detail = format!("2400 points; worst error / tolerance {worst:.3}");
    if worst < 1.0 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn dual_path() -> Outcome {
    let start = Instant::now();
    let s = quartic_fixture();
    let mut worst: f64 = 0.0;
    for c in [&[0, 1][..], &[0, 1, 1, 1], &[0, 6, 5, 3]] {
        let p = IntPolynomial::from_i64(c);
        let a = sequence(&s, &p, 10_000, Method::Exact).map_err(|e| e.to_string())?;
        let b = sequence(&s, &p, 10_000, Method::Conjugate).map_err(|e| e.to_string())?;
        worst = worst.max(max_path_difference(&a, &b));
    }
    let detail = format!("max elementwise difference {worst:.2e}");
    if worst < 1e-9 {
        within(Duration::from_secs(120), start, detail)
    } else {
        Err(detail)
    }
}

fn empirical() -> Outcome {
    let start = Instant::now();
    let s = quartic_fixture();
    let mut parts = Vec::new();
    let mut ok = true;
    for c in [&[0, 1, 1, 1][..], &[0, 6, 5, 3]] {
        let p = IntPolynomial::from_i64(c);
        let m = DensityModel::new(&p).unwrap();
        let big = sequence(&s, &p, 1_000_000, Method::Conjugate).map_err(|e| e.to_string())?;
        let small = sequence(&s, &p, 10_000, Method::Conjugate).map_err(|e| e.to_string())?;
        let ks_big = compare(&big, &m, 50)
            .map_err(|e| e.to_string())?
            .ks_distance;
        let ks_small = compare(&small, &m, 50)
            .map_err(|e| e.to_string())?
            .ks_distance;
        ok &= ks_big < 0.02 && ks_big < ks_small;
        parts.push(format!(
            "{c:?}: KS(1e6) {ks_big:.2e}, KS(1e4) {ks_small:.2e}"
        ));
    }
    let detail = parts.join("; ");
    if ok {
        within(Duration::from_secs(300), start, detail)
    } else {
        Err(detail)
    }
}

fn xm_forms() -> Outcome {
    let mut worst: f64 = 0.0;
    for m in [2u32, 3] {
        let model = DensityModel::new(&binomial_poly(m as usize)).unwrap();
        for x in (1..100).map(|i| i as f64 / 100.0) {
            let closed = if m % 2 == 1 {
                xm_density_odd(m, x)
            } else {
                xm_density_even(m, x)
            };
            worst = worst.max((closed.unwrap() - model.density_fprime(x).unwrap()).abs());
        }
    }
    let model = DensityModel::new(&binomial_poly(3)).unwrap();
    let mut sym: f64 = 0.0;
    for d in [0.05, 0.17, 0.3, 0.44] {
        sym = sym
            .max((xm_density_odd(3, 0.5 + d).unwrap() - xm_density_odd(3, 0.5 - d).unwrap()).abs());
        sym = sym.max(
            (model.density_fprime(0.5 + d).unwrap() - model.density_fprime(0.5 - d).unwrap()).abs(),
        );
    }
    let detail = format!("closed vs general {worst:.2e}, odd symmetry {sym:.2e}");
    if worst < 1e-8 && sym < 1e-10 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn bessel() -> Outcome {
    let s = BesselSeries::new(BesselSeriesParams::new(2, 10_000)).map_err(|e| e.to_string())?;
    let worst = (10..=90u64)
        .map(|i| (s.eval_ratio(i, 100) - dupain_fprime(1, i as f64 / 100.0)).abs())
        .fold(0.0, f64::max);
    let detail = format!("Cesàro K = 10^4, sup on [0.1, 0.9] {worst:.2e}");
    if worst < 0.01 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn salem_powers() -> Outcome {
    const BITS: u32 = 160;
    let s = quartic_fixture();
    let theta = s.theta_at(BITS);
    let mut parts = Vec::new();
    let mut ok = true;
    for m in [2u32, 3] {
        let q = salem_power_minpoly(&s, m);
        let t = verify_salem(&q).map_err(|e| format!("m = {m}: {e}"))?;
        let mut pow = theta.clone();
        for _ in 1..m {
            pow = &pow * &theta;
        }
        let d = rat_to_f64(&(t.theta_at(BITS).to_rational() - pow.to_rational())).abs();
        ok &= d < 1e-15;
        parts.push(format!("m = {m}: {q}, |root - θ^m| {d:.1e}"));
    }
    let detail = parts.join("; ");
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn near_uniform() -> Outcome {
    let start = Instant::now();
    let p = IntPolynomial::from_i64(&[0, -2, -1, 1]);
    let six =
        sequence(&sextic_fixture(), &p, 1_000_000, Method::Conjugate).map_err(|e| e.to_string())?;
    let four = sequence(&quartic_fixture(), &p, 1_000_000, Method::Conjugate)
        .map_err(|e| e.to_string())?;
    let d6 = histogram(&six, 50, None)
        .map_err(|e| e.to_string())?
        .max_deviation_from_uniform();
    let d4 = histogram(&four, 50, None)
        .map_err(|e| e.to_string())?
        .max_deviation_from_uniform();
    let detail = format!(
        "max |bin - 1|: degree 6 {d6:.4}, degree 4 {d4:.4}; {:.2} s",
        start.elapsed().as_secs_f64()
    );
    if d6 < d4 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("shape table reproduction", table),
        ("closed-form oracle equivalence", closed_forms),
        ("normalization and monotonicity", normalization),
        ("derivative consistency", derivative),
        ("dual-path sequence agreement", dual_path),
        ("empirical vs analytic", empirical),
        ("x^m closed forms", xm_forms),
        ("Bessel series, t = 2", bessel),
        ("Salem powers", salem_powers),
        ("degree-6 near-uniformity", near_uniform),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(d) => println!("PASS {:>2} {name}: {d}", i + 1),
            Err(d) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {d}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
