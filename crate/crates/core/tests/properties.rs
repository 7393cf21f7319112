use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use salem_dist::branch::{branches, invert_on_branch};
use salem_dist::cheb::build_q;
use salem_dist::density::DensityModel;
use salem_dist::poly::{parse_poly, IntPolynomial};
use salem_dist::roots::isolate_real_roots;
use salem_dist::sim::{bin_counts, circular_distance, histogram_values};
use salem_dist::special::{BesselSeries, BesselSeriesParams};

fn small_poly() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-4i64..=4, 2..=4)
        .prop_filter("nonconstant", |c| c[1..].iter().any(|&a| a != 0))
}

fn model(c: &[i64]) -> DensityModel {
    DensityModel::new(&IntPolynomial::from_i64(c)).unwrap()
}

proptest! {
    #[test]
    fn parse_round_trip(c in prop::collection::vec(-50i64..=50, 1..8)) {
        prop_assume!(c.iter().any(|&a| a != 0));
        let p = IntPolynomial::from_i64(&c);
        let csv: Vec<String> = c.iter().map(|a| a.to_string()).collect();
        prop_assert_eq!(&parse_poly(&csv.join(",")).unwrap(), &p);
        prop_assert_eq!(&parse_poly(&p.to_string()).unwrap(), &p);
    }

    #[test]
    fn isolated_roots_of_products(
        roots in prop::collection::btree_set((-20i64..=20, 1i64..=5), 1..5),
        extra in 1usize..=2,
    ) {
        // Π (b x - a), the first factor repeated `extra` times.
        let mut p = IntPolynomial::one();
        let mut want: Vec<(BigRational, usize)> = Vec::new();
        for (i, &(a, b)) in roots.iter().enumerate() {
            let r = BigRational::new(BigInt::from(a), BigInt::from(b));
            if want.iter().any(|(s, _)| *s == r) {
                continue;
            }
            let reps = if i == 0 { extra } else { 1 };
            for _ in 0..reps {
                p = mul(&p, &IntPolynomial::from_i64(&[-a, b]));
            }
            want.push((r, reps));
        }
        let got = isolate_real_roots(&p);
        prop_assert_eq!(got.len(), want.len());
        for (r, mult) in &want {
            let hits: Vec<_> = got
                .iter()
                .filter(|g| {
                    let iv = &g.interval;
                    if iv.is_exact() { iv.lo == *r } else { iv.lo < *r && *r < iv.hi }
                })
                .collect();
            prop_assert_eq!(hits.len(), 1);
            prop_assert_eq!(hits[0].multiplicity, *mult);
        }
    }

    #[test]
    fn q_is_a_cosine_sum(c in small_poly(), t in 0.0f64..PI) {
        let q = build_q(&IntPolynomial::from_i64(&c)).unwrap();
        let direct: f64 = -2.0 * c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, &a)| a as f64 * (j as f64 * t).cos())
            .sum::<f64>();
        prop_assert!((q.eval(t.cos()) - direct).abs() < 1e-9);
    }

    #[test]
    fn q_is_linear(c1 in small_poly(), c2 in small_poly()) {
        let n = c1.len().max(c2.len());
        let sum: Vec<i64> = (0..n)
            .map(|j| c1.get(j).unwrap_or(&0) + c2.get(j).unwrap_or(&0))
            .collect();
        prop_assume!(sum[1..].iter().any(|&a| a != 0));
        let q1 = build_q(&IntPolynomial::from_i64(&c1)).unwrap().q_poly();
        let q2 = build_q(&IntPolynomial::from_i64(&c2)).unwrap().q_poly();
        let qs = build_q(&IntPolynomial::from_i64(&sum)).unwrap().q_poly();
        let added: Vec<BigInt> = (0..n)
            .map(|j| q1.coeff(j) + q2.coeff(j))
            .collect();
        prop_assert_eq!(qs, IntPolynomial::new(added));
    }
}

fn mul(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    let mut out = vec![BigInt::from(0); a.coeffs().len() + b.coeffs().len() - 1];
    for (i, x) in a.coeffs().iter().enumerate() {
        for (j, y) in b.coeffs().iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    IntPolynomial::new(out)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn branches_tile_and_invert(c in small_poly(), s in 0.0f64..1.0) {
        let q = build_q(&IntPolynomial::from_i64(&c)).unwrap();
        let bs = branches(&q);
        prop_assert_eq!(bs.first().unwrap().x_lo, -1.0);
        prop_assert_eq!(bs.last().unwrap().x_hi, 1.0);
        for w in bs.windows(2) {
            prop_assert_eq!(w[0].x_hi, w[1].x_lo);
        }
        for b in &bs {
            prop_assert!(b.alpha < b.beta);
            let (lo, hi) = (q.eval(b.x_lo), q.eval(b.x_hi));
            prop_assert_eq!(b.increasing, hi > lo);
            let y = b.alpha + s * (b.beta - b.alpha);
            let u = invert_on_branch(b, &q, y).unwrap();
            prop_assert!(u >= b.x_lo && u <= b.x_hi);
            let scale = 1.0 + b.beta.abs().max(b.alpha.abs());
            prop_assert!((q.eval(u) - y).abs() < 1e-12 * scale);
        }
    }

    #[test]
    fn repartition_is_a_distribution(c in small_poly()) {
        let m = model(&c);
        prop_assert!(m.repartition_f(0.0).unwrap().abs() < 1e-9);
        prop_assert!((m.repartition_f(1.0).unwrap() - 1.0).abs() < 1e-9);
        let mut last = 0.0;
        for i in 0..=100 {
            let f = m.repartition_f(i as f64 / 100.0).unwrap();
            prop_assert!(f >= last - 1e-12);
            last = f;
        }
    }

    #[test]
    fn larger_bound_changes_nothing(c in small_poly(), extra in 1i64..4, x in 0.0f64..1.0) {
        let m = model(&c);
        let big = DensityModel::with_bound(&IntPolynomial::from_i64(&c), Some(m.bound() + extra)).unwrap();
        prop_assert!((m.repartition_f(x).unwrap() - big.repartition_f(x).unwrap()).abs() < 1e-10);
        if m.near_asymptote(x).is_none() {
            let (a, b) = (m.density_fprime(x).unwrap(), big.density_fprime(x).unwrap());
            prop_assert!((a - b).abs() < 1e-9 * (1.0 + a));
        }
    }

    #[test]
    fn density_is_derivative(c in small_poly(), x in 0.02f64..0.98) {
        let m = model(&c);
        let h = 1e-5;
        let near = |y: f64| {
            let (l, r) = m.asymptotes();
            l.iter().chain(r).any(|v| (y - v).abs() < 1e-3)
        };
        prop_assume!(!near(x));
        let fd = (m.repartition_f(x + h).unwrap() - m.repartition_f(x - h).unwrap()) / (2.0 * h);
        let fp = m.density_fprime(x).unwrap();
        prop_assert!((fd - fp).abs() < 1e-5 * (1.0 + fp.abs()), "fd {} f' {}", fd, fp);
    }

    #[test]
    fn density_grows_at_asymptotes(c in small_poly()) {
        let m = model(&c);
        let (left, right) = m.asymptotes();
        for &v in left {
            if v > 0.01 {
                let near = m.density_fprime_raw(v - 1e-6);
                prop_assert!(near > 3.0 * m.density_fprime_raw(v - 1e-2));
            }
        }
        for &v in right {
            if v < 0.99 {
                let near = m.density_fprime_raw(v + 1e-6);
                prop_assert!(near > 3.0 * m.density_fprime_raw(v + 1e-2));
            }
        }
    }
}

proptest! {
    #[test]
    fn histogram_mass(values in prop::collection::vec(0.0f64..1.0, 1..500), bins in 2usize..40) {
        let counts = bin_counts(&values, bins);
        prop_assert_eq!(counts.iter().sum::<u64>(), values.len() as u64);
        let h = histogram_values(&values, bins, None).unwrap();
        let mean = h.normalized.iter().sum::<f64>() / bins as f64;
        prop_assert!((mean - 1.0).abs() < 1e-12);
    }

    #[test]
    fn circular_distance_is_a_metric(a in 0.0f64..1.0, b in 0.0f64..1.0, c in 0.0f64..1.0) {
        let d = circular_distance;
        prop_assert!(d(a, b) <= 0.5);
        prop_assert!((d(a, b) - d(b, a)).abs() < 1e-15);
        prop_assert!(d(a, c) <= d(a, b) + d(b, c) + 1e-15);
        prop_assert!(d(a, a + 1.0) < 1e-15);
    }

    #[test]
    fn bessel_series_has_unit_mass(t in 2u32..6, k in 1usize..200) {
        let s = BesselSeries::new(BesselSeriesParams::new(t, k)).unwrap();
        let n = 2 * k as u64 + 3;
        let mean = (0..n).map(|i| s.eval_ratio(i, n)).sum::<f64>() / n as f64;
        prop_assert!((mean - 1.0).abs() < 1e-10);
    }
}
