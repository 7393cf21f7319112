//! Qualitative shape of the density from the extrema of `t ↦ Q(cos t)`.

use num_rational::BigRational;
use serde::Serialize;

use super::{frac_exact, insert_sorted, DensityModel, SET_EPS};
use crate::roots::rat_to_f64;

/// A real root of `Q'`; `value` is absent outside `[-1, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Critical {
    pub x: f64,
    pub value: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShapeReport {
    /// Fractional parts of local minimum values.
    #[serde(rename = "A")]
    pub a: Vec<f64>,
    /// Fractional parts of local maximum values.
    #[serde(rename = "B")]
    pub b: Vec<f64>,
    /// Fractional parts of stationary inflection values.
    #[serde(rename = "S")]
    pub s: Vec<f64>,
    pub partition: Vec<f64>,
    pub shape: String,
    pub asymptotes_left: Vec<f64>,
    pub asymptotes_right: Vec<f64>,
    /// Real roots of `Q'` repeated by multiplicity; empty when none are real.
    pub criticals: Vec<Critical>,
}

fn add(set: &mut Vec<f64>, r: &BigRational) {
    match frac_exact(r) {
        Some(f) => insert_sorted(set, f),
        None => {
            insert_sorted(set, 0.0);
            insert_sorted(set, 1.0);
        }
    }
}

fn member(set: &[f64], v: f64) -> bool {
    set.iter().any(|s| (s - v).abs() < SET_EPS)
}

/// One symbol per interval between consecutive points of `A ∪ B ∪ S`.
pub(crate) fn shape_string(a: &[f64], b: &[f64], s: &[f64]) -> (Vec<f64>, String) {
    let mut points = Vec::new();
    for &v in a.iter().chain(b).chain(s) {
        insert_sorted(&mut points, v);
    }
    let in_as = |v| member(a, v) || member(s, v);
    let in_bs = |v| member(b, v) || member(s, v);
    let shape = points
        .windows(2)
        .map(|w| {
            let (l, r) = (w[0], w[1]);
            if in_as(l) && in_bs(r) {
                '∪'
            } else if in_as(l) && member(a, r) && !in_bs(r) {
                '⌊'
            } else if member(b, l) && !in_as(l) && in_bs(r) {
                '⌋'
            } else {
                '⌣'
            }
        })
        .collect();
    (points, shape)
}

pub fn shape_classify(model: &DensityModel) -> ShapeReport {
    let q = model.q();
    let branches = model.branches();
    let part = model.partition();
    let mut a = Vec::new();
    let mut b = Vec::new();
    let mut s = Vec::new();

    let first = branches.first().expect("at least one branch");
    let last = branches.last().expect("at least one branch");
    let at_minus = BigRational::from(q.endpoint_value(false));
    let at_plus = BigRational::from(q.endpoint_value(true));
    if first.increasing {
        add(&mut a, &at_minus);
    } else {
        add(&mut b, &at_minus);
    }
    if last.increasing {
        add(&mut b, &at_plus);
    } else {
        add(&mut a, &at_plus);
    }
    for (i, c) in part.turning.iter().enumerate() {
        if !branches[i].increasing && branches[i + 1].increasing {
            add(&mut a, &c.value_exact);
        } else {
            add(&mut b, &c.value_exact);
        }
    }
    for c in &part.stationary {
        add(&mut s, &c.value_exact);
    }

    let (partition, shape) = shape_string(&a, &b, &s);
    let (left, right) = model.asymptotes();
    let criticals = part
        .all_real
        .iter()
        .flat_map(|c| {
            let value = (c.x.abs() <= 1.0).then(|| rat_to_f64(&c.value_exact));
            std::iter::repeat_n(Critical { x: c.x, value }, c.multiplicity)
        })
        .collect();
    ShapeReport {
        a,
        b,
        s,
        partition,
        shape,
        asymptotes_left: left.to_vec(),
        asymptotes_right: right.to_vec(),
        criticals,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::IntPolynomial;

    fn report(c: &[i64]) -> ShapeReport {
        DensityModel::new(&IntPolynomial::from_i64(c))
            .unwrap()
            .shape()
    }

    #[test]
    fn shapes_of_simple_polynomials() {
        assert_eq!(report(&[0, 1]).shape, "∪");
        assert_eq!(report(&[0, 0, 1]).shape, "∪");
        assert_eq!(report(&[0, 1, 1, 1]).shape, "∪⌣∪");
        assert_eq!(report(&[0, 6, 5, 3]).shape, "⌊∪⌋");
        assert_eq!(report(&[0, 10, 3, 3]).shape, "∪∪");
    }

    #[test]
    fn zero_and_one_always_present() {
        for c in [&[0, 1][..], &[0, -2, -2, 1], &[0, -2, 2, 1], &[0, 3, 2, 1]] {
            let r = report(c);
            for v in [0.0, 1.0] {
                assert!(member(&r.a, v) || member(&r.b, v) || member(&r.s, v));
            }
            assert_eq!(r.shape.chars().count(), r.partition.len() - 1);
        }
    }

    #[test]
    fn symbol_rules() {
        assert_eq!(shape_string(&[0.0, 1.0], &[0.5], &[]).1, "∪⌣");
        assert_eq!(shape_string(&[0.0, 0.3, 1.0], &[0.0, 1.0], &[]).1, "⌊∪");
        assert_eq!(shape_string(&[0.0, 1.0], &[0.0, 0.7, 1.0], &[]).1, "∪⌋");
    }
}
