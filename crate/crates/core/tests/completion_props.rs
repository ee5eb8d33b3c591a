mod common;

use boundring_core::boundedring::{bounded_monoid, is_bounded};
use boundring_core::completion2d::{compatible_completion, initial_fan, insert_ray, Ray};
use boundring_core::oracle::monomials_up_to;
use boundring_core::setmodel::recession_cones;
use boundring_core::{rat, Poly, SetSpec};
use common::*;
use proptest::prelude::*;

fn det(a: Ray, b: Ray) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

fn primitive_ray() -> impl Strategy<Value = Ray> {
    (-7i64..=7, -7i64..=7).prop_filter_map("primitive", |(a, b)| {
        let g = num_integer::gcd(a, b);
        (g == 1).then_some([a, b])
    })
}

/// `v` lies in the relative interior of `cone(a, b)` for a smooth pair.
fn in_open_cone(a: Ray, b: Ray, v: Ray) -> bool {
    det(a, v) > 0 && det(v, b) > 0
}

fn positive_multiple(w: Ray, v: Ray) -> bool {
    det(w, v) == 0 && w[0] * v[0] + w[1] * v[1] > 0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn insertion_keeps_the_fan_smooth(targets in prop::collection::vec(primitive_ray(), 1..=5)) {
        let mut fan = initial_fan();
        for t in targets {
            let (next, steps) = insert_ray(&fan, t).unwrap();
            prop_assert!(next.is_smooth() && next.is_complete() && next.contains_affine_chart());
            prop_assert!(next.position(t).is_some());
            prop_assert_eq!(next.len(), fan.len() + steps.len());
            for s in &steps {
                let (a, b) = s.parent_cone;
                prop_assert_eq!(s.inserted_ray, [a[0] + b[0], a[1] + b[1]]);
            }
            fan = next;
        }
    }

    #[test]
    fn insertion_order_does_not_matter(targets in prop::collection::vec(primitive_ray(), 1..=4)) {
        let build = |ts: &[Ray]| {
            ts.iter().fold(initial_fan(), |f, t| insert_ray(&f, *t).unwrap().0).rays().to_vec()
        };
        let mut rev = targets.clone();
        rev.reverse();
        prop_assert_eq!(build(&targets), build(&rev));
    }

    #[test]
    fn routes_agree(s in valid_planar()) {
        let direct = bounded_monoid(&s).unwrap();
        let report = compatible_completion(&s).unwrap();
        prop_assert_eq!(&report.ring.basis, &direct.basis);
        prop_assert_eq!(&report.ring.exponent_cone, &direct.exponent_cone);
    }

    #[test]
    fn tentacle_order_does_not_matter(s in valid_planar()) {
        let mut ts = s.tentacles().to_vec();
        ts.reverse();
        let r = SetSpec::new(2, ts).unwrap();
        let a = compatible_completion(&s).unwrap();
        let b = compatible_completion(&r).unwrap();
        prop_assert_eq!(a.fan.rays(), b.fan.rays());
        prop_assert_eq!(a.touched(), b.touched());
    }

    #[test]
    fn divisors_are_consistent(s in valid_planar()) {
        let report = compatible_completion(&s).unwrap();
        let fan = &report.fan;
        prop_assert!(fan.is_smooth() && fan.is_complete());
        for (i, d) in report.divisors.iter().enumerate() {
            prop_assert_eq!(d.at_infinity, d.ray[0] < 0 || d.ray[1] < 0);
            prop_assert!(!d.touched || d.at_infinity);
            let (p, q) = fan.neighbours(i);
            let c = d.self_intersection;
            prop_assert_eq!([p[0] + q[0] + c * d.ray[0], p[1] + q[1] + c * d.ray[1]], [0, 0]);
        }
        let m = &report.m_d;
        for i in 0..m.len() {
            for j in 0..m.len() {
                prop_assert_eq!(m[i][j], m[j][i]);
                if i != j {
                    prop_assert!(m[i][j] == 0 || m[i][j] == 1);
                }
            }
        }
    }

    #[test]
    fn touched_rays_decide_membership(s in valid_planar()) {
        let report = compatible_completion(&s).unwrap();
        let touched = report.touched();
        for g in report.ring.basis.as_vectors() {
            for w in &touched {
                prop_assert!(w[0] * g[0] + w[1] * g[1] >= 0);
            }
        }
        for e in monomials_up_to(2, 6) {
            let f = Poly::monomial(e.clone(), rat(1));
            if !is_bounded(&f, &s).unwrap().bounded {
                prop_assert!(touched.iter().any(|w| e.dot(w) < 0));
            }
        }
    }

    #[test]
    fn untouched_divisors_miss_the_set(s in valid_planar()) {
        let report = compatible_completion(&s).unwrap();
        let fan = &report.fan;
        let cones = recession_cones(&s).unwrap();
        for (i, d) in report.divisors.iter().enumerate() {
            if !d.at_infinity || d.touched {
                continue;
            }
            let (p, q) = fan.neighbours(i);
            let w = d.ray;
            for x in -6i64..=6 {
                for y in -6i64..=6 {
                    if !cones.iter().any(|c| c.contains(&[x, y])) {
                        continue;
                    }
                    let v = [-x, -y];
                    prop_assert!(
                        !(positive_multiple(w, v) || in_open_cone(p, w, v) || in_open_cone(w, q, v)),
                        "direction ({}, {}) meets the untouched divisor {:?}", x, y, w
                    );
                }
            }
        }
    }
}
