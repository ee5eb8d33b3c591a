#![allow(dead_code)]

use boundring_core::{rat, MonomialConstraint, Rational, SetSpec, SignRegime, Tentacle};
use proptest::prelude::*;

pub fn constant(k: u8) -> Rational {
    match k {
        0 => Rational::new(1.into(), 2.into()),
        1 => rat(1),
        _ => rat(2),
    }
}

pub fn tentacle(n: usize, rows: &[(Vec<i64>, u8)], regime: SignRegime) -> Tentacle {
    let cs = rows
        .iter()
        .map(|(a, k)| MonomialConstraint::from_normal(a, constant(*k)).unwrap())
        .collect();
    Tentacle::new(n, cs, regime).unwrap()
}

pub fn planar(normals: &[[i64; 2]]) -> SetSpec {
    let rows: Vec<(Vec<i64>, u8)> = normals.iter().map(|a| (a.to_vec(), 1)).collect();
    SetSpec::single(tentacle(2, &rows, SignRegime::Absolute))
}

pub fn strip() -> SetSpec {
    planar(&[[1, 0]])
}

pub fn t_set() -> SetSpec {
    planar(&[[1, 0], [1, 1]])
}

pub fn wedge() -> SetSpec {
    planar(&[[2, 1], [2, 3]])
}

fn row(n: usize) -> impl Strategy<Value = (Vec<i64>, u8)> {
    (prop::collection::vec(-4i64..=4, n), 0u8..3)
}

pub fn tentacle_rows(n: usize) -> impl Strategy<Value = Vec<(Vec<i64>, u8)>> {
    prop::collection::vec(row(n), 1..=3)
}

/// Planar sets with 1 to 3 tentacles; not necessarily valid.
pub fn raw_planar() -> impl Strategy<Value = SetSpec> {
    prop::collection::vec(tentacle_rows(2), 1..=3).prop_map(|ts| {
        let ts = ts
            .iter()
            .map(|rows| tentacle(2, rows, SignRegime::Absolute))
            .collect();
        SetSpec::new(2, ts).unwrap()
    })
}

pub fn valid_planar() -> impl Strategy<Value = SetSpec> {
    raw_planar().prop_filter("valid set", |s| boundring_core::setmodel::validate(s).is_valid())
}
