#![allow(dead_code)]

use barrier_core::{Instance, MoveCost, OrderConstraint, Sensor};
use proptest::prelude::*;

pub fn alpha() -> impl Strategy<Value = f64> {
    prop_oneof![Just(1.0), Just(2.0), Just(3.0), 1.0f64..4.0]
}

pub fn move_cost() -> impl Strategy<Value = f64> {
    prop_oneof![Just(1.0), 0.2f64..3.0]
}

pub fn position() -> impl Strategy<Value = f64> {
    prop_oneof![1 => Just(0.0), 1 => Just(1.0), 4 => 0.0f64..=1.0]
}

pub fn variable_instance(max_n: usize) -> impl Strategy<Value = Instance> {
    (alpha(), move_cost(), prop::collection::vec((position(), 0.05f64..2.0), 1..=max_n)).prop_map(|(alpha, a, xb)| {
        let sensors = xb.into_iter().map(|(x, b)| Sensor::variable(x, b)).collect();
        Instance::new(alpha, MoveCost::Finite(a), sensors).unwrap()
    })
}

pub fn fixed_instance(max_n: usize) -> impl Strategy<Value = Instance> {
    (alpha(), move_cost(), prop::collection::vec((position(), 0.05f64..2.0, 0.02f64..0.6), 1..=max_n)).prop_map(
        |(alpha, a, xbr)| {
            let sensors = xbr.into_iter().map(|(x, b, r)| Sensor::fixed(x, b, r)).collect();
            Instance::new(alpha, MoveCost::Finite(a), sensors).unwrap()
        },
    )
}

pub fn any_instance(max_n: usize) -> impl Strategy<Value = Instance> {
    prop_oneof![variable_instance(max_n), fixed_instance(max_n)]
}

/// An instance together with an order over its sensors.
pub fn with_order(inst: impl Strategy<Value = Instance>) -> impl Strategy<Value = (Instance, OrderConstraint)> {
    inst.prop_flat_map(|inst| {
        let n = inst.len();
        (Just(inst), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
    .prop_map(|(inst, perm)| (inst, OrderConstraint::new(perm).unwrap()))
}

pub fn endpoint_instance(max_n: usize, fixed: bool) -> impl Strategy<Value = Instance> {
    let side = prop_oneof![Just(0.0), Just(1.0)];
    (alpha(), move_cost(), prop::collection::vec((side, 0.05f64..2.0, 0.02f64..0.6), 1..=max_n)).prop_map(
        move |(alpha, a, xbr)| {
            let sensors = xbr
                .into_iter()
                .map(|(x, b, r)| if fixed { Sensor::fixed(x, b, r) } else { Sensor::variable(x, b) })
                .collect();
            Instance::new(alpha, MoveCost::Finite(a), sensors).unwrap()
        },
    )
}
