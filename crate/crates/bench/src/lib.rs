//! Fixed inputs shared by the benchmarks.

use num_bigint::BigInt;
use omega_core::tower::Tower;
use omega_core::{embed, parse_set_expression, EventuallyPeriodicSet, PolyadicNumber, TowerSpec};

pub fn tower(spec: &str) -> Tower {
    spec.parse::<TowerSpec>()
        .expect("valid spec")
        .build()
        .expect("buildable")
}

/// Deterministic operands spread over `[0, 10^12)`.
pub fn operands(tower: &Tower, count: usize) -> Vec<PolyadicNumber> {
    (0..count as u64)
        .map(|i| {
            embed(
                tower,
                BigInt::from(i.wrapping_mul(0x9e37_79b9_7f4a_7c15) % 1_000_000_000_000),
            )
        })
        .collect()
}

pub fn sets() -> Vec<EventuallyPeriodicSet> {
    [
        "AP(1,6)",
        "AP(0,2) | {1,7}",
        "~AP(3,10) & AP(0,4)",
        "(AP(1,12) | AP(5,9)) - {5,14,23}",
    ]
    .iter()
    .map(|s| parse_set_expression(s).expect("valid set"))
    .collect()
}
