#![allow(dead_code)]

use proptest::prelude::*;
use sfc_core::ledger::{Direction, ItemCode, Sector};
use sfc_core::{EconomyYear, Money};

use Direction::{Net, Paid, Received};
use ItemCode::*;

const COMPONENT_KEYS: [(ItemCode, Direction); 6] = [
    (P31, Received),
    (P32, Received),
    (P5, Received),
    (P2, Received),
    (P6, Received),
    (P7, Paid),
];

/// Every key a random year may fill: component flows of all sectors, with the
/// domestic output given as one composite.
pub fn keys() -> Vec<(Sector, ItemCode, Direction)> {
    let mut out = Vec::new();
    for &s in &Sector::ALL {
        for &item in ItemCode::ALL {
            if item.is_balancing() || item == DA {
                continue;
            }
            for d in [Received, Paid, Net] {
                if !item.applies_to(s, d) {
                    continue;
                }
                if s != Sector::RS && COMPONENT_KEYS.contains(&(item, d)) {
                    continue;
                }
                out.push((s, item, d));
            }
        }
    }
    out
}

pub fn build(values: &[i64]) -> EconomyYear {
    let mut year = EconomyYear::new(2000);
    for (&(s, item, d), &v) in keys().iter().zip(values) {
        let v = if d == Net { v - 50_000 } else { v };
        year.set(s, item, d, Money::from_cents(v)).unwrap();
    }
    year
}

/// Arbitrary component-level year; values in cents, signed items centred on zero.
pub fn economy_year() -> impl Strategy<Value = EconomyYear> {
    prop::collection::vec(0i64..100_000, keys().len()).prop_map(|v| build(&v))
}

pub fn scaled(year: &EconomyYear, k: i64) -> EconomyYear {
    let mut out = EconomyYear::new(year.year);
    for f in year.flows() {
        out.set(f.sector(), f.item(), f.direction(), f.value() * k).unwrap();
    }
    out
}
