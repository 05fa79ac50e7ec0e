use std::collections::BTreeMap;

use proptest::prelude::*;
use sfc_core::consolidation::{consolidate, consolidate_group, MicroUnit};
use sfc_core::ledger::{Direction, ItemCode, Sector};
use sfc_core::Money;

use Direction::{Paid, Received};
use ItemCode::*;

const EXTERNAL: [(ItemCode, Direction); 6] = [
    (P1, Received),
    (D11, Paid),
    (D4, Received),
    (D4, Paid),
    (D7, Received),
    (D5, Paid),
];
const TRADED: [ItemCode; 4] = [P2, D4, D7, D9];

#[derive(Clone, Debug)]
struct Population {
    units: Vec<MicroUnit>,
    external: BTreeMap<(ItemCode, Direction), Money>,
}

fn population() -> impl Strategy<Value = Population> {
    (2usize..8)
        .prop_flat_map(|n| {
            (
                Just(n),
                prop::collection::vec((0..n, 0..EXTERNAL.len(), 0i64..1_000_000), 0..20),
                prop::collection::vec((0..n, 0..n, 0..TRADED.len(), 1i64..1_000_000), 0..20),
            )
        })
        .prop_map(|(n, ext, trades)| {
            let mut units: Vec<MicroUnit> = (0..n).map(|i| MicroUnit::new(format!("u{i}"), Sector::NFS)).collect();
            let mut external = BTreeMap::new();
            for (i, k, v) in ext {
                let (item, dir) = EXTERNAL[k];
                let v = Money::from_cents(v);
                units[i] = units[i].clone().flow(item, dir, v).unwrap();
                *external.entry((item, dir)).or_insert(Money::ZERO) += v;
            }
            for (i, j, k, v) in trades {
                if i == j {
                    continue;
                }
                let item = TRADED[k];
                let v = Money::from_cents(v);
                units[i] = units[i].clone().trade(item, Paid, v, format!("u{j}")).unwrap();
                units[j] = units[j].clone().trade(item, Received, v, format!("u{i}")).unwrap();
            }
            Population { units, external }
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn paired_flows_disappear(p in population()) {
        let ledger = consolidate(&p.units).unwrap();
        for (item, dir, value) in ledger.entries() {
            prop_assert_eq!(value, p.external.get(&(item, dir)).copied().unwrap_or_default());
        }
        for (&(item, dir), &value) in &p.external {
            prop_assert_eq!(ledger.get(item, dir), value);
        }
    }

    #[test]
    fn net_saving_is_preserved(p in population()) {
        let total: Money = p.units.iter().map(MicroUnit::net_saving).sum();
        prop_assert_eq!(consolidate(&p.units).unwrap().net_position(), total);
    }

    #[test]
    fn order_does_not_matter(
        (p, shuffled) in population().prop_flat_map(|p| {
            let units = p.units.clone();
            (Just(p), Just(units).prop_shuffle())
        })
    ) {
        prop_assert_eq!(consolidate(&shuffled).unwrap(), consolidate(&p.units).unwrap());
    }

    #[test]
    fn grouping_does_not_matter(p in population(), cut in any::<prop::sample::Index>()) {
        let k = 1 + cut.index(p.units.len() - 1);
        let (a, b) = p.units.split_at(k);
        let ga = consolidate_group("A", a).unwrap();
        let gb = consolidate_group("B", b).unwrap();
        prop_assert_eq!(consolidate(&[ga, gb]).unwrap(), consolidate(&p.units).unwrap());
    }
}

#[test]
fn one_sided_trade_is_rejected() {
    let a = MicroUnit::new("a", Sector::NFS)
        .trade(P2, Paid, Money::from_millions(3), "b")
        .unwrap();
    let b = MicroUnit::new("b", Sector::NFS);
    assert!(consolidate(&[a, b]).is_err());
}
