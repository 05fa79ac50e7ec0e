use std::num::NonZeroU32;

use proptest::prelude::*;
use sfc_core::ledger::{accumulate, AccountNode};
use sfc_core::Money;

fn money() -> impl Strategy<Value = Money> {
    (-1_000_000_000i64..1_000_000_000).prop_map(Money::from_cents)
}

fn side() -> impl Strategy<Value = Vec<Money>> {
    prop::collection::vec((0i64..1_000_000_000).prop_map(Money::from_cents), 0..8)
}

fn node(inflows: &[Money], outflows: &[Money]) -> AccountNode {
    let mut n = AccountNode::new("N", "B");
    for (i, v) in inflows.iter().enumerate() {
        n = n.inflow(format!("in{i}"), *v);
    }
    for (i, v) in outflows.iter().enumerate() {
        n = n.outflow(format!("out{i}"), *v);
    }
    n
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn closed_node_sums_to_zero(ins in side(), outs in side()) {
        let closed = node(&ins, &outs).closed();
        prop_assert_eq!(closed.total_inflow(), closed.total_outflow());
        prop_assert_eq!(closed.balance(), Money::ZERO);
    }

    #[test]
    fn balance_ignores_order(
        (ins, ins2) in side().prop_flat_map(|v| (Just(v.clone()), Just(v).prop_shuffle())),
        (outs, outs2) in side().prop_flat_map(|v| (Just(v.clone()), Just(v).prop_shuffle())),
    ) {
        prop_assert_eq!(node(&ins2, &outs2).balance(), node(&ins, &outs).balance());
    }

    #[test]
    fn accumulate_is_additive(
        s in money(),
        f1 in prop::collection::vec(money(), 0..6),
        f2 in prop::collection::vec(money(), 0..6),
        dt in 1u32..5,
    ) {
        let dt = NonZeroU32::new(dt).unwrap();
        let joined: Vec<Money> = f1.iter().chain(f2.iter()).copied().collect();
        prop_assert_eq!(
            accumulate(s, joined, dt),
            accumulate(accumulate(s, f1.clone(), dt), f2.clone(), dt)
        );
    }

    #[test]
    fn accumulate_ignores_flow_order(s in money(), mut f in prop::collection::vec(money(), 0..8)) {
        let dt = NonZeroU32::new(1).unwrap();
        let a = accumulate(s, f.clone(), dt);
        f.reverse();
        prop_assert_eq!(accumulate(s, f, dt), a);
    }
}

#[test]
fn accumulate_examples() {
    let one = NonZeroU32::new(1).unwrap();
    let m = Money::from_millions;
    assert_eq!(accumulate(m(100), [m(10), m(-5)], one), m(105));
    assert_eq!(accumulate(m(0), [], one), m(0));
    assert_eq!(accumulate(m(50), [m(7)], NonZeroU32::new(2).unwrap()), m(64));
}
