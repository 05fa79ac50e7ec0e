use proptest::prelude::*;
use sfc_core::identities::{gdp_expenditure, gdp_income, gdp_production, gdp_value_added, real_gdp, GdpBreakdown};
use sfc_core::ingest::fixture_2011;
use sfc_core::ledger::{Direction, ItemCode, Sector};
use sfc_core::{EconomyYear, Mode, Money};

use Direction::{Paid, Received};
use ItemCode::*;

/// Goods flows given as components on both sides: every sale of one sector
/// is spent by some sector, so the goods market clears.
fn goods_year(v: &[i64]) -> EconomyYear {
    let mut year = EconomyYear::new(2000);
    let m = Money::from_cents;
    let mut it = v.iter().copied();
    let mut next = || m(it.next().unwrap());
    let mut totals = [Money::ZERO; 6];
    for s in Sector::DOMESTIC {
        for (k, item) in [P31, P32, P5, P2, P6].into_iter().enumerate() {
            let x = next();
            if item.applies_to(s, Received) {
                year.set(s, item, Received, x).unwrap();
                totals[k] += x;
            }
        }
        let imports = next();
        if P7.applies_to(s, Paid) {
            year.set(s, P7, Paid, imports).unwrap();
            totals[5] += imports;
        }
        let h = next();
        year.set(s, P2, Paid, h).unwrap();
        year.set(s, K1, Paid, next()).unwrap();
        year.set(s, D11, Paid, next()).unwrap();
    }
    year.set(Sector::HS, P31, Paid, totals[0]).unwrap();
    year.set(Sector::GS, P32, Paid, totals[1]).unwrap();
    year.set(Sector::NFS, P5, Paid, totals[2]).unwrap();
    year.set(Sector::RS, P6, Paid, totals[4]).unwrap();
    year.set(Sector::RS, P7, Received, totals[5]).unwrap();
    year
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn expanded_form_matches_aggregate(v in prop::collection::vec(0i64..10_000_000, 40)) {
        let year = goods_year(&v);
        let b = GdpBreakdown::from_year(&year, Mode::Recompute).unwrap();
        prop_assert_eq!(gdp_production(&b), gdp_value_added(&b));
        prop_assert_eq!(gdp_value_added(&b), gdp_expenditure(&b) + b.intermediate_sales - b.intermediate);
    }

    #[test]
    fn unit_price_keeps_nominal(v in 0i64..1_000_000_000) {
        let nominal = Money::from_cents(v);
        prop_assert_eq!(real_gdp(nominal, 1.0).unwrap(), nominal.to_f64());
    }
}

#[test]
fn fixture_gdp_forms_agree() {
    for mode in [Mode::Reported, Mode::Recompute] {
        let b = GdpBreakdown::from_year(&fixture_2011(), mode).unwrap();
        let gdp = Money::from_millions(196869);
        assert_eq!(gdp_expenditure(&b), gdp);
        assert_eq!(gdp_income(&b), gdp);
        assert_eq!(gdp_production(&b), gdp);
        assert_eq!(gdp_value_added(&b), gdp);
    }
}

#[test]
fn deflation_rejects_non_positive_price() {
    assert!(real_gdp(Money::from_millions(1), 0.0).is_err());
    assert!(real_gdp(Money::from_millions(1), f64::NAN).is_err());
    assert_eq!(real_gdp(Money::ZERO, 1.3).unwrap(), 0.0);
}
