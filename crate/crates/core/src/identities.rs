//! Economy-wide identities: GDP from expenditure, income and production,
//! disposable national income, and price deflation.

use std::fmt;

use serde::Serialize;

use crate::economy::{EconomyYear, Mode};
use crate::error::{AccountsError, IdentityError};
use crate::ledger::{Direction, ItemCode, Sector};
use crate::money::Money;

use Direction::{Net, Paid, Received};
use ItemCode::*;

/// Aggregates needed by the three GDP forms.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GdpBreakdown {
    /// C, individual consumption expenditure of HS and GS.
    pub consumption: Money,
    /// I, gross capital formation of the domestic sectors.
    pub investment: Money,
    /// G, collective consumption expenditure.
    pub government: Money,
    /// X, exports as paid by the rest of the world.
    pub exports: Money,
    /// M, imports as received by the rest of the world.
    pub imports: Money,
    /// O, domestic operating surplus and mixed income.
    pub operating_surplus: Money,
    /// W_DP, wages paid by domestic sectors.
    pub wages: Money,
    /// T_SDP, employers' social contributions paid by domestic sectors.
    pub employer_contributions: Money,
    /// T_PDP, taxes on products and production received by GS and RS.
    pub production_taxes: Money,
    /// P, consumption of fixed capital.
    pub fixed_capital: Money,
    /// B_PDR, subsidies paid by GS and RS.
    pub subsidies: Money,
    /// Sum of the domestic output composites.
    pub output: Money,
    /// H, intermediate consumption.
    pub intermediate: Money,
    /// Z, intermediate sales.
    pub intermediate_sales: Money,
    /// Taxes on products with no attributed payer.
    pub unattributed_product_taxes: Money,
    /// Subsidies on products with no attributed recipient.
    pub unattributed_product_subsidies: Money,
}

const PUBLIC_RECEIVERS: [Sector; 2] = [Sector::GS, Sector::RS];

impl GdpBreakdown {
    pub fn from_year(year: &EconomyYear, mode: Mode) -> Result<Self, AccountsError> {
        let balances = year.all_balances(mode)?;
        let public = |item, dir| -> Money {
            PUBLIC_RECEIVERS.iter().map(|&s| year.get(s, item, dir)).sum()
        };
        let output = Sector::DOMESTIC
            .iter()
            .map(|&s| year.output_composite(s))
            .sum::<Result<Money, _>>()?;
        let intermediate = year.domestic_total(P2, Paid);
        let has_sales = Sector::DOMESTIC
            .iter()
            .any(|&s| year.ledger(s).contains(P2, Received));
        let intermediate_sales = if has_sales {
            year.domestic_total(P2, Received)
        } else {
            intermediate
        };
        Ok(GdpBreakdown {
            consumption: year.domestic_total(P31, Paid),
            investment: year.domestic_total(P5, Paid),
            government: year.domestic_total(P32, Paid),
            exports: year.get(Sector::RS, P6, Paid),
            imports: year.get(Sector::RS, P7, Received),
            operating_surplus: Sector::DOMESTIC
                .iter()
                .map(|s| balances[s].operating_surplus)
                .sum(),
            wages: year.domestic_total(D11, Paid),
            employer_contributions: year.domestic_total(D12, Paid),
            production_taxes: public(D21, Received) + public(D29, Received),
            fixed_capital: year.domestic_total(K1, Paid),
            subsidies: public(D31, Paid) + public(D39, Paid),
            output,
            intermediate,
            intermediate_sales,
            unattributed_product_taxes: year.total(D21, Received) - year.total(D21, Paid),
            unattributed_product_subsidies: year.total(D31, Paid) - year.total(D31, Received),
        })
    }
}

/// `C + I + G + (X - M)`.
pub fn gdp_expenditure(b: &GdpBreakdown) -> Money {
    b.consumption + b.investment + b.government + (b.exports - b.imports)
}

/// `O + W_DP + T_SDP + T_PDP + P - B_PDR`.
pub fn gdp_income(b: &GdpBreakdown) -> Money {
    b.operating_surplus + b.wages + b.employer_contributions + b.production_taxes + b.fixed_capital
        - b.subsidies
}

/// Sum of gross value added plus product taxes less product subsidies that
/// are not attributed to a producing sector.
pub fn gdp_production(b: &GdpBreakdown) -> Money {
    b.output - b.intermediate + b.unattributed_product_taxes - b.unattributed_product_subsidies
}

/// Expenditure form with intermediate flows written out: `C + I + G + (X - M) + Z - H`.
pub fn gdp_value_added(b: &GdpBreakdown) -> Money {
    gdp_expenditure(b) + b.intermediate_sales - b.intermediate
}

/// Both sides of the disposable national income identity.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct NationalIncome {
    pub operating_surplus: Money,
    /// W_HR, wages received by households.
    pub household_wages: Money,
    /// T_SHR, employers' contributions received by households.
    pub household_contributions: Money,
    /// T_PGR, taxes on products and production received by GS.
    pub government_production_taxes: Money,
    /// N_Dn, domestic net other current transfers.
    pub transfers_net: Money,
    /// B_SDn, domestic net social contributions and benefits.
    pub social_net: Money,
    /// PI_Dn, domestic net property income.
    pub property_income_net: Money,
    /// Domestic net pension-entitlement adjustment.
    pub pension_adjustment_net: Money,
    /// Income taxes received by GS less those paid by domestic sectors.
    pub income_taxes_net: Money,
    /// B_PGP, subsidies paid by GS.
    pub government_subsidies: Money,
    pub consumption: Money,
    pub government: Money,
    /// S_D, domestic net saving.
    pub saving: Money,
}

impl NationalIncome {
    pub fn from_year(year: &EconomyYear, mode: Mode) -> Result<Self, AccountsError> {
        let balances = year.all_balances(mode)?;
        let dom = |f: fn(&crate::accounts::SectorResult) -> Money| -> Money {
            Sector::DOMESTIC.iter().map(|s| f(&balances[s])).sum()
        };
        let net = |item| year.domestic_total(item, Received) - year.domestic_total(item, Paid);
        let gs = year.ledger(Sector::GS);
        Ok(NationalIncome {
            operating_surplus: dom(|r| r.operating_surplus),
            household_wages: year.get(Sector::HS, D11, Received),
            household_contributions: year.get(Sector::HS, D12, Received),
            government_production_taxes: gs.received(D21) + gs.received(D29),
            transfers_net: net(D7),
            social_net: net(D61D62),
            property_income_net: net(D4),
            pension_adjustment_net: year.domestic_total(D8, Net),
            income_taxes_net: year.domestic_total(D5, Received) - year.domestic_total(D5, Paid),
            government_subsidies: gs.paid(D31) + gs.paid(D39),
            consumption: year.domestic_total(P31, Paid),
            government: year.domestic_total(P32, Paid),
            saving: dom(|r| r.net_saving),
        })
    }

    pub fn lhs(&self) -> Money {
        self.operating_surplus
            + self.household_wages
            + self.household_contributions
            + self.government_production_taxes
            + self.transfers_net
            + self.social_net
            + self.property_income_net
            + self.pension_adjustment_net
            + self.income_taxes_net
            - self.government_subsidies
    }

    pub fn rhs(&self) -> Money {
        self.consumption + self.government + self.saving
    }
}

/// `(lhs, rhs)` of the disposable national income identity.
pub fn national_income_identity(year: &EconomyYear, mode: Mode) -> Result<(Money, Money), AccountsError> {
    let n = NationalIncome::from_year(year, mode)?;
    Ok((n.lhs(), n.rhs()))
}

/// Real GDP in physical units: nominal divided by the average price.
pub fn real_gdp(nominal: Money, p_bar: f64) -> Result<f64, IdentityError> {
    if p_bar.is_nan() || p_bar <= 0.0 || !p_bar.is_finite() {
        return Err(IdentityError::NonPositivePrice(p_bar));
    }
    Ok(nominal.to_f64() / p_bar)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub lhs: Money,
    pub rhs: Money,
    pub residual: Money,
}

impl IdentityCheck {
    fn new(name: &'static str, lhs: Money, rhs: Money) -> Self {
        IdentityCheck {
            name,
            lhs,
            rhs,
            residual: rhs - lhs,
        }
    }

    pub fn holds(&self, tolerance: Money) -> bool {
        self.residual.abs() <= tolerance
    }
}

impl fmt::Display for IdentityCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<28} {:>14} {:>14} {:>10}",
            self.name, self.lhs, self.rhs, self.residual
        )
    }
}

/// Every economy-wide identity as a signed residual (rhs - lhs).
pub fn identity_checks(year: &EconomyYear, mode: Mode) -> Result<Vec<IdentityCheck>, AccountsError> {
    let b = GdpBreakdown::from_year(year, mode)?;
    let n = NationalIncome::from_year(year, mode)?;
    let expenditure = gdp_expenditure(&b);
    Ok(vec![
        IdentityCheck::new("gdp expenditure = income", expenditure, gdp_income(&b)),
        IdentityCheck::new("gdp expenditure = production", expenditure, gdp_production(&b)),
        IdentityCheck::new("gdp expenditure = value added", expenditure, gdp_value_added(&b)),
        IdentityCheck::new("national disposable income", n.lhs(), n.rhs()),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::fixture_2011;

    fn m(v: i64) -> Money {
        Money::from_millions(v)
    }

    #[test]
    fn expenditure_examples() {
        let b = GdpBreakdown {
            consumption: m(137000),
            investment: m(46282),
            government: m(15262),
            exports: m(77093),
            imports: m(78768),
            ..Default::default()
        };
        assert_eq!(gdp_expenditure(&b), m(196869));
        assert_eq!(gdp_expenditure(&GdpBreakdown::default()), Money::ZERO);
        let b = GdpBreakdown {
            consumption: m(100),
            investment: m(20),
            government: m(30),
            exports: m(10),
            imports: m(10),
            ..Default::default()
        };
        assert_eq!(gdp_expenditure(&b), m(150));
    }

    #[test]
    fn income_examples() {
        let b = GdpBreakdown {
            operating_surplus: m(39585),
            wages: m(78580),
            employer_contributions: m(18248),
            production_taxes: m(27371),
            fixed_capital: m(36581),
            subsidies: m(3496),
            ..Default::default()
        };
        assert_eq!(gdp_income(&b), m(196869));
        let b = GdpBreakdown {
            operating_surplus: m(5),
            subsidies: m(5),
            ..Default::default()
        };
        assert_eq!(gdp_income(&b), Money::ZERO);
    }

    #[test]
    fn fixture_breakdown() {
        let b = GdpBreakdown::from_year(&fixture_2011(), Mode::Reported).unwrap();
        assert_eq!(b.consumption, m(137000));
        assert_eq!(b.investment, m(46282));
        assert_eq!(b.operating_surplus, m(39585));
        assert_eq!(b.wages, m(78580));
        assert_eq!(b.employer_contributions, m(18248));
        assert_eq!(b.production_taxes, m(27371));
        assert_eq!(b.fixed_capital, m(36581));
        assert_eq!(b.subsidies, m(3496));
        assert_eq!(b.intermediate_sales, b.intermediate);
        for mode in [Mode::Reported, Mode::Recompute] {
            let b = GdpBreakdown::from_year(&fixture_2011(), mode).unwrap();
            assert_eq!(gdp_expenditure(&b), m(196869));
            assert_eq!(gdp_income(&b), m(196869));
            assert_eq!(gdp_production(&b), m(196869));
            assert_eq!(gdp_value_added(&b), m(196869));
        }
    }

    #[test]
    fn national_income_fixture() {
        let n = NationalIncome::from_year(&fixture_2011(), Mode::Reported).unwrap();
        assert_eq!(n.transfers_net, m(-2110));
        assert_eq!(n.social_net, m(11));
        assert_eq!(n.property_income_net, m(238));
        assert_eq!(n.government_production_taxes, m(27180));
        assert_eq!(n.government_subsidies, m(2724));
        assert_eq!(n.saving, m(6819));
        assert_eq!(
            national_income_identity(&fixture_2011(), Mode::Reported).unwrap(),
            (m(159081), m(159081))
        );
    }

    #[test]
    fn zero_year_is_zero() {
        let y = EconomyYear::new(2000);
        assert_eq!(national_income_identity(&y, Mode::Reported).unwrap(), (m(0), m(0)));
        assert!(identity_checks(&y, Mode::Recompute)
            .unwrap()
            .iter()
            .all(|c| c.lhs.is_zero() && c.rhs.is_zero()));
    }

    #[test]
    fn saving_perturbation_shows_in_residual() {
        let mut n = NationalIncome::from_year(&fixture_2011(), Mode::Reported).unwrap();
        n.saving += m(1);
        assert_eq!(n.rhs() - n.lhs(), m(1));
    }

    #[test]
    fn real_gdp_examples() {
        assert_eq!(real_gdp(m(100), 2.0).unwrap(), 50.0);
        assert_eq!(real_gdp(m(0), 3.0).unwrap(), 0.0);
        assert_eq!(real_gdp(m(196869), 1.0).unwrap(), 196869.0);
        assert!(real_gdp(m(1), 0.0).is_err());
        assert!(real_gdp(m(1), -1.0).is_err());
        assert!(real_gdp(m(1), f64::NAN).is_err());
    }
}
