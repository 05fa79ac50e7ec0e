//! One accounting year of the whole economy: five sector ledgers.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::accounts::{
    firm_chain, government_chain, household_chain, rest_of_world_chain, FirmSectorInputs,
    GovernmentSectorInputs, HouseholdSectorInputs, OutputComponents, OutputValue,
    RestOfWorldInputs, SectorAccounts, SectorResult,
};
use crate::error::{AccountsError, LedgerError};
use crate::ledger::{Direction, Flow, ItemCode, Sector, SectorLedger};
use crate::money::Money;

use Direction::{Net, Paid, Received};
use ItemCode::*;

/// Where a stored value came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "note", rename_all = "lowercase")]
pub enum Provenance {
    /// Read as printed in the source tables.
    Read,
    /// Reconciled from other figures; the note says how.
    Derived(String),
}

/// Which balancing items feed the identity checks.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Use reported balancing items where present.
    #[default]
    Reported,
    /// Rebuild every balancing item from component flows.
    Recompute,
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "reported" => Ok(Mode::Reported),
            "recompute" => Ok(Mode::Recompute),
            other => Err(format!("unknown mode `{other}` (expected reported or recompute)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EconomyYear {
    pub year: i32,
    ledgers: BTreeMap<Sector, SectorLedger>,
    provenance: BTreeMap<(Sector, ItemCode, Direction), Provenance>,
}

impl EconomyYear {
    pub fn new(year: i32) -> Self {
        EconomyYear {
            year,
            ledgers: Sector::ALL
                .iter()
                .map(|&s| (s, SectorLedger::new(s)))
                .collect(),
            provenance: BTreeMap::new(),
        }
    }

    pub fn ledger(&self, sector: Sector) -> &SectorLedger {
        &self.ledgers[&sector]
    }

    pub fn ledger_mut(&mut self, sector: Sector) -> &mut SectorLedger {
        self.ledgers.get_mut(&sector).expect("all sectors present")
    }

    pub fn post(&mut self, flow: Flow) -> Result<(), LedgerError> {
        self.ledger_mut(flow.sector()).post(flow)
    }

    pub fn set(
        &mut self,
        sector: Sector,
        item: ItemCode,
        direction: Direction,
        value: Money,
    ) -> Result<(), LedgerError> {
        self.ledger_mut(sector).set(item, direction, value)
    }

    pub fn get(&self, sector: Sector, item: ItemCode, direction: Direction) -> Money {
        self.ledger(sector).get(item, direction)
    }

    pub fn mark(&mut self, sector: Sector, item: ItemCode, direction: Direction, p: Provenance) {
        self.provenance.insert((sector, item, direction), p);
    }

    pub fn provenance(&self, sector: Sector, item: ItemCode, direction: Direction) -> Option<&Provenance> {
        self.provenance.get(&(sector, item, direction))
    }

    pub fn provenance_entries(
        &self,
    ) -> impl Iterator<Item = (&(Sector, ItemCode, Direction), &Provenance)> {
        self.provenance.iter()
    }

    pub fn flows(&self) -> Vec<Flow> {
        self.ledgers.values().flat_map(SectorLedger::flows).collect()
    }

    /// Sum over all sectors of one item in one direction.
    pub fn total(&self, item: ItemCode, direction: Direction) -> Money {
        self.ledgers.values().map(|l| l.get(item, direction)).sum()
    }

    /// Sum over the domestic sectors only.
    pub fn domestic_total(&self, item: ItemCode, direction: Direction) -> Money {
        Sector::DOMESTIC
            .iter()
            .map(|&s| self.get(s, item, direction))
            .sum()
    }

    pub fn output_value(&self, sector: Sector) -> OutputValue {
        let l = self.ledger(sector);
        let component_keys = [
            (P31, Received),
            (P32, Received),
            (P5, Received),
            (P2, Received),
            (P6, Received),
            (P7, Paid),
        ];
        let components = component_keys
            .iter()
            .any(|&(i, d)| l.contains(i, d))
            .then(|| OutputComponents {
                consumption: l.received(P31),
                collective_consumption: l.received(P32),
                investment_goods: l.received(P5),
                intermediate_sales: l.received(P2),
                exports: l.received(P6),
                imports: l.paid(P7),
            });
        OutputValue {
            composite: l.contains(P1, Received).then(|| l.received(P1)),
            components,
        }
    }

    /// Output composite of a domestic sector; zero for the rest of the world.
    pub fn output_composite(&self, sector: Sector) -> Result<Money, AccountsError> {
        if sector == Sector::RS {
            return Ok(Money::ZERO);
        }
        self.output_value(sector).resolve()
    }

    pub fn firm_inputs(&self, sector: Sector) -> FirmSectorInputs {
        let l = self.ledger(sector);
        FirmSectorInputs {
            output: self.output_value(sector),
            intermediate: l.paid(P2),
            fixed_capital_consumption: l.paid(K1),
            wages: l.paid(D11),
            employer_contributions: l.paid(D12),
            product_taxes: l.paid(D21),
            production_taxes: l.paid(D29),
            product_subsidies: l.received(D31),
            production_subsidies: l.received(D39),
            property_income_received: l.received(D4),
            property_income_paid: l.paid(D4),
            social_received: l.received(D61D62),
            social_paid: l.paid(D61D62),
            transfers_received: l.received(D7),
            transfers_paid: l.paid(D7),
            income_taxes: l.paid(D5),
            pension_adjustment: l.net(D8),
            capital_transfers_received: l.received(D9),
            capital_transfers_paid: l.paid(D9),
            investment: l.paid(P5),
            nonproduced_assets: l.net(K2),
            liabilities_issued: l.net(DPSI),
        }
    }

    pub fn household_inputs(&self) -> HouseholdSectorInputs {
        let l = self.ledger(Sector::HS);
        HouseholdSectorInputs {
            output: self.output_value(Sector::HS),
            intermediate: l.paid(P2),
            fixed_capital_consumption: l.paid(K1),
            wages_paid: l.paid(D11),
            employer_contributions_paid: l.paid(D12),
            product_taxes: l.paid(D21),
            production_taxes: l.paid(D29),
            product_subsidies: l.received(D31),
            production_subsidies: l.received(D39),
            wages_received: l.received(D11),
            employer_contributions_received: l.received(D12),
            property_income_received: l.received(D4),
            property_income_paid: l.paid(D4),
            social_received: l.received(D61D62),
            social_paid: l.paid(D61D62),
            transfers_received: l.received(D7),
            transfers_paid: l.paid(D7),
            income_taxes: l.paid(D5),
            pension_adjustment: l.net(D8),
            consumption: l.paid(P31),
            capital_transfers_received: l.received(D9),
            capital_transfers_paid: l.paid(D9),
            investment: l.paid(P5),
            nonproduced_assets: l.net(K2),
            liabilities_issued: l.net(DPSI),
        }
    }

    pub fn government_inputs(&self) -> GovernmentSectorInputs {
        let l = self.ledger(Sector::GS);
        GovernmentSectorInputs {
            output: self.output_value(Sector::GS),
            intermediate: l.paid(P2),
            fixed_capital_consumption: l.paid(K1),
            wages: l.paid(D11),
            employer_contributions: l.paid(D12),
            product_taxes_paid: l.paid(D21),
            production_taxes_paid: l.paid(D29),
            product_subsidies_received: l.received(D31),
            production_subsidies_received: l.received(D39),
            product_taxes_received: l.received(D21),
            production_taxes_received: l.received(D29),
            product_subsidies_paid: l.paid(D31),
            production_subsidies_paid: l.paid(D39),
            property_income_received: l.received(D4),
            property_income_paid: l.paid(D4),
            income_taxes_received: l.received(D5),
            income_taxes_paid: l.paid(D5),
            social_received: l.received(D61D62),
            social_paid: l.paid(D61D62),
            transfers_received: l.received(D7),
            transfers_paid: l.paid(D7),
            pension_adjustment: l.net(D8),
            individual_consumption: l.paid(P31),
            collective_consumption: l.paid(P32),
            capital_transfers_received: l.received(D9),
            capital_transfers_paid: l.paid(D9),
            investment: l.paid(P5),
            nonproduced_assets: l.net(K2),
            liabilities_issued: l.net(DPSI),
        }
    }

    pub fn rest_of_world_inputs(&self) -> RestOfWorldInputs {
        let l = self.ledger(Sector::RS);
        RestOfWorldInputs {
            imports: l.received(P7),
            exports: l.paid(P6),
            wages_received: l.received(D11),
            wages_paid: l.paid(D11),
            employer_contributions_received: l.received(D12),
            employer_contributions_paid: l.paid(D12),
            product_taxes_received: l.received(D21),
            production_taxes_received: l.received(D29),
            product_subsidies_paid: l.paid(D31),
            production_subsidies_paid: l.paid(D39),
            property_income_received: l.received(D4),
            property_income_paid: l.paid(D4),
            social_received: l.received(D61D62),
            social_paid: l.paid(D61D62),
            transfers_received: l.received(D7),
            transfers_paid: l.paid(D7),
            capital_transfers_received: l.received(D9),
            capital_transfers_paid: l.paid(D9),
            nonproduced_assets: l.net(K2),
            liabilities_issued: l.net(DPSI),
        }
    }

    /// Rebuilds a sector's account chain from its component flows.
    pub fn evaluate(&self, sector: Sector) -> Result<SectorAccounts, AccountsError> {
        match sector {
            Sector::NFS | Sector::FFS => firm_chain(sector, &self.firm_inputs(sector)),
            Sector::HS => household_chain(&self.household_inputs()),
            Sector::GS => government_chain(&self.government_inputs()),
            Sector::RS => rest_of_world_chain(&self.rest_of_world_inputs()),
        }
    }

    pub fn evaluate_all(&self) -> Result<BTreeMap<Sector, SectorAccounts>, AccountsError> {
        Sector::ALL
            .iter()
            .map(|&s| self.evaluate(s).map(|a| (s, a)))
            .collect()
    }

    /// Reported balancing items of a sector, as (label, item, value) for those present.
    pub fn reported_items(&self, sector: Sector) -> Vec<(&'static str, ItemCode, Money)> {
        let l = self.ledger(sector);
        let keys: &[(&str, ItemCode)] = if sector == Sector::RS {
            &[("EB", B11), ("BP", B12), ("Y", B9), ("dA", DA)]
        } else {
            &[
                ("O", B13N),
                ("BPI", B5NT),
                ("DI", B6N),
                ("S", B8N),
                ("Y", B9),
                ("dA", DA),
            ]
        };
        keys.iter()
            .filter(|&&(_, item)| l.contains(item, Net))
            .map(|&(label, item)| (label, item, l.net(item)))
            .collect()
    }

    /// Balancing items under the chosen mode. Reported mode overlays every
    /// reported item on top of the recomputed chain.
    pub fn balances(&self, sector: Sector, mode: Mode) -> Result<SectorResult, AccountsError> {
        let mut r = self.evaluate(sector)?.result;
        if mode == Mode::Recompute {
            return Ok(r);
        }
        for (label, _, value) in self.reported_items(sector) {
            match label {
                "O" | "EB" => r.operating_surplus = value,
                "BPI" => r.primary_income = value,
                "DI" => r.disposable_income = value,
                "S" => r.net_saving = value,
                "BP" => {
                    r.primary_income = value;
                    r.disposable_income = value;
                    r.net_saving = value;
                }
                "Y" => r.net_lending = value,
                "dA" => r.financial_assets_change = value,
                _ => unreachable!(),
            }
        }
        Ok(r)
    }

    pub fn all_balances(&self, mode: Mode) -> Result<BTreeMap<Sector, SectorResult>, AccountsError> {
        Sector::ALL
            .iter()
            .map(|&s| self.balances(s, mode).map(|r| (s, r)))
            .collect()
    }

    /// Recomputed minus reported, for every reported balancing item.
    pub fn chain_residuals(&self) -> Result<Vec<ChainResidual>, AccountsError> {
        let mut out = Vec::new();
        for sector in Sector::ALL {
            let computed = self.evaluate(sector)?.result;
            for (label, item, reported) in self.reported_items(sector) {
                let recomputed = match label {
                    "O" | "EB" => computed.operating_surplus,
                    "BPI" => computed.primary_income,
                    "DI" | "BP" => computed.disposable_income,
                    "S" => computed.net_saving,
                    "Y" => computed.net_lending,
                    "dA" => computed.financial_assets_change,
                    _ => unreachable!(),
                };
                out.push(ChainResidual {
                    sector,
                    label,
                    item,
                    reported,
                    recomputed,
                    residual: recomputed - reported,
                });
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainResidual {
    pub sector: Sector,
    pub label: &'static str,
    pub item: ItemCode,
    pub reported: Money,
    pub recomputed: Money,
    pub residual: Money,
}
