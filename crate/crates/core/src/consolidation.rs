//! Consolidation of micro units into sector ledgers.
//!
//! Flows between two units of the same sector cancel when both sides record
//! them against each other. A counterparty that is not among the units being
//! consolidated is treated as external and its flows are kept.

use std::collections::{BTreeMap, BTreeSet};

use crate::accounts::SectorAccounts;
use crate::error::ConsolidationError;
use crate::ledger::{AccountNode, Direction, Flow, ItemCode, Sector, SectorLedger};
use crate::money::Money;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MicroFlow {
    pub flow: Flow,
    /// Id of the unit on the other side, when known.
    pub counterparty: Option<String>,
}

impl MicroFlow {
    pub fn external(flow: Flow) -> Self {
        MicroFlow {
            flow,
            counterparty: None,
        }
    }

    pub fn with(flow: Flow, counterparty: impl Into<String>) -> Self {
        MicroFlow {
            flow,
            counterparty: Some(counterparty.into()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MicroUnit {
    pub id: String,
    pub sector: Sector,
    /// Ids of the original units merged into this one; empty for a plain unit.
    pub members: Vec<String>,
    pub flows: Vec<MicroFlow>,
}

impl MicroUnit {
    pub fn new(id: impl Into<String>, sector: Sector) -> Self {
        MicroUnit {
            id: id.into(),
            sector,
            members: Vec::new(),
            flows: Vec::new(),
        }
    }

    pub fn flow(mut self, item: ItemCode, direction: Direction, value: Money) -> Result<Self, ConsolidationError> {
        let flow = Flow::new(item, self.sector, direction, value)?;
        self.flows.push(MicroFlow::external(flow));
        Ok(self)
    }

    pub fn trade(
        mut self,
        item: ItemCode,
        direction: Direction,
        value: Money,
        counterparty: impl Into<String>,
    ) -> Result<Self, ConsolidationError> {
        let flow = Flow::new(item, self.sector, direction, value)?;
        self.flows.push(MicroFlow::with(flow, counterparty));
        Ok(self)
    }

    /// Ids this unit answers to as a counterparty.
    pub fn aliases(&self) -> impl Iterator<Item = &str> {
        std::iter::once(self.id.as_str()).chain(self.members.iter().map(String::as_str))
    }

    /// Received minus paid over all component flows.
    pub fn net_saving(&self) -> Money {
        self.flows
            .iter()
            .filter(|f| !f.flow.item().is_balancing())
            .map(|f| f.flow.signed_value())
            .sum()
    }
}

/// Cross-unit amounts keyed by (holder, counterparty, item), signed as
/// received minus paid.
type Bilateral = BTreeMap<(usize, usize, ItemCode), Money>;

fn index_aliases(units: &[MicroUnit]) -> Result<BTreeMap<&str, usize>, ConsolidationError> {
    let sector = units.first().ok_or(ConsolidationError::Empty)?.sector;
    let mut index = BTreeMap::new();
    for (i, unit) in units.iter().enumerate() {
        if unit.sector != sector {
            return Err(ConsolidationError::MixedSectors {
                unit: unit.id.clone(),
                expected: sector,
                found: unit.sector,
            });
        }
        for alias in unit.aliases() {
            if index.insert(alias, i).is_some() {
                return Err(ConsolidationError::DuplicateUnit(alias.to_string()));
            }
        }
        for f in &unit.flows {
            if f.flow.sector() != sector {
                return Err(crate::error::LedgerError::WrongSector {
                    expected: sector,
                    found: f.flow.sector(),
                }
                .into());
            }
        }
    }
    Ok(index)
}

/// Splits every unit's flows into those that stay (external) and the
/// intra-group amounts, then checks that the latter pair up.
fn split(units: &[MicroUnit]) -> Result<Vec<Vec<MicroFlow>>, ConsolidationError> {
    let index = index_aliases(units)?;
    let mut kept = vec![Vec::new(); units.len()];
    let mut bilateral = Bilateral::new();
    let mut example: BTreeMap<(usize, usize, ItemCode), (Direction, String)> = BTreeMap::new();
    for (i, unit) in units.iter().enumerate() {
        for f in &unit.flows {
            let target = f
                .counterparty
                .as_deref()
                .and_then(|c| index.get(c).copied())
                .filter(|&j| j != i);
            match target {
                Some(j) => {
                    let key = (i, j, f.flow.item());
                    *bilateral.entry(key).or_default() += f.flow.signed_value();
                    example
                        .entry(key)
                        .or_insert_with(|| (f.flow.direction(), f.counterparty.clone().unwrap()));
                }
                None => kept[i].push(f.clone()),
            }
        }
    }
    for (&(i, j, item), &amount) in &bilateral {
        let mirror = bilateral.get(&(j, i, item)).copied().unwrap_or_default();
        if amount + mirror != Money::ZERO {
            let (direction, counterparty) = example[&(i, j, item)].clone();
            return Err(ConsolidationError::Unpaired {
                unit: units[i].id.clone(),
                counterparty,
                item,
                direction,
                value: amount.abs(),
            });
        }
    }
    Ok(kept)
}

/// Merges units of one sector into a single ledger with mutual flows removed.
pub fn consolidate(units: &[MicroUnit]) -> Result<SectorLedger, ConsolidationError> {
    let kept = split(units)?;
    let mut ledger = SectorLedger::new(units[0].sector);
    for f in kept.into_iter().flatten() {
        ledger.post(f.flow)?;
    }
    Ok(ledger)
}

/// Like [`consolidate`], but the result is again a unit that remembers the ids
/// it absorbed, so it can take part in a further consolidation.
pub fn consolidate_group(id: impl Into<String>, units: &[MicroUnit]) -> Result<MicroUnit, ConsolidationError> {
    let kept = split(units)?;
    let mut members = BTreeSet::new();
    for u in units {
        members.extend(u.aliases().map(str::to_string));
    }
    let mut merged: BTreeMap<(ItemCode, Direction, Option<String>), Money> = BTreeMap::new();
    for f in kept.into_iter().flatten() {
        *merged
            .entry((f.flow.item(), f.flow.direction(), f.counterparty))
            .or_default() += f.flow.value();
    }
    let sector = units[0].sector;
    let mut unit = MicroUnit::new(id, sector);
    unit.members = members.into_iter().collect();
    for ((item, direction, counterparty), value) in merged {
        unit.flows.push(MicroFlow {
            flow: Flow::new(item, sector, direction, value)?,
            counterparty,
        });
    }
    Ok(unit)
}

/// Merges the primary and secondary distribution and the use-of-income
/// accounts into one node. Hand-offs between them disappear; the balance is
/// net saving. The rest of the world already carries its consolidated node.
pub fn consolidate_asua(accounts: &SectorAccounts) -> AccountNode {
    if let Some(asua) = accounts.node("ASUA") {
        return asua.clone();
    }
    let internal = ["BPI", "DI"];
    let mut out = AccountNode::new("ASUA", "S");
    for name in ["APIA", "SDIA", "UDIA"] {
        let Some(node) = accounts.node(name) else {
            continue;
        };
        for (symbol, value) in &node.inflows {
            if value.is_zero() || (name != "APIA" && internal.contains(&symbol.as_str())) {
                continue;
            }
            out.inflows.push((symbol.clone(), *value));
        }
        for (symbol, value) in &node.outflows {
            if !value.is_zero() {
                out.outflows.push((symbol.clone(), *value));
            }
        }
    }
    out
}
