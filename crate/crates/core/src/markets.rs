//! Inter-sector payment systems ("markets") and their conservation checks.
//!
//! Each system collects what sectors pay for one transaction category and
//! delivers what sectors receive. Zero-sum systems must clear exactly. Taxes
//! on products (D21) and subsidies on products (D31) are open: only one side
//! is attributed to sectors, and the other side sits in an unattributed bucket.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::economy::{EconomyYear, Mode};
use crate::error::{AccountsError, MarketError};
use crate::ledger::{Direction, ItemCode, Sector};
use crate::money::Money;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MarketKind {
    /// Wages and salaries.
    D11,
    /// Employers' social contributions.
    D12,
    /// Current taxes on income, wealth, etc.
    D5,
    /// Property income.
    D4,
    /// Social contributions and benefits other than transfers in kind.
    D61D62,
    /// Other subsidies on production.
    D39,
    /// Subsidies on products.
    D31,
    /// Other taxes on production.
    D29,
    /// Taxes on products.
    D21,
    /// Other current transfers.
    D7,
    /// Capital transfers.
    D9,
    /// Non-produced non-financial assets.
    K2,
    /// Net lending / borrowing.
    B9,
}

impl MarketKind {
    pub const ALL: [MarketKind; 13] = [
        MarketKind::D11,
        MarketKind::D12,
        MarketKind::D5,
        MarketKind::D4,
        MarketKind::D61D62,
        MarketKind::D39,
        MarketKind::D31,
        MarketKind::D29,
        MarketKind::D21,
        MarketKind::D7,
        MarketKind::D9,
        MarketKind::K2,
        MarketKind::B9,
    ];

    pub fn is_zero_sum(self) -> bool {
        !matches!(self, MarketKind::D21 | MarketKind::D31)
    }

    /// Signed kinds carry one net value per sector instead of two gross sides.
    pub fn is_net(self) -> bool {
        matches!(self, MarketKind::K2 | MarketKind::B9)
    }

    pub fn item(self) -> ItemCode {
        match self {
            MarketKind::D11 => ItemCode::D11,
            MarketKind::D12 => ItemCode::D12,
            MarketKind::D5 => ItemCode::D5,
            MarketKind::D4 => ItemCode::D4,
            MarketKind::D61D62 => ItemCode::D61D62,
            MarketKind::D39 => ItemCode::D39,
            MarketKind::D31 => ItemCode::D31,
            MarketKind::D29 => ItemCode::D29,
            MarketKind::D21 => ItemCode::D21,
            MarketKind::D7 => ItemCode::D7,
            MarketKind::D9 => ItemCode::D9,
            MarketKind::K2 => ItemCode::K2,
            MarketKind::B9 => ItemCode::B9,
        }
    }

    pub fn code(self) -> &'static str {
        self.item().code()
    }

    pub fn description(self) -> &'static str {
        match self {
            MarketKind::D11 => "wages and salaries",
            MarketKind::D12 => "employers' social contributions",
            MarketKind::D5 => "current taxes on income and wealth",
            MarketKind::D4 => "property income",
            MarketKind::D61D62 => "social contributions and benefits",
            MarketKind::D39 => "other subsidies on production",
            MarketKind::D31 => "subsidies on products",
            MarketKind::D29 => "other taxes on production",
            MarketKind::D21 => "taxes on products",
            MarketKind::D7 => "other current transfers",
            MarketKind::D9 => "capital transfers",
            MarketKind::K2 => "non-produced non-financial assets",
            MarketKind::B9 => "net lending / borrowing",
        }
    }
}

impl fmt::Display for MarketKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.code())
    }
}

impl std::str::FromStr for MarketKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let item: ItemCode = s.parse().map_err(|e| format!("{e}"))?;
        MarketKind::ALL
            .into_iter()
            .find(|k| k.item() == item)
            .ok_or_else(|| format!("`{s}` is not a market system"))
    }
}

/// Payments into and receipts out of one payment system for one year.
impl Serialize for MarketKind {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.code())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MarketSystem {
    pub kind: MarketKind,
    pub payments: BTreeMap<Sector, Money>,
    pub receipts: BTreeMap<Sector, Money>,
    /// D21: taxes collected from sales without an attributed payer.
    pub unattributed_payments: Money,
    /// D31: subsidies paid without an attributed recipient.
    pub unattributed_receipts: Money,
}

impl MarketSystem {
    pub fn new(kind: MarketKind) -> Self {
        MarketSystem {
            kind,
            payments: Sector::ALL.iter().map(|&s| (s, Money::ZERO)).collect(),
            receipts: Sector::ALL.iter().map(|&s| (s, Money::ZERO)).collect(),
            unattributed_payments: Money::ZERO,
            unattributed_receipts: Money::ZERO,
        }
    }

    /// Builds the system from the sector ledgers. For B9 the net lending of
    /// each sector is taken under `mode`.
    pub fn from_year(kind: MarketKind, year: &EconomyYear, mode: Mode) -> Result<Self, AccountsError> {
        let mut sys = MarketSystem::new(kind);
        for sector in Sector::ALL {
            let (paid, received) = match kind {
                MarketKind::B9 => (year.balances(sector, mode)?.net_lending, Money::ZERO),
                MarketKind::K2 => (year.get(sector, ItemCode::K2, Direction::Net), Money::ZERO),
                _ => (
                    year.get(sector, kind.item(), Direction::Paid),
                    year.get(sector, kind.item(), Direction::Received),
                ),
            };
            sys.payments.insert(sector, paid);
            sys.receipts.insert(sector, received);
        }
        match kind {
            MarketKind::D21 => {
                sys.unattributed_payments = sys.total_receipts() - sys.total_payments();
            }
            MarketKind::D31 => {
                sys.unattributed_receipts = sys.total_payments() - sys.total_receipts();
            }
            _ => {}
        }
        Ok(sys)
    }

    pub fn total_payments(&self) -> Money {
        self.payments.values().sum()
    }

    pub fn total_receipts(&self) -> Money {
        self.receipts.values().sum()
    }

    /// Attributed payments minus attributed receipts.
    pub fn residual(&self) -> Money {
        self.total_payments() - self.total_receipts()
    }

    /// Totals including the unattributed buckets always match.
    pub fn is_closed_with_unattributed(&self) -> bool {
        self.total_payments() + self.unattributed_payments
            == self.total_receipts() + self.unattributed_receipts
    }

    pub fn entries(&self) -> Vec<SectorEntry> {
        Sector::ALL
            .iter()
            .map(|s| SectorEntry {
                sector: *s,
                paid: self.payments[s],
                received: self.receipts[s],
            })
            .filter(|e| !e.paid.is_zero() || !e.received.is_zero())
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SectorEntry {
    pub sector: Sector,
    pub paid: Money,
    pub received: Money,
}

/// Residual of a system. Zero-sum kinds fail unless they clear exactly; open
/// kinds return their attributed one-sided total (negative for D21 receipts,
/// positive for D31 payments).
pub fn clear(system: &MarketSystem) -> Result<Money, MarketError> {
    clear_within(system, Money::ZERO)
}

pub fn clear_within(system: &MarketSystem, tolerance: Money) -> Result<Money, MarketError> {
    let residual = system.residual();
    if system.kind.is_zero_sum() && residual.abs() > tolerance {
        return Err(MarketError::Conservation {
            kind: system.kind,
            residual,
        });
    }
    Ok(residual)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: MarketKind,
    pub residual: Money,
    pub entries: Vec<SectorEntry>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ({}) does not clear: residual {}",
            self.kind,
            self.kind.description(),
            self.residual
        )?;
        for e in &self.entries {
            write!(f, "; {} paid {} received {}", e.sector, e.paid, e.received)?;
        }
        Ok(())
    }
}

pub fn systems(year: &EconomyYear, mode: Mode) -> Result<Vec<MarketSystem>, AccountsError> {
    MarketKind::ALL
        .iter()
        .map(|&k| MarketSystem::from_year(k, year, mode))
        .collect()
}

/// Checks every zero-sum system. B9 is allowed `tolerance` (used when net
/// lending is recomputed); all other systems must clear exactly.
pub fn check_all(year: &EconomyYear, mode: Mode, tolerance: Money) -> Result<Vec<Violation>, AccountsError> {
    let mut violations = Vec::new();
    for sys in systems(year, mode)? {
        let tol = if sys.kind == MarketKind::B9 { tolerance } else { Money::ZERO };
        if let Err(MarketError::Conservation { kind, residual }) = clear_within(&sys, tol) {
            violations.push(Violation {
                kind,
                residual,
                entries: sys.entries(),
            });
        }
    }
    Ok(violations)
}
