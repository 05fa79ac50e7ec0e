//! Atomic ledger types: sectors, item codes, flows, stocks and account nodes.

use std::collections::BTreeMap;
use std::fmt;
use std::num::NonZeroU32;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::LedgerError;
use crate::money::Money;

/// Institutional sector. NPISH units are folded into `HS`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sector {
    /// Non-financial corporations.
    NFS,
    /// Financial corporations.
    FFS,
    /// Households including NPISH.
    HS,
    /// General government.
    GS,
    /// Rest of the world.
    RS,
}

impl Sector {
    pub const ALL: [Sector; 5] = [Sector::NFS, Sector::FFS, Sector::HS, Sector::GS, Sector::RS];
    pub const DOMESTIC: [Sector; 4] = [Sector::NFS, Sector::FFS, Sector::HS, Sector::GS];

    pub fn code(self) -> &'static str {
        match self {
            Sector::NFS => "NFS",
            Sector::FFS => "FFS",
            Sector::HS => "HS",
            Sector::GS => "GS",
            Sector::RS => "RS",
        }
    }

    pub fn is_domestic(self) -> bool {
        self != Sector::RS
    }

    pub fn is_firm(self) -> bool {
        matches!(self, Sector::NFS | Sector::FFS)
    }
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.code())
    }
}

impl FromStr for Sector {
    type Err = LedgerError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "NFS" => Ok(Sector::NFS),
            "FFS" => Ok(Sector::FFS),
            "HS" => Ok(Sector::HS),
            "GS" => Ok(Sector::GS),
            "RS" => Ok(Sector::RS),
            other => Err(LedgerError::UnknownSector(other.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Received,
    Paid,
    Net,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Received => "received",
            Direction::Paid => "paid",
            Direction::Net => "net",
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for Direction {
    type Err = LedgerError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "received" => Ok(Direction::Received),
            "paid" => Ok(Direction::Paid),
            "net" => Ok(Direction::Net),
            other => Err(LedgerError::UnknownDirection(other.to_string())),
        }
    }
}

macro_rules! item_codes {
    ($( $(#[$doc:meta])* $variant:ident => $code:literal ),* $(,)?) => {
        /// SNA transaction, balancing-item and flow-of-funds codes understood by the ledger.
        #[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum ItemCode {
            $( $(#[$doc])* $variant, )*
        }

        impl ItemCode {
            pub const ALL: &'static [ItemCode] = &[$( ItemCode::$variant, )*];

            pub fn code(self) -> &'static str {
                match self {
                    $( ItemCode::$variant => $code, )*
                }
            }
        }

        impl FromStr for ItemCode {
            type Err = LedgerError;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                match s.trim() {
                    $( $code => Ok(ItemCode::$variant), )*
                    "D6" | "D61_D62" => Ok(ItemCode::D61D62),
                    other => Err(LedgerError::UnknownItem(other.to_string())),
                }
            }
        }
    };
}

item_codes! {
    /// Output value net of imports, C + G + I + Z + X - M.
    P1 => "P1",
    /// Intermediate goods: received = sales Z, paid = consumption H.
    P2 => "P2",
    /// Individual final consumption: received = sales, paid = expenditure (C1, C2).
    P31 => "P31",
    /// Collective final consumption: received = sales, paid = expenditure G.
    P32 => "P32",
    /// Gross capital formation: received = sales of investment goods, paid = own investment.
    P5 => "P5",
    /// Exports: received by domestic exporters, paid by the rest of the world.
    P6 => "P6",
    /// Imports: paid by domestic importers, received by the rest of the world.
    P7 => "P7",
    /// Consumption of fixed capital.
    K1 => "K1",
    /// Net acquisition of non-produced non-financial assets.
    K2 => "K2",
    D11 => "D11",
    D12 => "D12",
    D21 => "D21",
    D29 => "D29",
    D31 => "D31",
    D39 => "D39",
    D4 => "D4",
    D5 => "D5",
    D61D62 => "D61+D62",
    D7 => "D7",
    /// Adjustment for the change in pension entitlements.
    D8 => "D8",
    D9 => "D9",
    /// Operating surplus plus mixed income.
    B13N => "B13N",
    /// Balance of primary income.
    B5NT => "B5NT",
    /// Disposable income.
    B6N => "B6N",
    /// Net saving.
    B8N => "B8N",
    /// Net lending (+) / borrowing (-).
    B9 => "B9",
    /// External balance of goods and services (rest of the world).
    B11 => "B11",
    /// Balance of payments on current transactions (rest of the world).
    B12 => "B12",
    /// Net acquisition of financial assets.
    DA => "dA",
    /// Net incurrence of liabilities.
    DPSI => "dPsi",
}

impl ItemCode {
    /// Items that are natively signed and only ever recorded as `net`.
    pub fn is_signed(self) -> bool {
        use ItemCode::*;
        matches!(
            self,
            K2 | D8 | B13N | B5NT | B6N | B8N | B9 | B11 | B12 | DA | DPSI
        )
    }

    /// Reported balancing items, as opposed to component flows.
    pub fn is_balancing(self) -> bool {
        use ItemCode::*;
        matches!(self, B13N | B5NT | B6N | B8N | B9 | B11 | B12)
    }

    /// Whether a sector's account chain consumes this item in this direction.
    pub fn applies_to(self, sector: Sector, direction: Direction) -> bool {
        use Direction::*;
        use ItemCode::*;
        use Sector::*;
        if self.is_signed() {
            if direction != Net {
                return false;
            }
            return match self {
                D8 | B13N | B5NT | B6N | B8N => sector.is_domestic(),
                B11 | B12 => sector == RS,
                _ => true,
            };
        }
        if direction == Net {
            return false;
        }
        match (sector, self, direction) {
            (RS, P7, Received) | (RS, P6, Paid) => true,
            (RS, D11 | D12 | D4 | D61D62 | D7 | D9, _) => true,
            (RS, D21 | D29, Received) | (RS, D31 | D39, Paid) => true,
            (RS, _, _) => false,

            (_, P1 | P31 | P32 | P2, Received) => true,
            (NFS | FFS | HS, P5, Received) => true,
            (NFS | FFS, P6, Received) | (NFS | FFS, P7, Paid) => true,
            (_, P2 | K1 | D11 | D12 | D21 | D29 | D5 | P5, Paid) => true,
            (_, D31 | D39, Received) => true,
            (_, D4 | D61D62 | D7 | D9, _) => true,
            (HS, D11 | D12, Received) | (HS, P31, Paid) => true,
            (GS, D21 | D29 | D5, Received) => true,
            (GS, D31 | D39 | P31 | P32, Paid) => true,
            _ => false,
        }
    }
}

impl fmt::Display for ItemCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.code())
    }
}

impl Serialize for ItemCode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.code())
    }
}

impl<'de> Deserialize<'de> for ItemCode {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// One ledger entry: a money flow of a sector for an item in a direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Flow {
    item: ItemCode,
    sector: Sector,
    direction: Direction,
    value: Money,
}

impl Flow {
    pub fn new(
        item: ItemCode,
        sector: Sector,
        direction: Direction,
        value: Money,
    ) -> Result<Self, LedgerError> {
        if item.is_signed() != (direction == Direction::Net) {
            return Err(LedgerError::InvalidDirection { item, direction });
        }
        if direction != Direction::Net && value.is_negative() {
            return Err(LedgerError::NegativeValue {
                sector,
                item,
                direction,
                value,
            });
        }
        Ok(Flow {
            item,
            sector,
            direction,
            value,
        })
    }

    /// Parses the item code from text so that unknown codes are rejected here.
    pub fn parse(
        item: &str,
        sector: Sector,
        direction: Direction,
        value: Money,
    ) -> Result<Self, LedgerError> {
        Flow::new(item.parse()?, sector, direction, value)
    }

    pub fn item(&self) -> ItemCode {
        self.item
    }

    pub fn sector(&self) -> Sector {
        self.sector
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn value(&self) -> Money {
        self.value
    }

    /// Contribution to the holder's net position: received +, paid -, net as is.
    pub fn signed_value(&self) -> Money {
        match self.direction {
            Direction::Received | Direction::Net => self.value,
            Direction::Paid => -self.value,
        }
    }
}

/// A stock at a point in time, e.g. assets `A`, liabilities `Psi` or net worth `NW`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stock {
    pub label: String,
    pub value: Money,
}

impl Stock {
    pub fn new(label: impl Into<String>, value: Money) -> Self {
        Stock {
            label: label.into(),
            value,
        }
    }

    /// `NW = A - Psi`.
    pub fn net_worth(assets: &Stock, liabilities: &Stock) -> Stock {
        Stock::new("NW", assets.value - liabilities.value)
    }
}

/// Stock-flow accumulation over whole periods: `stock0 + sum(flow * dt)`.
pub fn accumulate<I>(stock0: Money, net_flows: I, dt: NonZeroU32) -> Money
where
    I: IntoIterator<Item = Money>,
{
    let dt = i64::from(dt.get());
    stock0 + net_flows.into_iter().map(|f| f * dt).sum::<Money>()
}

/// A named account: inflows, outflows and a balancing item that is always derived.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AccountNode {
    pub name: String,
    pub inflows: Vec<(String, Money)>,
    pub outflows: Vec<(String, Money)>,
    pub balancing_symbol: String,
}

impl AccountNode {
    pub fn new(name: impl Into<String>, balancing_symbol: impl Into<String>) -> Self {
        AccountNode {
            name: name.into(),
            balancing_symbol: balancing_symbol.into(),
            ..Default::default()
        }
    }

    pub fn inflow(mut self, symbol: impl Into<String>, value: Money) -> Self {
        self.inflows.push((symbol.into(), value));
        self
    }

    pub fn outflow(mut self, symbol: impl Into<String>, value: Money) -> Self {
        self.outflows.push((symbol.into(), value));
        self
    }

    pub fn total_inflow(&self) -> Money {
        self.inflows.iter().map(|(_, v)| *v).sum()
    }

    pub fn total_outflow(&self) -> Money {
        self.outflows.iter().map(|(_, v)| *v).sum()
    }

    pub fn balance(&self) -> Money {
        balance(self)
    }

    /// Copy of the node with its balancing item attached on whichever side
    /// makes the node sum to zero.
    pub fn closed(&self) -> AccountNode {
        let b = self.balance();
        let mut node = self.clone();
        if b.is_negative() {
            node.inflows.push((self.balancing_symbol.clone(), -b));
        } else {
            node.outflows.push((self.balancing_symbol.clone(), b));
        }
        node
    }

    pub fn is_empty(&self) -> bool {
        self.inflows.is_empty() && self.outflows.is_empty()
    }
}

/// Kirchhoff current law at a node: the balancing item is inflows minus outflows.
pub fn balance(node: &AccountNode) -> Money {
    node.total_inflow() - node.total_outflow()
}

/// All flow values of one sector for one year, keyed by item and direction.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SectorLedger {
    sector: Option<Sector>,
    entries: BTreeMap<(ItemCode, Direction), Money>,
}

impl SectorLedger {
    pub fn new(sector: Sector) -> Self {
        SectorLedger {
            sector: Some(sector),
            entries: BTreeMap::new(),
        }
    }

    pub fn sector(&self) -> Option<Sector> {
        self.sector
    }

    /// Adds a flow to the ledger, summing with any existing entry.
    pub fn post(&mut self, flow: Flow) -> Result<(), LedgerError> {
        match self.sector {
            Some(s) if s != flow.sector => {
                return Err(LedgerError::WrongSector {
                    expected: s,
                    found: flow.sector,
                })
            }
            None => self.sector = Some(flow.sector),
            _ => {}
        }
        if !flow.item.applies_to(flow.sector, flow.direction) {
            return Err(LedgerError::NotApplicable {
                sector: flow.sector,
                item: flow.item,
                direction: flow.direction,
            });
        }
        *self.entries.entry((flow.item, flow.direction)).or_default() += flow.value;
        Ok(())
    }

    /// Replaces an entry. Zero is stored, so presence can be tested.
    pub fn set(&mut self, item: ItemCode, direction: Direction, value: Money) -> Result<(), LedgerError> {
        let sector = self.sector.ok_or(LedgerError::UnassignedLedger)?;
        let flow = Flow::new(item, sector, direction, value)?;
        if !item.applies_to(sector, direction) {
            return Err(LedgerError::NotApplicable {
                sector,
                item,
                direction,
            });
        }
        self.entries.insert((item, direction), flow.value);
        Ok(())
    }

    pub fn get(&self, item: ItemCode, direction: Direction) -> Money {
        self.entries
            .get(&(item, direction))
            .copied()
            .unwrap_or_default()
    }

    pub fn contains(&self, item: ItemCode, direction: Direction) -> bool {
        self.entries.contains_key(&(item, direction))
    }

    pub fn received(&self, item: ItemCode) -> Money {
        self.get(item, Direction::Received)
    }

    pub fn paid(&self, item: ItemCode) -> Money {
        self.get(item, Direction::Paid)
    }

    pub fn net(&self, item: ItemCode) -> Money {
        self.get(item, Direction::Net)
    }

    /// Received minus paid for a two-way item.
    pub fn net_received(&self, item: ItemCode) -> Money {
        self.received(item) - self.paid(item)
    }

    pub fn entries(&self) -> impl Iterator<Item = (ItemCode, Direction, Money)> + '_ {
        self.entries.iter().map(|(&(i, d), &v)| (i, d, v))
    }

    pub fn flows(&self) -> Vec<Flow> {
        let sector = self.sector.expect("ledger with entries has a sector");
        self.entries()
            .map(|(item, direction, value)| Flow {
                item,
                sector,
                direction,
                value,
            })
            .collect()
    }

    /// Net position of the component flows: everything received minus
    /// everything paid, signed items included, reported balancing items excluded.
    pub fn net_position(&self) -> Money {
        self.flows()
            .iter()
            .filter(|f| !f.item.is_balancing())
            .map(Flow::signed_value)
            .sum()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}
