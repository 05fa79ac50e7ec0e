use thiserror::Error;

use crate::ledger::{Direction, ItemCode, Sector};
use crate::markets::MarketKind;
use crate::money::{Money, ParseMoneyError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LedgerError {
    #[error("unknown item code `{0}`")]
    UnknownItem(String),
    #[error("unknown sector `{0}`")]
    UnknownSector(String),
    #[error("unknown direction `{0}` (expected received, paid or net)")]
    UnknownDirection(String),
    #[error("item {item} cannot be recorded as `{direction}`")]
    InvalidDirection { item: ItemCode, direction: Direction },
    #[error("item {item} {direction} does not apply to sector {sector}")]
    NotApplicable {
        sector: Sector,
        item: ItemCode,
        direction: Direction,
    },
    #[error("{sector} {item} {direction} must be non-negative, got {value}")]
    NegativeValue {
        sector: Sector,
        item: ItemCode,
        direction: Direction,
        value: Money,
    },
    #[error("flow for {found} posted to the {expected} ledger")]
    WrongSector { expected: Sector, found: Sector },
    #[error("ledger has no sector assigned")]
    UnassignedLedger,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AccountsError {
    #[error("input `{field}` must be non-negative, got {value}")]
    NegativeInput { field: &'static str, value: Money },
    #[error("output composite {composite} disagrees with its components ({from_components})")]
    CompositeMismatch {
        composite: Money,
        from_components: Money,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConsolidationError {
    #[error("unit `{unit}` belongs to {found}, expected {expected}")]
    MixedSectors {
        unit: String,
        expected: Sector,
        found: Sector,
    },
    #[error("flow {item} {direction} {value} from `{unit}` to `{counterparty}` has no matching entry at `{counterparty}`")]
    Unpaired {
        unit: String,
        counterparty: String,
        item: ItemCode,
        direction: Direction,
        value: Money,
    },
    #[error("duplicate unit id `{0}`")]
    DuplicateUnit(String),
    #[error("no units to consolidate")]
    Empty,
    #[error(transparent)]
    Ledger(#[from] LedgerError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MarketError {
    #[error("{kind} does not clear: residual {residual}")]
    Conservation { kind: MarketKind, residual: Money },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IdentityError {
    #[error("average price must be positive, got {0}")]
    NonPositivePrice(f64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("row \"{row}\" does not balance: {detail}")]
    RowBalance { row: String, detail: String },
    #[error("sector column {sector} cannot balance: {detail}")]
    ColumnBalance { sector: String, detail: String },
    #[error("row \"{row}\" is not a single payer-to-receiver transaction")]
    UnsupportedShape { row: String },
}

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("row {row}: field `{field}`: {source}")]
    Field {
        row: u64,
        field: &'static str,
        #[source]
        source: LedgerError,
    },
    #[error("row {row}: field `value`: {source}")]
    Value {
        row: u64,
        #[source]
        source: ParseMoneyError,
    },
    #[error("row {row}: {source}")]
    Flow {
        row: u64,
        #[source]
        source: LedgerError,
    },
    #[error("row {row}: duplicate key ({year}, {sector}, {item}, {direction})")]
    Duplicate {
        row: u64,
        year: i32,
        sector: Sector,
        item: ItemCode,
        direction: Direction,
    },
    #[error("row {row}: {message}")]
    Schema { row: u64, message: String },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimulationError {
    #[error("history is empty")]
    EmptyHistory,
    #[error("configuration line {line}: {message}")]
    ConfigSyntax { line: usize, message: String },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("shares of {pool} sum to {sum} in period {period}, expected 1")]
    SharesNotNormalized {
        pool: String,
        period: u32,
        sum: String,
    },
    #[error(transparent)]
    Accounts(#[from] AccountsError),
    #[error(transparent)]
    Ledger(#[from] LedgerError),
}
