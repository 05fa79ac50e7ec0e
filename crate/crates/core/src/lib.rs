//! Stock-flow consistent national accounts.
//!
//! Sector ledgers hold exact fixed-point flows. Account chains turn them into
//! balancing items, payment systems and economy-wide identities check that no
//! money appears or vanishes, and a pool-and-allocate simulator carries the
//! system forward in time.

pub mod accounts;
pub mod consolidation;
pub mod economy;
pub mod error;
pub mod identities;
pub mod ingest;
pub mod ledger;
pub mod markets;
pub mod matrix;
pub mod money;
pub mod report;
pub mod simulator;

pub use economy::{EconomyYear, Mode, Provenance};
pub use error::*;
pub use ledger::{AccountNode, Direction, Flow, ItemCode, Sector, SectorLedger, Stock};
pub use money::Money;
