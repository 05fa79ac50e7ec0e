//! Scenario configuration: a plain `key = value` file.
//!
//! ```text
//! horizon = 20
//! driver = 0.02
//! stock.NFS.fixed_capital = 250000
//! shock.2.rate.D5 = 1.1
//! shock.3.share.D11.HS = 0.5
//! ```
//!
//! Rate shocks multiply intake rates of a pool (or of `K1` / `dPsi`),
//! optionally narrowed to a sector and item. Share shocks multiply one
//! allocation share; the shares of every pool must still sum to one.

use std::collections::{BTreeMap, BTreeSet};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use super::calibrate::{parse_ratio, Ratio};
use super::SectorStocks;
use crate::error::SimulationError;
use crate::ledger::{ItemCode, Sector};
use crate::money::Money;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShockTarget {
    Rate {
        group: String,
        sector: Option<Sector>,
        item: Option<ItemCode>,
    },
    Share {
        pool: String,
        sector: Sector,
        item: Option<ItemCode>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shock {
    pub period: u32,
    pub target: ShockTarget,
    pub factor: Ratio,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScenarioConfig {
    pub horizon: u32,
    /// Growth rate of every output composite per period.
    pub driver: Ratio,
    pub stocks: BTreeMap<Sector, SectorStocks>,
    pub shocks: Vec<Shock>,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            horizon: 1,
            driver: Ratio::zero(),
            stocks: BTreeMap::new(),
            shocks: Vec::new(),
        }
    }
}

impl ScenarioConfig {
    pub fn new(horizon: u32, driver: Ratio) -> Self {
        ScenarioConfig {
            horizon,
            driver,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<(), SimulationError> {
        if self.horizon == 0 {
            return Err(SimulationError::Config("horizon must be at least 1".into()));
        }
        if self.driver <= -Ratio::one() {
            return Err(SimulationError::Config("driver must be greater than -1".into()));
        }
        for s in &self.shocks {
            if s.period == 0 || s.period > self.horizon {
                return Err(SimulationError::Config(format!(
                    "shock period {} is outside 1..={}",
                    s.period, self.horizon
                )));
            }
            if s.factor.is_negative() {
                return Err(SimulationError::Config(format!(
                    "shock factor {} must be non-negative",
                    s.factor
                )));
            }
        }
        Ok(())
    }

    pub fn shocks_in(&self, period: u32) -> impl Iterator<Item = &Shock> {
        self.shocks.iter().filter(move |s| s.period == period)
    }
}

fn syntax(line: usize, message: impl Into<String>) -> SimulationError {
    SimulationError::ConfigSyntax {
        line,
        message: message.into(),
    }
}

fn parse_sector(line: usize, s: &str) -> Result<Sector, SimulationError> {
    s.parse().map_err(|e| syntax(line, format!("{e}")))
}

fn parse_item(line: usize, s: &str) -> Result<ItemCode, SimulationError> {
    s.parse().map_err(|e| syntax(line, format!("{e}")))
}

impl FromStr for ScenarioConfig {
    type Err = SimulationError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut cfg = ScenarioConfig::default();
        let mut seen = BTreeSet::new();
        let mut has_horizon = false;
        for (i, raw) in text.lines().enumerate() {
            let n = i + 1;
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| syntax(n, "expected `key = value`"))?;
            let (key, value) = (key.trim(), value.trim());
            if !seen.insert(key.to_string()) {
                return Err(syntax(n, format!("duplicate key `{key}`")));
            }
            let number = || parse_ratio(value).ok_or_else(|| syntax(n, format!("`{value}` is not a decimal number")));
            let parts: Vec<&str> = key.split('.').collect();
            match parts.as_slice() {
                ["horizon"] => {
                    cfg.horizon = value
                        .parse()
                        .map_err(|_| syntax(n, format!("`{value}` is not a whole number")))?;
                    has_horizon = true;
                }
                ["driver"] => cfg.driver = number()?,
                ["stock", sector, field] => {
                    let sector = parse_sector(n, sector)?;
                    let amount: Money = value.parse().map_err(|e| syntax(n, format!("{e}")))?;
                    let stocks = cfg.stocks.entry(sector).or_default();
                    let slot = match *field {
                        "fixed_capital" => &mut stocks.fixed_capital,
                        "non_produced" => &mut stocks.non_produced,
                        "financial_assets" => &mut stocks.financial_assets,
                        "liabilities" => &mut stocks.liabilities,
                        other => return Err(syntax(n, format!("unknown stock `{other}`"))),
                    };
                    *slot = amount;
                }
                ["shock", period, kind, rest @ ..] => {
                    let period: u32 = period
                        .parse()
                        .map_err(|_| syntax(n, format!("`{period}` is not a period number")))?;
                    let target = match (*kind, rest) {
                        ("rate", [group, tail @ ..]) if tail.len() <= 2 => ShockTarget::Rate {
                            group: group.to_string(),
                            sector: tail.first().map(|s| parse_sector(n, s)).transpose()?,
                            item: tail.get(1).map(|s| parse_item(n, s)).transpose()?,
                        },
                        ("share", [pool, sector, tail @ ..]) if tail.len() <= 1 => ShockTarget::Share {
                            pool: pool.to_string(),
                            sector: parse_sector(n, sector)?,
                            item: tail.first().map(|s| parse_item(n, s)).transpose()?,
                        },
                        _ => return Err(syntax(n, format!("malformed shock key `{key}`"))),
                    };
                    cfg.shocks.push(Shock {
                        period,
                        target,
                        factor: number()?,
                    });
                }
                _ => return Err(syntax(n, format!("unknown key `{key}`"))),
            }
        }
        if !has_horizon {
            return Err(SimulationError::Config("missing `horizon`".into()));
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn parses_full_config() {
        let cfg: ScenarioConfig = "
# scenario
horizon = 20
driver = 0.02
stock.NFS.fixed_capital = 250000
stock.HS.liabilities = 1.5
shock.2.rate.D5 = 1.1
shock.3.share.D11.HS = 0.5
shock.3.share.D11.RS.D11 = 2
"
        .parse()
        .unwrap();
        assert_eq!(cfg.horizon, 20);
        assert_eq!(cfg.driver, Ratio::new(BigInt::from(1), BigInt::from(50)));
        assert_eq!(cfg.stocks[&Sector::NFS].fixed_capital, Money::from_millions(250000));
        assert_eq!(cfg.stocks[&Sector::HS].liabilities, Money::from_cents(150));
        assert_eq!(cfg.shocks.len(), 3);
        assert_eq!(
            cfg.shocks[0].target,
            ShockTarget::Rate {
                group: "D5".into(),
                sector: None,
                item: None
            }
        );
        assert_eq!(cfg.shocks_in(3).count(), 2);
    }

    #[test]
    fn rejects_bad_input() {
        let cases = [
            ("horizon = 0", "at least 1"),
            ("driver = 0.1", "missing"),
            ("horizon = 2\ndriver = -1", "greater than -1"),
            ("horizon = 2\nhorizon = 3", "duplicate"),
            ("horizon = 2\nfoo = 1", "unknown key"),
            ("horizon = 2\nstock.XX.liabilities = 1", "unknown sector"),
            ("horizon = 2\nstock.HS.cash = 1", "unknown stock"),
            ("horizon = 2\nshock.3.rate.D5 = 1", "outside"),
            ("horizon = 2\nshock.1.rate.D5 = -1", "non-negative"),
            ("horizon = 2\nshock.1.bump.D5 = 1", "malformed"),
            ("horizon = 2\ndriver = 2%", "not a decimal"),
            ("horizon", "key = value"),
        ];
        for (text, needle) in cases {
            let err = text.parse::<ScenarioConfig>().unwrap_err().to_string();
            assert!(err.contains(needle), "{text}: {err}");
        }
    }
}
