//! Pool-and-allocate forward simulation.
//!
//! Each period every output composite grows by the driver. Every pool collects
//! `rate * base` from its intake lines and pays the whole total out by its
//! allocation shares, rounding by largest remainder so no cent is created or
//! lost. The chains are then evaluated and stocks accumulate the results.

mod calibrate;
mod config;

use std::collections::BTreeMap;
use std::io::Write;
use std::num::NonZeroU32;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

pub use calibrate::{
    calibrate, fmt_ratio, parse_ratio, AllocationRule, Base, Calibration, IntakeLine, Pool, PoolId,
    Ratio, Slot, GROSS_POOLS,
};
pub use config::{ScenarioConfig, Shock, ShockTarget};

use calibrate::{ratio, to_money};

use crate::economy::{EconomyYear, Mode};
use crate::error::{IngestError, SimulationError};
use crate::identities::{gdp_expenditure, gdp_income, gdp_production, gdp_value_added, GdpBreakdown, NationalIncome};
use crate::ledger::{accumulate, Direction, Flow, ItemCode, Sector};
use crate::markets::{MarketKind, MarketSystem};
use crate::money::Money;

/// Balance-sheet positions of one sector.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectorStocks {
    pub fixed_capital: Money,
    pub non_produced: Money,
    pub financial_assets: Money,
    pub liabilities: Money,
}

impl SectorStocks {
    pub fn assets(&self) -> Money {
        self.fixed_capital + self.non_produced + self.financial_assets
    }

    pub fn net_worth(&self) -> Money {
        self.assets() - self.liabilities
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimulationState {
    pub period: u32,
    pub year: EconomyYear,
    pub composites: BTreeMap<Sector, Money>,
    pub stocks: BTreeMap<Sector, SectorStocks>,
}

impl SimulationState {
    /// Period 0: the last observed year with opening stocks.
    pub fn initial(year: EconomyYear, stocks: &BTreeMap<Sector, SectorStocks>) -> Result<Self, SimulationError> {
        let composites = Sector::DOMESTIC
            .iter()
            .map(|&s| year.output_composite(s).map(|c| (s, c)))
            .collect::<Result<_, _>>()?;
        Ok(SimulationState {
            period: 0,
            year,
            composites,
            stocks: Sector::ALL
                .iter()
                .map(|s| (*s, stocks.get(s).copied().unwrap_or_default()))
                .collect(),
        })
    }
}

/// Splits `total` by `shares` (which sum to one) exactly: floors first, then
/// the leftover cents go to the largest remainders, earlier slots first on ties.
pub fn allocate(total: Money, shares: &[(Slot, Ratio)]) -> Vec<Money> {
    let t = Ratio::from_integer(BigInt::from(total.cents()));
    let mut floors = Vec::with_capacity(shares.len());
    let mut remainders = Vec::with_capacity(shares.len());
    for (i, (_, share)) in shares.iter().enumerate() {
        let exact = share * &t;
        let floor = exact.floor();
        remainders.push((exact - &floor, i));
        floors.push(floor.to_integer());
    }
    let assigned: BigInt = floors.iter().sum();
    let mut left = (BigInt::from(total.cents()) - assigned).to_i64().unwrap_or(0);
    remainders.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    for (_, i) in remainders {
        if left <= 0 {
            break;
        }
        floors[i] += 1;
        left -= 1;
    }
    floors
        .into_iter()
        .map(|c| Money::from_cents(c.to_i64().expect("allocation fits the total")))
        .collect()
}

fn resolve_group(group: &str) -> Result<Option<PoolId>, SimulationError> {
    if group == "goods" {
        return Ok(Some(PoolId::Goods));
    }
    match group.parse::<ItemCode>() {
        Ok(ItemCode::K1 | ItemCode::DPSI) => Ok(None),
        Ok(item) => Ok(Some(PoolId::Market(item))),
        Err(_) => Err(SimulationError::Config(format!("unknown pool `{group}`"))),
    }
}

/// The calibration with the shocks of `period` applied.
pub fn shocked(cal: &Calibration, cfg: &ScenarioConfig, period: u32) -> Result<Calibration, SimulationError> {
    let mut cal = cal.clone();
    let mut touched = Vec::new();
    for shock in cfg.shocks_in(period) {
        let mut hits = 0;
        match &shock.target {
            ShockTarget::Rate { group, sector, item } => {
                let matches = |l: &IntakeLine| {
                    sector.is_none_or(|s| l.slot.sector == s) && item.is_none_or(|i| l.slot.item == i)
                };
                let lines: Vec<&mut IntakeLine> = match resolve_group(group)? {
                    Some(id) => cal
                        .pool_mut(id)
                        .ok_or_else(|| SimulationError::Config(format!("no pool `{group}`")))?
                        .intake
                        .iter_mut()
                        .collect(),
                    None => {
                        let code: ItemCode = group.parse()?;
                        cal.lines.iter_mut().filter(|l| l.slot.item == code).collect()
                    }
                };
                for line in lines.into_iter().filter(|l| matches(l)) {
                    line.rate *= shock.factor.clone();
                    hits += 1;
                }
            }
            ShockTarget::Share { pool, sector, item } => {
                let id = resolve_group(pool)?
                    .ok_or_else(|| SimulationError::Config(format!("`{pool}` has no shares")))?;
                let p = cal
                    .pool_mut(id)
                    .ok_or_else(|| SimulationError::Config(format!("no pool `{pool}`")))?;
                for (slot, share) in &mut p.rule.shares {
                    if slot.sector == *sector && item.is_none_or(|i| slot.item == i) {
                        *share *= shock.factor.clone();
                        hits += 1;
                    }
                }
                touched.push(id);
            }
        }
        if hits == 0 {
            return Err(SimulationError::Config(format!(
                "shock {:?} in period {period} matches nothing",
                shock.target
            )));
        }
    }
    for id in touched {
        let rule = &cal.pool(id).expect("pool exists").rule;
        if !rule.is_normalized() {
            return Err(SimulationError::SharesNotNormalized {
                pool: id.to_string(),
                period,
                sum: fmt_ratio(&rule.sum()),
            });
        }
    }
    Ok(cal)
}

fn post(year: &mut EconomyYear, slot: Slot, value: Money) -> Result<(), SimulationError> {
    year.post(Flow::new(slot.item, slot.sector, slot.direction, value)?)?;
    Ok(())
}

fn signed(slot: Slot, amount: Money, sign: i64) -> Money {
    if slot.direction == Direction::Net {
        amount * sign
    } else {
        amount
    }
}

/// Advances one period.
pub fn step(state: &SimulationState, cal: &Calibration, cfg: &ScenarioConfig) -> Result<SimulationState, SimulationError> {
    let period = state.period + 1;
    let cal = shocked(cal, cfg, period)?;
    let growth = Ratio::one() + cfg.driver.clone();
    let composites: BTreeMap<Sector, Money> = state
        .composites
        .iter()
        .map(|(&s, &c)| to_money(&(ratio(c) * &growth)).map(|m| (s, m)))
        .collect::<Result<_, _>>()?;
    let total: Money = composites.values().copied().sum();
    let amount = |line: &IntakeLine| {
        let base = match line.base {
            Base::Own(s) => composites[&s],
            Base::Total => total,
        };
        to_money(&(&line.rate * ratio(base)))
    };

    let mut year = EconomyYear::new(cal.base_year + period as i32);
    for pool in &cal.pools {
        let mut pooled = Money::ZERO;
        for line in &pool.intake {
            let a = amount(line)?;
            pooled += a;
            post(&mut year, line.slot, signed(line.slot, a, pool.net_sign))?;
        }
        let paid_out = allocate(pooled, &pool.rule.shares);
        for ((slot, _), a) in pool.rule.shares.iter().zip(paid_out) {
            post(&mut year, *slot, signed(*slot, a, -pool.net_sign))?;
        }
    }
    for line in &cal.lines {
        post(&mut year, line.slot, amount(line)?)?;
    }

    let balances = year.all_balances(Mode::Recompute)?;
    let one = NonZeroU32::new(1).unwrap();
    let stocks = state
        .stocks
        .iter()
        .map(|(&s, prev)| {
            let l = year.ledger(s);
            let next = SectorStocks {
                fixed_capital: accumulate(prev.fixed_capital, [l.paid(ItemCode::P5) - l.paid(ItemCode::K1)], one),
                non_produced: accumulate(prev.non_produced, [l.net(ItemCode::K2)], one),
                financial_assets: accumulate(prev.financial_assets, [balances[&s].financial_assets_change], one),
                liabilities: accumulate(prev.liabilities, [l.net(ItemCode::DPSI)], one),
            };
            (s, next)
        })
        .collect();
    Ok(SimulationState {
        period,
        year,
        composites,
        stocks,
    })
}

/// Runs `cfg.horizon` periods. Every period's shocks are checked before the
/// first step, so a bad configuration produces no output at all.
pub fn run(initial: &SimulationState, cal: &Calibration, cfg: &ScenarioConfig) -> Result<Vec<SimulationState>, SimulationError> {
    cfg.validate()?;
    for p in 1..=cfg.horizon {
        shocked(cal, cfg, initial.period + p)?;
    }
    let mut out: Vec<SimulationState> = Vec::with_capacity(cfg.horizon as usize);
    for _ in 0..cfg.horizon {
        let next = step(out.last().unwrap_or(initial), cal, cfg)?;
        out.push(next);
    }
    Ok(out)
}

const DOMESTIC_ITEMS: [&str; 9] = ["output", "GVA", "NVA", "O", "BPI", "DI", "S", "Y", "dA"];
const ROW_ITEMS: [&str; 4] = ["EB", "BP", "Y", "dA"];

/// Names of every emitted quantity, in output order.
pub fn quantity_names() -> Vec<String> {
    let mut names = Vec::new();
    for s in Sector::DOMESTIC {
        names.extend(DOMESTIC_ITEMS.iter().map(|q| format!("{s}.{q}")));
    }
    names.extend(ROW_ITEMS.iter().map(|q| format!("RS.{q}")));
    for k in MarketKind::ALL {
        names.push(format!("market.{k}.total"));
        names.push(format!("market.{k}.residual"));
    }
    for q in ["expenditure", "income", "production", "value_added"] {
        names.push(format!("GDP.{q}"));
    }
    names.push("NDI.lhs".into());
    names.push("NDI.rhs".into());
    for s in Sector::ALL {
        for q in ["fixed_capital", "non_produced", "financial_assets", "liabilities", "net_worth"] {
            names.push(format!("{s}.{q}"));
        }
    }
    names
}

/// Every named quantity of a state, in the order of [`quantity_names`].
pub fn quantities(state: &SimulationState) -> Result<Vec<(String, Money)>, SimulationError> {
    let year = &state.year;
    let balances = year.all_balances(Mode::Recompute)?;
    let mut values = Vec::new();
    for s in Sector::DOMESTIC {
        let r = &balances[&s];
        let composite = year.output_composite(s)?;
        values.extend([
            composite,
            r.gva,
            r.nva,
            r.operating_surplus,
            r.primary_income,
            r.disposable_income,
            r.net_saving,
            r.net_lending,
            r.financial_assets_change,
        ]);
    }
    let rs = &balances[&Sector::RS];
    values.extend([
        rs.external_balance(),
        rs.balance_of_payments(),
        rs.net_lending,
        rs.financial_assets_change,
    ]);
    for k in MarketKind::ALL {
        let sys = MarketSystem::from_year(k, year, Mode::Recompute)?;
        let total = if k.is_net() {
            sys.payments.values().map(|v| v.positive_part()).sum()
        } else if k == MarketKind::D31 {
            sys.total_payments()
        } else {
            sys.total_receipts()
        };
        let residual = if k.is_zero_sum() { sys.residual() } else { Money::ZERO };
        values.extend([total, residual]);
    }
    let b = GdpBreakdown::from_year(year, Mode::Recompute)?;
    values.extend([gdp_expenditure(&b), gdp_income(&b), gdp_production(&b), gdp_value_added(&b)]);
    let n = NationalIncome::from_year(year, Mode::Recompute)?;
    values.extend([n.lhs(), n.rhs()]);
    for s in Sector::ALL {
        let st = &state.stocks[&s];
        values.extend([
            st.fixed_capital,
            st.non_produced,
            st.financial_assets,
            st.liabilities,
            st.net_worth(),
        ]);
    }
    Ok(quantity_names().into_iter().zip(values).collect())
}

/// Writes `period,quantity,value` rows for every state.
pub fn write_csv<W: Write>(states: &[SimulationState], out: W) -> Result<(), IngestError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["period", "quantity", "value"])?;
    for state in states {
        let qs = quantities(state).map_err(|e| IngestError::Schema {
            row: u64::from(state.period),
            message: e.to_string(),
        })?;
        for (name, value) in qs {
            w.write_record([state.period.to_string(), name, value.to_string()])?;
        }
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identities::identity_checks;
    use crate::ingest::{fixture_2011, Dataset};
    use crate::markets::check_all;
    use std::str::FromStr;

    fn setup() -> (Calibration, SimulationState) {
        let f = fixture_2011();
        let cal = calibrate(&Dataset::single(f.clone())).unwrap();
        let state = SimulationState::initial(f, &BTreeMap::new()).unwrap();
        (cal, state)
    }

    fn cfg(text: &str) -> ScenarioConfig {
        ScenarioConfig::from_str(text).unwrap()
    }

    fn slot(i: usize) -> Slot {
        Slot::new(Sector::ALL[i % 5], ItemCode::D7, Direction::Received)
    }

    #[test]
    fn allocation_is_exact() {
        let third = Ratio::new(BigInt::from(1), BigInt::from(3));
        let shares = vec![(slot(0), third.clone()), (slot(1), third.clone()), (slot(2), third)];
        let parts = allocate(Money::from_cents(100), &shares);
        assert_eq!(parts, [34, 33, 33].map(Money::from_cents));
        let parts = allocate(Money::from_cents(-100), &shares);
        assert_eq!(parts.iter().copied().sum::<Money>(), Money::from_cents(-100));
        assert!(allocate(Money::ZERO, &shares).iter().all(|m| m.is_zero()));
    }

    #[test]
    fn zero_driver_reproduces_the_fixture() {
        let (cal, state) = setup();
        let next = step(&state, &cal, &ScenarioConfig::default()).unwrap();
        let f = fixture_2011();
        for flow in next.year.flows() {
            assert_eq!(
                flow.value(),
                f.get(flow.sector(), flow.item(), flow.direction()),
                "{} {} {}",
                flow.sector(),
                flow.item(),
                flow.direction()
            );
        }
        for s in Sector::ALL {
            assert_eq!(
                next.year.balances(s, Mode::Recompute).unwrap(),
                f.balances(s, Mode::Reported).unwrap(),
                "{s}"
            );
        }
    }

    #[test]
    fn driver_scales_every_flow() {
        let (cal, state) = setup();
        let next = step(&state, &cal, &cfg("horizon = 1\ndriver = 0.02")).unwrap();
        let f = fixture_2011();
        for flow in next.year.flows() {
            let base = f.get(flow.sector(), flow.item(), flow.direction());
            assert_eq!(flow.value(), Money::from_cents(base.cents() * 102 / 100), "{flow:?}");
        }
    }

    #[test]
    fn run_is_stationary_and_conserving() {
        let (cal, state) = setup();
        let states = run(&state, &cal, &cfg("horizon = 3")).unwrap();
        assert_eq!(states.len(), 3);
        for s in &states {
            assert_eq!(s.year.flows(), states[0].year.flows());
            assert!(check_all(&s.year, Mode::Recompute, Money::ZERO).unwrap().is_empty());
            assert!(identity_checks(&s.year, Mode::Recompute).unwrap().iter().all(|c| c.residual.is_zero()));
        }
        assert_eq!(states[0].stocks[&Sector::NFS].fixed_capital, Money::from_millions(25016 - 21651));
        assert_eq!(
            states[2].stocks[&Sector::HS].financial_assets,
            Money::from_millions(-4219 * 3)
        );
    }

    #[test]
    fn tax_shock_moves_saving_by_the_reallocated_amount() {
        let (cal, state) = setup();
        let base = run(&state, &cal, &cfg("horizon = 2")).unwrap();
        let shocked_run = run(&state, &cal, &cfg("horizon = 2\nshock.2.rate.D5 = 1.1")).unwrap();
        assert_eq!(base[0].year, shocked_run[0].year);
        let (b, s) = (&base[1].year, &shocked_run[1].year);
        let saving = |y: &EconomyYear, sec| y.balances(sec, Mode::Recompute).unwrap().net_saving;
        let extra_paid = |sec| s.get(sec, ItemCode::D5, Direction::Paid) - b.get(sec, ItemCode::D5, Direction::Paid);
        let pool_rise = s.total(ItemCode::D5, Direction::Received) - b.total(ItemCode::D5, Direction::Received);
        assert!(pool_rise > Money::ZERO);
        assert_eq!(saving(s, Sector::GS) - saving(b, Sector::GS), pool_rise - extra_paid(Sector::GS));
        for sec in [Sector::NFS, Sector::FFS, Sector::HS] {
            assert_eq!(saving(s, sec) - saving(b, sec), -extra_paid(sec));
        }
        assert!(check_all(s, Mode::Recompute, Money::ZERO).unwrap().is_empty());
        let y: Money = Sector::ALL.iter().map(|&x| s.balances(x, Mode::Recompute).unwrap().net_lending).sum();
        assert_eq!(y, Money::ZERO);
    }

    #[test]
    fn unnormalized_share_shock_fails_before_stepping() {
        let (cal, state) = setup();
        let err = run(&state, &cal, &cfg("horizon = 3\nshock.3.share.D11.HS = 1.1")).unwrap_err();
        assert!(matches!(err, SimulationError::SharesNotNormalized { period: 3, .. }), "{err}");
        let err = run(&state, &cal, &cfg("horizon = 1\nshock.1.rate.D11.GS.D12 = 2")).unwrap_err();
        assert!(matches!(err, SimulationError::Config(_)), "{err}");
    }

    #[test]
    fn horizon_zero_is_rejected() {
        let (cal, state) = setup();
        let c = ScenarioConfig {
            horizon: 0,
            ..Default::default()
        };
        assert!(run(&state, &cal, &c).is_err());
        assert_eq!(state.period, 0);
    }

    #[test]
    fn csv_lists_every_quantity_per_period() {
        let (cal, state) = setup();
        let states = run(&state, &cal, &cfg("horizon = 2")).unwrap();
        let mut buf = Vec::new();
        write_csv(&states, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 1 + 2 * quantity_names().len());
        assert!(text.contains("1,GDP.expenditure,196869.00"));
        assert!(text.contains("2,NDI.rhs,159081.00"));
        assert!(text.contains("1,market.D61+D62.total,60976.00"));
    }
}
