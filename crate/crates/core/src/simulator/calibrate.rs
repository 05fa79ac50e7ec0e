//! Allocation rules and behavioural rates estimated from history.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::economy::EconomyYear;
use crate::error::SimulationError;
use crate::ingest::Dataset;
use crate::ledger::{Direction, ItemCode, Sector};
use crate::money::Money;

use Direction::{Net, Paid, Received};
use ItemCode::*;

pub type Ratio = BigRational;

pub(crate) fn ratio(m: Money) -> Ratio {
    Ratio::new(BigInt::from(m.cents()), BigInt::from(100))
}

/// Rounds an exact amount in million euro to the nearest cent.
pub(crate) fn to_money(r: &Ratio) -> Result<Money, SimulationError> {
    (r * Ratio::from_integer(BigInt::from(100)))
        .round()
        .to_integer()
        .to_i64()
        .map(Money::from_cents)
        .ok_or_else(|| SimulationError::Config(format!("amount {r} is out of range")))
}

/// Exact parse of a plain decimal such as `-0.025`.
pub fn parse_ratio(s: &str) -> Option<Ratio> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty()
        || !int.chars().all(|c| c.is_ascii_digit())
        || !frac.chars().all(|c| c.is_ascii_digit())
        || body.ends_with('.')
    {
        return None;
    }
    let digits: BigInt = format!("{int}{frac}").parse().ok()?;
    let r = Ratio::new(digits, BigInt::from(10).pow(frac.len() as u32));
    Some(if neg { -r } else { r })
}

/// Where a simulated amount is written: one ledger entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Slot {
    pub sector: Sector,
    pub item: ItemCode,
    pub direction: Direction,
}

impl Slot {
    pub const fn new(sector: Sector, item: ItemCode, direction: Direction) -> Self {
        Slot {
            sector,
            item,
            direction,
        }
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}.{}", self.sector, self.item, self.direction)
    }
}

/// A payment pool: the goods market or one transaction category.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PoolId {
    Goods,
    Market(ItemCode),
}

impl PoolId {
    pub fn name(self) -> &'static str {
        match self {
            PoolId::Goods => "goods",
            PoolId::Market(item) => item.code(),
        }
    }
}

impl fmt::Display for PoolId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

/// What a rate multiplies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Base {
    /// The sector's own output composite.
    Own(Sector),
    /// Total domestic output composite.
    Total,
}

/// An amount computed as `rate * base`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntakeLine {
    pub slot: Slot,
    pub rate: Ratio,
    pub base: Base,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AllocationRule {
    pub pool: PoolId,
    pub shares: Vec<(Slot, Ratio)>,
}

impl AllocationRule {
    pub fn sum(&self) -> Ratio {
        self.shares.iter().map(|(_, s)| s.clone()).sum()
    }

    pub fn is_normalized(&self) -> bool {
        self.shares.iter().all(|(_, s)| !s.is_negative()) && self.sum().is_one()
    }

    pub fn share(&self, sector: Sector) -> Ratio {
        self.shares
            .iter()
            .filter(|(slot, _)| slot.sector == sector)
            .map(|(_, s)| s.clone())
            .sum()
    }

    /// Multiplies each share by a positive weight and renormalizes exactly.
    pub fn reweight(&mut self, weights: &[u32]) {
        assert_eq!(weights.len(), self.shares.len(), "one weight per slot");
        for ((_, s), &w) in self.shares.iter_mut().zip(weights) {
            *s *= Ratio::from_integer(BigInt::from(w));
        }
        let total = self.sum();
        if total.is_zero() {
            let n = Ratio::from_integer(BigInt::from(self.shares.len()));
            for (_, s) in &mut self.shares {
                *s = n.recip();
            }
        } else {
            for (_, s) in &mut self.shares {
                *s /= total.clone();
            }
        }
    }
}

/// One pool: amounts flow in through intake lines and the whole total is
/// paid out by the allocation rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pool {
    pub id: PoolId,
    pub intake: Vec<IntakeLine>,
    pub rule: AllocationRule,
    /// Sign written on intake entries of a net item; allocations get the
    /// opposite sign. Unused for gross items.
    pub net_sign: i64,
}

/// Calibrated rules and rates, plus diagnostics that are recorded but do not
/// drive the simulation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Calibration {
    pub base_year: i32,
    pub pools: Vec<Pool>,
    /// Rates outside any pool: consumption of fixed capital and liabilities.
    pub lines: Vec<IntakeLine>,
    pub diagnostics: BTreeMap<String, Ratio>,
    pub warnings: Vec<String>,
}

/// Gross categories that clear among sectors.
pub const GROSS_POOLS: [ItemCode; 9] = [D11, D12, D5, D4, D61D62, D39, D29, D7, D9];

/// Goods-market receipts besides output: imports and product taxes.
const GOODS_INTAKE: [Slot; 3] = [
    Slot::new(Sector::RS, P7, Received),
    Slot::new(Sector::GS, D21, Received),
    Slot::new(Sector::RS, D21, Received),
];

/// Goods-market payments: consumption, investment, intermediate use,
/// exports and product subsidies.
fn goods_payers() -> Vec<Slot> {
    let mut v = vec![
        Slot::new(Sector::HS, P31, Paid),
        Slot::new(Sector::GS, P31, Paid),
        Slot::new(Sector::GS, P32, Paid),
    ];
    for s in Sector::DOMESTIC {
        v.push(Slot::new(s, P5, Paid));
    }
    for s in Sector::DOMESTIC {
        v.push(Slot::new(s, P2, Paid));
    }
    v.push(Slot::new(Sector::RS, P6, Paid));
    v.push(Slot::new(Sector::GS, D31, Paid));
    v.push(Slot::new(Sector::RS, D31, Paid));
    v
}

fn mean(values: impl IntoIterator<Item = Ratio>) -> Option<Ratio> {
    let mut n = 0i64;
    let mut sum = Ratio::zero();
    for v in values {
        sum += v;
        n += 1;
    }
    (n > 0).then(|| sum / Ratio::from_integer(BigInt::from(n)))
}

struct History<'a> {
    years: Vec<&'a EconomyYear>,
    composites: Vec<BTreeMap<Sector, Money>>,
}

impl<'a> History<'a> {
    fn new(years: Vec<&'a EconomyYear>) -> Result<Self, SimulationError> {
        let composites = years
            .iter()
            .map(|y| {
                Sector::DOMESTIC
                    .iter()
                    .map(|&s| y.output_composite(s).map(|c| (s, c)))
                    .collect::<Result<BTreeMap<_, _>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(History { years, composites })
    }

    fn base(&self, year: usize, base: Base) -> Money {
        match base {
            Base::Own(s) => self.composites[year][&s],
            Base::Total => self.composites[year].values().copied().sum(),
        }
    }

    /// Own composite when it is positive in every year, otherwise the total.
    fn choose_base(&self, sector: Sector) -> Base {
        let own = Base::Own(sector);
        if sector.is_domestic() && (0..self.years.len()).all(|i| self.base(i, own) > Money::ZERO) {
            own
        } else {
            Base::Total
        }
    }

    /// Mean of `value / base` over the years where the base is non-zero.
    fn rate(&self, base: Base, value: impl Fn(&EconomyYear) -> Money) -> Ratio {
        mean(self.years.iter().enumerate().filter_map(|(i, y)| {
            let b = self.base(i, base);
            (!b.is_zero()).then(|| ratio(value(y)) / ratio(b))
        }))
        .unwrap_or_else(Ratio::zero)
    }

    fn line(&self, slot: Slot, sign: i64) -> Option<IntakeLine> {
        let base = self.choose_base(slot.sector);
        let value = |y: &EconomyYear| y.get(slot.sector, slot.item, slot.direction) * sign;
        if self.years.iter().all(|y| value(y).is_zero()) {
            return None;
        }
        Some(IntakeLine {
            slot,
            rate: self.rate(base, value),
            base,
        })
    }

    /// Mean fractions of each slot in its yearly total. `None` when every
    /// yearly total is zero.
    fn shares(&self, slots: &[Slot], value: impl Fn(&EconomyYear, Slot) -> Money) -> Option<Vec<Ratio>> {
        let mut per_year = Vec::new();
        for y in &self.years {
            let values: Vec<Money> = slots.iter().map(|&s| value(y, s)).collect();
            let total: Money = values.iter().copied().sum();
            if total > Money::ZERO {
                per_year.push(values.iter().map(|v| ratio(*v) / ratio(total)).collect::<Vec<_>>());
            }
        }
        if per_year.is_empty() {
            return None;
        }
        Some(
            (0..slots.len())
                .map(|i| mean(per_year.iter().map(|f| f[i].clone())).unwrap())
                .collect(),
        )
    }
}

fn uniform(slots: &[Slot]) -> Vec<Ratio> {
    let n = Ratio::from_integer(BigInt::from(slots.len().max(1)));
    slots.iter().map(|_| n.recip()).collect()
}

fn rule_for(
    pool: PoolId,
    slots: Vec<Slot>,
    shares: Option<Vec<Ratio>>,
    warnings: &mut Vec<String>,
) -> AllocationRule {
    let shares = shares.unwrap_or_else(|| {
        warnings.push(format!(
            "pool {pool} has a zero total in every year; using uniform shares"
        ));
        uniform(&slots)
    });
    let mut pairs: Vec<(Slot, Ratio)> = slots.into_iter().zip(shares).collect();
    if pairs.iter().any(|(_, s)| !s.is_zero()) {
        pairs.retain(|(_, s)| !s.is_zero());
    }
    AllocationRule { pool, shares: pairs }
}

fn gross_pool(h: &History<'_>, item: ItemCode, warnings: &mut Vec<String>) -> Pool {
    let intake = Sector::ALL
        .iter()
        .filter(|&&s| item.applies_to(s, Paid))
        .filter_map(|&s| h.line(Slot::new(s, item, Paid), 1))
        .collect();
    let receivers: Vec<Slot> = Sector::ALL
        .iter()
        .filter(|&&s| item.applies_to(s, Received))
        .map(|&s| Slot::new(s, item, Received))
        .collect();
    let shares = h.shares(&receivers, |y, s| y.get(s.sector, s.item, s.direction));
    let id = PoolId::Market(item);
    Pool {
        id,
        intake,
        rule: rule_for(id, receivers, shares, warnings),
        net_sign: 1,
    }
}

/// K2 and D8 carry one signed value per sector. Sectors whose mean value has
/// the sign `sign` pay in; the others are paid out.
fn net_pool(h: &History<'_>, item: ItemCode, sign: i64, warnings: &mut Vec<String>) -> Pool {
    let sectors: Vec<Sector> = Sector::ALL
        .iter()
        .copied()
        .filter(|&s| item.applies_to(s, Net))
        .collect();
    let mean_value = |s: Sector| -> Money { h.years.iter().map(|y| y.get(s, item, Net)).sum::<Money>() * sign };
    let mut intake = Vec::new();
    let mut receivers = Vec::new();
    for &s in &sectors {
        let slot = Slot::new(s, item, Net);
        if mean_value(s) > Money::ZERO {
            if let Some(mut line) = h.line(slot, sign) {
                if line.rate.is_negative() {
                    warnings.push(format!("{item} rate of {s} averages below zero; clamped to 0"));
                    line.rate = Ratio::zero();
                }
                intake.push(line);
            }
        } else if mean_value(s) < Money::ZERO {
            receivers.push(slot);
        }
    }
    if receivers.is_empty() {
        receivers = sectors
            .iter()
            .filter(|s| !intake.iter().any(|l: &IntakeLine| l.slot.sector == **s))
            .map(|&s| Slot::new(s, item, Net))
            .collect();
    }
    let shares = h.shares(&receivers, |y, s| (y.get(s.sector, item, Net) * -sign).positive_part());
    let id = PoolId::Market(item);
    Pool {
        id,
        intake,
        rule: rule_for(id, receivers, shares, warnings),
        net_sign: sign,
    }
}

fn goods_pool(h: &History<'_>, warnings: &mut Vec<String>) -> Pool {
    let mut intake: Vec<IntakeLine> = Sector::DOMESTIC
        .iter()
        .map(|&s| IntakeLine {
            slot: Slot::new(s, P1, Received),
            rate: Ratio::one(),
            base: Base::Own(s),
        })
        .collect();
    intake.extend(GOODS_INTAKE.iter().filter_map(|&slot| {
        h.line(slot, 1).map(|mut l| {
            l.base = Base::Total;
            l.rate = h.rate(Base::Total, |y| y.get(slot.sector, slot.item, slot.direction));
            l
        })
    }));
    let payers = goods_payers();
    let shares = h.shares(&payers, |y, s| y.get(s.sector, s.item, s.direction));
    Pool {
        id: PoolId::Goods,
        intake,
        rule: rule_for(PoolId::Goods, payers, shares, warnings),
        net_sign: 1,
    }
}

/// Estimates allocation rules and rates from every year of `history`.
pub fn calibrate(history: &Dataset) -> Result<Calibration, SimulationError> {
    let years: Vec<&EconomyYear> = history.years.values().collect();
    let base_year = years.last().ok_or(SimulationError::EmptyHistory)?.year;
    let h = History::new(years)?;
    let mut warnings = Vec::new();

    for y in &h.years {
        for s in Sector::DOMESTIC {
            for (item, dir) in [(D21, Paid), (D31, Received)] {
                if !y.get(s, item, dir).is_zero() {
                    warnings.push(format!(
                        "{} {s} {item} {dir} is attributed in the history; the simulator keeps it at zero",
                        y.year
                    ));
                }
            }
        }
    }

    let mut pools = vec![goods_pool(&h, &mut warnings)];
    for item in GROSS_POOLS {
        pools.push(gross_pool(&h, item, &mut warnings));
    }
    pools.push(net_pool(&h, K2, 1, &mut warnings));
    pools.push(net_pool(&h, D8, -1, &mut warnings));

    let mut lines = Vec::new();
    for s in Sector::DOMESTIC {
        lines.extend(h.line(Slot::new(s, K1, Paid), 1));
    }
    for s in Sector::ALL {
        lines.extend(h.line(Slot::new(s, DPSI, Net), 1));
    }

    let mut diagnostics = BTreeMap::new();
    let consumption = mean(h.years.iter().filter_map(|y| {
        let di = if y.ledger(Sector::HS).contains(B6N, Net) {
            y.get(Sector::HS, B6N, Net)
        } else {
            y.evaluate(Sector::HS).ok()?.result.disposable_income
        };
        (!di.is_zero()).then(|| ratio(y.get(Sector::HS, P31, Paid)) / ratio(di))
    }));
    if let Some(c) = consumption {
        diagnostics.insert("consumption_rate.HS".to_string(), c);
    }
    for s in Sector::DOMESTIC {
        let r = h.rate(Base::Own(s), |y| y.get(s, P5, Paid));
        diagnostics.insert(format!("investment_rate.{s}"), r);
    }

    for w in &warnings {
        log::warn!("{w}");
    }
    Ok(Calibration {
        base_year,
        pools,
        lines,
        diagnostics,
        warnings,
    })
}

impl Calibration {
    pub fn pool(&self, id: PoolId) -> Option<&Pool> {
        self.pools.iter().find(|p| p.id == id)
    }

    pub fn pool_mut(&mut self, id: PoolId) -> Option<&mut Pool> {
        self.pools.iter_mut().find(|p| p.id == id)
    }

    /// Randomizes the calibration with caller-supplied draws: every share is
    /// reweighted by `1 + next() % 100` and renormalized, every rate outside
    /// the output composites is scaled by `(50 + next() % 101) / 100`.
    pub fn perturb_with(&mut self, mut next: impl FnMut() -> u32) {
        for pool in &mut self.pools {
            let weights: Vec<u32> = pool.rule.shares.iter().map(|_| 1 + next() % 100).collect();
            pool.rule.reweight(&weights);
            for line in &mut pool.intake {
                if line.slot.item != P1 {
                    line.rate *= Ratio::new(BigInt::from(50 + next() % 101), BigInt::from(100));
                }
            }
        }
        for line in &mut self.lines {
            line.rate *= Ratio::new(BigInt::from(50 + next() % 101), BigInt::from(100));
        }
    }

    /// Lines in a display-friendly form, `(pool, slot, rate)`.
    pub fn describe(&self) -> Vec<String> {
        let mut out = Vec::new();
        for p in &self.pools {
            for l in &p.intake {
                out.push(format!("rate {} {} {}", p.id, l.slot, fmt_ratio(&l.rate)));
            }
            for (slot, s) in &p.rule.shares {
                out.push(format!("share {} {} {}", p.id, slot, fmt_ratio(s)));
            }
        }
        for l in &self.lines {
            out.push(format!("rate {} {} {}", l.slot.item, l.slot, fmt_ratio(&l.rate)));
        }
        for (k, v) in &self.diagnostics {
            out.push(format!("diagnostic {k} {}", fmt_ratio(v)));
        }
        out
    }
}

/// Fixed-point rendering with ten decimals.
pub fn fmt_ratio(r: &Ratio) -> String {
    let scale = BigInt::from(10).pow(10);
    let scaled = (r * Ratio::from_integer(scale.clone())).round().to_integer();
    let neg = scaled.is_negative();
    let abs = scaled.abs();
    let int = &abs / &scale;
    let frac = &abs % &scale;
    format!("{}{int}.{frac:0>10}", if neg { "-" } else { "" })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::fixture_2011;

    fn fixture_calibration() -> Calibration {
        calibrate(&Dataset::single(fixture_2011())).unwrap()
    }

    fn r(n: i64, d: i64) -> Ratio {
        Ratio::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn wage_shares_are_fractions_of_the_pool() {
        let c = fixture_calibration();
        let rule = &c.pool(PoolId::Market(D11)).unwrap().rule;
        assert_eq!(rule.share(Sector::HS), r(78677, 79149));
        assert_eq!(rule.share(Sector::RS), r(472, 79149));
        assert!(rule.is_normalized());
    }

    #[test]
    fn consumption_rate_diagnostic() {
        let c = fixture_calibration();
        let rate = &c.diagnostics["consumption_rate.HS"];
        assert_eq!(*rate, r(105771, 107191));
        assert!((rate.to_f64().unwrap() - 0.98675).abs() < 5e-6);
    }

    #[test]
    fn single_receiver_gets_everything() {
        let c = fixture_calibration();
        let rule = &c.pool(PoolId::Market(D5)).unwrap().rule;
        assert_eq!(rule.shares.len(), 1);
        assert_eq!(rule.shares[0].0.sector, Sector::GS);
        assert!(rule.shares[0].1.is_one());
    }

    #[test]
    fn net_pools_split_by_sign() {
        let c = fixture_calibration();
        let k2 = c.pool(PoolId::Market(K2)).unwrap();
        let payers: Vec<Sector> = k2.intake.iter().map(|l| l.slot.sector).collect();
        assert_eq!(payers, [Sector::HS, Sector::RS]);
        assert_eq!(k2.rule.share(Sector::NFS), r(111, 116));
        let d8 = c.pool(PoolId::Market(D8)).unwrap();
        assert_eq!(d8.intake[0].slot.sector, Sector::HS);
        assert!(d8.rule.share(Sector::FFS).is_one());
    }

    #[test]
    fn goods_pool_balances_in_history() {
        let c = fixture_calibration();
        let goods = c.pool(PoolId::Goods).unwrap();
        assert!(goods.rule.is_normalized());
        assert_eq!(goods.rule.shares.len(), 14);
        let total = r(486261, 1);
        let c1 = goods
            .rule
            .shares
            .iter()
            .find(|(s, _)| *s == Slot::new(Sector::HS, P31, Paid))
            .unwrap();
        assert_eq!(c1.1.clone() * total, r(105771, 1));
    }

    #[test]
    fn zero_pool_warns_and_goes_uniform() {
        let mut y = fixture_2011();
        for s in [Sector::NFS, Sector::FFS, Sector::HS, Sector::GS, Sector::RS] {
            if y.ledger(s).contains(D9, Received) {
                y.set(s, D9, Received, Money::ZERO).unwrap();
            }
        }
        let c = calibrate(&Dataset::single(y)).unwrap();
        assert!(c.warnings.iter().any(|w| w.contains("D9")));
        let rule = &c.pool(PoolId::Market(D9)).unwrap().rule;
        assert_eq!(rule.shares.len(), 5);
        assert!(rule.is_normalized());
    }

    #[test]
    fn empty_history_is_an_error() {
        assert_eq!(
            calibrate(&Dataset::default()).unwrap_err(),
            SimulationError::EmptyHistory
        );
    }

    #[test]
    fn decimal_parsing_is_exact() {
        assert_eq!(parse_ratio("0.02"), Some(r(1, 50)));
        assert_eq!(parse_ratio("-1.5"), Some(r(-3, 2)));
        assert_eq!(parse_ratio("3"), Some(r(3, 1)));
        assert_eq!(parse_ratio(".5"), Some(r(1, 2)));
        for bad in ["", "1.", "1e3", "abc", "1.2.3", "--1"] {
            assert_eq!(parse_ratio(bad), None, "{bad}");
        }
        assert_eq!(fmt_ratio(&r(-1, 3)), "-0.3333333333");
    }

    #[test]
    fn reweight_keeps_shares_normalized() {
        let mut c = fixture_calibration();
        let mut n = 0u32;
        c.perturb_with(|| {
            n = n.wrapping_mul(1103515245).wrapping_add(12345);
            n >> 8
        });
        assert!(c.pools.iter().all(|p| p.rule.is_normalized()));
    }
}
