//! Validation and ledger reports, rendered as aligned text or JSON.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::accounts::SectorResult;
use crate::economy::{EconomyYear, Mode, Provenance};
use crate::error::AccountsError;
use crate::identities::{identity_checks, GdpBreakdown, IdentityCheck, NationalIncome};
use crate::ledger::{Direction, ItemCode, Sector};
use crate::markets::{systems, MarketKind};
use crate::money::Money;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MarketLine {
    pub kind: MarketKind,
    pub zero_sum: bool,
    pub paid: Money,
    pub received: Money,
    pub residual: Money,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainLine {
    pub sector: Sector,
    pub label: &'static str,
    pub item: ItemCode,
    pub reported: Money,
    pub recomputed: Money,
    pub residual: Money,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityLine {
    #[serde(flatten)]
    pub check: IdentityCheck,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub year: i32,
    pub mode: Mode,
    pub tolerance: Money,
    pub markets: Vec<MarketLine>,
    pub chains: Vec<ChainLine>,
    pub identities: Vec<IdentityLine>,
    pub violations: usize,
}

/// Checks one year. Zero-sum payment systems other than B9 must clear
/// exactly; B9, chain residuals and identities are allowed `tolerance`.
pub fn validate(year: &EconomyYear, mode: Mode, tolerance: Money) -> Result<ValidationReport, AccountsError> {
    let markets: Vec<MarketLine> = systems(year, mode)?
        .into_iter()
        .map(|sys| {
            let residual = sys.residual();
            let tol = if sys.kind == MarketKind::B9 { tolerance } else { Money::ZERO };
            MarketLine {
                kind: sys.kind,
                zero_sum: sys.kind.is_zero_sum(),
                paid: sys.total_payments(),
                received: sys.total_receipts(),
                residual,
                ok: !sys.kind.is_zero_sum() || residual.abs() <= tol,
            }
        })
        .collect();
    let chains: Vec<ChainLine> = year
        .chain_residuals()?
        .into_iter()
        .map(|c| ChainLine {
            ok: c.residual.abs() <= tolerance,
            sector: c.sector,
            label: c.label,
            item: c.item,
            reported: c.reported,
            recomputed: c.recomputed,
            residual: c.residual,
        })
        .collect();
    let identities: Vec<IdentityLine> = identity_checks(year, mode)?
        .into_iter()
        .map(|check| IdentityLine {
            ok: check.holds(tolerance),
            check,
        })
        .collect();
    let violations = markets.iter().filter(|m| !m.ok).count()
        + chains.iter().filter(|c| !c.ok).count()
        + identities.iter().filter(|i| !i.ok).count();
    Ok(ValidationReport {
        year: year.year,
        mode,
        tolerance,
        markets,
        chains,
        identities,
        violations,
    })
}

fn status(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "VIOLATION"
    }
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.violations == 0
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mode = match self.mode {
            Mode::Reported => "reported",
            Mode::Recompute => "recompute",
        };
        let _ = writeln!(out, "year {} (mode {mode}, tolerance {})", self.year, self.tolerance);
        let _ = writeln!(out, "\npayment systems");
        let _ = writeln!(out, "  {:<8} {:>14} {:>14} {:>12}  status", "kind", "paid", "received", "residual");
        for m in &self.markets {
            let st = if m.zero_sum { status(m.ok) } else { "open" };
            let _ = writeln!(
                out,
                "  {:<8} {:>14} {:>14} {:>12}  {st}",
                m.kind, m.paid, m.received, m.residual
            );
        }
        let _ = writeln!(out, "\nchain residuals (recomputed - reported)");
        let _ = writeln!(
            out,
            "  {:<6} {:<5} {:<6} {:>14} {:>14} {:>12}  status",
            "sector", "item", "code", "reported", "recomputed", "residual"
        );
        for c in &self.chains {
            let _ = writeln!(
                out,
                "  {:<6} {:<5} {:<6} {:>14} {:>14} {:>12}  {}",
                c.sector,
                c.label,
                c.item,
                c.reported,
                c.recomputed,
                c.residual,
                status(c.ok)
            );
        }
        let _ = writeln!(out, "\nidentities (rhs - lhs)");
        for i in &self.identities {
            let _ = writeln!(out, "  {}  {}", i.check, status(i.ok));
        }
        let _ = writeln!(out, "\nviolations: {}", self.violations);
        out
    }
}

/// GDP in every form and both sides of the disposable national income identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub year: i32,
    pub mode: Mode,
    pub breakdown: GdpBreakdown,
    pub national_income: NationalIncome,
    pub checks: Vec<IdentityLine>,
    pub violations: usize,
}

pub fn identity_report(year: &EconomyYear, mode: Mode, tolerance: Money) -> Result<IdentityReport, AccountsError> {
    let checks: Vec<IdentityLine> = identity_checks(year, mode)?
        .into_iter()
        .map(|check| IdentityLine {
            ok: check.holds(tolerance),
            check,
        })
        .collect();
    Ok(IdentityReport {
        year: year.year,
        mode,
        breakdown: GdpBreakdown::from_year(year, mode)?,
        national_income: NationalIncome::from_year(year, mode)?,
        violations: checks.iter().filter(|c| !c.ok).count(),
        checks,
    })
}

impl IdentityReport {
    pub fn to_text(&self) -> String {
        use crate::identities::{gdp_expenditure, gdp_income, gdp_production, gdp_value_added};
        let b = &self.breakdown;
        let n = &self.national_income;
        let mut out = String::new();
        let _ = writeln!(out, "year {}", self.year);
        let _ = writeln!(out, "  GDP expenditure   {:>14}", gdp_expenditure(b));
        let _ = writeln!(out, "  GDP income        {:>14}", gdp_income(b));
        let _ = writeln!(out, "  GDP production    {:>14}", gdp_production(b));
        let _ = writeln!(out, "  GDP value added   {:>14}", gdp_value_added(b));
        let _ = writeln!(out, "  national income   {:>14} = {:>14}", n.lhs(), n.rhs());
        for c in &self.checks {
            let _ = writeln!(out, "  {}  {}", c.check, status(c.ok));
        }
        let _ = writeln!(out, "  violations: {}", self.violations);
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LedgerEntry {
    pub sector: Sector,
    pub item: ItemCode,
    pub direction: Direction,
    pub value: Money,
    pub provenance: Option<Provenance>,
}

/// Everything known about a year: entries, balancing items and checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LedgerReport {
    pub year: i32,
    pub entries: Vec<LedgerEntry>,
    pub balances: BTreeMap<Sector, SectorResult>,
    pub validation: ValidationReport,
}

pub fn ledger_report(year: &EconomyYear, mode: Mode, tolerance: Money) -> Result<LedgerReport, AccountsError> {
    let entries = year
        .flows()
        .into_iter()
        .map(|f| LedgerEntry {
            sector: f.sector(),
            item: f.item(),
            direction: f.direction(),
            value: f.value(),
            provenance: year.provenance(f.sector(), f.item(), f.direction()).cloned(),
        })
        .collect();
    Ok(LedgerReport {
        year: year.year,
        entries,
        balances: year.all_balances(mode)?,
        validation: validate(year, mode, tolerance)?,
    })
}

impl LedgerReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "ledger {}", self.year);
        for e in &self.entries {
            let note = match &e.provenance {
                Some(Provenance::Derived(_)) => "  (derived)",
                _ => "",
            };
            let _ = writeln!(
                out,
                "  {:<4} {:<8} {:<9} {:>14}{note}",
                e.sector,
                e.item,
                e.direction.as_str(),
                e.value
            );
        }
        let _ = writeln!(out, "\nbalancing items");
        let _ = writeln!(
            out,
            "  {:<4} {:>12} {:>12} {:>12} {:>12} {:>12} {:>12} {:>12}",
            "", "GVA", "O/EB", "BPI/BP", "DI", "S", "Y", "dA"
        );
        for (s, r) in &self.balances {
            let _ = writeln!(
                out,
                "  {:<4} {:>12} {:>12} {:>12} {:>12} {:>12} {:>12} {:>12}",
                s,
                r.gva,
                r.operating_surplus,
                r.primary_income,
                r.disposable_income,
                r.net_saving,
                r.net_lending,
                r.financial_assets_change
            );
        }
        out.push('\n');
        out.push_str(&self.validation.to_text());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::fixture_2011;

    #[test]
    fn fixture_is_clean_in_both_modes() {
        let f = fixture_2011();
        let r = validate(&f, Mode::Reported, Money::ZERO).unwrap();
        assert!(r.is_clean(), "{}", r.to_text());
        assert!(r.chains.iter().all(|c| c.residual.is_zero()));
        let r = validate(&f, Mode::Recompute, Money::from_millions(15)).unwrap();
        assert!(r.is_clean());
    }

    #[test]
    fn printed_household_figure_shows_the_residual() {
        let mut f = fixture_2011();
        f.set(Sector::HS, ItemCode::D61D62, Direction::Paid, crate::ingest::HS_SOCIAL_PAID_AS_PRINTED)
            .unwrap();
        let r = validate(&f, Mode::Recompute, Money::from_millions(15)).unwrap();
        let worst = r.chains.iter().map(|c| c.residual.abs()).max().unwrap();
        assert_eq!(worst, Money::from_millions(12));
        assert!(r.chains.iter().all(|c| c.ok));
        assert!(r.markets.iter().any(|m| m.kind == MarketKind::D61D62 && !m.ok));
    }

    #[test]
    fn perturbed_wages_are_reported() {
        let mut f = fixture_2011();
        f.set(Sector::NFS, ItemCode::D11, Direction::Paid, Money::from_millions(50566))
            .unwrap();
        let r = validate(&f, Mode::Reported, Money::ZERO).unwrap();
        assert!(!r.is_clean());
        let bad: Vec<_> = r.markets.iter().filter(|m| !m.ok).collect();
        assert_eq!(bad.len(), 1);
        assert_eq!(bad[0].kind, MarketKind::D11);
        assert!(r.to_text().contains("VIOLATION"));
    }

    #[test]
    fn ledger_report_serializes() {
        let r = ledger_report(&fixture_2011(), Mode::Reported, Money::ZERO).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains("\"item\":\"D61+D62\""));
        assert!(json.contains("\"kind\":\"derived\""));
        assert!(r.to_text().contains("(derived)"));
    }
}
