//! Per-sector account chains.
//!
//! Each chain computes its balancing items twice: once from the closed-form
//! equations and once as the balance of the account nodes it exposes. The
//! two must always agree.

use serde::Serialize;

use crate::error::AccountsError;
use crate::ledger::{AccountNode, Sector};
use crate::money::Money;

macro_rules! require_non_negative {
    ($inputs:expr; $($field:ident),+ $(,)?) => {
        $(
            if $inputs.$field.is_negative() {
                return Err(AccountsError::NegativeInput {
                    field: stringify!($field),
                    value: $inputs.$field,
                });
            }
        )+
    };
}

/// The six components of the output composite `C + G + I + Z + X - M`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OutputComponents {
    pub consumption: Money,
    pub collective_consumption: Money,
    pub investment_goods: Money,
    pub intermediate_sales: Money,
    pub exports: Money,
    pub imports: Money,
}

impl OutputComponents {
    pub fn composite(&self) -> Money {
        self.consumption
            + self.collective_consumption
            + self.investment_goods
            + self.intermediate_sales
            + self.exports
            - self.imports
    }
}

/// Output value supplied as one composite number, as six components, or both.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OutputValue {
    pub composite: Option<Money>,
    pub components: Option<OutputComponents>,
}

impl OutputValue {
    pub fn composite(value: Money) -> Self {
        OutputValue {
            composite: Some(value),
            components: None,
        }
    }

    pub fn from_components(components: OutputComponents) -> Self {
        OutputValue {
            composite: None,
            components: Some(components),
        }
    }

    pub fn resolve(&self) -> Result<Money, AccountsError> {
        if let Some(c) = &self.components {
            let fields = [
                ("consumption", c.consumption),
                ("collective_consumption", c.collective_consumption),
                ("investment_goods", c.investment_goods),
                ("intermediate_sales", c.intermediate_sales),
                ("exports", c.exports),
                ("imports", c.imports),
            ];
            for (field, value) in fields {
                if value.is_negative() {
                    return Err(AccountsError::NegativeInput { field, value });
                }
            }
        }
        match (self.composite, self.components.map(|c| c.composite())) {
            (Some(a), Some(b)) if a != b => Err(AccountsError::CompositeMismatch {
                composite: a,
                from_components: b,
            }),
            (Some(a), _) => Ok(a),
            (None, Some(b)) => Ok(b),
            (None, None) => Ok(Money::ZERO),
        }
    }
}

/// Aggregate flows of a firm sector (NFS or FFS).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FirmSectorInputs {
    pub output: OutputValue,
    /// H, intermediate consumption (P2).
    pub intermediate: Money,
    /// P, consumption of fixed capital (K1).
    pub fixed_capital_consumption: Money,
    /// W, gross wages paid (D11).
    pub wages: Money,
    /// T_S, employers' social contributions paid (D12).
    pub employer_contributions: Money,
    /// T_P1, taxes on products paid (D21). Usually embedded in prices.
    pub product_taxes: Money,
    /// T_P2, other taxes on production (D29).
    pub production_taxes: Money,
    /// B_P1, subsidies on products received (D31). Usually embedded in prices.
    pub product_subsidies: Money,
    /// B_P2, other subsidies on production received (D39).
    pub production_subsidies: Money,
    pub property_income_received: Money,
    pub property_income_paid: Money,
    pub social_received: Money,
    pub social_paid: Money,
    pub transfers_received: Money,
    pub transfers_paid: Money,
    /// T_I, current taxes on income and wealth (D5).
    pub income_taxes: Money,
    /// D8n, signed.
    pub pension_adjustment: Money,
    pub capital_transfers_received: Money,
    pub capital_transfers_paid: Money,
    /// I_O, own gross investment.
    pub investment: Money,
    /// N_An, net acquisition of non-produced assets (K2), signed.
    pub nonproduced_assets: Money,
    /// dPsi, net issuing of liabilities, signed.
    pub liabilities_issued: Money,
}

impl FirmSectorInputs {
    fn validate(&self) -> Result<Money, AccountsError> {
        require_non_negative!(self;
            intermediate, fixed_capital_consumption, wages, employer_contributions,
            product_taxes, production_taxes, product_subsidies, production_subsidies,
            property_income_received, property_income_paid, social_received, social_paid,
            transfers_received, transfers_paid, income_taxes, capital_transfers_received,
            capital_transfers_paid, investment,
        );
        self.output.resolve()
    }
}

/// Aggregate flows of the household sector (HS including NPISH).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HouseholdSectorInputs {
    /// Output of unincorporated enterprises, G + C_H + I + Z.
    pub output: OutputValue,
    pub intermediate: Money,
    pub fixed_capital_consumption: Money,
    /// W_HP, wages paid by unincorporated enterprises.
    pub wages_paid: Money,
    /// T_SP, employers' contributions paid.
    pub employer_contributions_paid: Money,
    pub product_taxes: Money,
    pub production_taxes: Money,
    pub product_subsidies: Money,
    pub production_subsidies: Money,
    /// W_T, gross wages received as employees.
    pub wages_received: Money,
    /// T_SR, employers' contributions received.
    pub employer_contributions_received: Money,
    pub property_income_received: Money,
    pub property_income_paid: Money,
    pub social_received: Money,
    pub social_paid: Money,
    pub transfers_received: Money,
    pub transfers_paid: Money,
    pub income_taxes: Money,
    pub pension_adjustment: Money,
    /// C_1, final consumption expenditure.
    pub consumption: Money,
    pub capital_transfers_received: Money,
    pub capital_transfers_paid: Money,
    pub investment: Money,
    pub nonproduced_assets: Money,
    pub liabilities_issued: Money,
}

impl HouseholdSectorInputs {
    fn validate(&self) -> Result<Money, AccountsError> {
        require_non_negative!(self;
            intermediate, fixed_capital_consumption, wages_paid, employer_contributions_paid,
            product_taxes, production_taxes, product_subsidies, production_subsidies,
            wages_received, employer_contributions_received, property_income_received,
            property_income_paid, social_received, social_paid, transfers_received,
            transfers_paid, income_taxes, consumption, capital_transfers_received,
            capital_transfers_paid, investment,
        );
        self.output.resolve()
    }
}

/// Aggregate flows of general government.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GovernmentSectorInputs {
    /// Market and non-market output, C_G + G_G + Z_G.
    pub output: OutputValue,
    pub intermediate: Money,
    pub fixed_capital_consumption: Money,
    pub wages: Money,
    pub employer_contributions: Money,
    /// T_PG1P.
    pub product_taxes_paid: Money,
    /// T_PG2P.
    pub production_taxes_paid: Money,
    /// B_PG1R.
    pub product_subsidies_received: Money,
    /// B_PG2R.
    pub production_subsidies_received: Money,
    /// T_PG1R, taxes on products received (D21).
    pub product_taxes_received: Money,
    /// T_PG2R, other taxes on production received (D29).
    pub production_taxes_received: Money,
    /// B_PG1P, subsidies on products paid (D31).
    pub product_subsidies_paid: Money,
    /// B_PG2P, other subsidies on production paid (D39).
    pub production_subsidies_paid: Money,
    pub property_income_received: Money,
    pub property_income_paid: Money,
    /// T_IGR.
    pub income_taxes_received: Money,
    /// T_IGP.
    pub income_taxes_paid: Money,
    pub social_received: Money,
    pub social_paid: Money,
    pub transfers_received: Money,
    pub transfers_paid: Money,
    pub pension_adjustment: Money,
    /// C_2, individual consumption expenditure.
    pub individual_consumption: Money,
    /// G, collective consumption expenditure.
    pub collective_consumption: Money,
    pub capital_transfers_received: Money,
    pub capital_transfers_paid: Money,
    pub investment: Money,
    pub nonproduced_assets: Money,
    pub liabilities_issued: Money,
}

impl GovernmentSectorInputs {
    fn validate(&self) -> Result<Money, AccountsError> {
        require_non_negative!(self;
            intermediate, fixed_capital_consumption, wages, employer_contributions,
            product_taxes_paid, production_taxes_paid, product_subsidies_received,
            production_subsidies_received, product_taxes_received, production_taxes_received,
            product_subsidies_paid, production_subsidies_paid, property_income_received,
            property_income_paid, income_taxes_received, income_taxes_paid, social_received,
            social_paid, transfers_received, transfers_paid, individual_consumption,
            collective_consumption, capital_transfers_received, capital_transfers_paid,
            investment,
        );
        self.output.resolve()
    }

    /// T_PGR.
    pub fn taxes_on_production_received(&self) -> Money {
        self.product_taxes_received + self.production_taxes_received
    }

    /// B_PGP.
    pub fn subsidies_paid(&self) -> Money {
        self.product_subsidies_paid + self.production_subsidies_paid
    }
}

/// Mutual flows between the home country and the rest of the world, seen from RS.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RestOfWorldInputs {
    /// M, imports of the home country.
    pub imports: Money,
    /// X, exports of the home country.
    pub exports: Money,
    pub wages_received: Money,
    pub wages_paid: Money,
    pub employer_contributions_received: Money,
    pub employer_contributions_paid: Money,
    /// T_PR1R.
    pub product_taxes_received: Money,
    /// T_PR2R.
    pub production_taxes_received: Money,
    /// B_PR1P.
    pub product_subsidies_paid: Money,
    /// B_PR2P.
    pub production_subsidies_paid: Money,
    pub property_income_received: Money,
    pub property_income_paid: Money,
    pub social_received: Money,
    pub social_paid: Money,
    pub transfers_received: Money,
    pub transfers_paid: Money,
    pub capital_transfers_received: Money,
    pub capital_transfers_paid: Money,
    pub nonproduced_assets: Money,
    pub liabilities_issued: Money,
}

impl RestOfWorldInputs {
    fn validate(&self) -> Result<(), AccountsError> {
        require_non_negative!(self;
            imports, exports, wages_received, wages_paid, employer_contributions_received,
            employer_contributions_paid, product_taxes_received, production_taxes_received,
            product_subsidies_paid, production_subsidies_paid, property_income_received,
            property_income_paid, social_received, social_paid, transfers_received,
            transfers_paid, capital_transfers_received, capital_transfers_paid,
        );
        Ok(())
    }
}

/// Balancing items of one sector's chain.
///
/// For the rest of the world `operating_surplus` holds the external balance EB
/// and `primary_income`, `disposable_income` and `net_saving` all hold the
/// balance of payments BP; `gva` and `nva` are zero.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SectorResult {
    pub gva: Money,
    pub nva: Money,
    pub operating_surplus: Money,
    pub primary_income: Money,
    pub disposable_income: Money,
    pub net_saving: Money,
    pub net_lending: Money,
    pub financial_assets_change: Money,
}

impl SectorResult {
    pub fn external_balance(&self) -> Money {
        self.operating_surplus
    }

    pub fn balance_of_payments(&self) -> Money {
        self.disposable_income
    }
}

/// Chain result together with the account nodes that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SectorAccounts {
    pub sector: Sector,
    pub result: SectorResult,
    pub nodes: Vec<AccountNode>,
}

impl SectorAccounts {
    pub fn node(&self, name: &str) -> Option<&AccountNode> {
        self.nodes.iter().find(|n| n.name == name)
    }

    /// Pairs of (equation value, node balance) for every balancing item the
    /// chain exposes as a node.
    pub fn node_checks(&self) -> Vec<(&'static str, Money, Money)> {
        let r = &self.result;
        let bal = |name: &str| self.node(name).map(AccountNode::balance).unwrap_or_default();
        if self.sector == Sector::RS {
            vec![
                ("EB", r.external_balance(), bal("GIA")),
                ("BP", r.balance_of_payments(), bal("ASUA")),
                ("Y", r.net_lending, bal("CA")),
                ("dA", r.financial_assets_change, bal("FA")),
            ]
        } else {
            vec![
                ("GVA", r.gva, bal("PA")),
                ("O", r.operating_surplus, bal("GIA")),
                ("BPI", r.primary_income, bal("APIA")),
                ("DI", r.disposable_income, bal("SDIA")),
                ("S", r.net_saving, bal("UDIA")),
                ("Y", r.net_lending, bal("CA")),
                ("dA", r.financial_assets_change, bal("FA")),
            ]
        }
    }
}

/// Production account: `GVA = output - H`, `NVA = GVA - P`.
pub fn production_account(output: Money, intermediate: Money, fixed_capital: Money) -> (Money, Money) {
    let gva = output - intermediate;
    (gva, gva - fixed_capital)
}

fn capital_and_financial(
    net_saving: Money,
    fixed_capital_consumption: Money,
    capital_transfers_received: Money,
    capital_transfers_paid: Money,
    investment: Money,
    nonproduced_assets: Money,
    liabilities_issued: Money,
) -> (AccountNode, AccountNode) {
    let ca = AccountNode::new("CA", "Y")
        .inflow("S", net_saving)
        .inflow("P", fixed_capital_consumption)
        .inflow("B_CR", capital_transfers_received)
        .outflow("B_CP", capital_transfers_paid)
        .outflow("I_O", investment)
        .outflow("N_An", nonproduced_assets);
    let fa = AccountNode::new("FA", "dA")
        .inflow("Y", ca.balance())
        .inflow("dPsi", liabilities_issued);
    (ca, fa)
}

/// NFS or FFS account chain.
pub fn firm_chain(sector: Sector, inputs: &FirmSectorInputs) -> Result<SectorAccounts, AccountsError> {
    let output = inputs.validate()?;
    let i = inputs;

    let (gva, nva) = production_account(output, i.intermediate, i.fixed_capital_consumption);
    let o = output + i.product_subsidies + i.production_subsidies
        - i.intermediate
        - i.wages
        - i.employer_contributions
        - i.product_taxes
        - i.production_taxes
        - i.fixed_capital_consumption;
    let bpi = o + i.property_income_received - i.property_income_paid;
    let di = bpi + i.social_received + i.transfers_received
        - i.social_paid
        - i.transfers_paid
        - i.income_taxes;
    let s = di + i.pension_adjustment;
    let y = s + i.fixed_capital_consumption + (i.capital_transfers_received - i.capital_transfers_paid)
        - i.investment
        - i.nonproduced_assets;
    let da = y + i.liabilities_issued;

    let pa = AccountNode::new("PA", "GVA")
        .inflow("P1", output)
        .outflow("H", i.intermediate);
    let gia = AccountNode::new("GIA", "O")
        .inflow("P1", output)
        .inflow("B_P1", i.product_subsidies)
        .inflow("B_P2", i.production_subsidies)
        .outflow("H", i.intermediate)
        .outflow("W", i.wages)
        .outflow("T_S", i.employer_contributions)
        .outflow("T_P1", i.product_taxes)
        .outflow("T_P2", i.production_taxes)
        .outflow("P", i.fixed_capital_consumption);
    let apia = AccountNode::new("APIA", "BPI")
        .inflow("O", gia.balance())
        .inflow("PI_R", i.property_income_received)
        .outflow("PI_P", i.property_income_paid);
    let sdia = AccountNode::new("SDIA", "DI")
        .inflow("BPI", apia.balance())
        .inflow("B_SR", i.social_received)
        .inflow("N_R", i.transfers_received)
        .outflow("B_SP", i.social_paid)
        .outflow("N_P", i.transfers_paid)
        .outflow("T_I", i.income_taxes);
    let udia = AccountNode::new("UDIA", "S")
        .inflow("DI", sdia.balance())
        .inflow("D8n", i.pension_adjustment);
    let (ca, fa) = capital_and_financial(
        udia.balance(),
        i.fixed_capital_consumption,
        i.capital_transfers_received,
        i.capital_transfers_paid,
        i.investment,
        i.nonproduced_assets,
        i.liabilities_issued,
    );

    Ok(SectorAccounts {
        sector,
        result: SectorResult {
            gva,
            nva,
            operating_surplus: o,
            primary_income: bpi,
            disposable_income: di,
            net_saving: s,
            net_lending: y,
            financial_assets_change: da,
        },
        nodes: vec![pa, gia, apia, sdia, udia, ca, fa],
    })
}

/// Household (HS + NPISH) account chain.
pub fn household_chain(inputs: &HouseholdSectorInputs) -> Result<SectorAccounts, AccountsError> {
    let output = inputs.validate()?;
    let i = inputs;

    let (gva, nva) = production_account(output, i.intermediate, i.fixed_capital_consumption);
    let o = output + i.product_subsidies + i.production_subsidies
        - i.intermediate
        - i.wages_paid
        - i.employer_contributions_paid
        - i.product_taxes
        - i.production_taxes
        - i.fixed_capital_consumption;
    let bpi = o + i.wages_received + i.employer_contributions_received
        + (i.property_income_received - i.property_income_paid);
    let di = bpi
        + (i.social_received - i.social_paid)
        + (i.transfers_received - i.transfers_paid)
        - i.income_taxes
        + i.pension_adjustment;
    let s = di - i.consumption;
    let y = s + i.fixed_capital_consumption + (i.capital_transfers_received - i.capital_transfers_paid)
        - i.investment
        - i.nonproduced_assets;
    let da = y + i.liabilities_issued;

    let pa = AccountNode::new("PA", "GVA")
        .inflow("P1", output)
        .outflow("H", i.intermediate);
    let gia = AccountNode::new("GIA", "O")
        .inflow("P1", output)
        .inflow("B_P1", i.product_subsidies)
        .inflow("B_P2", i.production_subsidies)
        .outflow("H", i.intermediate)
        .outflow("W_HP", i.wages_paid)
        .outflow("T_SP", i.employer_contributions_paid)
        .outflow("T_P1", i.product_taxes)
        .outflow("T_P2", i.production_taxes)
        .outflow("P", i.fixed_capital_consumption);
    let apia = AccountNode::new("APIA", "BPI")
        .inflow("O", gia.balance())
        .inflow("W_T", i.wages_received)
        .inflow("T_SR", i.employer_contributions_received)
        .inflow("PI_R", i.property_income_received)
        .outflow("PI_P", i.property_income_paid);
    let sdia = AccountNode::new("SDIA", "DI")
        .inflow("BPI", apia.balance())
        .inflow("B_SR", i.social_received)
        .inflow("N_R", i.transfers_received)
        .inflow("D8n", i.pension_adjustment)
        .outflow("B_SP", i.social_paid)
        .outflow("N_P", i.transfers_paid)
        .outflow("T_I", i.income_taxes);
    let udia = AccountNode::new("UDIA", "S")
        .inflow("DI", sdia.balance())
        .outflow("C_1", i.consumption);
    let (ca, fa) = capital_and_financial(
        udia.balance(),
        i.fixed_capital_consumption,
        i.capital_transfers_received,
        i.capital_transfers_paid,
        i.investment,
        i.nonproduced_assets,
        i.liabilities_issued,
    );

    Ok(SectorAccounts {
        sector: Sector::HS,
        result: SectorResult {
            gva,
            nva,
            operating_surplus: o,
            primary_income: bpi,
            disposable_income: di,
            net_saving: s,
            net_lending: y,
            financial_assets_change: da,
        },
        nodes: vec![pa, gia, apia, sdia, udia, ca, fa],
    })
}

/// General government account chain.
pub fn government_chain(inputs: &GovernmentSectorInputs) -> Result<SectorAccounts, AccountsError> {
    let output = inputs.validate()?;
    let i = inputs;

    let (gva, nva) = production_account(output, i.intermediate, i.fixed_capital_consumption);
    let o = output + i.product_subsidies_received + i.production_subsidies_received
        - i.intermediate
        - i.employer_contributions
        - i.product_taxes_paid
        - i.production_taxes_paid
        - i.fixed_capital_consumption
        - i.wages;
    let bpi = o + i.taxes_on_production_received() - i.subsidies_paid()
        + (i.property_income_received - i.property_income_paid);
    let di = bpi + (i.income_taxes_received - i.income_taxes_paid)
        + (i.social_received - i.social_paid)
        + (i.transfers_received - i.transfers_paid)
        + i.pension_adjustment;
    let s = di - i.individual_consumption - i.collective_consumption;
    let y = s + i.fixed_capital_consumption + (i.capital_transfers_received - i.capital_transfers_paid)
        - i.investment
        - i.nonproduced_assets;
    let da = y + i.liabilities_issued;

    let pa = AccountNode::new("PA", "GVA")
        .inflow("P1", output)
        .outflow("H", i.intermediate);
    let gia = AccountNode::new("GIA", "O")
        .inflow("P1", output)
        .inflow("B_PG1R", i.product_subsidies_received)
        .inflow("B_PG2R", i.production_subsidies_received)
        .outflow("H", i.intermediate)
        .outflow("W", i.wages)
        .outflow("T_SGP", i.employer_contributions)
        .outflow("T_PG1P", i.product_taxes_paid)
        .outflow("T_PG2P", i.production_taxes_paid)
        .outflow("P", i.fixed_capital_consumption);
    let apia = AccountNode::new("APIA", "BPI")
        .inflow("O", gia.balance())
        .inflow("T_PG1R", i.product_taxes_received)
        .inflow("T_PG2R", i.production_taxes_received)
        .inflow("PI_R", i.property_income_received)
        .outflow("B_PG1P", i.product_subsidies_paid)
        .outflow("B_PG2P", i.production_subsidies_paid)
        .outflow("PI_P", i.property_income_paid);
    let sdia = AccountNode::new("SDIA", "DI")
        .inflow("BPI", apia.balance())
        .inflow("T_IGR", i.income_taxes_received)
        .inflow("B_SR", i.social_received)
        .inflow("N_R", i.transfers_received)
        .inflow("D8n", i.pension_adjustment)
        .outflow("T_IGP", i.income_taxes_paid)
        .outflow("B_SP", i.social_paid)
        .outflow("N_P", i.transfers_paid);
    let udia = AccountNode::new("UDIA", "S")
        .inflow("DI", sdia.balance())
        .outflow("C_2", i.individual_consumption)
        .outflow("G", i.collective_consumption);
    let (ca, fa) = capital_and_financial(
        udia.balance(),
        i.fixed_capital_consumption,
        i.capital_transfers_received,
        i.capital_transfers_paid,
        i.investment,
        i.nonproduced_assets,
        i.liabilities_issued,
    );

    Ok(SectorAccounts {
        sector: Sector::GS,
        result: SectorResult {
            gva,
            nva,
            operating_surplus: o,
            primary_income: bpi,
            disposable_income: di,
            net_saving: s,
            net_lending: y,
            financial_assets_change: da,
        },
        nodes: vec![pa, gia, apia, sdia, udia, ca, fa],
    })
}

/// Rest-of-the-world chain: GIA gives EB, the consolidated ASUA gives BP.
pub fn rest_of_world_chain(inputs: &RestOfWorldInputs) -> Result<SectorAccounts, AccountsError> {
    inputs.validate()?;
    let i = inputs;

    let eb = i.imports - i.exports;
    let bp = eb
        + (i.wages_received - i.wages_paid)
        + (i.employer_contributions_received - i.employer_contributions_paid)
        + (i.property_income_received - i.property_income_paid)
        + (i.product_taxes_received + i.production_taxes_received)
        + (i.social_received - i.social_paid)
        + (i.transfers_received - i.transfers_paid)
        - (i.product_subsidies_paid + i.production_subsidies_paid);
    let y = bp + (i.capital_transfers_received - i.capital_transfers_paid) - i.nonproduced_assets;
    let da = y + i.liabilities_issued;

    let gia = AccountNode::new("GIA", "EB")
        .inflow("M", i.imports)
        .outflow("X", i.exports);
    let asua = AccountNode::new("ASUA", "BP")
        .inflow("EB", gia.balance())
        .inflow("W_RR", i.wages_received)
        .inflow("T_SRR", i.employer_contributions_received)
        .inflow("PI_RR", i.property_income_received)
        .inflow("T_PR1R", i.product_taxes_received)
        .inflow("T_PR2R", i.production_taxes_received)
        .inflow("B_SRR", i.social_received)
        .inflow("N_RR", i.transfers_received)
        .outflow("W_RP", i.wages_paid)
        .outflow("T_SRP", i.employer_contributions_paid)
        .outflow("PI_RP", i.property_income_paid)
        .outflow("B_PR1P", i.product_subsidies_paid)
        .outflow("B_PR2P", i.production_subsidies_paid)
        .outflow("B_SRP", i.social_paid)
        .outflow("N_RP", i.transfers_paid);
    let ca = AccountNode::new("CA", "Y")
        .inflow("BP", asua.balance())
        .inflow("B_CRR", i.capital_transfers_received)
        .outflow("B_CRP", i.capital_transfers_paid)
        .outflow("N_ARn", i.nonproduced_assets);
    let fa = AccountNode::new("FA", "dA")
        .inflow("Y", ca.balance())
        .inflow("dPsi", i.liabilities_issued);

    Ok(SectorAccounts {
        sector: Sector::RS,
        result: SectorResult {
            gva: Money::ZERO,
            nva: Money::ZERO,
            operating_surplus: eb,
            primary_income: bp,
            disposable_income: bp,
            net_saving: bp,
            net_lending: y,
            financial_assets_change: da,
        },
        nodes: vec![gia, asua, ca, fa],
    })
}
