//! Transactions-matrix language and its three equivalent views.
//!
//! ```text
//! # comments start with a hash
//! matrix "Demo"
//! sectors: HS, FS, GS
//! row "Consumption": HS=-C, FS=+C
//! row "Output": FS=[Y]
//! ```
//!
//! Every ordinary row must cancel symbolically: each symbol appears as often
//! with `+` as with `-`. Rows written with brackets are memo rows and are
//! excluded from all balances. A symbol `d` followed by an uppercase letter
//! is rendered with a delta, so `dH` prints as `ΔH`.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::error::MatrixError;
use crate::ledger::AccountNode;
use crate::money::Money;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Entry {
    pub sector: String,
    pub sign: Sign,
    pub symbol: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Row {
    pub label: String,
    pub entries: Vec<Entry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MemoRow {
    pub label: String,
    /// (sector, symbol) pairs written in brackets.
    pub entries: Vec<(String, String)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TransactionsMatrix {
    pub name: String,
    pub sectors: Vec<String>,
    pub rows: Vec<Row>,
    pub memo_rows: Vec<MemoRow>,
}

/// Renders a symbol for display, spelling a leading `d` before an uppercase
/// letter as `Δ`.
pub fn display_symbol(symbol: &str) -> String {
    let mut chars = symbol.chars();
    match (chars.next(), chars.clone().next()) {
        (Some('d'), Some(c)) if c.is_ascii_uppercase() => format!("Δ{}", chars.as_str()),
        _ => symbol.to_string(),
    }
}

struct Cursor<'a> {
    line: usize,
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(line: usize, text: &'a str) -> Self {
        Cursor { line, text, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn column(&self) -> usize {
        self.text[..self.pos].chars().count() + 1
    }

    fn error(&self, message: impl Into<String>) -> MatrixError {
        MatrixError::Syntax {
            line: self.line,
            column: self.column(),
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), MatrixError> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{token}`")))
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.rest().is_empty()
    }

    fn quoted(&mut self) -> Result<String, MatrixError> {
        self.expect("\"")?;
        let rest = self.rest();
        match rest.find('"') {
            Some(end) => {
                let s = rest[..end].to_string();
                self.pos += end + 1;
                Ok(s)
            }
            None => Err(self.error("unterminated string")),
        }
    }

    fn ident(&mut self, what: &str) -> Result<String, MatrixError> {
        self.skip_ws();
        let rest = self.rest();
        let len = rest
            .char_indices()
            .take_while(|&(i, c)| c == '_' || c.is_alphanumeric() && (i > 0 || !c.is_numeric()))
            .map(|(i, c)| i + c.len_utf8())
            .last()
            .unwrap_or(0);
        if len == 0 {
            return Err(self.error(format!("expected {what}")));
        }
        self.pos += len;
        Ok(rest[..len].to_string())
    }
}

fn strip_comment(line: &str) -> &str {
    let mut in_string = false;
    for (i, c) in line.char_indices() {
        match c {
            '"' => in_string = !in_string,
            '#' if !in_string => return &line[..i],
            _ => {}
        }
    }
    line
}

enum Cell {
    Signed(Sign, String),
    Memo(String),
}

/// Parses a matrix and checks that every ordinary row cancels.
pub fn parse(text: &str) -> Result<TransactionsMatrix, MatrixError> {
    let mut m = TransactionsMatrix::default();
    let mut seen_name = false;
    let mut seen_sectors = false;
    for (i, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        let mut c = Cursor::new(i + 1, line);
        if c.at_end() {
            continue;
        }
        if c.eat("matrix") {
            if seen_name || seen_sectors || !m.rows.is_empty() || !m.memo_rows.is_empty() {
                return Err(c.error("`matrix` must come first and only once"));
            }
            m.name = c.quoted()?;
            seen_name = true;
        } else if c.eat("sectors") {
            if seen_sectors {
                return Err(c.error("sectors declared twice"));
            }
            c.expect(":")?;
            loop {
                let s = c.ident("sector label")?;
                if m.sectors.contains(&s) {
                    return Err(c.error(format!("duplicate sector `{s}`")));
                }
                m.sectors.push(s);
                if !c.eat(",") {
                    break;
                }
            }
            seen_sectors = true;
        } else if c.eat("row") {
            if !seen_sectors {
                return Err(c.error("rows must follow the sectors line"));
            }
            parse_row(&mut c, &mut m)?;
        } else {
            return Err(c.error("expected `matrix`, `sectors` or `row`"));
        }
        if !c.at_end() {
            return Err(c.error("unexpected trailing input"));
        }
    }
    for row in &m.rows {
        check_row(row)?;
    }
    Ok(m)
}

/// Parses and additionally rejects columns that cannot balance.
pub fn parse_strict(text: &str) -> Result<TransactionsMatrix, MatrixError> {
    let m = parse(text)?;
    check_columns(&m)?;
    Ok(m)
}

fn parse_row(c: &mut Cursor<'_>, m: &mut TransactionsMatrix) -> Result<(), MatrixError> {
    let label = c.quoted()?;
    if m.rows.iter().any(|r| r.label == label) || m.memo_rows.iter().any(|r| r.label == label) {
        return Err(c.error(format!("duplicate row \"{label}\"")));
    }
    c.expect(":")?;
    let mut cells: Vec<(String, Cell)> = Vec::new();
    loop {
        c.skip_ws();
        let start = c.pos;
        let sector = c.ident("sector label")?;
        if !m.sectors.contains(&sector) {
            c.pos = start;
            return Err(c.error(format!("undeclared sector `{sector}`")));
        }
        if cells.iter().any(|(s, _)| *s == sector) {
            c.pos = start;
            return Err(c.error(format!("sector `{sector}` appears twice in the row")));
        }
        c.expect("=")?;
        let cell = if c.eat("[") {
            let sym = c.ident("symbol")?;
            c.expect("]")?;
            Cell::Memo(sym)
        } else {
            let sign = if c.eat("-") || c.eat("−") {
                Sign::Minus
            } else {
                c.eat("+");
                Sign::Plus
            };
            Cell::Signed(sign, c.ident("symbol")?)
        };
        cells.push((sector, cell));
        if !c.eat(",") {
            break;
        }
    }
    let memo = cells.iter().filter(|(_, cell)| matches!(cell, Cell::Memo(_))).count();
    if memo == cells.len() {
        m.memo_rows.push(MemoRow {
            label,
            entries: cells
                .into_iter()
                .map(|(s, cell)| match cell {
                    Cell::Memo(sym) => (s, sym),
                    Cell::Signed(..) => unreachable!(),
                })
                .collect(),
        });
    } else if memo > 0 {
        return Err(c.error("a row cannot mix memo and ordinary entries"));
    } else {
        m.rows.push(Row {
            label,
            entries: cells
                .into_iter()
                .map(|(sector, cell)| match cell {
                    Cell::Signed(sign, symbol) => Entry {
                        sector,
                        sign,
                        symbol,
                    },
                    Cell::Memo(_) => unreachable!(),
                })
                .collect(),
        });
    }
    Ok(())
}

fn check_row(row: &Row) -> Result<(), MatrixError> {
    let mut count: BTreeMap<&str, i64> = BTreeMap::new();
    for e in &row.entries {
        *count.entry(&e.symbol).or_default() += match e.sign {
            Sign::Plus => 1,
            Sign::Minus => -1,
        };
    }
    let open: Vec<String> = count
        .iter()
        .filter(|(_, &n)| n != 0)
        .map(|(s, &n)| format!("{s} is left with {n:+}"))
        .collect();
    if open.is_empty() {
        Ok(())
    } else {
        Err(MatrixError::RowBalance {
            row: row.label.clone(),
            detail: open.join(", "),
        })
    }
}

/// Columns sum to zero only as equations, so the symbolic check is whether a
/// column has entries on both sides. A one-sided column can never balance.
pub fn check_columns(m: &TransactionsMatrix) -> Result<(), MatrixError> {
    for sector in &m.sectors {
        let signs: Vec<Sign> = column(m, sector).map(|e| e.sign).collect();
        if signs.is_empty() {
            continue;
        }
        let plus = signs.contains(&Sign::Plus);
        let minus = signs.contains(&Sign::Minus);
        if !(plus && minus) {
            return Err(MatrixError::ColumnBalance {
                sector: sector.clone(),
                detail: format!(
                    "all entries are {}",
                    if plus { "inflows" } else { "outflows" }
                ),
            });
        }
    }
    Ok(())
}

fn column<'a>(m: &'a TransactionsMatrix, sector: &'a str) -> impl Iterator<Item = &'a Entry> + 'a {
    m.rows
        .iter()
        .flat_map(|r| r.entries.iter())
        .filter(move |e| e.sector == sector)
}

/// One sector column read as `inflows = outflows`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Equation {
    pub sector: String,
    pub inflows: Vec<String>,
    pub outflows: Vec<String>,
}

fn side(symbols: &[String]) -> String {
    if symbols.is_empty() {
        "0".to_string()
    } else {
        symbols
            .iter()
            .map(|s| display_symbol(s))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl Equation {
    pub fn lhs(&self) -> String {
        side(&self.inflows)
    }

    pub fn rhs(&self) -> String {
        side(&self.outflows)
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} = {}", self.sector, self.lhs(), self.rhs())
    }
}

/// Symbolic T-account of a sector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TAccount {
    pub sector: String,
    pub inflows: Vec<String>,
    pub outflows: Vec<String>,
}

impl TAccount {
    /// Numeric account node for given symbol values. Missing symbols count as zero.
    pub fn with_values(&self, values: &BTreeMap<String, Money>) -> AccountNode {
        let value = |s: &String| values.get(s).copied().unwrap_or_default();
        let mut node = AccountNode::new(self.sector.clone(), "");
        for s in &self.inflows {
            node = node.inflow(display_symbol(s), value(s));
        }
        for s in &self.outflows {
            node = node.outflow(display_symbol(s), value(s));
        }
        node
    }

    pub fn is_empty(&self) -> bool {
        self.inflows.is_empty() && self.outflows.is_empty()
    }
}

fn split_column(m: &TransactionsMatrix, sector: &str) -> (Vec<String>, Vec<String>) {
    let mut inflows = Vec::new();
    let mut outflows = Vec::new();
    for e in column(m, sector) {
        match e.sign {
            Sign::Plus => inflows.push(e.symbol.clone()),
            Sign::Minus => outflows.push(e.symbol.clone()),
        }
    }
    (inflows, outflows)
}

pub fn to_equations(m: &TransactionsMatrix) -> Vec<Equation> {
    m.sectors
        .iter()
        .filter_map(|s| {
            let (inflows, outflows) = split_column(m, s);
            (!inflows.is_empty() || !outflows.is_empty()).then(|| Equation {
                sector: s.clone(),
                inflows,
                outflows,
            })
        })
        .collect()
}

pub fn to_taccounts(m: &TransactionsMatrix) -> Vec<TAccount> {
    m.sectors
        .iter()
        .map(|s| {
            let (inflows, outflows) = split_column(m, s);
            TAccount {
                sector: s.clone(),
                inflows,
                outflows,
            }
        })
        .collect()
}

/// Aligned text rendering, inflows on the left and outflows on the right.
pub fn render_taccounts(accounts: &[TAccount]) -> String {
    let mut out = String::new();
    for (n, a) in accounts.iter().enumerate() {
        if n > 0 {
            out.push('\n');
        }
        let left: Vec<String> = a.inflows.iter().map(|s| display_symbol(s)).collect();
        let right: Vec<String> = a.outflows.iter().map(|s| display_symbol(s)).collect();
        let width = left
            .iter()
            .chain(right.iter())
            .chain(std::iter::once(&a.sector))
            .map(|s| s.chars().count())
            .max()
            .unwrap_or(0)
            .max(3);
        let _ = writeln!(out, "{:^w$}", a.sector, w = 2 * width + 3);
        let _ = writeln!(out, "{}-+-{}", "-".repeat(width), "-".repeat(width));
        for i in 0..left.len().max(right.len()) {
            let l = left.get(i).map(String::as_str).unwrap_or("");
            let r = right.get(i).map(String::as_str).unwrap_or("");
            let line = format!("{l:<width$} | {r}");
            let _ = writeln!(out, "{}", line.trim_end());
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub from: String,
    pub to: String,
    pub symbol: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlowGraph {
    pub name: String,
    pub nodes: Vec<String>,
    pub edges: Vec<Edge>,
}

fn dot_id(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

impl FlowGraph {
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph {} {{", dot_id(&self.name));
        for n in &self.nodes {
            let _ = writeln!(out, "  {};", dot_id(n));
        }
        for e in &self.edges {
            let _ = writeln!(
                out,
                "  {} -> {} [label={}];",
                dot_id(&e.from),
                dot_id(&e.to),
                dot_id(&display_symbol(&e.symbol))
            );
        }
        out.push_str("}\n");
        out
    }
}

/// One edge per row, from the payer (negative entry) to the receiver.
pub fn to_flow_graph(m: &TransactionsMatrix) -> Result<FlowGraph, MatrixError> {
    let mut edges = Vec::with_capacity(m.rows.len());
    for row in &m.rows {
        let payers: Vec<&Entry> = row.entries.iter().filter(|e| e.sign == Sign::Minus).collect();
        let receivers: Vec<&Entry> = row.entries.iter().filter(|e| e.sign == Sign::Plus).collect();
        match (payers.as_slice(), receivers.as_slice()) {
            ([p], [r]) => edges.push(Edge {
                from: p.sector.clone(),
                to: r.sector.clone(),
                symbol: p.symbol.clone(),
            }),
            _ => {
                return Err(MatrixError::UnsupportedShape {
                    row: row.label.clone(),
                })
            }
        }
    }
    Ok(FlowGraph {
        name: m.name.clone(),
        nodes: m.sectors.clone(),
        edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const DEMO: &str = r#"
# three-sector demonstration economy
matrix "Demo"
sectors: HS, FS, GS
row "Consumption": HS=-C, FS=+C
row "Government expenditures": FS=+G, GS=-G
row "Output": FS=[Y]
row "Factor income": HS=+W, FS=-W
row "Taxes": HS=-T, GS=+T
row "Change in money stock": HS=-dH, GS=+dH
"#;

    #[test]
    fn parses_demo() {
        let m = parse(DEMO).unwrap();
        assert_eq!(m.name, "Demo");
        assert_eq!(m.sectors, ["HS", "FS", "GS"]);
        assert_eq!(m.rows.len(), 5);
        assert_eq!(m.memo_rows.len(), 1);
        assert!(check_columns(&m).is_ok());
    }

    #[test]
    fn equations_of_demo() {
        let eqs: Vec<String> = to_equations(&parse(DEMO).unwrap())
            .iter()
            .map(ToString::to_string)
            .collect();
        assert_eq!(eqs, ["HS: W = C + T + ΔH", "FS: C + G = W", "GS: T + ΔH = G"]);
    }

    #[test]
    fn taccounts_of_demo() {
        let ts = to_taccounts(&parse(DEMO).unwrap());
        assert_eq!(ts[0].inflows, ["W"]);
        assert_eq!(ts[0].outflows, ["C", "T", "dH"]);
        assert_eq!(ts[2].inflows, ["T", "dH"]);
        assert_eq!(ts[2].outflows, ["G"]);
        let values: BTreeMap<String, Money> = [("W", 10), ("C", 6), ("T", 3), ("dH", 1)]
            .into_iter()
            .map(|(k, v)| (k.to_string(), Money::from_millions(v)))
            .collect();
        assert_eq!(ts[0].with_values(&values).balance(), Money::ZERO);
        let text = render_taccounts(&ts);
        assert!(text.contains("W   | C"));
        assert!(text.contains("    | ΔH"));
    }

    #[test]
    fn graph_of_demo() {
        let g = to_flow_graph(&parse(DEMO).unwrap()).unwrap();
        let edges: Vec<(&str, &str, &str)> = g
            .edges
            .iter()
            .map(|e| (e.from.as_str(), e.to.as_str(), e.symbol.as_str()))
            .collect();
        assert_eq!(
            edges,
            [
                ("HS", "FS", "C"),
                ("GS", "FS", "G"),
                ("FS", "HS", "W"),
                ("HS", "GS", "T"),
                ("HS", "GS", "dH"),
            ]
        );
        let dot = g.to_dot();
        assert!(dot.starts_with("digraph \"Demo\" {"));
        assert!(dot.contains("\"HS\" -> \"GS\" [label=\"ΔH\"];"));
    }

    #[test]
    fn empty_matrix() {
        let m = parse("sectors: A, B\n").unwrap();
        assert!(m.rows.is_empty());
        assert!(to_equations(&m).is_empty());
        assert!(to_taccounts(&m).iter().all(TAccount::is_empty));
        assert!(to_flow_graph(&m).unwrap().edges.is_empty());
    }

    #[test]
    fn unbalanced_row() {
        let err = parse("sectors: HS, GS\nrow \"Taxes\": HS=-T\n").unwrap_err();
        assert!(matches!(err, MatrixError::RowBalance { ref row, .. } if row == "Taxes"));
    }

    #[test]
    fn single_transaction() {
        let m = parse("sectors: A, B\nrow \"x\": A=-X, B=+X").unwrap();
        let eqs: Vec<String> = to_equations(&m).iter().map(ToString::to_string).collect();
        assert_eq!(eqs, ["A: 0 = X", "B: X = 0"]);
        assert_eq!(to_flow_graph(&m).unwrap().edges.len(), 1);
        assert!(matches!(
            check_columns(&m),
            Err(MatrixError::ColumnBalance { ref sector, .. }) if sector == "A"
        ));
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse("sectors: A, B\nrow \"x\": A=-X, Q=+X").unwrap_err();
        assert!(matches!(err, MatrixError::Syntax { line: 2, column: 16, .. }), "{err:?}");
        assert!(matches!(
            parse("sectors A").unwrap_err(),
            MatrixError::Syntax { line: 1, .. }
        ));
        assert!(parse("row \"x\": A=-X").is_err());
        assert!(parse("sectors: A, A").is_err());
        assert!(parse("sectors: A, B\nrow \"x\": A=[X], B=+X").is_err());
        assert!(parse("matrix \"open").is_err());
    }

    #[test]
    fn multi_party_row_is_unsupported_in_graph() {
        let m = parse("sectors: A, B, C\nrow \"split\": A=-X, B=+X, C=-Y, A=+Y").unwrap_err();
        assert!(matches!(m, MatrixError::Syntax { .. }));
        let m = parse("sectors: A, B, C\nrow \"split\": A=-X, B=+X, C=+X, C=-X");
        assert!(m.is_err());
        let m = parse("sectors: A, B, C\nrow \"split\": A=-X, B=-X, C=+X\nrow \"r\": C=+X, A=-X").unwrap_err();
        assert!(matches!(m, MatrixError::RowBalance { .. }));
        let m = parse("sectors: A, B, C, D\nrow \"two pairs\": A=-X, B=+X, C=-Y, D=+Y").unwrap();
        assert!(matches!(
            to_flow_graph(&m),
            Err(MatrixError::UnsupportedShape { .. })
        ));
    }

    #[test]
    fn delta_rendering() {
        assert_eq!(display_symbol("dH"), "ΔH");
        assert_eq!(display_symbol("d"), "d");
        assert_eq!(display_symbol("dx"), "dx");
        assert_eq!(display_symbol("W"), "W");
    }
}
