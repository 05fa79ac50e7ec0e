use std::collections::BTreeMap;

use proptest::prelude::*;
use sfc_core::matrix::{display_symbol, parse, parse_strict, to_equations, to_flow_graph, to_taccounts, TransactionsMatrix};
use sfc_core::Money;

const SYMBOLS: [&str; 8] = ["C", "G", "W", "T", "dH", "dL", "Rm", "X"];

#[derive(Clone, Debug)]
struct Source {
    text: String,
    rows: usize,
    symbols: Vec<String>,
}

fn source() -> impl Strategy<Value = Source> {
    (2usize..6)
        .prop_flat_map(|n| {
            (
                Just(n),
                prop::collection::vec((0..n, 1..n, 0..SYMBOLS.len()), 1..12),
                prop::collection::vec((0..n, 0..SYMBOLS.len()), 0..3),
            )
        })
        .prop_map(|(n, rows, memos)| {
            let sectors: Vec<String> = (0..n).map(|i| format!("S{i}")).collect();
            let mut text = format!("matrix \"Random\"\nsectors: {}\n", sectors.join(", "));
            let mut symbols = Vec::new();
            for (r, (payer, offset, sym)) in rows.iter().enumerate() {
                let receiver = (payer + offset) % n;
                let sym = SYMBOLS[*sym];
                symbols.push(sym.to_string());
                text += &format!(
                    "row \"r{r}\": {}=-{sym}, {}=+{sym}\n",
                    sectors[*payer], sectors[receiver]
                );
            }
            for (m, (s, sym)) in memos.iter().enumerate() {
                text += &format!("# memo\nrow \"m{m}\": {}=[{}]\n", sectors[*s], SYMBOLS[*sym]);
            }
            Source { text, rows: rows.len(), symbols }
        })
}

fn counts<'a>(it: impl Iterator<Item = &'a String>) -> BTreeMap<&'a str, usize> {
    let mut m = BTreeMap::new();
    for s in it {
        *m.entry(s.as_str()).or_default() += 1;
    }
    m
}

fn parsed(src: &Source) -> TransactionsMatrix {
    parse(&src.text).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn equations_match_taccounts(src in source()) {
        let m = parsed(&src);
        let eqs = to_equations(&m);
        let ts: Vec<_> = to_taccounts(&m).into_iter().filter(|t| !t.is_empty()).collect();
        prop_assert_eq!(eqs.len(), ts.len());
        for (e, t) in eqs.iter().zip(&ts) {
            prop_assert_eq!(&e.sector, &t.sector);
            prop_assert_eq!(&e.inflows, &t.inflows);
            prop_assert_eq!(&e.outflows, &t.outflows);
            let lhs: Vec<String> = t.inflows.iter().map(|s| display_symbol(s)).collect();
            let expected = if lhs.is_empty() { "0".to_string() } else { lhs.join(" + ") };
            prop_assert_eq!(e.lhs(), expected);
        }
    }

    #[test]
    fn every_edge_is_one_outflow_and_one_inflow(src in source()) {
        let m = parsed(&src);
        let g = to_flow_graph(&m).unwrap();
        prop_assert_eq!(g.edges.len(), src.rows);
        for t in to_taccounts(&m) {
            let out_edges: Vec<String> = g.edges.iter().filter(|e| e.from == t.sector).map(|e| e.symbol.clone()).collect();
            let in_edges: Vec<String> = g.edges.iter().filter(|e| e.to == t.sector).map(|e| e.symbol.clone()).collect();
            prop_assert_eq!(counts(out_edges.iter()), counts(t.outflows.iter()));
            prop_assert_eq!(counts(in_edges.iter()), counts(t.inflows.iter()));
        }
        let dot = g.to_dot();
        prop_assert_eq!(dot.matches(" -> ").count(), src.rows);
    }

    #[test]
    fn total_inflow_equals_total_outflow(
        src in source(),
        values in prop::collection::vec(0i64..1_000_000, SYMBOLS.len()),
    ) {
        let m = parsed(&src);
        let values: BTreeMap<String, Money> = SYMBOLS
            .iter()
            .zip(values)
            .map(|(s, v)| (s.to_string(), Money::from_cents(v)))
            .collect();
        let nodes: Vec<_> = to_taccounts(&m).iter().map(|t| t.with_values(&values)).collect();
        let inflow: Money = nodes.iter().map(|n| n.total_inflow()).sum();
        let outflow: Money = nodes.iter().map(|n| n.total_outflow()).sum();
        prop_assert_eq!(inflow, outflow);
        let used: Money = src.symbols.iter().map(|s| values[s]).sum();
        prop_assert_eq!(inflow, used);
    }

    #[test]
    fn unbalanced_row_is_rejected(src in source()) {
        let broken = src.text.replacen("=+", "=-", 1);
        prop_assert!(parse(&broken).is_err());
    }
}

#[test]
fn one_sided_column_fails_strict_parse_only() {
    let text = "sectors: A, B\nrow \"x\": A=-C, B=+C\n";
    assert!(parse(text).is_ok());
    assert!(parse_strict(text).is_err());
}
