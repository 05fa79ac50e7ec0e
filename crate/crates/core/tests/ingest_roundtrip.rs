mod common;

use proptest::prelude::*;
use sfc_core::ingest::{fixture_2011, Dataset};
use sfc_core::ledger::{Direction, ItemCode, Sector};
use sfc_core::{IngestError, Money};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn csv_round_trip(year in common::economy_year()) {
        let d = Dataset::single(year);
        let back = Dataset::from_csv_reader(d.to_csv_string().as_bytes()).unwrap();
        prop_assert_eq!(back.rows(), d.rows());
    }

    #[test]
    fn json_round_trip(year in common::economy_year()) {
        let d = Dataset::single(year);
        let back = Dataset::from_json_str(&d.to_json_string()).unwrap();
        prop_assert_eq!(back.rows(), d.rows());
    }
}

#[test]
fn fixture_survives_a_file_round_trip() {
    let dir = tempdir();
    let path = dir.join("fixture.csv");
    let d = Dataset::single(fixture_2011());
    d.save(&path).unwrap();
    let back = Dataset::load(&path).unwrap();
    assert_eq!(back.rows(), d.rows());
    std::fs::remove_dir_all(dir).unwrap();
}

fn tempdir() -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("sfc-ingest-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn unknown_item_is_a_hard_error() {
    let text = "year,sector,item,direction,value\n2011,HS,D99,paid,1\n";
    assert!(matches!(
        Dataset::from_csv_reader(text.as_bytes()),
        Err(IngestError::Field { field: "item", .. })
    ));
}

#[test]
fn duplicate_key_is_rejected() {
    let text = "year,sector,item,direction,value\n2011,HS,D5,paid,1\n2011,HS,D5,paid,2\n";
    assert!(matches!(
        Dataset::from_csv_reader(text.as_bytes()),
        Err(IngestError::Duplicate { .. })
    ));
}

#[test]
fn fixture_headline_values() {
    let f = fixture_2011();
    let m = Money::from_millions;
    assert_eq!(f.get(Sector::RS, ItemCode::B12, Direction::Net), m(2882));
    assert_eq!(f.total(ItemCode::K2, Direction::Net), Money::ZERO);
}
