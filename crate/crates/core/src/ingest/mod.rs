//! Dataset loading and saving.
//!
//! CSV schema: header `year,sector,item,direction,value`, one flow per row,
//! decimal point, no thousands separators. A JSON mirror uses an array of
//! objects with the same field names.

mod fixture;

use std::collections::{BTreeMap, HashSet};
use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

pub use fixture::{fixture_2011, HS_SOCIAL_PAID_AS_PRINTED};

use crate::economy::EconomyYear;
use crate::error::IngestError;
use crate::ledger::{Direction, Flow, ItemCode, Sector};
use crate::money::Money;

pub const CSV_HEADER: [&str; 5] = ["year", "sector", "item", "direction", "value"];

/// A time-indexed set of economy years.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Dataset {
    pub years: BTreeMap<i32, EconomyYear>,
    pub warnings: Vec<String>,
}

/// JSON mirror of one CSV row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatasetRow {
    pub year: i32,
    pub sector: String,
    pub item: String,
    pub direction: String,
    pub value: Money,
}

struct RowBuilder {
    years: BTreeMap<i32, EconomyYear>,
    seen: HashSet<(i32, Sector, ItemCode, Direction)>,
}

impl RowBuilder {
    fn new() -> Self {
        RowBuilder {
            years: BTreeMap::new(),
            seen: HashSet::new(),
        }
    }

    fn push(
        &mut self,
        row: u64,
        year: i32,
        sector: &str,
        item: &str,
        direction: &str,
        value: Money,
    ) -> Result<(), IngestError> {
        let sector: Sector = sector.parse().map_err(|source| IngestError::Field {
            row,
            field: "sector",
            source,
        })?;
        let item: ItemCode = item.parse().map_err(|source| IngestError::Field {
            row,
            field: "item",
            source,
        })?;
        let direction: Direction = direction.parse().map_err(|source| IngestError::Field {
            row,
            field: "direction",
            source,
        })?;
        if !self.seen.insert((year, sector, item, direction)) {
            return Err(IngestError::Duplicate {
                row,
                year,
                sector,
                item,
                direction,
            });
        }
        let flow = Flow::new(item, sector, direction, value)
            .map_err(|source| IngestError::Flow { row, source })?;
        self.years
            .entry(year)
            .or_insert_with(|| EconomyYear::new(year))
            .set(flow.sector(), flow.item(), flow.direction(), flow.value())
            .map_err(|source| IngestError::Flow { row, source })
    }

    fn finish(self) -> Dataset {
        let mut warnings = Vec::new();
        for (year, economy) in &self.years {
            for sector in Sector::ALL {
                if economy.ledger(sector).is_empty() {
                    let msg = format!("{year}: no rows for {sector}; its flows default to 0");
                    log::warn!("{msg}");
                    warnings.push(msg);
                }
            }
        }
        Dataset {
            years: self.years,
            warnings,
        }
    }
}

impl Dataset {
    pub fn single(year: EconomyYear) -> Self {
        Dataset {
            years: BTreeMap::from([(year.year, year)]),
            warnings: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.years.is_empty()
    }

    pub fn from_csv_reader<R: Read>(reader: R) -> Result<Self, IngestError> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let header = rdr.headers()?.clone();
        if header.iter().ne(CSV_HEADER.iter().copied()) {
            return Err(IngestError::Schema {
                row: 1,
                message: format!(
                    "expected header `{}`, found `{}`",
                    CSV_HEADER.join(","),
                    header.iter().collect::<Vec<_>>().join(",")
                ),
            });
        }
        let mut builder = RowBuilder::new();
        for record in rdr.records() {
            let record = record?;
            let row = record.position().map(|p| p.line()).unwrap_or_default();
            if record.len() != CSV_HEADER.len() {
                return Err(IngestError::Schema {
                    row,
                    message: format!("expected 5 fields, found {}", record.len()),
                });
            }
            let year: i32 = record[0].parse().map_err(|_| IngestError::Schema {
                row,
                message: format!("field `year`: `{}` is not an integer", &record[0]),
            })?;
            let value: Money = record[4]
                .parse()
                .map_err(|source| IngestError::Value { row, source })?;
            builder.push(row, year, &record[1], &record[2], &record[3], value)?;
        }
        Ok(builder.finish())
    }

    pub fn from_json_str(text: &str) -> Result<Self, IngestError> {
        let rows: Vec<DatasetRow> = serde_json::from_str(text)?;
        let mut builder = RowBuilder::new();
        for (i, r) in rows.iter().enumerate() {
            builder.push(i as u64 + 1, r.year, &r.sector, &r.item, &r.direction, r.value)?;
        }
        Ok(builder.finish())
    }

    /// Loads a CSV file, or the JSON mirror when the extension is `.json`.
    pub fn load(path: impl AsRef<Path>) -> Result<Self, IngestError> {
        let path = path.as_ref();
        if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json")) {
            Self::from_json_str(&std::fs::read_to_string(path)?)
        } else {
            Self::from_csv_reader(std::fs::File::open(path)?)
        }
    }

    pub fn rows(&self) -> Vec<DatasetRow> {
        self.years
            .values()
            .flat_map(|y| {
                y.flows().into_iter().map(move |f| DatasetRow {
                    year: y.year,
                    sector: f.sector().code().to_string(),
                    item: f.item().code().to_string(),
                    direction: f.direction().as_str().to_string(),
                    value: f.value(),
                })
            })
            .collect()
    }

    pub fn to_csv_writer<W: Write>(&self, writer: W) -> Result<(), IngestError> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(CSV_HEADER)?;
        for r in self.rows() {
            w.write_record([
                r.year.to_string(),
                r.sector,
                r.item,
                r.direction,
                r.value.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.to_csv_writer(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("csv output is utf-8")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.rows()).expect("rows serialize")
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), IngestError> {
        let path = path.as_ref();
        if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json")) {
            std::fs::write(path, self.to_json_string())?;
            Ok(())
        } else {
            self.to_csv_writer(std::fs::File::create(path)?)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_with_header() {
        let d = Dataset::from_csv_reader("year,sector,item,direction,value\n".as_bytes()).unwrap();
        assert!(d.is_empty());
    }

    #[test]
    fn unknown_sector_reports_row() {
        let text = "year,sector,item,direction,value\n2011,HS,D11,received,1\n2011,XX,D11,paid,1\n";
        let err = Dataset::from_csv_reader(text.as_bytes()).unwrap_err();
        match err {
            IngestError::Field { row, field, .. } => {
                assert_eq!(row, 3);
                assert_eq!(field, "sector");
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn schema_errors() {
        let bad_header = "year,sector,item,value\n";
        assert!(matches!(
            Dataset::from_csv_reader(bad_header.as_bytes()),
            Err(IngestError::Schema { row: 1, .. })
        ));
        let dup = "year,sector,item,direction,value\n2011,HS,D11,received,1\n2011,HS,D11,received,2\n";
        assert!(matches!(
            Dataset::from_csv_reader(dup.as_bytes()),
            Err(IngestError::Duplicate { row: 3, .. })
        ));
        let unknown = "year,sector,item,direction,value\n2011,HS,Q1,received,1\n";
        assert!(matches!(
            Dataset::from_csv_reader(unknown.as_bytes()),
            Err(IngestError::Field { field: "item", .. })
        ));
        let net_gross = "year,sector,item,direction,value\n2011,HS,D11,net,1\n";
        assert!(matches!(
            Dataset::from_csv_reader(net_gross.as_bytes()),
            Err(IngestError::Flow { row: 2, .. })
        ));
        let thousands = "year,sector,item,direction,value\n2011,HS,D11,paid,\"1,000\"\n";
        assert!(matches!(
            Dataset::from_csv_reader(thousands.as_bytes()),
            Err(IngestError::Value { row: 2, .. })
        ));
        let year = "year,sector,item,direction,value\ntwenty,HS,D11,paid,1\n";
        assert!(matches!(
            Dataset::from_csv_reader(year.as_bytes()),
            Err(IngestError::Schema { row: 2, .. })
        ));
    }

    #[test]
    fn missing_sectors_warn_and_default_to_zero() {
        let text = "year,sector,item,direction,value\n2011,HS,D11,received,5\n";
        let d = Dataset::from_csv_reader(text.as_bytes()).unwrap();
        assert_eq!(d.warnings.len(), 4);
        let y = &d.years[&2011];
        assert_eq!(y.get(Sector::NFS, ItemCode::D11, Direction::Paid), Money::ZERO);
    }

    #[test]
    fn fixture_round_trips_through_csv_and_json() {
        let d = Dataset::single(fixture_2011());
        let csv = d.to_csv_string();
        assert!(csv.starts_with("year,sector,item,direction,value\n"));
        let back = Dataset::from_csv_reader(csv.as_bytes()).unwrap();
        assert_eq!(back.years[&2011].flows(), d.years[&2011].flows());
        let json = Dataset::from_json_str(&d.to_json_string()).unwrap();
        assert_eq!(json.years[&2011].flows(), d.years[&2011].flows());
    }
}
