//! Finnish national accounts, 2011, million euro per year.

use crate::economy::{EconomyYear, Provenance};
use crate::ledger::{Direction, ItemCode, Sector};
use crate::money::Money;

use Direction::{Net, Paid, Received};
use ItemCode::*;
use Sector::*;

type Row = (Sector, ItemCode, Direction, i64);

const ROWS: &[Row] = &[
    // Non-financial corporations
    (NFS, P1, Received, 271298),
    (NFS, P2, Paid, 166990),
    (NFS, K1, Paid, 21651),
    (NFS, D11, Paid, 50565),
    (NFS, D12, Paid, 10875),
    (NFS, D29, Paid, 240),
    (NFS, D39, Received, 1222),
    (NFS, D4, Received, 11430),
    (NFS, D4, Paid, 22912),
    (NFS, D61D62, Received, 0),
    (NFS, D61D62, Paid, 0),
    (NFS, D7, Received, 1666),
    (NFS, D7, Paid, 1018),
    (NFS, D5, Paid, 4969),
    (NFS, D9, Received, 255),
    (NFS, D9, Paid, 30),
    (NFS, P5, Paid, 25016),
    (NFS, K2, Net, -111),
    (NFS, B13N, Net, 22199),
    (NFS, B5NT, Net, 10717),
    (NFS, B6N, Net, 6396),
    (NFS, B8N, Net, 6396),
    (NFS, B9, Net, 3367),
    // Financial corporations
    (FFS, P1, Received, 9250),
    (FFS, P2, Paid, 4617),
    (FFS, K1, Paid, 450),
    (FFS, D11, Paid, 2295),
    (FFS, D12, Paid, 473),
    (FFS, D29, Paid, 1),
    (FFS, D39, Received, 1),
    (FFS, D4, Received, 11618),
    (FFS, D4, Paid, 11977),
    (FFS, D61D62, Received, 1252),
    (FFS, D61D62, Paid, 1461),
    (FFS, D7, Received, 2245),
    (FFS, D7, Paid, 2430),
    (FFS, D5, Paid, 638),
    (FFS, D8, Net, 68),
    (FFS, D9, Received, 49),
    (FFS, D9, Paid, 3),
    (FFS, P5, Paid, 356),
    (FFS, K2, Net, -2),
    (FFS, B13N, Net, 1415),
    (FFS, B5NT, Net, 1056),
    (FFS, B6N, Net, 24),
    (FFS, B8N, Net, 92),
    (FFS, B9, Net, 234),
    // Households and NPISH
    (HS, P1, Received, 44006),
    (HS, P2, Paid, 16891),
    (HS, D29, Paid, 3),
    (HS, D12, Paid, 995),
    (HS, K1, Paid, 7948),
    (HS, D39, Received, 1565),
    (HS, D11, Paid, 4176),
    (HS, D11, Received, 78677),
    (HS, D12, Received, 18224),
    (HS, D4, Received, 10162),
    (HS, D4, Paid, 2267),
    (HS, D61D62, Received, 35336),
    (HS, D61D62, Paid, 25277),
    (HS, D7, Received, 6307),
    (HS, D7, Paid, 3968),
    (HS, D5, Paid, 25493),
    (HS, D8, Net, -68),
    (HS, P31, Paid, 105771),
    (HS, D9, Received, 465),
    (HS, D9, Paid, 524),
    (HS, P5, Paid, 13424),
    (HS, K2, Net, 104),
    (HS, B13N, Net, 15558),
    (HS, B5NT, Net, 120354),
    (HS, B6N, Net, 107191),
    (HS, B8N, Net, 1420),
    (HS, B9, Net, -4219),
    // General government
    (GS, P1, Received, 55816),
    (GS, P2, Paid, 21418),
    (GS, D12, Paid, 5905),
    (GS, D29, Paid, 4),
    (GS, K1, Paid, 6532),
    (GS, D11, Paid, 21544),
    (GS, D39, Received, 0),
    (GS, D21, Received, 26932),
    (GS, D29, Received, 248),
    (GS, D31, Paid, 657),
    (GS, D39, Paid, 2067),
    (GS, D4, Received, 7080),
    (GS, D4, Paid, 2896),
    (GS, D61D62, Received, 24037),
    (GS, D61D62, Paid, 33876),
    (GS, D7, Received, 27261),
    (GS, D7, Paid, 32173),
    (GS, D5, Received, 31209),
    (GS, D5, Paid, 109),
    (GS, P31, Paid, 31229),
    (GS, P32, Paid, 15262),
    (GS, D9, Received, 835),
    (GS, D9, Paid, 851),
    (GS, P5, Paid, 7486),
    (GS, K2, Net, -3),
    (GS, B13N, Net, 413),
    (GS, B5NT, Net, 29053),
    (GS, B6N, Net, 45402),
    (GS, B8N, Net, -1089),
    (GS, B9, Net, -2056),
    // Rest of the world
    (RS, P7, Received, 78768),
    (RS, P6, Paid, 77093),
    (RS, D11, Received, 472),
    (RS, D11, Paid, 569),
    (RS, D12, Received, 116),
    (RS, D12, Paid, 92),
    (RS, D21, Received, 191),
    (RS, D29, Received, 0),
    (RS, D31, Paid, 51),
    (RS, D39, Paid, 721),
    (RS, D4, Received, 13613),
    (RS, D4, Paid, 13851),
    (RS, D61D62, Received, 351),
    (RS, D61D62, Paid, 362),
    (RS, D7, Received, 3163),
    (RS, D7, Paid, 1053),
    (RS, D9, Received, 10),
    (RS, D9, Paid, 206),
    (RS, K2, Net, 12),
    (RS, B11, Net, 1675),
    (RS, B12, Net, 2882),
    (RS, B9, Net, 2674),
];

const K2_SIGN: &str = "printed as a magnitude; the negative sign is the only assignment \
consistent with the reported net lending and the K2 zero-sum";

/// Values that are not printed as-is. Everything else is read directly.
fn derived_note(sector: Sector, item: ItemCode, direction: Direction) -> Option<&'static str> {
    match (sector, item, direction) {
        (NFS | FFS | GS, K2, _) => Some(K2_SIGN),
        (HS, D61D62, Paid) => Some(
            "printed as 25265; the D61+D62 zero-sum (60976 both ways) and the \
reported DI_H = 107191 both place a further 12 paid by NPISH",
        ),
        _ => None,
    }
}

/// The embedded 2011 fixture.
pub fn fixture_2011() -> EconomyYear {
    let mut year = EconomyYear::new(2011);
    for &(sector, item, direction, value) in ROWS {
        year.set(sector, item, direction, Money::from_millions(value))
            .expect("fixture rows are valid");
        let provenance = match derived_note(sector, item, direction) {
            Some(note) => Provenance::Derived(note.to_string()),
            None => Provenance::Read,
        };
        year.mark(sector, item, direction, provenance);
    }
    year
}

/// D61+D62 paid by households exactly as printed, before reconciliation.
pub const HS_SOCIAL_PAID_AS_PRINTED: Money = Money::from_millions(25265);
