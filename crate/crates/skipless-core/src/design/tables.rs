//! Embedded block data transcribed from published tables: the
//! explicit order-14 system and the base-block tables for orders 26,
//! 34, and 38. Each is guarded by a triple-coverage test; a
//! transcription error fails loudly.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec::Vec;

use super::{BaseBlockTable, Design, DesignError, GroupTag, Point, SchemeKind, TableEntry};

use TableEntry::Infinity as INF;

#[allow(non_snake_case)]
const fn R(v: u32) -> TableEntry {
    TableEntry::Residue(v)
}

/// The 91 ordered blocks of the order-14 system, points `0..=13`.
pub const SQS14_BLOCKS: [[u32; 4]; 91] = [
    [0, 1, 2, 5],
    [0, 3, 8, 13],
    [1, 2, 3, 6],
    [1, 5, 7, 12],
    [2, 4, 10, 12],
    [3, 5, 7, 9],
    [4, 7, 9, 12],
    [0, 1, 3, 11],
    [0, 3, 9, 10],
    [1, 2, 4, 7],
    [1, 5, 8, 9],
    [2, 4, 11, 13],
    [3, 5, 8, 11],
    [5, 6, 7, 8],
    [0, 1, 4, 6],
    [0, 4, 5, 9],
    [1, 2, 8, 11],
    [1, 5, 11, 13],
    [2, 5, 7, 11],
    [3, 5, 10, 12],
    [5, 6, 9, 11],
    [0, 8, 1, 7],
    [0, 4, 7, 11],
    [1, 2, 9, 10],
    [1, 6, 7, 9],
    [2, 5, 8, 10],
    [3, 6, 7, 11],
    [5, 13, 6, 12],
    [0, 1, 9, 13],
    [0, 4, 8, 10],
    [1, 2, 12, 13],
    [1, 6, 8, 13],
    [2, 5, 9, 12],
    [3, 6, 8, 9],
    [5, 9, 10, 13],
    [0, 1, 10, 12],
    [0, 4, 12, 13],
    [1, 3, 4, 5],
    [1, 6, 11, 12],
    [2, 6, 7, 12],
    [3, 6, 10, 13],
    [6, 8, 10, 12],
    [0, 2, 3, 4],
    [0, 5, 7, 13],
    [1, 3, 7, 13],
    [1, 7, 10, 11],
    [2, 6, 9, 13],
    [3, 11, 12, 13],
    [7, 8, 9, 10],
    [0, 2, 6, 8],
    [0, 5, 8, 12],
    [1, 3, 8, 10],
    [2, 3, 5, 13],
    [2, 6, 10, 11],
    [4, 5, 7, 10],
    [7, 8, 11, 12],
    [0, 2, 7, 9],
    [0, 5, 10, 11],
    [1, 3, 9, 12],
    [2, 3, 7, 10],
    [2, 7, 8, 13],
    [4, 5, 8, 13],
    [7, 9, 11, 13],
    [0, 2, 10, 13],
    [0, 6, 7, 10],
    [1, 4, 8, 12],
    [2, 3, 8, 12],
    [3, 4, 6, 12],
    [4, 5, 11, 12],
    [7, 10, 12, 13],
    [0, 2, 11, 12],
    [0, 6, 9, 12],
    [1, 4, 9, 11],
    [2, 3, 9, 11],
    [3, 4, 7, 8],
    [4, 6, 7, 13],
    [8, 9, 12, 13],
    [0, 3, 5, 6],
    [0, 6, 11, 13],
    [1, 4, 10, 13],
    [2, 4, 5, 6],
    [3, 4, 9, 13],
    [4, 6, 8, 11],
    [8, 10, 11, 13],
    [0, 3, 7, 12],
    [0, 8, 9, 11],
    [1, 5, 6, 10],
    [2, 4, 8, 9],
    [3, 4, 10, 11],
    [4, 6, 9, 10],
    [9, 10, 11, 12],
];

/// Base blocks over `Z_25 + inf`; all full orbits (26 * 25 = 650 blocks).
const SQS26_BASE: [[TableEntry; 4]; 26] = [
    [R(0), R(1), R(3), INF],
    [R(0), R(4), R(11), INF],
    [R(0), R(5), R(13), INF],
    [R(0), R(6), R(15), INF],
    [R(0), R(1), R(2), R(5)],
    [R(0), R(1), R(6), R(7)],
    [R(0), R(1), R(8), R(9)],
    [R(0), R(1), R(10), R(11)],
    [R(0), R(1), R(12), R(22)],
    [R(0), R(1), R(13), R(21)],
    [R(0), R(1), R(14), R(23)],
    [R(0), R(2), R(4), R(12)],
    [R(0), R(2), R(6), R(9)],
    [R(0), R(2), R(7), R(17)],
    [R(0), R(2), R(8), R(22)],
    [R(0), R(2), R(11), R(18)],
    [R(0), R(2), R(13), R(19)],
    [R(0), R(2), R(14), R(21)],
    [R(0), R(2), R(15), R(20)],
    [R(0), R(3), R(6), R(10)],
    [R(0), R(3), R(8), R(17)],
    [R(0), R(3), R(9), R(14)],
    [R(0), R(3), R(12), R(18)],
    [R(0), R(3), R(13), R(20)],
    [R(0), R(14), R(8), R(4)],
    [R(0), R(4), R(9), R(13)],
];

/// Base blocks over `Z_33 + inf`; the first block has orbit 11 (45 * 33 + 11 = 1496 blocks).
const SQS34_BASE: [[TableEntry; 4]; 46] = [
    [R(0), R(11), R(22), INF],
    [R(0), R(1), R(5), INF],
    [R(0), R(2), R(10), INF],
    [R(0), R(3), R(15), INF],
    [R(0), R(6), R(19), INF],
    [R(0), R(7), R(16), INF],
    [R(0), R(1), R(2), R(4)],
    [R(0), R(1), R(6), R(7)],
    [R(0), R(1), R(8), R(9)],
    [R(0), R(1), R(10), R(11)],
    [R(0), R(1), R(12), R(13)],
    [R(0), R(1), R(14), R(15)],
    [R(0), R(1), R(16), R(29)],
    [R(0), R(1), R(17), R(31)],
    [R(0), R(1), R(18), R(30)],
    [R(0), R(2), R(5), R(7)],
    [R(0), R(2), R(6), R(8)],
    [R(0), R(2), R(9), R(11)],
    [R(0), R(2), R(12), R(14)],
    [R(0), R(2), R(13), R(16)],
    [R(0), R(2), R(15), R(17)],
    [R(0), R(2), R(22), R(25)],
    [R(0), R(3), R(6), R(26)],
    [R(0), R(3), R(7), R(25)],
    [R(0), R(3), R(8), R(28)],
    [R(0), R(3), R(9), R(17)],
    [R(0), R(18), R(10), R(3)],
    [R(0), R(3), R(12), R(27)],
    [R(0), R(3), R(14), R(29)],
    [R(0), R(3), R(16), R(24)],
    [R(0), R(4), R(8), R(16)],
    [R(0), R(4), R(9), R(28)],
    [R(0), R(4), R(10), R(24)],
    [R(0), R(4), R(11), R(25)],
    [R(0), R(4), R(13), R(26)],
    [R(0), R(19), R(14), R(4)],
    [R(0), R(4), R(15), R(23)],
    [R(0), R(4), R(17), R(27)],
    [R(0), R(5), R(10), R(17)],
    [R(0), R(5), R(11), R(21)],
    [R(0), R(5), R(15), R(26)],
    [R(0), R(16), R(5), R(22)],
    [R(0), R(5), R(18), R(27)],
    [R(0), R(6), R(12), R(21)],
    [R(0), R(6), R(13), R(25)],
    [R(0), R(7), R(14), R(24)],
];

/// Base blocks over `Z_37 + inf`; all full orbits (57 * 37 = 2109 blocks).
const SQS38_BASE: [[TableEntry; 4]; 57] = [
    [R(0), R(1), R(27), INF],
    [R(0), R(2), R(22), INF],
    [R(0), R(3), R(33), INF],
    [R(0), R(5), R(24), INF],
    [R(0), R(6), R(29), INF],
    [R(0), R(9), R(25), INF],
    [R(0), R(1), R(4), R(11)],
    [R(0), R(2), R(17), R(31)],
    [R(0), R(3), R(7), R(28)],
    [R(0), R(5), R(18), R(20)],
    [R(0), R(6), R(14), R(19)],
    [R(0), R(9), R(10), R(21)],
    [R(0), R(1), R(2), R(6)],
    [R(0), R(1), R(3), R(14)],
    [R(0), R(1), R(7), R(19)],
    [R(0), R(1), R(9), R(35)],
    [R(0), R(1), R(10), R(24)],
    [R(0), R(30), R(13), R(1)],
    [R(0), R(1), R(15), R(16)],
    [R(0), R(1), R(17), R(33)],
    [R(0), R(1), R(20), R(34)],
    [R(0), R(1), R(25), R(29)],
    [R(0), R(2), R(4), R(16)],
    [R(0), R(2), R(5), R(8)],
    [R(0), R(2), R(7), R(21)],
    [R(0), R(2), R(15), R(18)],
    [R(0), R(2), R(25), R(30)],
    [R(0), R(10), R(20), R(23)],
    [R(0), R(10), R(30), R(29)],
    [R(0), R(10), R(33), R(5)],
    [R(0), R(10), R(16), R(17)],
    [R(0), R(10), R(26), R(18)],
    [R(0), R(10), R(19), R(4)],
    [R(0), R(10), R(2), R(12)],
    [R(0), R(10), R(22), R(34)],
    [R(0), R(10), R(15), R(7)],
    [R(0), R(10), R(28), R(31)],
    [R(0), R(20), R(3), R(12)],
    [R(0), R(20), R(13), R(6)],
    [R(0), R(20), R(33), R(25)],
    [R(0), R(20), R(2), R(32)],
    [R(0), R(20), R(28), R(4)],
    [R(0), R(26), R(15), R(8)],
    [R(4), R(0), R(26), R(31)],
    [R(0), R(26), R(34), R(13)],
    [R(0), R(26), R(12), R(22)],
    [R(1), R(0), R(26), R(32)],
    [R(0), R(26), R(5), R(3)],
    [R(0), R(26), R(20), R(9)],
    [R(0), R(26), R(35), R(7)],
    [R(2), R(0), R(26), R(33)],
    [R(0), R(26), R(21), R(14)],
    [R(0), R(15), R(30), R(9)],
    [R(0), R(15), R(19), R(23)],
    [R(0), R(15), R(34), R(28)],
    [R(0), R(15), R(20), R(24)],
    [R(0), R(15), R(21), R(3)],
];


/// Builds the order-14 design from the embedded blocks and certifies it.
pub fn sqs14() -> Result<Design, DesignError> {
    let points = (0..14).map(Point::Finite).collect();
    let blocks = SQS14_BLOCKS.to_vec();
    let groups = alloc::vec![GroupTag::Ungrouped; blocks.len()];
    Design::from_parts(points, blocks, groups, SchemeKind::Generic)?.certify()
}

pub fn sqs26_table() -> BaseBlockTable {
    BaseBlockTable::new("sqs26".to_string(), 25, true, SQS26_BASE.to_vec(), BTreeMap::new())
        .expect("embedded table is well-formed")
}

pub fn sqs34_table() -> BaseBlockTable {
    let short: BTreeMap<usize, u32> = [(0usize, 11u32)].into_iter().collect();
    BaseBlockTable::new("sqs34".to_string(), 33, true, SQS34_BASE.to_vec(), short)
        .expect("embedded table is well-formed")
}

pub fn sqs38_table() -> BaseBlockTable {
    BaseBlockTable::new("sqs38".to_string(), 37, true, SQS38_BASE.to_vec(), BTreeMap::new())
        .expect("embedded table is well-formed")
}

/// The tables the order dispatcher draws on. [`TableSet::embedded`]
/// uses the data compiled into this crate; callers may substitute
/// externally loaded tables.
#[derive(Debug, Clone)]
pub struct TableSet {
    pub sqs14_blocks: Vec<[u32; 4]>,
    pub sqs26: BaseBlockTable,
    pub sqs34: BaseBlockTable,
    pub sqs38: BaseBlockTable,
}

impl TableSet {
    pub fn embedded() -> TableSet {
        TableSet {
            sqs14_blocks: SQS14_BLOCKS.to_vec(),
            sqs26: sqs26_table(),
            sqs34: sqs34_table(),
            sqs38: sqs38_table(),
        }
    }

    /// Builds and certifies the design for one of the table orders.
    pub fn design_for(&self, v: u32) -> Result<Design, DesignError> {
        match v {
            14 => {
                let points = (0..14).map(Point::Finite).collect();
                let blocks = self.sqs14_blocks.clone();
                let groups = alloc::vec![GroupTag::Ungrouped; blocks.len()];
                Design::from_parts(points, blocks, groups, SchemeKind::Generic)?.certify()
            }
            26 => super::develop(&self.sqs26)?.certify(),
            34 => super::develop(&self.sqs34)?.certify(),
            38 => super::develop(&self.sqs38)?.certify(),
            _ => Err(DesignError::UnsupportedOrder { v }),
        }
    }

    pub fn covers(&self, v: u32) -> bool {
        matches!(v, 14 | 26 | 34 | 38)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::{check_difference_condition, check_repeated_adjacent_pairs, develop, verify_sqs};

    #[test]
    fn order_14_is_a_quadruple_system() {
        let d = sqs14().unwrap();
        assert_eq!(d.block_count(), 91);
        assert_eq!(d.expected_block_count(), 91);
        assert_eq!(d.display_block(0), "(0, 1, 2, 5)");
        assert!(verify_sqs(&d).unwrap().is_sqs);
    }

    #[test]
    fn order_26_development() {
        let d = develop(&sqs26_table()).unwrap();
        assert_eq!(d.block_count(), 650);
        assert!(verify_sqs(&d).unwrap().is_sqs);
    }

    #[test]
    fn order_34_development_with_short_orbit() {
        let table = sqs34_table();
        let d = develop(&table).unwrap();
        assert_eq!(d.block_count(), 1496);
        assert!(verify_sqs(&d).unwrap().is_sqs);
    }

    #[test]
    fn short_orbit_block_generates_eleven() {
        // (0, 11, 22, inf) has period 11 over Z_33.
        let table = sqs34_table();
        let only_short = BaseBlockTable::new(
            "short".to_string(),
            33,
            true,
            alloc::vec![table.base_blocks()[0]],
            [(0usize, 11u32)].into_iter().collect(),
        )
        .unwrap();
        assert_eq!(develop(&only_short).unwrap().block_count(), 11);
    }

    #[test]
    fn order_38_development() {
        let d = develop(&sqs38_table()).unwrap();
        assert_eq!(d.block_count(), 2109);
        assert!(verify_sqs(&d).unwrap().is_sqs);
    }

    #[test]
    fn difference_conditions_hold_for_all_tables() {
        for table in [sqs26_table(), sqs34_table(), sqs38_table()] {
            let report = check_difference_condition(&table);
            assert!(report.ok, "{}: deficient {:?}", table.name(), report.deficient);
            // The sufficient condition implies repeated adjacent pairs
            // in the development; both oracles must agree.
            let d = develop(&table).unwrap();
            assert!(check_repeated_adjacent_pairs(&d).ok, "{}", table.name());
        }
    }

    #[test]
    fn sqs26_difference_one_comes_from_the_two_unit_steps() {
        // Block (0, 1, 2, 5) contributes difference one twice.
        let table = sqs26_table();
        let b = table.base_blocks()[4];
        assert_eq!(super::super::diff_list(&b, 25).unwrap(), [1, 1, 3]);
        let report = check_difference_condition(&table);
        assert!(report.counts[&1] >= 2);
    }

    #[test]
    fn sqs26_difference_five_appears_in_two_named_blocks() {
        let table = sqs26_table();
        // (0, 2, 7, 17) and (0, 4, 9, 13) each contribute a five.
        let b13 = table.base_blocks()[13];
        let b25 = table.base_blocks()[25];
        assert!(super::super::diff_list(&b13, 25).unwrap().contains(&5));
        assert!(super::super::diff_list(&b25, 25).unwrap().contains(&5));
    }
}
