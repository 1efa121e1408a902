//! Steiner quadruple systems with ordered blocks.
//!
//! A [`Design`] is a point universe plus a list of ordered 4-tuples.
//! Block order within a node is what the whole crate is about: packets
//! are laid out on disk in tuple order, so repair reads want adjacent
//! positions. Constructions tag their blocks with the group that
//! produced them; the repair planner keys its explicit schemes off
//! those tags and falls back to exhaustive search otherwise.

mod build;
mod difference;
mod recursive;
mod repair;
pub mod tables;
mod verify;

pub use build::{
    admissible_order, build_sqs, zero_skip_order, BuildMethod, BuildStep, BuiltSqs,
    DEFAULT_ORDER_BOUND,
};
pub use difference::{
    check_difference_condition, develop, diff_list, BaseBlockTable, DifferenceReport, TableEntry,
};
pub use recursive::{designate_infinity, double, sqs_trivial, triple_minus_two};
pub use repair::{plan_block_repair, plan_covers_block, BlockRead, BlockRepairPlan, RepairPlanner};
pub use tables::{sqs14, TableSet};
pub use verify::{check_repeated_adjacent_pairs, point_replication, verify_sqs, PairReport, SqsReport};

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Version stamp carried by certificates so stale serialized designs
/// can be told apart from ones checked by the current verifier.
pub const CHECKER_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DesignError {
    /// Input design does not carry an SQS certificate.
    NotAnSqs,
    /// A construction's output failed triple coverage; this indicates a
    /// bug in the construction, not in the input.
    CoverageBroken { triple: [u32; 3], count: u32 },
    /// The `3v-2` construction needs a designated infinity point.
    MissingInfinity,
    TooManyTriples { triples: u64, limit: u64 },
    /// Two different base blocks develop to the same unordered block.
    DuplicateBlock { block: [u32; 4] },
    /// A declared short orbit does not divide the group order.
    InvalidOrbit { block: usize, orbit: u32, group_order: u32 },
    /// A declared short orbit is not an actual period of the block.
    ShortOrbitMismatch { block: usize },
    /// Difference lists are only defined over finite residues.
    InfinityInBlock,
    UnsupportedOrder { v: u32 },
    NoZeroSkipPlan { block: usize },
    /// A scheme-prescribed helper block is absent; the design was
    /// tampered with or mis-tagged.
    MissingHelperBlock { failed: usize },
    BlockOutOfRange { block: usize },
    /// Malformed block or table entry.
    MalformedBlock { detail: &'static str },
}

impl fmt::Display for DesignError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DesignError::NotAnSqs => {
                write!(f, "input design carries no quadruple-system certificate")
            }
            DesignError::CoverageBroken { triple, count } => {
                write!(f, "construction bug: triple {triple:?} covered {count} times")
            }
            DesignError::MissingInfinity => write!(f, "construction requires an infinity point"),
            DesignError::TooManyTriples { triples, limit } => {
                write!(f, "{triples} triples exceed the verification guard {limit}")
            }
            DesignError::DuplicateBlock { block } => {
                write!(f, "development produced duplicate block {block:?}")
            }
            DesignError::InvalidOrbit { block, orbit, group_order } => {
                write!(f, "orbit {orbit} of base block {block} does not divide {group_order}")
            }
            DesignError::ShortOrbitMismatch { block } => {
                write!(f, "declared short orbit is not a period of base block {block}")
            }
            DesignError::InfinityInBlock => write!(f, "difference list undefined with infinity"),
            DesignError::UnsupportedOrder { v } => {
                write!(f, "no zero-skip quadruple system of order {v} in the supported closure")
            }
            DesignError::NoZeroSkipPlan { block } => {
                write!(f, "no two-helper repair plan exists for block {block}")
            }
            DesignError::MissingHelperBlock { failed } => {
                write!(f, "scheme helper block missing while repairing block {failed}")
            }
            DesignError::BlockOutOfRange { block } => write!(f, "block index {block} out of range"),
            DesignError::MalformedBlock { detail } => write!(f, "malformed block: {detail}"),
        }
    }
}

impl core::error::Error for DesignError {}

/// A point of the universe. Designs built by the recursions wrap their
/// base points in [`Point::Pair`]; developed tables use residues with
/// an optional shift-fixed infinity. The derived ordering (infinity
/// first, then structurally) is the canonical universe order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Point {
    Infinity,
    Finite(u32),
    Residue(u32),
    Pair { base: Box<Point>, level: u8 },
}

impl Point {
    pub fn pair(base: Point, level: u8) -> Point {
        Point::Pair { base: Box::new(base), level }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Infinity => write!(f, "inf"),
            Point::Finite(n) | Point::Residue(n) => write!(f, "{n}"),
            Point::Pair { base, level } => write!(f, "{base}_{level}"),
        }
    }
}

/// Which construction group a block came from. `B1`/`B2` are the two
/// doubling groups; `B2a`..`B5` the five lift groups of the `3v-2`
/// construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupTag {
    Ungrouped,
    B1,
    B2,
    B2a,
    B2b,
    B3,
    B4,
    B5,
}

impl GroupTag {
    pub fn as_str(self) -> &'static str {
        match self {
            GroupTag::Ungrouped => "",
            GroupTag::B1 => "B1",
            GroupTag::B2 => "B2",
            GroupTag::B2a => "B2a",
            GroupTag::B2b => "B2b",
            GroupTag::B3 => "B3",
            GroupTag::B4 => "B4",
            GroupTag::B5 => "B5",
        }
    }

    pub fn parse(s: &str) -> Option<GroupTag> {
        Some(match s {
            "" => GroupTag::Ungrouped,
            "B1" => GroupTag::B1,
            "B2" => GroupTag::B2,
            "B2a" => GroupTag::B2a,
            "B2b" => GroupTag::B2b,
            "B3" => GroupTag::B3,
            "B4" => GroupTag::B4,
            "B5" => GroupTag::B5,
            _ => return None,
        })
    }
}

/// Which explicit repair scheme applies to a design's blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SchemeKind {
    /// Exhaustive search only.
    Generic,
    /// Doubling layout: point pairs at two levels.
    Double,
    /// `3v-2` layout: infinity plus three levels per base point.
    Triple,
}

impl SchemeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SchemeKind::Generic => "generic",
            SchemeKind::Double => "double",
            SchemeKind::Triple => "triple",
        }
    }

    pub fn parse(s: &str) -> Option<SchemeKind> {
        Some(match s {
            "generic" => SchemeKind::Generic,
            "double" => SchemeKind::Double,
            "triple" => SchemeKind::Triple,
            _ => return None,
        })
    }
}

/// Ordered set system with 4-point blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Design {
    points: Vec<Point>,
    /// Ordered blocks of point indices; each entry pairwise distinct.
    blocks: Vec<[u32; 4]>,
    groups: Vec<GroupTag>,
    scheme: SchemeKind,
    certified: bool,
}

impl Design {
    /// Assembles a design and validates block shape. Points must be in
    /// canonical order (infinity first, then structurally ascending);
    /// constructions all emit that order.
    pub fn from_parts(
        points: Vec<Point>,
        blocks: Vec<[u32; 4]>,
        groups: Vec<GroupTag>,
        scheme: SchemeKind,
    ) -> Result<Design, DesignError> {
        if groups.len() != blocks.len() {
            return Err(DesignError::MalformedBlock { detail: "group tags misaligned" });
        }
        let v = points.len() as u32;
        for b in &blocks {
            if b.iter().any(|&p| p >= v) {
                return Err(DesignError::MalformedBlock { detail: "point index out of range" });
            }
            for i in 0..4 {
                for j in i + 1..4 {
                    if b[i] == b[j] {
                        return Err(DesignError::MalformedBlock { detail: "repeated point" });
                    }
                }
            }
        }
        Ok(Design { points, blocks, groups, scheme, certified: false })
    }

    pub fn v(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, id: u32) -> &Point {
        &self.points[id as usize]
    }

    pub fn blocks(&self) -> &[[u32; 4]] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &[u32; 4] {
        &self.blocks[i]
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn groups(&self) -> &[GroupTag] {
        &self.groups
    }

    pub fn scheme(&self) -> SchemeKind {
        self.scheme
    }

    pub fn is_certified(&self) -> bool {
        self.certified
    }

    /// `v(v-1)(v-2)/24`, the block count of a quadruple system.
    pub fn expected_block_count(&self) -> u64 {
        let v = self.v() as u64;
        v * (v - 1) * (v - 2) / 24
    }

    /// Runs full triple-coverage verification and stamps the
    /// certificate on success.
    pub fn certify(mut self) -> Result<Design, DesignError> {
        let report = verify_sqs(&self)?;
        if !report.is_sqs {
            let w = report.witness.expect("non-sqs report carries a witness");
            return Err(DesignError::CoverageBroken { triple: w.triple, count: w.count });
        }
        self.certified = true;
        Ok(self)
    }

    /// Restores a certificate recorded by a trusted serialization.
    pub fn restore_certificate(&mut self, verified: bool) {
        self.certified = verified;
    }

    pub fn display_block(&self, i: usize) -> String {
        use fmt::Write;
        let mut s = String::new();
        let b = self.blocks[i];
        let _ = write!(
            s,
            "({}, {}, {}, {})",
            self.point(b[0]),
            self.point(b[1]),
            self.point(b[2]),
            self.point(b[3])
        );
        s
    }
}
