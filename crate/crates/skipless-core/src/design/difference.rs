//! The method of differences: base-block tables over a cyclic group,
//! their development into full designs, and the difference condition
//! that guarantees repeated adjacent pairs.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use super::{Design, DesignError, GroupTag, Point, SchemeKind};

/// One slot of a base block: a residue mod the group order, or the
/// shift-fixed infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TableEntry {
    Residue(u32),
    Infinity,
}

impl TableEntry {
    fn shifted(self, by: u32, g: u32) -> TableEntry {
        match self {
            TableEntry::Residue(v) => TableEntry::Residue((v + by) % g),
            TableEntry::Infinity => TableEntry::Infinity,
        }
    }
}

/// A set of base blocks over `Z_g` (plus infinity when the point set
/// is `Z_g + {inf}`); the design is the union of cyclic shifts, with
/// declared short orbits generating fewer blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseBlockTable {
    name: String,
    group_order: u32,
    has_infinity: bool,
    base_blocks: Vec<[TableEntry; 4]>,
    /// Orbit-length overrides keyed by base-block index.
    short_orbits: BTreeMap<usize, u32>,
}

impl BaseBlockTable {
    pub fn new(
        name: String,
        group_order: u32,
        has_infinity: bool,
        base_blocks: Vec<[TableEntry; 4]>,
        short_orbits: BTreeMap<usize, u32>,
    ) -> Result<BaseBlockTable, DesignError> {
        for (bi, b) in base_blocks.iter().enumerate() {
            for (i, e) in b.iter().enumerate() {
                if let TableEntry::Residue(v) = e {
                    if *v >= group_order {
                        return Err(DesignError::MalformedBlock { detail: "residue out of range" });
                    }
                } else if !has_infinity {
                    return Err(DesignError::MalformedBlock {
                        detail: "infinity entry in a pure-residue table",
                    });
                }
                for e2 in &b[i + 1..] {
                    if e == e2 {
                        return Err(DesignError::MalformedBlock { detail: "repeated point" });
                    }
                }
            }
            if let Some(&orbit) = short_orbits.get(&bi) {
                if orbit == 0 || !group_order.is_multiple_of(orbit) {
                    return Err(DesignError::InvalidOrbit { block: bi, orbit, group_order });
                }
            }
        }
        Ok(BaseBlockTable { name, group_order, has_infinity, base_blocks, short_orbits })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn group_order(&self) -> u32 {
        self.group_order
    }

    pub fn has_infinity(&self) -> bool {
        self.has_infinity
    }

    pub fn base_blocks(&self) -> &[[TableEntry; 4]] {
        &self.base_blocks
    }

    pub fn short_orbits(&self) -> &BTreeMap<usize, u32> {
        &self.short_orbits
    }

    /// Point count of the developed design.
    pub fn order(&self) -> u32 {
        self.group_order + self.has_infinity as u32
    }

    /// Table with one base block removed; used as a negative control
    /// against the difference condition.
    pub fn without_block(&self, index: usize) -> BaseBlockTable {
        let mut base_blocks = self.base_blocks.clone();
        base_blocks.remove(index);
        let short_orbits = self
            .short_orbits
            .iter()
            .filter(|(bi, _)| **bi != index)
            .map(|(bi, o)| (if *bi > index { bi - 1 } else { *bi }, *o))
            .collect();
        BaseBlockTable { name: self.name.clone(), base_blocks, short_orbits, ..self.clone() }
    }
}

/// Adjacent-difference multiset of a block of residues:
/// `<|b-a|, |c-b|, |d-c|>` with `|x| = min(x mod g, -x mod g)`.
pub fn diff_list(block: &[TableEntry; 4], g: u32) -> Result<[u32; 3], DesignError> {
    let mut out = [0u32; 3];
    for (i, w) in block.windows(2).enumerate() {
        let (TableEntry::Residue(a), TableEntry::Residue(b)) = (w[0], w[1]) else {
            return Err(DesignError::InfinityInBlock);
        };
        let d = (b + g - a) % g;
        out[i] = d.min(g - d);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceReport {
    pub ok: bool,
    /// Occurrences of each difference in the table's diff multiset.
    pub counts: BTreeMap<u32, u32>,
    /// Base blocks containing infinity.
    pub infinity_blocks: u32,
    /// First difference below its required count, if any.
    pub deficient: Option<u32>,
}

/// The sufficient condition for repeated adjacent pairs. Over `Z_g`:
/// every difference `0 < i < g/2` appears at least twice and `g/2`
/// (when integral) at least once. Over `Z_g + {inf}`: every
/// `0 < i <= g/2` appears at least twice among the difference lists of
/// the infinity-free base blocks, and infinity lies in at least two
/// base blocks. Difference lists are only defined over residues, so
/// blocks containing infinity feed the presence count, not the tally.
pub fn check_difference_condition(table: &BaseBlockTable) -> DifferenceReport {
    let g = table.group_order;
    let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
    let mut infinity_blocks = 0;
    for b in table.base_blocks() {
        if b.contains(&TableEntry::Infinity) {
            infinity_blocks += 1;
            continue;
        }
        for d in diff_list(b, g).expect("infinity-free block") {
            *counts.entry(d).or_insert(0) += 1;
        }
    }
    let mut deficient = None;
    if table.has_infinity {
        for i in 1..=g / 2 {
            if counts.get(&i).copied().unwrap_or(0) < 2 {
                deficient = Some(i);
                break;
            }
        }
    } else {
        for i in 1..g.div_ceil(2) {
            if counts.get(&i).copied().unwrap_or(0) < 2 {
                deficient = Some(i);
                break;
            }
        }
        if deficient.is_none() && g.is_multiple_of(2) && counts.get(&(g / 2)).copied().unwrap_or(0) < 1 {
            deficient = Some(g / 2);
        }
    }
    let ok = deficient.is_none() && (!table.has_infinity || infinity_blocks >= 2);
    DifferenceReport { ok, counts, infinity_blocks, deficient }
}

/// Develops the table: every base block shifted by each element of its
/// orbit. Infinity is fixed under shifts. A block whose true period is
/// shorter than the iterated orbit collapses silently; a collision
/// between two different base blocks is an error.
pub fn develop(table: &BaseBlockTable) -> Result<Design, DesignError> {
    let g = table.group_order;
    // Canonical universe order puts infinity first.
    let mut points: Vec<Point> = Vec::with_capacity(table.order() as usize);
    if table.has_infinity {
        points.push(Point::Infinity);
    }
    points.extend((0..g).map(Point::Residue));
    let id = |e: TableEntry| -> u32 {
        match e {
            TableEntry::Infinity => 0,
            TableEntry::Residue(v) => v + table.has_infinity as u32,
        }
    };

    let mut blocks: Vec<[u32; 4]> = Vec::new();
    let mut owner: BTreeMap<[u32; 4], usize> = BTreeMap::new();
    for (bi, base) in table.base_blocks().iter().enumerate() {
        let orbit = table.short_orbits.get(&bi).copied().unwrap_or(g);
        if orbit != g {
            // A declared short orbit must actually be a period.
            let shifted: BTreeSet<TableEntry> =
                base.iter().map(|e| e.shifted(orbit, g)).collect();
            let original: BTreeSet<TableEntry> = base.iter().copied().collect();
            if shifted != original {
                return Err(DesignError::ShortOrbitMismatch { block: bi });
            }
        }
        let mut seen_here: BTreeSet<[u32; 4]> = BTreeSet::new();
        for shift in 0..orbit {
            let b = [
                id(base[0].shifted(shift, g)),
                id(base[1].shifted(shift, g)),
                id(base[2].shifted(shift, g)),
                id(base[3].shifted(shift, g)),
            ];
            let mut key = b;
            key.sort_unstable();
            if !seen_here.insert(key) {
                continue; // own orbit shorter than iterated range
            }
            if let Some(&prev) = owner.get(&key) {
                if prev != bi {
                    return Err(DesignError::DuplicateBlock { block: key });
                }
                continue;
            }
            owner.insert(key, bi);
            blocks.push(b);
        }
    }
    let groups = alloc::vec![GroupTag::Ungrouped; blocks.len()];
    Design::from_parts(points, blocks, groups, SchemeKind::Generic)
}
