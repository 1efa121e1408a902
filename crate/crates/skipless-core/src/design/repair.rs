//! Block-level repair planning: at most two helper blocks whose reads
//! cover the four lost packets. Designs built by the doubling or
//! `3v-2` constructions get their prescribed plans (always contiguous
//! reads); anything else is served by exhaustive search, which prefers
//! contiguous 2+2 covers and falls back to the minimum-skip cover when
//! no contiguous one exists.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use super::{Design, DesignError, GroupTag, Point, SchemeKind};

/// Packet positions read from one helper block, strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockRead {
    pub block: usize,
    pub positions: Vec<usize>,
}

impl BlockRead {
    pub fn skip(&self) -> u64 {
        match (self.positions.first(), self.positions.last()) {
            (Some(&a), Some(&b)) => (b - a) as u64 + 1 - self.positions.len() as u64,
            _ => 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockRepairPlan {
    pub failed: usize,
    pub reads: Vec<BlockRead>,
}

impl BlockRepairPlan {
    pub fn skip_cost(&self) -> u64 {
        self.reads.iter().map(BlockRead::skip).sum()
    }

    pub fn locality(&self) -> usize {
        self.reads.len()
    }

    pub fn bandwidth(&self) -> u64 {
        self.reads.iter().map(|r| r.positions.len() as u64).sum()
    }
}

/// Reusable planner: indexes the design once, then answers per-block
/// queries. [`plan_block_repair`] is the one-shot convenience wrapper.
pub struct RepairPlanner<'a> {
    design: &'a Design,
    by_set: BTreeMap<[u32; 4], usize>,
    point_id: BTreeMap<&'a Point, u32>,
    /// Ascending (block, start) homes of each adjacent pair.
    adjacency: BTreeMap<[u32; 2], Vec<(usize, usize)>>,
}

impl core::fmt::Debug for RepairPlanner<'_> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("RepairPlanner").field("blocks", &self.design.block_count()).finish()
    }
}

pub fn plan_block_repair(d: &Design, failed: usize) -> Result<BlockRepairPlan, DesignError> {
    RepairPlanner::new(d).plan(failed)
}

impl<'a> RepairPlanner<'a> {
    pub fn new(design: &'a Design) -> RepairPlanner<'a> {
        let mut by_set = BTreeMap::new();
        let mut adjacency: BTreeMap<[u32; 2], Vec<(usize, usize)>> = BTreeMap::new();
        for (i, b) in design.blocks().iter().enumerate() {
            let mut key = *b;
            key.sort_unstable();
            by_set.insert(key, i);
            for (start, w) in b.windows(2).enumerate() {
                let pair = if w[0] < w[1] { [w[0], w[1]] } else { [w[1], w[0]] };
                adjacency.entry(pair).or_default().push((i, start));
            }
        }
        let point_id = design.points().iter().enumerate().map(|(i, p)| (p, i as u32)).collect();
        RepairPlanner { design, by_set, point_id, adjacency }
    }

    pub fn plan(&self, failed: usize) -> Result<BlockRepairPlan, DesignError> {
        if failed >= self.design.block_count() {
            return Err(DesignError::BlockOutOfRange { block: failed });
        }
        match self.design.scheme() {
            SchemeKind::Double => self.plan_double(failed),
            SchemeKind::Triple => self.plan_triple(failed),
            SchemeKind::Generic => self.plan_generic(failed),
        }
    }

    fn id_of(&self, p: &Point) -> Result<u32, DesignError> {
        self.point_id.get(p).copied().ok_or(DesignError::MissingHelperBlock { failed: usize::MAX })
    }

    fn block_of(&self, ids: [u32; 4], failed: usize) -> Result<usize, DesignError> {
        let mut key = ids;
        key.sort_unstable();
        self.by_set.get(&key).copied().ok_or(DesignError::MissingHelperBlock { failed })
    }

    /// Positions of `wanted` inside helper block `block`, ascending.
    fn read(&self, block: usize, wanted: &[u32]) -> BlockRead {
        let tuple = self.design.block(block);
        let mut positions: Vec<usize> =
            tuple.iter().enumerate().filter(|(_, p)| wanted.contains(p)).map(|(i, _)| i).collect();
        positions.sort_unstable();
        debug_assert_eq!(positions.len(), wanted.len());
        BlockRead { block, positions }
    }

    fn pair_parts(&self, id: u32) -> Result<(&'a Point, u8), DesignError> {
        match self.design.point(id) {
            Point::Pair { base, level } => Ok((base, *level)),
            _ => Err(DesignError::MalformedBlock { detail: "expected a levelled point" }),
        }
    }

    // Doubling scheme: lifts repair from sibling lifts, pair blocks
    // from a third point's pair columns.
    fn plan_double(&self, failed: usize) -> Result<BlockRepairPlan, DesignError> {
        let b = *self.design.block(failed);
        let lvl = |base: &Point, level: u8| Point::pair(base.clone(), level);
        match self.design.groups()[failed] {
            GroupTag::B1 => {
                let parts: Vec<(&Point, u8)> =
                    b.iter().map(|&p| self.pair_parts(p)).collect::<Result<_, _>>()?;
                let flip = |t: usize| -> Result<u32, DesignError> {
                    self.id_of(&lvl(parts[t].0, 1 - parts[t].1))
                };
                let h1 = self.block_of([b[0], b[1], flip(2)?, flip(3)?], failed)?;
                let h2 = self.block_of([flip(0)?, flip(1)?, b[2], b[3]], failed)?;
                Ok(BlockRepairPlan {
                    failed,
                    reads: alloc::vec![
                        self.read(h1, &[b[0], b[1]]),
                        self.read(h2, &[b[2], b[3]]),
                    ],
                })
            }
            GroupTag::B2 => {
                let (v1, _) = self.pair_parts(b[0])?;
                let (v2, _) = self.pair_parts(b[2])?;
                // Smallest base point outside the failed pair.
                let mut bases: BTreeSet<&Point> = BTreeSet::new();
                for p in self.design.points() {
                    if let Point::Pair { base, .. } = p {
                        bases.insert(base);
                    }
                }
                let v3 = bases
                    .into_iter()
                    .find(|p| *p != v1 && *p != v2)
                    .ok_or(DesignError::MissingHelperBlock { failed })?;
                let at = |base: &Point, level: u8| self.id_of(&lvl(base, level));
                let h1 =
                    self.block_of([at(v1, 0)?, at(v1, 1)?, at(v3, 0)?, at(v3, 1)?], failed)?;
                let h2 =
                    self.block_of([at(v3, 0)?, at(v3, 1)?, at(v2, 0)?, at(v2, 1)?], failed)?;
                Ok(BlockRepairPlan {
                    failed,
                    reads: alloc::vec![
                        self.read(h1, &[b[0], b[1]]),
                        self.read(h2, &[b[2], b[3]]),
                    ],
                })
            }
            _ => self.plan_generic(failed),
        }
    }

    // `3v-2` scheme: the per-group case analysis. Ranks are positions
    // of base points in universe order; levels are mod 3.
    fn plan_triple(&self, failed: usize) -> Result<BlockRepairPlan, DesignError> {
        let design = self.design;
        let b = *design.block(failed);

        let mut bases: Vec<&Point> = Vec::new();
        for p in design.points() {
            if let Point::Pair { base, .. } = p {
                if bases.last() != Some(&base.as_ref()) {
                    bases.push(base);
                }
            }
        }
        let n = bases.len() as u32;
        let rank_of = |p: u32| -> Result<u32, DesignError> {
            let (base, _) = self.pair_parts(p)?;
            bases
                .binary_search_by(|probe| probe.cmp(&base))
                .map(|r| r as u32)
                .map_err(|_| DesignError::MalformedBlock { detail: "unknown base point" })
        };
        let level_of = |p: u32| -> Result<u32, DesignError> { Ok(self.pair_parts(p)?.1 as u32) };
        let inf = self.id_of(&Point::Infinity)?;
        let at = |r: u32, l: u32| -> Result<u32, DesignError> {
            self.id_of(&Point::pair(bases[r as usize].clone(), (l % 3) as u8))
        };

        let two = |h1: usize, w1: [u32; 2], h2: usize, w2: [u32; 2]| BlockRepairPlan {
            failed,
            reads: alloc::vec![self.read(h1, &w1), self.read(h2, &w2)],
        };

        match design.groups()[failed] {
            GroupTag::B1 => {
                let (r, l): (Vec<u32>, Vec<u32>) = {
                    let r: Result<Vec<u32>, _> = b.iter().map(|&p| rank_of(p)).collect();
                    let l: Result<Vec<u32>, _> = b.iter().map(|&p| level_of(p)).collect();
                    (r?, l?)
                };
                let h1 = self.block_of(
                    [b[0], b[1], at(r[2], l[2] + 1)?, at(r[3], l[3] + 2)?],
                    failed,
                )?;
                let h2 = self.block_of(
                    [at(r[0], l[0] + 1)?, at(r[1], l[1] + 2)?, b[2], b[3]],
                    failed,
                )?;
                Ok(two(h1, [b[0], b[1]], h2, [b[2], b[3]]))
            }
            GroupTag::B2a => {
                // Failed: ((v1,i), inf, (v3,i), (v2,i)).
                let (v1, v3, v2) = (rank_of(b[0])?, rank_of(b[2])?, rank_of(b[3])?);
                let i = level_of(b[0])?;
                let h1 =
                    self.block_of([at(v1, i)?, inf, at(v2, i + 1)?, at(v3, i + 2)?], failed)?;
                let h2 = self.block_of(
                    [at(v2, i + 2)?, at(v2, i)?, at(v3, i)?, at(v3, i + 2)?],
                    failed,
                )?;
                Ok(two(h1, [b[0], inf], h2, [b[3], b[2]]))
            }
            GroupTag::B2b => {
                // Failed: ((v1,i1), inf, (v2,i2), (v3,i3)), levels all distinct.
                let (v1, v2, v3) = (rank_of(b[0])?, rank_of(b[2])?, rank_of(b[3])?);
                let (i1, i2, i3) = (level_of(b[0])?, level_of(b[2])?, level_of(b[3])?);
                let h1 = self.block_of([at(v1, i1)?, inf, at(v2, i1)?, at(v3, i1)?], failed)?;
                let h2 = if i3 == (i2 + 1) % 3 {
                    self.block_of(
                        [at(v1, i2 + 1)?, at(v2, i2 + 2)?, at(v3, i2 + 1)?, at(v2, i2)?],
                        failed,
                    )?
                } else {
                    self.block_of(
                        [at(v1, i2 + 2)?, at(v2, i2)?, at(v3, i2 + 2)?, at(v2, i2 + 1)?],
                        failed,
                    )?
                };
                Ok(two(h1, [b[0], inf], h2, [b[3], b[2]]))
            }
            GroupTag::B3 => {
                // Failed: ((v1,i), (v2,i+1), (v3,i), (v2,i+2)).
                let (v1, v2, v3) = (rank_of(b[0])?, rank_of(b[1])?, rank_of(b[2])?);
                let i = level_of(b[0])?;
                let h1 = self.block_of(
                    [at(v3, i + 1)?, at(v1, i + 2)?, at(v2, i + 1)?, at(v1, i)?],
                    failed,
                )?;
                let h2 = self.block_of(
                    [at(v2, i + 2)?, at(v3, i)?, at(v1, i + 2)?, at(v3, i + 1)?],
                    failed,
                )?;
                Ok(two(h1, [b[0], b[1]], h2, [b[2], b[3]]))
            }
            GroupTag::B4 => {
                // Failed: ((v1,i), (v1,i+1), (v2,i+1), (v2,i)).
                let (v1, v2) = (rank_of(b[0])?, rank_of(b[2])?);
                let i = level_of(b[0])?;
                let pair_block = |p: u32, q: u32| -> Result<usize, DesignError> {
                    self.block_of([at(p, i)?, at(p, i + 1)?, at(q, i + 1)?, at(q, i)?], failed)
                };
                let (h1, h2) = if (v1, v2) == (0, 1) {
                    (pair_block(0, 2)?, pair_block(1, 2)?)
                } else if v1 == n - 2 {
                    (pair_block(0, n - 2)?, pair_block(0, n - 1)?)
                } else {
                    let w1 = (v1 + 1..n)
                        .find(|&w| w != v2)
                        .ok_or(DesignError::MissingHelperBlock { failed })?;
                    let w2 = (0..v2)
                        .find(|&w| w != v1)
                        .ok_or(DesignError::MissingHelperBlock { failed })?;
                    (pair_block(v1, w1)?, pair_block(w2, v2)?)
                };
                Ok(two(h1, [b[0], b[1]], h2, [b[2], b[3]]))
            }
            GroupTag::B5 => {
                // Failed: (inf, (v,0), (v,1), (v,2)).
                let v = rank_of(b[1])?;
                // The base infinity block containing v shows up as the
                // level-zero aligned lift; take the first in block order.
                let home = design
                    .blocks()
                    .iter()
                    .zip(design.groups())
                    .position(|(blk, g)| *g == GroupTag::B2a && blk.contains(&b[1]))
                    .ok_or(DesignError::MissingHelperBlock { failed })?;
                let home_blk = design.block(home);
                let (w1, w3, w2) =
                    (rank_of(home_blk[0])?, rank_of(home_blk[2])?, rank_of(home_blk[3])?);
                let h1 = if v == w2 {
                    // v is the middle point of the base triple.
                    self.block_of([at(w1, 1)?, inf, at(v, 0)?, at(w3, 2)?], failed)?
                } else {
                    home
                };
                let h2 = if v < n - 1 {
                    self.block_of(
                        [at(v, 1)?, at(v, 2)?, at(v + 1, 2)?, at(v + 1, 1)?],
                        failed,
                    )?
                } else {
                    self.block_of([at(0, 1)?, at(0, 2)?, at(v, 2)?, at(v, 1)?], failed)?
                };
                Ok(two(h1, [inf, b[1]], h2, [b[2], b[3]]))
            }
            _ => self.plan_generic(failed),
        }
    }

    // Exhaustive search. Contiguous 2+2 first (via the adjacency
    // index), then the other contiguous splits, then the minimum-skip
    // two-helper cover.
    fn plan_generic(&self, failed: usize) -> Result<BlockRepairPlan, DesignError> {
        let target = *self.design.block(failed);

        if let Some(plan) = self.contiguous_two_two(failed, target) {
            return Ok(plan);
        }
        if let Some(plan) = self.contiguous_uneven(failed, target) {
            return Ok(plan);
        }
        if let Some(plan) = self.min_skip_cover(failed, target) {
            return Ok(plan);
        }
        Err(DesignError::NoZeroSkipPlan { block: failed })
    }

    fn contiguous_two_two(&self, failed: usize, target: [u32; 4]) -> Option<BlockRepairPlan> {
        let mut best: Option<(usize, usize, usize, usize)> = None;
        for first in 0..4 {
            for second in first + 1..4 {
                let a = target[first];
                let b = target[second];
                let pair = if a < b { [a, b] } else { [b, a] };
                let rest: Vec<u32> =
                    (0..4).filter(|&i| i != first && i != second).map(|i| target[i]).collect();
                let rest_key = if rest[0] < rest[1] {
                    [rest[0], rest[1]]
                } else {
                    [rest[1], rest[0]]
                };
                let (Some(homes1), Some(homes2)) =
                    (self.adjacency.get(&pair), self.adjacency.get(&rest_key))
                else {
                    continue;
                };
                'outer: for &(h1, s1) in homes1 {
                    if h1 == failed {
                        continue;
                    }
                    for &(h2, s2) in homes2 {
                        if h2 == failed || h2 == h1 {
                            continue;
                        }
                        let cand = (h1, s1, h2, s2);
                        if best.is_none_or(|b| cand < b) {
                            best = Some(cand);
                        }
                        break 'outer;
                    }
                }
            }
        }
        best.map(|(h1, s1, h2, s2)| BlockRepairPlan {
            failed,
            reads: alloc::vec![
                BlockRead { block: h1, positions: alloc::vec![s1, s1 + 1] },
                BlockRead { block: h2, positions: alloc::vec![s2, s2 + 1] },
            ],
        })
    }

    /// Contiguous splits other than 2+2: a run of three plus a single,
    /// or one block holding all four. Only non-Steiner designs can hit
    /// these (two distinct quadruple-system blocks share at most two
    /// points).
    fn contiguous_uneven(&self, failed: usize, target: [u32; 4]) -> Option<BlockRepairPlan> {
        let tset: BTreeSet<u32> = target.iter().copied().collect();
        for (h1, blk) in self.design.blocks().iter().enumerate() {
            if h1 == failed {
                continue;
            }
            for start in 0..2 {
                let run = &blk[start..start + 3];
                if !run.iter().all(|p| tset.contains(p)) {
                    continue;
                }
                let rest = *tset.iter().find(|p| !run.contains(p))?;
                for (h2, blk2) in self.design.blocks().iter().enumerate() {
                    if h2 == failed || h2 == h1 {
                        continue;
                    }
                    if let Some(pos) = blk2.iter().position(|&p| p == rest) {
                        return Some(BlockRepairPlan {
                            failed,
                            reads: alloc::vec![
                                BlockRead {
                                    block: h1,
                                    positions: (start..start + 3).collect()
                                },
                                BlockRead { block: h2, positions: alloc::vec![pos] },
                            ],
                        });
                    }
                }
            }
            let mut key = *blk;
            key.sort_unstable();
            let mut tkey = target;
            tkey.sort_unstable();
            if key == tkey {
                return Some(BlockRepairPlan {
                    failed,
                    reads: alloc::vec![BlockRead { block: h1, positions: (0..4).collect() }],
                });
            }
        }
        None
    }

    /// Minimum-skip two-helper cover with arbitrary read positions;
    /// the escape hatch for orderings without contiguous plans.
    fn min_skip_cover(&self, failed: usize, target: [u32; 4]) -> Option<BlockRepairPlan> {
        let tset: BTreeSet<u32> = target.iter().copied().collect();
        // (positions ascending, point at each position) per helper.
        let shared: Vec<(usize, Vec<(usize, u32)>)> = self
            .design
            .blocks()
            .iter()
            .enumerate()
            .filter(|(h, _)| *h != failed)
            .map(|(h, blk)| {
                let hits: Vec<(usize, u32)> = blk
                    .iter()
                    .enumerate()
                    .filter(|(_, p)| tset.contains(p))
                    .map(|(i, &p)| (i, p))
                    .collect();
                (h, hits)
            })
            .filter(|(_, hits)| !hits.is_empty())
            .collect();

        let span_skip = |positions: &[usize]| -> u64 {
            (positions[positions.len() - 1] - positions[0]) as u64 + 1 - positions.len() as u64
        };

        let mut best: Option<(u64, BlockRepairPlan)> = None;
        let mut consider = |skip: u64, plan: BlockRepairPlan| {
            let better = match &best {
                None => true,
                Some((s, p)) => {
                    (skip, plan_key(&plan)) < (*s, plan_key(p))
                }
            };
            if better {
                best = Some((skip, plan));
            }
        };

        for (h1, hits1) in &shared {
            // Every nonempty subset of this helper's shared points.
            for mask in 1u32..(1 << hits1.len()) {
                let sub: Vec<(usize, u32)> = hits1
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &x)| x)
                    .collect();
                let got: BTreeSet<u32> = sub.iter().map(|&(_, p)| p).collect();
                let rest: BTreeSet<u32> = tset.difference(&got).copied().collect();
                let pos1: Vec<usize> = sub.iter().map(|&(i, _)| i).collect();
                if rest.is_empty() {
                    let plan = BlockRepairPlan {
                        failed,
                        reads: alloc::vec![BlockRead { block: *h1, positions: pos1.clone() }],
                    };
                    consider(span_skip(&pos1), plan);
                    continue;
                }
                for (h2, hits2) in &shared {
                    if h2 == h1 {
                        continue;
                    }
                    let have: BTreeMap<u32, usize> =
                        hits2.iter().map(|&(i, p)| (p, i)).collect();
                    if !rest.iter().all(|p| have.contains_key(p)) {
                        continue;
                    }
                    let mut pos2: Vec<usize> = rest.iter().map(|p| have[p]).collect();
                    pos2.sort_unstable();
                    let skip = span_skip(&pos1) + span_skip(&pos2);
                    let plan = BlockRepairPlan {
                        failed,
                        reads: alloc::vec![
                            BlockRead { block: *h1, positions: pos1.clone() },
                            BlockRead { block: *h2, positions: pos2 },
                        ],
                    };
                    consider(skip, plan);
                }
            }
        }
        best.map(|(_, plan)| plan)
    }
}

fn plan_key(plan: &BlockRepairPlan) -> Vec<(usize, Vec<usize>)> {
    plan.reads.iter().map(|r| (r.block, r.positions.clone())).collect()
}

/// Checks a plan against its design: at most two distinct helpers, no
/// helper equals the failed block, and the read points are exactly the
/// failed block's points.
pub fn plan_covers_block(d: &Design, plan: &BlockRepairPlan) -> bool {
    if plan.reads.len() > 2 {
        return false;
    }
    let mut got = BTreeSet::new();
    let mut helpers = BTreeSet::new();
    for r in &plan.reads {
        if r.block == plan.failed || r.positions.windows(2).any(|w| w[0] >= w[1]) {
            return false;
        }
        helpers.insert(r.block);
        for &pos in &r.positions {
            if pos >= 4 {
                return false;
            }
            got.insert(d.block(r.block)[pos]);
        }
    }
    let want: BTreeSet<u32> = d.block(plan.failed).iter().copied().collect();
    helpers.len() == plan.reads.len() && got == want
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::{double, sqs14, sqs_trivial};

    #[test]
    fn doubling_lift_block_splits_two_two() {
        let d = double(&sqs_trivial()).unwrap();
        // Block 0 is the all-level-zero lift (1_0, 2_0, 3_0, 4_0).
        let plan = plan_block_repair(&d, 0).unwrap();
        assert_eq!(plan.locality(), 2);
        assert_eq!(plan.skip_cost(), 0);
        assert!(plan_covers_block(&d, &plan));
        assert_eq!(plan.reads[0].positions, alloc::vec![0, 1]);
        assert_eq!(plan.reads[1].positions, alloc::vec![2, 3]);
    }

    #[test]
    fn doubling_pair_block_uses_the_next_free_point() {
        let d = double(&sqs_trivial()).unwrap();
        // Block 8 is (1_0, 1_1, 2_0, 2_1); the sibling via base point 3
        // is (1_0, 1_1, 3_0, 3_1) at index 9 and (2_0, 2_1, 3_0, 3_1)
        // at index 11.
        let plan = plan_block_repair(&d, 8).unwrap();
        assert_eq!(plan.reads[0].block, 9);
        assert_eq!(plan.reads[0].positions, alloc::vec![0, 1]);
        // Pair blocks are stored smaller base first, so the read of
        // (2_0, 2_1) from (2_0, 2_1, 3_0, 3_1) hits the front.
        assert_eq!(plan.reads[1].block, 11);
        assert_eq!(plan.reads[1].positions, alloc::vec![0, 1]);
        assert_eq!(plan.skip_cost(), 0);
    }

    #[test]
    fn every_doubled_block_has_a_zero_skip_scheme_plan() {
        let d = double(&double(&sqs_trivial()).unwrap()).unwrap();
        let planner = RepairPlanner::new(&d);
        for i in 0..d.block_count() {
            let plan = planner.plan(i).unwrap();
            assert_eq!(plan.skip_cost(), 0, "block {i}");
            assert!(plan.locality() <= 2);
            assert!(plan_covers_block(&d, &plan), "block {i}");
        }
    }

    #[test]
    fn order_14_repairs_by_search_with_zero_skip() {
        let d = sqs14().unwrap();
        let planner = RepairPlanner::new(&d);
        for i in 0..d.block_count() {
            let plan = planner.plan(i).unwrap();
            assert_eq!(plan.skip_cost(), 0, "block {i}");
            assert!(plan_covers_block(&d, &plan), "block {i}");
        }
    }

    #[test]
    fn single_block_design_has_no_plan() {
        let d = sqs_trivial();
        assert_eq!(
            plan_block_repair(&d, 0).unwrap_err(),
            DesignError::NoZeroSkipPlan { block: 0 }
        );
    }

    #[test]
    fn out_of_range_block() {
        let d = sqs_trivial();
        assert!(matches!(
            plan_block_repair(&d, 5),
            Err(DesignError::BlockOutOfRange { block: 5 })
        ));
    }
}
