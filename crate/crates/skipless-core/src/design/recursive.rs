//! The two recursive constructions: doubling (`v -> 2v`) and the
//! `3v-2` expansion. Both take any certified quadruple system and
//! order the new blocks so that every block has a two-helper repair
//! with contiguous reads; the triple-coverage verifier is run on every
//! output before it is certified.

use alloc::vec::Vec;

use super::{Design, DesignError, GroupTag, Point, SchemeKind};

/// The order-4 system: one block on four points.
pub fn sqs_trivial() -> Design {
    let points = (1..=4).map(Point::Finite).collect();
    let design =
        Design::from_parts(points, alloc::vec![[0, 1, 2, 3]], alloc::vec![GroupTag::Ungrouped], SchemeKind::Generic)
            .expect("static shape");
    design.certify().expect("one block covers all four triples")
}

/// Doubles a certified system onto two levels per point.
///
/// Group `B1` lifts each base block to the eight even-level-sum tuples
/// in base point order; group `B2` pairs both levels of two base
/// points. Repair reads are the first or last two positions of a
/// sibling block.
pub fn double(d: &Design) -> Result<Design, DesignError> {
    if !d.is_certified() {
        return Err(DesignError::NotAnSqs);
    }
    let mut points = Vec::with_capacity(d.v() * 2);
    for p in d.points() {
        points.push(Point::pair(p.clone(), 0));
        points.push(Point::pair(p.clone(), 1));
    }
    let id = |base: u32, level: u32| base * 2 + level;

    let mut blocks = Vec::new();
    let mut groups = Vec::new();
    for b in d.blocks() {
        for levels in 0u32..16 {
            if levels.count_ones() % 2 != 0 {
                continue;
            }
            let l = |t: u32| (levels >> (3 - t)) & 1;
            blocks.push([id(b[0], l(0)), id(b[1], l(1)), id(b[2], l(2)), id(b[3], l(3))]);
            groups.push(GroupTag::B1);
        }
    }
    let v = d.v() as u32;
    for p in 0..v {
        for q in p + 1..v {
            blocks.push([id(p, 0), id(p, 1), id(q, 0), id(q, 1)]);
            groups.push(GroupTag::B2);
        }
    }
    Design::from_parts(points, blocks, groups, SchemeKind::Double)?.certify()
}

/// Replaces one point of a certified system with the shift-fixed
/// infinity, keeping everything else intact. Used to feed systems that
/// were not built over an infinity point into [`triple_minus_two`].
pub fn designate_infinity(d: &Design, point_id: u32) -> Result<Design, DesignError> {
    if point_id as usize >= d.v() {
        return Err(DesignError::BlockOutOfRange { block: point_id as usize });
    }
    if d.points().iter().any(Point::is_infinity) {
        return Err(DesignError::MalformedBlock { detail: "design already has an infinity point" });
    }
    let mut points = d.points().to_vec();
    points[point_id as usize] = Point::Infinity;
    let mut out = Design::from_parts(
        points,
        d.blocks().to_vec(),
        d.groups().to_vec(),
        SchemeKind::Generic,
    )?;
    out.restore_certificate(d.is_certified());
    Ok(out)
}

/// The `3v-2` construction: expands a certified system over
/// `{inf} + [N]` to order `3N + 1` on three levels per finite point.
///
/// Infinity-free base blocks lift to the 27 zero-level-sum tuples
/// (`B1`). Each infinity block contributes the aligned-level tuples
/// (`B2a`), the all-distinct-level tuples (`B2b`), and the nine
/// rotated two-of-a-kind tuples (`B3`). Levels of point pairs (`B4`)
/// and the infinity spines (`B5`) complete the coverage.
pub fn triple_minus_two(d: &Design) -> Result<Design, DesignError> {
    if !d.is_certified() {
        return Err(DesignError::NotAnSqs);
    }
    let inf = d
        .points()
        .iter()
        .position(Point::is_infinity)
        .ok_or(DesignError::MissingInfinity)? as u32;

    // Finite base points in universe order get ranks 0..N-1.
    let finite: Vec<u32> = (0..d.v() as u32).filter(|&p| p != inf).collect();
    let n = finite.len() as u32;
    let rank_of = |p: u32| finite.iter().position(|&q| q == p).expect("finite point") as u32;

    let mut points = Vec::with_capacity(1 + 3 * n as usize);
    points.push(Point::Infinity);
    for &p in &finite {
        for level in 0..3 {
            points.push(Point::pair(d.point(p).clone(), level));
        }
    }
    // Point id of finite rank r at level l; infinity is id 0.
    let id = |r: u32, l: u32| 1 + 3 * r + (l % 3);

    let mut blocks = Vec::new();
    let mut groups = Vec::new();
    let push = |b: [u32; 4], g: GroupTag, blocks: &mut Vec<[u32; 4]>, groups: &mut Vec<GroupTag>| {
        blocks.push(b);
        groups.push(g);
    };

    // B1: infinity-free base blocks, all level tuples with sum 0 mod 3.
    for b in d.blocks() {
        if b.contains(&inf) {
            continue;
        }
        let r = [rank_of(b[0]), rank_of(b[1]), rank_of(b[2]), rank_of(b[3])];
        for l0 in 0..3u32 {
            for l1 in 0..3u32 {
                for l2 in 0..3u32 {
                    let l3 = (3 - (l0 + l1 + l2) % 3) % 3;
                    push(
                        [id(r[0], l0), id(r[1], l1), id(r[2], l2), id(r[3], l3)],
                        GroupTag::B1,
                        &mut blocks,
                        &mut groups,
                    );
                }
            }
        }
    }

    // Infinity blocks feed B2a, B2b, B3; group runs stay contiguous.
    let inf_triples: Vec<[u32; 3]> = d
        .blocks()
        .iter()
        .filter(|b| b.contains(&inf))
        .map(|b| {
            let mut t: Vec<u32> = b.iter().copied().filter(|&p| p != inf).map(rank_of).collect();
            t.sort_unstable();
            [t[0], t[1], t[2]]
        })
        .collect();

    for &[v1, v2, v3] in &inf_triples {
        for i in 0..3u32 {
            push([id(v1, i), 0, id(v3, i), id(v2, i)], GroupTag::B2a, &mut blocks, &mut groups);
        }
    }
    const LEVEL_PERMS: [[u32; 3]; 6] =
        [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    for &[v1, v2, v3] in &inf_triples {
        for lv in LEVEL_PERMS {
            push(
                [id(v1, lv[0]), 0, id(v2, lv[1]), id(v3, lv[2])],
                GroupTag::B2b,
                &mut blocks,
                &mut groups,
            );
        }
    }
    for &[v1, v2, v3] in &inf_triples {
        for [w1, w2, w3] in [[v1, v2, v3], [v2, v3, v1], [v3, v1, v2]] {
            for i in 0..3u32 {
                push(
                    [id(w1, i), id(w2, i + 1), id(w3, i), id(w2, i + 2)],
                    GroupTag::B3,
                    &mut blocks,
                    &mut groups,
                );
            }
        }
    }

    // B4: both ordered levels of each point pair, three rotations.
    for p in 0..n {
        for q in p + 1..n {
            for i in 0..3u32 {
                push(
                    [id(p, i), id(p, i + 1), id(q, i + 1), id(q, i)],
                    GroupTag::B4,
                    &mut blocks,
                    &mut groups,
                );
            }
        }
    }

    // B5: infinity plus all three levels of one point.
    for p in 0..n {
        push([0, id(p, 0), id(p, 1), id(p, 2)], GroupTag::B5, &mut blocks, &mut groups);
    }

    Design::from_parts(points, blocks, groups, SchemeKind::Triple)?.certify()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::verify::point_replication;
    use crate::design::{check_repeated_adjacent_pairs, verify_sqs};

    #[test]
    fn trivial_system() {
        let d = sqs_trivial();
        assert_eq!(d.v(), 4);
        assert_eq!(d.block_count(), 1);
        assert_eq!(d.expected_block_count(), 1);
        assert!(d.is_certified());
        assert!(verify_sqs(&d).unwrap().is_sqs);
    }

    #[test]
    fn doubling_order_four() {
        let d = double(&sqs_trivial()).unwrap();
        assert_eq!(d.v(), 8);
        assert_eq!(d.block_count(), 14);
        let b1 = d.groups().iter().filter(|g| **g == GroupTag::B1).count();
        let b2 = d.groups().iter().filter(|g| **g == GroupTag::B2).count();
        assert_eq!((b1, b2), (8, 6));
        assert!(verify_sqs(&d).unwrap().is_sqs);
        // First lift keeps base order at level zero.
        assert_eq!(d.display_block(0), "(1_0, 2_0, 3_0, 4_0)");
        assert_eq!(d.display_block(8), "(1_0, 1_1, 2_0, 2_1)");
        // Doubling does not give repeated adjacent pairs; its zero-skip
        // plans come from the explicit sibling scheme instead.
        assert!(!check_repeated_adjacent_pairs(&d).ok);
    }

    #[test]
    fn doubling_rejects_uncertified_input() {
        let mut d = sqs_trivial();
        d.restore_certificate(false);
        assert_eq!(double(&d).unwrap_err(), DesignError::NotAnSqs);
    }

    #[test]
    fn triple_of_order_four() {
        let base = designate_infinity(&sqs_trivial(), 0).unwrap();
        let d = triple_minus_two(&base).unwrap();
        assert_eq!(d.v(), 10);
        assert_eq!(d.block_count(), 30);
        let sizes: Vec<usize> = [
            GroupTag::B1,
            GroupTag::B2a,
            GroupTag::B2b,
            GroupTag::B3,
            GroupTag::B4,
            GroupTag::B5,
        ]
        .iter()
        .map(|g| d.groups().iter().filter(|h| *h == g).count())
        .collect();
        assert_eq!(sizes, alloc::vec![0, 3, 6, 9, 9, 3]);
        assert!(verify_sqs(&d).unwrap().is_sqs);
    }

    #[test]
    fn triple_of_order_eight() {
        let base = designate_infinity(&double(&sqs_trivial()).unwrap(), 0).unwrap();
        let d = triple_minus_two(&base).unwrap();
        assert_eq!(d.v(), 22);
        assert_eq!(d.block_count() as u64, d.expected_block_count());
        assert!(verify_sqs(&d).unwrap().is_sqs);
    }

    #[test]
    fn triple_requires_infinity() {
        let d = sqs_trivial();
        assert_eq!(triple_minus_two(&d).unwrap_err(), DesignError::MissingInfinity);
    }

    #[test]
    fn replication_factor_of_order_eight() {
        let d = double(&sqs_trivial()).unwrap();
        // Every point lies in (v-1)(v-2)/6 = 7 blocks.
        assert!(point_replication(&d).iter().all(|&r| r == 7));
    }
}
