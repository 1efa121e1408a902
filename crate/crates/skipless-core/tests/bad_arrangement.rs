//! Regression fixture: an order-8 quadruple system whose block
//! orderings force interleaved reads. The repair planner must fall
//! back to the minimum-skip cover and report the cost honestly rather
//! than failing or pretending the reads were contiguous.

use skipless_core::design::{
    plan_covers_block, verify_sqs, Design, GroupTag, Point, RepairPlanner, SchemeKind,
};
use skipless_core::fr::{repair_node, to_array_code, PacketStore};
use skipless_core::gf::FieldElement;

/// Point labels 1..=8; node 10 holds (2, 4, 6, 8).
const BAD_ARRANGEMENT: [[u32; 4]; 14] = [
    [1, 2, 3, 4],
    [1, 2, 5, 6],
    [1, 2, 7, 8],
    [1, 3, 5, 7],
    [1, 6, 3, 8],
    [1, 4, 5, 8],
    [1, 4, 7, 6],
    [5, 6, 7, 8],
    [3, 4, 7, 8],
    [3, 4, 5, 6],
    [2, 4, 6, 8],
    [7, 4, 5, 2],
    [3, 2, 7, 6],
    [3, 2, 5, 8],
];

fn fixture() -> Design {
    let points: Vec<Point> = (1..=8).map(Point::Finite).collect();
    let blocks: Vec<[u32; 4]> =
        BAD_ARRANGEMENT.iter().map(|b| b.map(|p| p - 1)).collect();
    let groups = vec![GroupTag::Ungrouped; blocks.len()];
    Design::from_parts(points, blocks, groups, SchemeKind::Generic)
        .unwrap()
        .certify()
        .unwrap()
}

#[test]
fn fixture_is_a_quadruple_system() {
    let d = fixture();
    assert_eq!(d.block_count(), 14);
    assert!(verify_sqs(&d).unwrap().is_sqs);
}

#[test]
fn highlighted_node_costs_two_skips() {
    let d = fixture();
    let planner = RepairPlanner::new(&d);
    let plan = planner.plan(10).unwrap();
    assert_eq!(plan.skip_cost(), 2);
    assert_eq!(plan.locality(), 2);
    assert!(plan_covers_block(&d, &plan));
    // (2, 4) from (1, 2, 3, 4) and (6, 8) from (1, 6, 3, 8), each a
    // one-gap read.
    assert_eq!(plan.reads[0].block, 0);
    assert_eq!(plan.reads[0].positions, vec![1, 3]);
    assert_eq!(plan.reads[1].block, 4);
    assert_eq!(plan.reads[1].positions, vec![1, 3]);
}

#[test]
fn repair_still_transfers_the_right_packets() {
    let d = fixture();
    let code = to_array_code(d);
    let packets: Vec<FieldElement> = (100..108).map(FieldElement).collect();
    let store = PacketStore::new(packets);
    let repair = repair_node(&code, &store, 10).unwrap();
    let want: Vec<FieldElement> =
        code.node_packets(10).iter().map(|&p| *store.get(p)).collect();
    assert_eq!(repair.packets, want);
    assert_eq!(repair.metrics.skip_cost, 2);
    assert_eq!(repair.metrics.bandwidth, 4);
    assert_eq!(repair.metrics.locality, 2);
}

#[test]
fn per_node_minimum_skips() {
    let d = fixture();
    let planner = RepairPlanner::new(&d);
    let skips: Vec<u64> =
        (0..d.block_count()).map(|i| planner.plan(i).unwrap().skip_cost()).collect();
    assert_eq!(skips, vec![0, 0, 0, 2, 0, 0, 0, 0, 0, 0, 2, 0, 0, 0]);
}
