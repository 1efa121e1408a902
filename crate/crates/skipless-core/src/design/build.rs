//! Order dispatcher: builds a zero-skip quadruple system for every
//! order in the supported closure, recording the derivation trace.
//!
//! The closure is generated by the four embedded tables plus the two
//! recursions: doubling reaches `4, 8 (mod 12)` and the `3v-2` step
//! reaches `4, 10 (mod 18)`, which together give the residues
//! `4, 8, 10, 16, 20, 22, 28, 32 (mod 36)`; the tables add the
//! sporadic orders 14, 26, 34, 38.

use alloc::vec::Vec;

use super::{
    designate_infinity, double, sqs_trivial, triple_minus_two, Design, DesignError, Point,
    TableSet,
};

/// Default ceiling on requested orders; every closure member up to
/// here is reachable by the recursion.
pub const DEFAULT_ORDER_BOUND: u32 = 100;

const RESIDUES_MOD_36: [u32; 8] = [4, 8, 10, 16, 20, 22, 28, 32];
const TABLE_ORDERS: [u32; 4] = [14, 26, 34, 38];

/// Quadruple systems of order `v` exist iff `v = 2, 4 (mod 6)`.
pub fn admissible_order(v: u32) -> bool {
    v >= 4 && matches!(v % 6, 2 | 4)
}

/// Membership in the zero-skip closure this crate can construct.
pub fn zero_skip_order(v: u32) -> bool {
    v >= 4 && (RESIDUES_MOD_36.contains(&(v % 36)) || TABLE_ORDERS.contains(&v))
}

fn reachable(v: u32) -> bool {
    v == 4
        || TABLE_ORDERS.contains(&v)
        || (v.is_multiple_of(2) && reachable(v / 2))
        || (v % 3 == 1 && v > 2 && reachable(v.div_ceil(3)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuildMethod {
    Trivial,
    Table,
    Double { from: u32 },
    TripleMinusTwo { from: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildStep {
    pub order: u32,
    pub method: BuildMethod,
}

#[derive(Debug, Clone)]
pub struct BuiltSqs {
    pub design: Design,
    /// Innermost step first.
    pub trace: Vec<BuildStep>,
}

/// Builds the zero-skip system of order `v`. Doubling is preferred
/// over the `3v-2` step when both apply (shallower recursion).
pub fn build_sqs(v: u32, tables: &TableSet, bound: u32) -> Result<BuiltSqs, DesignError> {
    if v > bound || !zero_skip_order(v) {
        return Err(DesignError::UnsupportedOrder { v });
    }
    let mut trace = Vec::new();
    let design = construct(v, tables, &mut trace)?;
    Ok(BuiltSqs { design, trace })
}

fn construct(v: u32, tables: &TableSet, trace: &mut Vec<BuildStep>) -> Result<Design, DesignError> {
    if v == 4 {
        trace.push(BuildStep { order: 4, method: BuildMethod::Trivial });
        return Ok(sqs_trivial());
    }
    if tables.covers(v) {
        trace.push(BuildStep { order: v, method: BuildMethod::Table });
        return tables.design_for(v);
    }
    if v.is_multiple_of(2) && reachable(v / 2) {
        let base = construct(v / 2, tables, trace)?;
        trace.push(BuildStep { order: v, method: BuildMethod::Double { from: v / 2 } });
        return double(&base);
    }
    if v % 3 == 1 && reachable(v.div_ceil(3)) {
        let from = v.div_ceil(3);
        let base = construct(from, tables, trace)?;
        let base = if base.points().iter().any(Point::is_infinity) {
            base
        } else {
            designate_infinity(&base, 0)?
        };
        trace.push(BuildStep { order: v, method: BuildMethod::TripleMinusTwo { from } });
        return triple_minus_two(&base);
    }
    Err(DesignError::UnsupportedOrder { v })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::verify_sqs;

    #[test]
    fn order_eight_is_one_doubling() {
        let built = build_sqs(8, &TableSet::embedded(), DEFAULT_ORDER_BOUND).unwrap();
        assert_eq!(built.design.block_count(), 14);
        assert_eq!(
            built.trace,
            alloc::vec![
                BuildStep { order: 4, method: BuildMethod::Trivial },
                BuildStep { order: 8, method: BuildMethod::Double { from: 4 } },
            ]
        );
    }

    #[test]
    fn order_twenty_doubles_the_triple() {
        let built = build_sqs(20, &TableSet::embedded(), DEFAULT_ORDER_BOUND).unwrap();
        let methods: Vec<BuildMethod> = built.trace.iter().map(|s| s.method).collect();
        assert_eq!(
            methods,
            alloc::vec![
                BuildMethod::Trivial,
                BuildMethod::TripleMinusTwo { from: 4 },
                BuildMethod::Double { from: 10 },
            ]
        );
        assert!(verify_sqs(&built.design).unwrap().is_sqs);
    }

    #[test]
    fn order_twelve_is_unsupported() {
        assert_eq!(
            build_sqs(12, &TableSet::embedded(), DEFAULT_ORDER_BOUND).unwrap_err(),
            DesignError::UnsupportedOrder { v: 12 }
        );
    }

    #[test]
    fn order_fifty_is_admissible_but_outside_the_closure() {
        // 50 = 2 (mod 6) so a system exists, but 50 = 14 (mod 36) is
        // not a closure residue and 25 is not a quadruple-system order.
        assert!(admissible_order(50));
        assert!(!zero_skip_order(50));
        assert!(build_sqs(50, &TableSet::embedded(), DEFAULT_ORDER_BOUND).is_err());
    }

    #[test]
    fn bound_is_enforced() {
        assert_eq!(
            build_sqs(112, &TableSet::embedded(), DEFAULT_ORDER_BOUND).unwrap_err(),
            DesignError::UnsupportedOrder { v: 112 }
        );
    }

    #[test]
    fn every_closure_member_up_to_the_bound_is_reachable() {
        for v in 4..=DEFAULT_ORDER_BOUND {
            if zero_skip_order(v) {
                assert!(reachable(v), "closure member {v} unreachable");
            }
        }
    }
}
