//! Independent accounting for repair events: the skip-cost metric, per
//! repair measurement, whole-code failure sweeps, and the comparison
//! table against the two-parity comparator.
//!
//! Skip cost of one read at positions `i_1 < ... < i_t` is
//! `i_t - i_1 - (t - 1)`: the unread positions straddled by the read.
//! It is summed across helpers for a repair.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::design::{BlockRepairPlan, Design};
use crate::fr::FrCode;
use crate::gf::Field;
use crate::zigzag::{Construction, RepairPlan, ZigzagCode, ZigzagError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SimError {
    EmptyRead,
    OutOfRange { position: u32, column_height: u32 },
    NotIncreasing,
    ParameterOutOfRange { what: &'static str, value: i64, min: i64, max: i64 },
}

impl fmt::Display for SimError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimError::EmptyRead => write!(f, "read trace is empty"),
            SimError::OutOfRange { position, column_height } => {
                write!(f, "position {position} outside column of height {column_height}")
            }
            SimError::NotIncreasing => write!(f, "positions must be strictly increasing"),
            SimError::ParameterOutOfRange { what, value, min, max } => {
                write!(f, "{what} = {value} outside supported range {min}..={max}")
            }
        }
    }
}

impl core::error::Error for SimError {}

fn validate_positions(positions: &[u32], column_height: u32) -> Result<(), SimError> {
    let Some(&last) = positions.last() else {
        return Err(SimError::EmptyRead);
    };
    if positions.windows(2).any(|w| w[0] >= w[1]) {
        return Err(SimError::NotIncreasing);
    }
    if last >= column_height {
        return Err(SimError::OutOfRange { position: last, column_height });
    }
    Ok(())
}

/// `i_t - i_1 - (t - 1)` for a strictly increasing read.
pub fn skip_cost(positions: &[u32], column_height: u32) -> Result<u64, SimError> {
    validate_positions(positions, column_height)?;
    let first = positions[0] as u64;
    let last = positions[positions.len() - 1] as u64;
    Ok(last - first - (positions.len() as u64 - 1))
}

/// Weighted variant: each skipped position contributes `weight(pos)`.
/// The default metric weighs every skipped position as one.
pub fn skip_cost_weighted<F: Fn(u32) -> u64>(
    positions: &[u32],
    column_height: u32,
    weight: F,
) -> Result<u64, SimError> {
    validate_positions(positions, column_height)?;
    let mut acc = 0;
    for pos in positions[0]..=positions[positions.len() - 1] {
        if !positions.contains(&pos) {
            acc += weight(pos);
        }
    }
    Ok(acc)
}

/// Raw per-helper read positions of one repair event.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HelperTrace {
    pub label: String,
    pub positions: Vec<u32>,
    pub column_height: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ReadTrace {
    pub helpers: Vec<HelperTrace>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HelperMetrics {
    pub helper: String,
    pub symbols: u64,
    pub skip: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepairMetrics {
    /// Total symbols read.
    pub bandwidth: u64,
    /// Helper count.
    pub locality: usize,
    /// Total skip over helpers.
    pub skip_cost: u64,
    pub per_helper: Vec<HelperMetrics>,
}

/// Aggregates a read trace into repair metrics.
pub fn measure(trace: &ReadTrace) -> Result<RepairMetrics, SimError> {
    if trace.helpers.is_empty() {
        return Err(SimError::EmptyRead);
    }
    let mut per_helper = Vec::with_capacity(trace.helpers.len());
    for h in &trace.helpers {
        per_helper.push(HelperMetrics {
            helper: h.label.clone(),
            symbols: h.positions.len() as u64,
            skip: skip_cost(&h.positions, h.column_height)?,
        });
    }
    Ok(RepairMetrics {
        bandwidth: per_helper.iter().map(|h| h.symbols).sum(),
        locality: per_helper.len(),
        skip_cost: per_helper.iter().map(|h| h.skip).sum(),
        per_helper,
    })
}

/// Read trace of a zigzag repair plan; helpers are labelled `a{i}` for
/// systematic columns and `p{j}` for parities.
pub fn zigzag_read_trace(code: &ZigzagCode, plan: &RepairPlan) -> ReadTrace {
    let helpers = plan
        .helpers
        .iter()
        .map(|h| HelperTrace {
            label: if h.column < code.k() {
                format!("a{}", h.column)
            } else {
                format!("p{}", h.column - code.k())
            },
            positions: h.rows.clone(),
            column_height: code.row_count() as u32,
        })
        .collect();
    ReadTrace { helpers }
}

/// Read trace of a block repair plan; helpers are labelled `b{index}`.
pub fn block_read_trace(_design: &Design, plan: &BlockRepairPlan) -> ReadTrace {
    let helpers = plan
        .reads
        .iter()
        .map(|r| HelperTrace {
            label: format!("b{}", r.block),
            positions: r.positions.iter().map(|&p| p as u32).collect(),
            column_height: 4,
        })
        .collect();
    ReadTrace { helpers }
}

/// Exact reduced fraction, used for helper read ratios.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fraction {
    pub num: u64,
    pub den: u64,
}

impl Fraction {
    pub fn new(num: u64, den: u64) -> Fraction {
        let g = gcd(num.max(1), den.max(1));
        if num == 0 {
            Fraction { num: 0, den: 1 }
        } else {
            Fraction { num: num / g, den: den / g }
        }
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRow {
    pub failed: usize,
    pub metrics: RepairMetrics,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSummary {
    pub rows: usize,
    pub max_skip: u64,
    pub total_skip: u64,
    pub mean_skip: f64,
    pub max_locality: usize,
    /// Largest single-helper read as a fraction of its column height.
    pub max_helper_fraction: Fraction,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
    /// Failure cases without a plan, with the planner's diagnostic.
    pub skipped: Vec<(usize, String)>,
    pub summary: SweepSummary,
}

/// Builds the summary block from finished rows; exposed so callers
/// that fan rows out across workers can reuse the aggregation.
pub fn summarize(rows: &[SweepRow], column_height: u64) -> SweepSummary {
    let total_skip = rows.iter().map(|r| r.metrics.skip_cost).sum();
    let max_fraction = rows
        .iter()
        .flat_map(|r| r.metrics.per_helper.iter().map(|h| h.symbols))
        .max()
        .unwrap_or(0);
    SweepSummary {
        rows: rows.len(),
        max_skip: rows.iter().map(|r| r.metrics.skip_cost).max().unwrap_or(0),
        total_skip,
        mean_skip: if rows.is_empty() { 0.0 } else { total_skip as f64 / rows.len() as f64 },
        max_locality: rows.iter().map(|r| r.metrics.locality).max().unwrap_or(0),
        max_helper_fraction: Fraction::new(max_fraction, column_height),
    }
}

/// One metrics row per repairable systematic column.
pub fn sweep_zigzag(code: &ZigzagCode) -> Result<SweepReport, SimError> {
    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for s in 0..code.k() {
        match crate::zigzag::plan_repair(code, s) {
            Ok(plan) => {
                let metrics = measure(&zigzag_read_trace(code, &plan))?;
                rows.push(SweepRow { failed: s, metrics });
            }
            Err(e) => skipped.push((s, format!("{e}"))),
        }
    }
    let summary = summarize(&rows, code.row_count() as u64);
    Ok(SweepReport { rows, skipped, summary })
}

/// One metrics row per node of a fractional repetition code.
pub fn sweep_fr(code: &FrCode) -> Result<SweepReport, SimError> {
    let planner = crate::design::RepairPlanner::new(code.design());
    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for node in 0..code.node_count() {
        match planner.plan(node) {
            Ok(plan) => {
                let metrics = measure(&block_read_trace(code.design(), &plan))?;
                rows.push(SweepRow { failed: node, metrics });
            }
            Err(e) => skipped.push((node, format!("{e}"))),
        }
    }
    let summary = summarize(&rows, 4);
    Ok(SweepReport { rows, skipped, summary })
}

/// One comparison row: a construction's shape plus its measured
/// aggregate skip over all repairable systematic nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct CompareRow {
    pub construction: Construction,
    pub m: u8,
    pub k: usize,
    pub columns: usize,
    /// Code rate `k / N` as an exact fraction.
    pub rate: Fraction,
    /// `(failed node, total skip of its repair)` pairs.
    pub per_node_skip: Vec<(usize, u64)>,
    pub aggregate_skip: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompareTable {
    pub m: u8,
    pub rows: Vec<CompareRow>,
}

/// Side-by-side totals for the two-parity comparator versus the two
/// zero-skip constructions of the same `m`, measured by the simulator.
pub fn compare_baseline(m: u8, field: &Field) -> Result<CompareTable, ZigzagError> {
    let spec = *field.spec();
    let codes = [
        crate::zigzag::build_baseline(m, spec)?,
        crate::zigzag::build_construction_a(m, spec)?,
        crate::zigzag::build_construction_b(m, spec)?,
    ];
    let mut rows = Vec::new();
    for code in &codes {
        let report = sweep_zigzag(code).expect("plans produce valid traces");
        let per_node_skip: Vec<(usize, u64)> =
            report.rows.iter().map(|r| (r.failed, r.metrics.skip_cost)).collect();
        rows.push(CompareRow {
            construction: code.construction(),
            m,
            k: code.k(),
            columns: code.column_count(),
            rate: Fraction::new(code.k() as u64, code.column_count() as u64),
            aggregate_skip: per_node_skip.iter().map(|(_, s)| s).sum(),
            per_node_skip,
        });
    }
    Ok(CompareTable { m, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldSpec;
    use crate::zigzag::{build_baseline, build_construction_a, build_construction_b, plan_repair};
    use alloc::vec;

    #[test]
    fn consecutive_reads_cost_nothing() {
        assert_eq!(skip_cost(&[0, 1, 2, 3], 4).unwrap(), 0);
    }

    #[test]
    fn interleaved_read_costs_the_gap() {
        assert_eq!(skip_cost(&[0, 2], 4).unwrap(), 1);
        assert_eq!(skip_cost(&[1, 4, 8], 16).unwrap(), 5);
    }

    #[test]
    fn validation_errors() {
        assert_eq!(skip_cost(&[], 4).unwrap_err(), SimError::EmptyRead);
        assert_eq!(
            skip_cost(&[1, 4], 4).unwrap_err(),
            SimError::OutOfRange { position: 4, column_height: 4 }
        );
        assert_eq!(skip_cost(&[2, 2], 4).unwrap_err(), SimError::NotIncreasing);
        assert_eq!(measure(&ReadTrace::default()).unwrap_err(), SimError::EmptyRead);
    }

    #[test]
    fn weighted_default_matches_plain() {
        let positions = [1u32, 4, 8, 9];
        assert_eq!(
            skip_cost_weighted(&positions, 16, |_| 1).unwrap(),
            skip_cost(&positions, 16).unwrap()
        );
        // A nonuniform weight counts each skipped slot by its own cost.
        assert_eq!(skip_cost_weighted(&positions, 16, |p| p as u64).unwrap(), 2 + 3 + 5 + 6 + 7);
    }

    #[test]
    fn zigzag_fig_measurements() {
        let spec = FieldSpec::gf2_16();
        let a = build_construction_a(2, spec).unwrap();
        let plan = plan_repair(&a, 2).unwrap();
        let metrics = measure(&zigzag_read_trace(&a, &plan)).unwrap();
        assert_eq!((metrics.bandwidth, metrics.locality, metrics.skip_cost), (8, 4, 0));

        let bl = build_baseline(2, spec).unwrap();
        let plan = plan_repair(&bl, 2).unwrap();
        let metrics = measure(&zigzag_read_trace(&bl, &plan)).unwrap();
        assert_eq!((metrics.bandwidth, metrics.locality, metrics.skip_cost), (8, 4, 4));
    }

    #[test]
    fn construction_b_sweep_is_zero_skip_half_reads() {
        let code = build_construction_b(3, FieldSpec::gf2_16()).unwrap();
        let report = sweep_zigzag(&code).unwrap();
        assert_eq!(report.rows.len(), 4);
        assert!(report.skipped.is_empty());
        assert_eq!(report.summary.max_skip, 0);
        assert_eq!(report.summary.max_helper_fraction, Fraction::new(1, 2));
    }

    #[test]
    fn baseline_sweep_skips_node_zero_and_matches_formula() {
        let m = 3u8;
        let code = build_baseline(m, FieldSpec::gf2_16()).unwrap();
        let report = sweep_zigzag(&code).unwrap();
        assert_eq!(report.rows.len(), m as usize);
        assert_eq!(report.skipped.len(), 1);
        for row in &report.rows {
            let s = row.failed as u32;
            let per_helper = (1u64 << (m - 1)) - (1u64 << (m as u32 - s));
            for h in &row.metrics.per_helper {
                assert_eq!(h.skip, per_helper, "s={s}");
            }
        }
    }

    #[test]
    fn compare_table_shapes() {
        let field = Field::new(FieldSpec::gf2_16());
        let table = compare_baseline(4, &field).unwrap();
        assert_eq!(table.rows.len(), 3);
        assert_eq!(table.rows[0].construction, Construction::Baseline);
        assert_eq!(table.rows[1].rate, Fraction::new(1, 2));
        assert_eq!(table.rows[1].aggregate_skip, 0);
        assert_eq!(table.rows[2].aggregate_skip, 0);
        // Baseline rate (m+1)/(m+3).
        assert_eq!(table.rows[0].rate, Fraction::new(5, 7));
    }

    #[test]
    fn skip_cost_translation_invariance_spot() {
        let base = vec![2, 3, 7];
        for shift in 0..5u32 {
            let shifted: Vec<u32> = base.iter().map(|p| p + shift).collect();
            assert_eq!(skip_cost(&shifted, 16).unwrap(), skip_cost(&base, 16).unwrap());
        }
    }
}
