//! Single systematic-node repair: planning the helper reads each
//! construction prescribes, and executing the parity elimination that
//! rebuilds the lost column.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::{ArrayCodeword, Construction, RowWindow, ZigzagCode, ZigzagError};
use crate::gf::{Field, FieldElement};

/// Ordered reads from one helper column. Row ranks are strictly
/// increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HelperRead {
    pub column: usize,
    pub rows: Vec<u32>,
}

/// Recovery of one lost symbol: take a parity symbol, cancel the named
/// helper symbols out of it, divide by the failed column's coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationStep {
    /// Row of the failed column this step recovers.
    pub target_row: u32,
    /// Parity index (0-based among parity columns).
    pub parity: usize,
    /// Row read from that parity column.
    pub parity_row: u32,
    /// `(column, row)` info symbols cancelled out of the parity sum.
    pub cancel: Vec<(usize, u32)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepairPlan {
    pub failed: usize,
    pub helpers: Vec<HelperRead>,
    pub recipe: Vec<EliminationStep>,
}

impl RepairPlan {
    /// Total symbols read across helpers.
    pub fn bandwidth(&self) -> u64 {
        self.helpers.iter().map(|h| h.rows.len() as u64).sum()
    }

    pub fn locality(&self) -> usize {
        self.helpers.len()
    }
}

struct Reads {
    /// `(systematic column, window)` pairs.
    info: Vec<(usize, RowWindow)>,
    /// `(parity index, window)` pairs.
    parity: Vec<(usize, RowWindow)>,
}

fn scheme(code: &ZigzagCode, s: usize) -> Reads {
    let k = code.k();
    let m = code.m() as usize;
    let m_prime = code.parity_count() - 1;
    let others = |skip: usize| (0..k).filter(move |&i| i != skip);
    match code.construction() {
        Construction::A => {
            if s == 0 {
                Reads {
                    info: others(0).map(|i| (i, RowWindow::U)).collect(),
                    parity: vec![(0, RowWindow::U), (m, RowWindow::L)],
                }
            } else {
                Reads {
                    info: others(s)
                        .map(|i| (i, if i < s { RowWindow::U } else { RowWindow::L }))
                        .collect(),
                    parity: vec![(m - s, RowWindow::U), (m - s + 1, RowWindow::U)],
                }
            }
        }
        Construction::B | Construction::C => {
            if s == 0 {
                Reads {
                    info: others(0).map(|i| (i, RowWindow::U)).collect(),
                    parity: vec![(0, RowWindow::U), (m_prime, RowWindow::L)],
                }
            } else if s == k - 1 {
                Reads {
                    info: others(s).map(|i| (i, RowWindow::Lp)).collect(),
                    parity: vec![(0, RowWindow::Lp), (m_prime, RowWindow::Lp)],
                }
            } else if s % 2 == 1 {
                Reads {
                    info: others(s).map(|i| (i, RowWindow::U)).collect(),
                    parity: vec![(0, RowWindow::U), (s.div_ceil(2), RowWindow::U)],
                }
            } else {
                Reads {
                    info: others(s).map(|i| (i, RowWindow::Lp)).collect(),
                    parity: vec![(0, RowWindow::Lp), (s / 2, RowWindow::Lp)],
                }
            }
        }
        Construction::Baseline => unreachable!("handled before window lookup"),
    }
}

/// Helper reads and elimination recipe for the failure of systematic
/// column `s`, exactly as the code's construction prescribes.
pub fn plan_repair(code: &ZigzagCode, s: usize) -> Result<RepairPlan, ZigzagError> {
    let k = code.k();
    if s >= k {
        return Err(ZigzagError::UnsupportedFailure {
            column: s,
            reason: "only systematic columns have repair schemes",
        });
    }
    let m = code.m();
    let (info_reads, parity_reads): (Vec<(usize, Vec<u32>)>, Vec<(usize, Vec<u32>)>) =
        if code.construction() == Construction::Baseline {
            if s == 0 {
                return Err(ZigzagError::UnsupportedFailure {
                    column: 0,
                    reason: "the two-parity comparator has no half-read scheme for node 0",
                });
            }
            let rows: Vec<u32> =
                (0..1u32 << m).filter(|x| (x >> (m as usize - s)) & 1 == 0).collect();
            (
                (0..k).filter(|&i| i != s).map(|i| (i, rows.clone())).collect(),
                vec![(0, rows.clone()), (1, rows)],
            )
        } else {
            let reads = scheme(code, s);
            (
                reads.info.iter().map(|&(i, w)| (i, w.ranks(m))).collect(),
                reads.parity.iter().map(|&(j, w)| (j, w.ranks(m))).collect(),
            )
        };

    let mut helpers: Vec<HelperRead> = info_reads
        .iter()
        .map(|(i, rows)| HelperRead { column: *i, rows: rows.clone() })
        .collect();
    helpers.extend(
        parity_reads.iter().map(|(j, rows)| HelperRead { column: k + j, rows: rows.clone() }),
    );

    let mut recipe = Vec::new();
    let mut covered = BTreeSet::new();
    for (j, rows) in &parity_reads {
        let pattern = &code.patterns()[*j];
        for &x in rows {
            let target_row = x ^ pattern.offset(s);
            let fresh = covered.insert(target_row);
            debug_assert!(fresh, "parity reads must cover disjoint target rows");
            let cancel =
                (0..k).filter(|&i| i != s).map(|i| (i, x ^ pattern.offset(i))).collect();
            recipe.push(EliminationStep { target_row, parity: *j, parity_row: x, cancel });
        }
    }
    debug_assert_eq!(covered.len(), code.row_count());
    Ok(RepairPlan { failed: s, helpers, recipe })
}

/// Runs the plan against a codeword and returns the rebuilt column.
/// Consumes only symbols named in the plan; anything else is a
/// construction bug surfaced as [`ZigzagError::EliminationFailed`].
pub fn execute_repair(
    cw: &ArrayCodeword,
    plan: &RepairPlan,
    code: &ZigzagCode,
    field: &Field,
) -> Result<Vec<FieldElement>, ZigzagError> {
    let k = code.k();
    if cw.columns().len() != code.column_count()
        || cw.columns().iter().any(|c| c.len() != code.row_count())
    {
        return Err(ZigzagError::ShapeMismatch);
    }
    let mut readable: alloc::collections::BTreeMap<usize, BTreeSet<u32>> = Default::default();
    for h in &plan.helpers {
        if h.column == plan.failed {
            return Err(ZigzagError::EliminationFailed { detail: "helper equals failed column" });
        }
        readable.entry(h.column).or_default().extend(h.rows.iter().copied());
    }
    let mut recovered = vec![None; code.row_count()];
    for step in &plan.recipe {
        let parity_col = k + step.parity;
        if !readable.get(&parity_col).is_some_and(|rows| rows.contains(&step.parity_row)) {
            return Err(ZigzagError::EliminationFailed {
                detail: "parity symbol not named in the plan",
            });
        }
        let mut acc = cw.column(parity_col)[step.parity_row as usize];
        for &(col, row) in &step.cancel {
            if !readable.get(&col).is_some_and(|rows| rows.contains(&row)) {
                return Err(ZigzagError::EliminationFailed {
                    detail: "helper symbol not named in the plan",
                });
            }
            let coeff = code.coefficient(step.parity_row, col, step.parity);
            acc = field.add(acc, field.mul(coeff, cw.column(col)[row as usize]));
        }
        let own = code.coefficient(step.parity_row, plan.failed, step.parity);
        if own.is_zero() {
            return Err(ZigzagError::EliminationFailed { detail: "zero coefficient on target" });
        }
        let value = field.div(acc, own).expect("nonzero divisor");
        let slot = &mut recovered[step.target_row as usize];
        if slot.is_some() {
            return Err(ZigzagError::EliminationFailed { detail: "target row recovered twice" });
        }
        *slot = Some(value);
    }
    recovered
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or(ZigzagError::EliminationFailed { detail: "not every row recovered" })
}
