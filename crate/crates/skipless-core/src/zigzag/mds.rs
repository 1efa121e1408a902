//! Randomized-with-verification coefficient assignment and the
//! exhaustive MDS checker.
//!
//! A nonconstructive argument guarantees MDS tables exist once the
//! field order clears `2^m * C(k-1, ceil(k/2)-1)^2`; below that bound
//! we still search, the caller is just told the guarantee is gone.

use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use super::{ZigzagCode, ZigzagError};
use crate::gf::{Field, FieldElement, Matrix};

/// Guard on `C(N, k)` before subset enumeration.
pub const MDS_SUBSET_LIMIT: u64 = 1_000_000;

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// `2^m * C(k-1, t-1)^2` with `t = ceil(k/2)`: the field-order bound
/// above which a valid coefficient table is guaranteed to exist.
pub fn existence_bound(m: u8, k: usize) -> u64 {
    let t = k.div_ceil(2) as u64;
    let c = binomial(k as u64 - 1, t - 1);
    (1u64 << m) * c * c
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MdsReport {
    pub is_mds: bool,
    /// Offending column subset when not MDS.
    pub witness: Option<Vec<usize>>,
    pub subsets_checked: u64,
}

/// Result of a successful coefficient search.
#[derive(Debug, Clone)]
pub struct Assignment {
    pub code: ZigzagCode,
    /// 1-based attempt that passed verification.
    pub attempts_used: u32,
    /// Whether the field order clears [`existence_bound`]; searching
    /// below it may still succeed but has no guarantee.
    pub bound_satisfied: bool,
}

/// Draws coefficient tables uniformly from the nonzero elements with a
/// seeded generator and resamples until [`verify_mds`] passes. The
/// successful seed is recorded on the returned code.
pub fn assign_coefficients(
    code: &ZigzagCode,
    field: &Field,
    seed: u64,
    max_attempts: u32,
) -> Result<Assignment, ZigzagError> {
    let bound_satisfied = field.order() as u64 > existence_bound(code.m(), code.k());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mask = field.order() - 1;
    let table_len = code.row_count() * code.k() * code.parity_count();
    for attempt in 1..=max_attempts {
        let mut table = Vec::with_capacity(table_len);
        for _ in 0..table_len {
            let v = loop {
                let v = rng.next_u32() & mask;
                if v != 0 {
                    break v;
                }
            };
            table.push(FieldElement(v as u16));
        }
        let mut candidate = code.clone();
        candidate.set_coefficients(table, seed);
        if verify_mds(&candidate, field)?.is_mds {
            return Ok(Assignment { code: candidate, attempts_used: attempt, bound_satisfied });
        }
    }
    Err(ZigzagError::CoefficientSearchExhausted { attempts: max_attempts })
}

/// Rows of the generator restricted to one column: an `M x Mk` block.
/// Systematic columns are selectors; parity column `j` places
/// `alpha[x][i][j]` at block `i`, offset row `x + v_i`.
fn column_generator(code: &ZigzagCode, col: usize, out: &mut Matrix, at_row: usize) {
    let m_rows = code.row_count();
    let k = code.k();
    if col < k {
        for x in 0..m_rows {
            out.set(at_row + x, col * m_rows + x, FieldElement::ONE);
        }
    } else {
        let j = col - k;
        let pattern = &code.patterns()[j];
        for x in 0..m_rows {
            for i in 0..k {
                let u = x as u32 ^ pattern.offset(i);
                out.set(at_row + x, i * m_rows + u as usize, code.coefficient(x as u32, i, j));
            }
        }
    }
}

fn subset_matrix(code: &ZigzagCode, subset: &[usize]) -> Matrix {
    let m_rows = code.row_count();
    let dim = m_rows * code.k();
    let mut mat = Matrix::zero(dim, dim);
    for (slot, &col) in subset.iter().enumerate() {
        column_generator(code, col, &mut mat, slot * m_rows);
    }
    mat
}

/// Rank verdict for a single column subset; the per-subset face of
/// [`verify_mds`], exposed so an independent decode oracle can be
/// compared against it subset by subset.
pub fn subset_is_full_rank(
    code: &ZigzagCode,
    field: &Field,
    subset: &[usize],
) -> Result<bool, ZigzagError> {
    if subset.len() != code.k() || subset.iter().any(|&c| c >= code.column_count()) {
        return Err(ZigzagError::ShapeMismatch);
    }
    let dim = code.row_count() * code.k();
    Ok(subset_matrix(code, subset).rank(field) == dim)
}

/// True iff every k-subset of columns determines the information: the
/// stacked `Mk x Mk` restriction is full-rank for each subset. On
/// failure the first offending subset is the witness.
pub fn verify_mds(code: &ZigzagCode, field: &Field) -> Result<MdsReport, ZigzagError> {
    let n = code.column_count();
    let k = code.k();
    let total = binomial(n as u64, k as u64);
    if total > MDS_SUBSET_LIMIT {
        return Err(ZigzagError::TooManySubsets { subsets: total, limit: MDS_SUBSET_LIMIT });
    }
    let dim = code.row_count() * k;
    let mut subset: Vec<usize> = (0..k).collect();
    let mut checked = 0u64;
    loop {
        checked += 1;
        let mat = subset_matrix(code, &subset);
        if mat.rank(field) != dim {
            return Ok(MdsReport {
                is_mds: false,
                witness: Some(subset),
                subsets_checked: checked,
            });
        }
        // Advance to the next k-combination of 0..n in lexicographic order.
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(MdsReport { is_mds: true, witness: None, subsets_checked: checked });
            }
            i -= 1;
            if subset[i] != i + n - k {
                break;
            }
        }
        subset[i] += 1;
        for t in i + 1..k {
            subset[t] = subset[t - 1] + 1;
        }
    }
}

/// Recovers all `k` information columns from any `k` codeword columns
/// by solving the stacked linear system. This is the generic erasure
/// decoder; [`execute_repair`](super::execute_repair) is the cheap
/// single-failure path.
pub fn decode_from_columns(
    code: &ZigzagCode,
    field: &Field,
    columns: &[(usize, Vec<FieldElement>)],
) -> Result<Vec<Vec<FieldElement>>, ZigzagError> {
    let m_rows = code.row_count();
    let k = code.k();
    if columns.len() != k
        || columns.iter().any(|(c, data)| *c >= code.column_count() || data.len() != m_rows)
    {
        return Err(ZigzagError::ShapeMismatch);
    }
    let subset: Vec<usize> = columns.iter().map(|(c, _)| *c).collect();
    let mat = subset_matrix(code, &subset);
    let mut rhs = Matrix::zero(m_rows * k, 1);
    for (slot, (_, data)) in columns.iter().enumerate() {
        for (x, &v) in data.iter().enumerate() {
            rhs.set(slot * m_rows + x, 0, v);
        }
    }
    let solved = mat.solve(&rhs, field)?;
    let mut info = vec![vec![FieldElement::ZERO; m_rows]; k];
    for i in 0..k {
        for x in 0..m_rows {
            info[i][x] = solved.get(i * m_rows + x, 0);
        }
    }
    Ok(info)
}
