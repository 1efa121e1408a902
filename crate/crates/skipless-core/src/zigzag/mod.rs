//! Zigzag MDS array codes with zero-skip single-node repair.
//!
//! A code stores `M = 2^m` symbols per column. Rows are indexed by the
//! m-bit strings in lexicographic order with the first coordinate as
//! the most significant bit, so the first half of every column is `U`
//! (first bit 0), the second half is `L`, and the contiguous middle
//! half is `L'` (first two bits 01 or 10). Parity column `j` is driven
//! by an offset tuple: row `x` of that parity is a coefficient-weighted
//! sum of `a^(i)` at row `x + v_i`.

mod build;
mod mds;
mod repair;

pub use build::{build_baseline, build_construction_a, build_construction_b, build_construction_c};
pub use mds::{
    assign_coefficients, decode_from_columns, existence_bound, subset_is_full_rank,
    verify_mds, Assignment, MdsReport, MDS_SUBSET_LIMIT,
};
pub use repair::{execute_repair, plan_repair, EliminationStep, HelperRead, RepairPlan};

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::gf::{FieldElement, FieldSpec, GfError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZigzagError {
    ParameterOutOfRange { what: &'static str, value: i64, min: i64, max: i64 },
    CoefficientSearchExhausted { attempts: u32 },
    ShapeMismatch,
    UnsupportedFailure { column: usize, reason: &'static str },
    EliminationFailed { detail: &'static str },
    TooManySubsets { subsets: u64, limit: u64 },
    Field(GfError),
}

impl fmt::Display for ZigzagError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZigzagError::ParameterOutOfRange { what, value, min, max } => {
                write!(f, "{what} = {value} outside supported range {min}..={max}")
            }
            ZigzagError::CoefficientSearchExhausted { attempts } => {
                write!(f, "no MDS coefficient table found in {attempts} attempts")
            }
            ZigzagError::ShapeMismatch => write!(f, "input shape does not match the code"),
            ZigzagError::UnsupportedFailure { column, reason } => {
                write!(f, "repair of column {column} unsupported: {reason}")
            }
            ZigzagError::EliminationFailed { detail } => {
                write!(f, "parity elimination failed: {detail}")
            }
            ZigzagError::TooManySubsets { subsets, limit } => {
                write!(f, "{subsets} column subsets exceed the verification guard {limit}")
            }
            ZigzagError::Field(e) => write!(f, "field error: {e}"),
        }
    }
}

impl core::error::Error for ZigzagError {}

impl From<GfError> for ZigzagError {
    fn from(e: GfError) -> Self {
        ZigzagError::Field(e)
    }
}

/// Row of an `M = 2^m` column: an m-bit vector identified with its
/// lexicographic rank (first coordinate = most significant bit).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct RowIndex(pub u32);

impl RowIndex {
    pub fn rank(self) -> u32 {
        self.0
    }

    /// Coordinates as bits, most significant first.
    pub fn bits(self, m: u8) -> Vec<bool> {
        (0..m).map(|i| (self.0 >> (m - 1 - i)) & 1 == 1).collect()
    }

    pub fn from_bits(bits: &[bool]) -> RowIndex {
        RowIndex(bits.iter().fold(0, |acc, &b| (acc << 1) | b as u32))
    }
}

/// `e_i`: the m-bit vector with a one in coordinate `i` (1-indexed).
pub fn unit_vector(i: u8, m: u8) -> u32 {
    debug_assert!((1..=m).contains(&i));
    1 << (m - i)
}

/// `d_i = e_1 + ... + e_i`: ones in the first `i` coordinates.
pub fn prefix_vector(i: u8, m: u8) -> u32 {
    debug_assert!((1..=m).contains(&i));
    (((1u32 << i) - 1) << (m - i)) & ((1 << m) - 1)
}

/// The four row windows used by the repair schemes. `U`, `L`, and `Lp`
/// are contiguous rank ranges; `Up` is the complement of `Lp`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowWindow {
    U,
    L,
    Up,
    Lp,
}

impl RowWindow {
    pub fn ranks(self, m: u8) -> Vec<u32> {
        let full = 1u32 << m;
        let half = full / 2;
        let quarter = full / 4;
        match self {
            RowWindow::U => (0..half).collect(),
            RowWindow::L => (half..full).collect(),
            RowWindow::Lp => (quarter..full - quarter).collect(),
            RowWindow::Up => (0..quarter).chain(full - quarter..full).collect(),
        }
    }

    pub fn contains(self, rank: u32, m: u8) -> bool {
        let full = 1u32 << m;
        let half = full / 2;
        let quarter = full / 4;
        match self {
            RowWindow::U => rank < half,
            RowWindow::L => rank >= half,
            RowWindow::Lp => (quarter..full - quarter).contains(&rank),
            RowWindow::Up => rank < quarter || rank >= full - quarter,
        }
    }
}

/// Offset tuple defining one parity column: entry `i` shifts the rows
/// of systematic column `i`. Every construction emits a zero first
/// entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityPattern {
    offsets: Vec<u32>,
}

impl ParityPattern {
    pub fn new(offsets: Vec<u32>) -> ParityPattern {
        ParityPattern { offsets }
    }

    pub fn offsets(&self) -> &[u32] {
        &self.offsets
    }

    pub fn offset(&self, i: usize) -> u32 {
        self.offsets[i]
    }

    pub fn len(&self) -> usize {
        self.offsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.offsets.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Construction {
    A,
    B,
    C,
    Baseline,
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Construction::A => write!(f, "A"),
            Construction::B => write!(f, "B"),
            Construction::C => write!(f, "C"),
            Construction::Baseline => write!(f, "BASELINE"),
        }
    }
}

/// An `(M x N, k)` array-code descriptor: `k` systematic columns
/// followed by one parity column per pattern. Coefficients default to
/// all ones until [`assign_coefficients`] replaces them with a
/// verified table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZigzagCode {
    m: u8,
    k: usize,
    patterns: Vec<ParityPattern>,
    /// Flat `[x][i][j]` table: `x * (k * p) + i * p + j`.
    coefficients: Vec<FieldElement>,
    field: FieldSpec,
    construction: Construction,
    /// Seed recorded by a successful coefficient search.
    seed: Option<u64>,
}

impl ZigzagCode {
    pub(crate) fn new(
        m: u8,
        k: usize,
        patterns: Vec<ParityPattern>,
        field: FieldSpec,
        construction: Construction,
    ) -> ZigzagCode {
        let p = patterns.len();
        debug_assert!(patterns.iter().all(|pat| pat.len() == k));
        ZigzagCode {
            m,
            k,
            patterns,
            coefficients: vec![FieldElement::ONE; (1 << m) * k * p],
            field,
            construction,
            seed: None,
        }
    }

    pub fn m(&self) -> u8 {
        self.m
    }

    /// Rows per column, `M = 2^m`.
    pub fn row_count(&self) -> usize {
        1 << self.m
    }

    /// Systematic column count.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn parity_count(&self) -> usize {
        self.patterns.len()
    }

    /// Total column count `N`.
    pub fn column_count(&self) -> usize {
        self.k + self.patterns.len()
    }

    pub fn patterns(&self) -> &[ParityPattern] {
        &self.patterns
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn construction(&self) -> Construction {
        self.construction
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn coefficient(&self, x: u32, i: usize, j: usize) -> FieldElement {
        let p = self.patterns.len();
        self.coefficients[x as usize * self.k * p + i * p + j]
    }

    pub fn coefficients(&self) -> &[FieldElement] {
        &self.coefficients
    }

    pub(crate) fn set_coefficients(&mut self, coefficients: Vec<FieldElement>, seed: u64) {
        debug_assert_eq!(coefficients.len(), self.coefficients.len());
        self.coefficients = coefficients;
        self.seed = Some(seed);
    }

    /// Rebuilds a code from its serialized parts; validates shape.
    pub fn from_parts(
        m: u8,
        k: usize,
        patterns: Vec<ParityPattern>,
        coefficients: Vec<FieldElement>,
        field: FieldSpec,
        construction: Construction,
        seed: Option<u64>,
    ) -> Result<ZigzagCode, ZigzagError> {
        if patterns.iter().any(|p| p.len() != k) {
            return Err(ZigzagError::ShapeMismatch);
        }
        let expected = (1usize << m) * k * patterns.len();
        if coefficients.len() != expected {
            return Err(ZigzagError::ShapeMismatch);
        }
        Ok(ZigzagCode { m, k, patterns, coefficients, field, construction, seed })
    }
}

/// One codeword: `N` ordered columns of `M` symbols; the first `k`
/// columns are the information verbatim.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrayCodeword {
    columns: Vec<Vec<FieldElement>>,
}

impl ArrayCodeword {
    pub fn columns(&self) -> &[Vec<FieldElement>] {
        &self.columns
    }

    pub fn column(&self, i: usize) -> &[FieldElement] {
        &self.columns[i]
    }
}

/// Systematic encode: copies the info columns and fills each parity
/// row `x` with `sum_i alpha[x][i][j] * a^(i)[x + v_i]`.
pub fn encode(
    code: &ZigzagCode,
    field: &crate::gf::Field,
    info: &[Vec<FieldElement>],
) -> Result<ArrayCodeword, ZigzagError> {
    let m_rows = code.row_count();
    if info.len() != code.k || info.iter().any(|c| c.len() != m_rows) {
        return Err(ZigzagError::ShapeMismatch);
    }
    let mut columns: Vec<Vec<FieldElement>> = info.to_vec();
    for (j, pattern) in code.patterns.iter().enumerate() {
        let mut col = vec![FieldElement::ZERO; m_rows];
        for (x, slot) in col.iter_mut().enumerate() {
            let mut acc = FieldElement::ZERO;
            for i in 0..code.k {
                let u = x as u32 ^ pattern.offset(i);
                let term = field.mul(code.coefficient(x as u32, i, j), info[i][u as usize]);
                acc = field.add(acc, term);
            }
            *slot = acc;
        }
        columns.push(col);
    }
    Ok(ArrayCodeword { columns })
}
