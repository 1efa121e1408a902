//! Builders for the three zero-skip constructions and the two-parity
//! comparator. All emit coefficients of one; run
//! [`assign_coefficients`](super::assign_coefficients) to obtain an MDS
//! table.

use alloc::vec;

use super::{prefix_vector, unit_vector, Construction, ParityPattern, ZigzagCode, ZigzagError};
use crate::gf::FieldSpec;

const M_MIN: u8 = 2;
const M_MAX: u8 = 6;
const K_MAX: usize = 10;

fn check_m(m: u8) -> Result<(), ZigzagError> {
    if !(M_MIN..=M_MAX).contains(&m) {
        return Err(ZigzagError::ParameterOutOfRange {
            what: "m",
            value: m as i64,
            min: M_MIN as i64,
            max: M_MAX as i64,
        });
    }
    Ok(())
}

/// `k = m + 1` systematic columns and `m + 1` parities; pattern `j` is
/// `(0, e_{j+1}, ..., e_m, d_1, ..., d_j)`. `N = 2(m + 1)`.
pub fn build_construction_a(m: u8, field: FieldSpec) -> Result<ZigzagCode, ZigzagError> {
    check_m(m)?;
    let k = m as usize + 1;
    let mut patterns = vec![ParityPattern::new(vec![0; k])];
    for j in 1..=m {
        let mut offsets = vec![0u32];
        for t in j + 1..=m {
            offsets.push(unit_vector(t, m));
        }
        for t in 1..=j {
            offsets.push(prefix_vector(t, m));
        }
        patterns.push(ParityPattern::new(offsets));
    }
    Ok(ZigzagCode::new(m, k, patterns, field, Construction::A))
}

/// `k = m + 1` with `m' = ceil((m+1)/2)` extra parities beyond the row
/// sum: `N = m + 2 + m'`. The interior patterns carry `d_m` in entry
/// `2j` followed by a rotated run of unit vectors; the last pattern is
/// `(0, d_2, ..., d_m, d_1)`.
pub fn build_construction_b(m: u8, field: FieldSpec) -> Result<ZigzagCode, ZigzagError> {
    check_m(m)?;
    let k = m as usize + 1;
    let m_prime = (m as usize + 2) / 2;
    let mut patterns = vec![ParityPattern::new(vec![0; k])];
    for j in 1..m_prime {
        // d_m sits at 0-indexed position 2j - 1; units e_{m-2j+3}..e_m
        // come before it and e_2..e_{m-2j+2} after.
        let mut offsets = vec![0u32];
        for t in (m as usize + 3 - 2 * j)..=m as usize {
            offsets.push(unit_vector(t as u8, m));
        }
        offsets.push(prefix_vector(m, m));
        for t in 2..=(m as usize + 2 - 2 * j) {
            offsets.push(unit_vector(t as u8, m));
        }
        debug_assert_eq!(offsets.len(), k);
        debug_assert_eq!(offsets[2 * j - 1], prefix_vector(m, m));
        patterns.push(ParityPattern::new(offsets));
    }
    let mut last = vec![0u32];
    for t in 2..=m {
        last.push(prefix_vector(t, m));
    }
    last.push(prefix_vector(1, m));
    patterns.push(ParityPattern::new(last));
    Ok(ZigzagCode::new(m, k, patterns, field, Construction::B))
}

/// Any `k >= 2` at subpacketization `2^m`; `m' = ceil(k/2)` extra
/// parities, `N = k + m' + 1`. Interior patterns are all-zero except
/// `d_m` at entry `2j` and `e_2` right after; the last pattern is
/// `(0, d_2, ..., d_2, d_1)`.
pub fn build_construction_c(m: u8, k: usize, field: FieldSpec) -> Result<ZigzagCode, ZigzagError> {
    check_m(m)?;
    if !(2..=K_MAX).contains(&k) {
        return Err(ZigzagError::ParameterOutOfRange {
            what: "k",
            value: k as i64,
            min: 2,
            max: K_MAX as i64,
        });
    }
    let m_prime = k.div_ceil(2);
    let mut patterns = vec![ParityPattern::new(vec![0; k])];
    for j in 1..m_prime {
        let mut offsets = vec![0u32; k];
        offsets[2 * j - 1] = prefix_vector(m, m);
        offsets[2 * j] = unit_vector(2, m);
        patterns.push(ParityPattern::new(offsets));
    }
    let mut last = vec![0u32];
    for _ in 1..k - 1 {
        last.push(prefix_vector(2, m));
    }
    last.push(prefix_vector(1, m));
    patterns.push(ParityPattern::new(last));
    Ok(ZigzagCode::new(m, k, patterns, field, Construction::C))
}

/// The classic two-parity comparator: `S_0` all-zero and
/// `S_1 = (0, e_1, ..., e_m)`. Its repair reads are interleaved, which
/// is exactly the skip cost this crate measures.
pub fn build_baseline(m: u8, field: FieldSpec) -> Result<ZigzagCode, ZigzagError> {
    check_m(m)?;
    let k = m as usize + 1;
    let mut second = vec![0u32];
    for t in 1..=m {
        second.push(unit_vector(t, m));
    }
    let patterns = vec![ParityPattern::new(vec![0; k]), ParityPattern::new(second)];
    Ok(ZigzagCode::new(m, k, patterns, field, Construction::Baseline))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    fn spec() -> FieldSpec {
        FieldSpec::gf2_16()
    }

    fn offsets(code: &ZigzagCode, j: usize) -> &[u32] {
        code.patterns()[j].offsets()
    }

    #[test]
    fn construction_a_m2_matches_published_layout() {
        let code = build_construction_a(2, spec()).unwrap();
        assert_eq!(code.column_count(), 6);
        assert_eq!(code.row_count(), 4);
        // e_2 = 01, d_1 = 10, d_2 = 11.
        assert_eq!(offsets(&code, 0), &[0, 0, 0]);
        assert_eq!(offsets(&code, 1), &[0, 0b01, 0b10]);
        assert_eq!(offsets(&code, 2), &[0, 0b10, 0b11]);
    }

    #[test]
    fn construction_a_m3_first_pattern() {
        let code = build_construction_a(3, spec()).unwrap();
        // S_1 = (0, e_2, e_3, d_1).
        assert_eq!(offsets(&code, 1), &[0, 0b010, 0b001, 0b100]);
    }

    #[test]
    fn construction_a_always_starts_all_zero() {
        for m in 2..=6 {
            let code = build_construction_a(m, spec()).unwrap();
            assert!(offsets(&code, 0).iter().all(|&v| v == 0));
            assert_eq!(code.parity_count(), m as usize + 1);
            for pat in code.patterns() {
                assert_eq!(pat.offset(0), 0);
            }
        }
    }

    #[test]
    fn construction_b_m3_matches_published_layout() {
        let code = build_construction_b(3, spec()).unwrap();
        assert_eq!(code.column_count(), 7);
        // S_1 = (0, d_3, e_2, e_3), S_2 = (0, d_2, d_3, d_1).
        assert_eq!(offsets(&code, 0), &[0, 0, 0, 0]);
        assert_eq!(offsets(&code, 1), &[0, 0b111, 0b010, 0b001]);
        assert_eq!(offsets(&code, 2), &[0, 0b110, 0b111, 0b100]);
    }

    #[test]
    fn construction_b_m2_shape() {
        let code = build_construction_b(2, spec()).unwrap();
        assert_eq!(code.column_count(), 6);
        assert_eq!(code.parity_count(), 3);
    }

    #[test]
    fn construction_b_interior_pattern_positions() {
        for m in 4..=6u8 {
            let code = build_construction_b(m, spec()).unwrap();
            let m_prime = (m as usize + 2) / 2;
            for j in 2..m_prime {
                assert_eq!(offsets(&code, j)[2 * j - 1], prefix_vector(m, m), "m={m} j={j}");
            }
        }
    }

    #[test]
    fn construction_c_m2_k6_matches_published_layout() {
        let code = build_construction_c(2, 6, spec()).unwrap();
        assert_eq!(code.column_count(), 10);
        assert_eq!(offsets(&code, 1), &[0, 0b11, 0b01, 0, 0, 0]);
        assert_eq!(offsets(&code, 2), &[0, 0, 0, 0b11, 0b01, 0]);
        assert_eq!(offsets(&code, 3), &[0, 0b11, 0b11, 0b11, 0b11, 0b10]);
    }

    #[test]
    fn construction_c_k3_matches_construction_b_m2() {
        let b = build_construction_b(2, spec()).unwrap();
        let c = build_construction_c(2, 3, spec()).unwrap();
        let bp: Vec<_> = b.patterns().iter().map(|p| p.offsets().to_vec()).collect();
        let cp: Vec<_> = c.patterns().iter().map(|p| p.offsets().to_vec()).collect();
        assert_eq!(bp, cp);
    }

    #[test]
    fn baseline_layout() {
        let code = build_baseline(2, spec()).unwrap();
        assert_eq!(code.column_count(), 5);
        assert_eq!(offsets(&code, 1), &[0, 0b10, 0b01]);
        let code3 = build_baseline(3, spec()).unwrap();
        assert_eq!(offsets(&code3, 1), &[0, 0b100, 0b010, 0b001]);
        for m in 2..=6 {
            assert_eq!(build_baseline(m, spec()).unwrap().parity_count(), 2);
        }
    }

    #[test]
    fn parameter_guards() {
        assert!(matches!(
            build_construction_a(1, spec()),
            Err(ZigzagError::ParameterOutOfRange { what: "m", .. })
        ));
        assert!(build_construction_a(7, spec()).is_err());
        assert!(build_construction_b(1, spec()).is_err());
        assert!(matches!(
            build_construction_c(2, 11, spec()),
            Err(ZigzagError::ParameterOutOfRange { what: "k", .. })
        ));
        assert!(build_construction_c(2, 1, spec()).is_err());
        assert!(build_baseline(0, spec()).is_err());
    }
}
