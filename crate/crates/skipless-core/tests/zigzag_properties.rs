//! Cross-cutting zigzag invariants over the full supported parameter
//! range: contiguous half-column reads, helper counts, union coverage,
//! update locality, linearity, and agreement between the two erasure
//! oracles.

use proptest::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use skipless_core::gf::{Field, FieldElement, FieldSpec};
use skipless_core::zigzag::{
    assign_coefficients, build_baseline, build_construction_a, build_construction_b,
    build_construction_c, decode_from_columns, encode, plan_repair, verify_mds, Construction,
    ZigzagCode,
};
use std::collections::{BTreeMap, BTreeSet};

fn all_zero_skip_codes() -> Vec<ZigzagCode> {
    let spec = FieldSpec::gf2_16();
    let mut codes = Vec::new();
    for m in 2..=6u8 {
        codes.push(build_construction_a(m, spec).unwrap());
        codes.push(build_construction_b(m, spec).unwrap());
        for k in 2..=10 {
            codes.push(build_construction_c(m, k, spec).unwrap());
        }
    }
    codes
}

fn random_info(code: &ZigzagCode, rng: &mut ChaCha8Rng) -> Vec<Vec<FieldElement>> {
    (0..code.k())
        .map(|_| (0..code.row_count()).map(|_| FieldElement(rng.next_u32() as u16)).collect())
        .collect()
}

#[test]
fn zero_skip_half_reads_and_helper_count_everywhere() {
    for code in all_zero_skip_codes() {
        let half = code.row_count() / 2;
        for s in 0..code.k() {
            let plan = plan_repair(&code, s).unwrap();
            assert_eq!(plan.locality(), code.k() + 1, "{:?} m={} s={s}", code.construction(), code.m());
            for h in &plan.helpers {
                assert_eq!(h.rows.len(), half, "rebuilding ratio 1/2");
                let consecutive = h.rows.windows(2).all(|w| w[1] == w[0] + 1);
                assert!(consecutive, "{:?} m={} s={s} col={}", code.construction(), code.m(), h.column);
            }
        }
    }
}

#[test]
fn union_coverage_of_parity_reads() {
    // The info symbols referenced by the two parity reads cover the
    // failed column on every row and each helper column only on rows
    // already read from that column.
    for code in all_zero_skip_codes() {
        for s in 0..code.k() {
            let plan = plan_repair(&code, s).unwrap();
            let read_rows: BTreeMap<usize, BTreeSet<u32>> = plan
                .helpers
                .iter()
                .map(|h| (h.column, h.rows.iter().copied().collect()))
                .collect();
            let mut failed_rows = BTreeSet::new();
            for step in &plan.recipe {
                failed_rows.insert(step.target_row);
                for &(col, row) in &step.cancel {
                    assert!(
                        read_rows[&col].contains(&row),
                        "{:?} m={} s={s}: cancel outside read set",
                        code.construction(),
                        code.m()
                    );
                }
            }
            assert_eq!(failed_rows.len(), code.row_count());
        }
    }
}

#[test]
fn every_info_symbol_touches_each_parity_column_once() {
    // Update locality: changing one info symbol changes exactly one
    // symbol per parity column.
    let spec = FieldSpec::gf2_16();
    let mut codes = all_zero_skip_codes();
    codes.push(build_baseline(4, spec).unwrap());
    for code in codes {
        for pattern in code.patterns() {
            for i in 0..code.k() {
                // Row x of the parity touches info (i, x + v_i); as x
                // ranges over all rows this is a bijection, so each
                // info symbol appears exactly once.
                let mut seen = BTreeSet::new();
                for x in 0..code.row_count() as u32 {
                    assert!(seen.insert(x ^ pattern.offset(i)));
                }
                assert_eq!(seen.len(), code.row_count());
            }
        }
    }
}

#[test]
fn repair_round_trip_full_range() {
    let field = Field::new(FieldSpec::gf2_16());
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0DE);
    for code in all_zero_skip_codes() {
        let info = random_info(&code, &mut rng);
        let cw = encode(&code, &field, &info).unwrap();
        for s in 0..code.k() {
            let plan = plan_repair(&code, s).unwrap();
            let col = skipless_core::zigzag::execute_repair(&cw, &plan, &code, &field).unwrap();
            assert_eq!(col, info[s]);
        }
    }
}

#[test]
fn baseline_repair_round_trip() {
    let field = Field::new(FieldSpec::gf2_16());
    let mut rng = ChaCha8Rng::seed_from_u64(0xBA5E);
    for m in 2..=6u8 {
        let code = build_baseline(m, *field.spec()).unwrap();
        let info = random_info(&code, &mut rng);
        let cw = encode(&code, &field, &info).unwrap();
        for s in 1..code.k() {
            let plan = plan_repair(&code, s).unwrap();
            let col = skipless_core::zigzag::execute_repair(&cw, &plan, &code, &field).unwrap();
            assert_eq!(col, info[s]);
        }
    }
}

#[test]
fn encode_is_linear() {
    let field = Field::new(FieldSpec::gf2_16());
    let code = build_construction_b(3, *field.spec()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let x = random_info(&code, &mut rng);
        let y = random_info(&code, &mut rng);
        let sum: Vec<Vec<FieldElement>> = x
            .iter()
            .zip(&y)
            .map(|(cx, cy)| cx.iter().zip(cy).map(|(a, b)| field.add(*a, *b)).collect())
            .collect();
        let ex = encode(&code, &field, &x).unwrap();
        let ey = encode(&code, &field, &y).unwrap();
        let esum = encode(&code, &field, &sum).unwrap();
        for c in 0..code.column_count() {
            for r in 0..code.row_count() {
                assert_eq!(esum.column(c)[r], field.add(ex.column(c)[r], ey.column(c)[r]));
            }
        }
    }
}

#[test]
fn zero_message_encodes_to_zero() {
    let field = Field::new(FieldSpec::gf2_16());
    let code = build_construction_a(3, *field.spec()).unwrap();
    let zeros = vec![vec![FieldElement::ZERO; code.row_count()]; code.k()];
    let cw = encode(&code, &field, &zeros).unwrap();
    assert!(cw.columns().iter().all(|c| c.iter().all(|s| s.is_zero())));
}

#[test]
fn single_symbol_impulse_hits_one_row_per_parity() {
    // Construction A, m = 2: a^(1) at row 00 shows up in parity 0 at
    // row 00, parity 1 at row 01 (= e_2), parity 2 at row 10 (= d_1).
    let field = Field::new(FieldSpec::gf2_16());
    let code = build_construction_a(2, *field.spec()).unwrap();
    let mut info = vec![vec![FieldElement::ZERO; 4]; 3];
    info[1][0] = FieldElement::ONE;
    let cw = encode(&code, &field, &info).unwrap();
    for (j, expect_row) in [(0usize, 0usize), (1, 1), (2, 2)] {
        let col = cw.column(code.k() + j);
        for (row, sym) in col.iter().enumerate() {
            assert_eq!(!sym.is_zero(), row == expect_row, "parity {j} row {row}");
        }
    }
}

#[test]
fn rank_oracle_agrees_with_decode_round_trip() {
    let field = Field::new(FieldSpec::gf2_16());
    let code = build_construction_a(2, *field.spec()).unwrap();
    let code = assign_coefficients(&code, &field, 5, 20).unwrap().code;
    assert!(verify_mds(&code, &field).unwrap().is_mds);

    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let info = random_info(&code, &mut rng);
    let cw = encode(&code, &field, &info).unwrap();
    let n = code.column_count();
    let k = code.k();
    // Every k-subset decodes back to the message.
    let mut subset: Vec<usize> = (0..k).collect();
    loop {
        let cols: Vec<(usize, Vec<FieldElement>)> =
            subset.iter().map(|&c| (c, cw.column(c).to_vec())).collect();
        assert_eq!(decode_from_columns(&code, &field, &cols).unwrap(), info, "{subset:?}");
        let mut i = k;
        loop {
            if i == 0 {
                return;
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

#[test]
fn all_ones_coefficients_make_parity_zero_the_row_sum() {
    // With unit coefficients the first parity column is the plain
    // row-wise sum (XOR over a binary field) of the info symbols.
    let field = Field::new(FieldSpec::gf2_16());
    let code = build_construction_a(2, *field.spec()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let info = random_info(&code, &mut rng);
    let cw = encode(&code, &field, &info).unwrap();
    for x in 0..code.row_count() {
        let xor = info.iter().fold(FieldElement::ZERO, |acc, col| field.add(acc, col[x]));
        assert_eq!(cw.column(code.k())[x], xor);
    }
}

#[test]
fn below_bound_assignment_still_reports() {
    // GF(2^4) sits below the existence bound for m = 2, k = 3 (16 is
    // not strictly greater than 16); the search may succeed or
    // exhaust, but the report must flag the missing guarantee.
    let spec = FieldSpec::new(4, 0x13).unwrap();
    let field = Field::new(spec);
    let code = build_construction_a(2, spec).unwrap();
    match assign_coefficients(&code, &field, 0, 50) {
        Ok(assignment) => assert!(!assignment.bound_satisfied),
        Err(e) => assert!(matches!(
            e,
            skipless_core::zigzag::ZigzagError::CoefficientSearchExhausted { .. }
        )),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn construction_c_matches_baseline_shape_relations(m in 2u8..=4, k in 2usize..=8) {
        let spec = FieldSpec::gf2_16();
        let code = build_construction_c(m, k, spec).unwrap();
        prop_assert_eq!(code.column_count(), k + k.div_ceil(2) + 1);
        prop_assert_eq!(code.construction(), Construction::C);
        for pattern in code.patterns() {
            prop_assert_eq!(pattern.offset(0), 0);
        }
    }
}
