//! Triple-coverage verification (the certificate oracle for every
//! construction in this module) and the repeated-adjacent-pair check.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{Design, DesignError};

/// Guard on `C(v, 3)` before full triple enumeration.
pub const TRIPLE_LIMIT: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleWitness {
    /// Point ids, ascending.
    pub triple: [u32; 3],
    /// How many blocks contain it.
    pub count: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SqsReport {
    pub is_sqs: bool,
    /// First (lexicographically) over- or under-covered triple.
    pub witness: Option<TripleWitness>,
}

fn sorted3(mut t: [u32; 3]) -> [u32; 3] {
    t.sort_unstable();
    t
}

/// True iff every 3-subset of the point set lies in exactly one block.
pub fn verify_sqs(d: &Design) -> Result<SqsReport, DesignError> {
    let v = d.v() as u64;
    let triples = v * (v.saturating_sub(1)) * (v.saturating_sub(2)) / 6;
    if triples > TRIPLE_LIMIT {
        return Err(DesignError::TooManyTriples { triples, limit: TRIPLE_LIMIT });
    }
    let mut counts: BTreeMap<[u32; 3], u32> = BTreeMap::new();
    for b in d.blocks() {
        for skip in 0..4 {
            let mut t = [0u32; 3];
            let mut at = 0;
            for (i, &p) in b.iter().enumerate() {
                if i != skip {
                    t[at] = p;
                    at += 1;
                }
            }
            *counts.entry(sorted3(t)).or_insert(0) += 1;
        }
    }
    let v = d.v() as u32;
    for a in 0..v {
        for b in a + 1..v {
            for c in b + 1..v {
                let count = counts.get(&[a, b, c]).copied().unwrap_or(0);
                if count != 1 {
                    return Ok(SqsReport {
                        is_sqs: false,
                        witness: Some(TripleWitness { triple: [a, b, c], count }),
                    });
                }
            }
        }
    }
    Ok(SqsReport { is_sqs: true, witness: None })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairReport {
    pub ok: bool,
    /// First pair adjacent in fewer than two blocks.
    pub witness: Option<[u32; 2]>,
    /// Adjacency counts keyed by ascending pair.
    pub counts: BTreeMap<[u32; 2], u32>,
}

/// True iff every 2-subset of the point set occurs in adjacent
/// positions of at least two distinct blocks.
pub fn check_repeated_adjacent_pairs(d: &Design) -> PairReport {
    let mut counts: BTreeMap<[u32; 2], u32> = BTreeMap::new();
    for b in d.blocks() {
        for w in b.windows(2) {
            let key = if w[0] < w[1] { [w[0], w[1]] } else { [w[1], w[0]] };
            *counts.entry(key).or_insert(0) += 1;
        }
    }
    let v = d.v() as u32;
    let mut witness = None;
    'scan: for a in 0..v {
        for b in a + 1..v {
            if counts.get(&[a, b]).copied().unwrap_or(0) < 2 {
                witness = Some([a, b]);
                break 'scan;
            }
        }
    }
    PairReport { ok: witness.is_none(), witness, counts }
}

/// Point occurrence counts, used by replication-factor checks.
pub fn point_replication(d: &Design) -> Vec<u32> {
    let mut reps = alloc::vec![0u32; d.v()];
    for b in d.blocks() {
        for &p in b {
            reps[p as usize] += 1;
        }
    }
    reps
}
