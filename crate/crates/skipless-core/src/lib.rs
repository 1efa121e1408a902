//! Array codes whose single-node repair reads are contiguous on disk.
//!
//! The crate has four layers:
//!
//! * [`gf`] — arithmetic over `GF(2^w)` and exact dense linear algebra
//!   (rank, solve) used for encoding, decoding, and MDS verification.
//! * [`zigzag`] — zigzag MDS array codes with zero-skip repair plans, a
//!   classic two-parity comparator, randomized-with-verification
//!   coefficient assignment, and an exhaustive MDS checker.
//! * [`design`] — Steiner quadruple systems with ordered blocks: the
//!   doubling and `3v-2` recursions, cyclic development of base-block
//!   tables, an embedded order-14 system, and block-level repair
//!   planning with locality two.
//! * [`fr`] — fractional repetition array codes layered over a design,
//!   with a thin systematic MDS outer encoder and repair-by-transfer.
//! * [`sim`] — the skip-cost metric, per-repair measurement, failure
//!   sweeps, and the comparison table against the two-parity baseline.
//!
//! Everything is `no_std` + `alloc`; IO and file formats live in the
//! companion `skipless` crate.

#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod design;
pub mod fr;
pub mod gf;
pub mod sim;
pub mod zigzag;
