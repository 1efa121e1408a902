//! Fractional repetition array codes over an ordered design: node `i`
//! stores the packets named by block `i`, in block order. Repair is
//! pure transfer — helper packets are copied verbatim, no arithmetic.
//! A thin systematic MDS outer encoder is included for end-to-end
//! demonstrations; it does not affect any repair metric.

use alloc::vec::Vec;
use core::fmt;

use crate::design::{Design, DesignError, RepairPlanner};
use crate::gf::{Field, FieldElement, GfError, Matrix};
use crate::sim::{HelperMetrics, RepairMetrics};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FrError {
    ParameterOutOfRange { what: &'static str, value: u64, min: u64, max: u64 },
    ShapeMismatch,
    Design(DesignError),
    Field(GfError),
}

impl fmt::Display for FrError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FrError::ParameterOutOfRange { what, value, min, max } => {
                write!(f, "{what} = {value} outside supported range {min}..={max}")
            }
            FrError::ShapeMismatch => write!(f, "input shape mismatch"),
            FrError::Design(e) => write!(f, "design error: {e}"),
            FrError::Field(e) => write!(f, "field error: {e}"),
        }
    }
}

impl core::error::Error for FrError {}

impl From<DesignError> for FrError {
    fn from(e: DesignError) -> Self {
        FrError::Design(e)
    }
}

impl From<GfError> for FrError {
    fn from(e: GfError) -> Self {
        FrError::Field(e)
    }
}

/// Packets per node; blocks of a quadruple system have four points.
pub const PACKETS_PER_NODE: usize = 4;

/// An `(M x N)` fractional repetition array code: `N` nodes (one per
/// block) of `M = 4` packets each, over `n` coded packets (one per
/// point).
#[derive(Debug, Clone)]
pub struct FrCode {
    design: Design,
}

/// Lays the design out as an array code; the ordered placement is the
/// design's own block order.
pub fn to_array_code(design: Design) -> FrCode {
    FrCode { design }
}

impl FrCode {
    pub fn design(&self) -> &Design {
        &self.design
    }

    /// Outer codeword length `n`: one packet per point.
    pub fn point_count(&self) -> usize {
        self.design.v()
    }

    pub fn node_count(&self) -> usize {
        self.design.block_count()
    }

    /// Point ids stored by a node, in on-disk order.
    pub fn node_packets(&self, node: usize) -> &[u32; 4] {
        self.design.block(node)
    }
}

/// One coded packet per point of the design.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PacketStore<P> {
    packets: Vec<P>,
}

impl<P> PacketStore<P> {
    pub fn new(packets: Vec<P>) -> PacketStore<P> {
        PacketStore { packets }
    }

    pub fn len(&self) -> usize {
        self.packets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.packets.is_empty()
    }

    pub fn get(&self, point: u32) -> &P {
        &self.packets[point as usize]
    }

    pub fn packets(&self) -> &[P] {
        &self.packets
    }
}

fn pow(field: &Field, base: FieldElement, exp: usize) -> FieldElement {
    let mut acc = FieldElement::ONE;
    for _ in 0..exp {
        acc = field.mul(acc, base);
    }
    acc
}

/// Systematic `k x n` generator: evaluation-style columns normalized
/// so the first `k` are the identity; any `k` columns are invertible.
fn outer_generator(n: usize, k: usize, field: &Field) -> Result<Matrix, FrError> {
    let mut vander = Matrix::zero(k, n);
    for i in 0..k {
        for (j, x) in (0..n).enumerate() {
            vander.set(i, j, pow(field, FieldElement(x as u16), i));
        }
    }
    let mut head = Matrix::zero(k, k);
    for i in 0..k {
        for j in 0..k {
            head.set(i, j, vander.get(i, j));
        }
    }
    Ok(head.solve(&vander, field)?)
}

/// Spreads `k` file symbols into `n` coded packets; the first `k`
/// packets are the file verbatim and any `k` packets reconstruct it.
pub fn outer_encode(
    file_symbols: &[FieldElement],
    n: usize,
    k: usize,
    field: &Field,
) -> Result<PacketStore<FieldElement>, FrError> {
    if k == 0 || k > n || n as u64 > field.order() as u64 {
        return Err(FrError::ParameterOutOfRange {
            what: "n",
            value: n as u64,
            min: k as u64,
            max: field.order() as u64,
        });
    }
    if file_symbols.len() != k {
        return Err(FrError::ShapeMismatch);
    }
    let gen = outer_generator(n, k, field)?;
    let mut packets = Vec::with_capacity(n);
    for j in 0..n {
        let mut acc = FieldElement::ZERO;
        for (i, &f) in file_symbols.iter().enumerate() {
            acc = field.add(acc, field.mul(f, gen.get(i, j)));
        }
        packets.push(acc);
    }
    Ok(PacketStore::new(packets))
}

/// Rebuilds the file from any `k` surviving `(point, packet)` pairs.
pub fn outer_decode(
    survivors: &[(usize, FieldElement)],
    n: usize,
    k: usize,
    field: &Field,
) -> Result<Vec<FieldElement>, FrError> {
    if survivors.len() != k || survivors.iter().any(|(p, _)| *p >= n) {
        return Err(FrError::ShapeMismatch);
    }
    let gen = outer_generator(n, k, field)?;
    // Solve G_S^T x = values for the file x.
    let mut a = Matrix::zero(k, k);
    let mut b = Matrix::zero(k, 1);
    for (row, (point, value)) in survivors.iter().enumerate() {
        for i in 0..k {
            a.set(row, i, gen.get(i, *point));
        }
        b.set(row, 0, *value);
    }
    let x = a.solve(&b, field)?;
    Ok((0..k).map(|i| x.get(i, 0)).collect())
}

/// Repair result: the failed node's packets in on-disk order plus the
/// accounting for the transfer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeRepair<P> {
    pub packets: Vec<P>,
    pub metrics: RepairMetrics,
}

/// Repairs a failed node by copying its packets out of at most two
/// helper nodes. No field arithmetic happens here: recovered packets
/// are clones of helper contents.
pub fn repair_node<P: Clone + PartialEq>(
    code: &FrCode,
    store: &PacketStore<P>,
    failed: usize,
) -> Result<NodeRepair<P>, FrError> {
    repair_node_with(&RepairPlanner::new(code.design()), code, store, failed)
}

/// Same as [`repair_node`] with a reusable planner (for sweeps).
pub fn repair_node_with<P: Clone + PartialEq>(
    planner: &RepairPlanner<'_>,
    code: &FrCode,
    store: &PacketStore<P>,
    failed: usize,
) -> Result<NodeRepair<P>, FrError> {
    if store.len() != code.point_count() {
        return Err(FrError::ShapeMismatch);
    }
    let plan = planner.plan(failed)?;
    let mut gathered: Vec<Option<(u32, P)>> = Vec::new();
    let mut per_helper = Vec::new();
    for read in &plan.reads {
        let tuple = code.node_packets(read.block);
        for &pos in &read.positions {
            let point = tuple[pos];
            gathered.push(Some((point, store.get(point).clone())));
        }
        // Skip accounted by counting unread slots inside the span; the
        // simulator recomputes this independently from the positions.
        let span = read.positions.last().unwrap() - read.positions.first().unwrap() + 1;
        per_helper.push(HelperMetrics {
            helper: alloc::format!("b{}", read.block),
            symbols: read.positions.len() as u64,
            skip: (span - read.positions.len()) as u64,
        });
    }
    let mut packets = Vec::with_capacity(PACKETS_PER_NODE);
    for &point in code.node_packets(failed) {
        let packet = gathered
            .iter()
            .flatten()
            .find(|(p, _)| *p == point)
            .map(|(_, v)| v.clone())
            .ok_or(FrError::Design(DesignError::NoZeroSkipPlan { block: failed }))?;
        packets.push(packet);
    }
    let metrics = RepairMetrics {
        bandwidth: per_helper.iter().map(|h| h.symbols).sum(),
        locality: per_helper.len(),
        skip_cost: per_helper.iter().map(|h| h.skip).sum(),
        per_helper,
    };
    Ok(NodeRepair { packets, metrics })
}
