//! Serde DTOs for the on-disk descriptor and report formats. All
//! descriptors round-trip bit-exactly: serialize-parse-serialize is
//! the identity on bytes.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use skipless_core::design::{
    BlockRepairPlan, Design, GroupTag, Point, SchemeKind, CHECKER_VERSION,
};
use skipless_core::fr::FrCode;
use skipless_core::gf::{FieldElement, FieldSpec};
use skipless_core::sim::{RepairMetrics, SweepSummary};
use skipless_core::zigzag::{Construction, ParityPattern, RepairPlan, ZigzagCode};

use crate::FormatError;

pub fn construction_name(c: Construction) -> &'static str {
    match c {
        Construction::A => "a",
        Construction::B => "b",
        Construction::C => "c",
        Construction::Baseline => "baseline",
    }
}

pub fn parse_construction(s: &str) -> Result<Construction, FormatError> {
    Ok(match s {
        "a" => Construction::A,
        "b" => Construction::B,
        "c" => Construction::C,
        "baseline" => Construction::Baseline,
        other => return Err(FormatError::UnknownConstruction(other.to_string())),
    })
}

/// Zigzag code descriptor. Coefficients are row-major over
/// `[row][info column][parity]`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CodeDescriptor {
    pub construction: String,
    pub m: u8,
    pub k: usize,
    pub field_w: u8,
    pub reduction_poly: u32,
    pub seed: Option<u64>,
    pub patterns: Vec<Vec<u32>>,
    pub coefficients: Vec<u16>,
}

impl CodeDescriptor {
    pub fn from_code(code: &ZigzagCode) -> CodeDescriptor {
        CodeDescriptor {
            construction: construction_name(code.construction()).to_string(),
            m: code.m(),
            k: code.k(),
            field_w: code.field().width(),
            reduction_poly: code.field().reduction_poly(),
            seed: code.seed(),
            patterns: code.patterns().iter().map(|p| p.offsets().to_vec()).collect(),
            coefficients: code.coefficients().iter().map(|c| c.value()).collect(),
        }
    }

    pub fn to_code(&self) -> Result<ZigzagCode, FormatError> {
        let construction = parse_construction(&self.construction)?;
        let field = FieldSpec::new(self.field_w, self.reduction_poly)?;
        let patterns: Vec<ParityPattern> =
            self.patterns.iter().map(|p| ParityPattern::new(p.clone())).collect();
        let coefficients = self.coefficients.iter().map(|&v| FieldElement(v)).collect();
        Ok(ZigzagCode::from_parts(
            self.m,
            self.k,
            patterns,
            coefficients,
            field,
            construction,
            self.seed,
        )?)
    }
}

/// Repair-plan dump for inspection.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct RepairPlanDump {
    pub failed: usize,
    pub helpers: Vec<HelperDump>,
    pub skip_cost: u64,
    pub bandwidth: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct HelperDump {
    pub column: usize,
    pub rows: Vec<u32>,
}

impl RepairPlanDump {
    pub fn from_zigzag(plan: &RepairPlan, metrics: &RepairMetrics) -> RepairPlanDump {
        RepairPlanDump {
            failed: plan.failed,
            helpers: plan
                .helpers
                .iter()
                .map(|h| HelperDump { column: h.column, rows: h.rows.clone() })
                .collect(),
            skip_cost: metrics.skip_cost,
            bandwidth: metrics.bandwidth,
        }
    }

    pub fn from_block(plan: &BlockRepairPlan, metrics: &RepairMetrics) -> RepairPlanDump {
        RepairPlanDump {
            failed: plan.failed,
            helpers: plan
                .reads
                .iter()
                .map(|r| HelperDump {
                    column: r.block,
                    rows: r.positions.iter().map(|&p| p as u32).collect(),
                })
                .collect(),
            skip_cost: metrics.skip_cost,
            bandwidth: metrics.bandwidth,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct Certificate {
    pub verified: bool,
    pub checker_version: u32,
}

/// Ordered-design descriptor. Blocks carry point encodings directly;
/// the universe is recovered by parsing and canonically ordering the
/// points seen in blocks (infinity first, then structurally).
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct DesignDescriptor {
    pub v: usize,
    pub point_tag: String,
    pub blocks: Vec<[String; 4]>,
    pub groups: Vec<String>,
    pub certificate: Certificate,
}

fn point_tag(points: &[Point]) -> String {
    let has_inf = points.iter().any(Point::is_infinity);
    let family = points
        .iter()
        .find_map(|p| match p {
            Point::Finite(_) => Some("finite"),
            Point::Residue(_) => Some("residue"),
            Point::Pair { .. } => Some("pair"),
            Point::Infinity => None,
        })
        .unwrap_or("empty");
    if has_inf {
        format!("{family}+inf")
    } else {
        family.to_string()
    }
}

pub fn parse_point(s: &str) -> Result<Point, FormatError> {
    let mut parts = s.split('_');
    let head = parts.next().ok_or_else(|| FormatError::BadPoint(s.to_string()))?;
    let mut point = if head == "inf" {
        Point::Infinity
    } else {
        Point::Finite(head.parse().map_err(|_| FormatError::BadPoint(s.to_string()))?)
    };
    for level in parts {
        let level: u8 = level.parse().map_err(|_| FormatError::BadPoint(s.to_string()))?;
        point = Point::pair(point, level);
    }
    Ok(point)
}

fn scheme_from_groups(groups: &[GroupTag]) -> SchemeKind {
    let triple = [GroupTag::B2a, GroupTag::B2b, GroupTag::B3, GroupTag::B4, GroupTag::B5];
    if groups.iter().any(|g| triple.contains(g)) {
        SchemeKind::Triple
    } else if groups.iter().any(|g| matches!(g, GroupTag::B1 | GroupTag::B2)) {
        SchemeKind::Double
    } else {
        SchemeKind::Generic
    }
}

impl DesignDescriptor {
    pub fn from_design(design: &Design) -> DesignDescriptor {
        let enc = |id: u32| design.point(id).to_string();
        DesignDescriptor {
            v: design.v(),
            point_tag: point_tag(design.points()),
            blocks: design
                .blocks()
                .iter()
                .map(|b| [enc(b[0]), enc(b[1]), enc(b[2]), enc(b[3])])
                .collect(),
            groups: design.groups().iter().map(|g| g.as_str().to_string()).collect(),
            certificate: Certificate {
                verified: design.is_certified(),
                checker_version: CHECKER_VERSION,
            },
        }
    }

    pub fn to_design(&self) -> Result<Design, FormatError> {
        if self.groups.len() != self.blocks.len() {
            return Err(FormatError::Inconsistent("groups misaligned with blocks"));
        }
        // Developed tables carry residue points; bare numbers in their
        // blocks must come back as residues for byte-stable output.
        let residues = self.point_tag.starts_with("residue");
        let adapt = |p: Point| match p {
            Point::Finite(n) if residues => Point::Residue(n),
            other => other,
        };
        let mut universe: BTreeMap<Point, u32> = BTreeMap::new();
        let mut parsed: Vec<[Point; 4]> = Vec::with_capacity(self.blocks.len());
        for b in &self.blocks {
            let pts = [
                adapt(parse_point(&b[0])?),
                adapt(parse_point(&b[1])?),
                adapt(parse_point(&b[2])?),
                adapt(parse_point(&b[3])?),
            ];
            for p in &pts {
                universe.entry(p.clone()).or_insert(0);
            }
            parsed.push(pts);
        }
        if universe.len() != self.v {
            return Err(FormatError::Inconsistent("point count does not match blocks"));
        }
        // BTreeMap iteration is the canonical order.
        let points: Vec<Point> = universe.keys().cloned().collect();
        for (i, p) in points.iter().enumerate() {
            *universe.get_mut(p).expect("present") = i as u32;
        }
        let blocks: Vec<[u32; 4]> = parsed
            .iter()
            .map(|pts| {
                [
                    universe[&pts[0]],
                    universe[&pts[1]],
                    universe[&pts[2]],
                    universe[&pts[3]],
                ]
            })
            .collect();
        let groups: Vec<GroupTag> = self
            .groups
            .iter()
            .map(|g| GroupTag::parse(g).ok_or_else(|| FormatError::UnknownGroup(g.clone())))
            .collect::<Result<_, _>>()?;
        let scheme = scheme_from_groups(&groups);
        let mut design = Design::from_parts(points, blocks, groups, scheme)?;
        if self.certificate.verified && self.certificate.checker_version == CHECKER_VERSION {
            design.restore_certificate(true);
        }
        Ok(design)
    }
}

/// Fractional repetition code descriptor: the design plus its array
/// shape.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct FrDescriptor {
    pub design: DesignDescriptor,
    pub n: usize,
    pub nodes: usize,
    pub packets_per_node: usize,
}

impl FrDescriptor {
    pub fn from_code(code: &FrCode) -> FrDescriptor {
        FrDescriptor {
            design: DesignDescriptor::from_design(code.design()),
            n: code.point_count(),
            nodes: code.node_count(),
            packets_per_node: skipless_core::fr::PACKETS_PER_NODE,
        }
    }

    pub fn to_code(&self) -> Result<FrCode, FormatError> {
        let design = self.design.to_design()?;
        if design.v() != self.n || design.block_count() != self.nodes {
            return Err(FormatError::Inconsistent("array shape does not match design"));
        }
        Ok(skipless_core::fr::to_array_code(design))
    }
}

/// Any descriptor file; variants are distinguished by their fields.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum Descriptor {
    Zigzag(CodeDescriptor),
    Fr(FrDescriptor),
    Design(DesignDescriptor),
}

/// One CSV row of a metrics report; a repair event contributes one row
/// per helper.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct MetricsRow {
    pub construction: String,
    pub m: u32,
    pub k: u32,
    pub failed: usize,
    pub helper: String,
    pub symbols_read: u64,
    pub skip: u64,
    pub locality: usize,
    pub bandwidth_total: u64,
    pub skip_total: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SummaryJson {
    pub rows: usize,
    pub max_skip: u64,
    pub total_skip: u64,
    pub mean_skip: f64,
    pub max_locality: usize,
    pub max_helper_fraction: String,
}

impl SummaryJson {
    pub fn from_summary(s: &SweepSummary) -> SummaryJson {
        SummaryJson {
            rows: s.rows,
            max_skip: s.max_skip,
            total_skip: s.total_skip,
            mean_skip: s.mean_skip,
            max_locality: s.max_locality,
            max_helper_fraction: s.max_helper_fraction.to_string(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct MetricsReport {
    pub rows: Vec<MetricsRow>,
    /// Failure cases the planner declined, with diagnostics.
    pub skipped: Vec<(usize, String)>,
    pub summary: SummaryJson,
}

/// Expands one repair's metrics into per-helper CSV rows.
pub fn metrics_rows(
    construction: &str,
    m: u32,
    k: u32,
    failed: usize,
    metrics: &RepairMetrics,
) -> Vec<MetricsRow> {
    metrics
        .per_helper
        .iter()
        .map(|h| MetricsRow {
            construction: construction.to_string(),
            m,
            k,
            failed,
            helper: h.helper.clone(),
            symbols_read: h.symbols,
            skip: h.skip,
            locality: metrics.locality,
            bandwidth_total: metrics.bandwidth,
            skip_total: metrics.skip_cost,
        })
        .collect()
}

/// Renders a metrics report as CSV with the fixed column set.
pub fn metrics_csv(report: &MetricsReport) -> Result<String, FormatError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in &report.rows {
        w.serialize(row).map_err(|_| FormatError::Inconsistent("csv serialization"))?;
    }
    let bytes = w.into_inner().map_err(|_| FormatError::Inconsistent("csv flush"))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Comparison table row between constructions at one `m`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CompareRowJson {
    pub construction: String,
    pub m: u8,
    pub k: usize,
    pub columns: usize,
    pub rate: String,
    pub per_node_skip: Vec<(usize, u64)>,
    pub aggregate_skip: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CompareReport {
    pub m: u8,
    pub rows: Vec<CompareRowJson>,
}

impl CompareReport {
    pub fn from_table(t: &skipless_core::sim::CompareTable) -> CompareReport {
        CompareReport {
            m: t.m,
            rows: t
                .rows
                .iter()
                .map(|r| CompareRowJson {
                    construction: construction_name(r.construction).to_string(),
                    m: r.m,
                    k: r.k,
                    columns: r.columns,
                    rate: r.rate.to_string(),
                    per_node_skip: r.per_node_skip.clone(),
                    aggregate_skip: r.aggregate_skip,
                })
                .collect(),
        }
    }

    pub fn csv(&self) -> Result<String, FormatError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "construction",
            "m",
            "k",
            "columns",
            "rate",
            "failed",
            "skip_total",
            "aggregate_skip",
        ])
        .map_err(|_| FormatError::Inconsistent("csv header"))?;
        for row in &self.rows {
            for (failed, skip) in &row.per_node_skip {
                w.write_record([
                    row.construction.clone(),
                    row.m.to_string(),
                    row.k.to_string(),
                    row.columns.to_string(),
                    row.rate.clone(),
                    failed.to_string(),
                    skip.to_string(),
                    row.aggregate_skip.to_string(),
                ])
                .map_err(|_| FormatError::Inconsistent("csv row"))?;
            }
        }
        let bytes = w.into_inner().map_err(|_| FormatError::Inconsistent("csv flush"))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

/// Pretty JSON with a trailing newline; the byte-stable output format
/// used for every file this crate writes.
pub fn to_json_bytes<T: Serialize>(value: &T) -> Result<Vec<u8>, FormatError> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s.into_bytes())
}
