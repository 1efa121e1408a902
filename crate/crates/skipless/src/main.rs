//! `skipless` — build, verify, and exercise repair codes whose
//! single-failure reads stay contiguous on disk.
//!
//! Exit codes: 0 success, 1 domain failure (verification or repair
//! failed), 2 usage error (bad arguments, missing or malformed files).

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use skipless::data::load_tables;
use skipless::formats::{
    construction_name, metrics_csv, metrics_rows, to_json_bytes,
    CodeDescriptor, CompareReport, Descriptor, DesignDescriptor, FrDescriptor, MetricsReport,
    MetricsRow, SummaryJson,
};
use skipless::io::write_output;
use skipless_core::design::{Design, RepairPlanner, DEFAULT_ORDER_BOUND};
use skipless_core::fr::{repair_node_with, to_array_code, FrCode, PacketStore};
use skipless_core::gf::{default_polynomial, Field, FieldElement, FieldSpec};
use skipless_core::sim::{
    block_read_trace, compare_baseline, measure, summarize, sweep_zigzag, zigzag_read_trace,
    SweepRow,
};
use skipless_core::zigzag::{
    assign_coefficients, build_baseline, build_construction_a, build_construction_b,
    build_construction_c, encode, execute_repair, plan_repair, verify_mds, ZigzagCode,
    ZigzagError,
};

/// Resampling budget for the coefficient search.
const MAX_COEFFICIENT_ATTEMPTS: u32 = 100;

#[derive(Parser)]
#[command(name = "skipless", version, about = "Repair codes with zero skip cost")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a code or design and write its JSON descriptor.
    Build(BuildArgs),
    /// Run a checker against a descriptor file.
    Verify(VerifyArgs),
    /// Encode seeded data, fail one node, repair it, report metrics.
    Simulate(SimulateArgs),
    /// Metrics for every repairable failure; optional comparison table.
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BuildKind {
    A,
    B,
    C,
    Baseline,
    Sqs,
    Fr,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct BuildArgs {
    /// What to build: a zigzag construction, a quadruple system, or a
    /// fractional repetition code over one.
    #[arg(long)]
    construction: BuildKind,
    /// Subpacketization exponent for zigzag codes (rows = 2^m).
    #[arg(long)]
    m: Option<u8>,
    /// Systematic column count (construction c only).
    #[arg(long)]
    k: Option<usize>,
    /// Design order (sqs / fr).
    #[arg(long)]
    v: Option<u32>,
    /// Seed for the coefficient search.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Field width in bits.
    #[arg(long, default_value_t = 16)]
    field_w: u8,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Check {
    Mds,
    Sqs,
    ZeroSkip,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    check: Check,
    file: PathBuf,
}

#[derive(Args)]
struct SimulateArgs {
    /// Column (zigzag) or node (fr) to fail.
    #[arg(long)]
    fail_node: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    file: PathBuf,
}

#[derive(Args)]
struct SweepArgs {
    /// Descriptor to sweep; omit when building via --construction.
    file: Option<PathBuf>,
    #[arg(long)]
    construction: Option<BuildKind>,
    #[arg(long)]
    m: Option<u8>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    v: Option<u32>,
    /// Emit the baseline-versus-zero-skip table for --m instead.
    #[arg(long)]
    compare: bool,
    /// Worker threads for per-failure planning.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

/// Failures carrying their process exit code.
enum Failure {
    /// Exit 2: arguments or input files are unusable.
    Usage(String),
    /// Exit 1: the domain said no (verification failed, repair failed,
    /// search exhausted, order unsupported).
    Domain(String),
}

type CmdResult = Result<(), Failure>;

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

fn domain<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Domain(e.to_string())
}

/// Zigzag build errors split by exit code: bad parameters are usage,
/// an exhausted search is a domain failure.
fn zigzag_failure(e: ZigzagError) -> Failure {
    match e {
        ZigzagError::ParameterOutOfRange { .. } => usage(e),
        _ => domain(e),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Build(args) => cmd_build(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Sweep(args) => cmd_sweep(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn field_for(width: u8) -> Result<Field, Failure> {
    let poly = default_polynomial(width)
        .ok_or_else(|| Failure::Usage(format!("no default polynomial for width {width}")))?;
    Ok(Field::new(FieldSpec::new(width, poly).map_err(usage)?))
}

fn require<T>(value: Option<T>, what: &str) -> Result<T, Failure> {
    value.ok_or_else(|| Failure::Usage(format!("--{what} is required for this construction")))
}

fn build_zigzag(kind: BuildKind, m: u8, k: Option<usize>, spec: FieldSpec) -> Result<ZigzagCode, Failure> {
    match kind {
        BuildKind::A => build_construction_a(m, spec).map_err(zigzag_failure),
        BuildKind::B => build_construction_b(m, spec).map_err(zigzag_failure),
        BuildKind::C => {
            let k = require(k, "k")?;
            build_construction_c(m, k, spec).map_err(zigzag_failure)
        }
        BuildKind::Baseline => build_baseline(m, spec).map_err(zigzag_failure),
        _ => unreachable!("zigzag kinds only"),
    }
}

fn cmd_build(args: BuildArgs) -> CmdResult {
    if args.format == Format::Csv {
        return Err(Failure::Usage("descriptors are JSON; csv applies to metrics".into()));
    }
    let bytes = match args.construction {
        BuildKind::A | BuildKind::B | BuildKind::C | BuildKind::Baseline => {
            let m = require(args.m, "m")?;
            let field = field_for(args.field_w)?;
            let code = build_zigzag(args.construction, m, args.k, *field.spec())?;
            let assignment =
                assign_coefficients(&code, &field, args.seed, MAX_COEFFICIENT_ATTEMPTS)
                    .map_err(zigzag_failure)?;
            if !assignment.bound_satisfied {
                eprintln!(
                    "warning: field order {} does not clear the existence bound {}; \
                     the search succeeded anyway",
                    field.order(),
                    skipless_core::zigzag::existence_bound(code.m(), code.k()),
                );
            }
            eprintln!(
                "coefficients verified MDS on attempt {} (seed {})",
                assignment.attempts_used, args.seed
            );
            to_json_bytes(&CodeDescriptor::from_code(&assignment.code)).map_err(domain)?
        }
        BuildKind::Sqs => {
            let v = require(args.v, "v")?;
            let tables = load_tables().map_err(usage)?;
            let built =
                skipless_core::design::build_sqs(v, &tables, DEFAULT_ORDER_BOUND).map_err(domain)?;
            to_json_bytes(&DesignDescriptor::from_design(&built.design)).map_err(domain)?
        }
        BuildKind::Fr => {
            let v = require(args.v, "v")?;
            let tables = load_tables().map_err(usage)?;
            let built =
                skipless_core::design::build_sqs(v, &tables, DEFAULT_ORDER_BOUND).map_err(domain)?;
            let code = to_array_code(built.design);
            to_json_bytes(&FrDescriptor::from_code(&code)).map_err(domain)?
        }
    };
    write_output(args.out.as_deref(), &bytes).map_err(usage)
}

fn read_descriptor(path: &Path) -> Result<Descriptor, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("cannot parse {}: {e}", path.display())))
}

fn cmd_verify(args: VerifyArgs) -> CmdResult {
    let descriptor = read_descriptor(&args.file)?;
    match (args.check, descriptor) {
        (Check::Mds, Descriptor::Zigzag(dto)) => {
            let code = dto.to_code().map_err(usage)?;
            let field = Field::new(*code.field());
            let report = verify_mds(&code, &field).map_err(domain)?;
            if report.is_mds {
                println!("mds: pass ({} column subsets full rank)", report.subsets_checked);
                Ok(())
            } else {
                Err(domain(format!(
                    "mds: fail, witness subset {:?}",
                    report.witness.unwrap_or_default()
                )))
            }
        }
        (Check::Mds, _) => Err(Failure::Usage("--check mds needs a zigzag descriptor".into())),
        (Check::Sqs, descriptor) => {
            let design = design_of(descriptor)?;
            let report = skipless_core::design::verify_sqs(&design).map_err(domain)?;
            if report.is_sqs {
                println!("sqs: pass ({} blocks, every triple once)", design.block_count());
                Ok(())
            } else {
                let w = report.witness.expect("witness on failure");
                Err(domain(format!(
                    "sqs: fail, triple {:?} covered {} times",
                    w.triple, w.count
                )))
            }
        }
        (Check::ZeroSkip, Descriptor::Zigzag(dto)) => {
            let code = dto.to_code().map_err(usage)?;
            let report = sweep_zigzag(&code).map_err(domain)?;
            for (s, reason) in &report.skipped {
                eprintln!("note: node {s} has no repair scheme: {reason}");
            }
            match report.rows.iter().find(|r| r.metrics.skip_cost > 0) {
                None => {
                    println!("zero-skip: pass ({} repairs, all contiguous)", report.rows.len());
                    Ok(())
                }
                Some(row) => Err(domain(format!(
                    "zero-skip: fail, witness node {} skip {}",
                    row.failed, row.metrics.skip_cost
                ))),
            }
        }
        (Check::ZeroSkip, descriptor) => {
            let design = design_of(descriptor)?;
            let planner = RepairPlanner::new(&design);
            for block in 0..design.block_count() {
                let plan = planner.plan(block).map_err(domain)?;
                if plan.skip_cost() > 0 {
                    return Err(domain(format!(
                        "zero-skip: fail, witness block {} skip {}",
                        block,
                        plan.skip_cost()
                    )));
                }
                if plan.locality() > 2 {
                    return Err(domain(format!(
                        "zero-skip: fail, block {} needs {} helpers",
                        block,
                        plan.locality()
                    )));
                }
            }
            println!("zero-skip: pass ({} blocks, locality <= 2)", design.block_count());
            Ok(())
        }
    }
}

fn design_of(descriptor: Descriptor) -> Result<Design, Failure> {
    match descriptor {
        Descriptor::Design(dto) => dto.to_design().map_err(usage),
        Descriptor::Fr(dto) => Ok(dto.to_code().map_err(usage)?.design().clone()),
        Descriptor::Zigzag(_) => {
            Err(Failure::Usage("this check needs a design or fr descriptor".into()))
        }
    }
}

fn random_element(rng: &mut ChaCha8Rng, field: &Field) -> FieldElement {
    FieldElement((rng.next_u32() & (field.order() - 1)) as u16)
}

fn cmd_simulate(args: SimulateArgs) -> CmdResult {
    let descriptor = read_descriptor(&args.file)?;
    let report = match descriptor {
        Descriptor::Zigzag(dto) => {
            let code = dto.to_code().map_err(usage)?;
            if args.fail_node >= code.column_count() {
                return Err(Failure::Usage(format!(
                    "--fail-node {} out of range for {} columns",
                    args.fail_node,
                    code.column_count()
                )));
            }
            let field = Field::new(*code.field());
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            let info: Vec<Vec<FieldElement>> = (0..code.k())
                .map(|_| (0..code.row_count()).map(|_| random_element(&mut rng, &field)).collect())
                .collect();
            let cw = encode(&code, &field, &info).map_err(domain)?;
            let plan = plan_repair(&code, args.fail_node).map_err(domain)?;
            let recovered = execute_repair(&cw, &plan, &code, &field).map_err(domain)?;
            if recovered != info[args.fail_node] {
                return Err(domain("recovered column differs from the original"));
            }
            let metrics = measure(&zigzag_read_trace(&code, &plan)).map_err(domain)?;
            let rows = metrics_rows(
                construction_name(code.construction()),
                code.m() as u32,
                code.k() as u32,
                args.fail_node,
                &metrics,
            );
            let summary = summarize(
                &[SweepRow { failed: args.fail_node, metrics }],
                code.row_count() as u64,
            );
            MetricsReport { rows, skipped: vec![], summary: SummaryJson::from_summary(&summary) }
        }
        descriptor => {
            let code = match descriptor {
                Descriptor::Fr(dto) => dto.to_code().map_err(usage)?,
                Descriptor::Design(dto) => to_array_code(dto.to_design().map_err(usage)?),
                Descriptor::Zigzag(_) => unreachable!("handled above"),
            };
            if args.fail_node >= code.node_count() {
                return Err(Failure::Usage(format!(
                    "--fail-node {} out of range for {} nodes",
                    args.fail_node,
                    code.node_count()
                )));
            }
            let field = field_for(16)?;
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            let packets: Vec<FieldElement> =
                (0..code.point_count()).map(|_| random_element(&mut rng, &field)).collect();
            let store = PacketStore::new(packets);
            let planner = RepairPlanner::new(code.design());
            let repair = repair_node_with(&planner, &code, &store, args.fail_node).map_err(domain)?;
            let want: Vec<FieldElement> =
                code.node_packets(args.fail_node).iter().map(|&p| *store.get(p)).collect();
            if repair.packets != want {
                return Err(domain("recovered packets differ from the original node"));
            }
            let rows = fr_metrics_rows(&code, args.fail_node, &repair.metrics);
            let summary =
                summarize(&[SweepRow { failed: args.fail_node, metrics: repair.metrics }], 4);
            MetricsReport { rows, skipped: vec![], summary: SummaryJson::from_summary(&summary) }
        }
    };
    emit_metrics(&report, args.format, args.out.as_deref())
}

fn fr_metrics_rows(
    code: &FrCode,
    failed: usize,
    metrics: &skipless_core::sim::RepairMetrics,
) -> Vec<MetricsRow> {
    metrics_rows("fr", 4, code.point_count() as u32, failed, metrics)
}

fn emit_metrics(report: &MetricsReport, format: Format, out: Option<&Path>) -> CmdResult {
    let bytes = match format {
        Format::Json => to_json_bytes(report).map_err(domain)?,
        Format::Csv => metrics_csv(report).map_err(domain)?.into_bytes(),
    };
    write_output(out, &bytes).map_err(usage)
}

fn cmd_sweep(args: SweepArgs) -> CmdResult {
    if args.compare {
        let m = require(args.m, "m")?;
        let field = field_for(16)?;
        let table = compare_baseline(m, &field).map_err(zigzag_failure)?;
        let report = CompareReport::from_table(&table);
        let bytes = match args.format {
            Format::Json => to_json_bytes(&report).map_err(domain)?,
            Format::Csv => report.csv().map_err(domain)?.into_bytes(),
        };
        return write_output(args.out.as_deref(), &bytes).map_err(usage);
    }

    enum Target {
        Zigzag(ZigzagCode),
        Blocks(FrCode),
    }

    let target = match (&args.file, args.construction) {
        (Some(path), None) => match read_descriptor(path)? {
            Descriptor::Zigzag(dto) => Target::Zigzag(dto.to_code().map_err(usage)?),
            Descriptor::Fr(dto) => Target::Blocks(dto.to_code().map_err(usage)?),
            Descriptor::Design(dto) => {
                Target::Blocks(to_array_code(dto.to_design().map_err(usage)?))
            }
        },
        (None, Some(kind)) => match kind {
            BuildKind::A | BuildKind::B | BuildKind::C | BuildKind::Baseline => {
                let m = require(args.m, "m")?;
                let field = field_for(16)?;
                Target::Zigzag(build_zigzag(kind, m, args.k, *field.spec())?)
            }
            BuildKind::Sqs | BuildKind::Fr => {
                let v = require(args.v, "v")?;
                let tables = load_tables().map_err(usage)?;
                let built = skipless_core::design::build_sqs(v, &tables, DEFAULT_ORDER_BOUND)
                    .map_err(domain)?;
                Target::Blocks(to_array_code(built.design))
            }
        },
        _ => {
            return Err(Failure::Usage(
                "pass exactly one of a descriptor file or --construction".into(),
            ))
        }
    };

    let report = match target {
        Target::Zigzag(code) => {
            let sweep = sweep_zigzag(&code).map_err(domain)?;
            let mut rows = Vec::new();
            for row in &sweep.rows {
                rows.extend(metrics_rows(
                    construction_name(code.construction()),
                    code.m() as u32,
                    code.k() as u32,
                    row.failed,
                    &row.metrics,
                ));
            }
            MetricsReport {
                rows,
                skipped: sweep.skipped,
                summary: SummaryJson::from_summary(&sweep.summary),
            }
        }
        Target::Blocks(code) => fr_sweep(&code, args.jobs)?,
    };
    emit_metrics(&report, args.format, args.out.as_deref())
}

/// Per-node plan + measure across a bounded worker pool; row order is
/// by node index regardless of worker count.
fn fr_sweep(code: &FrCode, jobs: usize) -> Result<MetricsReport, Failure> {
    use rayon::prelude::*;

    if jobs == 0 {
        return Err(Failure::Usage("--jobs must be at least 1".into()));
    }
    let planner = RepairPlanner::new(code.design());
    let one = |node: usize| -> Result<SweepRow, (usize, String)> {
        let plan = planner.plan(node).map_err(|e| (node, e.to_string()))?;
        let metrics =
            measure(&block_read_trace(code.design(), &plan)).map_err(|e| (node, e.to_string()))?;
        Ok(SweepRow { failed: node, metrics })
    };
    let results: Vec<Result<SweepRow, (usize, String)>> = if jobs == 1 {
        (0..code.node_count()).map(one).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Failure::Usage(format!("worker pool: {e}")))?;
        pool.install(|| (0..code.node_count()).into_par_iter().map(one).collect())
    };
    let mut rows = Vec::new();
    let mut sweep_rows = Vec::new();
    let mut skipped = Vec::new();
    for result in results {
        match result {
            Ok(row) => {
                rows.extend(fr_metrics_rows(code, row.failed, &row.metrics));
                sweep_rows.push(row);
            }
            Err(skip) => skipped.push(skip),
        }
    }
    let summary = summarize(&sweep_rows, 4);
    Ok(MetricsReport { rows, skipped, summary: SummaryJson::from_summary(&summary) })
}
