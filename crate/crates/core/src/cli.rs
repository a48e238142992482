//! The `nigpart` command line: `partition`, `evaluate` and `verify`.
//!
//! Exit codes: 0 success, 1 verification failure or internal error, 2 input
//! format errors, 3 configuration errors.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gen;
use crate::gpvs::{find_separator, Balance, GpvsConfig};
use crate::hgraph::{evaluate, CutReport, Hypergraph, PartitionVector};
use crate::ingest::{column_net_model, read_hypergraph_text, read_matrix_market, row_net_model};
use crate::nig::{build_nig, NigOptions, WeightScheme, DEFAULT_EDGE_CAP, DEFAULT_SCALE};
use crate::oracle::{optimal_separator, pairwise_nig};
use crate::rbpart::{partition, Metric, RbConfig, RbNodeKind, RbNodeStats};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_FORMAT: i32 = 2;
pub const EXIT_CONFIG: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "nigpart", version, about = "Hypergraph partitioning via vertex separators on the net intersection graph")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Partition a hypergraph or sparse matrix into k parts.
    Partition(PartitionArgs),
    /// Score an existing partition file.
    Evaluate(EvaluateArgs),
    /// Run the randomized oracle suites.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    /// Matrix Market coordinate file.
    Mm,
    /// Text hypergraph file.
    Hg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Model {
    /// Rows are vertices, columns are nets.
    Colnet,
    /// Columns are vertices, rows are nets.
    Rownet,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StatsFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Nig,
    Gpvs,
    Hp,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub format: InputFormat,
    /// Matrix model (Matrix Market input only).
    #[arg(long, value_enum, default_value = "colnet")]
    pub model: Model,
    /// Unit vertex weights instead of nonzero counts (Matrix Market input only).
    #[arg(long)]
    pub unit_weights: bool,
}

#[derive(Debug, Args)]
pub struct PartitionArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(short = 'k')]
    pub k: usize,
    #[arg(long, value_enum, default_value = "conn")]
    pub metric: Metric,
    #[arg(long, value_enum, default_value = "shared")]
    pub scheme: WeightScheme,
    /// Allowed imbalance per bisection step.
    #[arg(long, default_value_t = 0.10)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub no_postprocess: bool,
    /// Let balance post-processing raise each cutsize by up to this
    /// fraction of its value.
    #[arg(long)]
    pub allow_cut_degrade: Option<f64>,
    /// Partition file; defaults to `<input>.part.<k>`.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    pub stats: StatsFormat,
    /// Write stats here instead of standard output.
    #[arg(long)]
    pub stats_out: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    /// Fixed-point scale of the shared weighting scheme.
    #[arg(long, default_value_t = DEFAULT_SCALE)]
    pub scale: i64,
    /// Exclude hypergraph vertices with more nets than this from clique
    /// generation (approximation).
    #[arg(long)]
    pub drop_degree: Option<usize>,
    /// Abort when sum(deg(v)^2) exceeds this.
    #[arg(long, default_value_t = DEFAULT_EDGE_CAP)]
    pub edge_cap: u64,
    /// Report all phase timings as zero, for reproducible stats output.
    #[arg(long)]
    pub no_timings: bool,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long)]
    pub partition: PathBuf,
    #[arg(short = 'k')]
    pub k: usize,
    #[arg(long, value_enum, default_value = "text")]
    pub stats: StatsFormat,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    /// Upper bound on instance size; 0 runs no instances.
    #[arg(long, default_value_t = 10)]
    pub max_size: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = write!(stderr, "{}", e.render());
            if !e.use_stderr() {
                let _ = write!(stdout, "{}", e.render());
            }
            return code;
        }
    };
    let result = match &cli.command {
        Command::Partition(a) => cmd_partition(a, stdout),
        Command::Evaluate(a) => cmd_evaluate(a, stdout),
        Command::Verify(a) => cmd_verify(a, stdout),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e);
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Format { .. }
        | Error::Io(_)
        | Error::InvalidPin { .. }
        | Error::InvalidWeight(_)
        | Error::IncompletePartition { .. } => EXIT_FORMAT,
        Error::Config(_) | Error::CliqueBlowup { .. } | Error::ModelMismatch(_) => EXIT_CONFIG,
        _ => EXIT_FAILURE,
    }
}

pub fn load_input(input: &InputArgs) -> Result<Hypergraph> {
    match input.format {
        InputFormat::Hg => read_hypergraph_text(&input.input),
        InputFormat::Mm => {
            let m = read_matrix_market(&input.input)?;
            Ok(match input.model {
                Model::Colnet => column_net_model(&m, input.unit_weights),
                Model::Rownet => row_net_model(&m, input.unit_weights),
            })
        }
    }
}

#[derive(Debug, Serialize)]
struct ConfigEcho {
    seed: u64,
    k: usize,
    metric: Metric,
    scheme: WeightScheme,
    epsilon: f64,
    postprocess: bool,
    allow_cut_degrade: f64,
}

#[derive(Debug, Serialize)]
struct InputStats {
    vertices: usize,
    nets: usize,
    pins: usize,
}

#[derive(Debug, Serialize)]
struct NigStats {
    vertices: usize,
    edges: usize,
}

#[derive(Debug, Default, Serialize)]
struct TimingStats {
    ingest: f64,
    nig_build: f64,
    rb: f64,
    assign: f64,
    postprocess: f64,
    total: f64,
}

#[derive(Debug, Serialize)]
struct RbSummary {
    total_separator_cost: i64,
    unbalanced_steps: usize,
    stranded_vertices: usize,
    postprocess_moves: usize,
    nodes: Vec<RbNodeStats>,
}

#[derive(Debug, Serialize)]
struct ResultStats {
    cutnet_cost: i64,
    connectivity_minus1_cost: i64,
    cut_nets: usize,
    part_weights: Vec<i64>,
    internal_nets_per_part: Vec<usize>,
    max_imbalance_vertex: f64,
    max_imbalance_internal_nets: f64,
}

impl From<&CutReport> for ResultStats {
    fn from(r: &CutReport) -> Self {
        ResultStats {
            cutnet_cost: r.cutnet_cost,
            connectivity_minus1_cost: r.connectivity_minus1_cost,
            cut_nets: r.num_cut_nets(),
            part_weights: r.part_weights.clone(),
            internal_nets_per_part: r.internal_nets_per_part.clone(),
            max_imbalance_vertex: r.max_imbalance_vertex,
            max_imbalance_internal_nets: r.max_imbalance_internal_nets,
        }
    }
}

/// Statistics of one `partition` run; the json form has the same keys on
/// every run.
#[derive(Debug, Serialize)]
pub struct RunStats {
    config: ConfigEcho,
    input: InputStats,
    nig: NigStats,
    timings_ms: TimingStats,
    rb: RbSummary,
    result: ResultStats,
}

impl RunStats {
    fn to_text(&self) -> String {
        let c = &self.config;
        let t = &self.timings_ms;
        let r = &self.result;
        let mut s = String::new();
        s += &format!(
            "config: k={} metric={:?} scheme={:?} epsilon={} seed={} postprocess={}\n",
            c.k, c.metric, c.scheme, c.epsilon, c.seed, c.postprocess
        );
        s += &format!(
            "input: {} vertices, {} nets, {} pins\n",
            self.input.vertices, self.input.nets, self.input.pins
        );
        s += &format!("nig: {} vertices, {} edges\n", self.nig.vertices, self.nig.edges);
        s += &format!(
            "time (ms): ingest {:.1}, nig {:.1}, rb {:.1}, assign {:.1}, postprocess {:.1}, total {:.1}\n",
            t.ingest, t.nig_build, t.rb, t.assign, t.postprocess, t.total
        );
        s += &format!(
            "rb: separator cost {}, {} unbalanced steps, {} stranded vertices, {} post-process moves\n",
            self.rb.total_separator_cost,
            self.rb.unbalanced_steps,
            self.rb.stranded_vertices,
            self.rb.postprocess_moves
        );
        s += &format!("cutnet: {}\n", r.cutnet_cost);
        s += &format!("connectivity-1: {}\n", r.connectivity_minus1_cost);
        s += &format!("cut nets: {}\n", r.cut_nets);
        s += &format!("vertex imbalance: {:.4}\n", r.max_imbalance_vertex);
        s += &format!("internal-net imbalance: {:.4}\n", r.max_imbalance_internal_nets);
        s += &format!("part weights: {:?}\n", r.part_weights);
        s
    }
}

fn default_out(input: &Path, k: usize) -> PathBuf {
    let mut name = input.file_name().map(OsString::from).unwrap_or_default();
    name.push(format!(".part.{}", k));
    input.with_file_name(name)
}

/// Writes through a temporary file in the target directory and renames it
/// into place, so failures leave no partial file.
fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

pub fn format_partition(pv: &PartitionVector) -> String {
    let mut s = String::with_capacity(pv.parts().len() * 3);
    for &p in pv.parts() {
        s += &p.to_string();
        s.push('\n');
    }
    s
}

pub fn cmd_partition(a: &PartitionArgs, stdout: &mut dyn Write) -> Result<i32> {
    if a.threads == 0 {
        return Err(Error::Config("--threads must be at least 1".into()));
    }
    let cfg = RbConfig {
        k: a.k,
        metric: a.metric,
        epsilon: a.epsilon,
        scheme: a.scheme,
        scale: a.scale,
        postprocess: !a.no_postprocess,
        allow_cut_degrade: a.allow_cut_degrade,
        rng_seed: a.seed,
        gpvs: GpvsConfig::default(),
        nig: NigOptions {
            edge_cap: a.edge_cap,
            max_clique_degree: a.drop_degree,
        },
    };
    cfg.validate()?;

    let start = Instant::now();
    let h = load_input(&a.input)?;
    let ingest_ms = start.elapsed().as_secs_f64() * 1e3;
    log::info!(
        "loaded {} vertices, {} nets, {} pins",
        h.num_vertices(),
        h.num_nets(),
        h.num_pins()
    );

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(a.threads)
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;
    let result = pool.install(|| partition(&h, &cfg))?;
    let mut pv = result.partition;
    pv.canonicalize();
    let report = evaluate(&h, &pv)?;

    let tm = &result.stats.timings;
    let timings = if a.no_timings {
        TimingStats::default()
    } else {
        TimingStats {
            ingest: ingest_ms,
            nig_build: tm.nig_build_ms,
            rb: tm.rb_ms,
            assign: tm.assign_ms,
            postprocess: tm.postprocess_ms,
            total: start.elapsed().as_secs_f64() * 1e3,
        }
    };
    let stats = RunStats {
        config: ConfigEcho {
            seed: a.seed,
            k: a.k,
            metric: a.metric,
            scheme: a.scheme,
            epsilon: a.epsilon,
            postprocess: !a.no_postprocess,
            allow_cut_degrade: a.allow_cut_degrade.unwrap_or(0.0),
        },
        input: InputStats {
            vertices: h.num_vertices(),
            nets: h.num_nets(),
            pins: h.num_pins(),
        },
        nig: NigStats {
            vertices: result.stats.nig_vertices,
            edges: result.stats.nig_edges,
        },
        timings_ms: timings,
        rb: RbSummary {
            total_separator_cost: result.stats.total_separator_cost,
            unbalanced_steps: result.stats.unbalanced_steps,
            stranded_vertices: result.stats.stranded_vertices,
            postprocess_moves: result.stats.postprocess_moves,
            nodes: result.stats.nodes.clone(),
        },
        result: ResultStats::from(&report),
    };

    let out = a.out.clone().unwrap_or_else(|| default_out(&a.input.input, a.k));
    write_atomic(&out, format_partition(&pv).as_bytes())?;

    let text = match a.stats {
        StatsFormat::Text => stats.to_text(),
        StatsFormat::Json => serde_json::to_string_pretty(&stats).expect("stats serialize") + "\n",
    };
    match &a.stats_out {
        Some(p) => write_atomic(p, text.as_bytes())?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(EXIT_OK)
}

pub fn read_partition_file(path: &Path, h: &Hypergraph, k: usize) -> Result<PartitionVector> {
    let reader = BufReader::new(File::open(path)?);
    let mut parts = Vec::with_capacity(h.num_vertices());
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        let p: usize = t
            .parse()
            .map_err(|e| Error::format(i + 1, format!("bad part id '{}': {}", t, e)))?;
        if p >= k {
            return Err(Error::format(i + 1, format!("part {} out of range for k = {}", p, k)));
        }
        parts.push(p);
    }
    if parts.len() != h.num_vertices() {
        return Err(Error::format(
            0,
            format!(
                "partition file has {} entries, hypergraph has {} vertices",
                parts.len(),
                h.num_vertices()
            ),
        ));
    }
    PartitionVector::from_parts(h, k, parts)
}

pub fn report_text(r: &CutReport) -> String {
    format!(
        "cutnet: {}\nconnectivity-1: {}\ncut nets: {}\nvertex imbalance: {:.4}\ninternal-net imbalance: {:.4}\npart weights: {:?}\n",
        r.cutnet_cost,
        r.connectivity_minus1_cost,
        r.num_cut_nets(),
        r.max_imbalance_vertex,
        r.max_imbalance_internal_nets,
        r.part_weights
    )
}

pub fn report_json(r: &CutReport) -> String {
    serde_json::to_string_pretty(r).expect("report serializes") + "\n"
}

pub fn cmd_evaluate(a: &EvaluateArgs, stdout: &mut dyn Write) -> Result<i32> {
    if a.k == 0 {
        return Err(Error::Config("k must be at least 1".into()));
    }
    let h = load_input(&a.input)?;
    let pv = read_partition_file(&a.partition, &h, a.k)?;
    let report = evaluate(&h, &pv)?;
    let text = match a.stats {
        StatsFormat::Text => report_text(&report),
        StatsFormat::Json => report_json(&report),
    };
    stdout.write_all(text.as_bytes())?;
    Ok(EXIT_OK)
}

#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct SuiteOutcome {
    pub passed: usize,
    pub failed: usize,
}

pub fn cmd_verify(a: &VerifyArgs, stdout: &mut dyn Write) -> Result<i32> {
    let outcome = run_suite(a.suite, a.count, a.max_size, a.seed)?;
    writeln!(
        stdout,
        "suite {}: {}/{} passed",
        a.suite.to_possible_value().expect("suite has a name").get_name(),
        outcome.passed,
        outcome.passed + outcome.failed
    )?;
    Ok(if outcome.failed == 0 { EXIT_OK } else { EXIT_FAILURE })
}

/// Runs `count` random instances of `suite` no larger than `max_size`.
pub fn run_suite(suite: Suite, count: usize, max_size: usize, seed: u64) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::default();
    if max_size == 0 {
        return Ok(out);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..count {
        let ok = match suite {
            Suite::Nig => {
                let nv = rng.gen_range(1..=max_size);
                let nn = rng.gen_range(1..=max_size.min(64));
                let h = gen::random_hypergraph(&mut rng, nv, nn, 4, false);
                build_nig(&h)?.edge_set() == pairwise_nig(&h)?
            }
            Suite::Gpvs => {
                let n = rng.gen_range(1..=max_size.min(12));
                let g = gen::random_connected_graph(&mut rng, n, 0.25, 3);
                let cfg = GpvsConfig {
                    epsilon: 0.2,
                    rng_seed: rng.gen(),
                    ..Default::default()
                };
                let sep = find_separator(&g, &cfg);
                let valid = sep.check(&g).is_ok();
                let balanced = Balance::for_config(&g, &cfg).separator_is_balanced(&sep);
                let opt = optimal_separator(&g, cfg.epsilon)?.best_sep_weight;
                valid && (!balanced || sep.weight_s() >= opt)
            }
            Suite::Hp => {
                let nv = rng.gen_range(1..=max_size.min(16));
                let nn = rng.gen_range(1..=max_size);
                let h = gen::random_hypergraph(&mut rng, nv, nn, 4, true);
                let seed = rng.gen();
                let mut ok = true;
                for metric in [Metric::Cutnet, Metric::Connectivity] {
                    let cfg = RbConfig {
                        k: 2,
                        metric,
                        rng_seed: seed,
                        ..Default::default()
                    };
                    let r = partition(&h, &cfg)?;
                    ok &= r.partition.is_complete();
                    let sep_cost = r.stats.total_separator_cost;
                    ok &= match metric {
                        Metric::Cutnet => {
                            let removed: Vec<usize> = r
                                .tree
                                .iter()
                                .filter(|n| matches!(n.kind, RbNodeKind::Split { .. }))
                                .flat_map(|n| n.separator.iter().copied())
                                .collect();
                            (0..h.num_nets())
                                .filter(|&n| r.report.lambda_of[n] > 1)
                                .all(|n| removed.contains(&n))
                                && r.report.cutnet_cost <= sep_cost
                        }
                        Metric::Connectivity => r.report.connectivity_minus1_cost <= sep_cost,
                    };
                }
                ok
            }
        };
        if ok {
            out.passed += 1;
        } else {
            out.failed += 1;
        }
    }
    Ok(out)
}
