//! Command-line front end: `gen`, `discord`, `campaign` and `analyze`.
//!
//! Each subcommand is also callable as a plain function so the pipelines can
//! be driven from tests and examples without going through argument parsing.

use std::f64::consts::FRAC_PI_2;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::entropic::{entropic_discord, entropic_discord_with, DiscordOptions, DiscordResult, OptMode};
use crate::error::{Error, Result};
use crate::geometric::geometric_discord;
use crate::states::{
    classify_structure, derive_seed, named_state, project_to_x, read_density_matrix, sample_hs_random,
    write_density_matrix, DensityMatrix, StateSpec, Structure, DEFAULT_STRUCTURE_TOL,
};

pub const DEFAULT_ANGLE_TOL: f64 = 1e-2;
pub const DEFAULT_VALUE_TOL: f64 = 1e-6;

#[derive(Debug, Parser)]
#[command(name = "xdiscord", version, about = "Entropic and geometric discord of qubit-qudit states")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Master seed for sampling.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; 0 uses all cores.
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    /// Angle tolerance (radians) for the pole/equator classification.
    #[arg(long, global = true, default_value_t = DEFAULT_ANGLE_TOL)]
    pub tol_angle: f64,
    /// Tolerance on candidate_gap (bits) for the pole/equator classification.
    #[arg(long, global = true, default_value_t = DEFAULT_VALUE_TOL)]
    pub tol_value: f64,
    /// JSON output path (report or summary); stdout when omitted.
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,
    /// CSV output path (campaign rows or exported points); stdout when omitted.
    #[arg(long, global = true)]
    pub csv: Option<PathBuf>,
}

impl Default for GlobalOpts {
    fn default() -> Self {
        Self {
            seed: 0,
            threads: 0,
            tol_angle: DEFAULT_ANGLE_TOL,
            tol_value: DEFAULT_VALUE_TOL,
            json: None,
            csv: None,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write Hilbert-Schmidt random density matrices as JSON files.
    Gen(GenArgs),
    /// Compute the discord of one state.
    Discord(DiscordArgs),
    /// Optimal-measurement statistics over random X states.
    Campaign(CampaignArgs),
    /// Export Bloch-sphere points and gap statistics from a campaign CSV.
    Analyze(AnalyzeArgs),
}

#[derive(Debug, Clone, Args)]
pub struct GenArgs {
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    /// Number of qubits (dimension 2^n).
    #[arg(long, conflicts_with = "d", required_unless_present = "d")]
    pub qubits: Option<u32>,
    /// Qudit dimension d of a 2 x d state.
    #[arg(long)]
    pub d: Option<usize>,
    /// Keep only the X part of each sample.
    #[arg(long)]
    pub x_project: bool,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Entropic,
    Geometric,
    Both,
}

#[derive(Debug, Clone, Args)]
pub struct DiscordArgs {
    /// Density-matrix JSON file.
    #[arg(long, conflicts_with = "state", required_unless_present = "state")]
    pub input: Option<PathBuf>,
    /// Named state: bell1..bell4, werner:<z>, ghz:<n>, w:<n>, mixed:<dim>.
    #[arg(long)]
    pub state: Option<String>,
    #[arg(long, value_enum, default_value_t = Method::Both)]
    pub method: Method,
    /// candidate, theta_only or full.
    #[arg(long, default_value = "full")]
    pub opt: OptMode,
    /// Upgrade candidate to theta_only when phi provably drops out.
    #[arg(long)]
    pub escalate: bool,
}

#[derive(Debug, Clone, Args)]
pub struct CampaignArgs {
    #[arg(long, default_value_t = 10_000)]
    pub n: usize,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(2..=3))]
    pub qubits: u32,
}

#[derive(Debug, Clone, Args)]
pub struct AnalyzeArgs {
    /// Campaign CSV.
    #[arg(long)]
    pub input: PathBuf,
}

fn with_threads<T: Send>(threads: usize, job: impl FnOnce() -> T + Send) -> Result<T> {
    if threads == 0 {
        return Ok(job());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidState(format!("thread pool: {e}")))?;
    Ok(pool.install(job))
}

fn write_or_stdout(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

/// `{:.16e}`: 17 significant digits, enough to round-trip an f64.
fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

// ---------------------------------------------------------------- gen

/// Dimension of a generated state from `--qubits` or `--d`.
fn gen_dimension(args: &GenArgs) -> Result<usize> {
    match (args.qubits, args.d) {
        (Some(n), None) if (2..=12).contains(&n) => Ok(1 << n),
        (None, Some(d)) if d >= 2 => Ok(2 * d),
        _ => Err(Error::BadSpec("need --qubits in 2..=12 or --d >= 2".into())),
    }
}

/// Writes `count` states to `out_dir/state_NNNNN.json`; sample `i` uses
/// `derive_seed(seed, i)`. Returns the written paths.
pub fn cmd_gen(args: &GenArgs, seed: u64) -> Result<Vec<PathBuf>> {
    if args.count == 0 {
        return Err(Error::BadSpec("count must be at least 1".into()));
    }
    let dim = gen_dimension(args)?;
    fs::create_dir_all(&args.out_dir)?;
    let mut paths = Vec::with_capacity(args.count);
    for i in 0..args.count {
        let mut rho = sample_hs_random(dim, derive_seed(seed, i as u64));
        if args.x_project {
            rho = project_to_x(&rho);
        }
        let path = args.out_dir.join(format!("state_{i:05}.json"));
        write_density_matrix(&rho, &path)?;
        paths.push(path);
    }
    Ok(paths)
}

// ---------------------------------------------------------------- discord

#[derive(Debug, Clone, Serialize)]
pub struct EntropicReport {
    #[serde(flatten)]
    pub result: DiscordResult,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct GeometricReport {
    pub discord: f64,
    pub k_max: f64,
    pub direction: [f64; 3],
    pub psd_flag: bool,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct DiscordReport {
    pub source: String,
    pub dim_a: usize,
    pub dim_b: usize,
    pub structure: Structure,
    pub entropic: Option<EntropicReport>,
    pub geometric: Option<GeometricReport>,
}

pub fn load_state(args: &DiscordArgs) -> Result<(String, DensityMatrix)> {
    match (&args.input, &args.state) {
        (Some(path), _) => Ok((path.display().to_string(), read_density_matrix(path)?)),
        (None, Some(spec)) => Ok((spec.clone(), named_state(&spec.parse::<StateSpec>()?)?)),
        (None, None) => Err(Error::BadSpec("need --input or --state".into())),
    }
}

pub fn discord_report(source: String, rho: &DensityMatrix, method: Method, options: DiscordOptions) -> Result<DiscordReport> {
    rho.require_qubit_qudit()?;
    let entropic = if method != Method::Geometric {
        let start = Instant::now();
        let result = entropic_discord_with(rho, options)?;
        Some(EntropicReport {
            result,
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        })
    } else {
        None
    };
    let geometric = if method != Method::Entropic {
        let start = Instant::now();
        let g = geometric_discord(rho)?;
        Some(GeometricReport {
            discord: g.value,
            k_max: g.k_max,
            direction: g.direction(),
            psd_flag: g.classical.psd_flag,
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        })
    } else {
        None
    };
    Ok(DiscordReport {
        source,
        dim_a: rho.dim_a(),
        dim_b: rho.dim_b(),
        structure: classify_structure(rho, DEFAULT_STRUCTURE_TOL).tag,
        entropic,
        geometric,
    })
}

pub fn cmd_discord(args: &DiscordArgs) -> Result<DiscordReport> {
    let (source, rho) = load_state(args)?;
    let options = DiscordOptions {
        mode: args.opt,
        escalate: args.escalate,
    };
    discord_report(source, &rho, args.method, options)
}

// ---------------------------------------------------------------- campaign

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CampaignRecord {
    pub index: u64,
    pub seed: u64,
    pub theta_opt: f64,
    pub phi_opt: f64,
    pub discord_full: f64,
    pub discord_candidate: f64,
    pub discord_geometric: f64,
    pub candidate_gap: f64,
    pub at_pole_or_equator: bool,
}

pub const CAMPAIGN_COLUMNS: [&str; 9] = [
    "index",
    "seed",
    "theta_opt",
    "phi_opt",
    "discord_full",
    "discord_candidate",
    "discord_geometric",
    "candidate_gap",
    "at_pole_or_equator",
];

/// Pole/equator classification thresholds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    pub angle_tol: f64,
    pub value_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            angle_tol: DEFAULT_ANGLE_TOL,
            value_tol: DEFAULT_VALUE_TOL,
        }
    }
}

fn angle_at_pole_or_equator(theta: f64, tol: &Tolerances) -> bool {
    theta.min((theta - FRAC_PI_2).abs()) <= tol.angle_tol
}

/// One campaign sample: an `n`-qubit Hilbert-Schmidt random X state seeded
/// with `derive_seed(master_seed, index)`.
pub fn campaign_record(index: u64, master_seed: u64, qubits: u32, tol: &Tolerances) -> Result<CampaignRecord> {
    let seed = derive_seed(master_seed, index);
    let rho = project_to_x(&sample_hs_random(1 << qubits, seed));
    let full = entropic_discord(&rho, OptMode::Full)?;
    let candidate = entropic_discord(&rho, OptMode::Candidate)?;
    let geometric = geometric_discord(&rho)?.value;
    let gap = full.candidate_gap.unwrap_or(0.0);
    let theta = full.optimal_angles.theta;
    Ok(CampaignRecord {
        index,
        seed,
        theta_opt: theta,
        phi_opt: full.optimal_angles.phi,
        discord_full: full.discord,
        discord_candidate: candidate.discord,
        discord_geometric: geometric,
        candidate_gap: gap,
        at_pole_or_equator: angle_at_pole_or_equator(theta, tol) || gap <= tol.value_tol,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignSummary {
    pub n: usize,
    pub qubits: u32,
    pub fraction_at_pole_or_equator: f64,
    pub angle_tol: f64,
    pub value_tol: f64,
    pub mean_candidate_gap: f64,
    pub max_candidate_gap: f64,
    /// Fraction with `theta_opt` within `angle_tol` of the pole or equator.
    pub fraction_angle_criterion: f64,
    /// Fraction with `candidate_gap <= value_tol`.
    pub fraction_value_criterion: f64,
    pub seed: u64,
}

pub fn summarize(records: &[CampaignRecord], qubits: u32, seed: u64, tol: &Tolerances) -> CampaignSummary {
    let n = records.len();
    let frac = |pred: &dyn Fn(&CampaignRecord) -> bool| {
        records.iter().filter(|r| pred(r)).count() as f64 / n.max(1) as f64
    };
    CampaignSummary {
        n,
        qubits,
        fraction_at_pole_or_equator: frac(&|r| r.at_pole_or_equator),
        angle_tol: tol.angle_tol,
        value_tol: tol.value_tol,
        mean_candidate_gap: records.iter().map(|r| r.candidate_gap).sum::<f64>() / n.max(1) as f64,
        max_candidate_gap: records.iter().map(|r| r.candidate_gap).fold(0.0, f64::max),
        fraction_angle_criterion: frac(&|r| angle_at_pole_or_equator(r.theta_opt, tol)),
        fraction_value_criterion: frac(&|r| r.candidate_gap <= tol.value_tol),
        seed,
    }
}

/// Runs `n` samples in parallel on the current rayon pool; row order follows the index.
pub fn run_campaign(n: usize, qubits: u32, seed: u64, tol: &Tolerances) -> Result<Vec<CampaignRecord>> {
    if n == 0 {
        return Err(Error::BadSpec("campaign needs n >= 1".into()));
    }
    if !(2..=3).contains(&qubits) {
        return Err(Error::BadSpec(format!("campaign supports 2 or 3 qubits, got {qubits}")));
    }
    (0..n as u64)
        .into_par_iter()
        .map(|i| campaign_record(i, seed, qubits, tol))
        .collect()
}

pub fn campaign_csv(records: &[CampaignRecord]) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(CAMPAIGN_COLUMNS)?;
    for r in records {
        writer.write_record([
            r.index.to_string(),
            r.seed.to_string(),
            fmt_float(r.theta_opt),
            fmt_float(r.phi_opt),
            fmt_float(r.discord_full),
            fmt_float(r.discord_candidate),
            fmt_float(r.discord_geometric),
            fmt_float(r.candidate_gap),
            r.at_pole_or_equator.to_string(),
        ])?;
    }
    let bytes = writer.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is ascii"))
}

pub fn cmd_campaign(args: &CampaignArgs, global: &GlobalOpts) -> Result<(Vec<CampaignRecord>, CampaignSummary)> {
    let tol = Tolerances {
        angle_tol: global.tol_angle,
        value_tol: global.tol_value,
    };
    let records = with_threads(global.threads, || run_campaign(args.n, args.qubits, global.seed, &tol))??;
    let summary = summarize(&records, args.qubits, global.seed, &tol);
    Ok((records, summary))
}

// ---------------------------------------------------------------- analyze

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BlochPoint {
    pub index: u64,
    pub theta: f64,
    pub phi: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HistogramBin {
    /// Inclusive lower edge; the first bin starts at 0.
    pub lower: f64,
    /// Exclusive upper edge; `None` for the open last bin.
    pub upper: Option<f64>,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisSummary {
    pub n: usize,
    pub fraction_at_pole_or_equator: f64,
    pub mean_candidate_gap: f64,
    pub max_candidate_gap: f64,
    pub candidate_gap_histogram: Vec<HistogramBin>,
}

/// Decade edges of the candidate_gap histogram.
pub const GAP_EDGES: [f64; 6] = [1e-12, 1e-10, 1e-8, 1e-6, 1e-4, 1e-2];

pub fn read_campaign_csv(path: &Path) -> Result<Vec<CampaignRecord>> {
    let mut reader = csv::Reader::from_path(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let headers = reader.headers()?.clone();
    if headers.iter().ne(CAMPAIGN_COLUMNS) {
        return Err(Error::Parse(format!("unexpected campaign header: {headers:?}")));
    }
    let records = reader.deserialize().collect::<std::result::Result<Vec<CampaignRecord>, _>>()?;
    if records.is_empty() {
        return Err(Error::Parse(format!("{}: no campaign rows", path.display())));
    }
    Ok(records)
}

pub fn bloch_points(records: &[CampaignRecord]) -> Vec<BlochPoint> {
    records
        .iter()
        .map(|r| BlochPoint {
            index: r.index,
            theta: r.theta_opt,
            phi: r.phi_opt,
            x: r.theta_opt.sin() * r.phi_opt.cos(),
            y: r.theta_opt.sin() * r.phi_opt.sin(),
            z: r.theta_opt.cos(),
        })
        .collect()
}

pub fn gap_histogram(gaps: impl Iterator<Item = f64>) -> Vec<HistogramBin> {
    let mut bins: Vec<HistogramBin> = std::iter::once(0.0)
        .chain(GAP_EDGES)
        .zip(GAP_EDGES.iter().map(|&e| Some(e)).chain([None]))
        .map(|(lower, upper)| HistogramBin { lower, upper, count: 0 })
        .collect();
    for g in gaps {
        let k = GAP_EDGES.iter().position(|&e| g < e).unwrap_or(GAP_EDGES.len());
        bins[k].count += 1;
    }
    bins
}

pub fn analyze(records: &[CampaignRecord]) -> AnalysisSummary {
    let n = records.len();
    AnalysisSummary {
        n,
        fraction_at_pole_or_equator: records.iter().filter(|r| r.at_pole_or_equator).count() as f64 / n as f64,
        mean_candidate_gap: records.iter().map(|r| r.candidate_gap).sum::<f64>() / n as f64,
        max_candidate_gap: records.iter().map(|r| r.candidate_gap).fold(0.0, f64::max),
        candidate_gap_histogram: gap_histogram(records.iter().map(|r| r.candidate_gap)),
    }
}

pub fn points_csv(points: &[BlochPoint]) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(["index", "theta", "phi", "x", "y", "z"])?;
    for p in points {
        writer.write_record([
            p.index.to_string(),
            fmt_float(p.theta),
            fmt_float(p.phi),
            fmt_float(p.x),
            fmt_float(p.y),
            fmt_float(p.z),
        ])?;
    }
    let bytes = writer.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is ascii"))
}

pub fn cmd_analyze(args: &AnalyzeArgs) -> Result<(Vec<BlochPoint>, AnalysisSummary)> {
    let records = read_campaign_csv(&args.input)?;
    Ok((bloch_points(&records), analyze(&records)))
}

// ---------------------------------------------------------------- dispatch

fn to_json(value: &impl Serialize) -> String {
    serde_json::to_string_pretty(value).expect("plain data serializes") + "\n"
}

pub fn run(cli: Cli) -> Result<()> {
    let global = &cli.global;
    match &cli.command {
        Command::Gen(args) => {
            let paths = with_threads(global.threads, || cmd_gen(args, global.seed))??;
            eprintln!("wrote {} states to {}", paths.len(), args.out_dir.display());
        }
        Command::Discord(args) => {
            let report = with_threads(global.threads, || cmd_discord(args))??;
            write_or_stdout(global.json.as_deref(), &to_json(&report))?;
        }
        Command::Campaign(args) => {
            let (records, summary) = cmd_campaign(args, global)?;
            write_or_stdout(global.csv.as_deref(), &campaign_csv(&records)?)?;
            match &global.json {
                Some(path) => write_or_stdout(Some(path), &to_json(&summary))?,
                None => eprint!("{}", to_json(&summary)),
            }
        }
        Command::Analyze(args) => {
            let (points, summary) = cmd_analyze(args)?;
            write_or_stdout(global.csv.as_deref(), &points_csv(&points)?)?;
            match &global.json {
                Some(path) => write_or_stdout(Some(path), &to_json(&summary))?,
                None => eprint!("{}", to_json(&summary)),
            }
        }
    }
    Ok(())
}

pub fn main_with_args<I, T>(args: I) -> Result<()>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| Error::Parse(e.to_string()))?;
    run(cli)
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn parses_global_flags_after_subcommand() {
        let cli = Cli::try_parse_from(["xdiscord", "campaign", "--n", "5", "--qubits", "3", "--seed", "9", "--threads", "2"]).unwrap();
        assert_eq!(cli.global.seed, 9);
        assert_eq!(cli.global.threads, 2);
        assert!(matches!(cli.command, Command::Campaign(CampaignArgs { n: 5, qubits: 3 })));
        assert!(Cli::try_parse_from(["xdiscord", "campaign", "--qubits", "4"]).is_err());
    }

    #[test]
    fn histogram_bins_cover_everything() {
        let bins = gap_histogram([0.0, 5e-13, 1e-9, 1e-6, 0.5].into_iter());
        assert_eq!(bins.len(), GAP_EDGES.len() + 1);
        assert_eq!(bins.iter().map(|b| b.count).sum::<usize>(), 5);
        assert_eq!(bins[0].count, 2);
        assert_eq!(bins[4].count, 1);
        assert_eq!(bins.last().unwrap().count, 1);
    }

    #[test]
    fn classification_uses_either_criterion() {
        let tol = Tolerances::default();
        assert!(angle_at_pole_or_equator(0.005, &tol));
        assert!(angle_at_pole_or_equator(FRAC_PI_2 + 0.009, &tol));
        assert!(!angle_at_pole_or_equator(0.7, &tol));
    }

    #[test]
    fn float_format_round_trips() {
        for v in [0.1, 1.0 / 3.0, 1e-300, -2.5e17, std::f64::consts::PI] {
            assert_eq!(fmt_float(v).parse::<f64>().unwrap(), v);
        }
    }
}
