//! Command-line front end for `adderkit`.
//!
//! Exit status: 0 on success, 1 when verification finds a counterexample,
//! 2 for usage, input and file errors.

mod plot;
mod verilog;

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use adderkit::analysis::{
    self, decomposition_sweep, enumerate_decompositions, partition_sweep, table2_variants,
    AnalysisError, MetricsReport, ModulePolicy, SweepOptions, SweepReport, VerifyMode,
    VerifyOutcome,
};
use adderkit::{
    area_report, build, critical_path, toggle_power_proxy, AdderSpec, Arch, AreaModel, BuildError,
    CarryInMode, ClaStyle, Netlist, PrefixTopology, TimingModel,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

pub use plot::{emit_plot_data, Metric, PlotData, PlotError};
pub use verilog::{export_verilog, ExportError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {detail}")]
    Input { path: PathBuf, detail: String },
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error(transparent)]
    Export(#[from] ExportError),
    #[error(transparent)]
    Plot(#[from] PlotError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Analysis(AnalysisError::VerificationFailed { .. }) => 1,
            _ => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "adderkit",
    version,
    about = "Build, verify and compare gate-level adders"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a netlist and print or save it as JSON
    Build {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a netlist against integer addition
    Verify {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, value_enum, default_value_t = ModeArg::Random)]
        mode: ModeArg,
        #[arg(long, default_value_t = 100_000)]
        vectors: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report delay, critical path, area and switching activity
    Analyze {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        models: ModelArgs,
        #[arg(long, default_value_t = 100_000)]
        vectors: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep hybrid partitions or lookahead module decompositions
    Sweep(SweepArgs),
    /// Compare a set of adders of one width
    Compare {
        /// JSON file with an array of adder specs; defaults to the standard roster
        #[arg(long)]
        specs: Option<PathBuf>,
        #[arg(long, default_value_t = 32)]
        width: usize,
        #[command(flatten)]
        models: ModelArgs,
        #[arg(long, default_value_t = 100_000)]
        vectors: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Report JSON destination
        #[arg(long)]
        out: Option<PathBuf>,
        /// Report CSV destination
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Write a structural Verilog module
    Export {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Turn a compare report into a label/value series
    Plot {
        #[arg(long)]
        report: PathBuf,
        #[arg(long, default_value = "pdp")]
        metric: String,
        #[arg(long)]
        normalize: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Random,
    Directed,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CarryArg {
    None,
    Variable,
    Constant0,
    Constant1,
}

impl From<CarryArg> for CarryInMode {
    fn from(c: CarryArg) -> Self {
        match c {
            CarryArg::None => CarryInMode::None,
            CarryArg::Variable => CarryInMode::Variable,
            CarryArg::Constant0 => CarryInMode::Constant0,
            CarryArg::Constant1 => CarryInMode::Constant1,
        }
    }
}

#[derive(Debug, Args)]
struct SpecArgs {
    #[arg(long)]
    arch: Option<Arch>,
    #[arg(long)]
    width: Option<usize>,
    /// Lookahead width of a hybrid adder
    #[arg(long)]
    k: Option<usize>,
    /// Lookahead module sizes, least significant first
    #[arg(long, value_delimiter = ',')]
    modules: Option<Vec<usize>>,
    #[arg(long)]
    style: Option<ClaStyle>,
    #[arg(long)]
    topology: Option<PrefixTopology>,
    /// Carry-select block sizes, least significant first
    #[arg(long, value_delimiter = ',')]
    blocks: Option<Vec<usize>>,
    /// Carry-skip block size
    #[arg(long)]
    block_size: Option<usize>,
    #[arg(long, value_enum)]
    carry_in: Option<CarryArg>,
    /// JSON adder spec file, instead of the flags above
    #[arg(long)]
    spec: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SourceArgs {
    /// Netlist JSON file, instead of spec flags
    #[arg(long)]
    netlist: Option<PathBuf>,
    #[command(flatten)]
    spec: SpecArgs,
}

#[derive(Debug, Args)]
struct ModelArgs {
    #[arg(long, default_value = "unit")]
    timing: String,
    #[arg(long, default_value = "tcount")]
    area: String,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long, default_value_t = 32)]
    width: usize,
    /// Select-part widths X to try; each hybrid gets K = width - X
    #[arg(long, value_delimiter = ',', conflicts_with = "k")]
    csla_sizes: Option<Vec<usize>>,
    /// Uniform lookahead module size
    #[arg(long, conflicts_with = "greedy_sizes")]
    module_size: Option<usize>,
    /// Allowed module sizes, largest placed first
    #[arg(long, value_delimiter = ',')]
    greedy_sizes: Option<Vec<usize>>,
    /// Fixed lookahead width for a decomposition sweep
    #[arg(long)]
    k: Option<usize>,
    /// Module sizes to enumerate decompositions of K from
    #[arg(long, value_delimiter = ',', requires = "k", conflicts_with = "named")]
    allowed_sizes: Option<Vec<usize>>,
    /// Upper bound on enumerated decompositions
    #[arg(long, requires = "allowed_sizes")]
    max: Option<usize>,
    /// The eight named 32-bit variants with a 24-bit lookahead part
    #[arg(long, requires = "k")]
    named: bool,
    #[arg(long, default_value = "optimized")]
    style: ClaStyle,
    #[command(flatten)]
    models: ModelArgs,
    #[arg(long, default_value_t = 100_000)]
    vectors: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Parses `args` (program name first) and runs the command, writing human
/// output to `stdout` and diagnostics to `stderr`. Returns the exit status.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

/// [`run_with`] on the process's standard streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &mut io::stdout().lock(), &mut io::stderr().lock())
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Build { spec, out: path } => {
            let spec = spec.resolve()?;
            let netlist = build_spec(&spec)?;
            match path {
                Some(path) => {
                    write_atomic(&path, netlist.to_json().as_bytes())?;
                    say(
                        out,
                        format!(
                            "{}: {} gates, {} nets -> {}",
                            netlist.name,
                            netlist.gate_count(),
                            netlist.net_count(),
                            path.display()
                        ),
                    )?;
                }
                None => say(out, netlist.to_json())?,
            }
            Ok(0)
        }
        Command::Verify {
            source,
            mode,
            vectors,
            seed,
            out: path,
        } => {
            let netlist = source.load()?;
            let modes = match mode {
                ModeArg::Exhaustive => vec![VerifyMode::Exhaustive],
                ModeArg::Random => vec![
                    VerifyMode::Random {
                        count: vectors,
                        seed,
                    },
                    VerifyMode::Directed,
                ],
                ModeArg::Directed => vec![VerifyMode::Directed],
            };
            let mut outcomes: Vec<VerifyOutcome> = Vec::new();
            for m in modes {
                let outcome = analysis::verify(&netlist, m)?;
                let failed = !outcome.passed();
                outcomes.push(outcome);
                if failed {
                    break;
                }
            }
            if let Some(path) = &path {
                write_atomic(path, json_line(&outcomes).as_bytes())?;
            }
            let mut code = 0;
            for o in &outcomes {
                match o.counterexample() {
                    None => say(
                        out,
                        format!(
                            "{}: {}: pass, {} vectors",
                            netlist.name, o.mode, o.vectors_run
                        ),
                    )?,
                    Some(c) => {
                        say(
                            out,
                            format!(
                                "{}: {}: FAIL after {} vectors",
                                netlist.name, o.mode, o.vectors_run
                            ),
                        )?;
                        say(out, format!("counterexample {c}"))?;
                        code = 1;
                    }
                }
            }
            Ok(code)
        }
        Command::Analyze {
            source,
            models,
            vectors,
            seed,
            out: path,
        } => {
            let (timing, area) = models.resolve()?;
            let netlist = source.load()?;
            let cp = critical_path(&netlist, &timing);
            let ar = area_report(&netlist, &area);
            let stimulus = analysis::random_vectors(
                netlist.width,
                netlist.carry_in_mode.has_input(),
                vectors.max(2),
                seed,
            );
            let activity = toggle_power_proxy(&netlist, &stimulus).map_err(AnalysisError::from)?;
            let doc = serde_json::json!({
                "name": netlist.name,
                "timing": timing.name(),
                "area_model": area.name(),
                "delay": cp.delay,
                "critical_path": cp.path.iter().map(|g| g.0).collect::<Vec<_>>(),
                "endpoint": cp.endpoint.map(|n| n.0),
                "area": ar.total,
                "gates": ar.gate_count(),
                "census": ar.census,
                "power_proxy": activity.power_proxy,
                "vectors": activity.vector_count,
                "seed": seed,
            });
            if let Some(path) = &path {
                write_atomic(path, json_line(&doc).as_bytes())?;
            }
            say(out, &netlist.name)?;
            say(
                out,
                format!("  delay        {} ({} timing)", cp.delay, timing.name()),
            )?;
            say(out, format!("  path length  {} gates", cp.path.len()))?;
            say(
                out,
                format!("  area         {} ({} area)", ar.total, area.name()),
            )?;
            say(out, format!("  gates        {}", ar.gate_count()))?;
            for (kind, count) in &ar.census {
                say(out, format!("    {:<6} {count}", kind.to_string()))?;
            }
            say(
                out,
                format!(
                    "  power proxy  {} over {} vectors (seed {seed})",
                    activity.power_proxy, activity.vector_count
                ),
            )?;
            Ok(0)
        }
        Command::Sweep(args) => {
            let report = args.run()?;
            if let Some(path) = &args.out {
                write_atomic(path, report.to_json().as_bytes())?;
            }
            say(out, sweep_table(&report))?;
            Ok(0)
        }
        Command::Compare {
            specs,
            width,
            models,
            vectors,
            seed,
            out: path,
            csv,
        } => {
            let (timing, area) = models.resolve()?;
            let specs = match specs {
                Some(p) => {
                    let text = read(&p)?;
                    serde_json::from_str::<Vec<AdderSpec>>(&text).map_err(|e| CliError::Input {
                        path: p.clone(),
                        detail: e.to_string(),
                    })?
                }
                None => {
                    if !(1..=adderkit::adders::MAX_WIDTH).contains(&width) {
                        return Err(CliError::Usage(format!(
                            "--width must be between 1 and 64, got {width}"
                        )));
                    }
                    analysis::roster(width)
                }
            };
            let report = analysis::compare(&specs, &timing, &area, vectors, seed)?;
            if let Some(p) = &path {
                write_atomic(p, report.to_json().as_bytes())?;
            }
            if let Some(p) = &csv {
                write_atomic(p, report.to_csv().as_bytes())?;
            }
            say(out, compare_table(&report))?;
            Ok(0)
        }
        Command::Export { source, out: path } => {
            let netlist = source.load()?;
            let text = export_verilog(&netlist)?;
            match path {
                Some(p) => write_atomic(&p, text.as_bytes())?,
                None => write!(out, "{text}").map_err(stdout_err)?,
            }
            Ok(0)
        }
        Command::Plot {
            report,
            metric,
            normalize,
            out: path,
            csv,
        } => {
            let metric: Metric = metric
                .parse()
                .map_err(|e: PlotError| CliError::Usage(format!("--metric: {e}")))?;
            let text = read(&report)?;
            let parsed = MetricsReport::from_json(&text).map_err(|e| CliError::Input {
                path: report.clone(),
                detail: e.to_string(),
            })?;
            let data = emit_plot_data(&parsed, metric, normalize)?;
            if let Some(p) = &path {
                write_atomic(p, data.text.as_bytes())?;
            }
            if let Some(p) = &csv {
                write_atomic(p, data.csv.as_bytes())?;
            }
            write!(out, "{}", data.text).map_err(stdout_err)?;
            Ok(0)
        }
    }
}

impl SpecArgs {
    fn any_flag(&self) -> bool {
        self.arch.is_some()
            || self.width.is_some()
            || self.k.is_some()
            || self.modules.is_some()
            || self.style.is_some()
            || self.topology.is_some()
            || self.blocks.is_some()
            || self.block_size.is_some()
            || self.carry_in.is_some()
    }

    fn resolve(self) -> Result<AdderSpec, CliError> {
        if let Some(path) = &self.spec {
            if self.any_flag() {
                return Err(CliError::Usage(
                    "--spec cannot be combined with spec flags".into(),
                ));
            }
            let text = read(path)?;
            return serde_json::from_str(&text).map_err(|e| CliError::Input {
                path: path.clone(),
                detail: e.to_string(),
            });
        }
        let arch = self
            .arch
            .ok_or_else(|| CliError::Usage("missing --arch (or --spec)".into()))?;
        let width = self
            .width
            .ok_or_else(|| CliError::Usage("missing --width".into()))?;
        Ok(AdderSpec {
            arch,
            width,
            carry_in_mode: self.carry_in.map(Into::into).unwrap_or_default(),
            block_size: self.block_size,
            block_list: self.blocks,
            module_sizes: self.modules,
            style: self.style,
            topology: self.topology,
            k: self.k,
        })
    }
}

impl SourceArgs {
    fn load(self) -> Result<Netlist, CliError> {
        match self.netlist {
            Some(path) => {
                if self.spec.any_flag() || self.spec.spec.is_some() {
                    return Err(CliError::Usage(
                        "--netlist cannot be combined with spec flags".into(),
                    ));
                }
                let text = read(&path)?;
                Netlist::from_json(&text).map_err(|e| CliError::Input {
                    path,
                    detail: e.to_string(),
                })
            }
            None => build_spec(&self.spec.resolve()?),
        }
    }
}

impl ModelArgs {
    fn resolve(&self) -> Result<(TimingModel, AreaModel), CliError> {
        let timing = TimingModel::by_name(&self.timing).ok_or_else(|| {
            CliError::Usage(format!(
                "--timing: unknown model `{}` (expected unit or weighted)",
                self.timing
            ))
        })?;
        let area = AreaModel::by_name(&self.area).ok_or_else(|| {
            CliError::Usage(format!(
                "--area: unknown model `{}` (expected tcount or unit)",
                self.area
            ))
        })?;
        Ok((timing, area))
    }
}

impl SweepArgs {
    fn run(&self) -> Result<SweepReport, CliError> {
        let (timing, area) = self.models.resolve()?;
        let options = SweepOptions {
            area,
            vectors: self.vectors,
            seed: self.seed,
        };
        if let Some(k) = self.k {
            let decompositions = if self.named {
                table2_variants()
            } else if let Some(sizes) = &self.allowed_sizes {
                enumerate_decompositions(k, sizes, self.max)?
            } else {
                return Err(CliError::Usage(
                    "--k needs --named or --allowed-sizes".into(),
                ));
            };
            return Ok(decomposition_sweep(
                self.width,
                k,
                &decompositions,
                self.style,
                &timing,
                &options,
            )?);
        }
        let sizes = self
            .csla_sizes
            .as_ref()
            .ok_or_else(|| CliError::Usage("missing --csla-sizes (or --k)".into()))?;
        let policy = match (&self.module_size, &self.greedy_sizes) {
            (Some(m), _) => ModulePolicy::Uniform(*m),
            (None, Some(g)) => ModulePolicy::Greedy(g.clone()),
            (None, None) => ModulePolicy::Uniform(4),
        };
        Ok(partition_sweep(
            self.width, sizes, &policy, self.style, &timing, &options,
        )?)
    }
}

fn build_spec(spec: &AdderSpec) -> Result<Netlist, CliError> {
    build(spec).map_err(|e| match e {
        BuildError::MissingField { arch, field } => {
            let flag = match field {
                "block_size" => "--block-size",
                "block_list" => "--blocks",
                "module_sizes" => "--modules",
                "topology" => "--topology",
                "k" => "--k",
                other => other,
            };
            CliError::Usage(format!("--arch {arch} requires {flag}"))
        }
        other => CliError::Usage(other.to_string()),
    })
}

fn sweep_table(report: &SweepReport) -> String {
    let width = report
        .rows
        .iter()
        .map(|r| r.name.len())
        .max()
        .unwrap_or(4)
        .max(4);
    let mut s = format!(
        "{:<width$}  {:>3}  {:>3}  {:>12}  {:>6}  {:>8}  {:>5}  {:>6}  {:>6}  {}\n",
        "name", "X", "K", "modules", "delay", "area", "gates", "t_cla", "t_csla", "dominant"
    );
    for (i, r) in report.rows.iter().enumerate() {
        let mark = if i == report.argmin { "  <- best" } else { "" };
        s.push_str(&format!(
            "{:<width$}  {:>3}  {:>3}  {:>12}  {:>6}  {:>8}  {:>5}  {:>6}  {:>6}  {:?}{mark}\n",
            r.name,
            r.csla_width,
            r.cla_width,
            r.label,
            r.delay,
            r.area,
            r.gates,
            r.cla_arrival,
            r.csla_arrival,
            r.dominant
        ));
    }
    let best = report.best();
    s.push_str(&format!(
        "best: {} (X={}, K={})",
        best.name, best.csla_width, best.cla_width
    ));
    s
}

fn compare_table(report: &MetricsReport) -> String {
    let width = report
        .rows
        .iter()
        .map(|r| r.name.len())
        .max()
        .unwrap_or(4)
        .max(4);
    let mut s = format!(
        "{:<width$}  {:>6}  {:>8}  {:>5}  {:>11}  {:>12}  {}\n",
        "name", "delay", "area", "gates", "power_proxy", "pdp", "normalized_pdp"
    );
    for r in &report.rows {
        s.push_str(&format!(
            "{:<width$}  {:>6}  {:>8}  {:>5}  {:>11}  {:>12}  {:.4}\n",
            r.name, r.delay, r.area, r.gates, r.power_proxy, r.pdp, r.normalized_pdp
        ));
    }
    s.push_str(&format!(
        "timing {}, area {}, {} vectors, seed {}",
        report.models.timing, report.models.area, report.vectors, report.seed
    ));
    s
}

fn json_line<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("value serializes");
    s.push('\n');
    s
}

fn say(out: &mut dyn Write, line: impl AsRef<str>) -> Result<(), CliError> {
    writeln!(out, "{}", line.as_ref()).map_err(stdout_err)
}

fn stdout_err(source: io::Error) -> CliError {
    CliError::Io {
        path: PathBuf::from("<stdout>"),
        source,
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes through a temporary file in the destination directory, then
/// renames it into place.
fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let io_err = |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err)?;
    tmp.write_all(bytes).map_err(io_err)?;
    tmp.as_file().sync_all().map_err(io_err)?;
    tmp.persist(path).map_err(|e| io_err(e.error))?;
    Ok(())
}
