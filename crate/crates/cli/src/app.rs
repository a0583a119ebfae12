//! Argument parsing and command dispatch.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use sociokit::characterize::verify_category_partition;
use sociokit::ingest::{read_session_dir, write_session_log};
use sociokit::model::SociogramKind;
use sociokit::synth::{generate, ground_truth, Archetype, ScenarioSpec};
use sociokit::task::compute_task_report;

use crate::config::RunConfig;
use crate::error::CliError;
use crate::export::{export, ExportFormat};
use crate::report::{analyze, build_sociograms, load_ground_truth};
use crate::score::{score_groups, ProfilesFile};

#[derive(Debug, Parser)]
#[command(name = "sociokit", version, about = "Sociogram analysis of multi-participant session logs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build sociograms, metrics, profiles, scorecards and task measures for a session.
    Analyze {
        log_dir: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Weight preset name, or `all` for every preset.
        #[arg(long)]
        preset: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Score characteristic profiles read from a JSON file.
    Score {
        profiles: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        preset: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render one sociogram of a session.
    Export {
        log_dir: PathBuf,
        #[arg(long)]
        sociogram: SociogramKind,
        /// `dot` or `edge-list`.
        #[arg(long, default_value = "dot")]
        format: String,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a synthetic session directory.
    Synth {
        /// cohesive, fragmented or dominant-speaker.
        #[arg(long, default_value = "cohesive")]
        scenario: Archetype,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        duration: Option<f64>,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
    },
    /// Task measures from a session's interaction stream.
    TaskMetrics {
        log_dir: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Ground-truth JSON map of object to category.
        #[arg(long)]
        truth: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Writes `contents` to `path` via a sibling temporary file, or to stdout.
pub fn emit(path: Option<&Path>, contents: &str) -> Result<(), CliError> {
    let Some(path) = path else {
        let mut stdout = std::io::stdout().lock();
        return stdout
            .write_all(contents.as_bytes())
            .map_err(|source| CliError::Io {
                path: PathBuf::from("<stdout>"),
                source,
            });
    };
    let io = |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    };
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent).map_err(io)?;
    }
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".partial");
    let tmp = PathBuf::from(tmp);
    std::fs::write(&tmp, contents).map_err(io)?;
    std::fs::rename(&tmp, path).map_err(io)
}

fn resolve(config: Option<&Path>, preset: Option<&str>) -> Result<RunConfig, CliError> {
    let mut cfg = RunConfig::load_or_default(config)?;
    if let Some(p) = preset {
        cfg.apply_preset_flag(p)?;
    }
    for warning in cfg.thresholds.unreachable_branches() {
        eprintln!("warning: {warning}");
    }
    Ok(cfg)
}

pub fn execute(cli: Cli) -> Result<(), CliError> {
    verify_category_partition().map_err(CliError::Config)?;
    match cli.command {
        Command::Analyze {
            log_dir,
            config,
            preset,
            out,
        } => {
            let mut cfg = resolve(config.as_deref(), preset.as_deref())?;
            if out.is_some() {
                cfg.output = out;
            }
            let report = analyze(&log_dir, &cfg)?;
            emit(cfg.output.as_deref(), &report.to_json_pretty())
        }
        Command::Score {
            profiles,
            config,
            preset,
            out,
        } => {
            let cfg = resolve(config.as_deref(), preset.as_deref())?;
            let text = std::fs::read_to_string(&profiles).map_err(|source| CliError::Io {
                path: profiles.clone(),
                source,
            })?;
            let output = score_groups(&ProfilesFile::from_json(&text)?, &cfg)?;
            emit(out.as_deref(), &output.to_json_pretty())
        }
        Command::Export {
            log_dir,
            sociogram,
            format,
            config,
            out,
        } => {
            let format: ExportFormat = format.parse()?;
            let cfg = RunConfig::load_or_default(config.as_deref())?;
            let log = read_session_dir(&log_dir)?;
            let graphs = build_sociograms(&log, &cfg)?;
            emit(out.as_deref(), &export(graphs.get(sociogram), format))
        }
        Command::Synth {
            scenario,
            seed,
            duration,
            out,
        } => {
            let mut spec = ScenarioSpec::archetype(scenario, seed);
            if let Some(d) = duration {
                spec.duration = d;
            }
            let log = generate(&spec)?;
            write_session_log(&log, &out)?;
            let truth = serde_json::to_string_pretty(&ground_truth(&spec)).expect("serializes");
            emit(Some(&out.join("truth.json")), &(truth + "\n"))
        }
        Command::TaskMetrics {
            log_dir,
            config,
            truth,
            out,
        } => {
            let cfg = RunConfig::load_or_default(config.as_deref())?;
            let log = read_session_dir(&log_dir)?;
            let truth_path = truth.or(cfg.ground_truth.clone());
            let truth = truth_path.as_deref().map(load_ground_truth).transpose()?;
            let report = compute_task_report(log.interactions(), truth.as_ref(), cfg.override_mode)?;
            let mut text = serde_json::to_string_pretty(&report).expect("serializes");
            text.push('\n');
            emit(out.as_deref(), &text)
        }
    }
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
