use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use thermal_tripwire::config::Config;
use thermal_tripwire::formats::{self, write_atomically};
use thermal_tripwire::frames::{cumulative_counts, CountSeries, RecordingMeta, DEFAULT_FPS};
use thermal_tripwire::metrics::{evaluate, MetricsError};
use thermal_tripwire::pipeline::{aggregate_doors, inspect, run_pipeline};
use thermal_tripwire::synthgen::{generate, named_scenario, SUITE};
use thermal_tripwire::Error;

#[derive(Parser)]
#[command(name = "tripwire", version, about = "Occupancy counting from overhead thermal tripwires")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ConfigArgs {
    /// Flat key = value config file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Override one config key; repeatable. Wins over the file.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Frames per second of the input recordings.
    #[arg(long, default_value_t = DEFAULT_FPS)]
    fps: f64,
}

impl ConfigArgs {
    fn load(&self) -> Result<Config, Error> {
        let mut cfg = match &self.config {
            Some(path) => Config::load(path)?,
            None => Config::default(),
        };
        for assignment in &self.set {
            cfg.set_assignment(assignment)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Count occupancy from one recording per door (shared clock).
    Count {
        #[arg(required = true)]
        recordings: Vec<PathBuf>,
        #[arg(long)]
        out_dir: PathBuf,
        #[command(flatten)]
        cfg: ConfigArgs,
    },
    /// Score an estimate against annotations; prints a JSON report.
    Eval {
        #[arg(long)]
        annotations: PathBuf,
        /// Room count before the first frame; defaults to `initial_count`.
        #[arg(long)]
        initial_count: Option<u32>,
        /// Estimated counts.csv.
        #[arg(long, conflicts_with = "recording", required_unless_present = "recording")]
        counts: Option<PathBuf>,
        /// Recordings to count first (one per door).
        #[arg(long)]
        recording: Vec<PathBuf>,
        /// Expected recording length; must match the estimate.
        #[arg(long)]
        n_frames: Option<usize>,
        #[command(flatten)]
        cfg: ConfigArgs,
    },
    /// Render a synthetic scenario to recording.csv + annotations.csv.
    Gen {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(SUITE))]
        scenario: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Dump per-frame blob and occupancy tables as CSV.
    Inspect {
        recording: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
        #[command(flatten)]
        cfg: ConfigArgs,
    },
}

fn door_id(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "door".into())
}

fn make_dir(dir: &Path) -> Result<(), Error> {
    std::fs::create_dir_all(dir).map_err(|source| Error::Io {
        path: dir.to_path_buf(),
        source,
    })
}

/// Runs every door and merges the deltas; also returns the events table.
fn count_doors(paths: &[PathBuf], cfg: &Config, fps: f64) -> Result<(CountSeries, String), Error> {
    let mut deltas = Vec::new();
    let mut events = String::from("end_frame,verdict,door_id\n");
    let mut n_frames = None;
    for path in paths {
        let meta = RecordingMeta {
            fps,
            door_id: door_id(path),
            entry_direction: cfg.entry_direction,
        };
        let rec = formats::parse_recording(path, meta)?;
        match n_frames {
            None => n_frames = Some(rec.len()),
            Some(n) if n != rec.len() => {
                return Err(Error::Metrics(MetricsError::LengthMismatch {
                    truth: n,
                    estimate: rec.len(),
                }))
            }
            _ => {}
        }
        let out = run_pipeline(&rec, cfg)?;
        let mut evs = out.events;
        evs.sort_by_key(|e| e.end_frame);
        for e in &evs {
            events.push_str(&format!("{},{},{}\n", e.end_frame, e.verdict, e.door_id));
        }
        deltas.push(out.deltas);
    }
    let counts = aggregate_doors(&deltas, cfg.initial_count, n_frames.unwrap_or(0))?;
    Ok((counts, events))
}

fn write_text(path: &Path, text: &str) -> Result<(), Error> {
    write_atomically(path, |w| w.write_all(text.as_bytes()))
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Count { recordings, out_dir, cfg: args } => {
            let cfg = args.load()?;
            let (counts, events) = count_doors(&recordings, &cfg, args.fps)?;
            make_dir(&out_dir)?;
            formats::write_counts(&counts, &out_dir.join("counts.csv"))?;
            write_text(&out_dir.join("events.csv"), &events)?;
            write_text(&out_dir.join("config.txt"), &cfg.to_text())?;
        }
        Command::Eval {
            annotations,
            initial_count,
            counts,
            recording,
            n_frames,
            cfg: args,
        } => {
            let cfg = args.load()?;
            let initial = initial_count.unwrap_or(cfg.initial_count);
            let ann = formats::parse_annotations(&annotations, initial)?;
            let est = match counts {
                Some(path) => formats::parse_counts(&path)?,
                None => {
                    let cfg = Config {
                        initial_count: initial,
                        ..cfg.clone()
                    };
                    count_doors(&recording, &cfg, args.fps)?.0
                }
            };
            if let Some(n) = n_frames {
                if n != est.len() {
                    return Err(MetricsError::LengthMismatch {
                        truth: n,
                        estimate: est.len(),
                    }
                    .into());
                }
            }
            let truth = cumulative_counts(&ann, est.len()).map_err(|source| Error::Format {
                path: annotations.clone(),
                source,
            })?;
            let report = evaluate(&truth, &est, cfg.metrics)?;
            let json = serde_json::to_string_pretty(&report).expect("report serialises");
            println!("{json}");
        }
        Command::Gen { scenario, seed, out_dir } => {
            let s = named_scenario(&scenario)?.with_seed(seed);
            let (rec, ann) = generate(&s)?;
            make_dir(&out_dir)?;
            formats::write_recording(&rec, &out_dir.join("recording.csv"))?;
            formats::write_annotations(&ann, &out_dir.join("annotations.csv"))?;
            eprintln!(
                "{}: {} frames, initial count {}, {} annotated change(s)",
                s.name,
                rec.len(),
                ann.initial_count,
                ann.deltas().len()
            );
        }
        Command::Inspect { recording, out_dir, cfg: args } => {
            let cfg = args.load()?;
            let meta = RecordingMeta {
                fps: args.fps,
                door_id: door_id(&recording),
                entry_direction: cfg.entry_direction,
            };
            let rec = formats::parse_recording(&recording, meta)?;
            let tables = inspect(&rec, &cfg)?;
            make_dir(&out_dir)?;
            let mut blobs = String::from("frame,track_id,size,centroid_v,centroid_h\n");
            for b in &tables.blobs {
                blobs.push_str(&format!(
                    "{},{},{},{},{}\n",
                    b.frame, b.track_id, b.size, b.centroid_v, b.centroid_h
                ));
            }
            let mut frames = String::from("frame,foreground_pixels,centroid_v\n");
            for f in &tables.frames {
                let v = f.centroid_v.map(|v| v.to_string()).unwrap_or_default();
                frames.push_str(&format!("{},{},{}\n", f.frame, f.foreground_pixels, v));
            }
            write_text(&out_dir.join("blobs.csv"), &blobs)?;
            write_text(&out_dir.join("frames.csv"), &frames)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_input_error() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
