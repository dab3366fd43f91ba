//! Command-line front end for the sub-band maximum amplitude vocoder.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use msasb::{
    analyze, copy_synthesis, envelope_fidelity, estimate_f0, make_band_layout, read_f0,
    read_features, read_wav, render, sweep, write_f0, write_features, write_wav, AnalysisConfig,
    DistortionReport, InterpMethod,
};

#[derive(Parser)]
#[command(
    name = "msasb",
    version,
    about = "Sub-band maximum spectral amplitude vocoder"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Estimate an F0 contour from a wav file and write it as text
    F0 {
        input: PathBuf,
        output: PathBuf,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Analyze a wav file into an MSB1 feature file
    Analyze {
        input: PathBuf,
        f0: PathBuf,
        output: PathBuf,
        #[command(flatten)]
        opts: CommonOpts,
        /// Store natural-log values and set the header flag
        #[arg(long)]
        log_domain: bool,
    },
    /// Synthesize a wav file from an MSB1 feature file and an F0 file
    Synthesize {
        features: PathBuf,
        f0: PathBuf,
        output: PathBuf,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Analyze and immediately resynthesize a wav file
    CopySynth {
        input: PathBuf,
        output: PathBuf,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Report envelope reconstruction fidelity as CSV
    Metrics {
        input: PathBuf,
        #[command(flatten)]
        opts: CommonOpts,
        /// Write the summary CSV here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write a per-frame CSV
        #[arg(long)]
        per_frame: Option<PathBuf>,
    },
    /// Run the fidelity report across several band counts
    Sweep {
        input: PathBuf,
        #[command(flatten)]
        opts: CommonOpts,
        /// Comma-separated band counts
        #[arg(long, default_value = "60,80,100,120,140,160", value_delimiter = ',')]
        sweep_bands: Vec<usize>,
        /// Write the summary CSV here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct CommonOpts {
    /// Number of sub-bands
    #[arg(long, default_value_t = 100)]
    bands: usize,
    /// Interpolation used for envelope reconstruction
    #[arg(long, value_enum, default_value_t = InterpArg::Linear)]
    interp: InterpArg,
    /// Frame shift in milliseconds
    #[arg(long, default_value_t = 5.0)]
    frame_shift_ms: f64,
    /// DFT size (power of two); picked from the sample rate when omitted
    #[arg(long)]
    fft_size: Option<usize>,
    /// Noise seed for reproducible synthesis
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Echo the effective configuration to stderr
    #[arg(long)]
    verbose: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InterpArg {
    Linear,
    Cubic,
}

impl From<InterpArg> for InterpMethod {
    fn from(arg: InterpArg) -> Self {
        match arg {
            InterpArg::Linear => InterpMethod::Linear,
            InterpArg::Cubic => InterpMethod::Cubic,
        }
    }
}

impl CommonOpts {
    /// DFT size rule: 1024, or 2048 when the longest pitch-adaptive window
    /// (three periods at 50 Hz) would not fit.
    fn resolve_fft_size(&self, sample_rate_hz: u32) -> usize {
        self.fft_size.unwrap_or({
            let worst_window = 3.0 * sample_rate_hz as f64 / 50.0;
            if worst_window > 1024.0 {
                2048
            } else {
                1024
            }
        })
    }

    fn analysis_config(&self, sample_rate_hz: u32) -> AnalysisConfig {
        AnalysisConfig {
            n_bands: self.bands,
            frame_shift_ms: self.frame_shift_ms,
            fft_size: self.resolve_fft_size(sample_rate_hz),
            ..AnalysisConfig::default()
        }
    }

    fn echo(&self, sample_rate_hz: u32, log_domain: bool) {
        if self.verbose {
            eprintln!(
                "# config: bands={} interp={} frame_shift_ms={} fft_size={} seed={} log_domain={}",
                self.bands,
                InterpMethod::from(self.interp),
                self.frame_shift_ms,
                self.resolve_fft_size(sample_rate_hz),
                self.seed,
                log_domain,
            );
        }
    }
}

/// Removes the listed output files unless disarmed, so failed commands never
/// leave partial outputs behind.
struct OutputGuard {
    paths: Vec<PathBuf>,
    armed: bool,
}

impl OutputGuard {
    fn new() -> Self {
        Self {
            paths: Vec::new(),
            armed: true,
        }
    }

    fn track(&mut self, path: &Path) {
        self.paths.push(path.to_path_buf());
    }

    fn disarm(mut self) {
        self.armed = false;
    }
}

impl Drop for OutputGuard {
    fn drop(&mut self) {
        if self.armed {
            for path in &self.paths {
                let _ = fs::remove_file(path);
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> msasb::Result<()> {
    match cli.command {
        Command::F0 {
            input,
            output,
            opts,
        } => {
            let audio = read_wav(&input)?;
            opts.echo(audio.sample_rate_hz, false);
            let contour = estimate_f0(&audio, opts.frame_shift_ms)?;
            let mut guard = OutputGuard::new();
            guard.track(&output);
            write_f0(&contour, &output)?;
            guard.disarm();
            Ok(())
        }
        Command::Analyze {
            input,
            f0,
            output,
            opts,
            log_domain,
        } => {
            let audio = read_wav(&input)?;
            opts.echo(audio.sample_rate_hz, log_domain);
            let contour = read_f0(&f0, opts.frame_shift_ms)?;
            let config = opts.analysis_config(audio.sample_rate_hz);
            let mut track = analyze(&audio, &contour, &config)?;
            if log_domain {
                track = track.to_log();
            }
            let mut guard = OutputGuard::new();
            guard.track(&output);
            write_features(&track, &output)?;
            guard.disarm();
            Ok(())
        }
        Command::Synthesize {
            features,
            f0,
            output,
            opts,
        } => {
            let mut track = read_features(&features)?;
            opts.echo(track.sample_rate_hz, track.log_domain);
            if track.log_domain {
                track = track.to_linear();
            }
            let contour = read_f0(&f0, track.frame_shift_ms)?;
            let config = AnalysisConfig {
                n_bands: track.n_bands,
                frame_shift_ms: track.frame_shift_ms,
                fft_size: opts.resolve_fft_size(track.sample_rate_hz),
                ..AnalysisConfig::default()
            };
            let layout = make_band_layout(&config, track.sample_rate_hz)?;
            let audio = render(&track, &layout, &contour, opts.interp.into(), opts.seed)?;
            let mut guard = OutputGuard::new();
            guard.track(&output);
            write_wav(&audio, &output)?;
            guard.disarm();
            Ok(())
        }
        Command::CopySynth {
            input,
            output,
            opts,
        } => {
            let audio = read_wav(&input)?;
            opts.echo(audio.sample_rate_hz, false);
            let config = opts.analysis_config(audio.sample_rate_hz);
            let rendered = copy_synthesis(&audio, &config, opts.interp.into(), opts.seed)?;
            let mut guard = OutputGuard::new();
            guard.track(&output);
            write_wav(&rendered, &output)?;
            guard.disarm();
            Ok(())
        }
        Command::Metrics {
            input,
            opts,
            out,
            per_frame,
        } => {
            let audio = read_wav(&input)?;
            opts.echo(audio.sample_rate_hz, false);
            let config = opts.analysis_config(audio.sample_rate_hz);
            let report = envelope_fidelity(&audio, &config, opts.interp.into())?;

            let mut guard = OutputGuard::new();
            let summary = summary_csv(std::slice::from_ref(&report));
            emit(&summary, out.as_deref(), &mut guard)?;
            if let Some(path) = per_frame {
                let mut csv = String::from("frame,lsd_db\n");
                for (i, lsd) in report.per_frame_lsd_db.iter().enumerate() {
                    csv.push_str(&format!("{i},{lsd:.6}\n"));
                }
                guard.track(&path);
                fs::write(&path, csv).map_err(|e| msasb::Error::IoFailure {
                    path: path.clone(),
                    source: e,
                })?;
            }
            guard.disarm();
            Ok(())
        }
        Command::Sweep {
            input,
            opts,
            sweep_bands,
            out,
        } => {
            let audio = read_wav(&input)?;
            opts.echo(audio.sample_rate_hz, false);
            let config = opts.analysis_config(audio.sample_rate_hz);
            let reports = sweep(&audio, &sweep_bands, &config, opts.interp.into())?;

            let mut guard = OutputGuard::new();
            emit(&summary_csv(&reports), out.as_deref(), &mut guard)?;
            guard.disarm();
            Ok(())
        }
    }
}

fn summary_csv(reports: &[DistortionReport]) -> String {
    let mut csv = String::from("n_bands,method,n_frames,mean_lsd_db\n");
    for report in reports {
        csv.push_str(&format!(
            "{},{},{},{:.6}\n",
            report.n_bands, report.method, report.n_frames, report.mean_lsd_db
        ));
    }
    csv
}

fn emit(text: &str, out: Option<&Path>, guard: &mut OutputGuard) -> msasb::Result<()> {
    match out {
        Some(path) => {
            guard.track(path);
            fs::write(path, text).map_err(|e| msasb::Error::IoFailure {
                path: path.to_path_buf(),
                source: e,
            })
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
