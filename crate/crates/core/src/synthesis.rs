//! Synthesis stage: impulse/noise excitation filtered per frame by the
//! minimum-phase impulse response of the reconstructed envelope.
//!
//! Voiced regions use a phase-accumulator impulse train (impulse amplitude
//! `sqrt(fs/f0)` so each period carries unit average power), unvoiced regions
//! use seeded zero-mean uniform noise with unit variance. Each frame-shift
//! segment of the excitation is convolved with its frame's impulse response
//! and the full tails are overlap-added, which smooths filter transitions
//! without explicit cross-fades.

use rayon::prelude::*;

use crate::analysis::BandLayout;
use crate::envelope::{min_phase_impulse_response, reconstruct_envelope, InterpMethod};
use crate::error::{Error, Result};
use crate::pitch::{estimate_f0, F0Contour};
use crate::signal_io::{AudioBuffer, FeatureTrack};
use crate::AnalysisConfig;

/// Amplitude bound of the unit-variance uniform noise: sqrt(3).
const NOISE_AMPLITUDE: f64 = 1.732_050_807_568_877_2;
/// Output peak target after normalization.
const PEAK_TARGET: f64 = 0.9;

/// Excitation signal for one utterance.
#[derive(Debug, Clone, PartialEq)]
pub struct ExcitationPlan {
    pub samples: Vec<f64>,
    pub frame_shift_ms: f64,
    pub seed: u64,
}

/// SplitMix64; tiny, seedable and stable across platforms.
struct SplitMix64(u64);

impl SplitMix64 {
    fn new(seed: u64) -> Self {
        Self(seed)
    }

    fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1).
    fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

/// Sample index where frame `k` starts, for `k = 0..=n_frames`.
fn frame_starts(n_frames: usize, shift_samples: f64) -> Vec<usize> {
    (0..=n_frames)
        .map(|k| (k as f64 * shift_samples).round() as usize)
        .collect()
}

/// Builds the excitation for a contour: impulse train in voiced regions,
/// uniform noise in unvoiced regions, both at unit power per sample.
///
/// The pulse phase advances by `f0/fs` per sample (f0 held constant within a
/// frame) and an impulse of amplitude `sqrt(fs/f0)` fires on each wrap; the
/// phase resets to zero at every voiced/unvoiced boundary.
pub fn build_excitation(
    f0: &F0Contour,
    sample_rate_hz: u32,
    total_samples: usize,
    seed: u64,
) -> Result<ExcitationPlan> {
    let fs = sample_rate_hz as f64;
    let shift_samples = f0.frame_shift_ms * fs / 1000.0;
    if !shift_samples.is_finite() || shift_samples <= 0.0 {
        return Err(Error::InvalidConfig("frame shift must be > 0".into()));
    }
    let starts = frame_starts(f0.frames.len(), shift_samples);
    if total_samples > *starts.last().unwrap() {
        return Err(Error::LengthMismatch(format!(
            "{total_samples} samples need more than the {} frames available",
            f0.frames.len()
        )));
    }

    let mut samples = vec![0.0; total_samples];
    let mut rng = SplitMix64::new(seed);
    let mut phase = 0.0;
    let mut prev_voiced = false;

    for (k, frame) in f0.frames.iter().enumerate() {
        let lo = starts[k].min(total_samples);
        let hi = starts[k + 1].min(total_samples);
        if frame.voiced != prev_voiced {
            phase = 0.0;
        }
        prev_voiced = frame.voiced;
        if lo >= hi {
            continue;
        }
        if frame.voiced {
            let increment = frame.f0_hz / fs;
            let amplitude = (fs / frame.f0_hz).sqrt();
            for s in &mut samples[lo..hi] {
                phase += increment;
                if phase >= 1.0 {
                    phase -= 1.0;
                    *s = amplitude;
                }
            }
        } else {
            for s in &mut samples[lo..hi] {
                *s = (2.0 * rng.next_f64() - 1.0) * NOISE_AMPLITUDE;
            }
        }
    }

    Ok(ExcitationPlan {
        samples,
        frame_shift_ms: f0.frame_shift_ms,
        seed,
    })
}

/// Renders audio from a feature track: per-frame envelope reconstruction,
/// minimum-phase filtering of the excitation, overlap-add of the full
/// convolution tails, then peak normalization to 0.9 when needed.
pub fn render(
    track: &FeatureTrack,
    layout: &BandLayout,
    f0: &F0Contour,
    method: InterpMethod,
    seed: u64,
) -> Result<AudioBuffer> {
    if track.log_domain {
        return Err(Error::LogDomainMismatch(
            "render requires a linear-domain track; call to_linear() first".into(),
        ));
    }
    if track.frames.len() != f0.frames.len() {
        return Err(Error::FrameCountMismatch {
            track: track.frames.len(),
            f0: f0.frames.len(),
        });
    }
    if track.frame_shift_ms != f0.frame_shift_ms {
        return Err(Error::FrameShiftMismatch {
            left: track.frame_shift_ms,
            right: f0.frame_shift_ms,
        });
    }
    if track.n_bands != layout.n_bands || track.sample_rate_hz != layout.sample_rate_hz {
        return Err(Error::LengthMismatch(format!(
            "track ({} bands @ {} Hz) does not match layout ({} bands @ {} Hz)",
            track.n_bands, track.sample_rate_hz, layout.n_bands, layout.sample_rate_hz
        )));
    }
    for frame in &track.frames {
        for v in frame.values() {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::NonPositiveInput(v));
            }
        }
    }

    if track.frames.is_empty() {
        return Ok(AudioBuffer::new(Vec::new(), track.sample_rate_hz));
    }

    let fs = track.sample_rate_hz as f64;
    let shift_samples = track.frame_shift_ms * fs / 1000.0;
    let n_frames = track.frames.len();
    let starts = frame_starts(n_frames, shift_samples);
    let total_samples = starts[n_frames];
    let ir_len = layout.fft_size / 2;

    let excitation = build_excitation(f0, track.sample_rate_hz, total_samples, seed)?;

    // Frames are independent; compute each tail in parallel, then accumulate
    // in frame order so the float sums do not depend on the thread count.
    let tails: Result<Vec<Vec<f64>>> = track
        .frames
        .par_iter()
        .enumerate()
        .map(|(k, frame)| {
            let envelope = reconstruct_envelope(frame, layout, method)?;
            let response = min_phase_impulse_response(&envelope, ir_len)?;
            let segment = &excitation.samples[starts[k]..starts[k + 1]];
            Ok(convolve(segment, &response))
        })
        .collect();
    let tails = tails?;

    let mut out = vec![0.0; total_samples + ir_len];
    for (k, tail) in tails.iter().enumerate() {
        let offset = starts[k];
        for (i, &v) in tail.iter().enumerate() {
            out[offset + i] += v;
        }
    }

    let peak = out.iter().fold(0.0f64, |m, &v| m.max(v.abs()));
    if peak > PEAK_TARGET {
        let scale = PEAK_TARGET / peak;
        for v in &mut out {
            *v *= scale;
        }
    }

    Ok(AudioBuffer::new(out, track.sample_rate_hz))
}

/// Full convolution of a segment with an impulse response.
fn convolve(segment: &[f64], response: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; segment.len() + response.len() - 1];
    for (i, &s) in segment.iter().enumerate() {
        if s == 0.0 {
            continue; // excitation is mostly zeros in voiced regions
        }
        for (j, &h) in response.iter().enumerate() {
            out[i + j] += s * h;
        }
    }
    out
}

/// Analysis-by-synthesis round trip: estimate F0, analyze, render.
pub fn copy_synthesis(
    audio: &AudioBuffer,
    config: &AnalysisConfig,
    method: InterpMethod,
    seed: u64,
) -> Result<AudioBuffer> {
    audio.validate()?;
    let f0 = estimate_f0(audio, config.frame_shift_ms)?;
    let layout = crate::analysis::make_band_layout(config, audio.sample_rate_hz)?;
    let track = crate::analysis::analyze(audio, &f0, config)?;
    render(&track, &layout, &f0, method, seed)
}
