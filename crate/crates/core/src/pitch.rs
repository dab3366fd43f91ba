//! Autocorrelation pitch tracker with a voiced/unvoiced decision.
//!
//! Any F0 estimator can drive the vocoder; this one is deliberately simple:
//! normalized autocorrelation over a 40 ms window, a peak threshold plus an
//! energy gate for the voicing decision, and a 5-frame median filter to knock
//! out isolated octave errors.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::signal_io::AudioBuffer;

/// Analysis window for the autocorrelation, in seconds.
const WINDOW_S: f64 = 0.040;
/// F0 search range in Hz.
const F0_MIN_HZ: f64 = 50.0;
const F0_MAX_HZ: f64 = 500.0;
/// A frame is voiced only if the normalized autocorrelation peak reaches this.
const VOICING_THRESHOLD: f64 = 0.3;
/// ... and its RMS is at least this fraction of the utterance RMS.
const ENERGY_GATE: f64 = 0.01;
/// Median filter span, in frames.
const MEDIAN_SPAN: usize = 5;

/// One frame of the F0 contour.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct F0Frame {
    /// Fundamental frequency in Hz; 0 when unvoiced.
    pub f0_hz: f64,
    /// Voicing decision; always equals `f0_hz > 0`.
    pub voiced: bool,
}

/// Per-frame fundamental frequency and voicing at a fixed frame shift.
#[derive(Debug, Clone, PartialEq)]
pub struct F0Contour {
    pub frame_shift_ms: f64,
    pub frames: Vec<F0Frame>,
}

impl F0Contour {
    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }
}

/// Number of frames covering `n_samples` at the given shift: one frame per
/// shift, inclusive of both ends.
pub(crate) fn frame_count(n_samples: usize, shift_samples: f64) -> usize {
    (n_samples as f64 / shift_samples).floor() as usize + 1
}

/// Estimates an F0 contour with one frame per `frame_shift_ms`, frame `k`
/// centred at sample `round(k * shift)`.
pub fn estimate_f0(audio: &AudioBuffer, frame_shift_ms: f64) -> Result<F0Contour> {
    audio.validate()?;
    if !frame_shift_ms.is_finite() || frame_shift_ms <= 0.0 {
        return Err(Error::InvalidConfig("frame_shift_ms must be > 0".into()));
    }
    let fs = audio.sample_rate_hz as f64;
    let win_len = (WINDOW_S * fs).round() as usize;
    if audio.samples.len() < win_len {
        return Err(Error::AudioTooShort {
            got: audio.samples.len(),
            need: win_len,
        });
    }

    let shift_samples = frame_shift_ms * fs / 1000.0;
    let n_frames = frame_count(audio.samples.len(), shift_samples);
    let lag_min = ((fs / F0_MAX_HZ).ceil() as usize).max(1);
    let lag_max = ((fs / F0_MIN_HZ).floor() as usize).min(win_len - 1);

    let utt_energy: f64 = audio.samples.iter().map(|s| s * s).sum();
    let utt_rms = (utt_energy / audio.samples.len() as f64).sqrt();

    let raw: Vec<f64> = (0..n_frames)
        .into_par_iter()
        .map(|k| {
            let centre = (k as f64 * shift_samples).round() as i64;
            let window = extract_window(&audio.samples, centre, win_len);
            frame_f0(&window, fs, lag_min, lag_max, utt_rms)
        })
        .collect();

    let filtered = median_filter(&raw, MEDIAN_SPAN);
    let frames = filtered
        .into_iter()
        .map(|f0_hz| F0Frame {
            f0_hz,
            voiced: f0_hz > 0.0,
        })
        .collect();

    Ok(F0Contour {
        frame_shift_ms,
        frames,
    })
}

fn extract_window(samples: &[f64], centre: i64, win_len: usize) -> Vec<f64> {
    let start = centre - (win_len / 2) as i64;
    (0..win_len as i64)
        .map(|i| {
            let idx = start + i;
            if idx >= 0 && (idx as usize) < samples.len() {
                samples[idx as usize]
            } else {
                0.0
            }
        })
        .collect()
}

/// F0 of one window, or 0 when unvoiced.
fn frame_f0(window: &[f64], fs: f64, lag_min: usize, lag_max: usize, utt_rms: f64) -> f64 {
    let r0: f64 = window.iter().map(|s| s * s).sum();
    if r0 <= 0.0 {
        return 0.0;
    }
    let frame_rms = (r0 / window.len() as f64).sqrt();

    let mut best_lag = 0;
    let mut best_val = f64::MIN;
    for lag in lag_min..=lag_max {
        let mut r = 0.0;
        for i in 0..window.len() - lag {
            r += window[i] * window[i + lag];
        }
        let norm = r / r0;
        if norm > best_val {
            best_val = norm;
            best_lag = lag;
        }
    }

    let voiced = best_val >= VOICING_THRESHOLD && frame_rms >= ENERGY_GATE * utt_rms;
    if voiced {
        fs / best_lag as f64
    } else {
        0.0
    }
}

/// Running median with a window clamped at the ends.
fn median_filter(values: &[f64], span: usize) -> Vec<f64> {
    let half = span / 2;
    (0..values.len())
        .map(|i| {
            let lo = i.saturating_sub(half);
            let hi = (i + half + 1).min(values.len());
            let mut window: Vec<f64> = values[lo..hi].to_vec();
            window.sort_by(|a, b| a.partial_cmp(b).unwrap());
            window[window.len() / 2]
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sine(freq: f64, amp: f64, fs: u32, seconds: f64) -> AudioBuffer {
        let n = (seconds * fs as f64).round() as usize;
        let samples = (0..n)
            .map(|i| amp * (2.0 * std::f64::consts::PI * freq * i as f64 / fs as f64).sin())
            .collect();
        AudioBuffer::new(samples, fs)
    }

    fn noise(fs: u32, seconds: f64, seed: u64) -> AudioBuffer {
        // xorshift-style generator, good enough for a test signal
        let n = (seconds * fs as f64).round() as usize;
        let mut state = seed.max(1);
        let samples = (0..n)
            .map(|_| {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                (state as f64 / u64::MAX as f64) * 2.0 - 1.0
            })
            .collect();
        AudioBuffer::new(samples, fs)
    }

    #[test]
    fn frame_count_is_floor_plus_one() {
        assert_eq!(frame_count(16000, 80.0), 201);
        assert_eq!(frame_count(16000, 160.0), 101);
        assert_eq!(frame_count(79, 80.0), 1);
    }

    #[test]
    fn pure_200hz_sine_is_voiced_at_200() {
        let audio = sine(200.0, 0.5, 16000, 1.0);
        let contour = estimate_f0(&audio, 5.0).unwrap();
        assert_eq!(contour.frames.len(), 201);
        // skip edge frames whose windows are partly zero-padded
        let interior = &contour.frames[8..contour.frames.len() - 8];
        for (i, frame) in interior.iter().enumerate() {
            assert!(frame.voiced, "interior frame {i} unvoiced");
            assert!(
                frame.f0_hz >= 198.0 && frame.f0_hz <= 202.0,
                "frame {i}: f0 {}",
                frame.f0_hz
            );
        }
    }

    #[test]
    fn white_noise_is_mostly_unvoiced() {
        let audio = noise(16000, 1.0, 0xDEADBEEF);
        let contour = estimate_f0(&audio, 5.0).unwrap();
        let unvoiced = contour.frames.iter().filter(|f| !f.voiced).count();
        let fraction = unvoiced as f64 / contour.frames.len() as f64;
        assert!(fraction > 0.9, "only {fraction:.3} unvoiced");
    }

    #[test]
    fn silence_is_all_unvoiced() {
        let audio = AudioBuffer::new(vec![0.0; 16000], 16000);
        let contour = estimate_f0(&audio, 5.0).unwrap();
        for frame in &contour.frames {
            assert!(!frame.voiced);
            assert_eq!(frame.f0_hz, 0.0);
        }
    }

    #[test]
    fn too_short_audio_is_rejected() {
        let audio = AudioBuffer::new(vec![0.1; 100], 16000);
        assert!(matches!(
            estimate_f0(&audio, 5.0),
            Err(Error::AudioTooShort { .. })
        ));
    }

    #[test]
    fn scaling_leaves_contour_unchanged() {
        let audio = sine(173.0, 0.3, 16000, 0.6);
        let reference = estimate_f0(&audio, 5.0).unwrap();
        for scale in [0.25, 3.7, 64.0] {
            let scaled = AudioBuffer::new(
                audio.samples.iter().map(|s| s * scale).collect(),
                audio.sample_rate_hz,
            );
            let contour = estimate_f0(&scaled, 5.0).unwrap();
            assert_eq!(contour, reference, "scale {scale}");
        }
    }

    #[test]
    fn deterministic_across_runs() {
        let audio = sine(149.0, 0.4, 16000, 0.5);
        let a = estimate_f0(&audio, 5.0).unwrap();
        let b = estimate_f0(&audio, 5.0).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn voiced_f0_stays_in_search_range() {
        let audio = sine(449.0, 0.5, 16000, 0.5);
        let contour = estimate_f0(&audio, 5.0).unwrap();
        for frame in &contour.frames {
            if frame.voiced {
                assert!(frame.f0_hz >= 50.0 && frame.f0_hz <= 500.0);
            }
        }
    }

    #[test]
    fn median_filter_removes_spikes() {
        let values = vec![100.0, 100.0, 400.0, 100.0, 100.0];
        let filtered = median_filter(&values, 5);
        assert_eq!(filtered[2], 100.0);
    }
}
