//! Objective evaluation: log-spectral distortion between envelopes and the
//! band-count sweep.
//!
//! Reconstruction fidelity is measured where the parametrization actually
//! keeps information: at each band's argmax bin. The retained maximum is the
//! reference; the reconstructed envelope evaluated at that bin is the test
//! value. The gap between the two is exactly the distortion introduced by
//! aligning maxima to band centres, which shrinks as bands get narrower.

use rayon::prelude::*;

use crate::analysis::{
    band_argmax, floored_magnitude_spectrum, make_band_layout, window_for_frame, AnalysisConfig,
};
use crate::envelope::{reconstruct_envelope, InterpMethod, SpectralEnvelope};
use crate::error::{Error, Result};
use crate::pitch::{estimate_f0, F0Contour};
use crate::signal_io::AudioBuffer;
use crate::spectrum::Spectrum;

/// Distortion summary for one audio/configuration pair.
#[derive(Debug, Clone, PartialEq)]
pub struct DistortionReport {
    pub per_frame_lsd_db: Vec<f64>,
    pub mean_lsd_db: f64,
    pub n_frames: usize,
    pub n_bands: usize,
    pub method: InterpMethod,
}

/// RMS difference of two log-magnitude spectra, in dB:
/// `sqrt(mean_k (20*log10(ref[k]) - 20*log10(test[k]))^2)`.
pub fn log_spectral_distortion(
    reference: &SpectralEnvelope,
    test: &SpectralEnvelope,
) -> Result<f64> {
    if reference.fft_size != test.fft_size
        || reference.sample_rate_hz != test.sample_rate_hz
        || reference.magnitudes.len() != test.magnitudes.len()
    {
        return Err(Error::GridMismatch(format!(
            "reference {}/{} Hz vs test {}/{} Hz",
            reference.fft_size, reference.sample_rate_hz, test.fft_size, test.sample_rate_hz
        )));
    }
    Ok(lsd_of_pairs(
        reference.magnitudes.iter().copied(),
        test.magnitudes.iter().copied(),
    ))
}

fn lsd_of_pairs(
    reference: impl Iterator<Item = f64>,
    test: impl Iterator<Item = f64>,
) -> f64 {
    let mut sum = 0.0;
    let mut count = 0usize;
    for (r, t) in reference.zip(test) {
        let diff = 20.0 * r.log10() - 20.0 * t.log10();
        sum += diff * diff;
        count += 1;
    }
    if count == 0 {
        0.0
    } else {
        (sum / count as f64).sqrt()
    }
}

/// Reconstruction fidelity of one configuration over a whole utterance.
///
/// Per frame: take the floored magnitude spectrum, find each band's argmax
/// bin, and compare the stored maxima against the reconstructed envelope at
/// those bins.
pub fn envelope_fidelity(
    audio: &AudioBuffer,
    config: &AnalysisConfig,
    method: InterpMethod,
) -> Result<DistortionReport> {
    let f0 = estimate_f0(audio, config.frame_shift_ms)?;
    envelope_fidelity_with_f0(audio, &f0, config, method)
}

fn envelope_fidelity_with_f0(
    audio: &AudioBuffer,
    f0: &F0Contour,
    config: &AnalysisConfig,
    method: InterpMethod,
) -> Result<DistortionReport> {
    audio.validate()?;
    let layout = make_band_layout(config, audio.sample_rate_hz)?;
    let spectrum = Spectrum::new(config.fft_size);
    let shift_samples = config.frame_shift_ms * audio.sample_rate_hz as f64 / 1000.0;

    let per_frame: Result<Vec<f64>> = f0
        .frames
        .par_iter()
        .enumerate()
        .map(|(k, frame)| {
            let window = window_for_frame(frame.f0_hz, frame.voiced, config, audio.sample_rate_hz)?;
            let centre = (k as f64 * shift_samples).round() as i64;
            let mags = floored_magnitude_spectrum(audio, centre, &window, &spectrum);
            let peaks = band_argmax(&mags, &layout);
            let msasb = crate::analysis::analyze_frame(audio, centre, &window, &layout);
            let envelope = reconstruct_envelope(&msasb, &layout, method)?;
            Ok(lsd_of_pairs(
                peaks.iter().map(|&bin| mags[bin]),
                peaks.iter().map(|&bin| envelope.magnitudes[bin]),
            ))
        })
        .collect();
    let per_frame = per_frame?;

    let mean = if per_frame.is_empty() {
        0.0
    } else {
        per_frame.iter().sum::<f64>() / per_frame.len() as f64
    };
    Ok(DistortionReport {
        n_frames: per_frame.len(),
        per_frame_lsd_db: per_frame,
        mean_lsd_db: mean,
        n_bands: config.n_bands,
        method,
    })
}

/// Runs `envelope_fidelity` for several band counts with a shared F0
/// contour, so every report sees the same frame alignment.
pub fn sweep(
    audio: &AudioBuffer,
    band_counts: &[usize],
    config: &AnalysisConfig,
    method: InterpMethod,
) -> Result<Vec<DistortionReport>> {
    if band_counts.is_empty() {
        return Ok(Vec::new());
    }
    let f0 = estimate_f0(audio, config.frame_shift_ms)?;
    band_counts
        .iter()
        .map(|&n_bands| {
            let cfg = AnalysisConfig { n_bands, ..*config };
            envelope_fidelity_with_f0(audio, &f0, &cfg, method)
        })
        .collect()
}
