//! Analysis stage: short-time magnitude spectra reduced to per-band maxima.
//!
//! Each frame is windowed pitch-adaptively (a Hann window of three pitch
//! periods when voiced, a fixed 15 ms Hann window when unvoiced), transformed,
//! and the magnitude spectrum is split into `n_bands` non-overlapping bands of
//! equal width `fs / (2 * n_bands)`. The maximum of each band is kept together
//! with the magnitudes at DC and Nyquist, giving `n_bands + 2` values per
//! frame at a fixed frame shift.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::pitch::F0Contour;
use crate::signal_io::{AudioBuffer, FeatureTrack};
use crate::spectrum::Spectrum;

/// Relative magnitude floor, as a fraction of the frame's spectral peak.
const RELATIVE_FLOOR: f64 = 1e-5;
/// Absolute magnitude floor for all-zero frames.
const ABSOLUTE_FLOOR: f64 = 1e-10;

/// Knobs of the analysis stage.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalysisConfig {
    /// Number of sub-bands.
    pub n_bands: usize,
    /// Hop between analysis instants, in milliseconds.
    pub frame_shift_ms: f64,
    /// DFT size; fixed for the whole run so the band layout never changes.
    pub fft_size: usize,
    /// Voiced window length in pitch periods.
    pub voiced_periods: usize,
    /// Unvoiced window length in milliseconds.
    pub unvoiced_window_ms: f64,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        Self {
            n_bands: 100,
            frame_shift_ms: 5.0,
            fft_size: 1024,
            voiced_periods: 3,
            unvoiced_window_ms: 15.0,
        }
    }
}

impl AnalysisConfig {
    pub fn with_bands(n_bands: usize) -> Self {
        Self {
            n_bands,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_bands == 0 {
            return Err(Error::InvalidConfig("n_bands must be > 0".into()));
        }
        if !self.frame_shift_ms.is_finite() || self.frame_shift_ms <= 0.0 {
            return Err(Error::InvalidConfig("frame_shift_ms must be > 0".into()));
        }
        if !self.fft_size.is_power_of_two() {
            return Err(Error::InvalidConfig(format!(
                "fft_size must be a power of two, got {}",
                self.fft_size
            )));
        }
        if self.voiced_periods == 0 {
            return Err(Error::InvalidConfig("voiced_periods must be > 0".into()));
        }
        if !self.unvoiced_window_ms.is_finite() || self.unvoiced_window_ms <= 0.0 {
            return Err(Error::InvalidConfig(
                "unvoiced_window_ms must be > 0".into(),
            ));
        }
        Ok(())
    }
}

/// Mapping from band index to DFT bins and centre frequency.
#[derive(Debug, Clone, PartialEq)]
pub struct BandLayout {
    pub n_bands: usize,
    pub sample_rate_hz: u32,
    pub fft_size: usize,
    /// Inclusive bin range per band; bins 1..fft_size/2-1 are partitioned.
    pub band_bins: Vec<(usize, usize)>,
    /// Band centre frequencies `(b + 0.5) * fs / (2 * n_bands)`.
    pub centre_hz: Vec<f64>,
}

impl BandLayout {
    /// Width of one band: `fs / (2 * n_bands)`.
    pub fn bandwidth_hz(&self) -> f64 {
        self.sample_rate_hz as f64 / (2.0 * self.n_bands as f64)
    }

    /// Frequency of DFT bin `k`.
    pub fn bin_hz(&self, k: usize) -> f64 {
        k as f64 * self.sample_rate_hz as f64 / self.fft_size as f64
    }
}

/// The `n_bands + 2` values stored per frame.
#[derive(Debug, Clone, PartialEq)]
pub struct MsasbFrame {
    /// Magnitude at 0 Hz.
    pub dc: f64,
    /// Maximum magnitude per band.
    pub band_max: Vec<f64>,
    /// Magnitude at fs/2.
    pub nyquist: f64,
}

impl MsasbFrame {
    /// Builds a frame from the serialized order `[dc, bands.., nyquist]`.
    pub fn from_values(values: &[f64]) -> Self {
        assert!(values.len() >= 2, "frame needs at least dc and nyquist");
        Self {
            dc: values[0],
            band_max: values[1..values.len() - 1].to_vec(),
            nyquist: values[values.len() - 1],
        }
    }

    /// Iterates values in the serialized order `[dc, bands.., nyquist]`.
    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        std::iter::once(self.dc)
            .chain(self.band_max.iter().copied())
            .chain(std::iter::once(self.nyquist))
    }

    /// Number of stored values: `n_bands + 2`.
    pub fn value_count(&self) -> usize {
        self.band_max.len() + 2
    }

    pub(crate) fn map(&self, f: impl Fn(f64) -> f64) -> MsasbFrame {
        MsasbFrame {
            dc: f(self.dc),
            band_max: self.band_max.iter().map(|&v| f(v)).collect(),
            nyquist: f(self.nyquist),
        }
    }
}

/// Splits bins `1..fft_size/2 - 1` into `n_bands` fixed-width bands.
///
/// Bin `k` (frequency `k*fs/fft_size`) goes to band `floor(2*k*n_bands /
/// fft_size)`, clamped to the last band. DC and Nyquist are excluded; they
/// are stored as separate anchors.
pub fn make_band_layout(config: &AnalysisConfig, sample_rate_hz: u32) -> Result<BandLayout> {
    config.validate()?;
    if sample_rate_hz == 0 {
        return Err(Error::InvalidConfig("sample rate must be > 0".into()));
    }
    let n_bands = config.n_bands;
    let fft_size = config.fft_size;

    let mut band_bins: Vec<Option<(usize, usize)>> = vec![None; n_bands];
    for k in 1..fft_size / 2 {
        // exact integer form of floor((k*fs/fft_size) / (fs/(2*n_bands)))
        let band = (2 * k * n_bands / fft_size).min(n_bands - 1);
        band_bins[band] = Some(match band_bins[band] {
            None => (k, k),
            Some((lo, _)) => (lo, k),
        });
    }
    let mut resolved = Vec::with_capacity(n_bands);
    for bins in band_bins {
        match bins {
            Some(range) => resolved.push(range),
            None => {
                return Err(Error::TooManyBands {
                    n_bands,
                    fft_size,
                    min_fft: (2 * (n_bands + 1)).next_power_of_two(),
                })
            }
        }
    }

    let width = sample_rate_hz as f64 / (2.0 * n_bands as f64);
    let centre_hz = (0..n_bands).map(|b| (b as f64 + 0.5) * width).collect();

    Ok(BandLayout {
        n_bands,
        sample_rate_hz,
        fft_size,
        band_bins: resolved,
        centre_hz,
    })
}

/// Hann analysis window for one frame.
///
/// Voiced frames get `voiced_periods` pitch periods, unvoiced frames the
/// fixed `unvoiced_window_ms` length. The length is forced odd so the window
/// centres on the analysis instant, then capped at the FFT size. The window
/// is scaled so its sample sum is 2, which makes the main-lobe magnitude of
/// a windowed sinusoid equal to its amplitude regardless of window length.
pub fn window_for_frame(
    f0_hz: f64,
    voiced: bool,
    config: &AnalysisConfig,
    sample_rate_hz: u32,
) -> Result<Vec<f64>> {
    let fs = sample_rate_hz as f64;
    let mut len = if voiced {
        if !f0_hz.is_finite() || f0_hz <= 0.0 {
            return Err(Error::InvalidF0(f0_hz));
        }
        (config.voiced_periods as f64 * fs / f0_hz).round() as usize
    } else {
        (config.unvoiced_window_ms * fs / 1000.0).round() as usize
    };
    if len % 2 == 0 {
        len += 1;
    }
    len = len.min(config.fft_size);

    let mut window = hann(len);
    let sum: f64 = window.iter().sum();
    let scale = 2.0 / sum;
    for w in &mut window {
        *w *= scale;
    }
    Ok(window)
}

fn hann(len: usize) -> Vec<f64> {
    if len == 1 {
        return vec![1.0];
    }
    (0..len)
        .map(|n| 0.5 - 0.5 * (2.0 * std::f64::consts::PI * n as f64 / (len - 1) as f64).cos())
        .collect()
}

/// Floored magnitude spectrum of the windowed segment centred at
/// `centre_sample`, over bins `0..=fft_size/2`.
///
/// This is the spectrum the band maxima are drawn from. Out-of-range samples
/// are taken as zero. Every magnitude is floored at `1e-5` times the frame's
/// spectral peak; an all-zero frame floors to `1e-10` everywhere.
pub fn frame_magnitude_spectrum(
    audio: &AudioBuffer,
    centre_sample: i64,
    window: &[f64],
    fft_size: usize,
) -> Vec<f64> {
    floored_magnitude_spectrum(audio, centre_sample, window, &Spectrum::new(fft_size))
}

pub(crate) fn floored_magnitude_spectrum(
    audio: &AudioBuffer,
    centre_sample: i64,
    window: &[f64],
    spectrum: &Spectrum,
) -> Vec<f64> {
    assert!(
        window.len() <= spectrum.size(),
        "window of {} samples exceeds the {}-point FFT",
        window.len(),
        spectrum.size()
    );
    let len = window.len() as i64;
    let start = centre_sample - (len - 1) / 2;
    let n_samples = audio.samples.len() as i64;

    let mut buf = vec![0.0; spectrum.size()];
    for (i, &w) in window.iter().enumerate() {
        let idx = start + i as i64;
        if idx >= 0 && idx < n_samples {
            buf[i] = audio.samples[idx as usize] * w;
        }
    }

    let mut mags = spectrum.magnitude_half(&buf);
    let peak = mags.iter().copied().fold(0.0, f64::max);
    let floor = (RELATIVE_FLOOR * peak).max(ABSOLUTE_FLOOR);
    for m in &mut mags {
        *m = m.max(floor);
    }
    mags
}

/// Per-band bin index of the maximum magnitude.
pub(crate) fn band_argmax(mags: &[f64], layout: &BandLayout) -> Vec<usize> {
    layout
        .band_bins
        .iter()
        .map(|&(lo, hi)| {
            let mut best = lo;
            for k in lo + 1..=hi {
                if mags[k] > mags[best] {
                    best = k;
                }
            }
            best
        })
        .collect()
}

fn extract_frame(mags: &[f64], layout: &BandLayout) -> MsasbFrame {
    let band_max = layout
        .band_bins
        .iter()
        .map(|&(lo, hi)| mags[lo..=hi].iter().copied().fold(f64::MIN, f64::max))
        .collect();
    MsasbFrame {
        dc: mags[0],
        band_max,
        nyquist: mags[layout.fft_size / 2],
    }
}

/// Analyzes one frame: window, DFT magnitude, per-band maxima plus DC and
/// Nyquist anchors.
pub fn analyze_frame(
    audio: &AudioBuffer,
    centre_sample: i64,
    window: &[f64],
    layout: &BandLayout,
) -> MsasbFrame {
    let spectrum = Spectrum::new(layout.fft_size);
    let mags = floored_magnitude_spectrum(audio, centre_sample, window, &spectrum);
    extract_frame(&mags, layout)
}

/// Runs the analysis stage over a whole utterance: one frame per F0 frame,
/// frame `k` centred at sample `round(k * shift * fs / 1000)`.
pub fn analyze(audio: &AudioBuffer, f0: &F0Contour, config: &AnalysisConfig) -> Result<FeatureTrack> {
    if f0.frame_shift_ms != config.frame_shift_ms {
        return Err(Error::FrameShiftMismatch {
            left: f0.frame_shift_ms,
            right: config.frame_shift_ms,
        });
    }
    if audio.is_empty() {
        return Err(Error::AudioTooShort { got: 0, need: 1 });
    }
    audio.validate()?;
    let layout = make_band_layout(config, audio.sample_rate_hz)?;
    let spectrum = Spectrum::new(config.fft_size);
    let shift_samples = config.frame_shift_ms * audio.sample_rate_hz as f64 / 1000.0;

    let frames: Result<Vec<MsasbFrame>> = f0
        .frames
        .par_iter()
        .enumerate()
        .map(|(k, frame)| {
            let window = window_for_frame(frame.f0_hz, frame.voiced, config, audio.sample_rate_hz)?;
            let centre = (k as f64 * shift_samples).round() as i64;
            let mags = floored_magnitude_spectrum(audio, centre, &window, &spectrum);
            Ok(extract_frame(&mags, &layout))
        })
        .collect();

    Ok(FeatureTrack {
        frame_shift_ms: config.frame_shift_ms,
        n_bands: config.n_bands,
        sample_rate_hz: audio.sample_rate_hz,
        log_domain: false,
        frames: frames?,
    })
}
