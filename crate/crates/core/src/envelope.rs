//! Synthesis-side envelope stage: dense spectral envelope from one frame of
//! sub-band maxima, and the matching minimum-phase impulse response.
//!
//! The frame's values are placed at the band centre frequencies (the true
//! maximum positions are not stored), bracketed by the DC and Nyquist
//! anchors, and interpolated on (frequency, log-magnitude) pairs. Working in
//! the log domain keeps the envelope strictly positive and matches the
//! cepstral processing that follows.

use rustfft::num_complex::Complex;

use crate::analysis::{BandLayout, MsasbFrame};
use crate::error::{Error, Result};
use crate::interp::{linear, CubicSpline};
use crate::spectrum::Spectrum;

/// Dense magnitude envelope on the uniform DFT grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralEnvelope {
    /// One magnitude per bin, `fft_size/2 + 1` of them.
    pub magnitudes: Vec<f64>,
    pub fft_size: usize,
    pub sample_rate_hz: u32,
}

/// Interpolation scheme for envelope reconstruction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InterpMethod {
    Linear,
    Cubic,
}

impl std::fmt::Display for InterpMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InterpMethod::Linear => write!(f, "linear"),
            InterpMethod::Cubic => write!(f, "cubic"),
        }
    }
}

/// Rebuilds the dense envelope from one frame by band-centre interpolation.
///
/// Anchors are `(0, dc)`, `(centre_hz[b], band_max[b])` for every band and
/// `(fs/2, nyquist)`; interpolation runs on log magnitudes and the result is
/// exponentiated, so anchors that fall on grid frequencies are reproduced
/// exactly and the envelope stays strictly positive.
pub fn reconstruct_envelope(
    frame: &MsasbFrame,
    layout: &BandLayout,
    method: InterpMethod,
) -> Result<SpectralEnvelope> {
    if frame.band_max.len() != layout.n_bands {
        return Err(Error::LengthMismatch(format!(
            "frame has {} bands, layout expects {}",
            frame.band_max.len(),
            layout.n_bands
        )));
    }
    for v in frame.values() {
        if !v.is_finite() || v <= 0.0 {
            return Err(Error::NonPositiveInput(v));
        }
    }

    let fs = layout.sample_rate_hz as f64;
    let n_anchors = layout.n_bands + 2;
    let mut xs = Vec::with_capacity(n_anchors);
    let mut ys = Vec::with_capacity(n_anchors);
    xs.push(0.0);
    ys.push(frame.dc.ln());
    for (b, &max) in frame.band_max.iter().enumerate() {
        xs.push(layout.centre_hz[b]);
        ys.push(max.ln());
    }
    xs.push(fs / 2.0);
    ys.push(frame.nyquist.ln());

    let half = layout.fft_size / 2;
    let magnitudes: Vec<f64> = match method {
        InterpMethod::Linear => (0..=half)
            .map(|k| linear(&xs, &ys, layout.bin_hz(k)).exp())
            .collect(),
        InterpMethod::Cubic => {
            let spline = CubicSpline::new(&xs, &ys);
            (0..=half)
                .map(|k| spline.eval(layout.bin_hz(k)).exp())
                .collect()
        }
    };

    Ok(SpectralEnvelope {
        magnitudes,
        fft_size: layout.fft_size,
        sample_rate_hz: layout.sample_rate_hz,
    })
}

/// Minimum-phase impulse response whose magnitude response matches the
/// envelope.
///
/// The real cepstrum of the symmetric log spectrum is folded onto the causal
/// side (doubling quefrencies `1..fft_size/2`), re-transformed, exponentiated
/// and inverted back to time. The result is truncated to `length` samples;
/// with `length == fft_size` the magnitude match is exact up to rounding.
pub fn min_phase_impulse_response(envelope: &SpectralEnvelope, length: usize) -> Result<Vec<f64>> {
    let n = envelope.fft_size;
    let half = n / 2;
    assert!(
        envelope.magnitudes.len() == half + 1,
        "envelope carries {} magnitudes for fft_size {}",
        envelope.magnitudes.len(),
        n
    );
    assert!(length >= 1 && length <= n, "length {length} out of range");
    for (bin, &m) in envelope.magnitudes.iter().enumerate() {
        if !m.is_finite() || m <= 0.0 {
            return Err(Error::NonPositiveEnvelope { bin, value: m });
        }
    }

    let spectrum = Spectrum::new(n);

    // symmetric log spectrum
    let mut buf: Vec<Complex<f64>> = vec![Complex::new(0.0, 0.0); n];
    for (slot, m) in buf.iter_mut().zip(envelope.magnitudes.iter()) {
        slot.re = m.ln();
    }
    for k in 1..half {
        buf[n - k].re = buf[k].re;
    }

    // real cepstrum
    spectrum.inverse(&mut buf);
    let cepstrum: Vec<f64> = buf.iter().map(|c| c.re).collect();

    // fold onto the causal side
    let mut folded = vec![Complex::new(0.0, 0.0); n];
    folded[0].re = cepstrum[0];
    for k in 1..half {
        folded[k].re = 2.0 * cepstrum[k];
    }
    folded[half].re = cepstrum[half];

    // exp of the folded cepstrum's spectrum is the minimum-phase spectrum
    spectrum.forward(&mut folded);
    for c in folded.iter_mut() {
        *c = c.exp();
    }
    spectrum.inverse(&mut folded);

    Ok(folded[..length].iter().map(|c| c.re).collect())
}
