//! Sub-band maximum spectral amplitude vocoder.
//!
//! The spectral envelope of speech is parametrized by the maximum of the
//! short-time Fourier magnitude spectrum in each of `n_bands` fixed-width
//! sub-bands, plus the magnitudes at DC and Nyquist. Synthesis aligns those
//! maxima to the band centre frequencies, interpolates a dense envelope
//! (linear or cubic, on log magnitudes), converts it to a minimum-phase
//! impulse response via the cepstrum, and filters an impulse/noise excitation
//! with it.
//!
//! The crate is organized along the pipeline:
//!
//! * [`signal_io`] — WAV, the `MSB1` feature format, text F0 files
//! * [`pitch`] — autocorrelation F0 tracking and voicing decisions
//! * [`analysis`] — band layout, pitch-adaptive windowing, sub-band maxima
//! * [`envelope`] — envelope reconstruction and minimum-phase responses
//! * [`synthesis`] — excitation generation, rendering, copy-synthesis
//! * [`metrics`] — log-spectral distortion and the band-count sweep

pub mod analysis;
pub mod envelope;
pub mod error;
pub mod interp;
pub mod metrics;
pub mod pitch;
pub mod signal_io;
mod spectrum;
pub mod synthesis;

pub use analysis::{
    analyze, analyze_frame, frame_magnitude_spectrum, make_band_layout, window_for_frame,
};
pub use analysis::{AnalysisConfig, BandLayout, MsasbFrame};
pub use envelope::{min_phase_impulse_response, reconstruct_envelope};
pub use envelope::{InterpMethod, SpectralEnvelope};
pub use error::{Error, Result};
pub use metrics::{envelope_fidelity, log_spectral_distortion, sweep, DistortionReport};
pub use pitch::{estimate_f0, F0Contour, F0Frame};
pub use signal_io::{
    read_f0, read_features, read_wav, write_f0, write_features, write_wav, AudioBuffer,
    FeatureTrack,
};
pub use synthesis::{build_excitation, copy_synthesis, render, ExcitationPlan};
