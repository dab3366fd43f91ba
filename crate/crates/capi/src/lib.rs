//! C ABI over the vocoder pipeline.
//!
//! Handles (`MsasbAudio`, `MsasbF0`, `MsasbTrack`) are opaque: create them
//! through the constructor functions, free them with the matching `_free`.
//! Every fallible call returns an [`MsasbStatus`]; on failure a
//! human-readable message is kept per thread and can be fetched with
//! [`msasb_last_error_message`] until the next failing call.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::path::Path;
use std::ptr;

use msasb::{AnalysisConfig, AudioBuffer, F0Contour, FeatureTrack, InterpMethod};

/// Result codes of every fallible function in this API.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MsasbStatus {
    Ok = 0,
    /// File could not be read or written.
    Io = 1,
    /// File exists but its contents are not in the expected format.
    Format = 2,
    /// A value violates the preconditions of the operation.
    InvalidArgument = 3,
    /// Two inputs disagree (frame counts, shifts, grids, domains).
    Mismatch = 4,
    /// A required pointer was null.
    NullPointer = 5,
}

/// Interpolation scheme for envelope reconstruction.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MsasbInterp {
    Linear = 0,
    Cubic = 1,
}

impl From<MsasbInterp> for InterpMethod {
    fn from(value: MsasbInterp) -> Self {
        match value {
            MsasbInterp::Linear => InterpMethod::Linear,
            MsasbInterp::Cubic => InterpMethod::Cubic,
        }
    }
}

/// Analysis configuration; get defaults from [`msasb_config_default`].
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct MsasbConfig {
    pub n_bands: u32,
    pub frame_shift_ms: f64,
    pub fft_size: u32,
    pub voiced_periods: u32,
    pub unvoiced_window_ms: f64,
}

impl From<&MsasbConfig> for AnalysisConfig {
    fn from(config: &MsasbConfig) -> Self {
        AnalysisConfig {
            n_bands: config.n_bands as usize,
            frame_shift_ms: config.frame_shift_ms,
            fft_size: config.fft_size as usize,
            voiced_periods: config.voiced_periods as usize,
            unvoiced_window_ms: config.unvoiced_window_ms,
        }
    }
}

/// Opaque mono audio buffer.
pub struct MsasbAudio {
    inner: AudioBuffer,
}

/// Opaque F0 contour.
pub struct MsasbF0 {
    inner: F0Contour,
}

/// Opaque feature track.
pub struct MsasbTrack {
    inner: FeatureTrack,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(error: &msasb::Error) -> MsasbStatus {
    let message = CString::new(error.to_string())
        .unwrap_or_else(|_| CString::new("invalid error text").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(message));
    match error {
        msasb::Error::IoFailure { .. } => MsasbStatus::Io,
        msasb::Error::UnsupportedFormat(_)
        | msasb::Error::CorruptHeader(_)
        | msasb::Error::BadMagic { .. }
        | msasb::Error::TruncatedFile(_)
        | msasb::Error::ParseFailure { .. } => MsasbStatus::Format,
        msasb::Error::NegativeF0 { .. }
        | msasb::Error::AudioTooShort { .. }
        | msasb::Error::TooManyBands { .. }
        | msasb::Error::InvalidF0(_)
        | msasb::Error::NonPositiveInput(_)
        | msasb::Error::NonPositiveEnvelope { .. }
        | msasb::Error::InvalidConfig(_) => MsasbStatus::InvalidArgument,
        msasb::Error::FrameShiftMismatch { .. }
        | msasb::Error::LengthMismatch(_)
        | msasb::Error::FrameCountMismatch { .. }
        | msasb::Error::LogDomainMismatch(_)
        | msasb::Error::GridMismatch(_) => MsasbStatus::Mismatch,
    }
}

fn null_pointer() -> MsasbStatus {
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = Some(CString::new("null pointer argument").unwrap())
    });
    MsasbStatus::NullPointer
}

/// Message of the most recent failure on this thread, or null if none.
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn msasb_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(ptr::null(), |message| message.as_ptr())
    })
}

/// Default analysis configuration: 100 bands, 5 ms shift, 1024-point FFT.
#[no_mangle]
pub extern "C" fn msasb_config_default() -> MsasbConfig {
    let config = AnalysisConfig::default();
    MsasbConfig {
        n_bands: config.n_bands as u32,
        frame_shift_ms: config.frame_shift_ms,
        fft_size: config.fft_size as u32,
        voiced_periods: config.voiced_periods as u32,
        unvoiced_window_ms: config.unvoiced_window_ms,
    }
}

unsafe fn path_from(raw: *const c_char) -> Option<&'static Path> {
    if raw.is_null() {
        return None;
    }
    CStr::from_ptr(raw).to_str().ok().map(Path::new)
}

// ---------------------------------------------------------------------------
// Audio
// ---------------------------------------------------------------------------

/// Wraps a caller-provided sample block (copied) into an audio handle.
///
/// # Safety
/// `samples` must point to `len` readable doubles; `out` must be a valid
/// location for one pointer.
#[no_mangle]
pub unsafe extern "C" fn msasb_audio_from_samples(
    samples: *const f64,
    len: usize,
    sample_rate_hz: u32,
    out: *mut *mut MsasbAudio,
) -> MsasbStatus {
    if samples.is_null() || out.is_null() {
        return null_pointer();
    }
    let slice = std::slice::from_raw_parts(samples, len);
    let buffer = AudioBuffer::new(slice.to_vec(), sample_rate_hz);
    if let Err(e) = buffer.validate() {
        return set_error(&e);
    }
    *out = Box::into_raw(Box::new(MsasbAudio { inner: buffer }));
    MsasbStatus::Ok
}

/// Reads a mono WAV file (16-bit PCM or 32-bit float).
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn msasb_audio_read_wav(
    path: *const c_char,
    out: *mut *mut MsasbAudio,
) -> MsasbStatus {
    let Some(path) = path_from(path) else {
        return null_pointer();
    };
    if out.is_null() {
        return null_pointer();
    }
    match msasb::read_wav(path) {
        Ok(buffer) => {
            *out = Box::into_raw(Box::new(MsasbAudio { inner: buffer }));
            MsasbStatus::Ok
        }
        Err(e) => set_error(&e),
    }
}

/// Writes a 16-bit PCM mono WAV file.
///
/// # Safety
/// `audio` must be a live handle; `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn msasb_audio_write_wav(
    audio: *const MsasbAudio,
    path: *const c_char,
) -> MsasbStatus {
    let Some(path) = path_from(path) else {
        return null_pointer();
    };
    if audio.is_null() {
        return null_pointer();
    }
    match msasb::write_wav(&(*audio).inner, path) {
        Ok(()) => MsasbStatus::Ok,
        Err(e) => set_error(&e),
    }
}

/// Number of samples, or 0 for a null handle.
///
/// # Safety
/// `audio` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn msasb_audio_len(audio: *const MsasbAudio) -> usize {
    if audio.is_null() {
        0
    } else {
        (*audio).inner.len()
    }
}

/// Sampling rate in Hz, or 0 for a null handle.
///
/// # Safety
/// `audio` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn msasb_audio_sample_rate(audio: *const MsasbAudio) -> u32 {
    if audio.is_null() {
        0
    } else {
        (*audio).inner.sample_rate_hz
    }
}

/// Copies the samples into a caller buffer of `capacity` doubles.
///
/// # Safety
/// `audio` must be a live handle; `out` must hold `capacity` doubles.
#[no_mangle]
pub unsafe extern "C" fn msasb_audio_copy_samples(
    audio: *const MsasbAudio,
    out: *mut f64,
    capacity: usize,
) -> MsasbStatus {
    if audio.is_null() || out.is_null() {
        return null_pointer();
    }
    let samples = &(*audio).inner.samples;
    if capacity < samples.len() {
        return set_error(&msasb::Error::LengthMismatch(format!(
            "buffer holds {capacity}, need {}",
            samples.len()
        )));
    }
    std::ptr::copy_nonoverlapping(samples.as_ptr(), out, samples.len());
    MsasbStatus::Ok
}

/// Releases an audio handle; null is a no-op.
///
/// # Safety
/// `audio` must be null or a pointer obtained from this API, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn msasb_audio_free(audio: *mut MsasbAudio) {
    if !audio.is_null() {
        drop(Box::from_raw(audio));
    }
}

// ---------------------------------------------------------------------------
// F0
// ---------------------------------------------------------------------------

/// Estimates an F0 contour from audio at the given frame shift.
///
/// # Safety
/// `audio` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn msasb_f0_estimate(
    audio: *const MsasbAudio,
    frame_shift_ms: f64,
    out: *mut *mut MsasbF0,
) -> MsasbStatus {
    if audio.is_null() || out.is_null() {
        return null_pointer();
    }
    match msasb::estimate_f0(&(*audio).inner, frame_shift_ms) {
        Ok(contour) => {
            *out = Box::into_raw(Box::new(MsasbF0 { inner: contour }));
            MsasbStatus::Ok
        }
        Err(e) => set_error(&e),
    }
}

/// Reads a text F0 file (one value per line, 0 = unvoiced).
///
/// # Safety
/// `path` must be NUL-terminated; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn msasb_f0_read(
    path: *const c_char,
    frame_shift_ms: f64,
    out: *mut *mut MsasbF0,
) -> MsasbStatus {
    let Some(path) = path_from(path) else {
        return null_pointer();
    };
    if out.is_null() {
        return null_pointer();
    }
    match msasb::read_f0(path, frame_shift_ms) {
        Ok(contour) => {
            *out = Box::into_raw(Box::new(MsasbF0 { inner: contour }));
            MsasbStatus::Ok
        }
        Err(e) => set_error(&e),
    }
}

/// Writes a text F0 file.
///
/// # Safety
/// `f0` must be a live handle; `path` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn msasb_f0_write(f0: *const MsasbF0, path: *const c_char) -> MsasbStatus {
    let Some(path) = path_from(path) else {
        return null_pointer();
    };
    if f0.is_null() {
        return null_pointer();
    }
    match msasb::write_f0(&(*f0).inner, path) {
        Ok(()) => MsasbStatus::Ok,
        Err(e) => set_error(&e),
    }
}

/// Number of frames in the contour, or 0 for a null handle.
///
/// # Safety
/// `f0` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn msasb_f0_len(f0: *const MsasbF0) -> usize {
    if f0.is_null() {
        0
    } else {
        (*f0).inner.frames.len()
    }
}

/// Copies per-frame F0 values (0 where unvoiced) into a caller buffer.
///
/// # Safety
/// `f0` must be a live handle; `out` must hold `capacity` doubles.
#[no_mangle]
pub unsafe extern "C" fn msasb_f0_values(
    f0: *const MsasbF0,
    out: *mut f64,
    capacity: usize,
) -> MsasbStatus {
    if f0.is_null() || out.is_null() {
        return null_pointer();
    }
    let frames = &(*f0).inner.frames;
    if capacity < frames.len() {
        return set_error(&msasb::Error::LengthMismatch(format!(
            "buffer holds {capacity}, need {}",
            frames.len()
        )));
    }
    for (i, frame) in frames.iter().enumerate() {
        *out.add(i) = frame.f0_hz;
    }
    MsasbStatus::Ok
}

/// Releases an F0 handle; null is a no-op.
///
/// # Safety
/// `f0` must be null or a pointer obtained from this API, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn msasb_f0_free(f0: *mut MsasbF0) {
    if !f0.is_null() {
        drop(Box::from_raw(f0));
    }
}

// ---------------------------------------------------------------------------
// Feature track
// ---------------------------------------------------------------------------

/// Runs the analysis stage: sub-band maxima plus DC/Nyquist per frame.
///
/// # Safety
/// `audio` and `f0` must be live handles; `config` and `out` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn msasb_track_analyze(
    audio: *const MsasbAudio,
    f0: *const MsasbF0,
    config: *const MsasbConfig,
    out: *mut *mut MsasbTrack,
) -> MsasbStatus {
    if audio.is_null() || f0.is_null() || config.is_null() || out.is_null() {
        return null_pointer();
    }
    let analysis_config = AnalysisConfig::from(&*config);
    match msasb::analyze(&(*audio).inner, &(*f0).inner, &analysis_config) {
        Ok(track) => {
            *out = Box::into_raw(Box::new(MsasbTrack { inner: track }));
            MsasbStatus::Ok
        }
        Err(e) => set_error(&e),
    }
}

/// Reads an MSB1 feature file.
///
/// # Safety
/// `path` must be NUL-terminated; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn msasb_track_read(
    path: *const c_char,
    out: *mut *mut MsasbTrack,
) -> MsasbStatus {
    let Some(path) = path_from(path) else {
        return null_pointer();
    };
    if out.is_null() {
        return null_pointer();
    }
    match msasb::read_features(path) {
        Ok(track) => {
            *out = Box::into_raw(Box::new(MsasbTrack { inner: track }));
            MsasbStatus::Ok
        }
        Err(e) => set_error(&e),
    }
}

/// Writes an MSB1 feature file.
///
/// # Safety
/// `track` must be a live handle; `path` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn msasb_track_write(
    track: *const MsasbTrack,
    path: *const c_char,
) -> MsasbStatus {
    let Some(path) = path_from(path) else {
        return null_pointer();
    };
    if track.is_null() {
        return null_pointer();
    }
    match msasb::write_features(&(*track).inner, path) {
        Ok(()) => MsasbStatus::Ok,
        Err(e) => set_error(&e),
    }
}

/// Number of frames, or 0 for a null handle.
///
/// # Safety
/// `track` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn msasb_track_frames(track: *const MsasbTrack) -> usize {
    if track.is_null() {
        0
    } else {
        (*track).inner.frames.len()
    }
}

/// Number of bands, or 0 for a null handle.
///
/// # Safety
/// `track` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn msasb_track_bands(track: *const MsasbTrack) -> u32 {
    if track.is_null() {
        0
    } else {
        (*track).inner.n_bands as u32
    }
}

/// Whether the stored values are natural logs; 0 also for a null handle.
///
/// # Safety
/// `track` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn msasb_track_is_log_domain(track: *const MsasbTrack) -> bool {
    !track.is_null() && (*track).inner.log_domain
}

/// Copies one frame's `n_bands + 2` values `[dc, bands.., nyquist]` into a
/// caller buffer.
///
/// # Safety
/// `track` must be a live handle; `out` must hold `capacity` doubles.
#[no_mangle]
pub unsafe extern "C" fn msasb_track_frame_values(
    track: *const MsasbTrack,
    frame: usize,
    out: *mut f64,
    capacity: usize,
) -> MsasbStatus {
    if track.is_null() || out.is_null() {
        return null_pointer();
    }
    let inner = &(*track).inner;
    if frame >= inner.frames.len() {
        return set_error(&msasb::Error::LengthMismatch(format!(
            "frame {frame} out of range: track has {}",
            inner.frames.len()
        )));
    }
    let values: Vec<f64> = inner.frames[frame].values().collect();
    if capacity < values.len() {
        return set_error(&msasb::Error::LengthMismatch(format!(
            "buffer holds {capacity}, need {}",
            values.len()
        )));
    }
    std::ptr::copy_nonoverlapping(values.as_ptr(), out, values.len());
    MsasbStatus::Ok
}

/// Releases a track handle; null is a no-op.
///
/// # Safety
/// `track` must be null or a pointer obtained from this API, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn msasb_track_free(track: *mut MsasbTrack) {
    if !track.is_null() {
        drop(Box::from_raw(track));
    }
}

// ---------------------------------------------------------------------------
// Synthesis and metrics
// ---------------------------------------------------------------------------

/// Renders audio from a feature track and an F0 contour. Log-domain tracks
/// are exponentiated on the fly.
///
/// # Safety
/// `track` and `f0` must be live handles; `config` and `out` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn msasb_synthesize(
    track: *const MsasbTrack,
    f0: *const MsasbF0,
    config: *const MsasbConfig,
    interp: MsasbInterp,
    seed: u64,
    out: *mut *mut MsasbAudio,
) -> MsasbStatus {
    if track.is_null() || f0.is_null() || config.is_null() || out.is_null() {
        return null_pointer();
    }
    let inner = &(*track).inner;
    let linear;
    let track_ref = if inner.log_domain {
        linear = inner.to_linear();
        &linear
    } else {
        inner
    };
    let analysis_config = AnalysisConfig {
        n_bands: track_ref.n_bands,
        frame_shift_ms: track_ref.frame_shift_ms,
        ..AnalysisConfig::from(&*config)
    };
    let result = msasb::make_band_layout(&analysis_config, track_ref.sample_rate_hz).and_then(
        |layout| msasb::render(track_ref, &layout, &(*f0).inner, interp.into(), seed),
    );
    match result {
        Ok(audio) => {
            *out = Box::into_raw(Box::new(MsasbAudio { inner: audio }));
            MsasbStatus::Ok
        }
        Err(e) => set_error(&e),
    }
}

/// Analysis-by-synthesis round trip on an audio handle.
///
/// # Safety
/// `audio` must be a live handle; `config` and `out` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn msasb_copy_synth(
    audio: *const MsasbAudio,
    config: *const MsasbConfig,
    interp: MsasbInterp,
    seed: u64,
    out: *mut *mut MsasbAudio,
) -> MsasbStatus {
    if audio.is_null() || config.is_null() || out.is_null() {
        return null_pointer();
    }
    let analysis_config = AnalysisConfig::from(&*config);
    match msasb::copy_synthesis(&(*audio).inner, &analysis_config, interp.into(), seed) {
        Ok(rendered) => {
            *out = Box::into_raw(Box::new(MsasbAudio { inner: rendered }));
            MsasbStatus::Ok
        }
        Err(e) => set_error(&e),
    }
}

/// Mean log-spectral distortion of the reconstruction, in dB.
///
/// # Safety
/// `audio` must be a live handle; `config` and `out_mean_lsd_db` valid.
#[no_mangle]
pub unsafe extern "C" fn msasb_envelope_fidelity(
    audio: *const MsasbAudio,
    config: *const MsasbConfig,
    interp: MsasbInterp,
    out_mean_lsd_db: *mut f64,
) -> MsasbStatus {
    if audio.is_null() || config.is_null() || out_mean_lsd_db.is_null() {
        return null_pointer();
    }
    let analysis_config = AnalysisConfig::from(&*config);
    match msasb::envelope_fidelity(&(*audio).inner, &analysis_config, interp.into()) {
        Ok(report) => {
            *out_mean_lsd_db = report.mean_lsd_db;
            MsasbStatus::Ok
        }
        Err(e) => set_error(&e),
    }
}
