//! Audio and feature file formats.
//!
//! Three formats live here:
//!
//! * WAV — RIFF/WAVE, mono, 16-bit PCM or 32-bit IEEE float for reading,
//!   16-bit PCM for writing.
//! * MSB1 — the binary feature format holding per-frame sub-band maxima
//!   plus DC and Nyquist anchors (little-endian throughout):
//!   magic `MSB1`, u32 sample rate, f32 frame shift in ms, u32 band count,
//!   u8 log-domain flag, u32 frame count, then `(n_bands + 2)` f32 values
//!   per frame ordered `[dc, band 0 .. band N-1, nyquist]`.
//! * F0 — plain text, one non-negative value per line, `0` meaning unvoiced.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::analysis::MsasbFrame;
use crate::error::{Error, Result};
use crate::pitch::{F0Contour, F0Frame};

/// Mono audio: a sample sequence in `[-1, 1]` plus its sampling rate.
#[derive(Debug, Clone, PartialEq)]
pub struct AudioBuffer {
    pub samples: Vec<f64>,
    pub sample_rate_hz: u32,
}

impl AudioBuffer {
    pub fn new(samples: Vec<f64>, sample_rate_hz: u32) -> Self {
        Self {
            samples,
            sample_rate_hz,
        }
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn duration_s(&self) -> f64 {
        self.samples.len() as f64 / self.sample_rate_hz as f64
    }

    /// Checks the type invariants: positive rate, finite samples.
    pub fn validate(&self) -> Result<()> {
        if self.sample_rate_hz == 0 {
            return Err(Error::InvalidConfig("sample rate must be > 0".into()));
        }
        if let Some(&bad) = self.samples.iter().find(|s| !s.is_finite()) {
            return Err(Error::NonPositiveInput(bad));
        }
        Ok(())
    }
}

/// Per-utterance collection of analysis frames.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureTrack {
    pub frame_shift_ms: f64,
    pub n_bands: usize,
    pub sample_rate_hz: u32,
    pub log_domain: bool,
    pub frames: Vec<MsasbFrame>,
}

impl FeatureTrack {
    /// Natural log of every stored value; marks the track as log-domain.
    pub fn to_log(&self) -> FeatureTrack {
        self.mapped(f64::ln, true)
    }

    /// Exponentiates every stored value; marks the track as linear-domain.
    pub fn to_linear(&self) -> FeatureTrack {
        self.mapped(f64::exp, false)
    }

    fn mapped(&self, f: fn(f64) -> f64, log_domain: bool) -> FeatureTrack {
        FeatureTrack {
            frame_shift_ms: self.frame_shift_ms,
            n_bands: self.n_bands,
            sample_rate_hz: self.sample_rate_hz,
            log_domain,
            frames: self.frames.iter().map(|frame| frame.map(f)).collect(),
        }
    }
}

// ---------------------------------------------------------------------------
// WAV
// ---------------------------------------------------------------------------

const WAVE_FORMAT_PCM: u16 = 1;
const WAVE_FORMAT_IEEE_FLOAT: u16 = 3;

/// Reads a mono 16-bit PCM or 32-bit float WAV file.
///
/// 16-bit samples are scaled by `1/32768`; float samples are taken as-is.
pub fn read_wav(path: impl AsRef<Path>) -> Result<AudioBuffer> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    parse_wav(&bytes)
}

fn parse_wav(bytes: &[u8]) -> Result<AudioBuffer> {
    if bytes.len() < 12 || &bytes[0..4] != b"RIFF" || &bytes[8..12] != b"WAVE" {
        return Err(Error::CorruptHeader(
            "missing RIFF/WAVE signature".to_string(),
        ));
    }

    let mut fmt: Option<(u16, u16, u32, u16)> = None; // format, channels, rate, bits
    let mut data: Option<&[u8]> = None;
    let mut pos = 12;
    while pos + 8 <= bytes.len() {
        let id = &bytes[pos..pos + 4];
        let size = u32::from_le_bytes(bytes[pos + 4..pos + 8].try_into().unwrap()) as usize;
        let body_start = pos + 8;
        let body_end = body_start
            .checked_add(size)
            .filter(|&e| e <= bytes.len())
            .ok_or_else(|| Error::CorruptHeader(format!("chunk overruns file: {id:?}")))?;
        let body = &bytes[body_start..body_end];
        match id {
            b"fmt " => {
                if body.len() < 16 {
                    return Err(Error::CorruptHeader("fmt chunk too small".to_string()));
                }
                let format = u16::from_le_bytes(body[0..2].try_into().unwrap());
                let channels = u16::from_le_bytes(body[2..4].try_into().unwrap());
                let rate = u32::from_le_bytes(body[4..8].try_into().unwrap());
                let bits = u16::from_le_bytes(body[14..16].try_into().unwrap());
                fmt = Some((format, channels, rate, bits));
            }
            b"data" => data = Some(body),
            _ => {} // skip LIST, fact, cue, ...
        }
        // chunks are word-aligned
        pos = body_end + (size & 1);
    }

    let (format, channels, rate, bits) =
        fmt.ok_or_else(|| Error::CorruptHeader("no fmt chunk".to_string()))?;
    let data = data.ok_or_else(|| Error::CorruptHeader("no data chunk".to_string()))?;

    if channels != 1 {
        return Err(Error::UnsupportedFormat(format!(
            "{channels} channels; only mono is supported"
        )));
    }
    if rate == 0 {
        return Err(Error::CorruptHeader("zero sample rate".to_string()));
    }

    let samples = match (format, bits) {
        (WAVE_FORMAT_PCM, 16) => data
            .chunks_exact(2)
            .map(|c| i16::from_le_bytes([c[0], c[1]]) as f64 / 32768.0)
            .collect::<Vec<_>>(),
        (WAVE_FORMAT_IEEE_FLOAT, 32) => {
            let samples: Vec<f64> = data
                .chunks_exact(4)
                .map(|c| f32::from_le_bytes([c[0], c[1], c[2], c[3]]) as f64)
                .collect();
            if samples.iter().any(|s| !s.is_finite()) {
                return Err(Error::CorruptHeader(
                    "non-finite float sample".to_string(),
                ));
            }
            samples
        }
        _ => {
            return Err(Error::UnsupportedFormat(format!(
                "format tag {format} with {bits} bits per sample"
            )))
        }
    };

    Ok(AudioBuffer::new(samples, rate))
}

/// Writes a mono 16-bit PCM WAV file.
///
/// Samples are clipped to `[-1, 1]`, scaled to the 16-bit range and rounded
/// to nearest, so `read_wav(write_wav(b))` recovers every in-range sample
/// within `1/32768`.
pub fn write_wav(buffer: &AudioBuffer, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    buffer.validate()?;
    let data_len = buffer.samples.len() * 2;

    let mut out = Vec::with_capacity(44 + data_len);
    out.extend_from_slice(b"RIFF");
    out.extend_from_slice(&(36 + data_len as u32).to_le_bytes());
    out.extend_from_slice(b"WAVE");
    out.extend_from_slice(b"fmt ");
    out.extend_from_slice(&16u32.to_le_bytes());
    out.extend_from_slice(&WAVE_FORMAT_PCM.to_le_bytes());
    out.extend_from_slice(&1u16.to_le_bytes()); // channels
    out.extend_from_slice(&buffer.sample_rate_hz.to_le_bytes());
    out.extend_from_slice(&(buffer.sample_rate_hz * 2).to_le_bytes()); // byte rate
    out.extend_from_slice(&2u16.to_le_bytes()); // block align
    out.extend_from_slice(&16u16.to_le_bytes()); // bits per sample
    out.extend_from_slice(b"data");
    out.extend_from_slice(&(data_len as u32).to_le_bytes());
    for &s in &buffer.samples {
        out.extend_from_slice(&sample_to_i16(s).to_le_bytes());
    }

    fs::write(path, out).map_err(|e| Error::io(path, e))
}

fn sample_to_i16(s: f64) -> i16 {
    let clipped = s.clamp(-1.0, 1.0);
    (clipped * 32768.0).round().clamp(-32768.0, 32767.0) as i16
}

// ---------------------------------------------------------------------------
// MSB1 feature format
// ---------------------------------------------------------------------------

const FEATURE_MAGIC: &[u8; 4] = b"MSB1";

/// Serializes a feature track in the MSB1 layout.
pub fn write_features(track: &FeatureTrack, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let values_per_frame = track.n_bands + 2;
    let mut out = Vec::with_capacity(21 + track.frames.len() * values_per_frame * 4);
    out.extend_from_slice(FEATURE_MAGIC);
    out.extend_from_slice(&track.sample_rate_hz.to_le_bytes());
    out.extend_from_slice(&(track.frame_shift_ms as f32).to_le_bytes());
    out.extend_from_slice(&(track.n_bands as u32).to_le_bytes());
    out.push(track.log_domain as u8);
    out.extend_from_slice(&(track.frames.len() as u32).to_le_bytes());
    for frame in &track.frames {
        debug_assert_eq!(frame.band_max.len(), track.n_bands);
        for v in frame.values() {
            out.extend_from_slice(&(v as f32).to_le_bytes());
        }
    }
    fs::write(path, out).map_err(|e| Error::io(path, e))
}

/// Reads a feature track from the MSB1 layout.
pub fn read_features(path: impl AsRef<Path>) -> Result<FeatureTrack> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    parse_features(&bytes)
}

fn parse_features(bytes: &[u8]) -> Result<FeatureTrack> {
    if bytes.len() < 4 {
        return Err(Error::TruncatedFile(format!(
            "{} bytes, header needs 21",
            bytes.len()
        )));
    }
    if &bytes[0..4] != FEATURE_MAGIC {
        return Err(Error::BadMagic {
            found: bytes[0..4].try_into().unwrap(),
        });
    }
    if bytes.len() < 21 {
        return Err(Error::TruncatedFile(format!(
            "{} bytes, header needs 21",
            bytes.len()
        )));
    }
    let sample_rate_hz = u32::from_le_bytes(bytes[4..8].try_into().unwrap());
    let frame_shift_ms = f32::from_le_bytes(bytes[8..12].try_into().unwrap()) as f64;
    let n_bands = u32::from_le_bytes(bytes[12..16].try_into().unwrap()) as usize;
    let log_domain = bytes[16] != 0;
    let n_frames = u32::from_le_bytes(bytes[17..21].try_into().unwrap()) as usize;

    let values_per_frame = n_bands + 2;
    let expected = 21 + n_frames * values_per_frame * 4;
    if bytes.len() < expected {
        return Err(Error::TruncatedFile(format!(
            "{} bytes, layout requires {expected}",
            bytes.len()
        )));
    }

    let mut frames = Vec::with_capacity(n_frames);
    let mut pos = 21;
    for _ in 0..n_frames {
        let mut values = Vec::with_capacity(values_per_frame);
        for _ in 0..values_per_frame {
            values.push(f32::from_le_bytes(bytes[pos..pos + 4].try_into().unwrap()) as f64);
            pos += 4;
        }
        frames.push(MsasbFrame::from_values(&values));
    }

    Ok(FeatureTrack {
        frame_shift_ms,
        n_bands,
        sample_rate_hz,
        log_domain,
        frames,
    })
}

// ---------------------------------------------------------------------------
// Text F0 format
// ---------------------------------------------------------------------------

/// Reads a text F0 file: one non-negative value per line, `0` = unvoiced.
///
/// The frame shift is not stored in the file and must be supplied by the
/// caller.
pub fn read_f0(path: impl AsRef<Path>, frame_shift_ms: f64) -> Result<F0Contour> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut frames = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let value: f64 = line.parse().map_err(|_| Error::ParseFailure {
            line: idx + 1,
            text: line.to_string(),
        })?;
        if !value.is_finite() {
            return Err(Error::ParseFailure {
                line: idx + 1,
                text: line.to_string(),
            });
        }
        if value < 0.0 {
            return Err(Error::NegativeF0 {
                line: idx + 1,
                value,
            });
        }
        frames.push(F0Frame {
            f0_hz: value,
            voiced: value > 0.0,
        });
    }
    Ok(F0Contour {
        frame_shift_ms,
        frames,
    })
}

/// Writes a text F0 file, one value per line.
pub fn write_f0(contour: &F0Contour, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    for frame in &contour.frames {
        writeln!(w, "{}", frame.f0_hz).map_err(|e| Error::io(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}
