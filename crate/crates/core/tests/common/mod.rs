//! Shared fixtures and oracles for the integration and acceptance tests.
//!
//! The FFT here is deliberately independent of the crate's own transform
//! code so that spectrum-level checks do not share an implementation path
//! with what they verify.

#![allow(dead_code)]

use msasb::AudioBuffer;

/// Formant description: (centre frequency Hz, bandwidth Hz).
pub type Formants = [(f64, f64)];

/// Sustained synthetic vowel: a stack of harmonics of `f0` whose amplitudes
/// follow a set of resonance bumps, with a light 5 Hz vibrato so the
/// harmonic comb does not freeze against any analysis grid.
pub fn vowel(f0: f64, formants: &Formants, vibrato: f64, fs: u32, seconds: f64) -> AudioBuffer {
    let n = (seconds * fs as f64).round() as usize;
    let nyquist = fs as f64 / 2.0;
    let mut harmonics = Vec::new();
    let mut h = 1.0;
    while h * f0 * (1.0 + vibrato) < nyquist - 100.0 {
        let freq = h * f0;
        let amp: f64 = formants
            .iter()
            .map(|&(fc, bw)| {
                let d = (freq - fc) / bw;
                1.0 / (1.0 + d * d)
            })
            .sum::<f64>()
            + 0.001;
        harmonics.push((h, amp));
        h += 1.0;
    }
    let mut phase = 0.0f64;
    let samples: Vec<f64> = (0..n)
        .map(|i| {
            let t = i as f64 / fs as f64;
            let inst_f0 = f0 * (1.0 + vibrato * (2.0 * std::f64::consts::PI * 5.0 * t).sin());
            phase += inst_f0 / fs as f64;
            harmonics
                .iter()
                .map(|&(h, amp)| amp * (2.0 * std::f64::consts::PI * h * phase).sin())
                .sum::<f64>()
                * 0.15
        })
        .collect();
    AudioBuffer::new(samples, fs)
}

/// High-pitched open vowel, the first of the three bundled sweep fixtures.
pub fn vowel_a() -> AudioBuffer {
    let formants = [
        (730.0, 45.0),
        (1090.0, 55.0),
        (2440.0, 80.0),
        (3300.0, 120.0),
        (4500.0, 170.0),
        (6300.0, 250.0),
        (7300.0, 300.0),
    ];
    vowel(16000.0 / 36.0, &formants, 0.01, 16000, 1.5)
}

/// High-pitched close front vowel, the second sweep fixture.
pub fn vowel_i() -> AudioBuffer {
    let formants = [
        (270.0, 35.0),
        (2290.0, 60.0),
        (3010.0, 90.0),
        (3900.0, 130.0),
        (4900.0, 180.0),
        (6300.0, 250.0),
        (7300.0, 300.0),
    ];
    vowel(16000.0 / 33.0, &formants, 0.01, 16000, 1.5)
}

/// High-pitched close back vowel, the third sweep fixture.
pub fn vowel_u() -> AudioBuffer {
    let formants = [
        (300.0, 35.0),
        (870.0, 35.0),
        (2240.0, 60.0),
        (3400.0, 90.0),
        (4600.0, 120.0),
        (6300.0, 250.0),
        (7300.0, 300.0),
    ];
    vowel(16000.0 / 36.0, &formants, 0.01, 16000, 1.5)
}

/// Moderate-pitch stationary vowel used for the copy-synthesis round trip.
pub fn vowel_moderate() -> AudioBuffer {
    let formants = [
        (730.0, 90.0),
        (1090.0, 110.0),
        (2440.0, 140.0),
        (3300.0, 180.0),
        (4500.0, 250.0),
    ];
    vowel(200.0, &formants, 0.0, 16000, 1.0)
}

pub fn sine(freq: f64, amp: f64, fs: u32, seconds: f64) -> AudioBuffer {
    let n = (seconds * fs as f64).round() as usize;
    let samples = (0..n)
        .map(|i| amp * (2.0 * std::f64::consts::PI * freq * i as f64 / fs as f64).sin())
        .collect();
    AudioBuffer::new(samples, fs)
}

pub fn white_noise(fs: u32, seconds: f64, seed: u64) -> AudioBuffer {
    let n = (seconds * fs as f64).round() as usize;
    let mut state = seed.max(1);
    let samples = (0..n)
        .map(|_| {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state as f64 / u64::MAX as f64) * 1.6 - 0.8
        })
        .collect();
    AudioBuffer::new(samples, fs)
}

// ---------------------------------------------------------------------------
// Independent spectrum oracle
// ---------------------------------------------------------------------------

/// Iterative radix-2 FFT over interleaved (re, im) pairs.
fn fft_in_place(re: &mut [f64], im: &mut [f64]) {
    let n = re.len();
    assert!(n.is_power_of_two());
    // bit reversal
    let mut j = 0;
    for i in 0..n {
        if i < j {
            re.swap(i, j);
            im.swap(i, j);
        }
        let mut m = n >> 1;
        while m >= 1 && j & m != 0 {
            j ^= m;
            m >>= 1;
        }
        j |= m;
    }
    // butterflies
    let mut len = 2;
    while len <= n {
        let angle = -2.0 * std::f64::consts::PI / len as f64;
        let (w_re, w_im) = (angle.cos(), angle.sin());
        for start in (0..n).step_by(len) {
            let mut cur_re = 1.0;
            let mut cur_im = 0.0;
            for k in 0..len / 2 {
                let a = start + k;
                let b = start + k + len / 2;
                let t_re = cur_re * re[b] - cur_im * im[b];
                let t_im = cur_re * im[b] + cur_im * re[b];
                re[b] = re[a] - t_re;
                im[b] = im[a] - t_im;
                re[a] += t_re;
                im[a] += t_im;
                let next_re = cur_re * w_re - cur_im * w_im;
                cur_im = cur_re * w_im + cur_im * w_re;
                cur_re = next_re;
            }
        }
        len <<= 1;
    }
}

/// Magnitude spectrum of a real block over bins `0..=n/2`, zero-padded.
pub fn magnitude_spectrum(block: &[f64], n: usize) -> Vec<f64> {
    let mut re = vec![0.0; n];
    let mut im = vec![0.0; n];
    re[..block.len().min(n)].copy_from_slice(&block[..block.len().min(n)]);
    fft_in_place(&mut re, &mut im);
    (0..=n / 2).map(|k| (re[k] * re[k] + im[k] * im[k]).sqrt()).collect()
}

/// Long-term average log-magnitude spectrum in dB: 1024-point Hann frames,
/// 256-sample hop, magnitudes averaged per bin before the log.
pub fn average_log_spectrum_db(audio: &AudioBuffer) -> Vec<f64> {
    let n = 1024;
    let hop = 256;
    let hann: Vec<f64> = (0..n)
        .map(|i| 0.5 - 0.5 * (2.0 * std::f64::consts::PI * i as f64 / (n - 1) as f64).cos())
        .collect();
    let mut acc = vec![0.0f64; n / 2 + 1];
    let mut frames = 0usize;
    let mut start = 0;
    while start + n <= audio.samples.len() {
        let block: Vec<f64> = audio.samples[start..start + n]
            .iter()
            .zip(hann.iter())
            .map(|(s, w)| s * w)
            .collect();
        let mags = magnitude_spectrum(&block, n);
        for (a, m) in acc.iter_mut().zip(mags.iter()) {
            *a += m;
        }
        frames += 1;
        start += hop;
    }
    assert!(frames > 0, "signal too short for the spectrum estimate");
    acc.iter()
        .map(|a| 20.0 * (a / frames as f64).max(1e-12).log10())
        .collect()
}

/// RMS of the mean-removed difference of two average log spectra over bins
/// below `limit_hz`; gain-invariant spectral-shape distance in dB.
///
/// Both spectra are clamped to 60 dB below their own peak first, the usual
/// dynamic-range limit that keeps numerically silent bins out of the
/// comparison.
pub fn shape_distance_db(a: &AudioBuffer, b: &AudioBuffer, limit_hz: f64, fs: u32) -> f64 {
    let clamp = |spec: Vec<f64>| -> Vec<f64> {
        let peak = spec.iter().cloned().fold(f64::MIN, f64::max);
        spec.into_iter().map(|v| v.max(peak - 60.0)).collect()
    };
    let la = clamp(average_log_spectrum_db(a));
    let lb = clamp(average_log_spectrum_db(b));
    let max_bin = ((limit_hz / fs as f64) * 1024.0).floor() as usize;
    let diffs: Vec<f64> = (0..=max_bin).map(|k| la[k] - lb[k]).collect();
    let mean = diffs.iter().sum::<f64>() / diffs.len() as f64;
    (diffs.iter().map(|d| (d - mean) * (d - mean)).sum::<f64>() / diffs.len() as f64).sqrt()
}
