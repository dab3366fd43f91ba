//! Thin wrapper around rustfft used by the analysis, envelope and metrics
//! stages. All transforms are complex-to-complex; the magnitude helper keeps
//! only the non-redundant half of the spectrum of a real signal.

use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};
use std::sync::Arc;

/// Forward/inverse FFT pair of a fixed size.
pub(crate) struct Spectrum {
    size: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl Spectrum {
    pub fn new(size: usize) -> Self {
        let mut planner = FftPlanner::new();
        Self {
            size,
            forward: planner.plan_fft_forward(size),
            inverse: planner.plan_fft_inverse(size),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Magnitude spectrum of a real signal over bins `0..=size/2`.
    /// The input is zero-padded (or truncated) to the FFT size.
    pub fn magnitude_half(&self, samples: &[f64]) -> Vec<f64> {
        let mut buf = vec![Complex::new(0.0, 0.0); self.size];
        for (slot, &s) in buf.iter_mut().zip(samples.iter()) {
            slot.re = s;
        }
        self.forward.process(&mut buf);
        buf[..=self.size / 2].iter().map(|c| c.norm()).collect()
    }

    /// In-place forward transform, unnormalized.
    pub fn forward(&self, buf: &mut [Complex<f64>]) {
        debug_assert_eq!(buf.len(), self.size);
        self.forward.process(buf);
    }

    /// In-place inverse transform, scaled by `1/size` so that
    /// `inverse(forward(x)) == x`.
    pub fn inverse(&self, buf: &mut [Complex<f64>]) {
        debug_assert_eq!(buf.len(), self.size);
        self.inverse.process(buf);
        let scale = 1.0 / self.size as f64;
        for c in buf.iter_mut() {
            *c *= scale;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forward_inverse_round_trip() {
        let spec = Spectrum::new(64);
        let original: Vec<Complex<f64>> = (0..64)
            .map(|i| Complex::new((i as f64 * 0.3).sin(), (i as f64 * 0.7).cos()))
            .collect();
        let mut buf = original.clone();
        spec.forward(&mut buf);
        spec.inverse(&mut buf);
        for (a, b) in buf.iter().zip(original.iter()) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn magnitude_of_unit_impulse_is_flat() {
        let spec = Spectrum::new(32);
        let mut x = vec![0.0; 32];
        x[0] = 1.0;
        let mags = spec.magnitude_half(&x);
        assert_eq!(mags.len(), 17);
        for m in mags {
            assert!((m - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn magnitude_of_sinusoid_peaks_at_its_bin() {
        // Bin-exact sinusoid: amplitude A over N samples gives |X[k]| = A*N/2.
        let n = 128;
        let spec = Spectrum::new(n);
        let amp = 0.7;
        let k0 = 9;
        let x: Vec<f64> = (0..n)
            .map(|i| amp * (2.0 * std::f64::consts::PI * k0 as f64 * i as f64 / n as f64).sin())
            .collect();
        let mags = spec.magnitude_half(&x);
        assert!((mags[k0] - amp * n as f64 / 2.0).abs() < 1e-9);
        assert!(mags[k0 + 3] < 1e-9);
    }
}
