//! Exercises the C ABI through the exported functions.

use std::ffi::{CStr, CString};
use std::ptr;

use msasb_capi::*;

fn sine(freq: f64, fs: u32, seconds: f64) -> Vec<f64> {
    let n = (seconds * fs as f64) as usize;
    (0..n)
        .map(|i| 0.5 * (2.0 * std::f64::consts::PI * freq * i as f64 / fs as f64).sin())
        .collect()
}

#[test]
fn config_default_matches_library_defaults() {
    let config = msasb_config_default();
    assert_eq!(config.n_bands, 100);
    assert_eq!(config.frame_shift_ms, 5.0);
    assert_eq!(config.fft_size, 1024);
    assert_eq!(config.voiced_periods, 3);
    assert_eq!(config.unvoiced_window_ms, 15.0);
}

#[test]
fn audio_round_trip_through_handles() {
    let samples = sine(220.0, 16000, 0.5);
    let mut audio: *mut MsasbAudio = ptr::null_mut();
    unsafe {
        let status = msasb_audio_from_samples(samples.as_ptr(), samples.len(), 16000, &mut audio);
        assert_eq!(status, MsasbStatus::Ok);
        assert_eq!(msasb_audio_len(audio), samples.len());
        assert_eq!(msasb_audio_sample_rate(audio), 16000);

        let mut back = vec![0.0; samples.len()];
        let status = msasb_audio_copy_samples(audio, back.as_mut_ptr(), back.len());
        assert_eq!(status, MsasbStatus::Ok);
        assert_eq!(back, samples);
        msasb_audio_free(audio);
    }
}

#[test]
fn full_pipeline_through_the_c_api() {
    let dir = tempfile::tempdir().unwrap();
    let samples = sine(200.0, 16000, 1.0);
    let config = msasb_config_default();
    unsafe {
        let mut audio: *mut MsasbAudio = ptr::null_mut();
        assert_eq!(
            msasb_audio_from_samples(samples.as_ptr(), samples.len(), 16000, &mut audio),
            MsasbStatus::Ok
        );

        let mut f0: *mut MsasbF0 = ptr::null_mut();
        assert_eq!(msasb_f0_estimate(audio, 5.0, &mut f0), MsasbStatus::Ok);
        assert_eq!(msasb_f0_len(f0), 201);
        let mut f0_values = vec![0.0; 201];
        assert_eq!(
            msasb_f0_values(f0, f0_values.as_mut_ptr(), f0_values.len()),
            MsasbStatus::Ok
        );
        assert!((f0_values[100] - 200.0).abs() < 2.0);

        let mut track: *mut MsasbTrack = ptr::null_mut();
        assert_eq!(
            msasb_track_analyze(audio, f0, &config, &mut track),
            MsasbStatus::Ok
        );
        assert_eq!(msasb_track_frames(track), 201);
        assert_eq!(msasb_track_bands(track), 100);
        assert!(!msasb_track_is_log_domain(track));

        let mut frame = vec![0.0; 102];
        assert_eq!(
            msasb_track_frame_values(track, 100, frame.as_mut_ptr(), frame.len()),
            MsasbStatus::Ok
        );
        assert!(frame.iter().all(|v| *v > 0.0));

        // feature file round trip
        let msb_path = CString::new(
            dir.path().join("t.msb").to_str().unwrap().to_string(),
        )
        .unwrap();
        assert_eq!(msasb_track_write(track, msb_path.as_ptr()), MsasbStatus::Ok);
        let mut track2: *mut MsasbTrack = ptr::null_mut();
        assert_eq!(
            msasb_track_read(msb_path.as_ptr(), &mut track2),
            MsasbStatus::Ok
        );
        assert_eq!(msasb_track_frames(track2), 201);

        // synthesis from the track
        let mut rendered: *mut MsasbAudio = ptr::null_mut();
        assert_eq!(
            msasb_synthesize(track, f0, &config, MsasbInterp::Linear, 1, &mut rendered),
            MsasbStatus::Ok
        );
        assert!(msasb_audio_len(rendered) > samples.len());

        // wav write/read round trip
        let wav_path = CString::new(
            dir.path().join("t.wav").to_str().unwrap().to_string(),
        )
        .unwrap();
        assert_eq!(
            msasb_audio_write_wav(rendered, wav_path.as_ptr()),
            MsasbStatus::Ok
        );
        let mut loaded: *mut MsasbAudio = ptr::null_mut();
        assert_eq!(
            msasb_audio_read_wav(wav_path.as_ptr(), &mut loaded),
            MsasbStatus::Ok
        );
        assert_eq!(msasb_audio_len(loaded), msasb_audio_len(rendered));

        // copy synthesis and fidelity
        let mut copied: *mut MsasbAudio = ptr::null_mut();
        assert_eq!(
            msasb_copy_synth(audio, &config, MsasbInterp::Cubic, 3, &mut copied),
            MsasbStatus::Ok
        );
        let mut lsd = f64::NAN;
        assert_eq!(
            msasb_envelope_fidelity(audio, &config, MsasbInterp::Linear, &mut lsd),
            MsasbStatus::Ok
        );
        assert!(lsd.is_finite() && lsd >= 0.0);

        msasb_audio_free(copied);
        msasb_audio_free(loaded);
        msasb_audio_free(rendered);
        msasb_track_free(track2);
        msasb_track_free(track);
        msasb_f0_free(f0);
        msasb_audio_free(audio);
    }
}

#[test]
fn null_pointers_are_reported() {
    unsafe {
        let status = msasb_audio_from_samples(ptr::null(), 0, 16000, ptr::null_mut());
        assert_eq!(status, MsasbStatus::NullPointer);
        let message = msasb_last_error_message();
        assert!(!message.is_null());
        let text = CStr::from_ptr(message).to_str().unwrap();
        assert!(text.contains("null"), "message: {text}");
    }
}

#[test]
fn missing_file_yields_io_status_and_message() {
    unsafe {
        let path = CString::new("/definitely/not/there.wav").unwrap();
        let mut audio: *mut MsasbAudio = ptr::null_mut();
        let status = msasb_audio_read_wav(path.as_ptr(), &mut audio);
        assert_eq!(status, MsasbStatus::Io);
        let text = CStr::from_ptr(msasb_last_error_message())
            .to_str()
            .unwrap();
        assert!(text.contains("not/there.wav"), "message: {text}");
    }
}

#[test]
fn bad_config_yields_invalid_argument() {
    let samples = sine(200.0, 16000, 1.0);
    let mut config = msasb_config_default();
    config.n_bands = 600; // cannot fit into a 1024-point FFT
    unsafe {
        let mut audio: *mut MsasbAudio = ptr::null_mut();
        assert_eq!(
            msasb_audio_from_samples(samples.as_ptr(), samples.len(), 16000, &mut audio),
            MsasbStatus::Ok
        );
        let mut f0: *mut MsasbF0 = ptr::null_mut();
        assert_eq!(msasb_f0_estimate(audio, 5.0, &mut f0), MsasbStatus::Ok);
        let mut track: *mut MsasbTrack = ptr::null_mut();
        assert_eq!(
            msasb_track_analyze(audio, f0, &config, &mut track),
            MsasbStatus::InvalidArgument
        );
        msasb_f0_free(f0);
        msasb_audio_free(audio);
    }
}

#[test]
fn frame_count_mismatch_yields_mismatch_status() {
    let samples = sine(200.0, 16000, 1.0);
    let config = msasb_config_default();
    unsafe {
        let mut audio: *mut MsasbAudio = ptr::null_mut();
        assert_eq!(
            msasb_audio_from_samples(samples.as_ptr(), samples.len(), 16000, &mut audio),
            MsasbStatus::Ok
        );
        let mut f0: *mut MsasbF0 = ptr::null_mut();
        assert_eq!(msasb_f0_estimate(audio, 5.0, &mut f0), MsasbStatus::Ok);
        let mut track: *mut MsasbTrack = ptr::null_mut();
        assert_eq!(
            msasb_track_analyze(audio, f0, &config, &mut track),
            MsasbStatus::Ok
        );

        // shorter contour for synthesis
        let short = sine(200.0, 16000, 0.5);
        let mut audio2: *mut MsasbAudio = ptr::null_mut();
        assert_eq!(
            msasb_audio_from_samples(short.as_ptr(), short.len(), 16000, &mut audio2),
            MsasbStatus::Ok
        );
        let mut f0_short: *mut MsasbF0 = ptr::null_mut();
        assert_eq!(msasb_f0_estimate(audio2, 5.0, &mut f0_short), MsasbStatus::Ok);

        let mut rendered: *mut MsasbAudio = ptr::null_mut();
        assert_eq!(
            msasb_synthesize(
                track,
                f0_short,
                &config,
                MsasbInterp::Linear,
                0,
                &mut rendered
            ),
            MsasbStatus::Mismatch
        );

        msasb_track_free(track);
        msasb_f0_free(f0_short);
        msasb_f0_free(f0);
        msasb_audio_free(audio2);
        msasb_audio_free(audio);
    }
}

#[test]
fn generated_header_declares_the_api() {
    let header_path = concat!(env!("CARGO_MANIFEST_DIR"), "/include/msasb.h");
    let header = std::fs::read_to_string(header_path).expect("header not generated");
    for symbol in [
        "MSASB_H",
        "typedef struct MsasbAudio MsasbAudio;",
        "typedef struct MsasbF0 MsasbF0;",
        "typedef struct MsasbTrack MsasbTrack;",
        "MsasbStatus",
        "msasb_config_default",
        "msasb_audio_read_wav",
        "msasb_track_analyze",
        "msasb_synthesize",
        "msasb_copy_synth",
        "msasb_envelope_fidelity",
        "msasb_last_error_message",
    ] {
        assert!(header.contains(symbol), "header misses: {symbol}");
    }
}
