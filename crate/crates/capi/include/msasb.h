#ifndef MSASB_H
#define MSASB_H

/* This file is generated by cbindgen from msasb-capi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes of every fallible function in this API.
 */
typedef enum MsasbStatus {
  MSASB_STATUS_OK = 0,
  /**
   * File could not be read or written.
   */
  MSASB_STATUS_IO = 1,
  /**
   * File exists but its contents are not in the expected format.
   */
  MSASB_STATUS_FORMAT = 2,
  /**
   * A value violates the preconditions of the operation.
   */
  MSASB_STATUS_INVALID_ARGUMENT = 3,
  /**
   * Two inputs disagree (frame counts, shifts, grids, domains).
   */
  MSASB_STATUS_MISMATCH = 4,
  /**
   * A required pointer was null.
   */
  MSASB_STATUS_NULL_POINTER = 5,
} MsasbStatus;

/**
 * Interpolation scheme for envelope reconstruction.
 */
typedef enum MsasbInterp {
  MSASB_INTERP_LINEAR = 0,
  MSASB_INTERP_CUBIC = 1,
} MsasbInterp;

/**
 * Opaque mono audio buffer.
 */
typedef struct MsasbAudio MsasbAudio;

/**
 * Opaque F0 contour.
 */
typedef struct MsasbF0 MsasbF0;

/**
 * Opaque feature track.
 */
typedef struct MsasbTrack MsasbTrack;

/**
 * Analysis configuration; get defaults from [`msasb_config_default`].
 */
typedef struct MsasbConfig {
  uint32_t n_bands;
  double frame_shift_ms;
  uint32_t fft_size;
  uint32_t voiced_periods;
  double unvoiced_window_ms;
} MsasbConfig;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the most recent failure on this thread, or null if none.
 * The pointer stays valid until the next failing call on the same thread.
 */
const char *msasb_last_error_message(void);

/**
 * Default analysis configuration: 100 bands, 5 ms shift, 1024-point FFT.
 */
struct MsasbConfig msasb_config_default(void);

/**
 * Wraps a caller-provided sample block (copied) into an audio handle.
 *
 * # Safety
 * `samples` must point to `len` readable doubles; `out` must be a valid
 * location for one pointer.
 */
enum MsasbStatus msasb_audio_from_samples(const double *samples,
                                          size_t len,
                                          uint32_t sample_rate_hz,
                                          struct MsasbAudio **out);

/**
 * Reads a mono WAV file (16-bit PCM or 32-bit float).
 *
 * # Safety
 * `path` must be a NUL-terminated string; `out` must be valid.
 */
enum MsasbStatus msasb_audio_read_wav(const char *path, struct MsasbAudio **out);

/**
 * Writes a 16-bit PCM mono WAV file.
 *
 * # Safety
 * `audio` must be a live handle; `path` a NUL-terminated string.
 */
enum MsasbStatus msasb_audio_write_wav(const struct MsasbAudio *audio, const char *path);

/**
 * Number of samples, or 0 for a null handle.
 *
 * # Safety
 * `audio` must be null or a live handle.
 */
size_t msasb_audio_len(const struct MsasbAudio *audio);

/**
 * Sampling rate in Hz, or 0 for a null handle.
 *
 * # Safety
 * `audio` must be null or a live handle.
 */
uint32_t msasb_audio_sample_rate(const struct MsasbAudio *audio);

/**
 * Copies the samples into a caller buffer of `capacity` doubles.
 *
 * # Safety
 * `audio` must be a live handle; `out` must hold `capacity` doubles.
 */
enum MsasbStatus msasb_audio_copy_samples(const struct MsasbAudio *audio,
                                          double *out,
                                          size_t capacity);

/**
 * Releases an audio handle; null is a no-op.
 *
 * # Safety
 * `audio` must be null or a pointer obtained from this API, not yet freed.
 */
void msasb_audio_free(struct MsasbAudio *audio);

/**
 * Estimates an F0 contour from audio at the given frame shift.
 *
 * # Safety
 * `audio` must be a live handle; `out` must be valid.
 */
enum MsasbStatus msasb_f0_estimate(const struct MsasbAudio *audio,
                                   double frame_shift_ms,
                                   struct MsasbF0 **out);

/**
 * Reads a text F0 file (one value per line, 0 = unvoiced).
 *
 * # Safety
 * `path` must be NUL-terminated; `out` must be valid.
 */
enum MsasbStatus msasb_f0_read(const char *path, double frame_shift_ms, struct MsasbF0 **out);

/**
 * Writes a text F0 file.
 *
 * # Safety
 * `f0` must be a live handle; `path` NUL-terminated.
 */
enum MsasbStatus msasb_f0_write(const struct MsasbF0 *f0, const char *path);

/**
 * Number of frames in the contour, or 0 for a null handle.
 *
 * # Safety
 * `f0` must be null or a live handle.
 */
size_t msasb_f0_len(const struct MsasbF0 *f0);

/**
 * Copies per-frame F0 values (0 where unvoiced) into a caller buffer.
 *
 * # Safety
 * `f0` must be a live handle; `out` must hold `capacity` doubles.
 */
enum MsasbStatus msasb_f0_values(const struct MsasbF0 *f0, double *out, size_t capacity);

/**
 * Releases an F0 handle; null is a no-op.
 *
 * # Safety
 * `f0` must be null or a pointer obtained from this API, not yet freed.
 */
void msasb_f0_free(struct MsasbF0 *f0);

/**
 * Runs the analysis stage: sub-band maxima plus DC/Nyquist per frame.
 *
 * # Safety
 * `audio` and `f0` must be live handles; `config` and `out` valid pointers.
 */
enum MsasbStatus msasb_track_analyze(const struct MsasbAudio *audio,
                                     const struct MsasbF0 *f0,
                                     const struct MsasbConfig *config,
                                     struct MsasbTrack **out);

/**
 * Reads an MSB1 feature file.
 *
 * # Safety
 * `path` must be NUL-terminated; `out` valid.
 */
enum MsasbStatus msasb_track_read(const char *path, struct MsasbTrack **out);

/**
 * Writes an MSB1 feature file.
 *
 * # Safety
 * `track` must be a live handle; `path` NUL-terminated.
 */
enum MsasbStatus msasb_track_write(const struct MsasbTrack *track, const char *path);

/**
 * Number of frames, or 0 for a null handle.
 *
 * # Safety
 * `track` must be null or a live handle.
 */
size_t msasb_track_frames(const struct MsasbTrack *track);

/**
 * Number of bands, or 0 for a null handle.
 *
 * # Safety
 * `track` must be null or a live handle.
 */
uint32_t msasb_track_bands(const struct MsasbTrack *track);

/**
 * Whether the stored values are natural logs; 0 also for a null handle.
 *
 * # Safety
 * `track` must be null or a live handle.
 */
bool msasb_track_is_log_domain(const struct MsasbTrack *track);

/**
 * Copies one frame's `n_bands + 2` values `[dc, bands.., nyquist]` into a
 * caller buffer.
 *
 * # Safety
 * `track` must be a live handle; `out` must hold `capacity` doubles.
 */
enum MsasbStatus msasb_track_frame_values(const struct MsasbTrack *track,
                                          size_t frame,
                                          double *out,
                                          size_t capacity);

/**
 * Releases a track handle; null is a no-op.
 *
 * # Safety
 * `track` must be null or a pointer obtained from this API, not yet freed.
 */
void msasb_track_free(struct MsasbTrack *track);

/**
 * Renders audio from a feature track and an F0 contour. Log-domain tracks
 * are exponentiated on the fly.
 *
 * # Safety
 * `track` and `f0` must be live handles; `config` and `out` valid pointers.
 */
enum MsasbStatus msasb_synthesize(const struct MsasbTrack *track,
                                  const struct MsasbF0 *f0,
                                  const struct MsasbConfig *config,
                                  enum MsasbInterp interp,
                                  uint64_t seed,
                                  struct MsasbAudio **out);

/**
 * Analysis-by-synthesis round trip on an audio handle.
 *
 * # Safety
 * `audio` must be a live handle; `config` and `out` valid pointers.
 */
enum MsasbStatus msasb_copy_synth(const struct MsasbAudio *audio,
                                  const struct MsasbConfig *config,
                                  enum MsasbInterp interp,
                                  uint64_t seed,
                                  struct MsasbAudio **out);

/**
 * Mean log-spectral distortion of the reconstruction, in dB.
 *
 * # Safety
 * `audio` must be a live handle; `config` and `out_mean_lsd_db` valid.
 */
enum MsasbStatus msasb_envelope_fidelity(const struct MsasbAudio *audio,
                                         const struct MsasbConfig *config,
                                         enum MsasbInterp interp,
                                         double *out_mean_lsd_db);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MSASB_H */
