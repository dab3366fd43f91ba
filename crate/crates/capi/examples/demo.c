#include <stdio.h>
#include <stdlib.h>
#include <math.h>
#include "msasb.h"

int main(void) {
    /* 0.5 s of a 200 Hz sine at 16 kHz */
    size_t n = 8000;
    double *samples = malloc(n * sizeof(double));
    for (size_t i = 0; i < n; i++) {
        samples[i] = 0.5 * sin(2.0 * 3.14159265358979 * 200.0 * i / 16000.0);
    }

    MsasbAudio *audio = NULL;
    if (msasb_audio_from_samples(samples, n, 16000, &audio) != MSASB_STATUS_OK) {
        fprintf(stderr, "audio: %s\n", msasb_last_error_message());
        return 1;
    }

    MsasbF0 *f0 = NULL;
    if (msasb_f0_estimate(audio, 5.0, &f0) != MSASB_STATUS_OK) {
        fprintf(stderr, "f0: %s\n", msasb_last_error_message());
        return 1;
    }

    MsasbConfig config = msasb_config_default();
    MsasbTrack *track = NULL;
    if (msasb_track_analyze(audio, f0, &config, &track) != MSASB_STATUS_OK) {
        fprintf(stderr, "analyze: %s\n", msasb_last_error_message());
        return 1;
    }

    MsasbAudio *rendered = NULL;
    if (msasb_synthesize(track, f0, &config, MSASB_INTERP_LINEAR, 0, &rendered) != MSASB_STATUS_OK) {
        fprintf(stderr, "synth: %s\n", msasb_last_error_message());
        return 1;
    }

    printf("frames=%zu bands=%u rendered=%zu samples\n",
           msasb_track_frames(track), msasb_track_bands(track),
           msasb_audio_len(rendered));

    msasb_audio_free(rendered);
    msasb_track_free(track);
    msasb_f0_free(f0);
    msasb_audio_free(audio);
    free(samples);
    return 0;
}
