/*
 * (C) Copyright 2026 ofdmid contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#ifndef OFDMID_OFDMID_H
#define OFDMID_OFDMID_H

#include <stddef.h>
#include <stdint.h>

#if defined(OFDMID_BUILDING_LIBRARY)
#define OFDMID_API __attribute__((visibility("default")))
#else
#define OFDMID_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. CONFIG and RUNTIME match the CLI exit codes 1 and 2. */
typedef enum ofdmid_status {
  OFDMID_OK = 0,
  OFDMID_E_CONFIG = 1,  /* invalid parameters or configuration */
  OFDMID_E_RUNTIME = 2, /* numerical failure */
  OFDMID_E_IO = 3,      /* file could not be read or written */
  OFDMID_E_ARG = 4      /* null handle or pointer */
} ofdmid_status;

typedef struct ofdmid_signal ofdmid_signal;
typedef struct ofdmid_sweep ofdmid_sweep;

typedef struct ofdmid_decision {
  double statistic;
  double threshold;
  int dof;
  int single_carrier; /* 1 when Gaussianity is rejected */
  int kn;
  double covariance_condition;
  uint64_t n_samples;
  int has_imag_statistic;
  double imag_statistic;
} ofdmid_decision;

typedef struct ofdmid_sweep_row {
  double snr_db;
  const char* modulation; /* valid while the sweep handle lives */
  int order;
  int n_symbols;
  double alpha;
  int m_lags;
  int trials;
  double p_reject;
  double ci_lo;
  double ci_hi;
} ofdmid_sweep_row;

OFDMID_API const char* ofdmid_version(void);

/* Message for the last failing call on this thread; "" after success. */
OFDMID_API const char* ofdmid_last_error(void);

/* Synthesizes one received record from a JSON request (modulation, order,
 * n_symbols, seed, channel, impairments, ofdm, sc). */
OFDMID_API ofdmid_status ofdmid_signal_synth(const char* request_json, ofdmid_signal** out);
OFDMID_API ofdmid_status ofdmid_signal_from_iq(const float* iq, size_t n_samples,
                                               double sample_rate, ofdmid_signal** out);
OFDMID_API ofdmid_status ofdmid_signal_read(const char* path, ofdmid_signal** out);
/* Writes cf32 little-endian samples plus the "<path>.meta.json" sidecar. */
OFDMID_API ofdmid_status ofdmid_signal_write(const ofdmid_signal* sig, const char* path);
OFDMID_API size_t ofdmid_signal_length(const ofdmid_signal* sig);
OFDMID_API double ofdmid_signal_sample_rate(const ofdmid_signal* sig);
/* Copies min(capacity, length) samples as interleaved I/Q into iq_out. */
OFDMID_API size_t ofdmid_signal_copy_iq(const ofdmid_signal* sig, float* iq_out, size_t capacity);
OFDMID_API void ofdmid_signal_destroy(ofdmid_signal* sig);

/* Runs the Gaussianity test on the real part. detector_json may be NULL for
 * defaults. record_json, when not NULL, receives a malloc'ed one-line JSON
 * record to be released with ofdmid_string_free. */
OFDMID_API ofdmid_status ofdmid_identify(const ofdmid_signal* sig, const char* detector_json,
                                         ofdmid_decision* out, char** record_json);
OFDMID_API void ofdmid_string_free(char* s);

OFDMID_API ofdmid_status ofdmid_sweep_run(const char* experiment_json, ofdmid_sweep** out);
OFDMID_API size_t ofdmid_sweep_rows(const ofdmid_sweep* sweep);
OFDMID_API ofdmid_status ofdmid_sweep_get_row(const ofdmid_sweep* sweep, size_t index,
                                          ofdmid_sweep_row* out);
/* append != 0 keeps an existing non-empty file and adds rows only. */
OFDMID_API ofdmid_status ofdmid_sweep_write_csv(const ofdmid_sweep* sweep, const char* path,
                                                int append);
OFDMID_API ofdmid_status ofdmid_sweep_write_svg(const ofdmid_sweep* sweep, const char* path,
                                                const char* title);
OFDMID_API void ofdmid_sweep_destroy(ofdmid_sweep* sweep);

#ifdef __cplusplus
}
#endif

#endif /* OFDMID_OFDMID_H */
