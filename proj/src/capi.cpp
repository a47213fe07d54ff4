/*
 * (C) Copyright 2026 ofdmid contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "ofdmid/ofdmid.h"

#include "ofdmid/config_io.hpp"
#include "ofdmid/error.hpp"
#include "ofdmid/harness.hpp"
#include "ofdmid/iq_file.hpp"
#include "ofdmid/plot.hpp"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

struct ofdmid_signal {
  ofdmid::SampledSignal signal;
  ofdmid::WaveformMetadata meta;
};

struct ofdmid_sweep {
  ofdmid::SweepResult result;
  std::vector<std::string> names;
};

namespace {

thread_local std::string g_last_error;

ofdmid_status fail(ofdmid_status code, const char* what)
{
  g_last_error = what;
  return code;
}

// Maps exceptions from the core onto status codes.
template <class Fn>
ofdmid_status guarded(Fn&& fn)
{
  try {
    fn();
    g_last_error.clear();
    return OFDMID_OK;
  } catch (const ofdmid::ConfigError& e) {
    return fail(OFDMID_E_CONFIG, e.what());
  } catch (const ofdmid::IoError& e) {
    return fail(OFDMID_E_IO, e.what());
  } catch (const ofdmid::NumericalError& e) {
    return fail(OFDMID_E_RUNTIME, e.what());
  } catch (const std::bad_alloc&) {
    return fail(OFDMID_E_RUNTIME, "out of memory");
  } catch (const std::exception& e) {
    return fail(OFDMID_E_RUNTIME, e.what());
  } catch (...) {
    return fail(OFDMID_E_RUNTIME, "unknown error");
  }
}

} // namespace

extern "C" {

const char* ofdmid_version(void)
{
  return "0.1.0";
}

const char* ofdmid_last_error(void)
{
  return g_last_error.c_str();
}

ofdmid_status ofdmid_signal_synth(const char* request_json, ofdmid_signal** out)
{
  if (!request_json || !out)
    return fail(OFDMID_E_ARG, "null argument");
  return guarded([&] {
    const auto req = ofdmid::synth_request_from_json(request_json);
    auto h = std::make_unique<ofdmid_signal>();
    h->signal = ofdmid::synthesize(req);
    h->meta.sample_rate = h->signal.sample_rate;
    h->meta.scheme = ofdmid::to_string(req.modulation);
    h->meta.order = req.order;
    h->meta.n_symbols = req.n_symbols;
    h->meta.seed = req.seed;
    h->meta.label = h->signal.label;
    *out = h.release();
  });
}

ofdmid_status ofdmid_signal_from_iq(const float* iq, size_t n_samples, double sample_rate,
                                    ofdmid_signal** out)
{
  if ((!iq && n_samples) || !out)
    return fail(OFDMID_E_ARG, "null argument");
  return guarded([&] {
    auto h = std::make_unique<ofdmid_signal>();
    h->signal.samples.resize(n_samples);
    for (size_t i = 0; i < n_samples; ++i)
      h->signal.samples[i] = {iq[2 * i], iq[2 * i + 1]};
    h->signal.sample_rate = sample_rate;
    ofdmid::validate(h->signal);
    h->meta.sample_rate = sample_rate;
    *out = h.release();
  });
}

ofdmid_status ofdmid_signal_read(const char* path, ofdmid_signal** out)
{
  if (!path || !out)
    return fail(OFDMID_E_ARG, "null argument");
  return guarded([&] {
    auto h = std::make_unique<ofdmid_signal>();
    h->signal = ofdmid::read_waveform(path, &h->meta);
    *out = h.release();
  });
}

ofdmid_status ofdmid_signal_write(const ofdmid_signal* sig, const char* path)
{
  if (!sig || !path)
    return fail(OFDMID_E_ARG, "null argument");
  return guarded([&] { ofdmid::write_waveform(path, sig->signal, sig->meta); });
}

size_t ofdmid_signal_length(const ofdmid_signal* sig)
{
  return sig ? sig->signal.samples.size() : 0;
}

double ofdmid_signal_sample_rate(const ofdmid_signal* sig)
{
  return sig ? sig->signal.sample_rate : 0.0;
}

size_t ofdmid_signal_copy_iq(const ofdmid_signal* sig, float* iq_out, size_t capacity)
{
  if (!sig || !iq_out)
    return 0;
  const size_t n = std::min(capacity, sig->signal.samples.size());
  for (size_t i = 0; i < n; ++i) {
    iq_out[2 * i] = static_cast<float>(sig->signal.samples[i].real());
    iq_out[2 * i + 1] = static_cast<float>(sig->signal.samples[i].imag());
  }
  return n;
}

void ofdmid_signal_destroy(ofdmid_signal* sig)
{
  delete sig;
}

ofdmid_status ofdmid_identify(const ofdmid_signal* sig, const char* detector_json,
                              ofdmid_decision* out, char** record_json)
{
  if (!sig || !out)
    return fail(OFDMID_E_ARG, "null argument");
  if (record_json)
    *record_json = nullptr;
  return guarded([&] {
    const auto cfg =
        detector_json ? ofdmid::detector_from_json(detector_json) : ofdmid::DetectorConfig{};
    const auto d = ofdmid::identify(sig->signal, cfg);
    out->statistic = d.statistic;
    out->threshold = d.threshold;
    out->dof = d.dof;
    out->single_carrier = d.verdict == ofdmid::Verdict::SingleCarrier;
    out->kn = d.kn;
    out->covariance_condition = d.covariance_condition;
    out->n_samples = d.n_samples;
    out->has_imag_statistic = d.imag_statistic.has_value();
    out->imag_statistic = d.imag_statistic.value_or(0.0);
    if (record_json) {
      const auto line = ofdmid::to_record_line(d);
      char* buf = static_cast<char*>(std::malloc(line.size() + 1));
      if (!buf)
        throw std::bad_alloc();
      std::memcpy(buf, line.c_str(), line.size() + 1);
      *record_json = buf;
    }
  });
}

void ofdmid_string_free(char* s)
{
  std::free(s);
}

ofdmid_status ofdmid_sweep_run(const char* experiment_json, ofdmid_sweep** out)
{
  if (!experiment_json || !out)
    return fail(OFDMID_E_ARG, "null argument");
  return guarded([&] {
    const auto cfg = ofdmid::experiment_from_json(experiment_json);
    auto h = std::make_unique<ofdmid_sweep>();
    h->result = ofdmid::run_experiment(cfg);
    for (const auto& r : h->result.rows)
      h->names.push_back(ofdmid::to_string(r.modulation));
    *out = h.release();
  });
}

size_t ofdmid_sweep_rows(const ofdmid_sweep* sweep)
{
  return sweep ? sweep->result.rows.size() : 0;
}

ofdmid_status ofdmid_sweep_get_row(const ofdmid_sweep* sweep, size_t index, ofdmid_sweep_row* out)
{
  if (!sweep || !out)
    return fail(OFDMID_E_ARG, "null argument");
  if (index >= sweep->result.rows.size())
    return fail(OFDMID_E_ARG, "row index out of range");
  const auto& r = sweep->result.rows[index];
  *out = {r.snr_db, sweep->names[index].c_str(), r.order, r.n_symbols, r.alpha,
          r.m_lags,  r.trials, r.p_reject, r.ci_lo, r.ci_hi};
  g_last_error.clear();
  return OFDMID_OK;
}

ofdmid_status ofdmid_sweep_write_csv(const ofdmid_sweep* sweep, const char* path, int append)
{
  if (!sweep || !path)
    return fail(OFDMID_E_ARG, "null argument");
  return guarded([&] { ofdmid::emit_csv(sweep->result, path, append != 0); });
}

ofdmid_status ofdmid_sweep_write_svg(const ofdmid_sweep* sweep, const char* path,
                                     const char* title)
{
  if (!sweep || !path)
    return fail(OFDMID_E_ARG, "null argument");
  return guarded([&] { ofdmid::write_svg(sweep->result, path, title ? title : ""); });
}

void ofdmid_sweep_destroy(ofdmid_sweep* sweep)
{
  delete sweep;
}

} // extern "C"
