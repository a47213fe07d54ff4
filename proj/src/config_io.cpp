/*
 * (C) Copyright 2026 ofdmid contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "ofdmid/config_io.hpp"

#include "ofdmid/error.hpp"

#include "json.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace ofdmid {
namespace {

using nlohmann::json;

// Reads fields from one JSON object and tracks which keys were consumed.
class Reader {
public:
  Reader(const json& j, std::string where) : j_(j), where_(std::move(where))
  {
    if (!j_.is_object())
      throw ConfigError(where_ + ": expected a JSON object");
  }

  template <class T>
  void get(const char* key, T& out)
  {
    seen_.insert(key);
    if (!j_.contains(key))
      return;
    try {
      out = j_.at(key).get<T>();
    } catch (const json::exception& e) {
      throw ConfigError(path(key) + ": " + e.what());
    }
  }

  void get_double(const char* key, double& out)
  {
    seen_.insert(key);
    if (j_.contains(key))
      out = as_double(j_.at(key), path(key));
  }

  void get_double_list(const char* key, std::vector<double>& out)
  {
    seen_.insert(key);
    if (!j_.contains(key))
      return;
    const auto& v = j_.at(key);
    if (!v.is_array())
      throw ConfigError(path(key) + ": expected an array");
    out.clear();
    for (const auto& e : v)
      out.push_back(as_double(e, path(key)));
  }

  const json* child(const char* key)
  {
    seen_.insert(key);
    return j_.contains(key) ? &j_.at(key) : nullptr;
  }

  std::string path(const char* key) const { return where_ + "." + key; }

  void finish() const
  {
    for (const auto& [k, v] : j_.items())
      if (!seen_.count(k))
        throw ConfigError(where_ + ": unknown key '" + k + "'");
  }

private:
  static double as_double(const json& v, const std::string& where)
  {
    if (v.is_number())
      return v.get<double>();
    if (v.is_string()) {
      const auto s = v.get<std::string>();
      if (s == "inf" || s == "+inf")
        return std::numeric_limits<double>::infinity();
      if (s == "-inf")
        return -std::numeric_limits<double>::infinity();
    }
    throw ConfigError(where + ": expected a number");
  }

  const json& j_;
  std::string where_;
  std::set<std::string> seen_;
};

json number(double v)
{
  if (std::isinf(v))
    return v > 0 ? "inf" : "-inf";
  return v;
}

json parse(std::string_view text)
{
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
}

template <class E, class ParseFn>
void get_enum(Reader& r, const char* key, E& out, ParseFn parse_fn)
{
  std::string s;
  r.get(key, s);
  if (!s.empty())
    out = parse_fn(s);
}

void read_channel(const json& j, ChannelProfile& c)
{
  Reader r(j, "channel");
  r.get("tap_delays_samples", c.tap_delays_samples);
  r.get_double_list("tap_power_profile", c.tap_power_profile);
  get_enum(r, "fading", c.fading, parse_fading);
  r.get("coherence_samples", c.coherence_samples);
  r.finish();
}

json write_channel(const ChannelProfile& c)
{
  return {{"tap_delays_samples", c.tap_delays_samples},
          {"tap_power_profile", c.tap_power_profile},
          {"fading", to_string(c.fading)},
          {"coherence_samples", c.coherence_samples}};
}

void read_impairments(const json& j, ImpairmentConfig& m, bool allow_seed)
{
  Reader r(j, "impairments");
  r.get_double("cfo_normalized", m.cfo_normalized);
  r.get_double("phase_offset_rad", m.phase_offset_rad);
  r.get_double("phase_walk_std", m.phase_walk_std);
  r.get_double("snr_db", m.snr_db);
  if (allow_seed)
    r.get("seed", m.seed);
  r.finish();
}

json write_impairments(const ImpairmentConfig& m)
{
  return {{"cfo_normalized", m.cfo_normalized},
          {"phase_offset_rad", m.phase_offset_rad},
          {"phase_walk_std", m.phase_walk_std},
          {"snr_db", number(m.snr_db)}};
}

void read_detector(const json& j, DetectorConfig& d)
{
  Reader r(j, "detector");
  r.get_double("significance", d.significance);
  r.get("M", d.max_lag);
  if (const json* kn = r.child("K_N"); kn && !kn->is_null()) {
    if (!kn->is_number_integer())
      throw ConfigError("detector.K_N: expected an integer or null");
    d.kn = kn->get<int>();
  }
  r.get_double("kn_rel_tol", d.kn_rel_tol);
  r.get_double("pinv_rel_tol", d.pinv_rel_tol);
  get_enum(r, "covariance_source", d.covariance_source, parse_moment_source);
  r.get("imag_diagnostic", d.imag_diagnostic);
  r.finish();
}

json write_detector(const DetectorConfig& d)
{
  json j{{"significance", d.significance},
         {"M", d.max_lag},
         {"K_N", nullptr},
         {"kn_rel_tol", d.kn_rel_tol},
         {"pinv_rel_tol", d.pinv_rel_tol},
         {"covariance_source", to_string(d.covariance_source)},
         {"imag_diagnostic", d.imag_diagnostic}};
  if (d.kn)
    j["K_N"] = *d.kn;
  return j;
}

// Order, n_symbols and seed are owned by the enclosing config.
void read_ofdm(const json& j, OfdmConfig& o)
{
  Reader r(j, "ofdm");
  r.get("active_carriers", o.active_carriers);
  r.get("idft_size", o.idft_size);
  r.get("data_duration_samples", o.data_duration_samples);
  r.get_double("cp_fraction", o.cp_fraction);
  get_enum(r, "subcarrier_modulation", o.subcarrier_modulation, parse_modulation_scheme);
  r.get_double("sample_rate", o.sample_rate);
  r.finish();
}

json write_ofdm(const OfdmConfig& o)
{
  return {{"active_carriers", o.active_carriers},
          {"idft_size", o.idft_size},
          {"data_duration_samples", o.data_duration_samples},
          {"cp_fraction", o.cp_fraction},
          {"subcarrier_modulation", to_string(o.subcarrier_modulation)},
          {"sample_rate", o.sample_rate}};
}

void read_sc(const json& j, ScConfig& s)
{
  Reader r(j, "sc");
  r.get("samples_per_symbol", s.samples_per_symbol);
  r.get_double("rrc_rolloff", s.rrc_rolloff);
  r.get("rrc_span_symbols", s.rrc_span_symbols);
  if (const json* f = r.child("fsk_tone_spacing"); f && !f->is_null()) {
    if (!f->is_number())
      throw ConfigError("sc.fsk_tone_spacing: expected a number or null");
    s.fsk_tone_spacing = f->get<double>();
  }
  r.get_double("sample_rate", s.sample_rate);
  r.finish();
}

json write_sc(const ScConfig& s)
{
  json j{{"samples_per_symbol", s.samples_per_symbol},
         {"rrc_rolloff", s.rrc_rolloff},
         {"rrc_span_symbols", s.rrc_span_symbols},
         {"fsk_tone_spacing", nullptr},
         {"sample_rate", s.sample_rate}};
  if (s.fsk_tone_spacing)
    j["fsk_tone_spacing"] = *s.fsk_tone_spacing;
  return j;
}

} // namespace

ExperimentConfig experiment_from_json(std::string_view text)
{
  const json j = parse(text);
  ExperimentConfig cfg;
  Reader r(j, "experiment");
  get_enum(r, "modulation", cfg.modulation, parse_modulation);
  r.get("order", cfg.order);
  r.get("n_symbols", cfg.n_symbols);
  r.get_double_list("snr_grid_db", cfg.snr_grid_db);
  r.get("order_grid", cfg.order_grid);
  r.get("n_symbols_grid", cfg.n_symbols_grid);
  r.get("m_lags_grid", cfg.m_lags_grid);
  if (const json* c = r.child("channel"))
    read_channel(*c, cfg.channel);
  if (const json* c = r.child("impairments"))
    read_impairments(*c, cfg.impairments, false);
  if (const json* c = r.child("detector"))
    read_detector(*c, cfg.detector);
  if (const json* c = r.child("ofdm"))
    read_ofdm(*c, cfg.ofdm);
  if (const json* c = r.child("sc"))
    read_sc(*c, cfg.sc);
  r.get("trials", cfg.trials);
  r.get("master_seed", cfg.master_seed);
  r.get("threads", cfg.threads);
  r.finish();
  validate(cfg);
  return cfg;
}

std::string to_json(const ExperimentConfig& cfg)
{
  json snr = json::array();
  for (double s : cfg.snr_grid_db)
    snr.push_back(number(s));
  const json j{{"modulation", to_string(cfg.modulation)},
               {"order", cfg.order},
               {"n_symbols", cfg.n_symbols},
               {"snr_grid_db", snr},
               {"order_grid", cfg.order_grid},
               {"n_symbols_grid", cfg.n_symbols_grid},
               {"m_lags_grid", cfg.m_lags_grid},
               {"channel", write_channel(cfg.channel)},
               {"impairments", write_impairments(cfg.impairments)},
               {"detector", write_detector(cfg.detector)},
               {"ofdm", write_ofdm(cfg.ofdm)},
               {"sc", write_sc(cfg.sc)},
               {"trials", cfg.trials},
               {"master_seed", cfg.master_seed},
               {"threads", cfg.threads}};
  return j.dump(2);
}

SynthRequest synth_request_from_json(std::string_view text)
{
  const json j = parse(text);
  SynthRequest req;
  Reader r(j, "synth");
  get_enum(r, "modulation", req.modulation, parse_modulation);
  r.get("order", req.order);
  r.get("n_symbols", req.n_symbols);
  r.get("seed", req.seed);
  if (const json* c = r.child("channel"))
    read_channel(*c, req.channel);
  if (const json* c = r.child("impairments"))
    read_impairments(*c, req.impairments, false);
  if (const json* c = r.child("ofdm"))
    read_ofdm(*c, req.ofdm);
  if (const json* c = r.child("sc"))
    read_sc(*c, req.sc);
  r.finish();
  validate(req);
  return req;
}

std::string to_json(const SynthRequest& req)
{
  const json j{{"modulation", to_string(req.modulation)},
               {"order", req.order},
               {"n_symbols", req.n_symbols},
               {"seed", req.seed},
               {"channel", write_channel(req.channel)},
               {"impairments", write_impairments(req.impairments)},
               {"ofdm", write_ofdm(req.ofdm)},
               {"sc", write_sc(req.sc)}};
  return j.dump(2);
}

DetectorConfig detector_from_json(std::string_view text)
{
  DetectorConfig d;
  read_detector(parse(text), d);
  validate(d);
  return d;
}

std::string to_json(const DetectorConfig& cfg)
{
  return write_detector(cfg).dump(2);
}

std::string read_text_file(const std::filesystem::path& path)
{
  std::ifstream is(path, std::ios::binary);
  if (!is)
    throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

} // namespace ofdmid
