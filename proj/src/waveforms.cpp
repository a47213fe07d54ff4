/*
 * (C) Copyright 2026 ofdmid contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "ofdmid/waveforms.hpp"

#include "ofdmid/error.hpp"
#include "ofdmid/rng.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

namespace ofdmid {
namespace {

constexpr double kPi = std::numbers::pi;

bool is_supported_order(int order)
{
  return order >= 2 && order <= 256 && std::has_single_bit(static_cast<unsigned>(order));
}

void require_order(int order)
{
  if (!is_supported_order(order))
    throw ConfigError("modulation order " + std::to_string(order) +
                      " is not a power of two in [2, 256]");
}

void normalize_power(std::vector<cplx>& x)
{
  const double p = mean_power(x);
  if (!(p > 0.0))
    throw NumericalError("generated record has zero power");
  const double g = 1.0 / std::sqrt(p);
  for (auto& v : x)
    v *= g;
}

std::vector<cplx> square_grid(int side)
{
  std::vector<cplx> pts;
  pts.reserve(static_cast<std::size_t>(side) * side);
  for (int i = 0; i < side; ++i)
    for (int q = 0; q < side; ++q)
      pts.emplace_back(2 * i - side + 1, 2 * q - side + 1);
  return pts;
}

std::vector<cplx> rectangle(int nx, int ny)
{
  std::vector<cplx> pts;
  for (int i = 0; i < nx; ++i)
    for (int q = 0; q < ny; ++q)
      pts.emplace_back(2 * i - nx + 1, 2 * q - ny + 1);
  return pts;
}

// Cross constellation for 2^bits points, bits odd and >= 5: a square of side
// 6*2^((bits-5)/2) with a 2^((bits-5)/2) square block removed at each corner.
std::vector<cplx> cross(int bits)
{
  const int block = 1 << ((bits - 5) / 2);
  const int side = 6 * block;
  std::vector<cplx> pts;
  for (int i = 0; i < side; ++i) {
    for (int q = 0; q < side; ++q) {
      const bool corner_i = i < block || i >= side - block;
      const bool corner_q = q < block || q >= side - block;
      if (corner_i && corner_q)
        continue;
      pts.emplace_back(2 * i - side + 1, 2 * q - side + 1);
    }
  }
  return pts;
}

void unit_power(std::vector<cplx>& pts)
{
  double p = 0.0;
  for (const auto& v : pts)
    p += std::norm(v);
  p /= static_cast<double>(pts.size());
  const double g = 1.0 / std::sqrt(p);
  for (auto& v : pts)
    v *= g;
}

} // namespace

std::string to_string(ModulationScheme scheme)
{
  switch (scheme) {
  case ModulationScheme::Psk: return "PSK";
  case ModulationScheme::Fsk: return "FSK";
  case ModulationScheme::Qam: return "QAM";
  }
  return "?";
}

ModulationScheme parse_modulation_scheme(const std::string& text)
{
  std::string t = text;
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::toupper(c); });
  if (t == "PSK") return ModulationScheme::Psk;
  if (t == "FSK") return ModulationScheme::Fsk;
  if (t == "QAM") return ModulationScheme::Qam;
  throw ConfigError("unknown modulation scheme '" + text + "'");
}

int OfdmConfig::cp_samples() const
{
  return static_cast<int>(std::lround(cp_fraction * data_duration_samples));
}

double ScConfig::tone_spacing() const
{
  return fsk_tone_spacing.value_or(1.0 / (2.0 * samples_per_symbol));
}

void validate(const OfdmConfig& cfg)
{
  if (cfg.active_carriers < 1)
    throw ConfigError("active_carriers must be >= 1");
  if (cfg.idft_size <= cfg.active_carriers)
    throw ConfigError("idft_size must exceed active_carriers (the DC bin stays empty)");
  if (cfg.data_duration_samples != cfg.idft_size)
    throw ConfigError("data_duration_samples must equal idft_size");
  if (!(cfg.cp_fraction > 0.0 && cfg.cp_fraction <= 1.0))
    throw ConfigError("cp_fraction must lie in (0, 1]");
  if (cfg.subcarrier_modulation == ModulationScheme::Fsk)
    throw ConfigError("OFDM subcarriers must use PSK or QAM");
  require_order(cfg.modulation_order);
  if (cfg.n_symbols < 1)
    throw ConfigError("n_symbols must be >= 1");
}

void validate(const ScConfig& cfg)
{
  require_order(cfg.modulation_order);
  if (cfg.samples_per_symbol < 2)
    throw ConfigError("samples_per_symbol must be >= 2");
  if (!(cfg.rrc_rolloff >= 0.0 && cfg.rrc_rolloff <= 1.0))
    throw ConfigError("rrc_rolloff must lie in [0, 1]");
  if (cfg.rrc_span_symbols < 2)
    throw ConfigError("rrc_span_symbols must be >= 2");
  if (cfg.n_symbols < 1)
    throw ConfigError("n_symbols must be >= 1");
  if (cfg.scheme == ModulationScheme::Fsk && !(cfg.tone_spacing() > 0.0))
    throw ConfigError("fsk_tone_spacing must be positive");
}

std::vector<cplx> constellation(ModulationScheme scheme, int order)
{
  require_order(order);
  std::vector<cplx> pts;
  switch (scheme) {
  case ModulationScheme::Psk:
    for (int k = 0; k < order; ++k)
      pts.push_back(std::polar(1.0, 2.0 * kPi * k / order));
    return pts;
  case ModulationScheme::Qam: {
    const int bits = std::countr_zero(static_cast<unsigned>(order));
    if (bits % 2 == 0)
      pts = square_grid(1 << (bits / 2));
    else if (bits == 1)
      pts = {cplx(1.0, 0.0), cplx(-1.0, 0.0)};
    else if (bits == 3)
      pts = rectangle(4, 2);
    else
      pts = cross(bits);
    unit_power(pts);
    return pts;
  }
  case ModulationScheme::Fsk:
    break;
  }
  throw ConfigError("FSK has no complex constellation");
}

std::vector<cplx> map_symbols(int order, ModulationScheme scheme, std::size_t count,
                              std::uint64_t seed)
{
  const auto pts = constellation(scheme, order);
  Rng rng(seed);
  std::vector<cplx> out(count);
  for (auto& v : out)
    v = pts[rng.below(pts.size())];
  return out;
}

std::vector<double> rrc_taps(double rolloff, int span_symbols, int sps)
{
  if (!(rolloff >= 0.0 && rolloff <= 1.0))
    throw ConfigError("rrc rolloff must lie in [0, 1]");
  if (span_symbols < 2 || sps < 2)
    throw ConfigError("rrc span and samples per symbol must be >= 2");

  const int len = span_symbols * sps + 1;
  const int mid = len / 2;
  const double b = rolloff;
  std::vector<double> h(static_cast<std::size_t>(len));
  for (int n = 0; n < len; ++n) {
    const double t = static_cast<double>(n - mid) / sps; // symbol periods
    double v;
    if (n == mid) {
      v = 1.0 - b + 4.0 * b / kPi;
    } else if (b > 0.0 && std::abs(std::abs(4.0 * b * t) - 1.0) < 1e-9) {
      const double a = kPi / (4.0 * b);
      v = b / std::numbers::sqrt2 *
          ((1.0 + 2.0 / kPi) * std::sin(a) + (1.0 - 2.0 / kPi) * std::cos(a));
    } else {
      const double x = 4.0 * b * t;
      v = (std::sin(kPi * t * (1.0 - b)) + x * std::cos(kPi * t * (1.0 + b))) /
          (kPi * t * (1.0 - x * x));
    }
    h[static_cast<std::size_t>(n)] = v;
  }
  // Enforce exact even symmetry before normalizing.
  for (int n = 0; n < mid; ++n)
    h[static_cast<std::size_t>(len - 1 - n)] = h[static_cast<std::size_t>(n)];
  double e = 0.0;
  for (double v : h)
    e += v * v;
  const double g = 1.0 / std::sqrt(e);
  for (auto& v : h)
    v *= g;
  return h;
}

SampledSignal generate_ofdm(const OfdmConfig& cfg)
{
  validate(cfg);
  const int nfft = cfg.idft_size;
  const int k_active = cfg.active_carriers;
  const int cp = cfg.cp_samples();
  const int sym_len = nfft + cp;

  // Active bins: -floor(K/2)..-1 and 1..ceil(K/2); DC left empty.
  std::vector<int> bins;
  bins.reserve(static_cast<std::size_t>(k_active));
  for (int k = -(k_active / 2); k < 0; ++k)
    bins.push_back(k);
  for (int k = 1; k <= k_active - k_active / 2; ++k)
    bins.push_back(k);

  std::vector<cplx> twiddle(static_cast<std::size_t>(nfft));
  for (int n = 0; n < nfft; ++n)
    twiddle[static_cast<std::size_t>(n)] = std::polar(1.0, 2.0 * kPi * n / nfft);

  const auto data = map_symbols(cfg.modulation_order, cfg.subcarrier_modulation,
                                static_cast<std::size_t>(k_active) * cfg.n_symbols, cfg.seed);

  std::vector<cplx> out(static_cast<std::size_t>(sym_len) * cfg.n_symbols);
  std::vector<cplx> body(static_cast<std::size_t>(nfft));
  for (int s = 0; s < cfg.n_symbols; ++s) {
    const cplx* sym = data.data() + static_cast<std::size_t>(s) * k_active;
    for (int n = 0; n < nfft; ++n) {
      cplx acc{};
      for (int b = 0; b < k_active; ++b) {
        const int idx = ((bins[static_cast<std::size_t>(b)] * n) % nfft + nfft) % nfft;
        acc += sym[b] * twiddle[static_cast<std::size_t>(idx)];
      }
      body[static_cast<std::size_t>(n)] = acc;
    }
    cplx* dst = out.data() + static_cast<std::size_t>(s) * sym_len;
    std::copy(body.end() - cp, body.end(), dst);
    std::copy(body.begin(), body.end(), dst + cp);
  }
  normalize_power(out);

  SampledSignal sig;
  sig.samples = std::move(out);
  sig.sample_rate = cfg.sample_rate;
  sig.label = "OFDM-" + to_string(cfg.subcarrier_modulation) + std::to_string(cfg.modulation_order);
  return sig;
}

SampledSignal generate_sc(const ScConfig& cfg)
{
  validate(cfg);
  const int sps = cfg.samples_per_symbol;
  const auto n_sym = static_cast<std::size_t>(cfg.n_symbols);
  std::vector<cplx> out;

  if (cfg.scheme == ModulationScheme::Fsk) {
    Rng rng(cfg.seed);
    const double spacing = cfg.tone_spacing();
    const double centre = (cfg.modulation_order - 1) / 2.0;
    out.resize(n_sym * sps);
    double phase = 0.0;
    std::size_t i = 0;
    for (std::size_t s = 0; s < n_sym; ++s) {
      const double f = (static_cast<double>(rng.below(cfg.modulation_order)) - centre) * spacing;
      for (int k = 0; k < sps; ++k) {
        out[i++] = std::polar(1.0, phase);
        phase = std::remainder(phase + 2.0 * kPi * f, 2.0 * kPi);
      }
    }
  } else {
    const auto sym = map_symbols(cfg.modulation_order, cfg.scheme, n_sym, cfg.seed);
    const auto h = rrc_taps(cfg.rrc_rolloff, cfg.rrc_span_symbols, sps);
    const std::size_t up_len = n_sym * sps;
    out.assign(up_len + h.size() - 1, cplx{});
    // Zero-stuffed input: only every sps-th sample is non-zero.
    for (std::size_t s = 0; s < n_sym; ++s) {
      const std::size_t base = s * sps;
      for (std::size_t k = 0; k < h.size(); ++k)
        out[base + k] += sym[s] * h[k];
    }
    normalize_power(out);
  }

  SampledSignal sig;
  sig.samples = std::move(out);
  sig.sample_rate = cfg.sample_rate;
  sig.label = "SC-" + to_string(cfg.scheme) + std::to_string(cfg.modulation_order);
  return sig;
}

} // namespace ofdmid
