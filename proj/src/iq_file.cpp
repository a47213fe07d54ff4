/*
 * (C) Copyright 2026 ofdmid contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "ofdmid/iq_file.hpp"

#include "ofdmid/error.hpp"

#include <json.hpp>

#include <bit>
#include <cstring>
#include <fstream>

namespace ofdmid {
namespace {

std::uint32_t to_le(std::uint32_t v)
{
  if constexpr (std::endian::native == std::endian::big)
    return __builtin_bswap32(v);
  return v;
}

} // namespace

std::filesystem::path metadata_path(const std::filesystem::path& iq_path)
{
  auto p = iq_path;
  p += ".meta.json";
  return p;
}

void write_waveform(const std::filesystem::path& path, const SampledSignal& sig,
                    WaveformMetadata meta)
{
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os)
    throw IoError("cannot open '" + path.string() + "' for writing");
  std::vector<std::uint32_t> buf;
  buf.reserve(sig.samples.size() * 2);
  for (const auto& s : sig.samples) {
    buf.push_back(to_le(std::bit_cast<std::uint32_t>(static_cast<float>(s.real()))));
    buf.push_back(to_le(std::bit_cast<std::uint32_t>(static_cast<float>(s.imag()))));
  }
  os.write(reinterpret_cast<const char*>(buf.data()),
           static_cast<std::streamsize>(buf.size() * sizeof(std::uint32_t)));
  if (!os)
    throw IoError("write failed for '" + path.string() + "'");

  meta.n_samples = sig.samples.size();
  if (meta.label.empty())
    meta.label = sig.label;
  meta.sample_rate = sig.sample_rate;
  nlohmann::ordered_json j;
  j["format"] = "cf32_le";
  j["sample_rate"] = meta.sample_rate;
  j["scheme"] = meta.scheme;
  j["order"] = meta.order;
  j["n_symbols"] = meta.n_symbols;
  j["seed"] = meta.seed;
  j["label"] = meta.label;
  j["n_samples"] = meta.n_samples;
  const auto mpath = metadata_path(path);
  std::ofstream ms(mpath, std::ios::trunc);
  if (!ms)
    throw IoError("cannot open '" + mpath.string() + "' for writing");
  ms << j.dump(2) << '\n';
  if (!ms)
    throw IoError("write failed for '" + mpath.string() + "'");
}

SampledSignal read_waveform(const std::filesystem::path& path, WaveformMetadata* meta_out)
{
  std::ifstream is(path, std::ios::binary);
  if (!is)
    throw IoError("cannot open '" + path.string() + "' for reading");
  std::vector<char> bytes((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  if (bytes.size() % 8 != 0)
    throw IoError("'" + path.string() + "' is not a whole number of float32 I/Q pairs");

  SampledSignal sig;
  sig.samples.resize(bytes.size() / 8);
  for (std::size_t i = 0; i < sig.samples.size(); ++i) {
    std::uint32_t re, im;
    std::memcpy(&re, bytes.data() + 8 * i, 4);
    std::memcpy(&im, bytes.data() + 8 * i + 4, 4);
    sig.samples[i] = {std::bit_cast<float>(to_le(re)), std::bit_cast<float>(to_le(im))};
  }
  sig.label = path.filename().string();

  WaveformMetadata meta;
  const auto mpath = metadata_path(path);
  if (std::filesystem::exists(mpath)) {
    std::ifstream ms(mpath);
    nlohmann::json j;
    try {
      ms >> j;
    } catch (const nlohmann::json::exception& e) {
      throw IoError("malformed metadata '" + mpath.string() + "': " + e.what());
    }
    meta.sample_rate = j.value("sample_rate", 1.0);
    meta.scheme = j.value("scheme", std::string{});
    meta.order = j.value("order", 0);
    meta.n_symbols = j.value("n_symbols", 0);
    meta.seed = j.value("seed", std::uint64_t{0});
    meta.label = j.value("label", std::string{});
    meta.n_samples = j.value("n_samples", std::uint64_t{sig.samples.size()});
    if (meta.n_samples != sig.samples.size())
      throw IoError("'" + path.string() + "' length disagrees with its metadata");
    sig.sample_rate = meta.sample_rate;
    if (!meta.label.empty())
      sig.label = meta.label;
  } else {
    meta.n_samples = sig.samples.size();
  }
  if (meta_out)
    *meta_out = meta;
  return sig;
}

} // namespace ofdmid
