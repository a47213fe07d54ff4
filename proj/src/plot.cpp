/*
 * (C) Copyright 2026 ofdmid contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "ofdmid/plot.hpp"

#include "ofdmid/error.hpp"
#include "text.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <map>
#include <tuple>

namespace ofdmid {
namespace {

constexpr double kWidth = 640, kHeight = 420;
constexpr double kLeft = 60, kRight = 170, kTop = 40, kBottom = 50;
constexpr std::array<const char*, 8> kPalette{"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                              "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string fmt(double v)
{
  return detail::format_double(std::round(v * 100.0) / 100.0);
}

std::string escape(const std::string& s)
{
  std::string out;
  for (char c : s) {
    switch (c) {
    case '&': out += "&amp;"; break;
    case '<': out += "&lt;"; break;
    case '>': out += "&gt;"; break;
    case '"': out += "&quot;"; break;
    default: out += c;
    }
  }
  return out;
}

} // namespace

std::string render_svg(const SweepResult& result, const std::string& title)
{
  using Key = std::tuple<int, int, int>;
  std::map<Key, std::vector<const SweepRow*>> curves;
  double lo = 0.0, hi = 1.0, alpha = -1.0;
  bool first = true;
  for (const auto& r : result.rows) {
    if (!std::isfinite(r.snr_db))
      continue;
    curves[{r.order, r.n_symbols, r.m_lags}].push_back(&r);
    lo = first ? r.snr_db : std::min(lo, r.snr_db);
    hi = first ? r.snr_db : std::max(hi, r.snr_db);
    alpha = r.alpha;
    first = false;
  }
  if (hi <= lo)
    hi = lo + 1.0;
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  const auto sx = [&](double s) { return kLeft + (s - lo) / (hi - lo) * pw; };
  const auto sy = [&](double p) { return kTop + (1.0 - p) * ph; };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kWidth) + "\" height=\"" +
         fmt(kHeight) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!title.empty())
    svg += "<text x=\"" + fmt(kLeft + pw / 2) + "\" y=\"22\" text-anchor=\"middle\">" +
           escape(title) + "</text>\n";
  svg += "<rect x=\"" + fmt(kLeft) + "\" y=\"" + fmt(kTop) + "\" width=\"" + fmt(pw) +
         "\" height=\"" + fmt(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double p = i / 5.0;
    svg += "<line x1=\"" + fmt(kLeft) + "\" x2=\"" + fmt(kLeft + pw) + "\" y1=\"" + fmt(sy(p)) +
           "\" y2=\"" + fmt(sy(p)) + "\" stroke=\"#ddd\"/>\n";
    svg += "<text x=\"" + fmt(kLeft - 6) + "\" y=\"" + fmt(sy(p) + 4) +
           "\" text-anchor=\"end\">" + fmt(p) + "</text>\n";
  }
  for (int i = 0; i <= 5; ++i) {
    const double s = lo + (hi - lo) * i / 5.0;
    svg += "<text x=\"" + fmt(sx(s)) + "\" y=\"" + fmt(kTop + ph + 18) +
           "\" text-anchor=\"middle\">" + fmt(s) + "</text>\n";
  }
  svg += "<text x=\"" + fmt(kLeft + pw / 2) + "\" y=\"" + fmt(kHeight - 10) +
         "\" text-anchor=\"middle\">SNR (dB)</text>\n";
  svg += "<text x=\"16\" y=\"" + fmt(kTop + ph / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
         fmt(kTop + ph / 2) + ")\">P(reject H0)</text>\n";
  if (alpha >= 0.0)
    svg += "<line x1=\"" + fmt(kLeft) + "\" x2=\"" + fmt(kLeft + pw) + "\" y1=\"" +
           fmt(sy(alpha)) + "\" y2=\"" + fmt(sy(alpha)) +
           "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";

  std::size_t idx = 0;
  for (auto& [key, rows] : curves) {
    std::stable_sort(rows.begin(), rows.end(),
                     [](const SweepRow* a, const SweepRow* b) { return a->snr_db < b->snr_db; });
    const char* colour = kPalette[idx % kPalette.size()];
    std::string pts;
    for (const auto* r : rows) {
      pts += fmt(sx(r->snr_db)) + "," + fmt(sy(r->p_reject)) + " ";
      svg += "<line x1=\"" + fmt(sx(r->snr_db)) + "\" x2=\"" + fmt(sx(r->snr_db)) + "\" y1=\"" +
             fmt(sy(r->ci_lo)) + "\" y2=\"" + fmt(sy(r->ci_hi)) + "\" stroke=\"" + colour +
             "\"/>\n";
      svg += "<circle cx=\"" + fmt(sx(r->snr_db)) + "\" cy=\"" + fmt(sy(r->p_reject)) +
             "\" r=\"3\" fill=\"" + colour + "\"/>\n";
    }
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(colour) + "\" points=\"" + pts +
           "\"/>\n";
    const auto& [order, n, m] = key;
    const std::string label = to_string(rows.front()->modulation) + " " + std::to_string(order) +
                              ", N=" + std::to_string(n) + ", M=" + std::to_string(m);
    const double ly = kTop + 14 + 18.0 * static_cast<double>(idx);
    svg += "<line x1=\"" + fmt(kLeft + pw + 10) + "\" x2=\"" + fmt(kLeft + pw + 28) + "\" y1=\"" +
           fmt(ly - 4) + "\" y2=\"" + fmt(ly - 4) + "\" stroke=\"" + colour +
           "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + fmt(kLeft + pw + 32) + "\" y=\"" + fmt(ly) + "\">" + escape(label) +
           "</text>\n";
    ++idx;
  }
  svg += "</svg>\n";
  return svg;
}

void write_svg(const SweepResult& result, const std::filesystem::path& path,
               const std::string& title)
{
  std::ofstream os(path, std::ios::trunc);
  if (!os)
    throw IoError("cannot open '" + path.string() + "' for writing");
  os << render_svg(result, title);
  if (!os)
    throw IoError("write failed for '" + path.string() + "'");
}

} // namespace ofdmid
