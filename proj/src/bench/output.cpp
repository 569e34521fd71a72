// Copyright 2026 The nestedvi Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

#include "nestedvi/bench.hpp"
#include "nestedvi/serialization.hpp"

namespace nvi::bench {
namespace {

void append_row(std::string& out, const IterationRecord& r) {
  out += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", r.k, r.i, r.l, format_real(r.tau),
                     format_real(r.epsilon), format_real(r.gamma), format_real(r.z_norm),
                     format_real(r.gap), format_real(r.measure), format_real(r.v_residual));
}

std::string xml_escape(const std::string& s) {
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

}  // namespace

std::string trace_csv(const std::vector<IterationRecord>& trace) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const auto& r : trace) append_row(out, r);
  return out;
}

std::string events_csv(const std::vector<IterationRecord>& trace) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const auto& r : trace)
    if (r.outer_event) append_row(out, r);
  return out;
}

std::string line_chart_svg(const Chart& chart) {
  const double left = 80.0, right = 20.0, top = 40.0, bottom = 60.0;
  const double w = chart.width, h = chart.height;
  const double pw = w - left - right, ph = h - top - bottom;

  double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
  double y_min = x_min, y_max = -x_min;
  for (const auto& s : chart.series)
    for (std::size_t j = 0; j < std::min(s.x.size(), s.y.size()); ++j) {
      if (!(s.y[j] > 0.0) || !std::isfinite(s.y[j]) || !std::isfinite(s.x[j])) continue;
      x_min = std::min(x_min, s.x[j]);
      x_max = std::max(x_max, s.x[j]);
      y_min = std::min(y_min, s.y[j]);
      y_max = std::max(y_max, s.y[j]);
    }
  if (!std::isfinite(x_min)) {
    x_min = 0.0;
    x_max = 1.0;
    y_min = 0.1;
    y_max = 1.0;
  }
  if (x_min > 0.0) x_min = 0.0;
  if (x_max == x_min) x_max = x_min + 1.0;
  double d_lo = std::floor(std::log10(y_min));
  double d_hi = std::ceil(std::log10(y_max));
  if (d_hi <= d_lo) d_hi = d_lo + 1.0;

  auto px = [&](double x) { return left + (x - x_min) / (x_max - x_min) * pw; };
  auto py = [&](double y) { return top + (d_hi - std::log10(y)) / (d_hi - d_lo) * ph; };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
  out += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" "
      "viewBox=\"0 0 {} {}\">\n",
      chart.width, chart.height, chart.width, chart.height);
  out += fmt::format("<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"white\"/>\n", chart.width,
                     chart.height);
  out += fmt::format(
      "<text x=\"{:.1f}\" y=\"24\" font-family=\"sans-serif\" font-size=\"15\" "
      "text-anchor=\"middle\">{}</text>\n",
      w / 2.0, xml_escape(chart.title));

  const int decades = static_cast<int>(d_hi - d_lo);
  const int step = std::max(1, decades / 10);
  out += "<g font-family=\"sans-serif\" font-size=\"11\" stroke-width=\"1\">\n";
  for (int d = 0; d <= decades; d += step) {
    const double e = d_lo + d;
    const double y = py(std::pow(10.0, e));
    out += fmt::format("<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"#dddddd\"/>\n",
                       left, y, left + pw, y);
    out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\">1e{}</text>\n", left - 6.0,
                       y + 4.0, static_cast<int>(e));
  }
  const double raw = (x_max - x_min) / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double x_step = raw / mag <= 1.0 ? mag : raw / mag <= 2.0 ? 2.0 * mag : raw / mag <= 5.0 ? 5.0 * mag : 10.0 * mag;
  for (double xv = std::ceil(x_min / x_step) * x_step; xv <= x_max + 1e-9 * x_step; xv += x_step) {
    const double x = px(xv);
    out += fmt::format("<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"#dddddd\"/>\n",
                       x, top, x, top + ph);
    out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{:g}</text>\n", x,
                       top + ph + 16.0, xv);
  }
  out += "</g>\n";
  out += fmt::format(
      "<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"none\" "
      "stroke=\"black\"/>\n",
      left, top, pw, ph);
  out += fmt::format(
      "<text x=\"{:.2f}\" y=\"{:.2f}\" font-family=\"sans-serif\" font-size=\"12\" "
      "text-anchor=\"middle\">{}</text>\n",
      left + pw / 2.0, h - 18.0, xml_escape(chart.x_label));
  out += fmt::format(
      "<text x=\"18\" y=\"{:.2f}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\" "
      "transform=\"rotate(-90 18 {:.2f})\">{}</text>\n",
      top + ph / 2.0, top + ph / 2.0, xml_escape(chart.y_label));

  for (const auto& s : chart.series) {
    std::string points;
    for (std::size_t j = 0; j < std::min(s.x.size(), s.y.size()); ++j) {
      if (!(s.y[j] > 0.0) || !std::isfinite(s.y[j]) || !std::isfinite(s.x[j])) continue;
      points += fmt::format("{:.2f},{:.2f} ", px(s.x[j]), py(s.y[j]));
    }
    if (!points.empty()) points.pop_back();
    out += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"/>\n",
                       xml_escape(s.color), points);
  }

  std::size_t longest = 0;
  for (const auto& s : chart.series) longest = std::max(longest, s.label.size());
  const double legend_w = 52.0 + 7.0 * static_cast<double>(longest);
  const double lx = left + pw - legend_w - 10.0;
  double ly = top + 10.0;
  out += fmt::format(
      "<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"white\" "
      "stroke=\"#888888\"/>\n",
      lx, ly, legend_w, 8.0 + 18.0 * static_cast<double>(chart.series.size()));
  for (const auto& s : chart.series) {
    ly += 18.0;
    out += fmt::format(
        "<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"{}\" stroke-width=\"2\"/>\n",
        lx + 8.0, ly - 4.0, lx + 32.0, ly - 4.0, xml_escape(s.color));
    out += fmt::format(
        "<text x=\"{:.2f}\" y=\"{:.2f}\" font-family=\"sans-serif\" font-size=\"12\">{}</text>\n",
        lx + 40.0, ly, xml_escape(s.label));
  }
  out += "</svg>\n";
  return out;
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  const std::filesystem::path target(path);
  if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp + " for writing");
    f.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    f.flush();
    if (!f) throw std::runtime_error("write failed: " + tmp);
  }
  std::filesystem::rename(tmp, target);
}

}  // namespace nvi::bench
