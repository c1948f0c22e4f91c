// Copyright 2026 The femtoq Authors.
//
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

#include "femtoq/chart.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>

#include <json.hpp>

#include "femtoq/errors.hpp"
#include "femtoq/format.hpp"

namespace femtoq {

std::filesystem::path meta_path_for(const std::filesystem::path& csv) {
  return std::filesystem::path(csv.string() + ".meta.json");
}

void write_run_meta(const std::filesystem::path& csv, const RunMeta& meta) {
  nlohmann::ordered_json j;
  j["config_hash"] = meta.config_hash;
  j["seed"] = meta.seed;
  j["algorithm"] = meta.algorithm;
  j["target_capacity"] = meta.target_capacity;
  std::ofstream out(meta_path_for(csv));
  out << j.dump(2) << '\n';
}

std::optional<RunMeta> read_run_meta(const std::filesystem::path& csv) {
  std::ifstream in(meta_path_for(csv));
  if (!in) return std::nullopt;
  try {
    const auto j = nlohmann::json::parse(in);
    return RunMeta{j.at("config_hash").get<std::string>(), j.at("seed").get<std::string>(),
                   j.at("algorithm").get<std::string>(), j.at("target_capacity").get<double>()};
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("unreadable run metadata " + meta_path_for(csv).string() + ": " + e.what());
  }
}

ChartSeries load_series(std::istream& in, const std::string& column, const std::string& label) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("chart input is empty");
  const auto header = split_csv_line(line);
  const auto find = [&](const std::string& name) -> std::size_t {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw ConfigError("column '" + name + "' is not in the CSV header");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t xi = find("frame");
  const std::size_t yi = find(column);
  ChartSeries s;
  s.label = label;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto f = split_csv_line(line);
    if (f.size() != header.size()) throw ConfigError("chart input has a ragged row");
    if (f[yi].empty()) continue;
    s.x.push_back(parse_double(f[xi]));
    s.y.push_back(parse_double(f[yi]));
  }
  return s;
}

namespace {

constexpr double kWidth = 800, kHeight = 450;
constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;
constexpr std::array<const char*, 6> kPalette{"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
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

std::string render_svg(const ChartSpec& spec, const std::vector<ChartSeries>& series) {
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  bool any = false;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!any) {
        x0 = x1 = s.x[i];
        y0 = y1 = s.y[i];
        any = true;
      }
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  }
  if (spec.reference) {
    y0 = std::min(y0, *spec.reference);
    y1 = std::max(y1, *spec.reference);
  }
  y0 = std::min(y0, 0.0);
  if (x1 <= x0) x1 = x0 + 1;
  if (y1 <= y0) y1 = y0 + 1;
  y1 += 0.05 * (y1 - y0);

  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - x0) / (x1 - x0) * pw; };
  auto py = [&](double y) { return kTop + ph - (y - y0) / (y1 - y0) * ph; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  svg << "<metadata><run config-hash=\"" << escape(spec.config_hash) << "\" seed=\"" << escape(spec.seed)
      << "\" column=\"" << escape(spec.column) << "\"/></metadata>\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">"
      << escape(spec.title.empty() ? spec.column : spec.title) << "</text>\n";

  // Axes with five ticks each.
  svg << "<g stroke=\"#444\" fill=\"none\"><line x1=\"" << kLeft << "\" y1=\"" << kTop + ph << "\" x2=\"" << kLeft + pw
      << "\" y2=\"" << kTop + ph << "\"/><line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
      << kTop + ph << "\"/></g>\n";
  svg << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#444\">\n";
  for (int i = 0; i <= 5; ++i) {
    const double xv = x0 + (x1 - x0) * i / 5.0, yv = y0 + (y1 - y0) * i / 5.0;
    svg << "<text x=\"" << num(px(xv)) << "\" y=\"" << kTop + ph + 16 << "\" text-anchor=\"middle\">" << num(xv)
        << "</text>\n";
    svg << "<text x=\"" << kLeft - 6 << "\" y=\"" << num(py(yv) + 4) << "\" text-anchor=\"end\">" << num(yv) << "</text>\n";
  }
  svg << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 10 << "\" text-anchor=\"middle\">frame</text>\n";
  svg << "<text x=\"16\" y=\"" << kTop + ph / 2 << "\" transform=\"rotate(-90 16 " << kTop + ph / 2
      << ")\" text-anchor=\"middle\">bps/Hz</text>\n</g>\n";

  if (spec.reference) {
    svg << "<line class=\"reference\" x1=\"" << num(kLeft) << "\" y1=\"" << num(py(*spec.reference)) << "\" x2=\""
        << num(kLeft + pw) << "\" y2=\"" << num(py(*spec.reference))
        << "\" stroke=\"#888\" stroke-dasharray=\"6 4\"/>\n";
  }

  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    svg << "<polyline class=\"series\" data-label=\"" << escape(s.label) << "\" fill=\"none\" stroke=\""
        << kPalette[si % kPalette.size()] << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) svg << (i ? " " : "") << num(px(s.x[i])) << ',' << num(py(s.y[i]));
    svg << "\"/>\n";
    svg << "<text x=\"" << kLeft + pw - 150 << "\" y=\"" << kTop + 14 + 14 * si << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\""
        << kPalette[si % kPalette.size()] << "\">" << escape(s.label) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace femtoq
