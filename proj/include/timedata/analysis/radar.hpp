#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "timedata/analysis/sheet.hpp"
#include "timedata/error.hpp"

namespace timedata::analysis {

struct RadarChart {
  std::string svg;
  std::vector<std::string> warnings;
};

namespace detail {

struct Attribute {
  std::string_view label;
  std::string_view color;
  std::optional<double> (*value)(const LinkRecord&);
};

inline const std::array<Attribute, 4>& radar_attributes() {
  static const std::array<Attribute, 4> attrs{{
      {"epsilon (Lm)", "#1f77b4", [](const LinkRecord& r) -> std::optional<double> { return r.epsilon_lm; }},
      {"delta t (s)", "#ff7f0e", [](const LinkRecord& r) -> std::optional<double> { return r.delta_t_s; }},
      {"nu_dw (Hz)", "#2ca02c",
       [](const LinkRecord& r) -> std::optional<double> {
         if (const auto* v = std::get_if<double>(&r.nu_delta_omega_hz)) return *v;
         return std::nullopt;
       }},
      {"nu_dw,x (Hz)", "#d62728",
       [](const LinkRecord& r) -> std::optional<double> {
         if (const auto* v = std::get_if<double>(&r.nu_displaced_hz)) return *v;
         return std::nullopt;
       }},
  }};
  return attrs;
}

inline std::string xml_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  // keep "-0.000" out of the output so equal geometry prints identically
  if (std::string_view(buf) == "-0.000") return "0.000";
  return buf;
}

}  // namespace detail

/// Radar chart of the sheet: one spoke per record (clockwise from the top),
/// one closed polyline per numeric attribute. Each attribute is min-max
/// normalized to [0, 1] on its own; a constant attribute sits on the rim.
/// Sentinel cells are drawn at the center and marked with a ring.
inline RadarChart render_radar_svg(const Sheet& sheet) {
  const auto& records = sheet.records;
  if (records.size() < 3) {
    throw chart_error("radar chart needs at least 3 records, got " + std::to_string(records.size()));
  }

  constexpr double width = 640.0;
  constexpr double height = 720.0;
  constexpr double cx = 320.0;
  constexpr double cy = 320.0;
  constexpr double radius = 240.0;
  const std::size_t spokes = records.size();

  auto spoke_point = [&](std::size_t i, double fraction) {
    const double angle =
        -std::numbers::pi / 2.0 + 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(spokes);
    return std::pair{cx + fraction * radius * std::cos(angle), cy + fraction * radius * std::sin(angle)};
  };

  RadarChart chart;
  std::string& svg = chart.svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"yes\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + detail::fixed(width) +
         "\" height=\"" + detail::fixed(height) + "\" viewBox=\"0 0 " + detail::fixed(width) + " " +
         detail::fixed(height) + "\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  svg += "<g class=\"grid\" fill=\"none\" stroke=\"#cccccc\" stroke-width=\"1\">\n";
  for (const double ring : {0.25, 0.5, 0.75, 1.0}) {
    svg += "<polygon points=\"";
    for (std::size_t i = 0; i < spokes; ++i) {
      const auto [x, y] = spoke_point(i, ring);
      if (i) svg += ' ';
      svg += detail::fixed(x) + "," + detail::fixed(y);
    }
    svg += "\"/>\n";
  }
  for (std::size_t i = 0; i < spokes; ++i) {
    const auto [x, y] = spoke_point(i, 1.0);
    svg += "<line class=\"spoke\" x1=\"" + detail::fixed(cx) + "\" y1=\"" + detail::fixed(cy) + "\" x2=\"" +
           detail::fixed(x) + "\" y2=\"" + detail::fixed(y) + "\"/>\n";
  }
  svg += "</g>\n";

  svg += "<g class=\"labels\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">\n";
  for (std::size_t i = 0; i < spokes; ++i) {
    const auto [x, y] = spoke_point(i, 1.08);
    svg += "<text x=\"" + detail::fixed(x) + "\" y=\"" + detail::fixed(y) + "\">" +
           detail::xml_escape(records[i].target_name + " " + records[i].f_xy_label) + "</text>\n";
  }
  svg += "</g>\n";

  std::vector<const detail::Attribute*> drawn;
  for (const auto& attr : detail::radar_attributes()) {
    std::optional<double> lo, hi;
    for (const auto& r : records) {
      if (const auto v = attr.value(r)) {
        lo = lo ? std::min(*lo, *v) : *v;
        hi = hi ? std::max(*hi, *v) : *v;
      }
    }
    if (!lo) {
      chart.warnings.push_back("attribute '" + std::string(attr.label) +
                               "' has no numeric values; omitted from chart");
      continue;
    }
    drawn.push_back(&attr);

    std::string points;
    std::string markers;
    for (std::size_t i = 0; i <= spokes; ++i) {
      const auto& r = records[i % spokes];
      const auto v = attr.value(r);
      double fraction = 0.0;
      if (v) fraction = (*hi > *lo) ? (*v - *lo) / (*hi - *lo) : 1.0;
      const auto [x, y] = spoke_point(i % spokes, fraction);
      if (i) points += ' ';
      points += detail::fixed(x) + "," + detail::fixed(y);
      if (!v && i < spokes) {
        markers += "<circle class=\"sentinel\" cx=\"" + detail::fixed(x) + "\" cy=\"" + detail::fixed(y) +
                   "\" r=\"5\" fill=\"none\" stroke=\"" + std::string(attr.color) + "\"/>\n";
      }
    }
    svg += "<g class=\"series\" data-attribute=\"" + detail::xml_escape(attr.label) + "\">\n";
    svg += "<polyline points=\"" + points + "\" fill=\"none\" stroke=\"" + std::string(attr.color) +
           "\" stroke-width=\"2\"/>\n";
    svg += markers;
    svg += "</g>\n";
  }

  svg += "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"12\">\n";
  double ly = 620.0;
  for (const auto* attr : drawn) {
    svg += "<rect x=\"40.000\" y=\"" + detail::fixed(ly - 10.0) + "\" width=\"12\" height=\"12\" fill=\"" +
           std::string(attr->color) + "\"/>\n";
    svg += "<text x=\"60.000\" y=\"" + detail::fixed(ly) + "\">" + detail::xml_escape(attr->label) + "</text>\n";
    ly += 20.0;
  }
  svg += "</g>\n";
  svg += "</svg>\n";
  return chart;
}

/// Writes the chart to `path` and returns any warnings.
inline std::vector<std::string> render_radar_chart(const Sheet& sheet, const std::string& path) {
  auto chart = render_radar_svg(sheet);
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw file_error(path, "cannot open for writing");
  file.write(chart.svg.data(), static_cast<std::streamsize>(chart.svg.size()));
  if (!file) throw file_error(path, "write failed");
  return std::move(chart.warnings);
}

}  // namespace timedata::analysis
