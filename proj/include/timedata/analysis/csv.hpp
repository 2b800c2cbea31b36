#pragma once

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "timedata/analysis/sheet.hpp"
#include "timedata/error.hpp"

namespace timedata::analysis {

inline constexpr std::string_view csv_header =
    "target,progress_pct,f_xy,t,epsilon_lm,delta_t_s,nu_dw_hz,nu_dw_x_hz";

/// Spreadsheet spelling of an undefined quotient. Both frequency columns
/// use it; the column decides whether it means DivByZero or Divergence.
inline constexpr std::string_view div0_sentinel = "#Div/0!";

namespace detail {

inline std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

inline std::string quote_field(std::string_view text) {
  if (text.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

/// Splits one physical line into fields, honoring double-quoted fields.
inline std::vector<std::string> split_fields(std::string_view line, std::size_t line_no) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          fields.back() += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        fields.back() += c;
      }
    } else if (c == '"' && fields.back().empty()) {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  if (quoted) throw parse_error(line_no, "unterminated quoted field");
  return fields;
}

inline double parse_number(const std::string& field, std::size_t line_no, const char* column) {
  if (!field.empty() && field.front() == '#') {
    throw parse_error(line_no, std::string("unknown sentinel '") + field + "' in " + column);
  }
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (field.empty() || end != field.c_str() + field.size() || errno == ERANGE || !std::isfinite(v)) {
    throw parse_error(line_no, std::string("malformed number '") + field + "' in " + column);
  }
  return v;
}

}  // namespace detail

/// CSV text for the sheet: fixed header, one row per record, numbers to six
/// significant digits, LF after every row.
inline std::string to_csv(const Sheet& sheet) {
  std::string out(csv_header);
  out += '\n';
  for (const auto& r : sheet.records) {
    out += detail::quote_field(r.target_name);
    out += ',';
    out += detail::format_number(r.progress_pct);
    out += ',';
    out += detail::quote_field(r.f_xy_label);
    out += ',';
    out += r.t_stamp.str();
    out += ',';
    out += detail::format_number(r.epsilon_lm);
    out += ',';
    out += detail::format_number(r.delta_t_s);
    out += ',';
    if (const auto* v = std::get_if<double>(&r.nu_delta_omega_hz)) {
      out += detail::format_number(*v);
    } else {
      out += div0_sentinel;
    }
    out += ',';
    if (const auto* v = std::get_if<double>(&r.nu_displaced_hz)) {
      out += detail::format_number(*v);
    } else {
      out += div0_sentinel;
    }
    out += '\n';
  }
  return out;
}

inline Sheet from_csv(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    const auto nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  if (lines.empty() || lines.front() != csv_header) {
    throw parse_error(1, "expected header '" + std::string(csv_header) + "'");
  }

  Sheet sheet;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    const auto fields = detail::split_fields(lines[i], line_no);
    if (fields.size() != 8) {
      throw parse_error(line_no, "expected 8 fields, got " + std::to_string(fields.size()));
    }
    LinkRecord r;
    r.target_name = fields[0];
    r.progress_pct = detail::parse_number(fields[1], line_no, "progress_pct");
    r.f_xy_label = fields[2];
    try {
      r.t_stamp = link::Timestamp::parse(fields[3]);
    } catch (const domain_error& e) {
      throw parse_error(line_no, e.what());
    }
    r.epsilon_lm = detail::parse_number(fields[4], line_no, "epsilon_lm");
    r.delta_t_s = detail::parse_number(fields[5], line_no, "delta_t_s");
    if (fields[6] == div0_sentinel) {
      r.nu_delta_omega_hz = link::DivByZero{};
    } else {
      r.nu_delta_omega_hz = detail::parse_number(fields[6], line_no, "nu_dw_hz");
    }
    if (fields[7] == div0_sentinel) {
      r.nu_displaced_hz = link::Divergence{};
    } else {
      r.nu_displaced_hz = detail::parse_number(fields[7], line_no, "nu_dw_x_hz");
    }
    sheet.records.push_back(std::move(r));
  }
  return sheet;
}

inline void emit_csv(const Sheet& sheet, const std::string& path) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw file_error(path, "cannot open for writing");
  const auto text = to_csv(sheet);
  file.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!file) throw file_error(path, "write failed");
}

inline Sheet parse_csv(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw file_error(path, "cannot open for reading");
  std::ostringstream buf;
  buf << file.rdbuf();
  return from_csv(buf.str());
}

}  // namespace timedata::analysis
