#pragma once

#include <cstdint>
#include <cstdio>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "timedata/linkmodel.hpp"

namespace timedata::analysis {

using NuDeltaOmega = std::variant<double, link::DivByZero>;
using NuDisplaced = std::variant<double, link::Divergence>;

/// One row of the link table: a target observed at one progress level.
struct LinkRecord {
  std::string target_name;
  double progress_pct = 0.0;
  std::string f_xy_label;  // progress as shown in the table, e.g. "16%"
  link::Timestamp t_stamp;
  double epsilon_lm = 0.0;
  double delta_t_s = 0.0;  // light-time offset, epsilon * 60 s
  NuDeltaOmega nu_delta_omega_hz;
  NuDisplaced nu_displaced_hz;

  friend bool operator==(const LinkRecord&, const LinkRecord&) = default;
};

struct SheetMetadata {
  std::string source_digest;  // FNV-1a of the inputs, hex
  std::string generated_at;   // left empty by build_sheet

  friend bool operator==(const SheetMetadata&, const SheetMetadata&) = default;
};

struct Sheet {
  std::vector<LinkRecord> records;
  SheetMetadata metadata;

  friend bool operator==(const Sheet&, const Sheet&) = default;
};

inline std::string progress_label(double progress_pct) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g%%", progress_pct);
  return buf;
}

namespace detail {

class Fnv1a {
 public:
  void add(std::string_view bytes) {
    for (unsigned char c : bytes) {
      hash_ ^= c;
      hash_ *= 0x100000001b3ULL;
    }
  }
  void add(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g;", v);
    add(std::string_view(buf));
  }
  std::string hex() const {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash_));
    return buf;
  }

 private:
  std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

}  // namespace detail

/// Evaluates the link model once per (target, progress) pair, targets in
/// the outer loop, both in the order given.
inline Sheet build_sheet(std::span<const link::Target> targets, std::span<const double> progress_list,
                         const link::Timestamp& base_time) {
  if (targets.empty()) throw domain_error("build_sheet needs at least one target");
  if (progress_list.empty()) throw domain_error("build_sheet needs at least one progress value");

  Sheet sheet;
  detail::Fnv1a digest;
  digest.add(base_time.str());
  for (const auto& target : targets) {
    digest.add(target.name);
    digest.add(target.distance.value());
    digest.add(target.range.value());
    for (const double p : progress_list) {
      const auto progress = percent(p);
      LinkRecord r;
      r.target_name = target.name;
      r.progress_pct = p;
      r.f_xy_label = progress_label(p);
      const auto eps = link::epsilon_from_progress(progress, target.range);
      r.epsilon_lm = eps.value();
      r.delta_t_s = eps.value() * 60.0;
      r.t_stamp = link::shift_timestamp(base_time, eps);

      const auto nu = link::frequency_resolution(target.distance, progress);
      if (const auto* q = std::get_if<Quantity>(&nu)) {
        r.nu_delta_omega_hz = q->value();
      } else {
        r.nu_delta_omega_hz = link::DivByZero{};
      }
      const auto nu_x = link::displaced_frequency_resolution(target.distance, progress);
      if (const auto* q = std::get_if<Quantity>(&nu_x)) {
        r.nu_displaced_hz = q->value();
      } else {
        r.nu_displaced_hz = link::Divergence{};
      }
      sheet.records.push_back(std::move(r));
    }
  }
  for (const double p : progress_list) digest.add(p);
  sheet.metadata.source_digest = digest.hex();
  return sheet;
}

}  // namespace timedata::analysis
