#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <string>
#include <string_view>
#include <variant>

#include "timedata/error.hpp"
#include "timedata/units.hpp"

/// Light-time model of a remote target observed from Earth: how far a
/// signal has progressed toward us, what local timestamp the captured data
/// belongs to, and the effective frequency of bringing the target "closer".
namespace timedata::link {

namespace detail {

inline Quantity require(const Quantity& q, Unit unit, const char* what) {
  try {
    return convert(q, unit);
  } catch (const dimension_error&) {
    throw dimension_error(std::string(what) + " must be convertible to '" + std::string(symbol(unit)) +
                          "', got '" + std::string(symbol(q.unit())) + "'");
  }
}

}  // namespace detail

struct Target {
  std::string name;
  Quantity distance;  // km
  Quantity range;     // Lm

  /// Distance and range are independent inputs; neither is derived from
  /// the other.
  static Target make(std::string name, double distance_km, double range_lm) {
    if (!(distance_km > 0.0)) throw domain_error("target '" + name + "': distance_km must be > 0");
    if (!(range_lm > 0.0)) throw domain_error("target '" + name + "': range_lm must be > 0");
    return {std::move(name), kilometers(distance_km), light_minutes(range_lm)};
  }

  friend bool operator==(const Target&, const Target&) = default;
};

/// Wall-clock time of day with whole-second resolution. No day arithmetic:
/// anything that would cross midnight is a range error.
class Timestamp {
 public:
  static constexpr std::int64_t seconds_per_day = 24 * 3600;

  constexpr Timestamp() = default;

  Timestamp(int hours, int minutes, int secs) : h_(hours), m_(minutes), s_(secs) {
    if (hours < 0 || hours > 23 || minutes < 0 || minutes > 59 || secs < 0 || secs > 59) {
      throw domain_error("timestamp fields out of range: " + std::to_string(hours) + ":" +
                         std::to_string(minutes) + ":" + std::to_string(secs));
    }
  }

  static Timestamp from_seconds_of_day(std::int64_t total) {
    if (total < 0) throw range_error("timestamp before 00:00:00");
    if (total >= seconds_per_day) throw range_error("timestamp past 23:59:59");
    return {static_cast<int>(total / 3600), static_cast<int>((total / 60) % 60),
            static_cast<int>(total % 60)};
  }

  /// Parses HH:MM:SS.
  static Timestamp parse(std::string_view text) {
    int h = 0, m = 0, s = 0;
    char tail = 0;
    const std::string buf(text);
    if (buf.size() != 8 || std::sscanf(buf.c_str(), "%2d:%2d:%2d%c", &h, &m, &s, &tail) != 3 ||
        buf[2] != ':' || buf[5] != ':') {
      throw domain_error("expected HH:MM:SS, got '" + buf + "'");
    }
    return {h, m, s};
  }

  constexpr int hours() const noexcept { return h_; }
  constexpr int minutes() const noexcept { return m_; }
  constexpr int seconds() const noexcept { return s_; }

  constexpr std::int64_t seconds_of_day() const noexcept {
    return std::int64_t{h_} * 3600 + std::int64_t{m_} * 60 + s_;
  }

  std::string str() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%02d:%02d:%02d", h_, m_, s_);
    return buf;
  }

  friend constexpr bool operator==(const Timestamp&, const Timestamp&) = default;

 private:
  int h_ = 0;
  int m_ = 0;
  int s_ = 0;
};

/// Moves a timestamp by a signed number of seconds.
inline Timestamp advance(const Timestamp& t, std::int64_t delta_seconds) {
  return Timestamp::from_seconds_of_day(t.seconds_of_day() + delta_seconds);
}

/// <psi|phi> as a complex number.
struct AmplitudeOverlap {
  double re = 0.0;
  double im = 0.0;

  double modulus_squared() const noexcept { return re * re + im * im; }
};

/// Frequency resolution is undefined at zero progress; carried as a value
/// so a table can hold it in place of a number.
struct DivByZero {
  friend constexpr bool operator==(DivByZero, DivByZero) noexcept { return true; }
};

/// The displaced resolution's declared limit at full progress.
struct Divergence {
  friend constexpr bool operator==(Divergence, Divergence) noexcept { return true; }
};

using FrequencyResolution = std::variant<Quantity, DivByZero>;
using DisplacedResolution = std::variant<Quantity, Divergence>;

/// Distance (in light-minutes) covered after `progress` percent of `range`.
inline Quantity epsilon_from_progress(const Quantity& progress, const Quantity& range) {
  const auto p = detail::require(progress, Unit::Percent, "progress");
  const auto r = detail::require(range, Unit::LightMinute, "range");
  if (p.value() < 0.0 || p.value() > 100.0) {
    throw domain_error("progress must lie in [0, 100] %, got " + std::to_string(p.value()));
  }
  if (!(r.value() > 0.0)) throw domain_error("range must be > 0 Lm");
  return light_minutes(convert(p, Unit::Dimensionless).value() * r.value());
}

/// Local time at which light now arriving left the target: `local` minus
/// epsilon minutes, rounded to the nearest whole second.
inline Timestamp shift_timestamp(const Timestamp& local, const Quantity& epsilon) {
  const auto eps = detail::require(epsilon, Unit::LightMinute, "epsilon");
  if (eps.value() < 0.0) throw domain_error("epsilon must be >= 0 Lm");
  // one light-minute of path is one minute of travel
  const auto travel = std::llround(eps.value() * 60.0);
  if (travel > local.seconds_of_day()) {
    throw range_error("shifting " + local.str() + " by " + std::to_string(travel) +
                      " s rolls back past 00:00:00");
  }
  return advance(local, -travel);
}

/// nu = c / (distance * progress/100).
inline FrequencyResolution frequency_resolution(const Quantity& distance, const Quantity& progress) {
  const auto d = detail::require(distance, Unit::Kilometer, "distance");
  const auto p = detail::require(progress, Unit::Percent, "progress");
  if (!(d.value() > 0.0)) throw domain_error("distance must be > 0 km");
  if (p.value() < 0.0) throw domain_error("progress must be >= 0 %");
  if (p.value() == 0.0) return DivByZero{};
  return hertz(Constants::c_km_per_s / (d.value() * convert(p, Unit::Dimensionless).value()));
}

/// nu_x = c / (distance * (1 - progress/100)); grows without bound as
/// progress approaches 100 %, where the divergence marker is returned.
inline DisplacedResolution displaced_frequency_resolution(const Quantity& distance,
                                                          const Quantity& progress) {
  const auto d = detail::require(distance, Unit::Kilometer, "distance");
  const auto p = detail::require(progress, Unit::Percent, "progress");
  if (!(d.value() > 0.0)) throw domain_error("distance must be > 0 km");
  if (p.value() < 0.0 || p.value() > 100.0) {
    throw domain_error("progress must lie in [0, 100] %, got " + std::to_string(p.value()));
  }
  if (p.value() == 100.0) return Divergence{};
  const double remaining = 1.0 - convert(p, Unit::Dimensionless).value();
  return hertz(Constants::c_km_per_s / (d.value() * remaining));
}

/// Bandwidth-duration product against the 2*pi bound.
inline bool uncertainty_satisfied(const Quantity& delta_omega, const Quantity& delta_t) {
  const auto w = detail::require(delta_omega, Unit::Hertz, "delta_omega");
  const auto t = detail::require(delta_t, Unit::Second, "delta_t");
  if (w.value() < 0.0 || t.value() < 0.0) throw domain_error("uncertainty inputs must be >= 0");
  return w.value() * t.value() >= 2.0 * std::numbers::pi;
}

namespace detail {

inline double checked_overlap(const AmplitudeOverlap& overlap) {
  const double m2 = overlap.modulus_squared();
  if (!std::isfinite(m2) || m2 > 1.0 + 1e-12) {
    throw domain_error("overlap modulus squared " + std::to_string(m2) + " exceeds 1");
  }
  return m2;
}

inline void check_time_and_bits(double t, double delta) {
  if (!(t >= 0.0) || !(delta >= 0.0)) throw domain_error("t and delta must be >= 0");
}

}  // namespace detail

/// prob(time) and prob(data): each factor alone weighted by |<psi|phi>|^2.
struct ProbabilityParts {
  double time = 0.0;
  double data = 0.0;
};

/// t * delta * |<psi|phi>|^2.
inline double timedata_probability(double t, double delta_bits, const AmplitudeOverlap& overlap) {
  detail::check_time_and_bits(t, delta_bits);
  return t * delta_bits * detail::checked_overlap(overlap);
}

inline ProbabilityParts timedata_decomposition(double t, double delta_bits,
                                               const AmplitudeOverlap& overlap) {
  detail::check_time_and_bits(t, delta_bits);
  const double m2 = detail::checked_overlap(overlap);
  return {t * m2, delta_bits * m2};
}

/// A number whose unit has no physical interpretation; the tag travels
/// with it unexamined.
struct TaggedValue {
  double value = 0.0;
  std::string_view tag;
};

/// delta / (t * delta * |<psi|phi>|^2), the product restriction on bit
/// frequencies, in the opaque "!Hz" unit.
inline TaggedValue bit_product_restriction(double t, double delta_bits,
                                           const AmplitudeOverlap& overlap) {
  const double denom = timedata_probability(t, delta_bits, overlap);
  if (denom == 0.0) throw division_error("product restriction undefined for zero probability");
  return {delta_bits / denom, "!Hz"};
}

}  // namespace timedata::link
