#pragma once

#include <cmath>
#include <string>
#include <string_view>

#include "timedata/error.hpp"

namespace timedata {

enum class Unit {
  LightMinute,
  Kilometer,
  Meter,
  Hertz,
  Second,
  Minute,
  Percent,
  Radian,
  Tesla,
  Siemens,
  Volt,
  Ampere,
  Ohm,
  Coulomb,
  Dimensionless,
};

constexpr std::string_view symbol(Unit u) noexcept {
  switch (u) {
    case Unit::LightMinute: return "Lm";
    case Unit::Kilometer: return "km";
    case Unit::Meter: return "m";
    case Unit::Hertz: return "Hz";
    case Unit::Second: return "s";
    case Unit::Minute: return "min";
    case Unit::Percent: return "%";
    case Unit::Radian: return "rad";
    case Unit::Tesla: return "T";
    case Unit::Siemens: return "S";
    case Unit::Volt: return "V";
    case Unit::Ampere: return "A";
    case Unit::Ohm: return "Ohm";
    case Unit::Coulomb: return "C";
    case Unit::Dimensionless: return "";
  }
  return "?";
}

/// The speed of light is the round 300000 km/s, not the CODATA value, so
/// that the worked link-model numbers reproduce digit for digit.
struct Constants {
  static constexpr double c_km_per_s = 300000.0;
  static constexpr double lm_km = 60.0 * c_km_per_s;
};

static_assert(Constants::lm_km == 1.8e7);

/// A finite real tagged with a unit. Arithmetic between different units is
/// refused; use convert() to change units explicitly.
class Quantity {
 public:
  constexpr Quantity() = default;

  Quantity(double value, Unit unit) : value_(value), unit_(unit) {
    if (!std::isfinite(value)) {
      throw domain_error("non-finite value for quantity in '" + std::string(symbol(unit)) + "'");
    }
  }

  constexpr double value() const noexcept { return value_; }
  constexpr Unit unit() const noexcept { return unit_; }

  friend Quantity operator+(const Quantity& a, const Quantity& b) {
    same_unit(a, b, "+");
    return {a.value_ + b.value_, a.unit_};
  }
  friend Quantity operator-(const Quantity& a, const Quantity& b) {
    same_unit(a, b, "-");
    return {a.value_ - b.value_, a.unit_};
  }
  friend Quantity operator*(double k, const Quantity& q) { return {k * q.value_, q.unit_}; }
  friend Quantity operator*(const Quantity& q, double k) { return {q.value_ * k, q.unit_}; }
  friend Quantity operator/(const Quantity& q, double k) { return {q.value_ / k, q.unit_}; }

  friend bool operator==(const Quantity& a, const Quantity& b) noexcept {
    return a.unit_ == b.unit_ && a.value_ == b.value_;
  }
  friend bool operator<(const Quantity& a, const Quantity& b) {
    same_unit(a, b, "<");
    return a.value_ < b.value_;
  }

 private:
  static void same_unit(const Quantity& a, const Quantity& b, const char* op) {
    if (a.unit_ != b.unit_) {
      throw dimension_error(std::string("cannot apply '") + op + "' to '" +
                            std::string(symbol(a.unit_)) + "' and '" +
                            std::string(symbol(b.unit_)) + "'");
    }
  }

  double value_ = 0.0;
  Unit unit_ = Unit::Dimensionless;
};

inline Quantity light_minutes(double v) { return {v, Unit::LightMinute}; }
inline Quantity kilometers(double v) { return {v, Unit::Kilometer}; }
inline Quantity hertz(double v) { return {v, Unit::Hertz}; }
inline Quantity seconds(double v) { return {v, Unit::Second}; }
inline Quantity percent(double v) { return {v, Unit::Percent}; }

namespace detail {

enum class Dimension { Length, Time, Fraction, Other };

struct Scale {
  Dimension dim;
  double mul;  // value * mul / div lands in the dimension's base unit
  double div;
};

inline Scale scale_of(Unit u) noexcept {
  switch (u) {
    case Unit::LightMinute: return {Dimension::Length, Constants::lm_km, 1.0};
    case Unit::Kilometer: return {Dimension::Length, 1.0, 1.0};
    case Unit::Meter: return {Dimension::Length, 1.0, 1000.0};
    case Unit::Second: return {Dimension::Time, 1.0, 1.0};
    case Unit::Minute: return {Dimension::Time, 60.0, 1.0};
    case Unit::Dimensionless: return {Dimension::Fraction, 1.0, 1.0};
    // the only place a percentage becomes a fraction
    case Unit::Percent: return {Dimension::Fraction, 1.0, 100.0};
    default: return {Dimension::Other, 1.0, 1.0};
  }
}

}  // namespace detail

/// Converts between units of the same dimension: Lm, km and m; min and s;
/// percent and plain fractions. Anything else is a dimension error.
inline Quantity convert(const Quantity& q, Unit target) {
  if (q.unit() == target) return q;
  const auto from = detail::scale_of(q.unit());
  const auto to = detail::scale_of(target);
  if (from.dim == detail::Dimension::Other || from.dim != to.dim) {
    throw dimension_error("no conversion from '" + std::string(symbol(q.unit())) + "' to '" +
                          std::string(symbol(target)) + "'");
  }
  double v = q.value();
  if (from.mul != 1.0) v *= from.mul;
  if (from.div != 1.0) v /= from.div;
  if (to.div != 1.0) v *= to.div;
  if (to.mul != 1.0) v /= to.mul;
  return {v, target};
}

}  // namespace timedata
