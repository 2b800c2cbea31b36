#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <variant>

#include "timedata/error.hpp"

namespace timedata::optics {

/// Step-index fiber: core radius, vacuum wavelength, core and cladding indices.
struct FiberSpec {
  double core_radius_m = 0.0;
  double wavelength_m = 0.0;
  double n1 = 1.0;
  double n2 = 1.0;

  static FiberSpec make(double core_radius_m, double wavelength_m, double n1, double n2) {
    if (!(core_radius_m > 0.0) || !(wavelength_m > 0.0)) {
      throw domain_error("fiber radius and wavelength must be > 0");
    }
    if (!(n1 >= 1.0) || !(n2 >= 1.0)) throw domain_error("refractive indices must be >= 1");
    return {core_radius_m, wavelength_m, n1, n2};
  }
};

struct FaradayCell {
  double verdet_rad_per_T_m = 0.0;
  double b_field_T = 0.0;
  double path_m = 0.0;

  static FaradayCell make(double verdet, double b_field, double path) {
    if (!(path >= 0.0)) throw domain_error("Faraday path length must be >= 0");
    return {verdet, b_field, path};
  }
};

/// Thin cylindrical shell around an isolated volume. `mean_radius_m` is the
/// shell's mid-wall radius; `circular_radius_m` the enclosed cross-section
/// radius the shell must be thin against.
struct IsolationShell {
  double shell_thickness_m = 0.0;
  double length_m = 0.0;
  double mean_radius_m = 0.0;
  double circular_radius_m = 0.0;

  static constexpr double thin_ratio = 0.1;

  static IsolationShell make(double thickness, double length, double mean_radius,
                             double circular_radius) {
    if (!(thickness > 0.0) || !(length > 0.0) || !(mean_radius > 0.0) || !(circular_radius > 0.0)) {
      throw domain_error("isolation shell dimensions must be > 0");
    }
    if (!(thickness < thin_ratio * circular_radius)) {
      throw invariant_error("thin-shell assumption violated: thickness " + std::to_string(thickness) +
                            " m is not below 0.1 x r_C = " +
                            std::to_string(thin_ratio * circular_radius) + " m");
    }
    if (!(mean_radius - thickness / 2.0 > 0.0)) {
      throw invariant_error("shell inner radius must be > 0");
    }
    return {thickness, length, mean_radius, circular_radius};
  }

  double inner_radius() const noexcept { return mean_radius_m - shell_thickness_m / 2.0; }
  double outer_radius() const noexcept { return mean_radius_m + shell_thickness_m / 2.0; }
};

struct ShellGeometry {
  double area_m2 = 0.0;
  double volume_m3 = 0.0;
};

/// Below this V-number only the fundamental mode propagates. The value is
/// taken as given rather than the textbook 2.405 step-index cutoff.
inline constexpr double single_mode_cutoff = 1.57;

/// Normalized frequency (2 pi a / lambda) sqrt(n1^2 - n2^2).
inline double v_number(const FiberSpec& f) {
  if (f.n1 < f.n2) throw domain_error("v_number requires n1 >= n2 (guided mode)");
  return 2.0 * std::numbers::pi * f.core_radius_m / f.wavelength_m *
         std::sqrt(f.n1 * f.n1 - f.n2 * f.n2);
}

inline bool is_single_mode(double v) {
  if (!(v >= 0.0)) throw domain_error("V-number must be >= 0");
  return v < single_mode_cutoff;
}

/// Incidence beyond the critical angle; no refracted ray exists.
struct TotalInternalReflection {
  double sine_ratio = 0.0;  // sin(theta1) n1 / n2, > 1

  friend constexpr bool operator==(TotalInternalReflection, TotalInternalReflection) = default;
};

using Refraction = std::variant<double, TotalInternalReflection>;

/// theta2 from sin(theta1) n1 = sin(theta2) n2.
inline Refraction snell_refracted_angle(double theta1, double n1, double n2) {
  if (!(n1 > 0.0) || !(n2 > 0.0)) throw domain_error("refractive indices must be > 0");
  const double s = std::sin(theta1) * n1 / n2;
  if (std::abs(s) > 1.0) return TotalInternalReflection{s};
  return std::asin(s);
}

/// zeta = V B l.
inline double faraday_rotation(const FaradayCell& c) {
  return c.verdet_rad_per_T_m * c.b_field_T * c.path_m;
}

/// Surface A = 2 pi b (b + l) and shell volume V = 2 pi <r> l b.
inline ShellGeometry isolation_geometry(const IsolationShell& s) {
  const double b = s.shell_thickness_m;
  return {2.0 * std::numbers::pi * b * (b + s.length_m),
          2.0 * std::numbers::pi * s.mean_radius_m * s.length_m * b};
}

enum class IsolationVerdict { Isolated, NotIsolated };

/// Isolated when the residual field is within tolerance (inclusive).
inline IsolationVerdict isolation_verdict(double residual_b_T, double tolerance_T) {
  if (!(tolerance_T > 0.0)) throw domain_error("isolation tolerance must be > 0");
  return std::abs(residual_b_T) <= tolerance_T ? IsolationVerdict::Isolated
                                               : IsolationVerdict::NotIsolated;
}

}  // namespace timedata::optics
