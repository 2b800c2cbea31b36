#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <variant>

#include <boost/multiprecision/cpp_int.hpp>

#include "timedata/error.hpp"
#include "timedata/units.hpp"

namespace timedata::rel {

/// Speed as a fraction of c.
struct Velocity {
  double beta = 0.0;

  static Velocity make(double beta) {
    if (!std::isfinite(beta) || beta < 0.0) throw domain_error("beta must be finite and >= 0");
    return {beta};
  }
};

/// 1 / sqrt(1 - beta^2).
inline double time_factor(const Velocity& v) {
  if (!(v.beta < 1.0)) throw domain_error("time factor requires beta < 1, got " + std::to_string(v.beta));
  return 1.0 / std::sqrt(1.0 - v.beta * v.beta);
}

/// dtau = dt sqrt(1 - |v|^2 / c^2) with velocity components in km/s.
inline double proper_time_delta_general(double dt_s, double vx_km_s, double vy_km_s, double vz_km_s) {
  constexpr double c = Constants::c_km_per_s;
  const double beta2 = (vx_km_s * vx_km_s + vy_km_s * vy_km_s + vz_km_s * vz_km_s) / (c * c);
  if (!(beta2 < 1.0)) throw domain_error("total speed must be below c");
  return dt_s * std::sqrt(1.0 - beta2);
}

/// Returned instead of a proper time when the simultaneity radicand
/// 1 - 4 beta^2 is negative; the proper time would be imaginary.
struct ImaginaryProperTime {
  double radicand = 0.0;

  friend constexpr bool operator==(ImaginaryProperTime, ImaginaryProperTime) = default;
};

using SimultaneityDelta = std::variant<double, ImaginaryProperTime>;

/// Upper bound dt sqrt(1 - 4 beta^2) on the proper time of two equal,
/// simultaneous motions.
inline SimultaneityDelta proper_time_delta_simultaneity(double dt_s, const Velocity& v) {
  const double radicand = 1.0 - 4.0 * v.beta * v.beta;
  if (radicand < 0.0) return ImaginaryProperTime{radicand};
  return dt_s * std::sqrt(radicand);
}

/// The two branches |t0| cos(pi/4) and |t0| sin(pi/4) of the stored proper time.
struct StoredProperTime {
  double cos_branch = 0.0;
  double sin_branch = 0.0;
};

inline StoredProperTime stored_proper_time_branches(double t_dot_0) {
  constexpr double quarter = std::numbers::pi / 4.0;
  return {std::abs(t_dot_0) * std::cos(quarter), std::abs(t_dot_0) * std::sin(quarter)};
}

/// tau_Sigma = |t0| cos(pi/4).
inline double stored_proper_time(double t_dot_0) {
  const auto branches = stored_proper_time_branches(t_dot_0);
  if (std::abs(branches.cos_branch - branches.sin_branch) > 1e-15 * (1.0 + std::abs(t_dot_0))) {
    throw invariant_error("cos(pi/4) and sin(pi/4) branches disagree");
  }
  return branches.cos_branch;
}

struct PolarPoint {
  double r = 0.0;
  double phi = 0.0;  // (-pi, pi]
};

struct Cartesian {
  double x = 0.0;
  double y = 0.0;
};

/// The origin maps to phi = 0.
inline PolarPoint polar_from_cartesian(double x, double y) {
  const double r = std::hypot(x, y);
  if (r == 0.0) return {0.0, 0.0};
  double phi = std::atan2(y, x);
  if (phi == -std::numbers::pi) phi = std::numbers::pi;
  return {r, phi};
}

inline Cartesian cartesian_from_polar(const PolarPoint& p) {
  return {p.r * std::cos(p.phi), p.r * std::sin(p.phi)};
}

/// det d(x, y)/d(r, phi) assembled from the four partial derivatives.
inline double jacobian_polar(const PolarPoint& p) {
  const double c = std::cos(p.phi);
  const double s = std::sin(p.phi);
  const double dx_dr = c;
  const double dx_dphi = -p.r * s;
  const double dy_dr = s;
  const double dy_dphi = p.r * c;
  return dx_dr * dy_dphi - dx_dphi * dy_dr;
}

/// Charge in coulombs held exactly, so that balancing a ledger and undoing
/// it gives back the starting charge bit for bit.
class Charge {
 public:
  using exact_type = boost::multiprecision::cpp_rational;

  Charge() = default;
  explicit Charge(double coulombs) : exact_(checked(coulombs)) {}
  explicit Charge(exact_type exact) : exact_(std::move(exact)) {}

  double coulombs() const { return exact_.convert_to<double>(); }
  const exact_type& exact() const noexcept { return exact_; }

  friend bool operator==(const Charge&, const Charge&) = default;

 private:
  static double checked(double q) {
    if (!std::isfinite(q)) throw domain_error("charge must be finite");
    return q;
  }

  exact_type exact_{0};
};

struct ChargeLedger {
  double q_t1 = 0.0;
  double q_in = 0.0;
  double q_out = 0.0;

  static ChargeLedger make(double q_t1, double q_in, double q_out) {
    if (!std::isfinite(q_t1)) throw domain_error("Q(t1) must be finite");
    if (!(q_in >= 0.0) || !(q_out >= 0.0) || !std::isfinite(q_in) || !std::isfinite(q_out)) {
      throw domain_error("charge flows must be finite and >= 0");
    }
    return {q_t1, q_in, q_out};
  }
};

/// Q(t2) = Q(t1) + Q_in - Q_out.
inline Charge charge_balance(const ChargeLedger& l) {
  return Charge(Charge(l.q_t1).exact() + Charge(l.q_in).exact() - Charge(l.q_out).exact());
}

/// Q(t1) = Q(t2) - Q_in + Q_out.
inline Charge charge_before(const Charge& q_t2, double q_in, double q_out) {
  if (!(q_in >= 0.0) || !(q_out >= 0.0)) throw domain_error("charge flows must be >= 0");
  return Charge(q_t2.exact() - Charge(q_in).exact() + Charge(q_out).exact());
}

/// rho = Q / (2 V) on one capacitor plate.
inline double charge_density(double q_total, double volume_m3) {
  if (volume_m3 < 0.0) throw domain_error("volume must be > 0");
  if (volume_m3 == 0.0) throw division_error("charge density over zero volume");
  return q_total / (2.0 * volume_m3);
}

/// lambda = x_delta0 x_delta / x_pattern.
inline double moire_wavelength(double x_delta0, double x_delta, double x_pattern) {
  if (x_pattern == 0.0) throw division_error("Moire wavelength with zero pattern spacing");
  if (x_pattern < 0.0) throw domain_error("pattern spacing must be > 0");
  return x_delta0 * x_delta / x_pattern;
}

/// lambda = p^2 / (2 dp) from the grating pitch and its mismatch.
inline double moire_wavelength_from_pitch(double pitch, double delta_pitch) {
  if (delta_pitch == 0.0) throw division_error("Moire wavelength with zero pitch mismatch");
  if (delta_pitch < 0.0) throw domain_error("pitch mismatch must be > 0");
  return pitch * pitch / (2.0 * delta_pitch);
}

struct MoireConsistency {
  double from_spacing = 0.0;
  double from_pitch = 0.0;
  double order = 0.0;  // n in lambda = n p
  bool agree = false;
};

/// Evaluates both parameterizations and reports whether they match within
/// `tolerance` (absolute).
inline MoireConsistency moire_consistency(double x_delta0, double x_delta, double x_pattern,
                                          double pitch, double delta_pitch, double tolerance) {
  const double a = moire_wavelength(x_delta0, x_delta, x_pattern);
  const double b = moire_wavelength_from_pitch(pitch, delta_pitch);
  return {a, b, pitch != 0.0 ? b / pitch : 0.0, std::abs(a - b) <= tolerance};
}

}  // namespace timedata::rel
