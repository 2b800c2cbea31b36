#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>
#include <optional>
#include <string>

#include "timedata/error.hpp"

/// Plane geometry and integration for the comlink data planes.
namespace timedata::geom {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr bool operator==(const Point2&, const Point2&) = default;
};

/// m = dy / dx; a vertical segment has no slope.
inline double slope(const Point2& p1, const Point2& p2) {
  if (p2.x == p1.x) throw domain_error("undefined slope: vertical segment (x2 == x1)");
  return (p2.y - p1.y) / (p2.x - p1.x);
}

inline double segment_length(const Point2& p1, const Point2& p2) {
  return std::hypot(p2.x - p1.x, p2.y - p1.y);
}

/// A segment described by its slope (absent when vertical) and length.
struct SegmentAttributes {
  std::optional<double> slope;
  double length = 0.0;
};

inline SegmentAttributes segment_attributes(const Point2& p1, const Point2& p2) {
  SegmentAttributes out{std::nullopt, segment_length(p1, p2)};
  if (p2.x != p1.x) out.slope = slope(p1, p2);
  return out;
}

/// Two ways of cutting the shared arc PP' out of the arcs AB and B'A'.
struct ArcDecomposition {
  double total_ab = 0.0;
  double ap_prime = 0.0;
  double pb = 0.0;
  double total_ba = 0.0;
  double bp_prime = 0.0;
  double pa_prime = 0.0;

  static ArcDecomposition make(double total_ab, double ap_prime, double pb, double total_ba,
                               double bp_prime, double pa_prime) {
    for (double v : {total_ab, ap_prime, pb, total_ba, bp_prime, pa_prime}) {
      if (!(v >= 0.0)) throw domain_error("arc lengths must be >= 0");
    }
    ArcDecomposition d{total_ab, ap_prime, pb, total_ba, bp_prime, pa_prime};
    if (ap_prime + pb > total_ab || bp_prime + pa_prime > total_ba) {
      throw invariant_error("arc pieces exceed their enclosing arc");
    }
    return d;
  }
};

struct SharedArc {
  double length = 0.0;        // from AB
  double length_other = 0.0;  // from B'A'
  bool consistent = false;
};

inline SharedArc shared_arc(const ArcDecomposition& d, double tolerance = 1e-9) {
  const double l1 = d.total_ab - d.ap_prime - d.pb;
  const double l2 = d.total_ba - d.bp_prime - d.pa_prime;
  if (l1 < 0.0 || l2 < 0.0) {
    throw invariant_error("negative shared arc (" + std::to_string(l1) + ", " + std::to_string(l2) + ")");
  }
  return {l1, l2, std::abs(l1 - l2) <= tolerance};
}

struct Rect {
  double x0 = 0.0, x1 = 1.0;
  double y0 = 0.0, y1 = 1.0;
};

struct Box {
  double x0 = 0.0, x1 = 1.0;
  double y0 = 0.0, y1 = 1.0;
  double t0 = 0.0, t1 = 1.0;
};

struct Resolution3 {
  std::size_t nx = 1, ny = 1, nt = 1;
};

namespace detail {

inline void check_interval(double lo, double hi, const char* axis) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || hi < lo) {
    throw domain_error(std::string("integration bounds on ") + axis + " must be finite with lo <= hi");
  }
}

}  // namespace detail

/// Midpoint-rule double sum over an m x n grid of the rectangle. Evaluation
/// order is fixed, so results are reproducible bit for bit.
template <std::invocable<double, double> F>
double riemann_area(F&& f, const Rect& domain, std::size_t m, std::size_t n) {
  if (m < 1 || n < 1) throw domain_error("grid resolution must be >= 1");
  detail::check_interval(domain.x0, domain.x1, "x");
  detail::check_interval(domain.y0, domain.y1, "y");
  const double hx = (domain.x1 - domain.x0) / static_cast<double>(m);
  const double hy = (domain.y1 - domain.y0) / static_cast<double>(n);
  if (hx == 0.0 || hy == 0.0) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double x = domain.x0 + (static_cast<double>(i) + 0.5) * hx;
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      row += f(x, domain.y0 + (static_cast<double>(j) + 0.5) * hy);
    }
    sum += row;
  }
  return sum * hx * hy;
}

/// Midpoint-rule triple sum of f(x, y, t) over the box.
template <std::invocable<double, double, double> F>
double triple_integral(F&& f, const Box& region, const Resolution3& res) {
  if (res.nx < 1 || res.ny < 1 || res.nt < 1) throw domain_error("grid resolution must be >= 1");
  detail::check_interval(region.x0, region.x1, "x");
  detail::check_interval(region.y0, region.y1, "y");
  detail::check_interval(region.t0, region.t1, "t");
  const double hx = (region.x1 - region.x0) / static_cast<double>(res.nx);
  const double hy = (region.y1 - region.y0) / static_cast<double>(res.ny);
  const double ht = (region.t1 - region.t0) / static_cast<double>(res.nt);
  if (hx == 0.0 || hy == 0.0 || ht == 0.0) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < res.nx; ++i) {
    const double x = region.x0 + (static_cast<double>(i) + 0.5) * hx;
    for (std::size_t j = 0; j < res.ny; ++j) {
      const double y = region.y0 + (static_cast<double>(j) + 0.5) * hy;
      double column = 0.0;
      for (std::size_t k = 0; k < res.nt; ++k) {
        column += f(x, y, region.t0 + (static_cast<double>(k) + 0.5) * ht);
      }
      sum += column;
    }
  }
  return sum * hx * hy * ht;
}

struct TimeSplit {
  double value = 0.0;  // log_t(t * t_parallel)
  bool is_fold = false;
};

inline constexpr double fold_tolerance = 1e-12;

/// log_t(t t_par), which is 2 exactly when t_par = t. The fold verdict
/// compares t_par with t directly (relative tolerance) rather than the
/// logarithm with 2, since the latter amplifies rounding by 1 / ln t.
inline TimeSplit time_split_check(double t, double t_parallel) {
  if (!(t > 0.0) || t == 1.0) throw domain_error("logarithm base t must be > 0 and != 1");
  if (!(t_parallel > 0.0)) throw domain_error("t_parallel must be > 0");
  return {std::log(t * t_parallel) / std::log(t), std::abs(t_parallel - t) <= fold_tolerance * t};
}

struct PlanarMotion {
  Point2 pb;        // displacement pB
  Point2 pp_prime;  // displacement PP'
  double t = 1.0;
  double t_parallel = 1.0;
};

struct Kinematics {
  double v = 0.0;
  double a = 0.0;
  double v_sync = 0.0;
  double velocity_residual = 0.0;      // |v t - |pB||
  double acceleration_residual = 0.0;  // |a t t_par - |pB||
};

/// v = |pB| / t, a = |pB| / (t t_par), v_sync = |PP'| / t.
inline Kinematics planar_kinematics(const PlanarMotion& m) {
  if (!(m.t > 0.0) || !(m.t_parallel > 0.0)) throw domain_error("times must be > 0");
  const double pb = std::hypot(m.pb.x, m.pb.y);
  const double pp = std::hypot(m.pp_prime.x, m.pp_prime.y);
  Kinematics k;
  k.v = pb / m.t;
  k.a = pb / (m.t * m.t_parallel);
  k.v_sync = pp / m.t;
  k.velocity_residual = std::abs(k.v * m.t - pb);
  k.acceleration_residual = std::abs(k.a * m.t * m.t_parallel - pb);
  return k;
}

}  // namespace timedata::geom
