#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <map>
#include <optional>
#include <queue>
#include <random>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "timedata/error.hpp"

/// Partitioned parallel sort with complexity instrumentation.
namespace timedata::ptvda {

template <std::totally_ordered T>
struct SortInstance {
  std::vector<T> elements;
  std::size_t partitions = 1;

  static SortInstance make(std::vector<T> elements, std::size_t partitions) {
    const std::size_t cap = std::max<std::size_t>(1, elements.size());
    if (partitions < 1 || partitions > cap) {
      throw domain_error("partitions must lie in [1, max(1, n)] = [1, " + std::to_string(cap) +
                         "], got " + std::to_string(partitions));
    }
    return {std::move(elements), partitions};
  }
};

namespace detail {

/// [begin, end) of partition k when n elements are split p ways.
inline std::pair<std::size_t, std::size_t> partition_bounds(std::size_t n, std::size_t p,
                                                            std::size_t k) {
  return {k * n / p, (k + 1) * n / p};
}

}  // namespace detail

/// Sorts each of the p contiguous partitions on its own worker, then merges
/// them lowest key first, ties going to the lower partition index. The
/// output does not depend on how the workers are scheduled.
template <std::totally_ordered T>
std::vector<T> parallel_sort(const SortInstance<T>& instance) {
  const std::size_t n = instance.elements.size();
  const std::size_t p = std::clamp<std::size_t>(instance.partitions, 1, std::max<std::size_t>(1, n));
  std::vector<std::vector<T>> runs(p);
  for (std::size_t k = 0; k < p; ++k) {
    const auto [lo, hi] = detail::partition_bounds(n, p, k);
    runs[k].assign(instance.elements.begin() + static_cast<std::ptrdiff_t>(lo),
                   instance.elements.begin() + static_cast<std::ptrdiff_t>(hi));
  }
  if (p == 1) {
    std::sort(runs[0].begin(), runs[0].end());
    return std::move(runs[0]);
  }

  std::vector<std::exception_ptr> failures(p);
  {
    std::vector<std::jthread> workers;
    workers.reserve(p - 1);
    for (std::size_t k = 1; k < p; ++k) {
      workers.emplace_back([&runs, &failures, k] {
        try {
          std::sort(runs[k].begin(), runs[k].end());
        } catch (...) {
          failures[k] = std::current_exception();
        }
      });
    }
    try {
      std::sort(runs[0].begin(), runs[0].end());
    } catch (...) {
      failures[0] = std::current_exception();
    }
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  struct Head {
    std::size_t run;
    std::size_t pos;
  };
  auto after = [&runs](const Head& x, const Head& y) {
    const T& a = runs[x.run][x.pos];
    const T& b = runs[y.run][y.pos];
    if (b < a) return true;
    if (a < b) return false;
    return x.run > y.run;
  };
  std::priority_queue<Head, std::vector<Head>, decltype(after)> heads(after);
  for (std::size_t k = 0; k < p; ++k) {
    if (!runs[k].empty()) heads.push({k, 0});
  }

  std::vector<T> out;
  out.reserve(n);
  while (!heads.empty()) {
    auto h = heads.top();
    heads.pop();
    out.push_back(std::move(runs[h.run][h.pos]));
    if (++h.pos < runs[h.run].size()) heads.push(h);
  }
  return out;
}

/// A problem size that may be the explicit "infinite" marker.
class Extent {
 public:
  static Extent finite(std::uint64_t n) { return Extent(n, false); }
  static Extent infinite() { return Extent(0, true); }

  bool is_infinite() const noexcept { return infinite_; }
  std::uint64_t value() const noexcept { return n_; }

 private:
  Extent(std::uint64_t n, bool inf) : n_(n), infinite_(inf) {}

  std::uint64_t n_;
  bool infinite_;
};

enum class RatioClass { Unit, Vanishing, Diverging };

inline constexpr double default_m_bound = 1e6;

/// Collapses n / n' onto {0, 1, inf}. A ratio beyond m_bound either way (or
/// an infinite marker) is Diverging or Vanishing; a bounded ratio counts as
/// Unit.
inline RatioClass classify_ratio(Extent n, Extent n_prime, double m_bound = default_m_bound) {
  if (!(m_bound > 0.0)) throw domain_error("M bound must be > 0");
  if (n.is_infinite() && n_prime.is_infinite()) {
    throw domain_error("ratio of two infinite extents is ambiguous");
  }
  if (n.is_infinite()) return RatioClass::Diverging;
  if (n_prime.is_infinite()) return RatioClass::Vanishing;
  if (n.value() < 1 || n_prime.value() < 1) throw domain_error("extents must be >= 1");
  if (n.value() == n_prime.value()) return RatioClass::Unit;
  const double ratio = static_cast<double>(n.value()) / static_cast<double>(n_prime.value());
  if (ratio > m_bound) return RatioClass::Diverging;
  if (1.0 / ratio > m_bound) return RatioClass::Vanishing;
  return RatioClass::Unit;
}

enum class KeyPattern { Uniform, Sorted, Identical };

struct ProbeOptions {
  std::size_t trials = 3;
  std::size_t partitions = 4;
  KeyPattern pattern = KeyPattern::Uniform;
  std::uint64_t seed = 0x5eed;
};

/// elapsed ~ a * n ln n + b.
struct NLogNFit {
  double a = 0.0;
  double b = 0.0;
  double residual_rms = 0.0;
};

struct ComplexityProbe {
  std::vector<std::size_t> sizes;
  std::map<std::size_t, double> measured;  // n -> median elapsed seconds
  std::optional<NLogNFit> fitted_model;
  std::optional<double> loglog_slope;
  std::vector<std::string> warnings;

  static constexpr double sub_quadratic_slope = 1.5;

  bool sub_quadratic() const { return loglog_slope && *loglog_slope < sub_quadratic_slope; }
};

namespace detail {

inline std::vector<double> make_keys(std::size_t n, KeyPattern pattern, std::mt19937_64& rng) {
  std::vector<double> keys(n);
  switch (pattern) {
    case KeyPattern::Uniform: {
      std::uniform_real_distribution<double> dist(0.0, 1.0);
      for (auto& k : keys) k = dist(rng);
      break;
    }
    case KeyPattern::Sorted:
      for (std::size_t i = 0; i < n; ++i) keys[i] = static_cast<double>(i);
      break;
    case KeyPattern::Identical:
      std::fill(keys.begin(), keys.end(), 42.0);
      break;
  }
  return keys;
}

/// Smallest positive step the steady clock reports.
inline double clock_resolution_s() {
  using clock = std::chrono::steady_clock;
  double best = 1.0;
  for (int i = 0; i < 64; ++i) {
    const auto t0 = clock::now();
    auto t1 = clock::now();
    while (t1 == t0) t1 = clock::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

/// Ordinary least squares y = slope * x + intercept.
inline std::pair<double, double> least_squares(std::span<const double> x, std::span<const double> y) {
  const double m = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = m * sxx - sx * sx;
  if (denom == 0.0) throw domain_error("degenerate least-squares fit");
  const double slope = (m * sxy - sx * sy) / denom;
  return {slope, (sy - slope * sx) / m};
}

}  // namespace detail

/// Times parallel_sort on generated keys at each size (median of `trials`
/// runs), fits a * n ln n + b, and measures the log-log growth exponent.
inline ComplexityProbe scaling_probe(std::span<const std::size_t> sizes, const ProbeOptions& opts = {}) {
  if (sizes.size() < 2) throw domain_error("scaling probe needs at least 2 sizes to fit");
  if (opts.trials < 3) throw domain_error("scaling probe needs at least 3 trials");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < 2) throw domain_error("probe sizes must be >= 2");
    if (i > 0 && sizes[i] <= sizes[i - 1]) throw domain_error("probe sizes must be strictly increasing");
  }

  ComplexityProbe probe;
  probe.sizes.assign(sizes.begin(), sizes.end());
  std::mt19937_64 rng(opts.seed);
  for (const auto n : sizes) {
    std::vector<double> samples;
    for (std::size_t trial = 0; trial < opts.trials; ++trial) {
      auto instance = SortInstance<double>::make(detail::make_keys(n, opts.pattern, rng),
                                                 std::min(opts.partitions, n));
      const auto t0 = std::chrono::steady_clock::now();
      const auto sorted = parallel_sort(instance);
      const auto t1 = std::chrono::steady_clock::now();
      if (!std::is_sorted(sorted.begin(), sorted.end())) {
        throw invariant_error("parallel_sort produced unsorted output at n = " + std::to_string(n));
      }
      samples.push_back(std::chrono::duration<double>(t1 - t0).count());
    }
    std::nth_element(samples.begin(), samples.begin() + static_cast<std::ptrdiff_t>(samples.size() / 2),
                     samples.end());
    probe.measured[n] = samples[samples.size() / 2];
  }

  const double resolution = detail::clock_resolution_s();
  for (const auto& [n, t] : probe.measured) {
    if (t <= resolution) {
      probe.warnings.push_back("median time at n = " + std::to_string(n) +
                               " is below clock resolution; fit skipped");
      return probe;
    }
  }

  std::vector<double> nlogn, elapsed, log_n, log_t;
  for (const auto& [n, t] : probe.measured) {
    const double dn = static_cast<double>(n);
    nlogn.push_back(dn * std::log(dn));
    elapsed.push_back(t);
    log_n.push_back(std::log(dn));
    log_t.push_back(std::log(t));
  }
  const auto [a, b] = detail::least_squares(nlogn, elapsed);
  double ss = 0.0;
  for (std::size_t i = 0; i < nlogn.size(); ++i) {
    const double r = elapsed[i] - (a * nlogn[i] + b);
    ss += r * r;
  }
  probe.fitted_model = NLogNFit{a, b, std::sqrt(ss / static_cast<double>(nlogn.size()))};
  probe.loglog_slope = detail::least_squares(log_n, log_t).first;
  return probe;
}

}  // namespace timedata::ptvda
