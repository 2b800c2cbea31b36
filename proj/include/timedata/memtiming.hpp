#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "timedata/error.hpp"

/// Timing and electrical model of the memory chip: bit frequency, qubit
/// norm, phase ratios, electrode resistance, transconductance, quantum
/// efficiency, and first-in-first-out charge placement.
namespace timedata::mem {

struct QubitState {
  std::complex<double> a;
  std::complex<double> b;
};

enum class LogicLevel { Low, High };

/// A logic input: Low reads as 0 and High as 1 whatever the sign of the
/// supply convention on `voltage`.
struct LogicSignal {
  LogicLevel level = LogicLevel::Low;
  double voltage = 0.0;

  int bit() const noexcept { return level == LogicLevel::High ? 1 : 0; }
};

enum class ChargeSign { Electron, Hole };

struct Carrier {
  std::int64_t id = 0;
  double arrival_time_s = 0.0;
  ChargeSign charge_sign = ChargeSign::Electron;
};

struct Cell {
  std::int64_t address = 0;
  std::size_t distance_rank = 0;  // 0 is nearest
};

/// Memory cells ranked by distance from the injection point, plus which
/// carrier (if any) sits in each.
class CellMap {
 public:
  CellMap() = default;

  explicit CellMap(std::vector<Cell> cells) : cells_(std::move(cells)), by_rank_(cells_.size()) {
    std::vector<bool> seen(cells_.size(), false);
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      const auto r = cells_[i].distance_rank;
      if (r >= cells_.size() || seen[r]) {
        throw invariant_error("distance ranks must be a permutation of 0.." +
                              std::to_string(cells_.size() - 1));
      }
      seen[r] = true;
      by_rank_[r] = i;
      if (!occupancy_.emplace(cells_[i].address, std::nullopt).second) {
        throw invariant_error("duplicate cell address " + std::to_string(cells_[i].address));
      }
    }
  }

  /// n cells where address k is also distance rank k.
  static CellMap linear(std::size_t n) {
    std::vector<Cell> cells(n);
    for (std::size_t k = 0; k < n; ++k) cells[k] = {static_cast<std::int64_t>(k), k};
    return CellMap(std::move(cells));
  }

  std::size_t size() const noexcept { return cells_.size(); }
  const std::vector<Cell>& cells() const noexcept { return cells_; }
  const Cell& at_rank(std::size_t rank) const { return cells_.at(by_rank_.at(rank)); }

  std::optional<std::int64_t> occupant(std::int64_t address) const {
    auto it = occupancy_.find(address);
    if (it == occupancy_.end()) throw domain_error("no cell at address " + std::to_string(address));
    return it->second;
  }

  void occupy(std::int64_t address, std::int64_t carrier_id) {
    auto it = occupancy_.find(address);
    if (it == occupancy_.end()) throw domain_error("no cell at address " + std::to_string(address));
    if (it->second) throw invariant_error("cell " + std::to_string(address) + " already occupied");
    it->second = carrier_id;
  }

 private:
  std::vector<Cell> cells_;
  std::vector<std::size_t> by_rank_;
  std::map<std::int64_t, std::optional<std::int64_t>> occupancy_;
};

struct Allocation {
  std::map<std::int64_t, std::int64_t> address_of;  // carrier id -> cell address
  CellMap cells;
};

/// Earliest carrier takes the nearest cell, the latest the farthest. Equal
/// arrival times go to the lower id first.
inline Allocation waterfall_allocate(std::span<const Carrier> carriers, CellMap cells) {
  if (carriers.size() > cells.size()) {
    throw capacity_error(std::to_string(carriers.size()) + " carriers exceed " +
                         std::to_string(cells.size()) + " cells");
  }
  std::vector<Carrier> order(carriers.begin(), carriers.end());
  for (const auto& c : order) {
    if (!std::isfinite(c.arrival_time_s) || c.arrival_time_s < 0.0) {
      throw domain_error("carrier " + std::to_string(c.id) + " has invalid arrival time");
    }
  }
  std::sort(order.begin(), order.end(), [](const Carrier& x, const Carrier& y) {
    if (x.arrival_time_s != y.arrival_time_s) return x.arrival_time_s < y.arrival_time_s;
    return x.id < y.id;
  });

  Allocation out{{}, std::move(cells)};
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto address = out.cells.at_rank(k).address;
    if (!out.address_of.emplace(order[k].id, address).second) {
      throw domain_error("duplicate carrier id " + std::to_string(order[k].id));
    }
    out.cells.occupy(address, order[k].id);
  }
  return out;
}

/// nu_bit = a_in / (b_in * t). b_in counts qubit units as a plain number.
inline double bit_frequency(double a_in_bits, double b_in_qbits, double t_s) {
  if (!(a_in_bits >= 0.0)) throw domain_error("a_in must be >= 0");
  if (b_in_qbits < 0.0 || t_s < 0.0) throw domain_error("b_in and t must be > 0");
  if (b_in_qbits == 0.0 || t_s == 0.0) throw division_error("bit frequency with zero b_in or t");
  return a_in_bits / (b_in_qbits * t_s);
}

struct BitTerm {
  double i_bits = 0.0;
  double j_qbits = 0.0;
};

struct PooledBitFrequency {
  double hz = 0.0;
  double minimum_hz = 0.0;  // 1 / (2t), the single (1, 1) term
  bool meets_minimum = false;
};

/// Sum of i / (2 j t) over the terms, checked against the minimum bit
/// frequency 1 / (2t).
inline PooledBitFrequency pooled_bit_frequency(std::span<const BitTerm> terms, double t_s) {
  if (terms.empty()) throw domain_error("pooled bit frequency needs at least one term");
  if (!(t_s > 0.0)) throw domain_error("t must be > 0");
  double sum = 0.0;
  for (const auto& term : terms) {
    if (!(term.j_qbits > 0.0)) throw domain_error("j must be > 0");
    sum += term.i_bits / (2.0 * term.j_qbits * t_s);
  }
  const double minimum = 1.0 / (2.0 * t_s);
  return {sum, minimum, sum >= minimum};
}

inline constexpr double qubit_norm_tolerance = 1e-9;

inline bool validate_qubit(const QubitState& q) {
  const double norm = std::sqrt(std::norm(q.a) + std::norm(q.b));
  return std::abs(norm - 1.0) <= qubit_norm_tolerance;
}

struct PhasePair {
  double write_phase = 0.0;
  double read_phase = 0.0;
};

/// Write/read phase pairs sampled on the alpha, beta and delta poles.
struct PolePhases {
  std::vector<PhasePair> alpha;
  std::vector<PhasePair> beta;
  std::vector<PhasePair> delta;
};

struct PoleMeans {
  double alpha = 0.0;
  double beta = 0.0;
  double delta = 0.0;
};

namespace detail {

inline double mean_ratio(const std::vector<PhasePair>& pairs, const char* pole) {
  double sum = 0.0;
  for (const auto& p : pairs) {
    if (p.read_phase == 0.0) throw division_error(std::string(pole) + " pole has a zero read phase");
    sum += p.write_phase / p.read_phase;
  }
  return sum / static_cast<double>(pairs.size());
}

}  // namespace detail

/// Mean WR/RD phase ratio per pole. Alpha and beta need at least four
/// samples, delta exactly two.
inline PoleMeans phase_ratio_mean(const PolePhases& phases) {
  if (phases.alpha.size() < 4 || phases.beta.size() < 4) {
    throw domain_error("alpha and beta poles need n >= 4 phase pairs");
  }
  if (phases.delta.size() != 2) throw domain_error("delta pole needs exactly 2 phase pairs");
  return {detail::mean_ratio(phases.alpha, "alpha"), detail::mean_ratio(phases.beta, "beta"),
          detail::mean_ratio(phases.delta, "delta")};
}

/// Whether the alpha and beta means both match the delta mean. This is a
/// design target, so it is reported, not enforced.
inline bool pole_means_agree(const PoleMeans& m, double tolerance) {
  return std::abs(m.alpha - m.delta) <= tolerance && std::abs(m.beta - m.delta) <= tolerance;
}

struct ElectrodeGeometry {
  double length = 0.0;
  double width = 0.0;
  double resistivity = 0.0;
  double thickness = 0.0;

  static ElectrodeGeometry make(double length, double width, double resistivity, double thickness) {
    if (!(length > 0.0) || !(width > 0.0) || !(resistivity > 0.0) || !(thickness > 0.0)) {
      throw domain_error("electrode length, width, resistivity and thickness must be > 0");
    }
    return {length, width, resistivity, thickness};
  }

  /// Number of squares, L / W.
  double squares() const noexcept { return length / width; }
};

/// R_s = rho / thickness, ohms per square.
inline double sheet_resistance(const ElectrodeGeometry& g) { return g.resistivity / g.thickness; }

/// R = (L / W) R_s; a square electrode has R = R_s.
inline double resistance(const ElectrodeGeometry& g) { return g.squares() * sheet_resistance(g); }

/// g_m = dI_ds / dV_gs.
inline double transconductance_baseline(double dI_ds, double dV_gs) {
  if (dV_gs == 0.0) throw division_error("transconductance with zero dV_gs");
  return dI_ds / dV_gs;
}

/// Mean transconductance pooled over the drain-source channel and both
/// nanotube poles:
///   (dI_ds + (dI_cnt1 - dI_cnt2)) / (3 dV_gs + dV_cnt_beta + dV_cnt_alpha)
inline double transconductance_pooled(double dI_ds, double dI_cnt1, double dI_cnt2, double dV_gs,
                                      double dV_cnt_alpha, double dV_cnt_beta) {
  const double denom = 3.0 * dV_gs + dV_cnt_beta + dV_cnt_alpha;
  if (denom == 0.0) throw division_error("pooled transconductance with zero voltage sum");
  return (dI_ds + (dI_cnt1 - dI_cnt2)) / denom;
}

/// The nanotube contribution implied by <g_m> = (g_m1 + dg_mCNT) / 2.
inline double delta_gm_cnt(double pooled_gm, double gm1) { return 2.0 * pooled_gm - gm1; }

/// Collected carriers over entangled-storable carriers.
inline double quantum_efficiency(std::uint64_t n_collected, std::uint64_t n_entangled_storable) {
  if (n_entangled_storable == 0) throw division_error("quantum efficiency with zero storable count");
  return static_cast<double>(n_collected) / static_cast<double>(n_entangled_storable);
}

}  // namespace timedata::mem
