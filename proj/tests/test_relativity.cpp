#include <cmath>
#include <numbers>
#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "timedata/relativity.hpp"

using namespace timedata;
using namespace timedata::rel;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
constexpr double c = Constants::c_km_per_s;
}

TEST_CASE("time factor", "[rel]") {
  CHECK(time_factor(Velocity::make(0.0)) == 1.0);
  CHECK_THAT(time_factor(Velocity::make(0.6)), WithinRel(1.25, 1e-15));
  CHECK_THAT(time_factor(Velocity::make(0.99)), WithinRel(7.08881205, 1e-8));
  CHECK_THROWS_AS(time_factor(Velocity::make(1.0)), domain_error);
  CHECK_THROWS_AS(Velocity::make(-0.1), domain_error);
}

TEST_CASE("time factor inverts the radical", "[rel][property]") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> b(0.0, 0.999);
  for (int i = 0; i < 10000; ++i) {
    const double beta = b(rng);
    REQUIRE_THAT(time_factor(Velocity::make(beta)) * std::sqrt(1.0 - beta * beta), WithinAbs(1.0, 1e-12));
  }
}

TEST_CASE("general proper-time delta", "[rel]") {
  CHECK(proper_time_delta_general(10.0, 0, 0, 0) == 10.0);
  CHECK_THAT(proper_time_delta_general(10.0, 0.6 * c, 0, 0), WithinRel(8.0, 1e-14));
  CHECK_THAT(proper_time_delta_general(10.0, 0.3 * c, 0.4 * c, 0), WithinRel(10.0 * 0.8660254038, 1e-9));
  CHECK_THROWS_AS(proper_time_delta_general(1.0, 0.6 * c, 0.8 * c, 0), domain_error);
  CHECK_THROWS_AS(proper_time_delta_general(1.0, 0, 0, 1.1 * c), domain_error);
}

TEST_CASE("proper time never exceeds coordinate time", "[rel][property]") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> v(-0.57 * c, 0.57 * c), t(0.001, 1e4);
  for (int i = 0; i < 10000; ++i) {
    const double dt = t(rng), vx = v(rng), vy = v(rng), vz = v(rng);
    const double tau = proper_time_delta_general(dt, vx, vy, vz);
    REQUIRE(tau <= dt);
    if (vx != 0.0 || vy != 0.0 || vz != 0.0) REQUIRE(tau < dt);
  }
}

TEST_CASE("simultaneity bound stops at beta = 0.5", "[rel]") {
  CHECK(std::get<double>(proper_time_delta_simultaneity(4.0, Velocity::make(0.0))) == 4.0);
  CHECK(std::get<double>(proper_time_delta_simultaneity(4.0, Velocity::make(0.5))) == 0.0);
  CHECK_THAT(std::get<double>(proper_time_delta_simultaneity(4.0, Velocity::make(0.3))), WithinRel(3.2, 1e-14));
  const auto imag = proper_time_delta_simultaneity(4.0, Velocity::make(0.6));
  REQUIRE(std::holds_alternative<ImaginaryProperTime>(imag));
  CHECK(std::get<ImaginaryProperTime>(imag).radicand < 0.0);
}

TEST_CASE("stored proper time", "[rel]") {
  CHECK_THAT(stored_proper_time(1.0), WithinAbs(0.7071, 1e-4));
  CHECK_THAT(stored_proper_time(1.0), WithinRel(0.70710678118654752, 1e-15));
  CHECK(stored_proper_time(0.0) == 0.0);
  CHECK_THAT(stored_proper_time(2.0), WithinRel(1.41421356237309505, 1e-15));
  CHECK(stored_proper_time(-2.0) == stored_proper_time(2.0));
  const auto b = stored_proper_time_branches(3.0);
  CHECK_THAT(b.cos_branch, WithinRel(b.sin_branch, 1e-15));
}

TEST_CASE("polar conversion", "[rel]") {
  auto p = polar_from_cartesian(1, 0);
  CHECK(p.r == 1.0);
  CHECK(p.phi == 0.0);
  p = polar_from_cartesian(0, 2);
  CHECK(p.r == 2.0);
  CHECK_THAT(p.phi, WithinAbs(std::numbers::pi / 2, 1e-15));
  p = polar_from_cartesian(3, 4);
  CHECK(p.r == 5.0);
  CHECK_THAT(p.phi, WithinAbs(0.927295218, 1e-9));
  p = polar_from_cartesian(0, 0);
  CHECK(p.r == 0.0);
  CHECK(p.phi == 0.0);
  p = polar_from_cartesian(-1, -0.0);
  CHECK(p.phi == std::numbers::pi);
}

TEST_CASE("Jacobian of the polar map", "[rel]") {
  CHECK(jacobian_polar({0.0, 1.3}) == 0.0);
  CHECK_THAT(jacobian_polar({5.0, 0.9273}), WithinAbs(5.0, 1e-12));
  for (double phi : {-3.0, -1.0, 0.0, 0.5, 2.0, std::numbers::pi}) {
    CHECK_THAT(jacobian_polar({1.0, phi}), WithinAbs(1.0, 1e-15));
  }
}

TEST_CASE("Jacobian equals r and the polar round trip is tight", "[rel][property]") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> r(0.0, 100.0), phi(-std::numbers::pi, std::numbers::pi);
  for (int i = 0; i < 10000; ++i) {
    const PolarPoint p{r(rng), phi(rng)};
    REQUIRE_THAT(jacobian_polar(p), WithinAbs(p.r, 1e-12));
    const auto xy = cartesian_from_polar(p);
    const auto back = cartesian_from_polar(polar_from_cartesian(xy.x, xy.y));
    REQUIRE(std::abs(back.x - xy.x) <= 1e-12 * p.r);
    REQUIRE(std::abs(back.y - xy.y) <= 1e-12 * p.r);
  }
}

TEST_CASE("charge balance", "[rel]") {
  CHECK(charge_balance(ChargeLedger::make(2.5, 0, 0)).coulombs() == 2.5);
  CHECK(charge_balance(ChargeLedger::make(1.0, 0.5, 0.2)).coulombs() == 1.3);
  CHECK(charge_balance(ChargeLedger::make(0.0, 0.7, 0.7)).coulombs() == 0.0);
  CHECK_THROWS_AS(ChargeLedger::make(1.0, -0.1, 0.0), domain_error);
  CHECK_THROWS_AS(ChargeLedger::make(NAN, 0.0, 0.0), domain_error);
}

TEST_CASE("undoing a charge balance recovers the start exactly", "[rel][property]") {
  std::mt19937_64 rng(44);
  std::uniform_real_distribution<double> q(-1e3, 1e3), flow(0.0, 1e3), expo(-30.0, 5.0);
  for (int i = 0; i < 10000; ++i) {
    const double scale = std::pow(10.0, expo(rng));
    const auto l = ChargeLedger::make(q(rng) * scale, flow(rng) * scale, flow(rng));
    const auto before = charge_before(charge_balance(l), l.q_in, l.q_out);
    REQUIRE(before == Charge(l.q_t1));
    REQUIRE(before.coulombs() == l.q_t1);
  }
}

TEST_CASE("charge density carries the factor of two", "[rel]") {
  CHECK(charge_density(2, 1) == 1.0);
  CHECK(charge_density(0, 3) == 0.0);
  CHECK_THAT(charge_density(1.6e-19, 1e-24), WithinRel(8e4, 1e-14));
  CHECK_THROWS_AS(charge_density(1, 0), division_error);
  CHECK_THROWS_AS(charge_density(1, -1), domain_error);
}

TEST_CASE("Moire wavelength", "[rel]") {
  CHECK(moire_wavelength(7, 7, 7) == 7.0);
  CHECK(moire_wavelength(2, 3, 6) == 1.0);
  CHECK(moire_wavelength_from_pitch(2, 1) == 2.0);
  CHECK_THROWS_AS(moire_wavelength(1, 1, 0), division_error);
  CHECK_THROWS_AS(moire_wavelength_from_pitch(1, 0), division_error);

  const auto agree = moire_consistency(2, 1, 1, 2, 1, 1e-12);
  CHECK(agree.agree);
  CHECK(agree.order == 1.0);
  const auto disagree = moire_consistency(2, 3, 6, 2, 1, 1e-3);
  CHECK_FALSE(disagree.agree);
  CHECK(disagree.from_spacing == 1.0);
  CHECK(disagree.from_pitch == 2.0);
}
