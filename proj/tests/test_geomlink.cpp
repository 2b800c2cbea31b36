#include <cmath>
#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "timedata/geomlink.hpp"

using namespace timedata;
using namespace timedata::geom;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("slope and segment length", "[geom]") {
  CHECK(slope({0, 0}, {1, 1}) == 1.0);
  CHECK(slope({1, 2}, {3, 6}) == 2.0);
  CHECK_THROWS_AS(slope({2, 0}, {2, 5}), domain_error);
  CHECK(segment_length({1.5, -2}, {1.5, -2}) == 0.0);
  CHECK(segment_length({0, 0}, {3, 4}) == 5.0);
  CHECK(segment_length({1, 7}, {-2, 3}) == segment_length({-2, 3}, {1, 7}));

  const auto vertical = segment_attributes({2, 0}, {2, 5});
  CHECK_FALSE(vertical.slope.has_value());
  CHECK(vertical.length == 5.0);
  const auto diag = segment_attributes({0, 0}, {3, 4});
  CHECK_THAT(*diag.slope, WithinRel(4.0 / 3.0, 1e-15));
}

TEST_CASE("shared arc from both decompositions", "[geom]") {
  const auto same = shared_arc(ArcDecomposition::make(10, 3, 2, 10, 4, 1));
  CHECK(same.length == 5.0);
  CHECK(same.length_other == 5.0);
  CHECK(same.consistent);

  CHECK(shared_arc(ArcDecomposition::make(10, 6, 4, 10, 5, 5)).length == 0.0);

  const auto differ = shared_arc(ArcDecomposition::make(10, 3, 2, 12, 4, 1));
  CHECK(differ.length == 5.0);
  CHECK(differ.length_other == 7.0);
  CHECK_FALSE(differ.consistent);

  CHECK_THROWS_AS(ArcDecomposition::make(10, 8, 4, 10, 1, 1), invariant_error);
  CHECK_THROWS_AS(ArcDecomposition::make(10, -1, 4, 10, 1, 1), domain_error);
}

TEST_CASE("shared arc is consistent when both splits share the arc", "[geom][property]") {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> u(0.0, 100.0);
  for (int i = 0; i < 2000; ++i) {
    const double shared = u(rng), a1 = u(rng), a2 = u(rng), b1 = u(rng), b2 = u(rng);
    const auto d = ArcDecomposition::make(a1 + shared + a2, a1, a2, b1 + shared + b2, b1, b2);
    REQUIRE(shared_arc(d).consistent);
  }
}

TEST_CASE("midpoint Riemann area", "[geom]") {
  const Rect unit{};
  for (std::size_t n : {1u, 3u, 17u, 100u}) {
    CHECK(riemann_area([](double, double) { return 1.0; }, unit, n, n) == 1.0);
  }
  CHECK_THAT(riemann_area([](double x, double y) { return x + y; }, unit, 100, 100), WithinAbs(1.0, 1e-3));
  CHECK_THAT(riemann_area([](double x, double y) { return x * y; }, unit, 100, 100), WithinAbs(0.25, 1e-3));
  CHECK_THAT(riemann_area([](double x, double y) { return std::exp(x + y); }, unit, 200, 200),
             WithinRel(2.952492442012559, 1e-4));
  CHECK(riemann_area([](double, double) { return 1.0; }, Rect{0, 0, 0, 1}, 10, 10) == 0.0);
  CHECK_THROWS_AS(riemann_area([](double, double) { return 1.0; }, unit, 0, 10), domain_error);
  CHECK_THROWS_AS(riemann_area([](double, double) { return 1.0; }, Rect{1, 0, 0, 1}, 4, 4), domain_error);
}

TEST_CASE("midpoint triple integral", "[geom]") {
  const Box unit{};
  const Resolution3 r100{100, 100, 100};
  CHECK_THAT(triple_integral([](double, double, double) { return 1.0; }, unit, r100), WithinAbs(1.0, 1e-3));
  CHECK_THAT(triple_integral([](double, double, double t) { return t; }, unit, r100), WithinAbs(0.5, 1e-3));
  CHECK_THAT(triple_integral([](double x, double y, double t) { return x * y * t; }, unit, r100),
             WithinAbs(0.125, 1e-3));
  CHECK_THAT(triple_integral([](double x, double y, double t) { return std::exp(x + y + t); }, unit, {60, 60, 60}),
             WithinRel(5.073214111963, 1e-4));
  CHECK(triple_integral([](double, double, double) { return 1.0; }, Box{0, 1, 0, 1, 2, 2}, r100) == 0.0);
  CHECK_THROWS_AS(triple_integral([](double, double, double) { return 1.0; }, unit, {1, 0, 1}), domain_error);
}

TEST_CASE("Riemann error at least halves when the grid doubles", "[geom][property]") {
  const double exact = 2.952492442012559;  // (e - 1)^2
  auto f = [](double x, double y) { return std::exp(x + y); };
  double previous = std::abs(riemann_area(f, Rect{}, 4, 4) - exact);
  for (std::size_t n = 8; n <= 256; n *= 2) {
    const double err = std::abs(riemann_area(f, Rect{}, n, n) - exact);
    REQUIRE(err <= 0.5 * previous);
    REQUIRE(std::log2(previous / err) >= 1.0);
    previous = err;
  }
}

TEST_CASE("time split logarithm", "[geom]") {
  const auto fold = time_split_check(2, 2);
  CHECK(fold.value == 2.0);
  CHECK(fold.is_fold);
  const auto three = time_split_check(3, 9);
  CHECK_THAT(three.value, WithinAbs(3.0, 1e-14));
  CHECK_FALSE(three.is_fold);
  const auto ten = time_split_check(10, 1);
  CHECK(ten.value == 1.0);
  CHECK_FALSE(ten.is_fold);
  CHECK_THROWS_AS(time_split_check(1, 2), domain_error);
  CHECK_THROWS_AS(time_split_check(0, 2), domain_error);
  CHECK_THROWS_AS(time_split_check(2, 0), domain_error);
}

TEST_CASE("fold verdict holds exactly when t_parallel equals t", "[geom][property]") {
  std::mt19937_64 rng(62);
  std::uniform_real_distribution<double> t(1.1, 10.0), other(0.5, 20.0);
  for (int i = 0; i < 10000; ++i) {
    const double ti = t(rng);
    REQUIRE(time_split_check(ti, ti).is_fold);
    REQUIRE_THAT(time_split_check(ti, ti).value, WithinAbs(2.0, 1e-12));
    const double tp = other(rng);
    REQUIRE(time_split_check(ti, tp).is_fold == (std::abs(tp - ti) <= 1e-12 * ti));
    REQUIRE_FALSE(time_split_check(ti, ti * (1 + 1e-9)).is_fold);
  }
}

TEST_CASE("planar kinematics", "[geom]") {
  const auto k = planar_kinematics({{6, 8}, {6, 8}, 2, 2});
  CHECK(k.v == 5.0);
  CHECK(k.a == 2.5);
  CHECK(k.v_sync == 5.0);
  const auto zero = planar_kinematics({{0, 0}, {0, 0}, 3, 4});
  CHECK(zero.v == 0.0);
  CHECK(zero.a == 0.0);
  CHECK(zero.v_sync == 0.0);
  const auto same = planar_kinematics({{1, 2}, {0, 0}, 1.7, 1.7});
  CHECK_THAT(same.a, WithinRel(same.v / 1.7, 1e-15));
  CHECK_THROWS_AS(planar_kinematics({{1, 0}, {0, 0}, 0, 1}), domain_error);
  CHECK_THROWS_AS(planar_kinematics({{1, 0}, {0, 0}, 1, -1}), domain_error);
}

TEST_CASE("kinematics recover the displacement", "[geom][property]") {
  std::mt19937_64 rng(63);
  std::uniform_real_distribution<double> d(-100.0, 100.0), t(1e-3, 1e3);
  for (int i = 0; i < 10000; ++i) {
    const PlanarMotion m{{d(rng), d(rng)}, {d(rng), d(rng)}, t(rng), t(rng)};
    const auto k = planar_kinematics(m);
    REQUIRE(k.velocity_residual <= 1e-12);
    REQUIRE(k.acceleration_residual <= 1e-12);
  }
}
