#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "timedata/ptvda.hpp"

using namespace timedata;
using namespace timedata::ptvda;

namespace {

// Insertion sort: slow, obvious, and independent of std::sort.
template <class T>
std::vector<T> reference_sort(std::vector<T> xs) {
  for (std::size_t i = 1; i < xs.size(); ++i) {
    for (std::size_t j = i; j > 0 && xs[j] < xs[j - 1]; --j) std::swap(xs[j], xs[j - 1]);
  }
  return xs;
}

}  // namespace

TEST_CASE("parallel sort examples", "[sort]") {
  CHECK(parallel_sort(SortInstance<int>::make({}, 1)).empty());
  CHECK(parallel_sort(SortInstance<int>::make({3, 1, 2}, 1)) == std::vector<int>{1, 2, 3});
  CHECK(parallel_sort(SortInstance<int>::make({3, 1, 2}, 3)) == std::vector<int>{1, 2, 3});

  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> keys(1000);
  for (auto& k : keys) k = u(rng);
  CHECK(parallel_sort(SortInstance<double>::make(keys, 4)) == reference_sort(keys));
}

TEST_CASE("partition count must fit the input", "[sort]") {
  CHECK_THROWS_AS(SortInstance<int>::make({1, 2}, 0), domain_error);
  CHECK_THROWS_AS(SortInstance<int>::make({1, 2}, 3), domain_error);
  CHECK_NOTHROW(SortInstance<int>::make({}, 1));
  CHECK_THROWS_AS(SortInstance<int>::make({}, 2), domain_error);
}

TEST_CASE("sorting strings and identical keys", "[sort]") {
  const std::vector<std::string> words{"pear", "apple", "fig", "apple", "kiwi", "date"};
  CHECK(parallel_sort(SortInstance<std::string>::make(words, 3)) == reference_sort(words));
  const std::vector<int> same(500, 7);
  CHECK(parallel_sort(SortInstance<int>::make(same, 8)) == same);
}

TEST_CASE("output is independent of partition count and preserves the multiset", "[sort][property]") {
  std::mt19937_64 rng(52);
  std::uniform_int_distribution<std::size_t> size(0, 600);
  std::uniform_int_distribution<int> key(-50, 50);  // narrow range forces duplicates
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> xs(size(rng));
    for (auto& x : xs) x = key(rng);
    const auto expected = reference_sort(xs);
    for (std::size_t p : {1u, 2u, 4u, 8u}) {
      if (p > std::max<std::size_t>(1, xs.size())) continue;
      const auto got = parallel_sort(SortInstance<int>::make(xs, p));
      REQUIRE(got == expected);
      REQUIRE(oracle::multiset(got) == oracle::multiset(xs));
    }
  }
}

TEST_CASE("ratio classification", "[sort]") {
  const auto k = Extent::finite(42);
  CHECK(classify_ratio(k, k, 1e3) == RatioClass::Unit);
  CHECK(classify_ratio(Extent::infinite(), k, 1e3) == RatioClass::Diverging);
  CHECK(classify_ratio(k, Extent::infinite(), 1e3) == RatioClass::Vanishing);
  CHECK(classify_ratio(Extent::finite(10), Extent::finite(10'000'000), 1e3) == RatioClass::Vanishing);
  CHECK(classify_ratio(Extent::finite(10'000'000), Extent::finite(10), 1e3) == RatioClass::Diverging);
  CHECK(classify_ratio(Extent::finite(10), Extent::finite(20), 1e3) == RatioClass::Unit);
  CHECK(classify_ratio(Extent::finite(10), Extent::finite(10'000'000)) == RatioClass::Unit);
  CHECK_THROWS_AS(classify_ratio(Extent::infinite(), Extent::infinite()), domain_error);
  CHECK_THROWS_AS(classify_ratio(Extent::finite(0), k), domain_error);
  CHECK_THROWS_AS(classify_ratio(k, k, 0.0), domain_error);
}

TEST_CASE("scaling probe input checks", "[sort]") {
  const std::vector<std::size_t> one{1000};
  CHECK_THROWS_AS(scaling_probe(one), domain_error);
  const std::vector<std::size_t> two{1000, 2000};
  CHECK_THROWS_AS(scaling_probe(two, {.trials = 2}), domain_error);
  const std::vector<std::size_t> unordered{2000, 1000};
  CHECK_THROWS_AS(scaling_probe(unordered), domain_error);
  const std::vector<std::size_t> tiny{1, 10};
  CHECK_THROWS_AS(scaling_probe(tiny), domain_error);
}

TEST_CASE("scaling probe reports sub-quadratic growth", "[sort][timing]") {
  const std::vector<std::size_t> sizes{1000, 10000, 100000};
  for (const auto pattern : {KeyPattern::Sorted, KeyPattern::Uniform, KeyPattern::Identical}) {
    const auto probe = scaling_probe(sizes, {.trials = 3, .partitions = 4, .pattern = pattern});
    REQUIRE(probe.measured.size() == sizes.size());
    if (!probe.warnings.empty()) {
      WARN(probe.warnings.front());
      continue;
    }
    REQUIRE(probe.fitted_model.has_value());
    INFO("slope " << *probe.loglog_slope);
    CHECK(probe.sub_quadratic());
  }
}
