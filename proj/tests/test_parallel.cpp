#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <atomic>
#include <cstdlib>
#include <vector>

#include "holderlab/parallel.hpp"

using namespace holderlab;

TEST_CASE("pairwise_sum matches simple sums and is order-stable") {
  std::vector<double> v;
  for (int i = 0; i < 1000; ++i) v.push_back(1.0 / (1.0 + i));
  const double s1 = pairwise_sum(v);
  const double s2 = pairwise_sum(v);
  CHECK(s1 == s2);
  double naive = 0.0;
  for (double x : v) naive += x;
  CHECK(s1 == doctest::Approx(naive).epsilon(1e-13));

  CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
  CHECK(pairwise_sum(std::vector<double>{3.5}) == 3.5);
}

TEST_CASE("mean and sample_variance") {
  std::vector<double> v{1.0, 2.0, 3.0, 4.0};
  CHECK(mean(v) == doctest::Approx(2.5));
  CHECK(sample_variance(v) == doctest::Approx(5.0 / 3.0));
  CHECK_THROWS_AS(mean(std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS_AS(sample_variance(std::vector<double>{1.0}), std::invalid_argument);
}

TEST_CASE("resolve_threads precedence") {
  CHECK(resolve_threads(3) == 3);
  unsetenv("HOLDERLAB_THREADS");
  CHECK(resolve_threads(0) == 1);
  setenv("HOLDERLAB_THREADS", "5", 1);
  CHECK(resolve_threads(0) == 5);
  CHECK(resolve_threads(2) == 2);
  unsetenv("HOLDERLAB_THREADS");
}

TEST_CASE("parallel_for_index touches every index exactly once") {
  const std::size_t n = 1000;
  std::vector<std::atomic<int>> hits(n);
  parallel_for_index(n, 4, [&](std::size_t i) { hits[i].fetch_add(1); });
  for (std::size_t i = 0; i < n; ++i) CHECK(hits[i].load() == 1);
}

TEST_CASE("parallel_for_index propagates exceptions") {
  CHECK_THROWS_AS(
      parallel_for_index(100, 4,
                         [](std::size_t i) {
                           if (i == 37) throw std::runtime_error("boom");
                         }),
      std::runtime_error);
}

TEST_CASE("parallel results equal serial results with per-slot writes") {
  const std::size_t n = 500;
  std::vector<double> serial(n), par(n);
  auto f = [](std::size_t i) { return std::sin(static_cast<double>(i)) / (1.0 + i); };
  parallel_for_index(n, 1, [&](std::size_t i) { serial[i] = f(i); });
  parallel_for_index(n, 4, [&](std::size_t i) { par[i] = f(i); });
  CHECK(pairwise_sum(serial) == pairwise_sum(par));
}
