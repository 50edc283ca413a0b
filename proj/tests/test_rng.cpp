#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "holderlab/parallel.hpp"
#include "holderlab/rng.hpp"

using namespace holderlab;

TEST_CASE("normal_quantile hits tabulated values") {
  CHECK(normal_quantile(0.5) == 0.0);
  // Classical quantiles of the standard normal.
  CHECK(normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-13));
  CHECK(normal_quantile(0.025) == doctest::Approx(-1.959963984540054).epsilon(1e-13));
  CHECK(normal_quantile(0.8413447460685429) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(normal_quantile(1e-10) == doctest::Approx(-6.361340902404056).epsilon(1e-12));
  CHECK_THROWS_AS(normal_quantile(0.0), std::domain_error);
  CHECK_THROWS_AS(normal_quantile(1.0), std::domain_error);
}

TEST_CASE("streams are reproducible and derivation is stable") {
  RngStream a(42);
  RngStream b(42);
  auto da = a.derive("w", 0);
  auto db = b.derive("w", 0);
  for (int i = 0; i < 16; ++i) CHECK(da.next_normal() == db.next_normal());

  auto d0 = RngStream(7).derive("lvl", 0);
  auto d1 = RngStream(7).derive("lvl", 1);
  CHECK(d0.key() != d1.key());
  CHECK(RngStream(7).derive("a", 0).key() != RngStream(7).derive("b", 0).key());
}

TEST_CASE("golden fixture: first normals for seed 42, path (w,0)") {
  // Frozen from the first implementation run; guards the draw pipeline
  // (key mix, counter, quantile) against silent changes.
  auto s = RngStream(42).derive("w", 0);
  std::vector<double> got(4);
  for (auto& x : got) x = s.next_normal();
  std::vector<double> again(4);
  auto s2 = RngStream(42).derive("w", 0);
  for (auto& x : again) x = s2.next_normal();
  for (int i = 0; i < 4; ++i) CHECK(got[i] == again[i]);
  const std::vector<double> golden{0.19977087833868346, -1.5241199624273207,
                                   1.1231718609486645, 1.6298805607916145};
  for (int i = 0; i < 4; ++i) CHECK(got[i] == golden[i]);
}

TEST_CASE("uniforms are in (0,1) and moments are sane") {
  auto s = RngStream(1).derive("u", 0);
  const int n = 100000;
  std::vector<double> xs(n);
  for (auto& x : xs) {
    x = s.next_uniform();
    CHECK(x > 0.0);
    CHECK(x < 1.0);
  }
  const double m = mean(xs);
  CHECK(m == doctest::Approx(0.5).epsilon(0.01));
  const double v = sample_variance(xs);
  CHECK(v == doctest::Approx(1.0 / 12.0).epsilon(0.05));
}

TEST_CASE("normals have unit variance and independent streams decorrelate") {
  const int n = 100000;
  auto s0 = RngStream(9).derive("lvl", 0);
  auto s1 = RngStream(9).derive("lvl", 1);
  std::vector<double> a(n), b(n), prod(n);
  for (int i = 0; i < n; ++i) {
    a[i] = s0.next_normal();
    b[i] = s1.next_normal();
    prod[i] = a[i] * b[i];
  }
  CHECK(mean(a) == doctest::Approx(0.0).epsilon(1).scale(0.02));
  CHECK(sample_variance(a) == doctest::Approx(1.0).epsilon(0.03));
  const double rho = mean(prod) / std::sqrt(sample_variance(a) * sample_variance(b));
  CHECK(std::fabs(rho) < 0.05);
}
