#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "holderlab/inequalities.hpp"
#include "holderlab/rng.hpp"

using namespace holderlab;

namespace {

SampledPath scalar_path(std::vector<double> pts, std::vector<double> vals) {
  return SampledPath(Partition(std::move(pts)), 1, std::move(vals));
}

SampledPath tent_path(std::size_t N) {
  auto grid = uniform_partition(N, 1.0);
  std::vector<double> vals(N + 1);
  for (std::size_t i = 0; i <= N; ++i) vals[i] = std::fabs(grid.points[i] - 0.5);
  return SampledPath(std::move(grid), 1, std::move(vals));
}

}  // namespace

TEST_CASE("make_report tolerance semantics") {
  CHECK(make_report("x", 1.0, 1.0).holds);
  CHECK(make_report("x", 1.0, 1.0 - 1e-13).holds);        // inside tolerance
  CHECK_FALSE(make_report("x", 1.0, 1.0 - 1e-9).holds);   // outside
  CHECK(make_report("x", 0.0, 0.0).slack == 0.0);
}

TEST_CASE("interpolation_inequality trivial cases") {
  auto c = scalar_path({0.0, 0.5, 1.0}, {2.0, 2.0, 2.0});
  auto [r1, r2] = interpolation_inequality(c, 0.5, 0.2, 0.4, 0.9, 2);
  CHECK(r1.lhs == 0.0);
  CHECK(r1.rhs == 0.0);
  CHECK(r1.holds);
  CHECK(r2.holds);

  // alpha = beta = gamma: bands partition (0, inf), so rhs >= lhs
  auto s = RngStream(2).derive("p", 0);
  std::vector<double> vals(5);
  for (auto& v : vals) v = 2.0 * s.next_uniform() - 1.0;
  auto p = SampledPath(uniform_partition(4, 1.0), 1, vals);
  auto [e1, e2] = interpolation_inequality(p, 0.3, 0.5, 0.5, 0.5, 2);
  CHECK(e1.holds);
  CHECK(e2.holds);

  CHECK_THROWS_AS(interpolation_inequality(p, 0.3, 0.6, 0.5, 0.9, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(interpolation_inequality(p, 0.0, 0.1, 0.5, 0.9, 1),
                  std::invalid_argument);
}

TEST_CASE("affine_error_bound: exactness on linear data and tent sharpness") {
  auto lin = scalar_path({0.0, 0.5, 1.0}, {0.0, 0.5, 1.0});
  auto r = affine_error_bound(lin, Partition({0.0, 1.0}), 1.0, 4);
  CHECK(r.lhs == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(r.holds);

  // tent function, theta = {0,1}, alpha = 1: equality within 1e-12
  auto tent = tent_path(64);
  auto sharp = affine_error_bound(tent, Partition({0.0, 1.0}), 1.0, 4);
  CHECK(sharp.lhs == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(sharp.rhs == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::fabs(sharp.slack) <= 1e-12);
  CHECK(sharp.holds);
}

TEST_CASE("grid_difference_bound trivial cases") {
  auto tent = tent_path(8);
  auto [r1, r2] = grid_difference_bound(tent, tent, tent.grid(), 0.3, 0.7, 2);
  CHECK(r1.lhs == 0.0);
  CHECK(r1.holds);
  CHECK(r2.holds);

  // g = f + constant: seminorm lhs 0, rhs >= 2c/d_max^alpha
  std::vector<double> shifted(tent.values());
  for (auto& v : shifted) v += 3.0;
  auto g = SampledPath(tent.grid(), 1, std::move(shifted));
  auto [s1, s2] = grid_difference_bound(tent, g, tent.grid(), 0.5, 0.5, 2);
  CHECK(s1.lhs == doctest::Approx(0.0));
  CHECK(s1.rhs >= 2.0 * 3.0 / std::sqrt(0.125));
  CHECK(s1.holds);
}

TEST_CASE("interpolant_band_seminorm_bound cases") {
  auto c = scalar_path({0.0, 0.5, 1.0}, {2.0, 2.0, 2.0});
  auto r = interpolant_band_seminorm_bound(c, c.grid(), 0.5, 0.5, 2);
  CHECK(r.lhs == 0.0);
  CHECK(r.rhs == 0.0);
  CHECK(r.holds);

  // f(t) = t, uniform theta, alpha = 1, c = d_max: equality at 1
  auto grid = uniform_partition(5, 1.0);
  auto id = SampledPath(grid, 1, std::vector<double>(grid.points.begin(), grid.points.end()));
  auto e = interpolant_band_seminorm_bound(id, id.grid(), 1.0, 0.2, 3);
  CHECK(e.lhs == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(e.rhs == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(e.holds);
}

TEST_CASE("interpolant_seminorm_contraction cases") {
  auto tent = tent_path(16);
  auto same = interpolant_seminorm_contraction(tent, tent.grid(), 0.4, 2);
  CHECK(same.lhs == doctest::Approx(same.rhs).epsilon(1e-13));
  CHECK(same.holds);

  // theta = {0,1}: interpolant of the tent is constant 1/2
  auto flat = interpolant_seminorm_contraction(tent, Partition({0.0, 1.0}), 0.4, 2);
  CHECK(flat.lhs == doctest::Approx(0.0));
  CHECK(flat.holds);
}

TEST_CASE("affine_target_bound trivial case") {
  auto tent = tent_path(8);
  auto [r1, r2] = affine_target_bound(tent, tent, tent.grid(), 0.2, 0.6, 2);
  CHECK(r1.lhs == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(r1.holds);
  CHECK(r2.holds);
}

TEST_CASE("suite: determinism and zero failures") {
  CHECK_THROWS_AS(run_inequality_suite(0, 1), std::invalid_argument);

  auto a = run_inequality_suite(200, 7, {}, 1);
  auto b = run_inequality_suite(200, 7, {}, 4);
  CHECK(a.all_hold);
  CHECK(a.items.size() == 9);
  for (const auto& item : a.items) {
    CHECK(item.trials == 200);
    CHECK(item.failures == 0);
  }
  CHECK(suite_report_json(a) == suite_report_json(b));

  auto c = run_inequality_suite(200, 8, {}, 1);
  CHECK(c.all_hold);
  CHECK(suite_report_json(a) != suite_report_json(c));  // seed matters
}
