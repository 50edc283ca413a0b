#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "holderlab/grid.hpp"
#include "holderlab/rng.hpp"

using namespace holderlab;

namespace {

SampledPath scalar_path(std::vector<double> pts, std::vector<double> vals) {
  return SampledPath(Partition(std::move(pts)), 1, std::move(vals));
}

SampledPath random_path(RngStream s, std::size_t n_pts, std::size_t d) {
  std::vector<double> pts{0.0};
  for (std::size_t i = 1; i + 1 < n_pts; ++i) pts.push_back(pts.back() + s.next_uniform());
  pts.push_back(pts.back() + s.next_uniform());
  std::vector<double> vals(n_pts * d);
  for (auto& v : vals) v = 2.0 * s.next_uniform() - 1.0;
  return SampledPath(Partition(std::move(pts)), d, std::move(vals));
}

}  // namespace

TEST_CASE("Partition invariants enforced") {
  CHECK_THROWS_AS(Partition({0.0}), std::invalid_argument);
  CHECK_THROWS_AS(Partition({0.5, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(Partition({0.0, 1.0, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(Partition({0.0, 0.0, 1.0}), std::invalid_argument);
  CHECK(Partition({0.0, 1.0}).horizon() == 1.0);
}

TEST_CASE("uniform_partition") {
  auto p = uniform_partition(1, 1.0);
  CHECK(p.points == std::vector<double>{0.0, 1.0});
  auto q = uniform_partition(4, 2.0);
  CHECK(q.points == std::vector<double>{0.0, 0.5, 1.0, 1.5, 2.0});
  auto [dmax, dmin] = mesh_stats(uniform_partition(3, 1.0));
  CHECK(dmax == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(dmin == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK_THROWS_AS(uniform_partition(0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(uniform_partition(2, 0.0), std::invalid_argument);
}

TEST_CASE("mesh_stats on nonuniform grids") {
  auto [dmax, dmin] = mesh_stats(Partition({0.0, 0.2, 1.0}));
  CHECK(dmax == doctest::Approx(0.8));
  CHECK(dmin == doctest::Approx(0.2));
  auto [a, b] = mesh_stats(Partition({0.0, 1.0}));
  CHECK(a == 1.0);
  CHECK(b == 1.0);
}

TEST_CASE("interpolate_affine: segments and exact grid points") {
  auto p = scalar_path({0.0, 1.0}, {0.0, 2.0});
  CHECK(interpolate_affine(p, 0.25)[0] == doctest::Approx(0.5));
  auto q = scalar_path({0.0, 0.2, 1.0}, {0.0, 1.0, 0.0});
  CHECK(interpolate_affine(q, 0.6)[0] == doctest::Approx(0.5));
  CHECK(interpolate_affine(q, 0.2)[0] == 1.0);  // bit-exact at grid point
  CHECK_THROWS_AS(interpolate_affine(q, -0.1), std::out_of_range);
  CHECK_THROWS_AS(interpolate_affine(q, 1.1), std::out_of_range);
}

TEST_CASE("refine basics") {
  auto p = scalar_path({0.0, 1.0}, {0.0, 1.0});
  auto r = refine(p, 2);
  CHECK(r.grid().points == std::vector<double>{0.0, 0.5, 1.0});
  CHECK(r.values() == std::vector<double>{0.0, 0.5, 1.0});
  auto same = refine(p, 1);
  CHECK(same.values() == p.values());
  CHECK_THROWS_AS(refine(p, 0), std::invalid_argument);

  auto s = RngStream(3).derive("g", 0);
  auto rp = random_path(s, 9, 2);
  CHECK(sup_norm(refine(rp, 5)) == doctest::Approx(sup_norm(rp)).epsilon(1e-14));
}

TEST_CASE("restrict_to round trips") {
  auto s = RngStream(4).derive("g", 0);
  auto p = random_path(s, 9, 3);
  auto r = restrict_to(p, p.grid());
  CHECK(r.values() == p.values());
  auto fine = refine(p, 4);
  auto back = restrict_to(fine, p.grid());
  CHECK(back.values() == p.values());  // bit-exact round trip

  auto endpoints = restrict_to(p, Partition({0.0, p.grid().horizon()}));
  CHECK(endpoints.num_points() == 2);
  CHECK_THROWS_AS(restrict_to(p, Partition({0.0, 0.5 * (p.grid().points[0] + p.grid().points[1]),
                                            p.grid().horizon()})),
                  std::invalid_argument);
}

TEST_CASE("restrict on nested uniform grids picks strided indices") {
  std::vector<double> vals{0.0, 1.0, 2.0, 3.0, 4.0};
  auto fine = SampledPath(uniform_partition(4, 1.0), 1, vals);
  auto coarse = restrict_to(fine, uniform_partition(2, 1.0));
  CHECK(coarse.values() == std::vector<double>{0.0, 2.0, 4.0});
}

TEST_CASE("sup_norm") {
  CHECK(sup_norm(scalar_path({0.0, 1.0, 2.0}, {5.0, 5.0, 5.0})) == 5.0);
  CHECK(sup_norm(scalar_path({0.0, 1.0, 2.0}, {0.0, -3.0, 2.0})) == 3.0);
  CHECK(sup_norm(scalar_path({0.0, 1.0}, {0.0, 0.0})) == 0.0);
}

TEST_CASE("holder_seminorm basics") {
  auto id2 = scalar_path({0.0, 0.5, 1.0}, {0.0, 0.5, 1.0});
  CHECK(holder_seminorm(id2, 1.0, DistanceBand::full(), 1) == doctest::Approx(1.0));
  auto c = scalar_path({0.0, 0.5, 1.0}, {2.0, 2.0, 2.0});
  CHECK(holder_seminorm(c, 0.5, DistanceBand::full(), 3) == 0.0);
  // tent |t - 1/2| on uniform N=4: max over the 10 pairs is at (0, 1/2).
  auto tent = scalar_path({0.0, 0.25, 0.5, 0.75, 1.0}, {0.5, 0.25, 0.0, 0.25, 0.5});
  CHECK(holder_seminorm(tent, 0.5, DistanceBand::full(), 1) ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-13));
  CHECK_THROWS_AS(holder_seminorm(tent, 1.5, DistanceBand::full(), 1), std::invalid_argument);
}

TEST_CASE("holder_norm") {
  auto c = scalar_path({0.0, 1.0}, {5.0, 5.0});
  CHECK(holder_norm(c, 0.5, 4) == 5.0);
  auto id = scalar_path({0.0, 1.0}, {0.0, 1.0});
  CHECK(holder_norm(id, 1.0, 1) == doctest::Approx(2.0));
  auto z = scalar_path({0.0, 1.0}, {0.0, 0.0});
  CHECK(holder_norm(z, 0.3, 2) == 0.0);
}

TEST_CASE("band semantics: strict vs closed thresholds") {
  // gaps available on uniform N=2: 0.5 and 1.0
  auto p = scalar_path({0.0, 0.5, 1.0}, {0.0, 1.0, 0.0});
  const double c = 0.5;
  // (c, inf): only the gap 1.0 qualifies -> |f(1)-f(0)|/1 = 0
  CHECK(holder_seminorm(p, 0.0, DistanceBand::above_open(c), 1) == 0.0);
  // [c, inf): gap 0.5 included -> 1
  CHECK(holder_seminorm(p, 0.0, DistanceBand::above_closed(c), 1) == doctest::Approx(1.0));
  // (0, c]: gap 0.5 included -> 1
  CHECK(holder_seminorm(p, 0.0, DistanceBand::below_closed(c), 1) == doctest::Approx(1.0));
  // (0, c): no gap below 0.5 -> 0
  CHECK(holder_seminorm(p, 0.0, DistanceBand::below_open(c), 1) == 0.0);
}

TEST_CASE("seminorm properties: homogeneity, triangle, band and oversample monotonicity") {
  auto s = RngStream(11).derive("g", 0);
  for (int trial = 0; trial < 20; ++trial) {
    auto f = random_path(s.derive("f", trial), 7, 2);
    auto g = SampledPath(f.grid(), 2,
                         random_path(s.derive("h", trial), 7, 2).values());
    const double r = s.next_uniform();

    const double sf = holder_seminorm(f, r, DistanceBand::full(), 2);
    CHECK(holder_seminorm(path_scale(f, -2.5), r, DistanceBand::full(), 2) ==
          doctest::Approx(2.5 * sf).epsilon(1e-12));

    auto sum = path_difference(f, path_scale(g, -1.0));  // f + g
    CHECK(holder_norm(sum, r, 2) <=
          holder_norm(f, r, 2) + holder_norm(g, r, 2) + 1e-12);

    const double c = mesh_stats(f.grid()).d_max;
    CHECK(holder_seminorm(f, r, DistanceBand::below_open(c), 2) <=
          holder_seminorm(f, r, DistanceBand::below_closed(c), 2) + 1e-15);
    CHECK(holder_seminorm(f, r, DistanceBand::above_open(c), 2) <=
          holder_seminorm(f, r, DistanceBand::above_closed(c), 2) + 1e-15);
    CHECK(holder_seminorm(f, r, DistanceBand::below_closed(c), 2) <= sf + 1e-15);

    // r = 0 seminorm vs sup norm
    CHECK(holder_seminorm(f, 0.0, DistanceBand::full(), 2) <= 2.0 * sup_norm(f) + 1e-15);

    // oversample monotonicity; exact at 1 for r in {0, 1}
    CHECK(holder_seminorm(f, r, DistanceBand::full(), 1) <= sf + 1e-15);
    for (double re : {0.0, 1.0})
      CHECK(holder_seminorm(f, re, DistanceBand::full(), 4) ==
            doctest::Approx(holder_seminorm(f, re, DistanceBand::full(), 1)).epsilon(1e-12));
  }
}

TEST_CASE("path CSV round trip") {
  auto s = RngStream(5).derive("g", 0);
  auto p = random_path(s, 6, 2);
  std::ostringstream os;
  write_path_csv(p, os);
  const std::string text = os.str();
  CHECK(text.rfind("t,x0,x1\n", 0) == 0);
  std::istringstream is(text);
  auto q = read_path_csv(is);
  CHECK(q.dim() == p.dim());
  CHECK(q.grid().points == p.grid().points);
  CHECK(q.values() == p.values());

  std::ostringstream os2;
  write_path_csv(p, os2);
  CHECK(os2.str() == text);  // byte-stable
}

TEST_CASE("format_double shortest round trip") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(1.0 / 3.0) == "0.3333333333333333");
  double x;
  const std::string s = format_double(0.1 + 0.2);
  std::istringstream(s) >> x;
  CHECK(x == 0.1 + 0.2);
}
