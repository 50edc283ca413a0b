#ifndef HOLDERLAB_INEQUALITIES_HPP
#define HOLDERLAB_INEQUALITIES_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "holderlab/grid.hpp"

namespace holderlab {

inline constexpr double kIneqTolAbs = 1e-12;
inline constexpr double kIneqTolRel = 1e-12;

// Both sides of one deterministic inequality, evaluated on a shared
// refined pair set. These are theorems: holds should always be true,
// with the tolerance covering rounding only.
struct InequalityReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // rhs - lhs
  bool holds = true;
};

InequalityReport make_report(std::string name, double lhs, double rhs);

// |f|_{C^beta} <= max{ c^{alpha-beta} |f|_{C^{alpha,(c,inf)}},
//                      c^{gamma-beta} |f|_{C^{gamma,(0,c]}} }
// plus the [c,inf)/(0,c) variant. Requires alpha <= beta <= gamma.
std::pair<InequalityReport, InequalityReport> interpolation_inequality(
    const SampledPath& path, double c, double alpha, double beta, double gamma,
    std::size_t oversample);

// sup |f - [f]_theta| <= (d_max(theta)/2)^alpha |f|_{C^alpha}
InequalityReport affine_error_bound(const SampledPath& f, const Partition& theta,
                                    double alpha, std::size_t oversample);

// |f-g|_{C^alpha} <= (2/d_max^alpha)[ sup_theta|f-g| +
//                    (d_max^beta/2^beta)(|f|_beta + |g|_beta) ]
// plus the full-norm variant with prefactor (2/d_max^alpha + 1).
std::pair<InequalityReport, InequalityReport> grid_difference_bound(
    const SampledPath& f, const SampledPath& g, const Partition& theta, double alpha,
    double beta, std::size_t oversample);

// |[f]_theta|_{C^{alpha,(0,c]}} <= (c^{1-alpha}/d_min) max_j |grid increment|
InequalityReport interpolant_band_seminorm_bound(const SampledPath& f,
                                                 const Partition& theta, double alpha,
                                                 double c, std::size_t oversample);

// |[f]_theta|_{C^alpha} <= |f|_{C^alpha}
InequalityReport interpolant_seminorm_contraction(const SampledPath& f,
                                                  const Partition& theta, double alpha,
                                                  std::size_t oversample);

// |f - [g]_theta|_{C^alpha} <= (2 d_max^{1-alpha}/d_min) sup_theta|f-g|
//                              + 2 d_max^{beta-alpha} |f|_beta
// plus the full-norm variant.
std::pair<InequalityReport, InequalityReport> affine_target_bound(
    const SampledPath& f, const SampledPath& g, const Partition& theta, double alpha,
    double beta, std::size_t oversample);

struct SuiteConfig {
  std::size_t min_grid = 3;   // number of grid points, inclusive
  std::size_t max_grid = 33;
  std::size_t oversample = 4;
};

struct SuiteLineItem {
  std::string name;
  std::size_t trials = 0;
  std::size_t failures = 0;
  double worst_slack = 0.0;
  std::uint64_t worst_trial = 0;  // trial index attaining worst_slack
};

struct SuiteReport {
  std::vector<SuiteLineItem> items;
  std::size_t trials = 0;
  bool all_hold = true;
};

// Runs every checker on `trials` random admissible inputs; deterministic
// given seed, independent of thread count.
SuiteReport run_inequality_suite(std::size_t trials, std::uint64_t seed,
                                 const SuiteConfig& cfg = {}, int threads = 1);

std::string suite_report_json(const SuiteReport& report);

}  // namespace holderlab

#endif
