#ifndef HOLDERLAB_MLMC_HPP
#define HOLDERLAB_MLMC_HPP

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "holderlab/grid.hpp"
#include "holderlab/rng.hpp"
#include "holderlab/schemes.hpp"

namespace holderlab {

// Geometric multilevel schedule: level resolutions N[l] (each divided by
// its predecessor) and per-level sample counts M[l], l = 0..L.
struct MlmcSchedule {
  std::size_t L = 0;
  std::vector<std::size_t> N;
  std::vector<std::size_t> M;

  void validate() const;  // throws invalid_argument
  [[nodiscard]] double total_cost() const;  // sum M[l] N[l], fine-step units
};

// N[l] = N0 2^l, M[l] = 2^{L-l}.
MlmcSchedule geometric_schedule(std::size_t L, std::size_t N0 = 1);

// Path-to-path map with declared local-Lipschitz data
// |g(v) - g(w)| <= c (1 + |v|^r + |w|^r) |v - w| and the Hölder exponent
// of the norm the outputs are measured in.
struct PathFunctional {
  std::function<SampledPath(const SampledPath&)> map;
  double lipschitz_c = 1.0;
  double growth_r = 0.0;
  double alpha = 0.0;
};

PathFunctional identity_functional(double alpha = 0.0);
// pointwise x -> x / (1 + |x|_2), applied at every grid time (c = r = 1)
PathFunctional bounded_map_functional(double alpha = 0.0);

// (level, stream) -> (path at N[level], path at N[level-1]); both must be
// driven by the given stream alone. The coarse member is ignored at
// level 0.
using CoupledSampler =
    std::function<std::pair<SampledPath, SampledPath>(std::size_t, RngStream)>;

struct MlmcLevelStat {
  std::size_t level;
  std::size_t N;
  std::size_t M;
  double corr_mean;  // mean over replicas of the sup norm of the correction
  double corr_var;   // sample variance of the same
};

struct MlmcEstimate {
  SampledPath mean_path;  // on the level-L output grid
  std::vector<MlmcLevelStat> per_level;
  double total_cost = 0.0;
};

// Samples the affine extension of `path` on the points of `grid`
// (bit-exact where the grids share points bitwise).
SampledPath lift_to_grid(const SampledPath& path, const Partition& grid);

// Pointwise pairwise-reduced sample mean of sampler(stream.derive
// ("replica", k)), k = 0..M-1; every sample must share the first one's
// grid. Matches the level-0 term of mlmc_mean bit for bit when handed
// stream.derive("level", 0).
SampledPath mc_mean(const std::function<SampledPath(RngStream)>& sampler, std::size_t M,
                    RngStream stream, int threads = 1);

// Discrete C^gamma distance between paths on identical grids (sup norm
// for gamma = 0).
double path_distance(const SampledPath& a, const SampledPath& b, double gamma,
                     std::size_t oversample = 1);

// Telescoping estimator
//   (1/M0) sum_k g(Y^{N0,0,k})
//   + sum_l (1/Ml) sum_k [g(Y^{Nl,l,k}) - g(Y^{N(l-1),l,k})],
// replica (l, k) driven by stream.derive("level", l).derive("replica", k);
// coarse outputs are lifted onto the pair's fine grid, level means onto
// the level-L grid. Deterministic for any thread count.
MlmcEstimate mlmc_mean(const CoupledSampler& sampler, const MlmcSchedule& schedule,
                       const PathFunctional& g, RngStream stream, int threads = 1);

struct RademacherReport {
  double sum_lp;       // || sum_j xi_j ||_{L^p(P)} (Euclidean norm in R^d)
  double sum_se;
  double rademacher_lp;  // || sum_j r_j xi_j ||_{L^p(P)}
  double rademacher_se;
  double norms_lq;     // (sum_j ||xi_j||_{L^p}^q)^{1/q}, q = 2
  double norms_se;
  bool randomization_holds;  // sum <= 2 rademacher + 4 combined se
  bool theta_holds;          // p = 2 only: sum <= 2 norms + 4 combined se
};

// Centered R^d samplers xi_j; trial i draws xi_j from
// stream.derive("trial", i).derive("xi", j) and independent signs r_j.
RademacherReport rademacher_sum_check(
    const std::vector<std::function<std::vector<double>(RngStream)>>& samplers,
    std::size_t d, double p, std::size_t trials, RngStream stream, int threads = 1);

// sum_{l=1}^{L} 2^{-rho l} 2^{-(L-l)/2} by the closed forms
// 2^{-L min(rho,1/2)} (1 - 2^{-|1/2-rho| L}) / |1 - 2^{rho-1/2}|  (rho != 1/2)
// and 2^{-L/2} L (rho = 1/2).
double theoretical_level_sum(double rho, std::size_t L);

struct MlmcConvRow {
  std::size_t L;
  double p;
  double gamma;
  double error;      // L^p over repetitions of the C^gamma distance to the reference
  double std_error;
  double cost;       // per-estimate cost sum M[l] N[l]
  double ref_error;  // statistical error of the plain-MC reference mean
};

struct MlmcLevelRow {
  std::size_t L;
  std::size_t level;
  std::size_t N;
  std::size_t M;
  double corr_mean;
  double corr_var;
};

struct MlmcExperiment {
  std::vector<MlmcConvRow> rows;
  std::vector<MlmcLevelRow> level_rows;  // from the first repetition per L
  RateFit fit;        // log error vs log 2^L: slope = log2-error per level
  double plain_error = 0.0;  // equal-cost single-level MC at the largest L
  double plain_cost = 0.0;
  bool inconclusive = false;  // reference error >= 1/5 of the smallest MLMC error
};

// Euler couples per level: one Brownian driver at N[l] steps drives both
// the N[l]- and the N[l-1]-step scheme. Reference mean: plain MC with
// M_ref = 2^16 samples at N_ref = 4 N[L_max] steps.
MlmcExperiment mlmc_convergence_experiment(const SdeProblem& problem,
                                           const PathFunctional& f,
                                           const std::vector<std::size_t>& Ls, double p,
                                           double gamma, std::size_t repetitions,
                                           std::uint64_t seed, int threads = 1,
                                           std::size_t m_ref = 1u << 16);

}  // namespace holderlab

#endif
