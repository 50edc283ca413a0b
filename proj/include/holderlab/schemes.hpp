#ifndef HOLDERLAB_SCHEMES_HPP
#define HOLDERLAB_SCHEMES_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "holderlab/grid.hpp"
#include "holderlab/rng.hpp"

namespace holderlab {

// SDE dX = mu(X) dt + sigma(X) dW on [0, T], X_0 = x0, with globally
// Lipschitz coefficients on the test set. sigma maps to a d x m matrix
// (row-major). exact_solution, when present, maps (t, W_t) to X_t for
// problems whose solution is a pointwise function of the driver.
struct SdeProblem {
  std::size_t d = 1;
  std::size_t m = 1;
  std::function<std::vector<double>(const std::vector<double>&)> drift;
  std::function<std::vector<double>(const std::vector<double>&)> diffusion;
  std::vector<double> x0;
  double T = 1.0;
  std::function<std::vector<double>(double t, const std::vector<double>& w_t)> exact_solution;
};

SdeProblem make_brownian_problem(double T);                // mu = 0, sigma = 1, x0 = 0
SdeProblem make_gbm_problem(double mu, double sigma, double x0, double T);
SdeProblem make_ode_problem(double x0, double T);          // sigma = 0, mu(x) = x

// W(0) = 0 and independent N(0, gap I_m) increments over consecutive
// gaps; one stream drives the whole path.
SampledPath sample_brownian(const Partition& theta, std::size_t m, RngStream stream);

// Euler scheme with the continuous affine-in-time extension between the
// N uniform macro steps:
//   Y_t = Y_n + (t - nT/N) mu(Y_n) + (t N/T - n) sigma(Y_n) dW_n.
// w must live on a grid containing the N-step uniform grid; the result
// is sampled on w.grid.
SampledPath euler_maruyama(const SdeProblem& problem, std::size_t N, const SampledPath& w);

enum class ExactKind { SupOfLp, Seminorm, FullNorm };

// Closed-form C([0,T]; L^p) / C^alpha([0,T]; L^p) errors of the
// piecewise-affine interpolation of Brownian motion on N uniform steps.
double brownian_interp_error_exact(ExactKind kind, double alpha, double p, double T,
                                   std::size_t N);

enum class NormKind { LpOfHolder, HolderOfLp, SupOfLp };

struct LpHolderEstimate {
  double p = 2.0;
  double alpha = 0.0;
  double value = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
  std::size_t refinement = 1;
  NormKind kind = NormKind::LpOfHolder;
};

// A sampler draws one path per derived stream; estimators derive the
// stream ("sample", i) per sample, so two estimators called with the
// same base stream see identically coupled samples.
using PathSampler = std::function<SampledPath(RngStream)>;

// L^p(P; C^alpha): per-sample Hölder norm (or seminorm), then the p-th
// sample mean to the 1/p power; stderr by the delta method.
LpHolderEstimate estimate_lp_of_holder(const PathSampler& sampler, double p, double alpha,
                                       std::size_t M, std::size_t oversample,
                                       RngStream stream, bool seminorm_only = false,
                                       int threads = 1);

// C^alpha([0,T]; L^p) (kind HolderOfLp) or C([0,T]; L^p) (kind
// SupOfLp): the per-pair (per-time) L^p norm across coupled samples,
// then the discrete seminorm/sup over the refined grid.
LpHolderEstimate estimate_holder_of_lp(const PathSampler& sampler, double p, double alpha,
                                       std::size_t M, std::size_t oversample,
                                       RngStream stream, NormKind kind,
                                       bool seminorm_only = false, int threads = 1);

struct RateFit {
  std::vector<double> abscissae;
  std::vector<double> errors;
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

// OLS of log(error) on log(abscissa).
RateFit fit_rate(const std::vector<double>& abscissae, const std::vector<double>& errors);

struct EulerRateRow {
  std::size_t N;
  double p;
  double alpha;
  double error;
  double std_error;
};

// Couples every Y^N to the same fine driver; measures the error against
// exact_solution (or a fine Euler reference at 8 max(Ns) steps) in the
// norm selected by `kind` on an oversample-refined grid per N.
std::pair<std::vector<EulerRateRow>, RateFit> euler_rate_experiment(
    const SdeProblem& problem, const std::vector<std::size_t>& Ns, double p, double alpha,
    std::size_t M, std::uint64_t seed, NormKind kind = NormKind::LpOfHolder,
    bool seminorm_only = false, std::size_t oversample = 8, int threads = 1);

struct BrownianExactRow {
  double alpha;
  double p;
  std::size_t N;
  double T;
  std::string kind;  // "sup_of_lp" or "seminorm"
  double exact;
  double mc_estimate;
  double mc_stderr;
  std::size_t oversample;
  std::size_t samples;
};

// Exact-vs-Monte-Carlo table for the Brownian interpolation error.
std::vector<BrownianExactRow> brownian_exact_experiment(
    const std::vector<double>& alphas, const std::vector<double>& ps,
    const std::vector<std::size_t>& Ns, std::size_t M, std::size_t oversample, double T,
    std::uint64_t seed, int threads = 1);

// Sampler for the interpolation error W - [W]_theta of Brownian motion
// on N uniform steps, sampled on the oversample-refined grid.
PathSampler brownian_interp_error_sampler(std::size_t N, double T, std::size_t oversample);

}  // namespace holderlab

#endif
