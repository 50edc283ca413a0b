#include "holderlab/galerkin.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "holderlab/parallel.hpp"

namespace holderlab {

double SpectralSeeProblem::lambda(std::size_t n) const {
  return -M_PI * M_PI * static_cast<double>(n) * static_cast<double>(n);
}

double SpectralSeeProblem::noise_coeff(std::size_t n) const {
  return noise_scale * std::pow(static_cast<double>(n), -s);
}

double SpectralSeeProblem::x0_coeff(std::size_t n) const {
  return n >= 1 && n <= x0.size() ? x0[n - 1] : 0.0;
}

std::vector<double> SpectralSeeProblem::nonlinearity(const std::vector<double>& x) const {
  std::vector<double> f(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const std::size_t n = i + 1;
    const double c_n = std::pow(-lambda(n), alpha_F) / static_cast<double>(n);
    f[i] = kappa * c_n * std::tanh(x[i]);
  }
  return f;
}

double exact_linear_second_moment_error(const SpectralSeeProblem& problem, std::size_t N,
                                        double t, std::size_t upper) {
  if (!(t >= 0.0))
    throw std::invalid_argument("exact_linear_second_moment_error: t must be >= 0");
  if (!problem.linear())
    throw std::invalid_argument("exact_linear_second_moment_error: semilinear unsupported");
  double sum = 0.0;
  std::size_t n = N;
  for (;;) {
    ++n;
    if (upper > 0 && n > upper) break;
    const double lam = problem.lambda(n);
    const double decay = std::exp(2.0 * lam * t);
    const double x0n = problem.x0_coeff(n);
    const double bn = problem.noise_coeff(n);
    sum += decay * x0n * x0n + bn * bn * (1.0 - decay) / (2.0 * -lam);
    if (upper == 0 && n >= problem.x0.size() && (decay == 0.0 || t == 0.0)) {
      // Every remaining term is b_k^2 / (2 |lambda_k|) exactly (t = 0
      // kills them all outright); close the stationary tail
      //   sum_{k > n} k^{-a} / (2 pi^2),  a = 2s + 2,
      // by Euler-Maclaurin once n is large enough for the O(n^{-a-5})
      // remainder to be negligible.
      if (t == 0.0 || problem.noise_scale == 0.0) break;
      if (n < 1000) continue;
      const double a = 2.0 * problem.s + 2.0;
      const double x = static_cast<double>(n);
      const double tail = std::pow(x, 1.0 - a) / (a - 1.0) - 0.5 * std::pow(x, -a) +
                          (a / 12.0) * std::pow(x, -a - 1.0) -
                          (a * (a + 1.0) * (a + 2.0) / 720.0) * std::pow(x, -a - 3.0);
      sum += problem.noise_scale * problem.noise_scale * tail / (2.0 * M_PI * M_PI);
      break;
    }
  }
  return std::sqrt(sum);
}

namespace {

struct ModeStep {
  double decay;      // e^{lambda h}
  double noise_sd;   // b sqrt((1 - e^{2 lambda h}) / (2 |lambda|))
  double drift_mul;  // (e^{lambda h} - 1) / lambda
};

ModeStep mode_step(const SpectralSeeProblem& problem, std::size_t n, double h) {
  const double lam = problem.lambda(n);
  const double decay = std::exp(lam * h);
  const double bn = problem.noise_coeff(n);
  ModeStep st;
  st.decay = decay;
  st.noise_sd = bn * std::sqrt((1.0 - decay * decay) / (2.0 * -lam));
  st.drift_mul = (decay - 1.0) / lam;
  return st;
}

}  // namespace

SampledPath simulate_linear_exact(const SpectralSeeProblem& problem, std::size_t N_modes,
                                  const Partition& theta, RngStream stream) {
  if (N_modes < 1) throw std::invalid_argument("simulate_linear_exact: N_modes >= 1");
  const std::size_t n_pts = theta.size();
  std::vector<double> vals(n_pts * N_modes);
  for (std::size_t mode = 1; mode <= N_modes; ++mode) {
    RngStream ms = stream.derive("mode", mode);
    double x = problem.x0_coeff(mode);
    vals[0 * N_modes + (mode - 1)] = x;
    for (std::size_t k = 1; k < n_pts; ++k) {
      const double h = theta.points[k] - theta.points[k - 1];
      const ModeStep st = mode_step(problem, mode, h);
      x = st.decay * x + st.noise_sd * ms.next_normal();
      vals[k * N_modes + (mode - 1)] = x;
    }
  }
  return SampledPath(theta, N_modes, std::move(vals));
}

SampledPath simulate_semilinear(const SpectralSeeProblem& problem, std::size_t N_modes,
                                const Partition& theta, RngStream stream) {
  if (N_modes < 1) throw std::invalid_argument("simulate_semilinear: N_modes >= 1");
  const std::size_t n_pts = theta.size();
  std::vector<RngStream> mode_streams;
  mode_streams.reserve(N_modes);
  for (std::size_t mode = 1; mode <= N_modes; ++mode)
    mode_streams.push_back(stream.derive("mode", mode));

  std::vector<double> x(N_modes);
  for (std::size_t mode = 1; mode <= N_modes; ++mode) x[mode - 1] = problem.x0_coeff(mode);
  std::vector<double> vals(n_pts * N_modes);
  std::copy(x.begin(), x.end(), vals.begin());
  for (std::size_t k = 1; k < n_pts; ++k) {
    const double h = theta.points[k] - theta.points[k - 1];
    const std::vector<double> f = problem.linear() ? std::vector<double>()
                                                   : problem.nonlinearity(x);
    for (std::size_t mode = 1; mode <= N_modes; ++mode) {
      const ModeStep st = mode_step(problem, mode, h);
      double next = st.decay * x[mode - 1] + st.noise_sd * mode_streams[mode - 1].next_normal();
      if (!problem.linear()) next += st.drift_mul * f[mode - 1];
      x[mode - 1] = next;
    }
    std::copy(x.begin(), x.end(), vals.begin() + static_cast<std::ptrdiff_t>(k * N_modes));
  }
  return SampledPath(theta, N_modes, std::move(vals));
}

std::pair<std::vector<GalerkinRateRow>, RateFit> galerkin_rate_experiment(
    const SpectralSeeProblem& problem, const std::vector<std::size_t>& Ns,
    std::size_t N_ref, double p, double delta, std::size_t M, std::size_t time_steps,
    std::uint64_t seed, int threads) {
  if (Ns.empty() || M < 2 || time_steps < 1)
    throw std::invalid_argument("galerkin_rate_experiment: bad sizes");
  for (std::size_t i = 1; i < Ns.size(); ++i)
    if (Ns[i] < Ns[i - 1])
      throw std::invalid_argument("galerkin_rate_experiment: Ns must be nondecreasing");
  if (N_ref < 4 * Ns.back())
    throw std::invalid_argument("galerkin_rate_experiment: need N_ref >= 4 max(Ns)");
  if (!(p >= 1.0) || !(delta >= 0.0 && delta < 1.0))
    throw std::invalid_argument("galerkin_rate_experiment: bad p or delta");

  const Partition theta = uniform_partition(time_steps, problem.T);
  const std::size_t n_t = theta.size();
  // gap pairs (i < j) used for the delta > 0 seminorm
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (delta > 0.0)
    for (std::size_t i = 0; i < n_t; ++i)
      for (std::size_t j = i + 1; j < n_t; ++j) pairs.emplace_back(i, j);

  std::vector<GalerkinRateRow> rows;
  std::vector<double> abscissae, errors;
  const RngStream base(seed);
  for (const std::size_t N : Ns) {
    // per-sample statistics: ||err_t||^p per time, ||err_t - err_u||^p per pair
    std::vector<double> time_pows(M * n_t);
    std::vector<double> pair_pows(M * pairs.size());
    parallel_for_index(M, threads, [&](std::size_t s) {
      const RngStream ss = base.derive("galerkin", s);
      const SampledPath full = problem.linear()
                                   ? simulate_linear_exact(problem, N_ref, theta, ss)
                                   : simulate_semilinear(problem, N_ref, theta, ss);
      // truncation coupling: the N-mode solution is the first N coords
      // for the linear case; for the semilinear case it must be re-run
      // with the truncated state feeding F.
      SampledPath trunc = problem.linear() ? SampledPath()
                                           : simulate_semilinear(problem, N, theta, ss);
      auto err_sq = [&](std::size_t t) {
        double sq = 0.0;
        if (problem.linear()) {
          for (std::size_t k = N; k < N_ref; ++k) {
            const double e = full.at(t)[k];
            sq += e * e;
          }
        } else {
          for (std::size_t k = 0; k < N_ref; ++k) {
            const double e = full.at(t)[k] - (k < N ? trunc.at(t)[k] : 0.0);
            sq += e * e;
          }
        }
        return sq;
      };
      std::vector<double> esq(n_t);
      for (std::size_t t = 0; t < n_t; ++t) {
        esq[t] = err_sq(t);
        time_pows[t * M + s] = p == 2.0 ? esq[t] : std::pow(esq[t], 0.5 * p);
      }
      for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
        const auto [i, j] = pairs[pi];
        double sq = 0.0;
        if (problem.linear()) {
          for (std::size_t k = N; k < N_ref; ++k) {
            const double e = full.at(j)[k] - full.at(i)[k];
            sq += e * e;
          }
        } else {
          for (std::size_t k = 0; k < N_ref; ++k) {
            const double ej = full.at(j)[k] - (k < N ? trunc.at(j)[k] : 0.0);
            const double ei = full.at(i)[k] - (k < N ? trunc.at(i)[k] : 0.0);
            const double e = ej - ei;
            sq += e * e;
          }
        }
        pair_pows[pi * M + s] = p == 2.0 ? sq : std::pow(sq, 0.5 * p);
      }
    });

    auto lp_and_se = [&](const double* block) {
      const double m = mean(std::span<const double>(block, M));
      const double v = sample_variance(std::span<const double>(block, M));
      const double val = m > 0.0 ? std::pow(m, 1.0 / p) : 0.0;
      const double se = m > 0.0 ? (1.0 / p) * std::pow(m, 1.0 / p - 1.0) *
                                      std::sqrt(v / static_cast<double>(M))
                                : 0.0;
      return std::pair<double, double>(val, se);
    };

    double sup_val = 0.0, sup_se = 0.0;
    for (std::size_t t = 0; t < n_t; ++t) {
      const auto [val, se] = lp_and_se(time_pows.data() + t * M);
      if (val > sup_val) {
        sup_val = val;
        sup_se = se;
      }
    }
    double value = sup_val, se = sup_se;
    if (delta > 0.0) {
      double semi_val = 0.0, semi_se = 0.0;
      for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
        const auto [val, pse] = lp_and_se(pair_pows.data() + pi * M);
        const double gap = theta.points[pairs[pi].second] - theta.points[pairs[pi].first];
        const double ratio = val / std::pow(gap, delta);
        if (ratio > semi_val) {
          semi_val = ratio;
          semi_se = pse / std::pow(gap, delta);
        }
      }
      value = sup_val + semi_val;
      se = sup_se + semi_se;
    }

    double exact_col = std::numeric_limits<double>::quiet_NaN();
    if (problem.linear() && p == 2.0 && delta == 0.0) {
      exact_col = 0.0;
      for (const double t : theta.points)
        exact_col = std::max(exact_col,
                             exact_linear_second_moment_error(problem, N, t, N_ref));
    }
    rows.push_back({N, p, delta, value, se, exact_col});
    abscissae.push_back(static_cast<double>(N));
    errors.push_back(value);
  }
  return {rows, fit_rate(abscissae, errors)};
}

}  // namespace holderlab
