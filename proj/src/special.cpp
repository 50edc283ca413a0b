#include "holderlab/special.hpp"

#include <cmath>
#include <stdexcept>

namespace holderlab {

namespace {

// Lanczos approximation, g = 7, 9 coefficients.
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

constexpr double kHalfLogTwoPi = 0.91893853320467274178;  // log(2 pi) / 2

double lanczos_series(double x) {
  double a = kLanczos[0];
  for (int i = 1; i < 9; ++i) a += kLanczos[i] / (x + static_cast<double>(i) - 1.0);
  return a;
}

}  // namespace

double gamma_fn(double x) {
  if (!(x > 0.0)) throw std::domain_error("gamma_fn: argument must be positive");
  if (x < 0.5) return gamma_fn(x + 1.0) / x;  // one recurrence step, no reflection
  const double z = x - 1.0;
  const double t = z + kLanczosG + 0.5;
  return std::sqrt(2.0 * M_PI) * std::pow(t, z + 0.5) * std::exp(-t) * lanczos_series(z + 1.0);
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("log_gamma: argument must be positive");
  if (x < 0.5) return log_gamma(x + 1.0) - std::log(x);
  const double z = x - 1.0;
  const double t = z + kLanczosG + 0.5;
  return kHalfLogTwoPi + (z + 0.5) * std::log(t) - t + std::log(lanczos_series(z + 1.0));
}

double script_e_log(double r, double x, const SeriesConfig& cfg) {
  if (!(r > 0.0)) throw std::domain_error("script_e: r must be positive");
  if (!(x >= 0.0)) throw std::domain_error("script_e: x must be nonnegative");
  if (x == 0.0) return 0.0;
  if (!(cfg.rel_tol > 0.0) || cfg.max_terms < 1)
    throw std::invalid_argument("script_e: invalid series config");

  const double log_x2_gamma_r = 2.0 * std::log(x) + log_gamma(r);
  const double log_tol = std::log(cfg.rel_tol);
  // Streaming log-sum-exp: sum = exp(peak) * scaled. Terms grow before
  // they decay (small r, large x), so the peak is tracked on the fly.
  double peak = 0.0;    // log of the largest term so far (n = 0 term is 1)
  double scaled = 1.0;  // sum of exp(log term - peak)
  double prev_log_term = 0.0;
  for (std::size_t n = 1; n <= cfg.max_terms; ++n) {
    const double log_term = static_cast<double>(n) * log_x2_gamma_r -
                            log_gamma(static_cast<double>(n) * r + 1.0);
    if (log_term > peak) {
      scaled = scaled * std::exp(peak - log_term) + 1.0;
      peak = log_term;
    } else {
      scaled += std::exp(log_term - peak);
    }
    if (log_term < prev_log_term && log_term - (peak + std::log(scaled)) < log_tol)
      return 0.5 * (peak + std::log(scaled));
    prev_log_term = log_term;
  }
  throw std::runtime_error("script_e: series did not converge within max_terms");
}

double script_e(double r, double x, const SeriesConfig& cfg) {
  return std::exp(script_e_log(r, x, cfg));
}

double gaussian_abs_moment(double p) {
  if (!(p >= 1.0)) throw std::domain_error("gaussian_abs_moment: p must be >= 1");
  const double log_moment =
      0.5 * p * std::log(2.0) + log_gamma(0.5 * (p + 1.0)) - 0.5 * std::log(M_PI);
  return std::exp(log_moment / p);
}

double brownian_ratio_f(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 0.5))
    throw std::domain_error("brownian_ratio_f: alpha must be in [0, 1/2]");
  const double a = 0.5 - alpha;        // 0^0 = 1 at alpha = 1/2
  const double num = a == 0.0 ? 1.0 : std::pow(a, a);
  const double den = std::pow(2.0, alpha) * std::pow(1.0 - alpha, 1.0 - alpha);
  return num / den;
}

}  // namespace holderlab
