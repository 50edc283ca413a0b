#ifndef HOLDERLAB_SPECIAL_HPP
#define HOLDERLAB_SPECIAL_HPP

#include <cstddef>

namespace holderlab {

// Truncation policy for the square-root exponential series.
struct SeriesConfig {
  double rel_tol = 1e-14;
  std::size_t max_terms = 10000;
};

// Gamma function for x > 0 (Lanczos, g = 7, 9 coefficients).
double gamma_fn(double x);

// log Gamma for x > 0; exact enough for ratios of very large arguments.
double log_gamma(double x);

// The square-root exponential-type function
//   E_r(x) = sqrt( sum_{n>=0} x^{2n} Gamma(r)^n / Gamma(n r + 1) ),
// r > 0, x >= 0. Terms may grow before they decay (small r, large x); the
// series is truncated only once terms are decreasing and below
// rel_tol * partial_sum. Throws std::runtime_error if max_terms is hit.
double script_e(double r, double x, const SeriesConfig& cfg = {});

// log E_r(x). The series grows like exp(x^{2/r} Gamma(r)^{1/r}) for small
// r, which can overflow a double even when the log is modest; this
// variant accumulates with a streaming log-sum-exp and never overflows.
double script_e_log(double r, double x, const SeriesConfig& cfg = {});

// (E|Z|^p)^(1/p) for a standard normal Z and p >= 1:
//   (2^(p/2) Gamma((p+1)/2) / sqrt(pi))^(1/p).
double gaussian_abs_moment(double p);

// The exact Brownian interpolation-error ratio
//   f(a) = (1/2 - a)^(1/2 - a) / (2^a (1 - a)^(1 - a)),  a in [0, 1/2],
// with 0^0 = 1 at a = 1/2. Strictly increasing, range [1/sqrt(2), 1].
double brownian_ratio_f(double alpha);

}  // namespace holderlab

#endif
