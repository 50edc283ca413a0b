#include "holderlab/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "holderlab/parallel.hpp"
#include "holderlab/special.hpp"

namespace holderlab {

SdeProblem make_brownian_problem(double T) {
  SdeProblem p;
  p.d = 1;
  p.m = 1;
  p.drift = [](const std::vector<double>&) { return std::vector<double>{0.0}; };
  p.diffusion = [](const std::vector<double>&) { return std::vector<double>{1.0}; };
  p.x0 = {0.0};
  p.T = T;
  p.exact_solution = [](double, const std::vector<double>& w) { return w; };
  return p;
}

SdeProblem make_gbm_problem(double mu, double sigma, double x0, double T) {
  SdeProblem p;
  p.d = 1;
  p.m = 1;
  p.drift = [mu](const std::vector<double>& x) { return std::vector<double>{mu * x[0]}; };
  p.diffusion = [sigma](const std::vector<double>& x) {
    return std::vector<double>{sigma * x[0]};
  };
  p.x0 = {x0};
  p.T = T;
  p.exact_solution = [mu, sigma, x0](double t, const std::vector<double>& w) {
    return std::vector<double>{x0 * std::exp((mu - 0.5 * sigma * sigma) * t + sigma * w[0])};
  };
  return p;
}

SdeProblem make_ode_problem(double x0, double T) {
  SdeProblem p;
  p.d = 1;
  p.m = 1;
  p.drift = [](const std::vector<double>& x) { return std::vector<double>{x[0]}; };
  p.diffusion = [](const std::vector<double>&) { return std::vector<double>{0.0}; };
  p.x0 = {x0};
  p.T = T;
  p.exact_solution = [x0](double t, const std::vector<double>&) {
    return std::vector<double>{x0 * std::exp(t)};
  };
  return p;
}

SampledPath sample_brownian(const Partition& theta, std::size_t m, RngStream stream) {
  if (m < 1) throw std::invalid_argument("sample_brownian: m must be >= 1");
  const std::size_t n = theta.size();
  std::vector<double> vals(n * m, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    const double sd = std::sqrt(theta.points[i] - theta.points[i - 1]);
    for (std::size_t k = 0; k < m; ++k)
      vals[i * m + k] = vals[(i - 1) * m + k] + sd * stream.next_normal();
  }
  return SampledPath(theta, m, std::move(vals));
}

namespace {

// Index stride of the N-step uniform macro grid inside w.grid; validates
// that the strided points actually are n T / N.
std::size_t macro_stride(const SampledPath& w, std::size_t N, double T) {
  const std::size_t segs = w.num_points() - 1;
  if (N < 1 || segs % N != 0)
    throw std::invalid_argument("euler_maruyama: driver grid not nested over the macro grid");
  const std::size_t stride = segs / N;
  for (std::size_t n = 0; n <= N; ++n) {
    const double want = static_cast<double>(n) * T / static_cast<double>(N);
    const double got = w.grid().points[n * stride];
    if (std::fabs(got - want) > 1e-12 * std::max(1.0, T))
      throw std::invalid_argument("euler_maruyama: driver grid not nested over the macro grid");
  }
  return stride;
}

}  // namespace

SampledPath euler_maruyama(const SdeProblem& problem, std::size_t N, const SampledPath& w) {
  if (w.dim() != problem.m)
    throw std::invalid_argument("euler_maruyama: driver dimension mismatch");
  const double T = problem.T;
  if (std::fabs(w.grid().horizon() - T) > 1e-12 * std::max(1.0, T))
    throw std::invalid_argument("euler_maruyama: driver horizon mismatch");
  const std::size_t stride = macro_stride(w, N, T);
  const std::size_t d = problem.d;
  const std::size_t m = problem.m;
  std::vector<double> out(w.num_points() * d);

  std::vector<double> y(problem.x0);
  std::copy(y.begin(), y.end(), out.begin());
  for (std::size_t n = 0; n < N; ++n) {
    const std::size_t i0 = n * stride;
    const std::size_t i1 = (n + 1) * stride;
    const double t0 = w.grid().points[i0];
    const double dt = w.grid().points[i1] - t0;
    const auto mu = problem.drift(y);
    const auto sig = problem.diffusion(y);  // d x m row-major
    std::vector<double> dw(m);
    for (std::size_t k = 0; k < m; ++k) dw[k] = w.at(i1)[k] - w.at(i0)[k];
    std::vector<double> sig_dw(d, 0.0);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t k = 0; k < m; ++k) sig_dw[r] += sig[r * m + k] * dw[k];

    for (std::size_t f = i0 + 1; f <= i1; ++f) {
      const double el = w.grid().points[f] - t0;
      const double frac = el / dt;
      for (std::size_t r = 0; r < d; ++r)
        out[f * d + r] = y[r] + el * mu[r] + frac * sig_dw[r];
    }
    for (std::size_t r = 0; r < d; ++r) y[r] = out[i1 * d + r];
  }
  return SampledPath(w.grid(), d, std::move(out));
}

double brownian_interp_error_exact(ExactKind kind, double alpha, double p, double T,
                                   std::size_t N) {
  if (N < 1) throw std::invalid_argument("brownian_interp_error_exact: N must be >= 1");
  if (!(T > 0.0)) throw std::invalid_argument("brownian_interp_error_exact: T must be positive");
  const double w_lp = std::sqrt(T) * gaussian_abs_moment(p);
  const double dN = static_cast<double>(N);
  switch (kind) {
    case ExactKind::SupOfLp:
      return w_lp / (2.0 * std::sqrt(dN));
    case ExactKind::Seminorm:
      return std::pow(dN, alpha - 0.5) * std::pow(T, -alpha) * w_lp * brownian_ratio_f(alpha);
    case ExactKind::FullNorm:
      return std::pow(dN, alpha - 0.5) * std::pow(T, -alpha) * w_lp *
             (std::pow(T, alpha) / (2.0 * std::pow(dN, alpha)) + brownian_ratio_f(alpha));
  }
  throw std::invalid_argument("brownian_interp_error_exact: unknown kind");
}

LpHolderEstimate estimate_lp_of_holder(const PathSampler& sampler, double p, double alpha,
                                       std::size_t M, std::size_t oversample,
                                       RngStream stream, bool seminorm_only, int threads) {
  if (M < 2) throw std::invalid_argument("estimate_lp_of_holder: need M >= 2");
  if (!(p >= 1.0)) throw std::invalid_argument("estimate_lp_of_holder: p must be >= 1");
  std::vector<double> powers(M);
  parallel_for_index(M, threads, [&](std::size_t i) {
    const SampledPath path = sampler(stream.derive("sample", i));
    const double h = seminorm_only
                         ? holder_seminorm(path, alpha, DistanceBand::full(), oversample)
                         : holder_norm(path, alpha, oversample);
    powers[i] = std::pow(h, p);
  });
  const double m = mean(powers);
  const double v = sample_variance(powers);
  LpHolderEstimate est;
  est.p = p;
  est.alpha = alpha;
  est.samples = M;
  est.refinement = oversample;
  est.kind = NormKind::LpOfHolder;
  est.value = m > 0.0 ? std::pow(m, 1.0 / p) : 0.0;
  est.std_error = m > 0.0 ? (1.0 / p) * std::pow(m, 1.0 / p - 1.0) *
                                std::sqrt(v / static_cast<double>(M))
                          : 0.0;
  return est;
}

namespace {

struct SampleMatrix {
  Partition grid;
  std::size_t d = 0;
  std::size_t M = 0;
  // time-major: block t holds M * d doubles, sample-major inside
  std::vector<double> data;

  [[nodiscard]] const double* block(std::size_t t) const { return data.data() + t * M * d; }
};

SampleMatrix draw_matrix(const PathSampler& sampler, std::size_t M, std::size_t oversample,
                         const RngStream& stream, int threads) {
  SampleMatrix mat;
  {
    const SampledPath first = refine(sampler(stream.derive("sample", 0)), oversample);
    mat.grid = first.grid();
    mat.d = first.dim();
    mat.M = M;
    mat.data.assign(mat.grid.size() * M * mat.d, 0.0);
    for (std::size_t t = 0; t < mat.grid.size(); ++t)
      for (std::size_t k = 0; k < mat.d; ++k)
        mat.data[(t * M + 0) * mat.d + k] = first.at(t)[k];
  }
  parallel_for_index(M - 1, threads, [&](std::size_t idx) {
    const std::size_t i = idx + 1;
    const SampledPath path = refine(sampler(stream.derive("sample", i)), oversample);
    if (path.grid().points != mat.grid.points || path.dim() != mat.d)
      throw std::invalid_argument("estimate_holder_of_lp: samples disagree on the grid");
    for (std::size_t t = 0; t < mat.grid.size(); ++t)
      for (std::size_t k = 0; k < mat.d; ++k)
        mat.data[(t * M + i) * mat.d + k] = path.at(t)[k];
  });
  return mat;
}

// mean over samples of |x_t - x_s|^p for one pair of time blocks (pass
// b = nullptr for the one-point norm), plus the sample variance of the
// p-th powers for the delta-method stderr.
void pair_power_stats(const double* a, const double* b, std::size_t M, std::size_t d,
                      double p, double& out_mean, double& out_var) {
  double sum = 0.0, sumsq = 0.0;
  if (d == 1) {
    for (std::size_t s = 0; s < M; ++s) {
      const double diff = b ? a[s] - b[s] : a[s];
      const double sq = diff * diff;
      const double pw = p == 2.0 ? sq : std::pow(sq, 0.5 * p);
      sum += pw;
      sumsq += pw * pw;
    }
  } else {
    for (std::size_t s = 0; s < M; ++s) {
      double sq = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        const double diff = b ? a[s * d + k] - b[s * d + k] : a[s * d + k];
        sq += diff * diff;
      }
      const double pw = p == 2.0 ? sq : std::pow(sq, 0.5 * p);
      sum += pw;
      sumsq += pw * pw;
    }
  }
  const double dm = static_cast<double>(M);
  out_mean = sum / dm;
  out_var = std::max(0.0, (sumsq - sum * sum / dm) / (dm - 1.0));
}

double delta_stderr(double mean_pow, double var_pow, std::size_t M, double p) {
  if (mean_pow <= 0.0) return 0.0;
  return (1.0 / p) * std::pow(mean_pow, 1.0 / p - 1.0) *
         std::sqrt(var_pow / static_cast<double>(M));
}

}  // namespace

LpHolderEstimate estimate_holder_of_lp(const PathSampler& sampler, double p, double alpha,
                                       std::size_t M, std::size_t oversample,
                                       RngStream stream, NormKind kind, bool seminorm_only,
                                       int threads) {
  if (M < 2) throw std::invalid_argument("estimate_holder_of_lp: need M >= 2");
  if (!(p >= 1.0)) throw std::invalid_argument("estimate_holder_of_lp: p must be >= 1");
  if (kind == NormKind::LpOfHolder)
    throw std::invalid_argument("estimate_holder_of_lp: kind must be HolderOfLp or SupOfLp");
  const SampleMatrix mat = draw_matrix(sampler, M, oversample, stream, threads);
  const std::size_t n = mat.grid.size();

  LpHolderEstimate est;
  est.p = p;
  est.alpha = alpha;
  est.samples = M;
  est.refinement = oversample;
  est.kind = kind;

  double sup_val = 0.0, sup_se = 0.0;
  if (kind == NormKind::SupOfLp || !seminorm_only) {
    double best_mean = 0.0, best_var = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      double m, v;
      pair_power_stats(mat.block(t), nullptr, M, mat.d, p, m, v);
      if (m > best_mean) {
        best_mean = m;
        best_var = v;
      }
    }
    sup_val = best_mean > 0.0 ? std::pow(best_mean, 1.0 / p) : 0.0;
    sup_se = delta_stderr(best_mean, best_var, M, p);
  }
  if (kind == NormKind::SupOfLp) {
    est.value = sup_val;
    est.std_error = sup_se;
    return est;
  }

  // seminorm over pairs: parallel over the earlier index, one slot each
  struct Best {
    double ratio = -1.0;
    double mean = 0.0;
    double var = 0.0;
    double gap_pow = 1.0;
  };
  std::vector<Best> best_per_i(n > 1 ? n - 1 : 0);
  parallel_for_index(n > 1 ? n - 1 : 0, threads, [&](std::size_t i) {
    Best best;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double gap = mat.grid.points[j] - mat.grid.points[i];
      double m, v;
      pair_power_stats(mat.block(j), mat.block(i), M, mat.d, p, m, v);
      const double gp = std::pow(gap, alpha);
      const double ratio = (m > 0.0 ? std::pow(m, 1.0 / p) : 0.0) / gp;
      if (ratio > best.ratio) best = {ratio, m, v, gp};
    }
    best_per_i[i] = best;
  });
  Best overall;
  for (const auto& b : best_per_i)
    if (b.ratio > overall.ratio) overall = b;
  const double semi_val = std::max(0.0, overall.ratio);
  const double semi_se = delta_stderr(overall.mean, overall.var, M, p) / overall.gap_pow;

  if (seminorm_only) {
    est.value = semi_val;
    est.std_error = semi_se;
  } else {
    est.value = sup_val + semi_val;
    est.std_error = sup_se + semi_se;
  }
  return est;
}

RateFit fit_rate(const std::vector<double>& abscissae, const std::vector<double>& errors) {
  if (abscissae.size() != errors.size() || abscissae.size() < 2)
    throw std::invalid_argument("fit_rate: need >= 2 matching points");
  const std::size_t n = abscissae.size();
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(abscissae[i] > 0.0) || !(errors[i] > 0.0))
      throw std::invalid_argument("fit_rate: abscissae and errors must be positive");
    lx[i] = std::log(abscissae[i]);
    ly[i] = std::log(errors[i]);
  }
  const double mx = mean(lx), my = mean(ly);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_rate: abscissae are all equal");
  RateFit fit;
  fit.abscissae = abscissae;
  fit.errors = errors;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ly[i] - (fit.intercept + fit.slope * lx[i]);
    ss_res += r * r;
  }
  fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

namespace {

Partition strided_partition(const Partition& fine, std::size_t stride) {
  std::vector<double> pts;
  for (std::size_t i = 0; i < fine.size(); i += stride) pts.push_back(fine.points[i]);
  return Partition(std::move(pts));
}

}  // namespace

PathSampler brownian_interp_error_sampler(std::size_t N, double T, std::size_t oversample) {
  if (N < 1 || oversample < 1)
    throw std::invalid_argument("brownian_interp_error_sampler: N, oversample >= 1");
  const Partition fine = uniform_partition(N * oversample, T);
  return [fine, N, oversample](RngStream s) {
    SampledPath w = sample_brownian(fine, 1, s);
    std::vector<double> err(w.num_points());
    for (std::size_t n = 0; n < N; ++n) {
      const double w0 = w.values()[n * oversample];
      const double w1 = w.values()[(n + 1) * oversample];
      for (std::size_t i = 0; i <= oversample; ++i) {
        const double frac = static_cast<double>(i) / static_cast<double>(oversample);
        const std::size_t f = n * oversample + i;
        err[f] = w.values()[f] - ((1.0 - frac) * w0 + frac * w1);
      }
    }
    return SampledPath(fine, 1, std::move(err));
  };
}

std::pair<std::vector<EulerRateRow>, RateFit> euler_rate_experiment(
    const SdeProblem& problem, const std::vector<std::size_t>& Ns, double p, double alpha,
    std::size_t M, std::uint64_t seed, NormKind kind, bool seminorm_only,
    std::size_t oversample, int threads) {
  if (Ns.size() < 2) throw std::invalid_argument("euler_rate_experiment: need >= 2 resolutions");
  for (std::size_t i = 1; i < Ns.size(); ++i)
    if (Ns[i] % Ns[i - 1] != 0 || Ns[i] <= Ns[i - 1])
      throw std::invalid_argument("euler_rate_experiment: resolutions must be nested");
  const std::size_t n_top = Ns.back();
  const std::size_t master_factor =
      problem.exact_solution ? oversample : std::max<std::size_t>(oversample, 8);
  const std::size_t n_master = n_top * master_factor;
  const Partition master = uniform_partition(n_master, problem.T);

  std::vector<EulerRateRow> rows;
  std::vector<double> abscissae, errors;
  for (const std::size_t N : Ns) {
    const Partition meas = strided_partition(master, n_master / (N * oversample));
    PathSampler sampler = [&problem, &master, &meas, N, n_master](RngStream s) {
      const SampledPath w = sample_brownian(master, problem.m, s);
      SampledPath ref = problem.exact_solution
                            ? [&] {
                                std::vector<double> vals(w.num_points() * problem.d);
                                std::vector<double> wt(problem.m);
                                for (std::size_t t = 0; t < w.num_points(); ++t) {
                                  for (std::size_t k = 0; k < problem.m; ++k)
                                    wt[k] = w.at(t)[k];
                                  const auto x =
                                      problem.exact_solution(w.grid().points[t], wt);
                                  std::copy(x.begin(), x.end(),
                                            vals.begin() + static_cast<std::ptrdiff_t>(
                                                               t * problem.d));
                                }
                                return SampledPath(w.grid(), problem.d, std::move(vals));
                              }()
                            : euler_maruyama(problem, n_master, w);
      const SampledPath y = euler_maruyama(problem, N, w);
      return restrict_to(path_difference(ref, y), meas);
    };
    const RngStream base(seed);
    LpHolderEstimate est;
    if (kind == NormKind::LpOfHolder)
      est = estimate_lp_of_holder(sampler, p, alpha, M, 1, base, seminorm_only, threads);
    else
      est = estimate_holder_of_lp(sampler, p, alpha, M, 1, base, kind, seminorm_only, threads);
    rows.push_back({N, p, alpha, est.value, est.std_error});
    abscissae.push_back(static_cast<double>(N));
    errors.push_back(est.value);
  }
  return {rows, fit_rate(abscissae, errors)};
}

std::vector<BrownianExactRow> brownian_exact_experiment(
    const std::vector<double>& alphas, const std::vector<double>& ps,
    const std::vector<std::size_t>& Ns, std::size_t M, std::size_t oversample, double T,
    std::uint64_t seed, int threads) {
  std::vector<BrownianExactRow> rows;
  for (const double p : ps) {
    for (const std::size_t N : Ns) {
      const PathSampler sampler = brownian_interp_error_sampler(N, T, oversample);
      const RngStream base(seed);
      // sup row (alpha plays no role; recorded as 0)
      const auto sup = estimate_holder_of_lp(sampler, p, 0.0, M, 1, base,
                                             NormKind::SupOfLp, false, threads);
      rows.push_back({0.0, p, N, T, "sup_of_lp",
                      brownian_interp_error_exact(ExactKind::SupOfLp, 0.0, p, T, N),
                      sup.value, sup.std_error, oversample, M});
      for (const double alpha : alphas) {
        const auto semi = estimate_holder_of_lp(sampler, p, alpha, M, 1, base,
                                                NormKind::HolderOfLp, true, threads);
        rows.push_back({alpha, p, N, T, "seminorm",
                        brownian_interp_error_exact(ExactKind::Seminorm, alpha, p, T, N),
                        semi.value, semi.std_error, oversample, M});
      }
    }
  }
  return rows;
}

}  // namespace holderlab
