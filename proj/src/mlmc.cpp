#include "holderlab/mlmc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "holderlab/parallel.hpp"

namespace holderlab {

void MlmcSchedule::validate() const {
  if (N.size() != L + 1 || M.size() != L + 1)
    throw std::invalid_argument("MlmcSchedule: need L+1 resolutions and sample counts");
  for (std::size_t l = 0; l <= L; ++l) {
    if (N[l] < 1 || M[l] < 1)
      throw std::invalid_argument("MlmcSchedule: resolutions and counts must be >= 1");
    if (l > 0 && N[l] % N[l - 1] != 0)
      throw std::invalid_argument("MlmcSchedule: N[l-1] must divide N[l]");
  }
}

double MlmcSchedule::total_cost() const {
  double c = 0.0;
  for (std::size_t l = 0; l <= L; ++l)
    c += static_cast<double>(M[l]) * static_cast<double>(N[l]);
  return c;
}

MlmcSchedule geometric_schedule(std::size_t L, std::size_t N0) {
  if (N0 < 1) throw std::invalid_argument("geometric_schedule: N0 >= 1");
  MlmcSchedule s;
  s.L = L;
  for (std::size_t l = 0; l <= L; ++l) {
    s.N.push_back(N0 << l);
    s.M.push_back(std::size_t{1} << (L - l));
  }
  return s;
}

PathFunctional identity_functional(double alpha) {
  PathFunctional f;
  f.map = [](const SampledPath& p) { return p; };
  f.lipschitz_c = 1.0;
  f.growth_r = 0.0;
  f.alpha = alpha;
  return f;
}

PathFunctional bounded_map_functional(double alpha) {
  PathFunctional f;
  f.map = [](const SampledPath& p) {
    std::vector<double> vals(p.values().size());
    const std::size_t d = p.dim();
    for (std::size_t i = 0; i < p.num_points(); ++i) {
      double sq = 0.0;
      for (std::size_t k = 0; k < d; ++k) sq += p.at(i)[k] * p.at(i)[k];
      const double scale = 1.0 / (1.0 + std::sqrt(sq));
      for (std::size_t k = 0; k < d; ++k) vals[i * d + k] = scale * p.at(i)[k];
    }
    return SampledPath(p.grid(), d, std::move(vals));
  };
  f.lipschitz_c = 1.0;
  f.growth_r = 1.0;
  f.alpha = alpha;
  return f;
}

SampledPath lift_to_grid(const SampledPath& path, const Partition& grid) {
  const std::size_t d = path.dim();
  std::vector<double> vals(grid.size() * d);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const std::vector<double> v = interpolate_affine(path, grid.points[i]);
    std::copy(v.begin(), v.end(), vals.begin() + static_cast<std::ptrdiff_t>(i * d));
  }
  return SampledPath(grid, d, std::move(vals));
}

namespace {

// Pointwise mean of draw(0..M-1) with a fixed blocked-pairwise reduction
// shape, so the result is bit-identical for every thread count.
SampledPath mean_over(const std::function<SampledPath(std::size_t)>& draw, std::size_t M,
                      int threads) {
  constexpr std::size_t kBlock = 256;
  const SampledPath first = draw(0);
  const std::size_t n = first.values().size();
  std::vector<std::vector<double>> block_sums;
  std::vector<double> storage;
  for (std::size_t start = 0; start < M; start += kBlock) {
    const std::size_t b = std::min(kBlock, M - start);
    storage.assign(b * n, 0.0);
    parallel_for_index(b, threads, [&](std::size_t i) {
      const std::size_t k = start + i;
      const SampledPath pk = k == 0 ? first : draw(k);
      if (pk.values().size() != n || pk.grid().points != first.grid().points)
        throw std::invalid_argument("mean_over: sample grid mismatch");
      std::copy(pk.values().begin(), pk.values().end(),
                storage.begin() + static_cast<std::ptrdiff_t>(i * n));
    });
    std::vector<double> bs(n);
    std::vector<double> col(b);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < b; ++i) col[i] = storage[i * n + j];
      bs[j] = pairwise_sum(col);
    }
    block_sums.push_back(std::move(bs));
  }
  std::vector<double> out(n);
  std::vector<double> col(block_sums.size());
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < block_sums.size(); ++i) col[i] = block_sums[i][j];
    out[j] = pairwise_sum(col) / static_cast<double>(M);
  }
  return SampledPath(first.grid(), first.dim(), std::move(out));
}

struct PowerMean {  // L^p-of-samples value with a delta-method stderr
  double value;
  double std_error;
};

PowerMean lp_over(const std::vector<double>& xs, double p) {
  std::vector<double> pows(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) pows[i] = std::pow(xs[i], p);
  const double m = mean(pows);
  const double v = xs.size() > 1 ? sample_variance(pows) : 0.0;
  PowerMean out;
  out.value = m > 0.0 ? std::pow(m, 1.0 / p) : 0.0;
  out.std_error = m > 0.0 ? (1.0 / p) * std::pow(m, 1.0 / p - 1.0) *
                                std::sqrt(v / static_cast<double>(xs.size()))
                          : 0.0;
  return out;
}

}  // namespace

SampledPath mc_mean(const std::function<SampledPath(RngStream)>& sampler, std::size_t M,
                    RngStream stream, int threads) {
  if (M < 1) throw std::invalid_argument("mc_mean: M >= 1");
  return mean_over([&](std::size_t k) { return sampler(stream.derive("replica", k)); }, M,
                   threads);
}

double path_distance(const SampledPath& a, const SampledPath& b, double gamma,
                     std::size_t oversample) {
  const SampledPath diff = path_difference(a, b);
  return gamma == 0.0 ? sup_norm(diff) : holder_norm(diff, gamma, oversample);
}

MlmcEstimate mlmc_mean(const CoupledSampler& sampler, const MlmcSchedule& schedule,
                       const PathFunctional& g, RngStream stream, int threads) {
  schedule.validate();
  MlmcEstimate est;
  est.total_cost = schedule.total_cost();
  std::vector<SampledPath> level_means;
  for (std::size_t l = 0; l <= schedule.L; ++l) {
    const RngStream level_stream = stream.derive("level", l);
    std::vector<double> norms(schedule.M[l]);
    auto draw = [&](std::size_t k) {
      auto [fine, coarse] = sampler(l, level_stream.derive("replica", k));
      SampledPath corr = g.map(fine);
      if (l > 0) {
        const SampledPath gc = g.map(coarse);
        if (gc.dim() != corr.dim())
          throw std::logic_error("mlmc_mean: coupled pair dimension mismatch");
        corr = path_difference(corr, lift_to_grid(gc, corr.grid()));
      }
      norms[k] = sup_norm(corr);
      return corr;
    };
    level_means.push_back(mean_over(draw, schedule.M[l], threads));
    MlmcLevelStat st;
    st.level = l;
    st.N = schedule.N[l];
    st.M = schedule.M[l];
    st.corr_mean = mean(norms);
    st.corr_var = norms.size() > 1 ? sample_variance(norms) : 0.0;
    est.per_level.push_back(st);
  }
  const Partition out_grid = level_means.back().grid();
  std::vector<double> acc = lift_to_grid(level_means[0], out_grid).values();
  for (std::size_t l = 1; l <= schedule.L; ++l) {
    const SampledPath lifted = lift_to_grid(level_means[l], out_grid);
    for (std::size_t j = 0; j < acc.size(); ++j) acc[j] += lifted.values()[j];
  }
  est.mean_path = SampledPath(out_grid, level_means.back().dim(), std::move(acc));
  return est;
}

RademacherReport rademacher_sum_check(
    const std::vector<std::function<std::vector<double>(RngStream)>>& samplers,
    std::size_t d, double p, std::size_t trials, RngStream stream, int threads) {
  const std::size_t k = samplers.size();
  if (k < 1 || d < 1 || trials < 2 || !(p >= 1.0))
    throw std::invalid_argument("rademacher_sum_check: bad arguments");
  std::vector<double> sum_norm(trials), rad_norm(trials), xi_norm(trials * k);
  parallel_for_index(trials, threads, [&](std::size_t i) {
    const RngStream ts = stream.derive("trial", i);
    std::vector<double> s(d, 0.0), r(d, 0.0);
    for (std::size_t j = 0; j < k; ++j) {
      const std::vector<double> xi = samplers[j](ts.derive("xi", j));
      if (xi.size() != d)
        throw std::invalid_argument("rademacher_sum_check: sampler dimension mismatch");
      RngStream ss = ts.derive("sign", j);
      const double sign = ss.next_uniform() < 0.5 ? -1.0 : 1.0;
      double sq = 0.0;
      for (std::size_t c = 0; c < d; ++c) {
        s[c] += xi[c];
        r[c] += sign * xi[c];
        sq += xi[c] * xi[c];
      }
      xi_norm[i * k + j] = std::sqrt(sq);
    }
    double ssq = 0.0, rsq = 0.0;
    for (std::size_t c = 0; c < d; ++c) {
      ssq += s[c] * s[c];
      rsq += r[c] * r[c];
    }
    sum_norm[i] = std::sqrt(ssq);
    rad_norm[i] = std::sqrt(rsq);
  });

  RademacherReport rep;
  const PowerMean sum_pm = lp_over(sum_norm, p);
  const PowerMean rad_pm = lp_over(rad_norm, p);
  rep.sum_lp = sum_pm.value;
  rep.sum_se = sum_pm.std_error;
  rep.rademacher_lp = rad_pm.value;
  rep.rademacher_se = rad_pm.std_error;

  // (sum_j ||xi_j||_{L^p}^2)^{1/2} with first-order error propagation
  double qsum = 0.0, qvar = 0.0;
  std::vector<double> one(trials);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < trials; ++i) one[i] = xi_norm[i * k + j];
    const PowerMean pm = lp_over(one, p);
    qsum += pm.value * pm.value;
    qvar += pm.value * pm.value * pm.std_error * pm.std_error;
  }
  rep.norms_lq = std::sqrt(qsum);
  rep.norms_se = rep.norms_lq > 0.0 ? std::sqrt(qvar) / rep.norms_lq : 0.0;

  rep.randomization_holds =
      rep.sum_lp <= 2.0 * rep.rademacher_lp + 4.0 * (rep.sum_se + 2.0 * rep.rademacher_se);
  rep.theta_holds =
      p != 2.0 ||
      rep.sum_lp <= 2.0 * rep.norms_lq + 4.0 * (rep.sum_se + 2.0 * rep.norms_se);
  return rep;
}

double theoretical_level_sum(double rho, std::size_t L) {
  if (L < 1 || !(rho >= 0.0))
    throw std::invalid_argument("theoretical_level_sum: need L >= 1, rho >= 0");
  const double Ld = static_cast<double>(L);
  if (rho == 0.5) return std::pow(2.0, -0.5 * Ld) * Ld;
  const double gap = std::fabs(0.5 - rho);
  return std::pow(2.0, -Ld * std::min(rho, 0.5)) * (1.0 - std::pow(2.0, -gap * Ld)) /
         std::fabs(1.0 - std::pow(2.0, rho - 0.5));
}

MlmcExperiment mlmc_convergence_experiment(const SdeProblem& problem,
                                           const PathFunctional& f,
                                           const std::vector<std::size_t>& Ls, double p,
                                           double gamma, std::size_t repetitions,
                                           std::uint64_t seed, int threads,
                                           std::size_t m_ref) {
  if (Ls.empty() || repetitions < 2 || !(p >= 1.0) || m_ref < 4)
    throw std::invalid_argument("mlmc_convergence_experiment: bad sizes");
  for (std::size_t i = 1; i < Ls.size(); ++i)
    if (Ls[i] <= Ls[i - 1])
      throw std::invalid_argument("mlmc_convergence_experiment: Ls must increase");
  if (!(gamma < f.alpha))
    throw std::invalid_argument("mlmc_convergence_experiment: need gamma < alpha");

  const RngStream base(seed);
  const std::size_t N_top = std::size_t{1} << Ls.back();
  const std::size_t N_ref = 4 * N_top;

  auto plain_sampler = [&](std::size_t N) {
    return [&problem, &f, N](RngStream s) {
      const SampledPath w =
          sample_brownian(uniform_partition(N, problem.T), problem.m, s);
      return f.map(euler_maruyama(problem, N, w));
    };
  };

  // reference mean from two independent halves; their distance sizes the
  // statistical error of the combined mean
  const SampledPath ref_a =
      mc_mean(plain_sampler(N_ref), m_ref / 2, base.derive("ref_a", 0), threads);
  const SampledPath ref_b =
      mc_mean(plain_sampler(N_ref), m_ref / 2, base.derive("ref_b", 0), threads);
  std::vector<double> ref_vals(ref_a.values().size());
  for (std::size_t j = 0; j < ref_vals.size(); ++j)
    ref_vals[j] = 0.5 * (ref_a.values()[j] + ref_b.values()[j]);
  const SampledPath ref_mean(ref_a.grid(), ref_a.dim(), std::move(ref_vals));
  const double ref_error = 0.5 * path_distance(ref_a, ref_b, gamma);

  MlmcExperiment exp;
  std::vector<double> abscissae, errors;
  for (const std::size_t L : Ls) {
    const MlmcSchedule sched = geometric_schedule(L);
    CoupledSampler cs = [&problem, sched](std::size_t l, RngStream s) {
      const std::size_t Nf = sched.N[l];
      const SampledPath w =
          sample_brownian(uniform_partition(Nf, problem.T), problem.m, s);
      SampledPath fine = euler_maruyama(problem, Nf, w);
      SampledPath coarse;
      if (l > 0) coarse = euler_maruyama(problem, sched.N[l - 1], w);
      return std::pair<SampledPath, SampledPath>(std::move(fine), std::move(coarse));
    };
    const RngStream lstream = base.derive("L", L);
    std::vector<double> dists(repetitions);
    for (std::size_t r = 0; r < repetitions; ++r) {
      const MlmcEstimate est = mlmc_mean(cs, sched, f, lstream.derive("rep", r), threads);
      dists[r] = path_distance(est.mean_path,
                               lift_to_grid(ref_mean, est.mean_path.grid()), gamma);
      if (r == 0)
        for (const MlmcLevelStat& st : est.per_level)
          exp.level_rows.push_back({L, st.level, st.N, st.M, st.corr_mean, st.corr_var});
    }
    const PowerMean pm = lp_over(dists, p);
    exp.rows.push_back({L, p, gamma, pm.value, pm.std_error, sched.total_cost(), ref_error});
    abscissae.push_back(std::pow(2.0, static_cast<double>(L)));
    errors.push_back(pm.value);
  }
  exp.fit = fit_rate(abscissae, errors);

  // equal-cost single-level comparison at the largest budget
  const MlmcSchedule top = geometric_schedule(Ls.back());
  const std::size_t m_plain = std::max<std::size_t>(
      2, static_cast<std::size_t>(top.total_cost() / static_cast<double>(N_top)));
  const RngStream pstream = base.derive("plain", Ls.back());
  std::vector<double> pdists(repetitions);
  for (std::size_t r = 0; r < repetitions; ++r) {
    const SampledPath m =
        mc_mean(plain_sampler(N_top), m_plain, pstream.derive("rep", r), threads);
    pdists[r] = path_distance(m, lift_to_grid(ref_mean, m.grid()), gamma);
  }
  exp.plain_error = lp_over(pdists, p).value;
  exp.plain_cost = static_cast<double>(m_plain) * static_cast<double>(N_top);

  double min_err = errors[0];
  for (const double e : errors) min_err = std::min(min_err, e);
  exp.inconclusive = ref_error >= 0.2 * min_err;
  return exp;
}

}  // namespace holderlab
