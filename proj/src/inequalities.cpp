#include "holderlab/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include <json.hpp>

#include "holderlab/parallel.hpp"
#include "holderlab/rng.hpp"

namespace holderlab {

InequalityReport make_report(std::string name, double lhs, double rhs) {
  InequalityReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = rhs - lhs;
  r.holds = lhs <= rhs + kIneqTolAbs + kIneqTolRel * std::fabs(rhs);
  return r;
}

namespace {

// Samples the theta-interpolant of f on the refined grid of f, so that
// interpolant and original live on one shared pair set.
SampledPath interpolant_on(const SampledPath& fine, const SampledPath& coarse) {
  std::vector<double> vals;
  vals.reserve(fine.values().size());
  for (const double t : fine.grid().points) {
    const auto v = interpolate_affine(coarse, t);
    vals.insert(vals.end(), v.begin(), v.end());
  }
  return SampledPath(fine.grid(), fine.dim(), std::move(vals));
}

double max_grid_increment(const SampledPath& coarse) {
  double m = 0.0;
  for (std::size_t j = 1; j < coarse.num_points(); ++j) {
    double s = 0.0;
    for (std::size_t k = 0; k < coarse.dim(); ++k) {
      const double d = coarse.at(j)[k] - coarse.at(j - 1)[k];
      s += d * d;
    }
    m = std::max(m, std::sqrt(s));
  }
  return m;
}

}  // namespace

std::pair<InequalityReport, InequalityReport> interpolation_inequality(
    const SampledPath& path, double c, double alpha, double beta, double gamma,
    std::size_t oversample) {
  if (!(0.0 <= alpha && alpha <= beta && beta <= gamma && gamma <= 1.0))
    throw std::invalid_argument("interpolation_inequality: need 0 <= a <= b <= g <= 1");
  if (!(c > 0.0)) throw std::invalid_argument("interpolation_inequality: c must be positive");
  const SampledPath fine = refine(path, oversample);
  const double lhs = holder_seminorm(fine, beta, DistanceBand::full(), 1);
  const double rhs_open = std::max(
      std::pow(c, alpha - beta) *
          holder_seminorm(fine, alpha, DistanceBand::above_open(c), 1),
      std::pow(c, gamma - beta) *
          holder_seminorm(fine, gamma, DistanceBand::below_closed(c), 1));
  const double rhs_closed = std::max(
      std::pow(c, alpha - beta) *
          holder_seminorm(fine, alpha, DistanceBand::above_closed(c), 1),
      std::pow(c, gamma - beta) *
          holder_seminorm(fine, gamma, DistanceBand::below_open(c), 1));
  return {make_report("interpolation_open", lhs, rhs_open),
          make_report("interpolation_closed", lhs, rhs_closed)};
}

InequalityReport affine_error_bound(const SampledPath& f, const Partition& theta,
                                    double alpha, std::size_t oversample) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::invalid_argument("affine_error_bound: alpha must be in [0, 1]");
  const SampledPath fine = refine(f, oversample);
  const SampledPath coarse = restrict_to(f, theta);
  const SampledPath interp = interpolant_on(fine, coarse);
  const double lhs = sup_norm(path_difference(fine, interp));
  const double dmax = mesh_stats(theta).d_max;
  const double rhs =
      std::pow(0.5 * dmax, alpha) * holder_seminorm(fine, alpha, DistanceBand::full(), 1);
  return make_report("affine_error", lhs, rhs);
}

std::pair<InequalityReport, InequalityReport> grid_difference_bound(
    const SampledPath& f, const SampledPath& g, const Partition& theta, double alpha,
    double beta, std::size_t oversample) {
  if (!(0.0 <= alpha && alpha <= beta && beta <= 1.0))
    throw std::invalid_argument("grid_difference_bound: need 0 <= alpha <= beta <= 1");
  const SampledPath diff = path_difference(f, g);
  const SampledPath fine_diff = refine(diff, oversample);
  const double dmax = mesh_stats(theta).d_max;
  const double sup_theta = sup_norm(restrict_to(diff, theta));
  const double semi_f =
      holder_seminorm(refine(f, oversample), beta, DistanceBand::full(), 1);
  const double semi_g =
      holder_seminorm(refine(g, oversample), beta, DistanceBand::full(), 1);
  const double bracket =
      sup_theta + std::pow(dmax, beta) / std::pow(2.0, beta) * (semi_f + semi_g);
  const double lhs_semi = holder_seminorm(fine_diff, alpha, DistanceBand::full(), 1);
  const double lhs_norm = sup_norm(fine_diff) + lhs_semi;
  return {make_report("grid_difference_seminorm", lhs_semi,
                      2.0 / std::pow(dmax, alpha) * bracket),
          make_report("grid_difference_norm", lhs_norm,
                      (2.0 / std::pow(dmax, alpha) + 1.0) * bracket)};
}

InequalityReport interpolant_band_seminorm_bound(const SampledPath& f,
                                                 const Partition& theta, double alpha,
                                                 double c, std::size_t oversample) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::invalid_argument("interpolant_band_seminorm_bound: alpha in [0, 1]");
  if (!(c > 0.0))
    throw std::invalid_argument("interpolant_band_seminorm_bound: c must be positive");
  const SampledPath fine = refine(f, oversample);
  const SampledPath coarse = restrict_to(f, theta);
  const SampledPath interp = interpolant_on(fine, coarse);
  const double lhs = holder_seminorm(interp, alpha, DistanceBand::below_closed(c), 1);
  const double rhs = std::pow(c, 1.0 - alpha) / mesh_stats(theta).d_min *
                     max_grid_increment(coarse);
  return make_report("interpolant_band", lhs, rhs);
}

InequalityReport interpolant_seminorm_contraction(const SampledPath& f,
                                                  const Partition& theta, double alpha,
                                                  std::size_t oversample) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::invalid_argument("interpolant_seminorm_contraction: alpha in [0, 1]");
  const SampledPath fine = refine(f, oversample);
  const SampledPath interp = interpolant_on(fine, restrict_to(f, theta));
  const double lhs = holder_seminorm(interp, alpha, DistanceBand::full(), 1);
  const double rhs = holder_seminorm(fine, alpha, DistanceBand::full(), 1);
  return make_report("interpolant_contraction", lhs, rhs);
}

std::pair<InequalityReport, InequalityReport> affine_target_bound(
    const SampledPath& f, const SampledPath& g, const Partition& theta, double alpha,
    double beta, std::size_t oversample) {
  if (!(0.0 <= alpha && alpha <= beta && beta <= 1.0))
    throw std::invalid_argument("affine_target_bound: need 0 <= alpha <= beta <= 1");
  const SampledPath fine_f = refine(f, oversample);
  const SampledPath interp_g = interpolant_on(fine_f, restrict_to(g, theta));
  const SampledPath diff = path_difference(fine_f, interp_g);
  const auto [dmax, dmin] = mesh_stats(theta);
  const double sup_theta = sup_norm(restrict_to(path_difference(f, g), theta));
  const double semi_f = holder_seminorm(fine_f, beta, DistanceBand::full(), 1);
  const double lhs_semi = holder_seminorm(diff, alpha, DistanceBand::full(), 1);
  const double rhs_semi = 2.0 * std::pow(dmax, 1.0 - alpha) / dmin * sup_theta +
                          2.0 * std::pow(dmax, beta - alpha) * semi_f;
  const double lhs_norm = sup_norm(diff) + lhs_semi;
  const double rhs_norm =
      (2.0 * std::pow(dmax, 1.0 - alpha) / dmin + 1.0) * sup_theta +
      (2.0 / std::pow(dmax, alpha) + std::pow(2.0, -beta)) * std::pow(dmax, beta) * semi_f;
  return {make_report("affine_target_seminorm", lhs_semi, rhs_semi),
          make_report("affine_target_norm", lhs_norm, rhs_norm)};
}

namespace {

struct TrialInputs {
  SampledPath f;
  SampledPath g;
  Partition theta;
  double alpha, beta, gamma;
  double c_interp;  // threshold for the interpolation inequality
  double c_band;    // threshold for the band seminorm bound
};

TrialInputs generate_trial(RngStream s, const SuiteConfig& cfg) {
  const std::size_t span = cfg.max_grid - cfg.min_grid + 1;
  const std::size_t n_pts =
      cfg.min_grid + static_cast<std::size_t>(s.next_uniform() * static_cast<double>(span));
  const std::size_t d = s.next_uniform() < 0.5 ? 1 : 3;

  std::vector<double> pts{0.0};
  for (std::size_t i = 1; i < n_pts; ++i) pts.push_back(pts.back() + 0.02 + s.next_uniform());
  Partition grid(std::move(pts));

  auto draw_values = [&](RngStream vs) {
    std::vector<double> vals(n_pts * d);
    for (auto& v : vals) v = 2.0 * vs.next_uniform() - 1.0;
    return vals;
  };
  SampledPath f(grid, d, draw_values(s.derive("f", 0)));
  SampledPath g(grid, d, draw_values(s.derive("g", 0)));

  // random nested sub-grid keeping both endpoints
  std::vector<double> th{grid.points.front()};
  for (std::size_t i = 1; i + 1 < grid.points.size(); ++i)
    if (s.next_uniform() < 0.5) th.push_back(grid.points[i]);
  th.push_back(grid.points.back());
  Partition theta(std::move(th));

  double e0 = s.next_uniform(), e1 = s.next_uniform(), e2 = s.next_uniform();
  if (e0 > e1) std::swap(e0, e1);
  if (e1 > e2) std::swap(e1, e2);
  if (e0 > e1) std::swap(e0, e1);

  const double dmax = mesh_stats(theta).d_max;
  TrialInputs in{std::move(f), std::move(g), std::move(theta), e0, e1, e2, 0.0, 0.0};
  in.c_interp = s.next_uniform() < 0.5 ? dmax : 0.5 * grid.horizon();
  in.c_band = s.next_uniform() < 0.5 ? dmax : 2.0 * dmax;
  return in;
}

std::vector<InequalityReport> run_trial(const TrialInputs& in, std::size_t oversample) {
  std::vector<InequalityReport> out;
  auto [i1, i2] =
      interpolation_inequality(in.f, in.c_interp, in.alpha, in.beta, in.gamma, oversample);
  out.push_back(std::move(i1));
  out.push_back(std::move(i2));
  out.push_back(affine_error_bound(in.f, in.theta, in.alpha, oversample));
  auto [d1, d2] =
      grid_difference_bound(in.f, in.g, in.theta, in.alpha, in.beta, oversample);
  out.push_back(std::move(d1));
  out.push_back(std::move(d2));
  out.push_back(
      interpolant_band_seminorm_bound(in.f, in.theta, in.alpha, in.c_band, oversample));
  out.push_back(interpolant_seminorm_contraction(in.f, in.theta, in.alpha, oversample));
  auto [a1, a2] = affine_target_bound(in.f, in.g, in.theta, in.alpha, in.beta, oversample);
  out.push_back(std::move(a1));
  out.push_back(std::move(a2));
  return out;
}

}  // namespace

SuiteReport run_inequality_suite(std::size_t trials, std::uint64_t seed,
                                 const SuiteConfig& cfg, int threads) {
  if (trials < 1) throw std::invalid_argument("run_inequality_suite: trials must be >= 1");
  const RngStream master(seed);
  std::vector<std::vector<InequalityReport>> per_trial(trials);
  parallel_for_index(trials, threads, [&](std::size_t i) {
    per_trial[i] = run_trial(generate_trial(master.derive("trial", i), cfg), cfg.oversample);
  });

  SuiteReport report;
  report.trials = trials;
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < trials; ++i) {
    for (const auto& r : per_trial[i]) {
      auto [it, inserted] = index.try_emplace(r.name, report.items.size());
      if (inserted) {
        SuiteLineItem item;
        item.name = r.name;
        item.worst_slack = r.slack;
        item.worst_trial = i;
        report.items.push_back(std::move(item));
      }
      auto& item = report.items[it->second];
      item.trials += 1;
      if (!r.holds) {
        item.failures += 1;
        report.all_hold = false;
      }
      if (r.slack < item.worst_slack) {
        item.worst_slack = r.slack;
        item.worst_trial = i;
      }
    }
  }
  return report;
}

std::string suite_report_json(const SuiteReport& report) {
  nlohmann::ordered_json j;
  j["trials"] = report.trials;
  j["all_hold"] = report.all_hold;
  nlohmann::ordered_json items = nlohmann::ordered_json::array();
  for (const auto& item : report.items) {
    nlohmann::ordered_json o;
    o["name"] = item.name;
    o["trials"] = item.trials;
    o["failures"] = item.failures;
    o["worst_slack"] = item.worst_slack;
    o["worst_trial"] = item.worst_trial;
    items.push_back(std::move(o));
  }
  j["inequalities"] = std::move(items);
  return j.dump(2) + "\n";
}

}  // namespace holderlab
