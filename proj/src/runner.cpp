#include "holderlab/runner.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "holderlab/galerkin.hpp"
#include "holderlab/grid.hpp"
#include "holderlab/inequalities.hpp"
#include "holderlab/mlmc.hpp"
#include "holderlab/parallel.hpp"
#include "holderlab/schemes.hpp"
#include "holderlab/special.hpp"

namespace holderlab {

namespace {

const std::set<std::string> kGlobalKeys = {"seed", "threads", "output", "format"};

const std::map<std::string, std::set<std::string>>& command_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"inequalities", {"trials", "oversample"}},
      {"brownian", {"samples", "oversample", "alphas", "ps", "Ns", "T"}},
      {"euler",
       {"samples", "alpha", "p", "Ns", "problem", "mu", "sigma", "x0", "T", "norm",
        "oversample"}},
      {"galerkin",
       {"lambda_family", "s", "theta_target", "iota", "kappa", "alpha_F", "time_steps",
        "N_ref", "Ns", "p", "delta", "samples"}},
      {"mlmc", {"levels", "p", "gamma", "alpha", "repetitions", "functional", "ref_samples"}},
      {"special", {"fn", "x", "r", "alpha", "p"}},
  };
  return keys;
}

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

// typed access into the flat map, errors naming the key
struct Params {
  const RunConfig& cfg;

  [[nodiscard]] std::string str(const std::string& key, const std::string& dflt) const {
    auto it = cfg.values.find(key);
    return it == cfg.values.end() ? dflt : it->second;
  }
  [[nodiscard]] double num(const std::string& key, double dflt) const {
    auto it = cfg.values.find(key);
    if (it == cfg.values.end()) return dflt;
    try {
      std::size_t pos = 0;
      const double v = std::stod(it->second, &pos);
      if (pos != it->second.size()) throw std::invalid_argument("");
      return v;
    } catch (...) {
      throw ConfigError("key '" + key + "': cannot parse '" + it->second + "' as a number");
    }
  }
  [[nodiscard]] std::uint64_t uint(const std::string& key, std::uint64_t dflt) const {
    const double v = num(key, static_cast<double>(dflt));
    if (v < 0.0 || v != std::floor(v))
      throw ConfigError("key '" + key + "': expected a nonnegative integer");
    return static_cast<std::uint64_t>(v);
  }
  [[nodiscard]] std::vector<double> nums(const std::string& key,
                                         const std::string& dflt) const {
    const std::string raw = str(key, dflt);
    std::vector<double> out;
    std::stringstream ss(raw);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      tok = trim(tok);
      if (tok.empty()) continue;
      try {
        std::size_t pos = 0;
        out.push_back(std::stod(tok, &pos));
        if (pos != tok.size()) throw std::invalid_argument("");
      } catch (...) {
        throw ConfigError("key '" + key + "': cannot parse '" + tok + "' as a number");
      }
    }
    if (out.empty()) throw ConfigError("key '" + key + "': empty list");
    return out;
  }
  [[nodiscard]] std::vector<std::size_t> sizes(const std::string& key,
                                               const std::string& dflt) const {
    std::vector<std::size_t> out;
    for (const double v : nums(key, dflt)) {
      if (v < 0.0 || v != std::floor(v))
        throw ConfigError("key '" + key + "': expected nonnegative integers");
      out.push_back(static_cast<std::size_t>(v));
    }
    return out;
  }
};

std::string csv_field(double v) {
  return std::isnan(v) ? std::string() : format_double(v);
}

struct Artifacts {
  std::filesystem::path dir;

  void write(const std::string& name, const std::string& content) const {
    std::filesystem::create_directories(dir);
    std::ofstream f(dir / name, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + (dir / name).string());
    f << content;
  }

  // timestamps live only here, never in the data files
  void log(const std::string& line) const {
    std::filesystem::create_directories(dir);
    std::ofstream f(dir / "run.log", std::ios::app);
    const auto now = std::chrono::system_clock::now().time_since_epoch();
    f << std::chrono::duration_cast<std::chrono::seconds>(now).count() << " " << line
      << "\n";
  }
};

SdeProblem build_sde_problem(const Params& p) {
  const std::string kind = p.str("problem", "brownian");
  const double T = p.num("T", 1.0);
  if (kind == "brownian") return make_brownian_problem(T);
  if (kind == "gbm")
    return make_gbm_problem(p.num("mu", 0.5), p.num("sigma", 0.2), p.num("x0", 1.0), T);
  if (kind == "ode") return make_ode_problem(p.num("x0", 1.0), T);
  throw ConfigError("key 'problem': unknown problem '" + kind + "'");
}

NormKind parse_norm(const std::string& s) {
  if (s == "lp_of_holder") return NormKind::LpOfHolder;
  if (s == "holder_of_lp") return NormKind::HolderOfLp;
  if (s == "sup_of_lp") return NormKind::SupOfLp;
  throw ConfigError("key 'norm': unknown norm '" + s + "'");
}

int run_inequalities(const Params& p, const Artifacts& art, std::ostream& out,
                     std::uint64_t seed, int threads) {
  const std::size_t trials = p.uint("trials", 1000);
  SuiteConfig sc;
  sc.oversample = p.uint("oversample", sc.oversample);
  const SuiteReport report = run_inequality_suite(trials, seed, sc, threads);
  art.write("inequalities.json", suite_report_json(report));
  std::size_t failures = 0;
  for (const auto& item : report.items) failures += item.failures;
  out << "inequalities: " << report.items.size() << " checkers x " << trials
      << " trials, " << failures << " failures\n";
  return report.all_hold ? 0 : 1;
}

int run_brownian(const Params& p, const Artifacts& art, std::ostream& out,
                 const std::string& format, std::uint64_t seed, int threads) {
  const auto rows = brownian_exact_experiment(
      p.nums("alphas", "0,0.25"), p.nums("ps", "2"), p.sizes("Ns", "4,16,64"),
      p.uint("samples", 10000), p.uint("oversample", 8), p.num("T", 1.0), seed, threads);
  double worst = 0.0;
  for (const auto& r : rows)
    if (r.exact > 0.0) worst = std::max(worst, std::fabs(r.mc_estimate - r.exact) / r.exact);
  if (format == "csv") {
    std::string csv = "alpha,p,N,T,kind,exact,mc_estimate,mc_stderr,oversample,samples\n";
    for (const auto& r : rows)
      csv += format_double(r.alpha) + "," + format_double(r.p) + "," +
             std::to_string(r.N) + "," + format_double(r.T) + "," + r.kind + "," +
             format_double(r.exact) + "," + format_double(r.mc_estimate) + "," +
             format_double(r.mc_stderr) + "," + std::to_string(r.oversample) + "," +
             std::to_string(r.samples) + "\n";
    art.write("brownian_exact.csv", csv);
  } else {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& r : rows)
      j.push_back({{"alpha", r.alpha},
                   {"p", r.p},
                   {"N", r.N},
                   {"T", r.T},
                   {"kind", r.kind},
                   {"exact", r.exact},
                   {"mc_estimate", r.mc_estimate},
                   {"mc_stderr", r.mc_stderr},
                   {"oversample", r.oversample},
                   {"samples", r.samples}});
    art.write("brownian_exact.json", j.dump(2) + "\n");
  }
  out << "brownian: " << rows.size() << " rows, max relative deviation "
      << format_double(worst) << "\n";
  return 0;
}

int run_euler(const Params& p, const Artifacts& art, std::ostream& out,
              const std::string& format, std::uint64_t seed, int threads) {
  const double alpha = p.num("alpha", 0.0);
  const NormKind kind =
      parse_norm(p.str("norm", alpha == 0.0 ? "sup_of_lp" : "holder_of_lp"));
  const auto [rows, fit] = euler_rate_experiment(
      build_sde_problem(p), p.sizes("Ns", "8,16,32,64,128"), p.num("p", 2.0), alpha,
      p.uint("samples", 4000), seed, kind, kind == NormKind::HolderOfLp,
      p.uint("oversample", 8), threads);
  if (format == "csv") {
    std::string csv = "N,p,alpha,error,stderr\n";
    for (const auto& r : rows)
      csv += std::to_string(r.N) + "," + format_double(r.p) + "," +
             format_double(r.alpha) + "," + format_double(r.error) + "," +
             format_double(r.std_error) + "\n";
    art.write("euler_rate.csv", csv);
  } else {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& r : rows)
      j.push_back({{"N", r.N},
                   {"p", r.p},
                   {"alpha", r.alpha},
                   {"error", r.error},
                   {"stderr", r.std_error}});
    art.write("euler_rate.json", j.dump(2) + "\n");
  }
  out << "euler: fitted slope " << format_double(fit.slope) << " over " << rows.size()
      << " resolutions (r2 " << format_double(fit.r_squared) << ")\n";
  return 0;
}

int run_galerkin(const Params& p, const Artifacts& art, std::ostream& out,
                 const std::string& format, std::uint64_t seed, int threads) {
  const std::string family = p.str("lambda_family", "dirichlet_laplacian");
  if (family != "dirichlet_laplacian")
    throw ConfigError("key 'lambda_family': unknown family '" + family + "'");
  SpectralSeeProblem prob;
  prob.s = p.num("s", prob.s);
  prob.theta_target = p.num("theta_target", prob.theta_target);
  prob.iota = p.num("iota", prob.iota);
  prob.kappa = p.num("kappa", 0.0);
  prob.alpha_F = p.num("alpha_F", 0.0);
  const auto [rows, fit] = galerkin_rate_experiment(
      prob, p.sizes("Ns", "4,8,16,32"), p.uint("N_ref", 256), p.num("p", 2.0),
      p.num("delta", 0.0), p.uint("samples", 4000), p.uint("time_steps", 16), seed,
      threads);
  if (format == "csv") {
    std::string csv = "N,p,delta,error,stderr,exact_error\n";
    for (const auto& r : rows)
      csv += std::to_string(r.N) + "," + format_double(r.p) + "," +
             format_double(r.delta) + "," + format_double(r.error) + "," +
             format_double(r.std_error) + "," + csv_field(r.exact_error) + "\n";
    art.write("galerkin_rate.csv", csv);
  } else {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
      nlohmann::ordered_json row = {{"N", r.N},
                                    {"p", r.p},
                                    {"delta", r.delta},
                                    {"error", r.error},
                                    {"stderr", r.std_error}};
      if (std::isnan(r.exact_error))
        row["exact_error"] = nullptr;
      else
        row["exact_error"] = r.exact_error;
      j.push_back(row);
    }
    art.write("galerkin_rate.json", j.dump(2) + "\n");
  }
  out << "galerkin: fitted slope " << format_double(fit.slope) << " over " << rows.size()
      << " resolutions\n";
  return 0;
}

int run_mlmc(const Params& p, const Artifacts& art, std::ostream& out,
             const std::string& format, std::uint64_t seed, int threads) {
  const std::string fname = p.str("functional", "identity");
  const double alpha = p.num("alpha", 0.1);
  PathFunctional f;
  if (fname == "identity")
    f = identity_functional(alpha);
  else if (fname == "bounded")
    f = bounded_map_functional(alpha);
  else
    throw ConfigError("key 'functional': unknown functional '" + fname + "'");
  const MlmcExperiment exp = mlmc_convergence_experiment(
      make_brownian_problem(1.0), f, p.sizes("levels", "2,3,4,5,6,7"), p.num("p", 2.0),
      p.num("gamma", 0.0), p.uint("repetitions", 50), seed, threads,
      p.uint("ref_samples", std::uint64_t{1} << 16));
  if (format == "csv") {
    std::string conv = "L,p,gamma,error,stderr,cost,ref_error\n";
    for (const auto& r : exp.rows)
      conv += std::to_string(r.L) + "," + format_double(r.p) + "," +
              format_double(r.gamma) + "," + format_double(r.error) + "," +
              format_double(r.std_error) + "," + format_double(r.cost) + "," +
              format_double(r.ref_error) + "\n";
    art.write("mlmc_conv.csv", conv);
    std::string lv = "L,level,N,M,corr_mean,corr_var\n";
    for (const auto& r : exp.level_rows)
      lv += std::to_string(r.L) + "," + std::to_string(r.level) + "," +
            std::to_string(r.N) + "," + std::to_string(r.M) + "," +
            format_double(r.corr_mean) + "," + format_double(r.corr_var) + "\n";
    art.write("mlmc_levels.csv", lv);
  } else {
    nlohmann::ordered_json conv = nlohmann::ordered_json::array();
    for (const auto& r : exp.rows)
      conv.push_back({{"L", r.L},
                      {"p", r.p},
                      {"gamma", r.gamma},
                      {"error", r.error},
                      {"stderr", r.std_error},
                      {"cost", r.cost},
                      {"ref_error", r.ref_error}});
    art.write("mlmc_conv.json", conv.dump(2) + "\n");
    nlohmann::ordered_json lv = nlohmann::ordered_json::array();
    for (const auto& r : exp.level_rows)
      lv.push_back({{"L", r.L},
                    {"level", r.level},
                    {"N", r.N},
                    {"M", r.M},
                    {"corr_mean", r.corr_mean},
                    {"corr_var", r.corr_var}});
    art.write("mlmc_levels.json", lv.dump(2) + "\n");
  }
  out << "mlmc: log2-error slope " << format_double(exp.fit.slope)
      << " per level, equal-cost plain-MC error " << format_double(exp.plain_error)
      << " vs mlmc " << format_double(exp.rows.back().error)
      << (exp.inconclusive ? " [inconclusive: reference too noisy]" : "") << "\n";
  return exp.inconclusive ? 1 : 0;
}

int run_special(const Params& p, std::ostream& out) {
  const std::string fn = p.str("fn", "");
  if (fn == "gamma") {
    const double x = p.num("x", 1.0);
    out << "gamma(" << format_double(x) << ") = " << format_double(gamma_fn(x)) << "\n";
  } else if (fn == "script-e") {
    const double r = p.num("r", 0.5), x = p.num("x", 1.0);
    const SeriesConfig generous{1e-14, 4'000'000};  // small r needs long sums
    out << "script_e(" << format_double(r) << ", " << format_double(x)
        << ") = " << format_double(script_e(r, x, generous)) << "\n";
  } else if (fn == "f-alpha") {
    const double a = p.num("alpha", 0.25);
    out << "f(" << format_double(a) << ") = " << format_double(brownian_ratio_f(a))
        << "\n";
  } else if (fn == "gauss-moment") {
    const double q = p.num("p", 2.0);
    out << "gaussian_abs_moment(" << format_double(q)
        << ") = " << format_double(gaussian_abs_moment(q)) << "\n";
  } else {
    throw ConfigError("key 'fn': expected one of gamma, script-e, f-alpha, gauss-moment");
  }
  return 0;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file '" + path + "'");
  std::vector<std::pair<std::string, std::string>> pairs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const std::size_t eq = body.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected 'key = value' in '" +
                        body + "'");
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected 'key = value' in '" +
                        body + "'");
    pairs.emplace_back(key, value);
  }
  return pairs;
}

bool key_known(const std::string& command, const std::string& key) {
  if (kGlobalKeys.count(key)) return true;
  const auto it = command_keys().find(command);
  return it != command_keys().end() && it->second.count(key) > 0;
}

RunConfig parse_config(const std::vector<std::string>& args) {
  if (args.empty()) throw ConfigError("expected a command");
  RunConfig cfg;
  cfg.command = args[0];
  if (!command_keys().count(cfg.command))
    throw ConfigError("unknown command '" + cfg.command + "'");
  std::vector<std::pair<std::string, std::string>> file_pairs;
  for (std::size_t i = 1; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a.size() < 3 || a.substr(0, 2) != "--")
      throw ConfigError("expected --key value, got '" + a + "'");
    if (i + 1 >= args.size()) throw ConfigError("flag '" + a + "' is missing a value");
    const std::string key = a.substr(2);
    const std::string& value = args[++i];
    if (key == "config") {
      const auto pairs = read_config_file(value);
      file_pairs.insert(file_pairs.end(), pairs.begin(), pairs.end());
      continue;
    }
    if (!key_known(cfg.command, key))
      throw ConfigError("unknown key '" + key + "' for command '" + cfg.command + "'");
    cfg.values[key] = value;
  }
  for (const auto& [key, value] : file_pairs) {
    if (!key_known(cfg.command, key))
      throw ConfigError("unknown key '" + key + "' for command '" + cfg.command + "'");
    cfg.values.emplace(key, value);  // flags win over file values
  }
  return cfg;
}

int run(const RunConfig& cfg, std::ostream& out) {
  try {
    if (!command_keys().count(cfg.command))
      throw ConfigError("unknown command '" + cfg.command + "'");
    for (const auto& [key, value] : cfg.values)
      if (!key_known(cfg.command, key))
        throw ConfigError("unknown key '" + key + "' for command '" + cfg.command + "'");
    const Params p{cfg};
    const std::uint64_t seed = p.uint("seed", 0);
    const int threads = resolve_threads(static_cast<int>(p.uint("threads", 0)));
    const std::string format = p.str("format", "csv");
    if (format != "csv" && format != "json")
      throw ConfigError("key 'format': expected csv or json");
    const Artifacts art{std::filesystem::path(p.str("output", "."))};
    if (cfg.command == "special") return run_special(p, out);
    art.log(cfg.command + " seed=" + std::to_string(seed) +
            " threads=" + std::to_string(threads));
    if (cfg.command == "inequalities") return run_inequalities(p, art, out, seed, threads);
    if (cfg.command == "brownian")
      return run_brownian(p, art, out, format, seed, threads);
    if (cfg.command == "euler") return run_euler(p, art, out, format, seed, threads);
    if (cfg.command == "galerkin")
      return run_galerkin(p, art, out, format, seed, threads);
    return run_mlmc(p, art, out, format, seed, threads);
  } catch (const ConfigError& e) {
    out << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    out << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    out << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace holderlab
