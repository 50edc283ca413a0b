#include "holderlab.h"

#include <exception>
#include <iostream>
#include <string>

#include "holderlab/runner.hpp"
#include "holderlab/schemes.hpp"
#include "holderlab/special.hpp"

namespace {

thread_local std::string g_last_error;

hl_status fail(hl_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

template <typename Fn>
hl_status eval_scalar(double* out, Fn&& fn) {
  if (out == nullptr) return fail(HL_ERROR_ARGUMENT, "null output pointer");
  try {
    *out = fn();
    return HL_OK;
  } catch (const std::exception& e) {
    return fail(HL_ERROR_ARGUMENT, e.what());
  }
}

}  // namespace

struct hl_config {
  holderlab::RunConfig cfg;
};

extern "C" {

hl_config* hl_config_new(const char* command) {
  if (command == nullptr) {
    fail(HL_ERROR_CONFIG, "null command");
    return nullptr;
  }
  try {
    holderlab::RunConfig cfg;
    cfg.command = command;
    // reject unknown commands up front via the parser
    holderlab::parse_config({cfg.command});
    auto* out = new hl_config;
    out->cfg = std::move(cfg);
    return out;
  } catch (const std::exception& e) {
    fail(HL_ERROR_CONFIG, e.what());
    return nullptr;
  }
}

void hl_config_free(hl_config* cfg) { delete cfg; }

hl_status hl_config_set(hl_config* cfg, const char* key, const char* value) {
  if (cfg == nullptr || key == nullptr || value == nullptr)
    return fail(HL_ERROR_CONFIG, "null argument");
  if (!holderlab::key_known(cfg->cfg.command, key))
    return fail(HL_ERROR_CONFIG, "unknown key '" + std::string(key) + "' for command '" +
                                     cfg->cfg.command + "'");
  cfg->cfg.values[key] = value;
  return HL_OK;
}

hl_status hl_config_load_file(hl_config* cfg, const char* path) {
  if (cfg == nullptr || path == nullptr) return fail(HL_ERROR_CONFIG, "null argument");
  try {
    for (const auto& [key, value] : holderlab::read_config_file(path)) {
      if (!holderlab::key_known(cfg->cfg.command, key))
        return fail(HL_ERROR_CONFIG, "unknown key '" + key + "' for command '" +
                                         cfg->cfg.command + "'");
      cfg->cfg.values.emplace(key, value);  // earlier hl_config_set wins
    }
    return HL_OK;
  } catch (const std::exception& e) {
    return fail(HL_ERROR_CONFIG, e.what());
  }
}

hl_status hl_run(const hl_config* cfg, int* exit_code) {
  if (cfg == nullptr || exit_code == nullptr)
    return fail(HL_ERROR_CONFIG, "null argument");
  try {
    *exit_code = holderlab::run(cfg->cfg, std::cout);
    return HL_OK;
  } catch (const std::exception& e) {
    return fail(HL_ERROR_INTERNAL, e.what());
  }
}

const char* hl_last_error(void) { return g_last_error.c_str(); }

hl_status hl_gamma(double x, double* out) {
  return eval_scalar(out, [&] { return holderlab::gamma_fn(x); });
}

namespace {
// small r and large x need very long partial sums before the terms decay
const holderlab::SeriesConfig kGenerousSeries{1e-14, 4'000'000};
}  // namespace

hl_status hl_script_e(double r, double x, double* out) {
  return eval_scalar(out, [&] { return holderlab::script_e(r, x, kGenerousSeries); });
}

hl_status hl_script_e_log(double r, double x, double* out) {
  return eval_scalar(out, [&] { return holderlab::script_e_log(r, x, kGenerousSeries); });
}

hl_status hl_gaussian_abs_moment(double p, double* out) {
  return eval_scalar(out, [&] { return holderlab::gaussian_abs_moment(p); });
}

hl_status hl_brownian_ratio_f(double alpha, double* out) {
  return eval_scalar(out, [&] { return holderlab::brownian_ratio_f(alpha); });
}

hl_status hl_brownian_interp_error_exact(int kind, double alpha, double p, double T,
                                         uint64_t N, double* out) {
  return eval_scalar(out, [&] {
    holderlab::ExactKind k;
    switch (kind) {
      case HL_EXACT_SUP_OF_LP: k = holderlab::ExactKind::SupOfLp; break;
      case HL_EXACT_SEMINORM: k = holderlab::ExactKind::Seminorm; break;
      case HL_EXACT_FULL_NORM: k = holderlab::ExactKind::FullNorm; break;
      default: throw std::invalid_argument("unknown exact kind");
    }
    return holderlab::brownian_interp_error_exact(k, alpha, p, T, N);
  });
}

}  // extern "C"
