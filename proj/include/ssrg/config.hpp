#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "ssrg/color.hpp"
#include "ssrg/features.hpp"
#include "ssrg/growing.hpp"
#include "ssrg/merging.hpp"
#include "ssrg/boundary.hpp"
#include "ssrg/seeding.hpp"

namespace ssrg {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// All tunable parameters of the pipeline, defaulted to the reference values.
struct PipelineConfig {
  int ser_side = 4;                       // S
  BilateralParams bilateral;              // 7x7, sigma_d 2, sigma_r 8, 2 passes
  GradientParams gradient;                // L_W 11, M 20, delta 0.2, gamma 4.0
  EntropyParams entropy;                  // q 0.8, M 20, 11x11 window
  double alpha = 170.0;                   // region count scale
  double kappa = 2.0;                     // region count exponent
  SeedParams seed;                        // beta 0.4
  GrowParams grow;                        // omega 5.0, lambda1 2.0
  MergeParams merge;                      // M_R 5, xi 0.1, T_t 1.04, zeta 0.8
  RefineParams refine;                    // lambda2 2.0, M_P 2
  std::optional<int> desired_regions_override;

  void validate() const {
    if (ser_side < 1) throw ConfigError("ser_side must be >= 1");
    if (bilateral.window_side < 1 || bilateral.window_side % 2 == 0)
      throw ConfigError("bilateral_window must be odd");
    if (bilateral.sigma_d <= 0 || bilateral.sigma_r <= 0)
      throw ConfigError("bilateral sigmas must be positive");
    if (bilateral.passes < 0) throw ConfigError("bilateral_passes must be >= 0");
    if (gradient.window_side < 3 || gradient.window_side % 2 == 0)
      throw ConfigError("gradient_window must be odd >= 3");
    if (gradient.bins < 2) throw ConfigError("histogram_bins must be >= 2");
    if (gradient.offset < 0 || gradient.offset >= 2)
      throw ConfigError("gradient_offset must be in [0,2)");
    if (gradient.exponent <= 0) throw ConfigError("gradient_exponent must be > 0");
    if (entropy.q <= 0 || entropy.q == 1.0)
      throw ConfigError("entropy_q must be > 0 and != 1");
    if (seed.beta <= 0) throw ConfigError("beta must be > 0");
    if (grow.omega < 0 || grow.lambda1 < 0)
      throw ConfigError("omega and lambda1 must be >= 0");
    if (merge.max_small_size < 1) throw ConfigError("min_region_size must be >= 1");
    if (merge.xi < 0) throw ConfigError("xi must be >= 0");
    if (merge.termination_ratio <= 1.0)
      throw ConfigError("termination_ratio must be > 1");
    if (merge.zeta <= 0 || merge.zeta > 1) throw ConfigError("zeta must be in (0,1]");
    if (refine.lambda2 < 0) throw ConfigError("lambda2 must be >= 0");
    if (refine.passes < 0) throw ConfigError("refine_passes must be >= 0");
    if (desired_regions_override && *desired_regions_override < 1)
      throw ConfigError("desired_regions must be >= 1");
  }
};

// Applies one "key=value" assignment; unknown keys are errors.
inline void apply_config_entry(PipelineConfig& config, const std::string& key,
                               const std::string& value) {
  auto as_int = [&] {
    try {
      std::size_t pos = 0;
      const int v = std::stoi(value, &pos);
      if (pos != value.size()) throw std::invalid_argument("");
      return v;
    } catch (const std::exception&) {
      throw ConfigError("invalid integer for " + key + ": '" + value + "'");
    }
  };
  auto as_double = [&] {
    try {
      std::size_t pos = 0;
      const double v = std::stod(value, &pos);
      if (pos != value.size()) throw std::invalid_argument("");
      return v;
    } catch (const std::exception&) {
      throw ConfigError("invalid number for " + key + ": '" + value + "'");
    }
  };

  if (key == "ser_side") config.ser_side = as_int();
  else if (key == "bilateral_window") config.bilateral.window_side = as_int();
  else if (key == "bilateral_sigma_d") config.bilateral.sigma_d = as_double();
  else if (key == "bilateral_sigma_r") config.bilateral.sigma_r = as_double();
  else if (key == "bilateral_passes") config.bilateral.passes = as_int();
  else if (key == "gradient_window") config.gradient.window_side = as_int();
  else if (key == "histogram_bins") {
    config.gradient.bins = as_int();
    config.entropy.bins = config.gradient.bins;
  } else if (key == "gradient_offset") config.gradient.offset = as_double();
  else if (key == "gradient_exponent") config.gradient.exponent = as_double();
  else if (key == "entropy_q") config.entropy.q = as_double();
  else if (key == "entropy_window") config.entropy.window_side = as_int();
  else if (key == "alpha") config.alpha = as_double();
  else if (key == "kappa") config.kappa = as_double();
  else if (key == "beta") config.seed.beta = as_double();
  else if (key == "omega") config.grow.omega = as_double();
  else if (key == "lambda1") config.grow.lambda1 = as_double();
  else if (key == "min_region_size") config.merge.max_small_size = as_int();
  else if (key == "xi") config.merge.xi = as_double();
  else if (key == "termination_ratio") config.merge.termination_ratio = as_double();
  else if (key == "zeta") config.merge.zeta = as_double();
  else if (key == "lambda2") config.refine.lambda2 = as_double();
  else if (key == "refine_passes") config.refine.passes = as_int();
  else if (key == "desired_regions") config.desired_regions_override = as_int();
  else throw ConfigError("unknown config key: " + key);
}

inline void apply_config_assignment(PipelineConfig& config,
                                    const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos)
    throw ConfigError("expected key=value, got '" + assignment + "'");
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  apply_config_entry(config, trim(assignment.substr(0, eq)),
                     trim(assignment.substr(eq + 1)));
}

// Plain-text config: one key=value per line, '#' starts a comment.
inline void load_config_file(PipelineConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto content = line.find_first_not_of(" \t\r");
    if (content == std::string::npos) continue;
    apply_config_assignment(config, line);
  }
}

}  // namespace ssrg
